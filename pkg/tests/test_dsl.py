import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pvcast.castle import Solution, enumerate_solutions
from pvcast.dsl import ArityMismatch, ParseError, SourceSpan, parse, parse_solution, parse_triplet, render
from pvcast.liealg import FactorSpec
from pvcast.reps import UnsupportedRep, build_triplet

ENUMERATED = sorted(enumerate_solutions(2, 10**5, 4) | enumerate_solutions(3, 10**5, 4)
                    | enumerate_solutions(5, 10**5, 4))


def test_parse_solution_examples():
    assert parse_solution("(2; 3, 11)") == Solution(2, (3, 11))
    assert parse_solution("( 5 ; 4 )") == Solution(5, (4,))
    assert parse_solution("(2;131,3,11)").parts == (3, 11, 131)
    big = 10**40 + 1
    assert parse_solution(f"(2; {big})").parts == (big,)
    with pytest.raises(ValueError):
        parse_solution("(2; 0)")
    with pytest.raises(ValueError):
        parse_solution("(1; 3)")


@pytest.mark.parametrize("text,span", [
    ("(2;x)", (3, 4)),
    ("(2;3", (4, 4)),
    ("2;3)", (0, 1)),
    ("(2;3) junk", (6, 7)),
    ("(2,3)", (2, 3)),
])
def test_parse_solution_errors(text, span):
    with pytest.raises(ParseError) as info:
        parse_solution(text)
    assert (info.value.span.start, info.value.span.end) == span


def test_span_counts_bytes():
    with pytest.raises(ParseError) as info:
        parse_solution("(2;é)")
    assert (info.value.span.start, info.value.span.end) == (3, 5)


def test_source_span_order():
    with pytest.raises(ValueError):
        SourceSpan(3, 2)


def test_parse_triplet_examples():
    assert parse_triplet("gl(1)+sl(2) : L1#3L1").space_dim == 4
    assert parse_triplet("gl(1)+sl(5)+sl(4) : L1#L2#L1").space_dim == 40
    assert parse_triplet("sl(2) : L2").space_dim == 1
    with pytest.raises(UnsupportedRep):
        parse_triplet("gl(1) : L2")
    with pytest.raises(ArityMismatch):
        parse_triplet("gl(1)+sl(2) : L1")


@pytest.mark.parametrize("text", ["gl(2) : L1", "so(3) : L1", "sl(2) : L3", "sl(2) L1", "sl(2) : L1#",
                                  "sl(0) : L1"])
def test_parse_triplet_errors(text):
    with pytest.raises(ParseError) as info:
        parse_triplet(text)
    assert 0 <= info.value.span.start <= info.value.span.end <= len(text.encode())


def test_render_examples():
    assert render(Solution(2, (11, 3))) == "(2; 3, 11)"
    t = parse_triplet("gl(1) + sl(3) + sl(2) : L1 # 2L1 # L1")
    assert render(t) == "gl(1)+sl(3)+sl(2) : L1#2L1#L1"


def test_parse_dispatch():
    assert isinstance(parse(" (2;3)"), Solution)
    assert parse("sl(2) : L1").space_dim == 2


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(ENUMERATED))
def test_solution_round_trip(s):
    assert parse(render(s)) == s


factor_and_token = st.one_of(
    st.tuples(st.just(FactorSpec.gl1()), st.sampled_from(["L1", "L1*", "2L1", "3L1"])),
    st.tuples(st.integers(1, 3).map(FactorSpec.sl), st.sampled_from(["L1", "L1*", "2L1", "3L1"])),
    st.tuples(st.integers(2, 4).map(FactorSpec.sl), st.just("L2")),
)


@settings(max_examples=40, deadline=None)
@given(st.lists(factor_and_token, min_size=1, max_size=3))
def test_triplet_round_trip(labels):
    t = build_triplet(labels)
    if t.space_dim > 200:
        return
    assert parse(render(t)) == t


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="()0123456789;, xLsgl+#:*é", max_size=20))
def test_error_spans_lie_within_input(text):
    try:
        parse(text)
    except ParseError as exc:
        assert 0 <= exc.span.start <= exc.span.end <= len(text.encode())
    except ValueError:
        pass
