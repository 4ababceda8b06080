from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pvcast.castle import (
    NonPositiveResult,
    NotASolution,
    PositionOutOfRange,
    Solution,
    UnsupportedA,
    algebra_key,
    base_solution,
    descend,
    enumerate_solutions,
    is_essential,
    top_replacement,
    replay,
    repetition_filter,
    residual,
    sc_transform,
)

POOL = sorted(enumerate_solutions(2, 10**4, 4) | enumerate_solutions(3, 10**4, 4)
              | enumerate_solutions(5, 10**4, 4))


def test_solution_is_sorted_and_validated():
    s = Solution(2, (11, 3))
    assert s.parts == (3, 11)
    assert str(s) == "(2; 3, 11)"
    assert (s.k, s.space_dim, s.algebra_dim) == (2, 132, 132)
    with pytest.raises(ValueError):
        Solution(1, (1,))
    with pytest.raises(ValueError):
        Solution(2, (0,))
    with pytest.raises(ValueError):
        Solution(2, ())


def test_residual_values():
    assert residual(Solution(2, (3,))) == 0
    assert residual(Solution(2, (2,))) == 4 + 4 - 1 - 8
    assert residual(Solution(7, (6,))) == 49 + 36 - 1 - 84


def test_sc_transform_examples():
    s = Solution(2, (3,))
    assert sc_transform(s, 1) == Solution(2, (1,))
    assert sc_transform(s, 2) == Solution(2, (3, 11))
    assert sc_transform(Solution(2, (3, 11)), 1) == Solution(2, (41, 11))
    assert sc_transform(Solution(2, (3, 11)), 3) == Solution(2, (3, 11, 131))


def test_sc_transform_errors():
    with pytest.raises(PositionOutOfRange):
        sc_transform(Solution(2, (3,)), 3)
    with pytest.raises(PositionOutOfRange):
        sc_transform(Solution(2, (3,)), 0)
    with pytest.raises(NonPositiveResult):
        sc_transform(Solution(2, (9,)), 1)


def test_sc_transform_is_an_involution_on_parts():
    s = Solution(5, (6, 59))
    for i in (1, 2):
        t = sc_transform(s, i)
        new = 2 * s.a * prod(s.parts) // s.parts[i - 1] - s.parts[i - 1]
        j = t.parts.index(new) + 1
        assert sc_transform(t, j) == s


def test_top_replacement_values():
    assert top_replacement(Solution(2, (3, 11))) == 1
    assert top_replacement(Solution(2, (11, 41))) == 3


def test_descend_worked_example():
    base, path = descend(Solution(2, (3, 11, 131)))
    assert base == Solution(2, (1,))
    assert path == [1, 2, 3]
    assert replay(base, path) == Solution(2, (3, 11, 131))


def test_descend_with_unit_parts():
    s = Solution(2, (1, 1, 1))
    base, path = descend(s)
    assert replay(base, path) == s
    assert path == [2, 2, 3, 3]


def test_descend_errors():
    with pytest.raises(NotASolution):
        descend(Solution(2, (2,)))
    with pytest.raises(UnsupportedA):
        descend(Solution(7, (6,)))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(POOL), st.data())
def test_residual_invariant_under_sc(s, data):
    i = data.draw(st.integers(1, s.k + 1))
    assert residual(sc_transform(s, i)) == residual(s) == 0


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(POOL))
def test_descent_replays_and_path_is_bounded(s):
    base, path = descend(s)
    assert base == base_solution(s.a)
    assert replay(base, path) == s
    ones = sum(m == 1 for m in s.parts)
    assert len(path) <= sum(m.bit_length() for m in s.parts) + ones


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([s for s in POOL if s.k >= 2 and is_essential(s)]))
def test_descent_step_on_pool(s):
    assert 0 < top_replacement(s) < s.parts[-1]


def brute(a, bound, max_k):
    out = set()

    def rec(prefix, lo):
        if prefix:
            s = Solution(a, tuple(prefix))
            if residual(s) == 0:
                out.add(s)
        if len(prefix) == max_k:
            return
        for m in range(lo, bound + 1):
            rec(prefix + [m], m)

    rec([], 1)
    return out


@pytest.mark.parametrize("a", [2, 3, 5])
def test_enumeration_matches_brute_force_small_box(a):
    found = {s for s in enumerate_solutions(a, 10**4, 2) if s.parts[-1] <= 30}
    assert found == brute(a, 30, 2)


def test_enumeration_bounds():
    sols = enumerate_solutions(2, 200, 3)
    assert all(s.parts[-1] <= 200 and s.k <= 3 for s in sols)
    assert enumerate_solutions(5, 3, 2) == set()
    with pytest.raises(ValueError):
        enumerate_solutions(2, 0, 1)
    with pytest.raises(UnsupportedA):
        enumerate_solutions(4, 10, 1)


def test_repetition_filter_and_keys():
    sols = {Solution(3, (2,)), Solution(3, (4,)), Solution(3, (2, 11))}
    assert repetition_filter(sols, 3) == {Solution(3, (4,))}
    assert repetition_filter(sols, 2) == sols
    assert algebra_key(Solution(3, (2, 1))) == (2, 3)
    assert algebra_key(Solution(2, (3,))) == algebra_key(Solution(3, (2,)))


@pytest.mark.parametrize("a", [2, 3, 5])
def test_k1_castling_and_bases(a):
    for m in (a - 1, a + 1):
        assert sc_transform(Solution(a, (m,)), 1) == Solution(a, (2 * a - m,))
    assert descend(Solution(a, (a - 1,))) == (Solution(a, (a - 1,)), [])
    base, path = descend(Solution(a, (a + 1,)))
    assert base == Solution(a, (a - 1,)) and path == [1]


def test_essential_examples():
    assert is_essential(Solution(2, (3, 11)))
    assert is_essential(Solution(3, (2, 11))) and residual(Solution(3, (2, 11))) == 0
    assert not is_essential(Solution(2, (1,)))


def test_descend_with_repeated_maximum():
    tied = [t for t in POOL if t.k >= 2 and t.parts[-1] == t.parts[-2]]
    assert tied
    for t in tied:
        base, path = descend(t)
        assert replay(base, path) == t
