"""Text forms of solutions and triplets.

Grammar (whitespace allowed between tokens)::

    solution := "(" INT ";" INT ("," INT)* ")"
    triplet  := algebra ":" replist
    algebra  := factor ("+" factor)*
    factor   := "gl" "(" "1" ")" | "sl" "(" INT ")"
    replist  := rep ("#" rep)*
    rep      := "L1" | "L1*" | "2L1" | "3L1" | "L2"

The i-th rep acts on the i-th factor; ``+`` is the direct sum and ``#`` the
tensor product. Error spans are byte offsets into the UTF-8 input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .castle import Solution
from .liealg import FactorSpec
from .reps import REP_TOKENS, Triplet, UnsupportedRep, build_triplet  # noqa: F401

_INT = re.compile(r"[0-9]+")
_WORD = re.compile(r"[0-9]*[A-Za-z][A-Za-z0-9]*\*?")


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ValueError("span start after end")


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan, text: str) -> None:
        super().__init__(f"{message} at bytes {span.start}..{span.end}")
        self.message = message
        self.span = span
        self.text = text


class ArityMismatch(ValueError):
    pass


class _Scanner:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def _byte(self, i: int) -> int:
        return len(self.text[:i].encode("utf-8"))

    def error(self, message: str, start: int | None = None, end: int | None = None) -> ParseError:
        start = self.pos if start is None else start
        if end is None:
            end = min(start + 1, len(self.text))
        return ParseError(message, SourceSpan(self._byte(start), self._byte(end)), self.text)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, literal: str) -> bool:
        self.skip()
        return self.text.startswith(literal, self.pos)

    def expect(self, literal: str) -> None:
        if not self.peek(literal):
            raise self.error(f"expected {literal!r}, found {self._found()}")
        self.pos += len(literal)

    def integer(self) -> int:
        self.skip()
        m = _INT.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected an integer, found {self._found()}")
        self.pos = m.end()
        return int(m.group())

    def word(self, what: str) -> tuple[str, int, int]:
        self.skip()
        m = _WORD.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}, found {self._found()}")
        self.pos = m.end()
        return m.group(), m.start(), m.end()

    def end(self) -> None:
        self.skip()
        if self.pos != len(self.text):
            raise self.error(f"unexpected trailing input {self._found()}")

    def _found(self) -> str:
        if self.pos >= len(self.text):
            return "end of input"
        return repr(self.text[self.pos])


def parse_solution(text: str) -> Solution:
    """Parse ``(a; m_1, ..., m_k)``; parts come back sorted.

    Raises:
        ParseError: malformed text.
        ValueError: ``a < 2`` or a part ``< 1``.
    """
    sc = _Scanner(text)
    sc.expect("(")
    a = sc.integer()
    sc.expect(";")
    parts = [sc.integer()]
    while sc.peek(","):
        sc.expect(",")
        parts.append(sc.integer())
    sc.expect(")")
    sc.end()
    return Solution(a, tuple(parts))


def _factor(sc: _Scanner) -> FactorSpec:
    name, start, _ = sc.word("'gl' or 'sl'")
    if name not in ("gl", "sl"):
        raise sc.error(f"expected 'gl' or 'sl', found {name!r}", start, start + len(name))
    sc.expect("(")
    sc.skip()
    num_start = sc.pos
    n = sc.integer()
    sc.expect(")")
    if name == "gl":
        if n != 1:
            raise sc.error("only gl(1) is supported", num_start, num_start + len(str(n)))
        return FactorSpec.gl1()
    if n < 1:
        raise sc.error("sl(n) needs n >= 1", num_start, num_start + len(str(n)))
    return FactorSpec.sl(n)


def parse_triplet(text: str) -> Triplet:
    """Parse ``ALGEBRA : REPLIST`` and build the tensor representation.

    Raises:
        ParseError: malformed text or an unknown representation token.
        ArityMismatch: factor and representation counts differ.
        UnsupportedRep: token not defined on its factor (e.g. L2 on gl(1)).
    """
    sc = _Scanner(text)
    factors = [_factor(sc)]
    while sc.peek("+"):
        sc.expect("+")
        factors.append(_factor(sc))
    sc.expect(":")
    reps = []
    while True:
        tok, start, end = sc.word("a representation " + "/".join(REP_TOKENS))
        if tok not in REP_TOKENS:
            raise sc.error(f"unknown representation {tok!r}; expected one of {', '.join(REP_TOKENS)}",
                           start, end)
        reps.append(tok)
        if not sc.peek("#"):
            break
        sc.expect("#")
    sc.end()
    if len(factors) != len(reps):
        raise ArityMismatch(f"{len(factors)} factors but {len(reps)} representations")
    return build_triplet(list(zip(factors, reps)))


def parse(text: str) -> Solution | Triplet:
    """Solution if the text starts with ``(``, triplet otherwise."""
    if text.lstrip().startswith("("):
        return parse_solution(text)
    return parse_triplet(text)


def render(x: Solution | Triplet) -> str:
    if isinstance(x, Solution):
        return str(x)
    if isinstance(x, Triplet):
        if x.labels is None:
            raise ValueError("triplet has no factor labels to render")
        algebra = "+".join(str(f) for f, _ in x.labels)
        return f"{algebra} : {'#'.join(tok for _, tok in x.labels)}"
    raise TypeError(f"cannot render {type(x).__name__}")
