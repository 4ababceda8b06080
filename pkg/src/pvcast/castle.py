"""Solutions of the dimension-balance equation and their castling tree.

A solution ``(a; m_1, ..., m_k)`` satisfies

    a^2 + m_1^2 + ... + m_k^2 - k - 2 a m_1 m_2 ... m_k = 0,

which says ``dim gl(1)+sl(a)+sl(m_1)+...+sl(m_k) == 2a * m_1 * ... * m_k``.
Parts are kept as a sorted multiset; sc-transform positions refer to that
sorted order, 1-based, with ``k + 1`` meaning "append".
"""

from __future__ import annotations

from bisect import bisect_right
from collections import deque
from dataclasses import dataclass
from math import prod
from typing import Iterable

SUPPORTED_A = (2, 3, 5)


class UnsupportedA(ValueError):
    """``a`` is outside {2, 3, 5}, where no degree-2a representation is fixed."""


class PositionOutOfRange(IndexError):
    pass


class NonPositiveResult(ValueError):
    """The transform would produce a part ``<= 0``; only happens off-solution."""


class NotASolution(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Solution:
    a: int
    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(sorted(int(m) for m in self.parts))
        if int(self.a) < 2:
            raise ValueError(f"a must be at least 2, got {self.a}")
        if not parts:
            raise ValueError("a solution needs at least one part")
        if parts[0] < 1:
            raise ValueError(f"parts must be positive, got {parts[0]}")
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "parts", parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def space_dim(self) -> int:
        return 2 * self.a * prod(self.parts)

    @property
    def algebra_dim(self) -> int:
        return self.a ** 2 + sum(m * m for m in self.parts) - self.k

    def __str__(self) -> str:
        return f"({self.a}; {', '.join(map(str, self.parts))})"


def _check_a(a: int) -> None:
    if a not in SUPPORTED_A:
        raise UnsupportedA(f"a = {a} is not one of {SUPPORTED_A}")


def residual(s: Solution) -> int:
    return s.algebra_dim - s.space_dim


def is_solution(s: Solution) -> bool:
    return residual(s) == 0


def sc_transform(s: Solution, i: int) -> Solution:
    """Castle the ``i``-th part (1-based, sorted order); ``i = k+1`` appends."""
    k = s.k
    if not 1 <= i <= k + 1:
        raise PositionOutOfRange(f"position {i} not in 1..{k + 1}")
    parts = list(s.parts)
    if i == k + 1:
        new = 2 * s.a * prod(parts) - 1
        parts.append(new)
    else:
        others = prod(parts[:i - 1]) * prod(parts[i:])
        new = 2 * s.a * others - parts[i - 1]
        parts[i - 1] = new
    if new <= 0:
        raise NonPositiveResult(f"sc-transform of {s} at {i} gives {new}")
    return Solution(s.a, tuple(parts))


def top_replacement(s: Solution) -> int:
    """``2a m_1 ... m_{k-1} - m_k``: the value replacing the largest part."""
    return 2 * s.a * prod(s.parts[:-1]) - s.parts[-1]


def _last_index(parts: tuple[int, ...], value: int) -> int:
    return bisect_right(parts, value)  # 1-based position of the last copy


def descend(s: Solution) -> tuple[Solution, list[int]]:
    """Walk ``s`` down to the base ``(a; a-1)``.

    Returns the base and the ascent path: the positions ``p_1, ..., p_L`` with
    ``s == sc_transform(...sc_transform(base, p_1)..., p_L)`` (see
    :func:`replay`). Unit parts are dropped (sl(1) = 0); when the transform at
    the largest part yields 1, that part is dropped too and undone by an
    append. A unit part present in the input costs two steps to rebuild.

    Raises:
        NotASolution: residual is nonzero.
        UnsupportedA: ``a`` not in {2, 3, 5}.
    """
    _check_a(s.a)
    if residual(s) != 0:
        raise NotASolution(f"{s} has residual {residual(s)}")
    a = s.a
    cur = s
    undo: list[list[int]] = []
    while True:
        parts = cur.parts
        if cur.k >= 2 and parts[0] == 1:
            smaller = Solution(a, parts[1:])
            appended = sc_transform(smaller, smaller.k + 1)
            top = 2 * a * prod(smaller.parts) - 1
            undo.append([smaller.k + 1, _last_index(appended.parts, top)])
            cur = smaller
        elif cur.k >= 2:
            new = top_replacement(cur)
            # strictly between 0 and the largest part for every solution
            if not 0 < new < parts[-1]:
                raise AssertionError(f"descent stalled at {cur}")
            if new == 1:
                cur = Solution(a, parts[:-1])
                undo.append([cur.k + 1])
            else:
                cur = Solution(a, parts[:-1] + (new,))
                undo.append([_last_index(cur.parts, new)])
        else:
            m = parts[0]
            if m == a - 1:
                break
            if m != a + 1:
                raise AssertionError(f"unexpected base {cur}")
            cur = Solution(a, (a - 1,))
            undo.append([1])
    path = [p for step in reversed(undo) for p in step]
    return cur, path


def replay(base: Solution, path: Iterable[int]) -> Solution:
    cur = base
    for p in path:
        cur = sc_transform(cur, p)
    return cur


def base_solution(a: int) -> Solution:
    return Solution(a, (a - 1,))


def enumerate_solutions(a: int, max_part: int, max_k: int) -> set[Solution]:
    """Breadth-first castling tree from ``(a; a-1)`` within the given bounds.

    Children with a part above ``max_part`` or more than ``max_k`` parts are
    pruned; every visited solution is returned.
    """
    _check_a(a)
    if max_part < 1 or max_k < 1:
        raise ValueError("bounds must be positive")
    start = base_solution(a)
    if max(start.parts) > max_part:
        return set()
    seen = {start}
    frontier = deque([start])
    while frontier:
        s = frontier.popleft()
        for i in range(1, s.k + 2):
            if i == s.k + 1 and s.k >= max_k:
                continue
            try:
                t = sc_transform(s, i)
            except NonPositiveResult:
                continue
            if t.parts[-1] > max_part or t in seen:
                continue
            seen.add(t)
            frontier.append(t)
    return seen


def is_essential(s: Solution) -> bool:
    return 1 not in s.parts


def repetition_filter(solutions: Iterable[Solution], a: int) -> set[Solution]:
    """For ``a = 3`` drop solutions with a part equal to 2 (they repeat ``a = 2``)."""
    solutions = set(solutions)
    if a != 3:
        return solutions
    return {s for s in solutions if 2 not in s.parts}


def algebra_key(s: Solution) -> tuple[int, ...]:
    """Sorted sizes of the sl factors, units dropped: the Lie algebra up to isomorphism."""
    return tuple(sorted((s.a,) + tuple(m for m in s.parts if m != 1)))


def sort_key(s: Solution) -> tuple:
    return (s.a, s.k, s.parts)
