"""Formal direct sums of gl(1) and sl(n) factors with a fixed standard basis.

Basis order for sl(n): off-diagonal units ``E_ij`` (i != j) in row-major order,
then the diagonal differences ``E_ii - E_{i+1,i+1}`` for ``i = 1..n-1``.
gl(1) has the single basis element ``[1]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .exactmat import RationalMatrix, exact


class FactorKind(str, Enum):
    GL1 = "gl"
    SL = "sl"


@dataclass(frozen=True)
class FactorSpec:
    kind: FactorKind
    n: int = 1

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"factor size must be positive, got {self.n}")
        if self.kind is FactorKind.GL1 and self.n != 1:
            raise ValueError("only gl(1) factors are supported")

    @classmethod
    def gl1(cls) -> FactorSpec:
        return cls(FactorKind.GL1, 1)

    @classmethod
    def sl(cls, n: int) -> FactorSpec:
        return cls(FactorKind.SL, n)

    @property
    def dim(self) -> int:
        return 1 if self.kind is FactorKind.GL1 else self.n * self.n - 1

    def __str__(self) -> str:
        return f"{self.kind.value}({self.n})"


@dataclass(frozen=True)
class AlgebraSpec:
    factors: tuple[FactorSpec, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    def offsets(self) -> list[int]:
        """Index of each factor's first basis element in the concatenated basis."""
        out, acc = [], 0
        for f in self.factors:
            out.append(acc)
            acc += f.dim
        return out

    def __add__(self, other: AlgebraSpec) -> AlgebraSpec:
        return AlgebraSpec(self.factors + other.factors)

    def __str__(self) -> str:
        return "+".join(str(f) for f in self.factors)


def dim(spec: AlgebraSpec | FactorSpec) -> int:
    return spec.dim


@lru_cache(maxsize=None)
def basis(factor: FactorSpec) -> tuple[RationalMatrix, ...]:
    if factor.kind is FactorKind.GL1:
        return (RationalMatrix.identity(1),)
    n = factor.n
    out = [RationalMatrix.unit(n, i, j) for i in range(n) for j in range(n) if i != j]
    for i in range(n - 1):
        d = [0] * n
        d[i], d[i + 1] = 1, -1
        out.append(RationalMatrix.diag(d))
    return tuple(out)


def coordinates(factor: FactorSpec, x: RationalMatrix) -> tuple:
    """Coefficients of ``x`` in :func:`basis` (``x`` must lie in the factor).

    Raises:
        ValueError: if ``x`` has the wrong size or is not traceless for sl(n).
    """
    n = factor.n
    if x.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got {x.shape}")
    if factor.kind is FactorKind.GL1:
        return (x[0, 0],)
    if x.trace() != 0:
        raise ValueError("sl(n) elements are traceless")
    coeffs = [x[i, j] for i in range(n) for j in range(n) if i != j]
    # diag(d) = sum_i c_i (E_ii - E_{i+1,i+1}) gives c_i = d_1 + ... + d_i
    acc = 0
    for i in range(n - 1):
        acc += x[i, i]
        coeffs.append(exact(acc))
    return tuple(coeffs)


def combine(factor: FactorSpec, coeffs) -> RationalMatrix:
    """Inverse of :func:`coordinates`."""
    n = factor.n
    out = RationalMatrix.zeros(n)
    for c, b in zip(coeffs, basis(factor), strict=True):
        if c:
            out = out + b.scale(c)
    return out


@lru_cache(maxsize=None)
def structure_constants(factor: FactorSpec) -> dict[tuple[int, int], tuple]:
    """``{(i, j): coords of [b_i, b_j]}`` for ``i < j`` with a nonzero bracket."""
    bs = basis(factor)
    out = {}
    for i in range(len(bs)):
        for j in range(i + 1, len(bs)):
            br = bs[i].commutator(bs[j])
            if not br.is_zero():
                out[(i, j)] = coordinates(factor, br)
    return out


def bracket_coordinates(spec: AlgebraSpec, i: int, j: int) -> dict[int, Fraction | int]:
    """Sparse coordinates of ``[X_i, X_j]`` in the concatenated basis of ``spec``.

    Brackets between different factors vanish.
    """
    if i == j:
        return {}
    sign = 1
    if i > j:
        i, j, sign = j, i, -1
    for off, f in zip(spec.offsets(), spec.factors):
        if off <= i < off + f.dim:
            if not off <= j < off + f.dim:
                return {}
            coords = structure_constants(f).get((i - off, j - off))
            if coords is None:
                return {}
            return {off + k: sign * c for k, c in enumerate(coords) if c}
    raise IndexError(i)
