"""Explicit matrix representations of gl(1)+sl(n) direct sums.

A :class:`Representation` stores one matrix per basis element of its algebra
(in :func:`pvcast.liealg.basis` order). Tensor products act by Kronecker sums
with the earlier factor major.

Representation tokens understood by :func:`factor_rep` (and the DSL):

    L1   identity           L1*  dual of the identity
    2L1  symmetric square   3L1  symmetric cube
    L2   exterior square
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb, prod
from typing import Sequence

from .castle import Solution, UnsupportedA, _check_a  # noqa: F401  (re-exported)
from .exactmat import RationalMatrix, embed
from .liealg import AlgebraSpec, FactorKind, FactorSpec, basis, bracket_coordinates

REP_TOKENS = ("L1", "L1*", "2L1", "3L1", "L2")

# the degree-2a representation of sl(a) paired with each supported a
LAMBDA_FOR_A = {2: "3L1", 3: "2L1", 5: "L2"}


class UnsupportedRep(ValueError):
    pass


@dataclass(frozen=True)
class Representation:
    algebra: AlgebraSpec
    degree: int
    matrices: tuple[RationalMatrix, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrices", tuple(self.matrices))
        if len(self.matrices) != self.algebra.dim:
            raise ValueError(
                f"{len(self.matrices)} matrices for an algebra of dimension {self.algebra.dim}")
        for m in self.matrices:
            if m.shape != (self.degree, self.degree):
                raise ValueError(f"matrix of shape {m.shape} in a degree-{self.degree} representation")

    def evaluate(self, coeffs: Sequence) -> RationalMatrix:
        """Image of ``sum_j coeffs[j] * X_j``."""
        if len(coeffs) != len(self.matrices):
            raise ValueError("one coefficient per basis element expected")
        out = RationalMatrix.zeros(self.degree)
        for c, m in zip(coeffs, self.matrices):
            if c:
                out = out + m.scale(c)
        return out


@dataclass(frozen=True)
class Triplet:
    """``(algebra, rep, V)`` plus the factor/token labels it was built from.

    ``labels`` is ``None`` for triplets assembled directly from matrices; those
    cannot be rendered in the DSL.
    """

    algebra: AlgebraSpec
    rep: Representation
    space_dim: int
    labels: tuple[tuple[FactorSpec, str], ...] | None = None

    def __post_init__(self) -> None:
        if self.rep.algebra != self.algebra:
            raise ValueError("representation is for a different algebra")
        if self.rep.degree != self.space_dim:
            raise ValueError("space dimension differs from the representation degree")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))


def _single(factor: FactorSpec, degree: int, matrices) -> Representation:
    return Representation(AlgebraSpec((factor,)), degree, tuple(matrices))


def identity_rep(n: int) -> Representation:
    if n < 1:
        raise ValueError("n must be positive")
    f = FactorSpec.sl(n)
    return _single(f, n, basis(f))


def gl1_rep(weight: int = 1) -> Representation:
    """gl(1) acting on V(1) by the scalar ``weight``."""
    return _single(FactorSpec.gl1(), 1, [RationalMatrix.diag([weight])])


def gl_rep(n: int) -> Representation:
    """gl(n) = sl(n)+gl(1) acting on V(n) by matrix multiplication."""
    return general_tensor([identity_rep(n), gl1_rep()])


def dual_rep(r: Representation) -> Representation:
    return Representation(r.algebra, r.degree, tuple(-m.T for m in r.matrices))


def monomials(n: int, d: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree ``d`` in ``n`` variables, e_1-degree descending."""
    if n == 1:
        return [(d,)]
    return [(e,) + rest for e in range(d, -1, -1) for rest in monomials(n - 1, d - e)]


def sym_power_matrix(x: RationalMatrix, d: int) -> RationalMatrix:
    """Action of ``x`` (n x n) on degree-``d`` polynomials by derivation."""
    n = x.rows
    mons = monomials(n, d)
    index = {e: i for i, e in enumerate(mons)}
    size = len(mons)
    out = [0] * (size * size)
    for col, e in enumerate(mons):
        for i, ei in enumerate(e):
            if not ei:
                continue
            # x e_i = sum_r x[r, i] e_r
            for r in range(n):
                c = x[r, i]
                if not c:
                    continue
                f = list(e)
                f[i] -= 1
                f[r] += 1
                out[index[tuple(f)] * size + col] += ei * c
    return RationalMatrix(size, size, out)


def sym_power(d: int, n: int) -> Representation:
    if d < 1 or n < 2:
        raise ValueError("sym_power needs d >= 1 and n >= 2")
    f = FactorSpec.sl(n)
    return _single(f, comb(n + d - 1, d), [sym_power_matrix(b, d) for b in basis(f)])


def ext_square_matrix(x: RationalMatrix) -> RationalMatrix:
    n = x.rows
    pairs = list(combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    size = len(pairs)
    out = [0] * (size * size)

    def add(r: int, s: int, col: int, c) -> None:
        if r == s:
            return
        if r < s:
            out[index[(r, s)] * size + col] += c
        else:
            out[index[(s, r)] * size + col] -= c

    for col, (i, j) in enumerate(pairs):
        for r in range(n):
            if x[r, i]:
                add(r, j, col, x[r, i])
            if x[r, j]:
                add(i, r, col, x[r, j])
    return RationalMatrix(size, size, out)


def ext_square(n: int) -> Representation:
    if n < 2:
        raise ValueError("ext_square needs n >= 2")
    f = FactorSpec.sl(n)
    return _single(f, n * (n - 1) // 2, [ext_square_matrix(b) for b in basis(f)])


def general_tensor(reps: Sequence[Representation]) -> Representation:
    """Tensor product of representations of the summands of a direct sum."""
    reps = list(reps)
    if not reps:
        raise ValueError("need at least one representation")
    if len(reps) == 1:
        return reps[0]
    degrees = [r.degree for r in reps]
    total = prod(degrees)
    algebra = AlgebraSpec(tuple(f for r in reps for f in r.algebra.factors))
    mats = []
    for idx, r in enumerate(reps):
        left, right = prod(degrees[:idx]), prod(degrees[idx + 1:])
        mats.extend(embed(m, left, right) for m in r.matrices)
    return Representation(algebra, total, tuple(mats))


def factor_rep(factor: FactorSpec, token: str) -> Representation:
    """The representation named by ``token`` on a single factor.

    gl(1) takes the scalar weights 1, -1, 2, 3 for L1, L1*, 2L1, 3L1 (the
    action on the corresponding power of V(1)). sl(1) = 0 acts on V(1).
    """
    if token not in REP_TOKENS:
        raise UnsupportedRep(f"unknown representation {token!r}")
    if token == "L2" and factor.n < 2:
        raise UnsupportedRep(f"L2 needs n >= 2, got {factor}")
    if factor.kind is FactorKind.GL1:
        return gl1_rep({"L1": 1, "L1*": -1, "2L1": 2, "3L1": 3}[token])
    n = factor.n
    if n == 1:
        return _single(factor, 1, ())
    if token == "L1":
        return identity_rep(n)
    if token == "L1*":
        return dual_rep(identity_rep(n))
    if token == "L2":
        return ext_square(n)
    return sym_power(int(token[0]), n)


def build_triplet(labels: Sequence[tuple[FactorSpec, str]]) -> Triplet:
    labels = tuple(labels)
    if not labels:
        raise ValueError("empty triplet")
    rep = general_tensor([factor_rep(f, tok) for f, tok in labels])
    return Triplet(rep.algebra, rep, rep.degree, labels)


def tensor_triplet(sol: Solution) -> Triplet:
    """``(gl(1)+sl(a)+sl(m_1)+..., L1 # Lambda # L1 # ...)`` for a solution.

    Parts equal to 1 contribute a trivial one-dimensional slot and no algebra.
    """
    _check_a(sol.a)
    labels = [(FactorSpec.gl1(), "L1"), (FactorSpec.sl(sol.a), LAMBDA_FOR_A[sol.a])]
    labels += [(FactorSpec.sl(m), "L1") for m in sol.parts if m != 1]
    t = build_triplet(labels)
    assert t.space_dim == sol.space_dim
    return t


def _sparse_product(a: RationalMatrix, b: RationalMatrix) -> dict[tuple[int, int], object]:
    out: dict[tuple[int, int], object] = {}
    b_rows = b.sparse_rows()
    for i, arow in enumerate(a.sparse_rows()):
        for k, x in arow.items():
            for j, y in b_rows[k].items():
                out[(i, j)] = out.get((i, j), 0) + x * y
    return out


def _drop_zeros(d: dict) -> dict:
    return {key: v for key, v in d.items() if v}


def homomorphism_defects(rep: Representation, pairs=None) -> list[tuple[int, int]]:
    """Basis pairs ``(i, j)`` where ``rho([X_i, X_j]) != [rho(X_i), rho(X_j)]``.

    ``pairs`` restricts the check; by default every pair ``i < j`` is tested.
    Products are taken on the nonzero entries only, so Kronecker-embedded
    matrices of degree ~150 stay cheap.
    """
    mats = rep.matrices
    n = len(mats)
    if pairs is None:
        pairs = ((i, j) for i in range(n) for j in range(i + 1, n))
    bad = []
    for i, j in pairs:
        comm = _sparse_product(mats[i], mats[j])
        for key, v in _sparse_product(mats[j], mats[i]).items():
            comm[key] = comm.get(key, 0) - v
        image: dict[tuple[int, int], object] = {}
        for k, c in bracket_coordinates(rep.algebra, i, j).items():
            for r, row in enumerate(mats[k].sparse_rows()):
                for col, x in row.items():
                    image[(r, col)] = image.get((r, col), 0) + c * x
        if _drop_zeros(comm) != _drop_zeros(image):
            bad.append((i, j))
    return bad


def is_homomorphism(rep: Representation, sample: int | None = None, seed: int = 0) -> bool:
    """Exhaustive bracket check, or ``sample`` random pairs when given."""
    pairs = None
    n = len(rep.matrices)
    if sample is not None and n > 1:
        rng = random.Random(seed)
        pairs = []
        for _ in range(sample):
            i, j = rng.sample(range(n), 2)
            pairs.append((min(i, j), max(i, j)))
    return not homomorphism_defects(rep, pairs)


def conjugate(rep: Representation, p: RationalMatrix, p_inv: RationalMatrix) -> Representation:
    """``X -> p^-1 rho(X) p``: the same representation in the basis given by the columns of ``p``."""
    return Representation(rep.algebra, rep.degree, tuple(p_inv @ m @ p for m in rep.matrices))

