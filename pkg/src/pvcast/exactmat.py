"""Exact dense linear algebra over the rationals and over prime fields.

Entries are stored as Python ``int`` when integral and as
:class:`fractions.Fraction` otherwise, so every entry is in lowest terms with
a positive denominator. Rank over Q uses fraction-free (Bareiss) elimination
on an integer rescaling of the rows; rank modulo a prime is plain Gaussian
elimination over GF(p).

Tensor products use row-major ordering of the basis ``e_i (x) f_j`` with the
first factor major, i.e. index ``i * dim(f) + j``.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Sequence

DEFAULT_PRIME = 2**61 - 1
SECOND_PRIME = 2**62 - 57

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class DenominatorDivisibleByPrime(ValueError):
    """An entry's denominator vanishes modulo the chosen prime."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for ``n < 3.3e24``."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def exact(x) -> int | Fraction:
    """Normalize a scalar to ``int`` (if integral) or a reduced ``Fraction``."""
    if isinstance(x, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return exact(Fraction(x.numerator, x.denominator))
    if isinstance(x, str):
        return exact(Fraction(x))
    raise TypeError(f"inexact or unsupported entry type: {type(x).__name__}")


class RationalMatrix:
    """Immutable dense matrix with exact rational entries.

    Args:
        rows: number of rows.
        cols: number of columns.
        entries: ``rows * cols`` scalars in row-major order. Accepts ints,
            Fractions, other ``numbers.Rational`` values and decimal strings;
            floats are rejected.
    """

    __slots__ = ("rows", "cols", "_data", "_sparse", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable) -> None:
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        data = tuple(exact(x) for x in entries)
        if len(data) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
        self.rows = rows
        self.cols = cols
        self._data = data
        self._sparse = None
        self._hash = None

    @classmethod
    def _trusted(cls, rows: int, cols: int, data: tuple) -> RationalMatrix:
        # data already normalized by the caller
        obj = cls.__new__(cls)
        obj.rows, obj.cols, obj._data = rows, cols, data
        obj._sparse = None
        obj._hash = None
        return obj

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> RationalMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, (x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> RationalMatrix:
        cols = [list(c) for c in columns]
        if rows is None:
            rows = len(cols[0]) if cols else 0
        if any(len(c) != rows for c in cols):
            raise ValueError("ragged columns")
        return cls(rows, len(cols), (cols[j][i] for i in range(rows) for j in range(len(cols))))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> RationalMatrix:
        cols = rows if cols is None else cols
        return cls._trusted(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        data = [0] * (n * n)
        for i in range(n):
            data[i * n + i] = 1
        return cls._trusted(n, n, tuple(data))

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> RationalMatrix:
        """The matrix unit ``E_ij`` of size ``n``, zero-based indices."""
        data = [0] * (n * n)
        data[i * n + j] = 1
        return cls._trusted(n, n, tuple(data))

    @classmethod
    def diag(cls, values: Sequence) -> RationalMatrix:
        n = len(values)
        data = [0] * (n * n)
        for i, v in enumerate(values):
            data[i * n + i] = exact(v)
        return cls._trusted(n, n, tuple(data))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple:
        """All entries, row-major."""
        return self._data

    def __getitem__(self, key: tuple[int, int]):
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self._data[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self._data[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self._data[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def sparse_rows(self) -> list[dict[int, int | Fraction]]:
        """Row-wise ``{column: value}`` view of the nonzero entries (cached)."""
        if self._sparse is None:
            c = self.cols
            self._sparse = [
                {j: x for j, x in enumerate(self._data[i * c:(i + 1) * c]) if x}
                for i in range(self.rows)
            ]
        return self._sparse

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}, {self.cols}, {self.to_rows()!r})"

    def _check_same_shape(self, other: RationalMatrix) -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        self._check_same_shape(other)
        return RationalMatrix._trusted(
            self.rows, self.cols, tuple(exact(x + y) for x, y in zip(self._data, other._data)))

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        self._check_same_shape(other)
        return RationalMatrix._trusted(
            self.rows, self.cols, tuple(exact(x - y) for x, y in zip(self._data, other._data)))

    def __neg__(self) -> RationalMatrix:
        return RationalMatrix._trusted(self.rows, self.cols, tuple(-x for x in self._data))

    def scale(self, c) -> RationalMatrix:
        c = exact(c)
        if c == 0:
            return RationalMatrix.zeros(self.rows, self.cols)
        return RationalMatrix._trusted(self.rows, self.cols, tuple(exact(c * x) for x in self._data))

    def __mul__(self, c) -> RationalMatrix:
        if isinstance(c, RationalMatrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out = [0] * (self.rows * other.cols)
        b_rows = other.sparse_rows()
        oc = other.cols
        for i, arow in enumerate(self.sparse_rows()):
            base = i * oc
            for k, a in arow.items():
                for j, b in b_rows[k].items():
                    out[base + j] += a * b
        return RationalMatrix._trusted(self.rows, oc, tuple(exact(x) for x in out))

    def matvec(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for matrix with {self.cols} columns")
        v = [exact(x) for x in v]
        return tuple(exact(sum(x * v[j] for j, x in row.items())) for row in self.sparse_rows())

    @property
    def T(self) -> RationalMatrix:
        r, c, d = self.rows, self.cols, self._data
        return RationalMatrix._trusted(c, r, tuple(d[i * c + j] for j in range(c) for i in range(r)))

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        return exact(sum(self._data[i * self.cols + i] for i in range(self.rows)))

    def commutator(self, other: RationalMatrix) -> RationalMatrix:
        return self @ other - other @ self

    def is_zero(self) -> bool:
        return not any(self._data)

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for x in self._data)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> RationalMatrix:
        """Submatrix of rows ``r0:r1`` and columns ``c0:c1``."""
        c = self.cols
        return RationalMatrix._trusted(
            r1 - r0, c1 - c0,
            tuple(self._data[i * c + j] for i in range(r0, r1) for j in range(c0, c1)))

    def integer_rows(self) -> list[list[int]]:
        """Rows rescaled by the lcm of their denominators; preserves rank."""
        out = []
        for i in range(self.rows):
            row = self.row(i)
            dens = [x.denominator for x in row if isinstance(x, Fraction)]
            if dens:
                s = lcm(*dens)
                out.append([int(x * s) for x in row])
            else:
                out.append(list(row))
        return out


class ModularMatrix:
    """Dense matrix over GF(p) for a prime ``p >= 2**60``."""

    __slots__ = ("rows", "cols", "entries", "prime")

    def __init__(self, rows: int, cols: int, entries: Iterable[int], prime: int = DEFAULT_PRIME,
                 *, check_prime: bool = True) -> None:
        if prime < 2**60:
            raise ValueError("modulus must be at least 2**60")
        if check_prime and not is_prime(prime):
            raise ValueError(f"{prime} is not prime")
        data = tuple(int(x) % prime for x in entries)
        if len(data) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
        self.rows, self.cols, self.entries, self.prime = rows, cols, data, prime

    @classmethod
    def from_rational(cls, m: RationalMatrix, prime: int = DEFAULT_PRIME) -> ModularMatrix:
        if not is_prime(prime):
            raise ValueError(f"{prime} is not prime")
        out = []
        for x in m.entries:
            if isinstance(x, Fraction):
                if x.denominator % prime == 0:
                    raise DenominatorDivisibleByPrime(
                        f"denominator {x.denominator} is divisible by {prime}")
                out.append(x.numerator * pow(x.denominator, -1, prime) % prime)
            else:
                out.append(x % prime)
        return cls(m.rows, m.cols, out, prime, check_prime=False)

    def rank(self) -> int:
        p = self.prime
        c = self.cols
        m = [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]
        rank = 0
        for col in range(c):
            piv = next((i for i in range(rank, self.rows) if m[i][col]), None)
            if piv is None:
                continue
            m[rank], m[piv] = m[piv], m[rank]
            prow = m[rank]
            inv = pow(prow[col], -1, p)
            prow[col:] = [x * inv % p for x in prow[col:]]
            for i in range(rank + 1, self.rows):
                f = m[i][col]
                if f:
                    row = m[i]
                    row[col:] = [(x - f * y) % p for x, y in zip(row[col:], prow[col:])]
            rank += 1
            if rank == self.rows:
                break
        return rank


def _bareiss_rank(m: list[list[int]], ncols: int) -> int:
    # Every entry after step k is a (k+1)-minor, so the division by the
    # previous pivot is exact.
    nrows = len(m)
    prev = 1
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        p = prow[col]
        tail = prow[col + 1:]
        for i in range(rank + 1, nrows):
            row = m[i]
            f = row[col]
            if f:
                row[col + 1:] = [(x * p - f * y) // prev for x, y in zip(row[col + 1:], tail)]
            elif prev != p:
                row[col + 1:] = [x * p // prev for x in row[col + 1:]]
            row[col] = 0
        prev = p
        rank += 1
    return rank


def rank_exact(m: RationalMatrix) -> int:
    """Rank over Q by fraction-free elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    rows = m.integer_rows()
    # eliminate along the shorter side
    if m.cols > m.rows:
        rows = [list(col) for col in zip(*rows)]
        return _bareiss_rank(rows, m.rows)
    return _bareiss_rank(rows, m.cols)


def rank_modular(m: RationalMatrix, p: int = DEFAULT_PRIME) -> int:
    """Rank of the reduction of ``m`` modulo ``p``; never exceeds :func:`rank_exact`."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return ModularMatrix.from_rational(m, p).rank()


def kernel_dim(m: RationalMatrix) -> int:
    return m.cols - rank_exact(m)


def kron(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """Kronecker product, first factor major."""
    rows, cols = a.rows * b.rows, a.cols * b.cols
    out = [0] * (rows * cols)
    b_sparse = b.sparse_rows()
    for i1, arow in enumerate(a.sparse_rows()):
        for j1, x in arow.items():
            for i2, brow in enumerate(b_sparse):
                base = (i1 * b.rows + i2) * cols + j1 * b.cols
                for j2, y in brow.items():
                    out[base + j2] = exact(x * y)
    return RationalMatrix._trusted(rows, cols, tuple(out))


def kronecker_sum(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """``a (x) I_m + I_n (x) b`` for square ``a`` (n x n) and ``b`` (m x m)."""
    if a.rows != a.cols or b.rows != b.cols:
        raise ValueError("kronecker_sum needs square matrices")
    return kron(a, RationalMatrix.identity(b.rows)) + kron(RationalMatrix.identity(a.rows), b)


def embed(m: RationalMatrix, left: int, right: int) -> RationalMatrix:
    """``I_left (x) m (x) I_right`` for square ``m``."""
    out = m
    if right > 1:
        out = kron(out, RationalMatrix.identity(right))
    if left > 1:
        out = kron(RationalMatrix.identity(left), out)
    return out


def inverse(m: RationalMatrix) -> RationalMatrix:
    """Exact inverse by Gauss-Jordan; pivots chosen by largest absolute numerator.

    Raises:
        ZeroDivisionError: if ``m`` is singular.
    """
    n = m.rows
    if m.cols != n:
        raise ValueError("inverse of a non-square matrix")
    a = [[Fraction(x) for x in m.row(i)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = max(range(col, n), key=lambda i: abs(a[i][col].numerator))
        if a[piv][col] == 0:
            raise ZeroDivisionError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        prow = a[col]
        p = prow[col]
        prow[:] = [x / p for x in prow]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], prow)]
    return RationalMatrix(n, n, (x for row in a for x in row[n:]))


def pivot_columns(m: RationalMatrix) -> list[int]:
    """Pivot columns of the row echelon form (partial pivoting by numerator size)."""
    a = [[Fraction(x) for x in m.row(i)] for i in range(m.rows)]
    pivots = []
    r = 0
    for col in range(m.cols):
        if r == m.rows:
            break
        piv = max(range(r, m.rows), key=lambda i: abs(a[i][col].numerator))
        if a[piv][col] == 0:
            continue
        a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        for i in range(r + 1, m.rows):
            if a[i][col]:
                f = a[i][col] / prow[col]
                a[i] = [x - f * y for x, y in zip(a[i], prow)]
        pivots.append(col)
        r += 1
    return pivots
