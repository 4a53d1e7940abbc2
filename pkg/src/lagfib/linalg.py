"""Exact integer linear algebra.

Matrices hold Python ints, so nothing overflows and nothing is rounded.
Normal forms follow fixed conventions:

* Smith: ``U @ M @ V == D`` with ``D`` diagonal, nonnegative,
  ``d[i] | d[i+1]`` and zeros last.  Pivots are chosen as the smallest
  absolute nonzero entry, ties broken by (row, column), so output is
  deterministic.
* Hermite: row style, ``U @ M == H`` with positive pivots and the entries
  above each pivot reduced into ``[0, pivot)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NoSolution, NotPrimitive, NotUnimodular

Vector = tuple  # tuple of ints


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    # construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.scalar(n, 1)

    @classmethod
    def scalar(cls, n: int, c: int) -> "IntMatrix":
        return cls(n, n, tuple(c if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diag(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None):
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        data = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            data[i][i] = v
        return cls.from_rows(data, cols)

    @classmethod
    def column(cls, v: Sequence[int]) -> "IntMatrix":
        return cls(len(v), 1, tuple(int(x) for x in v))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        data = [[c[i] for c in columns] for i in range(rows)]
        return cls.from_rows(data, len(columns))

    @classmethod
    def block(cls, blocks: Sequence[Sequence["IntMatrix"]], block_rows: int, block_cols: int):
        """Assemble from a grid of equally sized blocks."""
        nr, nc = len(blocks), (len(blocks[0]) if blocks else 0)
        data = [[0] * (nc * block_cols) for _ in range(nr * block_rows)]
        for bi, brow in enumerate(blocks):
            for bj, b in enumerate(brow):
                if (b.rows, b.cols) != (block_rows, block_cols):
                    raise DimensionMismatch("block has the wrong shape")
                for i in range(block_rows):
                    base = i * b.cols
                    out = data[bi * block_rows + i]
                    for j in range(block_cols):
                        out[bj * block_cols + j] = b.entries[base + j]
        return cls.from_rows(data, nc * block_cols)

    # access

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.cols else ()

    def to_lists(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # arithmetic

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(self.entries[i * self.cols + j]
                               for j in range(self.cols) for i in range(self.rows)))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return IntMatrix(self.rows, self.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __mul__(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            ocols = [other.col(j) for j in range(other.cols)]
            out = []
            for i in range(self.rows):
                r = self.row(i)
                out.extend(sum(a * b for a, b in zip(r, c) if a) for c in ocols)
            return IntMatrix(self.rows, other.cols, tuple(out))
        return self.apply(other)

    def apply(self, v: Sequence) -> tuple:
        """Matrix times vector; works for any exact number type in ``v``."""
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(sum((a * b for a, b in zip(self.row(i), v) if a), 0 * v[0] if v else 0)
                     for i in range(self.rows))

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise DimensionMismatch("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_lists()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def __repr__(self):
        return f"IntMatrix({self.to_lists()!r})"


def as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix.from_rows(m)


def is_unimodular(m: IntMatrix) -> bool:
    return m.is_square() and abs(m.det()) == 1


def vector_gcd(v: Iterable[int]) -> int:
    return reduce(gcd, (abs(int(x)) for x in v), 0)


# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple:
        return tuple(self.D[i, i] for i in range(min(self.D.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap_cols(a, i, j):
    for r in a:
        r[i], r[j] = r[j], r[i]


def _add_row(a, dst, src, q):
    """row[dst] += q * row[src]"""
    rs, rd = a[src], a[dst]
    for k, x in enumerate(rs):
        if x:
            rd[k] += q * x


def _add_col(a, dst, src, q):
    for r in a:
        if r[src]:
            r[dst] += q * r[src]


@lru_cache(maxsize=256)
def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    r, c = m.shape
    a = m.to_lists()
    u = IntMatrix.identity(r).to_lists()
    v = IntMatrix.identity(c).to_lists()
    t = 0
    while t < min(r, c):
        best = None
        for i in range(t, r):
            row = a[i]
            for j in range(t, c):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            _swap_rows(a, t, i)
            _swap_rows(u, t, i)
        if j != t:
            _swap_cols(a, t, j)
            _swap_cols(v, t, j)
        p = a[t][t]
        dirty = False
        for i in range(t + 1, r):
            if a[i][t]:
                q = -(a[i][t] // p)
                _add_row(a, i, t, q)
                _add_row(u, i, t, q)
                dirty = dirty or a[i][t] != 0
        for j in range(t + 1, c):
            if a[t][j]:
                q = -(a[t][j] // p)
                _add_col(a, j, t, q)
                _add_col(v, j, t, q)
                dirty = dirty or a[t][j] != 0
        if dirty:
            # a remainder smaller than |p| now sits in row/column t
            continue
        bad = next((i for i in range(t + 1, r)
                    if any(x % p for x in a[i][t + 1:])), None)
        if bad is not None:
            _add_row(a, t, bad, 1)
            _add_row(u, t, bad, 1)
            continue
        if p < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return SmithDecomposition(IntMatrix.from_rows(u, r), IntMatrix.from_rows(a, c),
                              IntMatrix.from_rows(v, c))


def invariant_factors(m: IntMatrix) -> tuple:
    return tuple(d for d in smith_normal_form(m).diagonal if d)


# Hermite normal form


def hermite_normal_form(m: IntMatrix) -> tuple:
    """Return ``(H, U)`` with ``U @ m == H`` in row-style Hermite form."""
    r, c = m.shape
    a = m.to_lists()
    u = IntMatrix.identity(r).to_lists()
    pr = 0
    for j in range(c):
        if pr == r:
            break
        while True:
            nz = [i for i in range(pr, r) if a[i][j]]
            if not nz:
                break
            i = min(nz, key=lambda k: (abs(a[k][j]), k))
            if i != pr:
                _swap_rows(a, pr, i)
                _swap_rows(u, pr, i)
            p = a[pr][j]
            done = True
            for i in range(pr + 1, r):
                if a[i][j]:
                    q = -(a[i][j] // p)
                    _add_row(a, i, pr, q)
                    _add_row(u, i, pr, q)
                    done = done and a[i][j] == 0
            if done:
                break
        if not a[pr][j]:
            continue
        if a[pr][j] < 0:
            a[pr] = [-x for x in a[pr]]
            u[pr] = [-x for x in u[pr]]
        p = a[pr][j]
        for i in range(pr):
            q = -(a[i][j] // p)
            if q:
                _add_row(a, i, pr, q)
                _add_row(u, i, pr, q)
        pr += 1
    return IntMatrix.from_rows(a, c), IntMatrix.from_rows(u, r)


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    if not m.is_square():
        raise DimensionMismatch("inverse of a non-square matrix")
    h, u = hermite_normal_form(m)
    if h != IntMatrix.identity(m.rows):
        raise NotUnimodular(f"matrix has determinant {m.det()}")
    return u


# Diophantine systems


@dataclass(frozen=True)
class DiophantineSolution:
    particular: tuple
    kernel: tuple  # tuple of basis vectors of ker M over Z


def kernel_basis(m: IntMatrix) -> tuple:
    """A Z-basis of the integer kernel of ``m`` (columns of V past the rank)."""
    snf = smith_normal_form(m)
    return tuple(snf.V.col(j) for j in range(snf.rank, m.cols))


def solve_diophantine(m: IntMatrix, b: Sequence[int]) -> DiophantineSolution:
    """Solve ``m @ x == b`` over the integers.

    Raises ``NoSolution`` when ``b`` is not in the integer image of ``m``.
    """
    if len(b) != m.rows:
        raise DimensionMismatch(f"right-hand side has length {len(b)}, expected {m.rows}")
    snf = smith_normal_form(m)
    rhs = snf.U.apply(tuple(int(x) for x in b))
    diag = snf.diagonal
    y = [0] * m.cols
    for i, ci in enumerate(rhs):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if ci:
                raise NoSolution(f"component {i} of the reduced system is inconsistent")
        elif ci % d:
            raise NoSolution(f"{d} does not divide {ci} in the reduced system")
        else:
            y[i] = ci // d
    x = snf.V.apply(tuple(y)) if m.cols else ()
    if tuple(m.apply(x)) != tuple(int(v) for v in b):
        raise AssertionError("substitution check failed")  # pragma: no cover
    return DiophantineSolution(tuple(x), tuple(snf.V.col(j) for j in range(snf.rank, m.cols)))


def complete_primitive(v: Sequence[int]) -> IntMatrix:
    """Unimodular ``G`` with ``inverse(G).T @ e1 == v``.

    If ``U @ v == e1`` then ``G = U.T`` works, since ``inverse(U.T).T``
    is ``inverse(U)`` and its first column is ``v``.
    """
    v = tuple(int(x) for x in v)
    if not any(v):
        raise NotPrimitive("zero vector")
    g = vector_gcd(v)
    if g != 1:
        raise NotPrimitive(f"gcd of {v} is {g}")
    h, u = hermite_normal_form(IntMatrix.column(v))
    assert h.col(0) == (1,) + (0,) * (len(v) - 1)
    return u.T
