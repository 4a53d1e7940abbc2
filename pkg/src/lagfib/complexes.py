"""Free Z[pi]-chain complexes and their cohomology with twisted coefficients.

``boundaries[k - 1]`` is the matrix of d_k : C_k -> C_{k-1}, of shape
rank(k-1) x rank(k); column i lists the coefficients of d_k(e_i).  Applying
a representation rho gives the cochain map

    delta_k = rho(d_k^T)     (blockwise, shape n*rank(k) x n*rank(k-1))

i.e. (delta tau)(e) = tau(d e) with the group acting on Z^n through rho.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .affine import GroupPresentation, Representation, evaluate_word
from .errors import DimensionMismatch, NotAComplex, PresentationMismatch
from .linalg import IntMatrix, inverse_unimodular, smith_normal_form


@dataclass(frozen=True)
class GroupRingElement:
    """Finite sum of coefficient * group word."""

    terms: tuple = ()

    def __post_init__(self):
        terms = tuple((int(c), tuple((int(g), int(e)) for g, e in w))
                      for c, w in self.terms if int(c) != 0)
        object.__setattr__(self, "terms", terms)

    @classmethod
    def parse(cls, pres: GroupPresentation, pairs) -> "GroupRingElement":
        """From ``[(1, ""), (-1, "t")]`` style pairs."""
        return cls(tuple((c, pres.parse_word(w) if isinstance(w, str) else w) for c, w in pairs))

    def __add__(self, other):
        return GroupRingElement(self.terms + other.terms)

    def __neg__(self):
        return GroupRingElement(tuple((-c, w) for c, w in self.terms))

    def __mul__(self, other):
        return GroupRingElement(tuple((c1 * c2, w1 + w2)
                                      for c1, w1 in self.terms for c2, w2 in other.terms))


ZERO = GroupRingElement()


def apply_representation(elem: GroupRingElement, rep: Representation) -> IntMatrix:
    n = rep.n
    out = IntMatrix.zeros(n, n)
    for c, w in elem.terms:
        out = out + evaluate_word(rep, w, n) * c
    return out


@dataclass(frozen=True)
class TwistedComplex:
    presentation: GroupPresentation
    ranks: tuple
    boundaries: tuple  # boundaries[k-1][i][j]: coefficient of e^{k-1}_i in d(e^k_j)

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        bds = tuple(tuple(tuple(x if isinstance(x, GroupRingElement) else GroupRingElement(x)
                                for x in row) for row in b) for b in self.boundaries)
        object.__setattr__(self, "boundaries", bds)
        if len(bds) != max(len(self.ranks) - 1, 0):
            raise DimensionMismatch(f"{len(bds)} boundary maps for {len(self.ranks)} degrees")
        for k, b in enumerate(bds, start=1):
            if len(b) != self.ranks[k - 1] or any(len(row) != self.ranks[k] for row in b):
                raise DimensionMismatch(f"boundary d_{k} must be {self.ranks[k - 1]}x{self.ranks[k]}")
            for row in b:
                for x in row:
                    for _, w in x.terms:
                        self.presentation.check_word(w)

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1


@dataclass(frozen=True)
class CochainComplex:
    """``deltas[k - 1]`` is delta_k : C^{k-1} -> C^k."""

    dims: tuple
    deltas: tuple

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "deltas", tuple(self.deltas))
        if len(self.deltas) != max(len(self.dims) - 1, 0):
            raise DimensionMismatch("need one coboundary between consecutive degrees")
        for k, d in enumerate(self.deltas, start=1):
            if d.shape != (self.dims[k], self.dims[k - 1]):
                raise DimensionMismatch(
                    f"delta_{k} has shape {d.shape}, expected {(self.dims[k], self.dims[k - 1])}")

    def delta(self, k: int) -> IntMatrix:
        """delta_k : C^{k-1} -> C^k, zero maps outside the stored range."""
        top = len(self.dims) - 1
        if 1 <= k <= top:
            return self.deltas[k - 1]
        rows = self.dims[k] if 0 <= k <= top else 0
        cols = self.dims[k - 1] if 0 <= k - 1 <= top else 0
        return IntMatrix.zeros(rows, cols)

    def check(self):
        for k in range(1, len(self.deltas)):
            if not (self.deltas[k] @ self.deltas[k - 1]).is_zero():
                raise NotAComplex(f"delta_{k + 1} . delta_{k} != 0")


def to_cochain_complex(cx: TwistedComplex, rep: Representation) -> CochainComplex:
    if rep.presentation != cx.presentation:
        raise PresentationMismatch("representation is over a different presentation")
    n = rep.n
    deltas = []
    for k, b in enumerate(cx.boundaries, start=1):
        rows, cols = cx.ranks[k], cx.ranks[k - 1]
        blocks = [[apply_representation(b[j][i], rep) for j in range(cols)] for i in range(rows)]
        if rows == 0 or cols == 0:
            deltas.append(IntMatrix.zeros(n * rows, n * cols))
        else:
            deltas.append(IntMatrix.block(blocks, n, n))
    cc = CochainComplex(tuple(n * r for r in cx.ranks), tuple(deltas))
    cc.check()
    return cc


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative rank")
        if any(t <= 1 for t in self.torsion):
            raise ValueError("torsion coefficients must exceed 1")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("torsion coefficients must form a divisibility chain")

    @classmethod
    def from_invariants(cls, factors: Sequence[int], free_rank: int) -> "AbelianGroup":
        return cls(free_rank, tuple(d for d in factors if d > 1))

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        for t, grp in itertools.groupby(self.torsion):
            k = len(list(grp))
            parts.append(f"Z/{t}" if k == 1 else f"(Z/{t})^{k}")
        return " + ".join(parts) or "0"


def cohomology(cc: CochainComplex, k: int) -> AbelianGroup:
    """ker(delta_{k+1}) / im(delta_k)."""
    if not 0 <= k < len(cc.dims):
        raise ValueError(f"degree {k} outside 0..{len(cc.dims) - 1}")
    nxt, cur = cc.delta(k + 1), cc.delta(k)
    snf = smith_normal_form(nxt)
    r = snf.rank
    kdim = cc.dims[k] - r
    if kdim == 0:
        return AbelianGroup(0)
    # coordinates of im(delta_k) in the kernel basis given by columns r.. of V
    vinv = inverse_unimodular(snf.V)
    proj = IntMatrix.from_rows([vinv.row(i) for i in range(r, cc.dims[k])], cc.dims[k])
    coords = proj @ cur
    sub = smith_normal_form(coords)
    factors = [d for d in sub.diagonal if d]
    return AbelianGroup.from_invariants(factors, kdim - len(factors))


def euler_characteristic(cc: CochainComplex) -> int:
    return sum((-1) ** k * d for k, d in enumerate(cc.dims))
