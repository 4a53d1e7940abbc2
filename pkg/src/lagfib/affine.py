"""Integral affine groups, group presentations and GL(n, Z) representations.

``AffReal`` is GL(n, Z) x| R^n with rational translations, ``AffToral`` is
GL(n, Z) x| T^n with T^n = R^n / Z^n (translations kept in [0, 1)).  Both use
the product (A, x)(B, y) = (AB, Ay + x).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Sequence

from .errors import DimensionMismatch, NotUnimodular, PresentationMismatch, RelatorViolated
from .linalg import IntMatrix, as_matrix, inverse_unimodular, smith_normal_form


def _frac_vector(v) -> tuple:
    return tuple(Fraction(x) for x in v)


def mod1(v) -> tuple:
    return tuple(x - floor(x) for x in v)


@dataclass(frozen=True)
class AffReal:
    linear: IntMatrix
    translation: tuple

    def __post_init__(self):
        object.__setattr__(self, "linear", as_matrix(self.linear))
        object.__setattr__(self, "translation", _frac_vector(self.translation))
        if not self.linear.is_square() or abs(self.linear.det()) != 1:
            raise NotUnimodular(f"linear part {self.linear} is not in GL(n, Z)")
        if self.linear.rows != len(self.translation):
            raise DimensionMismatch("linear part and translation have different sizes")

    @property
    def n(self) -> int:
        return self.linear.rows

    @classmethod
    def identity(cls, n: int):
        return cls(IntMatrix.identity(n), (0,) * n)

    def __mul__(self, other):
        return aff_mul(self, other)

    def inverse(self):
        return aff_inverse(self)

    def __call__(self, x: Sequence) -> tuple:
        return tuple(a + b for a, b in zip(self.linear.apply(_frac_vector(x)), self.translation))


@dataclass(frozen=True)
class AffToral(AffReal):
    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "translation", mod1(self.translation))


def aff_mul(x: AffReal, y: AffReal) -> AffReal:
    if type(x) is not type(y):
        raise TypeError(f"cannot multiply {type(x).__name__} by {type(y).__name__}")
    if x.n != y.n:
        raise DimensionMismatch(f"dimensions {x.n} and {y.n} differ")
    t = tuple(a + b for a, b in zip(x.linear.apply(y.translation), x.translation))
    return type(x)(x.linear @ y.linear, t)


def aff_inverse(x: AffReal) -> AffReal:
    inv = inverse_unimodular(x.linear)
    return type(x)(inv, tuple(-c for c in inv.apply(x.translation)))


def to_toral(x: AffReal) -> AffToral:
    """Image under the quotient R^n -> T^n."""
    return AffToral(x.linear, x.translation)


# presentations and representations

_LETTER = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class GroupPresentation:
    """Generators plus relators; a word is a tuple of (generator index, +-1)."""

    generators: tuple
    relators: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        rels = tuple(tuple((int(g), int(e)) for g, e in w) for w in self.relators)
        object.__setattr__(self, "relators", rels)
        if len(set(self.generators)) != len(self.generators):
            raise PresentationMismatch("duplicate generator names")
        for w in rels:
            self.check_word(w)

    def check_word(self, word):
        for g, e in word:
            if not 0 <= g < len(self.generators) or e not in (1, -1):
                raise PresentationMismatch(f"invalid letter ({g}, {e})")

    def parse_word(self, text: str) -> tuple:
        """Parse ``"a b^-1 a^2"``; ``""`` and ``"1"`` mean the empty word."""
        word = []
        for tok in text.replace("*", " ").split():
            if tok == "1":
                continue
            m = _LETTER.match(tok)
            if not m or m.group(1) not in self.generators:
                raise PresentationMismatch(f"unknown letter {tok!r}")
            g = self.generators.index(m.group(1))
            k = int(m.group(2) or 1)
            word.extend([(g, 1 if k > 0 else -1)] * abs(k))
        return tuple(word)

    def format_word(self, word) -> str:
        return " ".join(self.generators[g] + ("" if e == 1 else "^-1") for g, e in word)

    @classmethod
    def parse(cls, generators, relators=()):
        pres = cls(tuple(generators))
        return cls(pres.generators, tuple(pres.parse_word(r) for r in relators))


def _multiply_word(images, inverses, word, n) -> IntMatrix:
    out = IntMatrix.identity(n)
    for g, e in word:
        out = out @ (images[g] if e == 1 else inverses[g])
    return out


@dataclass(frozen=True)
class Representation:
    """Images of the generators in GL(n, Z).  Build through ``validate_representation``."""

    presentation: GroupPresentation
    images: tuple
    dim: int = 0  # only consulted when there are no generators

    @property
    def n(self) -> int:
        return self.images[0].rows if self.images else self.dim

    def image(self, name: str) -> IntMatrix:
        return self.images[self.presentation.generators.index(name)]

    def __call__(self, word) -> IntMatrix:
        return evaluate_word(self, word)


def evaluate_word(rep: Representation, word, n: int | None = None) -> IntMatrix:
    if isinstance(word, str):
        word = rep.presentation.parse_word(word)
    rep.presentation.check_word(word)
    n = rep.n if n is None else n
    inverses = {g: inverse_unimodular(rep.images[g]) for g in {g for g, e in word if e == -1}}
    return _multiply_word(rep.images, inverses, word, n)


def validate_representation(pres: GroupPresentation, images: Sequence, n: int | None = None) -> Representation:
    images = tuple(as_matrix(m) for m in images)
    if len(images) != len(pres.generators):
        raise PresentationMismatch(
            f"{len(images)} images for {len(pres.generators)} generators")
    sizes = {m.shape for m in images}
    if len(sizes) > 1 or any(r != c for r, c in sizes):
        raise DimensionMismatch("images must be square matrices of one size")
    for name, m in zip(pres.generators, images):
        d = m.det()
        if abs(d) != 1:
            raise NotUnimodular(f"image of {name} has determinant {d}")
    if n is None:
        n = images[0].rows if images else 0
    rep = Representation(pres, images, n)
    ident = IntMatrix.identity(n)
    for w in pres.relators:
        if evaluate_word(rep, w, n) != ident:
            raise RelatorViolated(f"relator {pres.format_word(w)!r} is not the identity",
                                  relator=pres.format_word(w))
    return rep


def trivial_representation(pres: GroupPresentation, n: int) -> Representation:
    return validate_representation(pres, [IntMatrix.identity(n)] * len(pres.generators), n)


# conjugacy


@dataclass(frozen=True)
class Conjugate:
    witness: IntMatrix


@dataclass(frozen=True)
class NotConjugate:
    reason: str
    word: str
    invariant: str
    first: object
    second: object


@dataclass(frozen=True)
class Unknown:
    reason: str


def characteristic_polynomial(m: IntMatrix) -> tuple:
    """Coefficients of det(xI - m), leading first (Faddeev-LeVerrier)."""
    n = m.rows
    coeffs = [1]
    acc = IntMatrix.zeros(n, n)
    ident = IntMatrix.identity(n)
    for k in range(1, n + 1):
        acc = m @ (acc + ident * coeffs[-1])
        tr = sum(acc[i, i] for i in range(n))
        assert tr % k == 0
        coeffs.append(-tr // k)
    return tuple(coeffs)


def _short_words(ngens: int, maxlen: int):
    letters = [(g, e) for g in range(ngens) for e in (1, -1)]
    for length in range(1, maxlen + 1):
        yield from itertools.product(letters, repeat=length)


def _elementary_divisors(m: IntMatrix) -> tuple:
    # cokernel type of m; zeros count free summands
    d = smith_normal_form(m).diagonal
    return tuple(x for x in d if x != 1) + (0,) * (m.rows - len(d))


def _separating_invariant(r1: Representation, r2: Representation, maxlen: int = 3):
    n = r1.n
    ident = IntMatrix.identity(n)
    pres = r1.presentation
    for word in _short_words(len(pres.generators), maxlen):
        a, b = evaluate_word(r1, word), evaluate_word(r2, word)
        name = pres.format_word(word)
        ta, tb = sum(a[i, i] for i in range(n)), sum(b[i, i] for i in range(n))
        if ta != tb:
            return NotConjugate(f"trace of {name} differs", name, "trace", ta, tb)
        pa, pb = characteristic_polynomial(a), characteristic_polynomial(b)
        if pa != pb:
            return NotConjugate(f"characteristic polynomial of {name} differs", name,
                                "charpoly", pa, pb)
        for shift in (-1, 1):
            ca, cb = _elementary_divisors(a + ident * shift), _elementary_divisors(b + ident * shift)
            if ca != cb:
                label = "coker(w - I)" if shift == -1 else "coker(w + I)"
                return NotConjugate(f"{label} differs for w = {name}", name, label, ca, cb)
    return None


def _intertwiner_lattice(r1: Representation, r2: Representation):
    """Integer basis (as HNF rows) of {P : P r1(g) = r2(g) P for all g}."""
    from .linalg import hermite_normal_form, kernel_basis

    n = r1.n
    rows = []
    for a, b in zip(r1.images, r2.images):
        # (P a - b P)[i][j] = sum_k P[i][k] a[k][j] - b[i][k] P[k][j]
        for i in range(n):
            for j in range(n):
                row = [0] * (n * n)
                for k in range(n):
                    row[i * n + k] += a[k, j]
                    row[k * n + j] -= b[i, k]
                rows.append(row)
    if not rows:
        basis = [tuple(int(i == j) for j in range(n * n)) for i in range(n * n)]
    else:
        basis = kernel_basis(IntMatrix.from_rows(rows, n * n))
    if not basis:
        return []
    h, _ = hermite_normal_form(IntMatrix.from_rows(basis, n * n))
    return [h.row(i) for i in range(h.rows) if any(h.row(i))]


def _box_points(basis, bound: int, dim: int):
    """Yield lattice points sum c_i basis[i] with all entries in [-bound, bound].

    ``basis`` is in row echelon form, so the coefficient of row i is pinned
    down by the entry at its pivot once earlier coefficients are fixed.
    """
    pivots = [next(j for j, x in enumerate(b) if x) for b in basis]

    def rec(i, partial):
        if i == len(basis):
            yield partial
            return
        p = pivots[i]
        lo_col = pivots[i - 1] + 1 if i else 0
        # columns between previous pivot and this one are final now
        if any(abs(partial[j]) > bound for j in range(lo_col, p)):
            return
        piv = basis[i][p]
        base = partial[p]
        lo = -((bound + base) // piv)
        hi = (bound - base) // piv
        for c in range(lo, hi + 1):
            yield from rec(i + 1, tuple(x + c * y for x, y in zip(partial, basis[i])))

    for point in rec(0, (0,) * dim):
        last = pivots[-1] if pivots else -1
        if all(abs(x) <= bound for x in point[last:]) and all(abs(x) <= bound for x in point):
            yield point


def conjugacy_check(r1: Representation, r2: Representation, bound: int = 2):
    """Decide whether r2 = P r1 P^-1 for some P in GL(n, Z).

    Returns ``Conjugate(P)``, ``NotConjugate`` carrying an invariant that
    separates the two, or ``Unknown`` when no invariant separates them and
    no conjugator with entries in [-bound, bound] exists.
    """
    if r1.presentation != r2.presentation:
        raise PresentationMismatch("representations of different presentations")
    if r1.n != r2.n:
        raise PresentationMismatch(f"degrees {r1.n} and {r2.n} differ")
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    if r1.images == r2.images:
        return Conjugate(IntMatrix.identity(r1.n))
    sep = _separating_invariant(r1, r2)
    if sep is not None:
        return sep
    n = r1.n
    basis = _intertwiner_lattice(r1, r2)
    for point in _box_points(basis, bound, n * n):
        p = IntMatrix(n, n, point)
        if abs(p.det()) == 1:
            pinv = inverse_unimodular(p)
            assert all(p @ a @ pinv == b for a, b in zip(r1.images, r2.images))
            return Conjugate(p)
    return Unknown(f"no separating invariant and no conjugator with entries in [-{bound}, {bound}]")
