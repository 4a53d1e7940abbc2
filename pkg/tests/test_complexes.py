import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form as sympy_snf
from sympy.polys.domains import ZZ

from lagfib.affine import GroupPresentation, trivial_representation, validate_representation
from lagfib.complexes import (AbelianGroup, CochainComplex, GroupRingElement, TwistedComplex,
                              apply_representation, cohomology, euler_characteristic,
                              to_cochain_complex)
from lagfib.datasets import rp2_twisted
from lagfib.errors import DimensionMismatch, NotAComplex
from lagfib.linalg import IntMatrix, inverse_unimodular, kernel_basis

from strategies import matrices, unimodulars

I3 = IntMatrix.identity(3)
Z2 = GroupPresentation.parse(["t"], ["t t"])
MINUS = validate_representation(Z2, [IntMatrix.scalar(3, -1)])


def element(pairs):
    return GroupRingElement.parse(Z2, pairs)


class TestApply:
    def test_one_plus_t(self):
        assert apply_representation(element([(1, ""), (1, "t")]), MINUS).is_zero()

    def test_one_minus_t(self):
        assert apply_representation(element([(1, ""), (-1, "t")]), MINUS) == IntMatrix.scalar(3, 2)

    def test_trivial(self):
        triv = trivial_representation(Z2, 3)
        assert apply_representation(element([(1, ""), (1, "t")]), triv) == IntMatrix.scalar(3, 2)

    def test_ring_product(self):
        a, b = element([(1, ""), (1, "t")]), element([(1, ""), (-1, "t")])
        # (1 + t)(1 - t) = 1 - t^2 = 0 in Z[Z/2]
        assert apply_representation(a * b, MINUS).is_zero()
        assert apply_representation(a + (-a), MINUS).is_zero()


class TestRP2:
    def test_deltas(self):
        cx, rep = rp2_twisted()
        cc = to_cochain_complex(cx, rep)
        assert cc.deltas == (IntMatrix.scalar(3, 2), IntMatrix.zeros(3, 3))

    def test_deltas_untwisted(self):
        cx, _ = rp2_twisted()
        cc = to_cochain_complex(cx, trivial_representation(Z2, 3))
        assert cc.deltas == (IntMatrix.zeros(3, 3), IntMatrix.scalar(3, 2))

    def test_twisted_cohomology(self):
        cx, rep = rp2_twisted()
        cc = to_cochain_complex(cx, rep)
        assert cohomology(cc, 0) == AbelianGroup(0)
        assert cohomology(cc, 1) == AbelianGroup(0, (2, 2, 2))
        assert cohomology(cc, 2) == AbelianGroup(3)
        assert str(cohomology(cc, 2)) == "Z^3"

    def test_untwisted_cohomology(self):
        cx, _ = rp2_twisted()
        cc = to_cochain_complex(cx, trivial_representation(Z2, 3))
        assert [str(cohomology(cc, k)) for k in range(3)] == ["Z^3", "0", "(Z/2)^3"]

    def test_mixed_representation(self):
        # t -> diag(-1, 1, 1): one twisted and two untwisted summands
        cx, _ = rp2_twisted()
        rep = validate_representation(Z2, [IntMatrix.diag([-1, 1, 1])])
        cc = to_cochain_complex(cx, rep)
        assert cohomology(cc, 0) == AbelianGroup(2)
        assert cohomology(cc, 1) == AbelianGroup(0, (2,))
        assert cohomology(cc, 2) == AbelianGroup(1, (2, 2))


class TestStructure:
    def test_zero_boundaries(self):
        pres = GroupPresentation(())
        zero = GroupRingElement()
        cx = TwistedComplex(pres, (2, 1), (((zero,), (zero,)),))
        rep = trivial_representation(pres, 2)
        cc = to_cochain_complex(cx, rep)
        assert all(d.is_zero() for d in cc.deltas)
        assert [cohomology(cc, k) for k in range(2)] == [AbelianGroup(4), AbelianGroup(2)]

    def test_bad_shapes(self):
        with pytest.raises(DimensionMismatch):
            TwistedComplex(Z2, (1, 1), ())
        with pytest.raises(DimensionMismatch):
            CochainComplex((1, 2), (IntMatrix.zeros(1, 1),))

    def test_not_a_complex(self):
        cc = CochainComplex((1, 1, 1), (IntMatrix.identity(1), IntMatrix.identity(1)))
        with pytest.raises(NotAComplex):
            cc.check()

    def test_abelian_group_validation(self):
        with pytest.raises(ValueError):
            AbelianGroup(0, (2, 3))
        assert str(AbelianGroup(1, (2, 2, 4))) == "Z + (Z/2)^2 + Z/4"
        assert str(AbelianGroup(0)) == "0"


@st.composite
def cochain_complexes(draw):
    """Random three-term complexes C0 -> C1 -> C2 with delta_2 delta_1 = 0."""
    d1 = draw(matrices(4, 4))
    c0, c1 = d1.cols, d1.rows
    left = kernel_basis(d1.T)  # rows y with y d1 = 0
    c2 = draw(st.integers(1, 4))
    if left:
        coeffs = draw(st.lists(st.lists(st.integers(-3, 3), min_size=len(left), max_size=len(left)),
                               min_size=c2, max_size=c2))
        rows = [[sum(c * y[j] for c, y in zip(cs, left)) for j in range(c1)] for cs in coeffs]
    else:
        rows = [[0] * c1 for _ in range(c2)]
    d2 = IntMatrix.from_rows(rows, c1)
    return CochainComplex((c0, c1, c2), (d1, d2))


def oracle_group(cc: CochainComplex, k: int) -> AbelianGroup:
    nxt, cur = Matrix(cc.delta(k + 1).to_lists()), Matrix(cc.delta(k).to_lists())
    rank_next = nxt.rank() if nxt.rows and nxt.cols else 0
    rank_cur = cur.rank() if cur.rows and cur.cols else 0
    free = cc.dims[k] - rank_next - rank_cur
    torsion = ()
    if cur.rows and cur.cols:
        s = sympy_snf(cur, domain=ZZ)
        torsion = tuple(sorted(abs(int(s[i, i])) for i in range(min(s.shape))
                               if abs(int(s[i, i])) > 1))
    return AbelianGroup(free, torsion)


class TestProperties:
    @settings(max_examples=80, deadline=None)
    @given(cochain_complexes())
    def test_matches_oracle(self, cc):
        cc.check()
        for k in range(3):
            assert cohomology(cc, k) == oracle_group(cc, k)

    @settings(max_examples=60, deadline=None)
    @given(cochain_complexes(), st.data())
    def test_basis_change(self, cc, data):
        ps = [data.draw(unimodulars(d)) if d else IntMatrix.identity(0) for d in cc.dims]
        inv = [inverse_unimodular(p) if p.rows else p for p in ps]
        deltas = tuple(ps[k] @ cc.deltas[k - 1] @ inv[k - 1] for k in (1, 2))
        other = CochainComplex(cc.dims, deltas)
        for k in range(3):
            assert cohomology(other, k) == cohomology(cc, k)

    @settings(max_examples=60, deadline=None)
    @given(cochain_complexes())
    def test_euler_characteristic(self, cc):
        assert euler_characteristic(cc) == sum((-1) ** k * cohomology(cc, k).free_rank
                                               for k in range(3))

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(-2, 2), min_size=2, max_size=4))
    def test_composites_vanish(self, coeffs):
        # d1 = a(1 - t) and d2 = b(1 + t) always compose to zero over Z[Z/2]
        a, b = coeffs[0], coeffs[1]
        cx = TwistedComplex(Z2, (1, 1, 1), (((element([(a, ""), (-a, "t")]),),),
                                            ((element([(b, ""), (b, "t")]),),)))
        for rep in (MINUS, trivial_representation(Z2, 3),
                    validate_representation(Z2, [IntMatrix.from_rows([[0, 1, 0], [1, 0, 0],
                                                                      [0, 0, 1]])])):
            to_cochain_complex(cx, rep).check()
