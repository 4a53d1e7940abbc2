import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form as sympy_snf
from sympy.polys.domains import ZZ

from lagfib.errors import DimensionMismatch, NoSolution, NotPrimitive, NotUnimodular
from lagfib.linalg import (IntMatrix, complete_primitive, hermite_normal_form, inverse_unimodular,
                           is_unimodular, kernel_basis, smith_normal_form, solve_diophantine,
                           vector_gcd)

from oracles import laplace_det, minor_gcd
from strategies import matrices, unimodulars


class TestIntMatrix:
    def test_shape_checks(self):
        a = IntMatrix.from_rows([[1, 2, 3]])
        with pytest.raises(DimensionMismatch):
            a @ a
        with pytest.raises(DimensionMismatch):
            a + a.T

    def test_det_matches_laplace(self):
        m = IntMatrix.from_rows([[2, -1, 3], [0, 4, 1], [5, 2, -2]])
        assert m.det() == laplace_det(m.to_lists())

    def test_inverse_unimodular(self):
        m = IntMatrix.from_rows([[2, 3], [1, 2]])
        assert inverse_unimodular(m) @ m == IntMatrix.identity(2)
        with pytest.raises(NotUnimodular):
            inverse_unimodular(IntMatrix.from_rows([[2, 0], [0, 1]]))

    def test_big_integers_survive(self):
        big = 3 ** 80
        m = IntMatrix.from_rows([[big, 0], [0, 1]])
        assert smith_normal_form(m).diagonal == (1, big)


class TestSmith:
    def test_identity(self):
        s = smith_normal_form(IntMatrix.identity(3))
        assert s.U == s.D == s.V == IntMatrix.identity(3)

    def test_two_by_two(self):
        m = IntMatrix.from_rows([[2, 4], [6, 8]])
        s = smith_normal_form(m)
        assert s.D == IntMatrix.diag([2, 4])
        assert s.U @ m @ s.V == s.D

    def test_scalar(self):
        assert smith_normal_form(IntMatrix.scalar(3, 2)).D == IntMatrix.scalar(3, 2)

    def test_deterministic(self):
        m = IntMatrix.from_rows([[3, 6, 9], [2, 5, 7], [1, 1, 1]])
        smith_normal_form.cache_clear()
        first = smith_normal_form(m)
        smith_normal_form.cache_clear()
        assert smith_normal_form(m) == first

    @settings(max_examples=150, deadline=None)
    @given(matrices())
    def test_decomposition(self, m):
        s = smith_normal_form(m)
        assert is_unimodular(s.U) and is_unimodular(s.V)
        assert s.U @ m @ s.V == s.D
        d = s.diagonal
        assert all(x >= 0 for x in d)
        assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1) if d[i])
        off = [s.D[i, j] for i in range(m.rows) for j in range(m.cols) if i != j]
        assert not any(off)

    @settings(max_examples=80, deadline=None)
    @given(matrices(4, 4))
    def test_minor_gcds(self, m):
        d = smith_normal_form(m).diagonal
        prod = 1
        for k in range(1, min(m.shape) + 1):
            prod *= d[k - 1]
            assert minor_gcd(m, k) == prod

    @settings(max_examples=60, deadline=None)
    @given(matrices(5, 5))
    def test_matches_sympy(self, m):
        oracle = sympy_snf(Matrix(m.to_lists()), domain=ZZ)
        expected = [abs(int(oracle[i, i])) for i in range(min(m.shape))]
        assert list(smith_normal_form(m).diagonal) == expected


class TestHermite:
    def test_identity(self):
        assert hermite_normal_form(IntMatrix.identity(2)) == (IntMatrix.identity(2),) * 2

    def test_example(self):
        h, u = hermite_normal_form(IntMatrix.from_rows([[4, 2], [2, 0]]))
        assert h == IntMatrix.from_rows([[2, 0], [0, 2]])

    def test_zero(self):
        h, _ = hermite_normal_form(IntMatrix.zeros(2, 2))
        assert h.is_zero()

    @settings(max_examples=120, deadline=None)
    @given(matrices())
    def test_shape_and_idempotence(self, m):
        h, u = hermite_normal_form(m)
        assert is_unimodular(u) and u @ m == h
        pivots = []
        for i in range(h.rows):
            nz = [j for j in range(h.cols) if h[i, j]]
            if not nz:
                assert all(not any(h.row(k)) for k in range(i, h.rows))
                break
            p = nz[0]
            assert h[i, p] > 0
            assert all(0 <= h[k, p] < h[i, p] for k in range(i))
            pivots.append(p)
        assert pivots == sorted(set(pivots))
        assert hermite_normal_form(h)[0] == h

    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 4).flatmap(lambda n: st.tuples(matrices(n, 4).filter(lambda m: m.rows == n),
                                                         unimodulars(n))))
    def test_lattice_invariant(self, pair):
        # the HNF depends only on the row lattice
        m, p = pair
        assert hermite_normal_form(p @ m)[0] == hermite_normal_form(m)[0]


class TestDiophantine:
    def test_direct_division(self):
        sol = solve_diophantine(IntMatrix.scalar(3, 2), (2, 4, 6))
        assert sol.particular == (1, 2, 3) and sol.kernel == ()

    def test_odd_right_side(self):
        with pytest.raises(NoSolution):
            solve_diophantine(IntMatrix.scalar(3, 2), (1, 0, 0))

    def test_zero_system(self):
        sol = solve_diophantine(IntMatrix.zeros(3, 3), (0, 0, 0))
        assert sol.particular == (0, 0, 0) and len(sol.kernel) == 3

    @settings(max_examples=120, deadline=None)
    @given(matrices(5, 5), st.data())
    def test_consistent_systems(self, m, data):
        x = data.draw(st.lists(st.integers(-5, 5), min_size=m.cols, max_size=m.cols))
        b = m.apply(x)
        sol = solve_diophantine(m, b)
        assert m.apply(sol.particular) == b
        for k in sol.kernel:
            assert not any(m.apply(k))
        assert len(kernel_basis(m)) == m.cols - smith_normal_form(m).rank


class TestCompletePrimitive:
    def test_basis_vector(self):
        assert complete_primitive((1, 0, 0)) == IntMatrix.identity(3)

    def test_example(self):
        g = complete_primitive((2, 3, 5))
        assert abs(g.det()) == 1
        assert inverse_unimodular(g).T.col(0) == (2, 3, 5)

    def test_not_primitive(self):
        with pytest.raises(NotPrimitive):
            complete_primitive((2, 4, 6))

    @settings(max_examples=150, deadline=None)
    @given(st.lists(st.integers(-20, 20), min_size=1, max_size=5).filter(lambda v: vector_gcd(v) == 1))
    def test_round_trip(self, v):
        g = complete_primitive(v)
        assert abs(g.det()) == 1
        assert inverse_unimodular(g).T.col(0) == tuple(v)
