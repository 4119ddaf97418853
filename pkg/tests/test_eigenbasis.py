import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from fracsmc.eigenbasis import (ProblemSpec, SpectralCoeffs, eigenfunction_radial,
                                eval_weighted_expansion, lambda_1d, mu, mu_vector, project_radial,
                                reference_solution, reference_solve, weighted_orthogonality_constant)
from fracsmc.jacobi import JacobiIndex, gamma_norm, jacobi_eval
from fracsmc.problems import example_problem
from fracsmc.specfun import c_ns, kernel_constant

from oracle_quad import fraclap_1d

order = st.floats(0.05, 1.95)
dims = st.sampled_from([1, 2, 3, 5, 10])
S_GRID = [0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8]


class TestEigenvalues:
    def test_lambda_values(self):
        assert lambda_1d(0, 1.0) == pytest.approx(1.0, rel=1e-15)
        assert lambda_1d(2, 0.5) == pytest.approx(15 * math.sqrt(math.pi) / 16, rel=1e-14)

    def test_mu_values(self):
        assert mu(0, 2, 1.0) == pytest.approx(math.pi / 2, rel=1e-14)

    @given(dims, order)
    def test_mu0_is_constant_source(self, n, s):
        expected = 2 ** s * math.gamma(1 + s / 2) * math.gamma((n + s) / 2) / math.gamma(n / 2)
        assert mu(0, n, s) == pytest.approx(expected, rel=1e-13)

    def test_mu_multiprecision(self):
        m, n, s = 3, 10, mpmath.mpf("1.6")
        ref = (2 ** s * mpmath.gamma(s / 2 + m + 1) * mpmath.gamma((s + n) / 2 + m)
               / (mpmath.factorial(m) * mpmath.gamma(mpmath.mpf(n) / 2 + m)))
        assert mu(3, 10, 1.6) == pytest.approx(float(ref), rel=1e-12)

    @pytest.mark.parametrize("s", S_GRID)
    def test_even_lambda_is_mu_in_one_dimension(self, s):
        lam = np.array([lambda_1d(2 * m, s) for m in range(11)])
        np.testing.assert_allclose(lam, mu_vector(10, 1, s), rtol=1e-12)

    @given(dims, order)
    def test_strictly_increasing(self, n, s):
        assert np.all(np.diff(mu_vector(30, n, s)) > 0)
        assert np.all(np.diff([lambda_1d(m, s) for m in range(31)]) > 0)

    def test_no_overflow_at_high_degree(self):
        assert np.isfinite(mu(60, 10, 1.9))

    @pytest.mark.parametrize("s", [0.0, 2.0])
    def test_order_domain(self, s):
        with pytest.raises(ValueError):
            mu(0, 2, s)


class TestEigenrelationByQuadrature:
    """The 1-D eigenrelation checked against the hypersingular integral itself."""

    @pytest.mark.parametrize("s", [0.4, 1.2])
    @pytest.mark.parametrize("m", [0, 1, 2, 3])
    def test_interval(self, s, m):
        idx = JacobiIndex.interval(s)

        def u(y):
            y = min(max(y, -1.0), 1.0)
            return (1 - y * y) ** (s / 2) * jacobi_eval(m, idx, y)
        for x in (0.0, 0.3, -0.7):
            expected = lambda_1d(m, s) * jacobi_eval(m, idx, x)
            assert fraclap_1d(u, x, s) == pytest.approx(expected, abs=1e-7)

    def test_c_ns_is_two_over_s_larger(self):
        assert c_ns(1, 1.0) == pytest.approx(2 / math.pi)
        assert c_ns(2, 1.0) == pytest.approx(1 / math.pi)
        assert kernel_constant(1, 1.0) == pytest.approx(1 / math.pi)


class TestRadialEigenfunctions:
    @given(st.integers(0, 8), dims, order)
    def test_vanishes_on_boundary(self, m, n, s):
        assert eigenfunction_radial(m, n, s, 1.0) == 0.0

    @given(dims, order, st.floats(0, 1))
    def test_zero_mode(self, n, s, r):
        assert eigenfunction_radial(0, n, s, r) == pytest.approx(((1 - r) * (1 + r)) ** (s / 2), rel=1e-14, abs=1e-300)

    def test_closed_form_value(self):
        assert eigenfunction_radial(1, 2, 0.8, 0.5) == pytest.approx(-0.4 * 0.75 ** 0.4, rel=1e-14)

    @given(st.integers(0, 8), dims, order)
    def test_smooth_factor_is_polynomial_in_r2(self, m, n, s):
        r = np.linspace(0, 0.99, 200)
        smooth = eigenfunction_radial(m, n, s, r) / (1 - r * r) ** (s / 2)
        fit = np.polynomial.polynomial.Polynomial.fit(r * r, smooth, m)
        assert np.max(np.abs(fit(r * r) - smooth)) <= 1e-10 * max(1.0, np.max(np.abs(smooth)))

    def test_rejects_outside(self):
        with pytest.raises(ValueError):
            eigenfunction_radial(1, 2, 0.5, 1.2)

    def test_orthogonality_constant_closed_form(self):
        assert weighted_orthogonality_constant(0, 2, 1.0) == pytest.approx(math.pi / 1.5, rel=1e-14)

    @pytest.mark.parametrize("n, s", [(1, 0.4), (2, 1.0), (3, 1.6), (10, 0.8)])
    @pytest.mark.parametrize("m", [0, 1, 3])
    def test_orthogonality_constant_by_quadrature(self, n, s, m):
        area = 2 * math.pi ** (n / 2) / math.gamma(n / 2)
        idx = JacobiIndex.radial(n, s)
        ref = area * quad(lambda r: r ** (n - 1) * (1 - r * r) ** (s / 2)
                          * jacobi_eval(m, idx, 2 * r * r - 1) ** 2, 0, 1,
                          epsabs=0, epsrel=1e-12, limit=200)[0]
        assert weighted_orthogonality_constant(m, n, s) == pytest.approx(ref, rel=1e-8)

    def test_cross_term_vanishes(self):
        n, s = 3, 0.7
        idx = JacobiIndex.radial(n, s)
        val = quad(lambda r: r ** (n - 1) * (1 - r * r) ** (s / 2) * jacobi_eval(1, idx, 2 * r * r - 1)
                   * jacobi_eval(2, idx, 2 * r * r - 1), 0, 1, epsabs=1e-14)[0]
        diag = quad(lambda r: r ** (n - 1) * (1 - r * r) ** (s / 2)
                    * jacobi_eval(2, idx, 2 * r * r - 1) ** 2, 0, 1)[0]
        assert abs(val) <= 1e-10 * diag


class TestExpansions:
    def test_weighted_unit_and_zero(self):
        idx = JacobiIndex.radial(2, 0.6)
        r = np.linspace(0, 1, 11)
        one = SpectralCoeffs(idx, [1.0, 0.0, 0.0], weighted=True)
        np.testing.assert_allclose(eval_weighted_expansion(one, 2, 0.6, r), (1 - r * r) ** 0.3)
        zero = SpectralCoeffs(idx, [0.0, 0.0], weighted=True)
        np.testing.assert_array_equal(eval_weighted_expansion(zero, 2, 0.6, r), 0.0)
        assert eval_weighted_expansion(one, 2, 0.6, 1.0) == 0.0

    def test_unweighted_rejected(self):
        with pytest.raises(ValueError):
            eval_weighted_expansion(SpectralCoeffs(JacobiIndex(0, 0), [1.0]), 2, 0.5, 0.3)

    def test_projection_of_polynomial_is_exact(self):
        n, s = 3, 0.9
        idx = JacobiIndex.radial(n, s)
        target = np.array([0.3, -1.2, 0.5, 0.0, 0.0])
        c = project_radial(lambda r: sum(a * jacobi_eval(m, idx, 2 * r * r - 1)
                                         for m, a in enumerate(target[:3])), n, s, 4)
        np.testing.assert_allclose(c.coeffs, target, atol=1e-13)


class TestReferenceSolve:
    @pytest.mark.parametrize("s", [0.4, 0.8, 1.2, 1.6])
    def test_example2(self, s):
        problem, exact = example_problem(2, s)
        c = reference_solve(problem, 2)
        assert c.weighted
        np.testing.assert_allclose(c.coeffs, [1.0, 0.0, 0.0], atol=1e-14)
        r = np.linspace(0, 1, 1000)
        np.testing.assert_allclose(reference_solution(problem, 2)(r), exact(r), atol=1e-13)

    @pytest.mark.parametrize("s", [0.4, 1.6])
    def test_example4(self, s):
        problem, exact = example_problem(4, s)
        c = reference_solve(problem, 1)
        np.testing.assert_allclose(eval_weighted_expansion(c, 10, s, 0.6), 0.64 ** (1 + s / 2), rtol=1e-13)

    @pytest.mark.parametrize("s", [0.4, 1.6])
    def test_example3_self_convergence(self, s):
        problem, _ = example_problem(3, s)
        r = np.linspace(0, 1, 1000)
        np.testing.assert_allclose(reference_solution(problem, 32)(r), reference_solution(problem, 48)(r),
                                   atol=1e-12)

    @given(dims, order, st.lists(st.floats(-3, 3), min_size=1, max_size=5))
    def test_forward_inverse_consistency(self, n, s, coeffs):
        idx = JacobiIndex.radial(n, s)

        def f(r):
            t = 2 * np.asarray(r) ** 2 - 1
            return sum(a * jacobi_eval(m, idx, t) for m, a in enumerate(coeffs))
        deg = len(coeffs) - 1
        c = reference_solve(ProblemSpec(n, s, f), deg)
        np.testing.assert_allclose(c.coeffs * mu_vector(deg, n, s), coeffs,
                                   rtol=1e-10, atol=1e-10 * max(1.0, max(map(abs, coeffs))))

    def test_radius_rescaling(self):
        # u_R(x) = R^s u_1(x / R) for f ≡ μ_0
        n, s, R = 2, 0.7, 2.5
        base, exact = example_problem(2, s)
        u = reference_solution(ProblemSpec(n, s, base.f, radius=R), 2)
        r = np.linspace(0, R, 50)
        np.testing.assert_allclose(u(r), R ** s * exact(r / R), rtol=1e-12, atol=1e-14)

    def test_nonzero_exterior_rejected(self):
        problem = ProblemSpec(2, 0.5, lambda r: np.ones_like(r), g=lambda r: np.ones_like(r))
        with pytest.raises(ValueError):
            reference_solve(problem, 2)


class TestProblemSpec:
    @pytest.mark.parametrize("kw", [dict(n=0, s=0.5), dict(n=2, s=2.0), dict(n=2, s=0.5, radius=0.0)])
    def test_validation(self, kw):
        with pytest.raises(ValueError):
            ProblemSpec(f=lambda r: r, **kw)

    def test_unit_ball_scaling(self):
        p = ProblemSpec(2, 0.5, lambda r: np.asarray(r) + 1, radius=4.0).to_unit_ball()
        assert p.radius == 1.0
        assert p.f(0.5) == pytest.approx(4 ** 0.5 * 3.0)
