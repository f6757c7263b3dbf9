import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cesaro_lab.series import (
    DEGREE_CAP,
    Poly,
    binomial_series,
    cauchy_product,
    compose,
    horner_eval,
    log_one_minus_inv,
    mobius_coeffs,
    monomial,
    truncate,
    vanishing_order,
)

finite_complex = st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False)
coeff_lists = st.lists(finite_complex, min_size=1, max_size=24)


def brute_product(a, b):
    out = np.zeros(len(a) + len(b) - 1, dtype=complex)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


class TestPoly:
    def test_degree_and_length(self):
        p = Poly([1, 2, 3])
        assert p.degree == 2
        assert p.coeffs.shape == (3,)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            Poly([])

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            Poly([1.0, np.nan])
        with pytest.raises(ValueError):
            Poly([np.inf, 0.0])

    def test_coeffs_immutable(self):
        p = Poly([1, 2])
        with pytest.raises(ValueError):
            p.coeffs[0] = 5.0

    def test_truncate_cut_and_pad(self):
        p = Poly([1, 2, 3])
        assert np.array_equal(truncate(p, 1).coeffs, [1, 2])
        assert np.array_equal(truncate(p, 4).coeffs, [1, 2, 3, 0, 0])
        assert truncate(p, 2) is p


class TestHornerEval:
    def test_constant(self):
        assert horner_eval(Poly([1]), 0.5) == 1

    def test_identity_function(self):
        assert horner_eval(Poly([0, 1]), 0.3) == pytest.approx(0.3)

    def test_geometric_sum(self):
        # closed form for sum of 0.5**n, n = 0..10
        p = Poly([1] * 11)
        expected = (1 - 0.5**11) / (1 - 0.5)
        assert expected == 1.9990234375
        assert horner_eval(p, 0.5) == pytest.approx(expected, rel=1e-14)

    def test_array_argument(self):
        p = Poly([1, 2, 3])
        zs = np.array([0.1, 0.2 + 0.1j])
        vals = horner_eval(p, zs)
        assert vals.shape == (2,)
        assert vals[0] == pytest.approx(1 + 2 * 0.1 + 3 * 0.01)

    @given(coeff_lists, coeff_lists, finite_complex, finite_complex, finite_complex)
    def test_linearity(self, a, b, alpha, beta, z):
        n = max(len(a), len(b))
        a = a + [0] * (n - len(a))
        b = b + [0] * (n - len(b))
        z = 0.3 * z / max(abs(z), 1.0)
        combined = horner_eval(Poly(np.multiply(alpha, a) + np.multiply(beta, b)), z)
        va, vb = horner_eval(Poly(a), z), horner_eval(Poly(b), z)
        tol = 1e-12 * (abs(alpha) * abs(va) + abs(beta) * abs(vb) + 1)
        assert abs(combined - (alpha * va + beta * vb)) <= tol


class TestCauchyProduct:
    def test_multiplicative_identity(self):
        q = Poly([2, 3 + 1j, 4])
        assert np.array_equal(cauchy_product(Poly([1]), q).coeffs, q.coeffs)

    def test_one_minus_z_times_geometric(self):
        ones = Poly([1] * 8)
        out = cauchy_product(Poly([1, -1]), ones, degree=7)
        assert np.array_equal(out.coeffs, [1] + [0] * 7)

    def test_z_squared(self):
        out = cauchy_product(monomial(1), monomial(1))
        assert np.array_equal(out.coeffs, [0, 0, 1])

    @given(coeff_lists, coeff_lists)
    def test_matches_brute_force(self, a, b):
        got = cauchy_product(Poly(a), Poly(b)).coeffs
        expected = brute_product(a, b)
        scale = max(1.0, np.max(np.abs(expected)))
        np.testing.assert_allclose(got, expected[: len(got)], atol=1e-12 * scale, rtol=0)

    @given(coeff_lists, coeff_lists)
    def test_commutative(self, a, b):
        pq = cauchy_product(Poly(a), Poly(b)).coeffs
        qp = cauchy_product(Poly(b), Poly(a)).coeffs
        scale = max(1.0, np.max(np.abs(pq)))
        np.testing.assert_allclose(pq, qp, atol=1e-13 * scale, rtol=0)

    @given(coeff_lists, coeff_lists, coeff_lists)
    def test_associative(self, a, b, c):
        left = cauchy_product(cauchy_product(Poly(a), Poly(b)), Poly(c)).coeffs
        right = cauchy_product(Poly(a), cauchy_product(Poly(b), Poly(c))).coeffs
        scale = max(1.0, np.max(np.abs(left)))
        np.testing.assert_allclose(left, right, atol=1e-12 * scale, rtol=0)

    def test_degree_cap(self):
        p = Poly(np.ones(800))
        out = cauchy_product(p, p)
        assert out.degree == DEGREE_CAP


class TestBinomialSeries:
    def test_geometric(self):
        out = binomial_series(-1, 6)
        assert np.array_equal(out.coeffs, np.ones(7))

    def test_one_minus_z(self):
        out = binomial_series(1, 5)
        assert np.array_equal(out.coeffs, [1, -1, 0, 0, 0, 0])

    def test_derivative_of_geometric(self):
        # (1-z)**-2 = d/dz (1-z)**-1 termwise, so coefficient n is n+1
        out = binomial_series(-2, 10)
        assert np.allclose(out.coeffs, np.arange(1, 12))

    def test_rejects_negative_degree(self):
        with pytest.raises(ValueError):
            binomial_series(-1, -1)


class TestLogSeries:
    def test_first_terms(self):
        out = log_one_minus_inv(3)
        np.testing.assert_allclose(out.coeffs, [0, 1, 0.5, 1 / 3])

    def test_degree_one(self):
        assert np.array_equal(log_one_minus_inv(1).coeffs, [0, 1])

    def test_sign_flip_gives_log_one_minus(self):
        # series of log(1-z) is the negation
        g = Poly(-log_one_minus_inv(4).coeffs)
        np.testing.assert_allclose(g.coeffs, [0, -1, -0.5, -1 / 3, -0.25])

    def test_rejects_degree_zero(self):
        with pytest.raises(ValueError):
            log_one_minus_inv(0)


class TestCompose:
    def test_identity_inner_is_exact(self):
        p = Poly([2, 1 - 1j, 0.5, 3])
        assert np.array_equal(compose(p, Poly([0, 1])).coeffs, p.coeffs)

    def test_identity_outer_is_exact(self):
        q = Poly([0, 0.3 + 0.1j, 0.2])
        assert np.array_equal(compose(Poly([0, 1]), q).coeffs, q.coeffs)

    def test_geometric_in_z_squared(self):
        # 1/(1-z**2) alternates 1, 0, 1, 0, ...
        p = Poly([1] * 9)
        out = compose(p, Poly([0, 0, 1]))
        expected = np.zeros(out.degree + 1)
        expected[::2] = 1.0
        np.testing.assert_allclose(out.coeffs, expected, atol=1e-14)

    def test_rejects_nonzero_constant_term(self):
        with pytest.raises(ValueError):
            compose(Poly([1, 1]), Poly([1e-30, 1]))

    @given(
        st.lists(finite_complex, min_size=1, max_size=8),
        st.lists(finite_complex, min_size=1, max_size=7),
        finite_complex,
    )
    @settings(max_examples=60)
    def test_point_evaluation_consistency(self, a, q_tail, z):
        # with the full uncapped degree the composition is a polynomial
        # identity, so evaluation must commute with composition
        p = Poly(a)
        q = Poly([0] + q_tail)
        z = 0.4 * z / max(abs(z), 1.0)
        comp = compose(p, q, degree=p.degree * max(q.degree, 1))
        direct = horner_eval(p, horner_eval(q, z))
        via = horner_eval(comp, z)
        scale = 1.0 + max(abs(direct), abs(via))
        assert abs(via - direct) <= 1e-10 * scale


class TestMobius:
    def test_t_zero_is_identity_map(self):
        out = mobius_coeffs(0.0, 5)
        assert np.array_equal(out.coeffs, [0, 1, 0, 0, 0, 0])

    def test_half_ratio(self):
        # a = 1/2 gives coefficients (0, 1/2, 1/4, 1/8, ...)
        out = mobius_coeffs(np.log(2.0), 4)
        np.testing.assert_allclose(out.coeffs, [0, 0.5, 0.25, 0.125, 0.0625], rtol=1e-14)

    @given(st.floats(min_value=0, max_value=20, allow_nan=False))
    def test_constant_term_exactly_zero(self, t):
        assert mobius_coeffs(t, 3).coeffs[0] == 0

    def test_rejects_negative_t(self):
        with pytest.raises(ValueError):
            mobius_coeffs(-0.1, 3)


class TestVanishingOrder:
    def test_order_two(self):
        assert vanishing_order(Poly([0, 0, 3])) == 2

    def test_nonzero_constant_is_zero_order(self):
        assert vanishing_order(Poly([5, 1])) == 0

    def test_zero_polynomial_sentinel(self):
        assert vanishing_order(Poly(np.zeros(5))) == 5

    def test_threshold_separates_noise(self):
        assert vanishing_order(Poly([1e-15, 1.0])) == 1
