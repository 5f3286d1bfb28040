import math
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from optstab.errors import DomainError
from optstab.optimal import (
    SubstepSchedule,
    disc_optimal,
    even_form_value,
    even_real_part,
    general_form_value,
    hyperbolic_general,
    hyperbolic_optimal,
    hyperbolic_optimal_even,
    hyperbolic_optimal_odd,
    odd_kinnmark_form_value,
    odd_tu_form_value,
    parabolic_optimal,
    parabolic_substeps,
    second_order_optimal,
)
from optstab.poly import RealPolynomial, eval_complex, eval_real, from_real_roots
from optstab.stability import consistency_check, disc_boundary_max, stability_width
from optstab.verify import alpha_coefficient

z = sp.Symbol("z")


def sympy_coeffs(expr):
    """Ascending rational coefficients of a polynomial expression in z."""
    poly = sp.Poly(sp.expand(expr), z)
    coeffs = poly.all_coeffs()[::-1]
    assert all(sp.im(c) == 0 for c in coeffs)
    return [Fraction(int(sp.re(c).p), int(sp.re(c).q)) for c in coeffs]


def F(*vals):
    return RealPolynomial([Fraction(v) for v in vals])


class TestDisc:
    def test_examples(self):
        assert disc_optimal(1) == F(1, 1)
        assert disc_optimal(2) == F(1, 1, "1/4")
        assert disc_optimal(3) == F(1, 1, "1/3", "1/27")

    @pytest.mark.parametrize("m", [1, 4, 9, 17])
    def test_binomial(self, m):
        assert list(disc_optimal(m).exact) == sympy_coeffs((1 + z / m) ** m)

    def test_rejects_zero(self):
        with pytest.raises(DomainError):
            disc_optimal(0)


class TestParabolic:
    def test_examples(self):
        assert parabolic_optimal(1) == F(1, 1)
        assert parabolic_optimal(2) == F(1, 1, "1/8")
        assert parabolic_optimal(3) == F(1, 1, "4/27", "4/729")

    @pytest.mark.parametrize("m", [2, 5, 11])
    def test_against_sympy(self, m):
        expr = sp.chebyshevt(m, 1 + z / m**2)
        assert list(parabolic_optimal(m).exact) == sympy_coeffs(expr)

    def test_substep_examples(self):
        assert parabolic_substeps(1).xi == pytest.approx((1.0,), abs=1e-15)
        r2 = math.sqrt(2)
        np.testing.assert_allclose(parabolic_substeps(2).xi, [4 - 2 * r2, 4 + 2 * r2], rtol=1e-14)
        xi3 = parabolic_substeps(3).xi
        np.testing.assert_allclose(xi3, [1.2057713659400520, 9.0, 16.794228634059948], rtol=1e-14)
        assert math.fsum(1 / x for x in xi3) == pytest.approx(1.0, abs=1e-14)

    def test_substeps_are_ascending(self):
        xi = parabolic_substeps(9).xi
        assert list(xi) == sorted(xi)

    @pytest.mark.parametrize("m", range(1, 13))
    def test_factored_form(self, m):
        q = from_real_roots(parabolic_substeps(m).xi)
        assert q.allclose(parabolic_optimal(m), rtol=1e-9)

    def test_roots_are_roots(self):
        # P(-xi_i) = 0 evaluated on the closed form, independently of the product
        m = 7
        for xi in parabolic_substeps(m).xi:
            assert abs(eval_real(parabolic_optimal(m), -xi)) < 1e-12

    def test_permutation_keeps_polynomial(self):
        s = parabolic_substeps(6)
        perm = s.permuted([5, 0, 4, 1, 3, 2])
        assert perm.order == "permuted"
        assert perm.polynomial().allclose(s.polynomial(), rtol=1e-12)

    def test_schedule_validation(self):
        with pytest.raises(DomainError):
            SubstepSchedule((2.0, 3.0))
        with pytest.raises(DomainError):
            SubstepSchedule((1.0, -1.0))
        with pytest.raises(DomainError):
            parabolic_substeps(3).permuted([0, 0, 1])

    def test_schedule_json(self):
        s = parabolic_substeps(4)
        assert SubstepSchedule.from_json(s.to_json()) == s
        assert s.to_json()["order"] == "ascending"


class TestSecondOrder:
    def test_examples(self):
        assert second_order_optimal(1) == F(1, "-1/2")
        assert second_order_optimal(2) == F(1, "-1/2", "1/32")

    @pytest.mark.parametrize("m", [1, 3, 8, 20])
    def test_linear_coefficient_and_bound(self, m):
        p = second_order_optimal(m)
        assert p.coeffs[1] == pytest.approx(-0.5, abs=1e-12)
        zs = np.linspace(0, 4 * m * m, 20001)
        assert np.max(np.abs(eval_real(p, zs))) <= 1 + 1e-9

    def test_positive_axis_width_m5(self):
        from optstab.poly import affine_compose

        mirrored = affine_compose(second_order_optimal(5), 0, -1)
        # 1 + z/2 + ...: not consistent, but the width measurement only needs |P(0)| = 1
        assert stability_width(mirrored, "negative_real") == pytest.approx(100.0, abs=1e-6)


class TestHyperbolic:
    def test_examples(self):
        assert hyperbolic_optimal(2) == F(1, 1, 1)
        assert hyperbolic_optimal(3) == F(1, 1, "1/2", "1/4")
        assert hyperbolic_optimal(4) == F(1, 1, "5/9", "4/27", "4/81")
        assert abs(abs(eval_complex(hyperbolic_optimal(4), 3j)) - 1) < 1e-15

    @pytest.mark.parametrize("m", range(2, 12))
    def test_general_form_against_sympy(self, m):
        w = z / (sp.I * (m - 1))
        expr = (sp.I ** (m - 1) * sp.chebyshevt(m - 1, w)
                + sp.I ** (m - 2) * (1 + z**2 / (m - 1) ** 2) * sp.chebyshevu(m - 2, w))
        assert list(hyperbolic_general(m).exact) == sympy_coeffs(expr)

    @pytest.mark.parametrize("m", range(2, 31))
    def test_dispatch_matches_general(self, m):
        assert hyperbolic_optimal(m) == hyperbolic_general(m)

    @pytest.mark.parametrize("k", range(1, 11))
    def test_odd_and_even_constructors(self, k):
        assert hyperbolic_optimal_odd(k) == hyperbolic_general(2 * k + 1)
        assert hyperbolic_optimal_even(k) == hyperbolic_general(2 * k)

    def test_odd_k2_alpha(self):
        p = hyperbolic_optimal_odd(2)
        assert p.degree == 5
        assert p.exact[2] == Fraction(1, 2)

    def test_even_alpha(self):
        assert hyperbolic_optimal_even(2).exact[2] == Fraction(5, 9)

    @pytest.mark.parametrize("m", [1, 0])
    def test_rejects_small_m(self, m):
        with pytest.raises(DomainError, match="m_too_small|must be"):
            hyperbolic_optimal(m)
        with pytest.raises(DomainError):
            hyperbolic_general(m)

    @pytest.mark.parametrize("k", [1, 2, 5, 10])
    def test_odd_forms_pointwise(self, k):
        ys = np.linspace(-2 * k, 2 * k, 1000)
        zz = 1j * ys
        a = odd_kinnmark_form_value(k, zz)
        b = odd_tu_form_value(k, zz)
        c = eval_complex(hyperbolic_optimal_odd(k), zz)
        assert np.max(np.abs(a - b)) <= 1e-10
        assert np.max(np.abs(a - c)) <= 1e-10

    @pytest.mark.parametrize("k", [1, 2, 5, 10])
    def test_even_forms_pointwise(self, k):
        kappa = 2 * k - 1
        zz = 1j * np.linspace(-kappa, kappa, 1000)
        a = even_form_value(k, zz)
        assert np.max(np.abs(a - general_form_value(2 * k, zz))) <= 1e-10
        assert np.max(np.abs(a - eval_complex(hyperbolic_optimal_even(k), zz))) <= 1e-10

    @pytest.mark.parametrize("k", [1, 2, 3, 6])
    def test_even_real_part(self, k):
        kappa = 2 * k - 1
        y = np.linspace(0, kappa**2, 500)
        vals = eval_complex(hyperbolic_optimal_even(k), 1j * np.sqrt(y))
        assert np.max(np.abs(vals.real - even_real_part(k, y))) <= 1e-10

    @pytest.mark.parametrize("k", [1, 2, 4, 7])
    def test_odd_q_identity(self, k):
        theta = np.linspace(0, math.pi, 1000)
        v = eval_complex(hyperbolic_optimal_odd(k), 1j * 2 * k * np.cos(theta))
        expected = np.cos(2 * k * theta) ** 2 + np.sin(theta) ** 2 * np.sin(2 * k * theta) ** 2
        assert np.max(np.abs(np.abs(v) ** 2 - expected)) <= 1e-10

    @pytest.mark.parametrize("k", [1, 2, 4, 7])
    def test_even_q_identity(self, k):
        kappa = 2 * k - 1
        theta = np.linspace(0, math.pi, 1000)
        v = eval_complex(hyperbolic_optimal_even(k), 1j * kappa * np.cos(theta))
        expected = np.cos(kappa * theta) ** 2 + np.sin(theta) ** 2 * np.sin(kappa * theta) ** 2
        assert np.max(np.abs(np.abs(v) ** 2 - expected)) <= 1e-10

    def test_sine_identity_not_cosine(self):
        # U_{k-1}(cos t) sin t equals sin(kt); the cosine variant fails at t = pi/2, k = 2
        from optstab.poly import chebyshev_u

        t = math.pi / 2
        assert eval_real(chebyshev_u(1), math.cos(t)) * math.sin(t) == pytest.approx(math.sin(2 * t), abs=1e-15)
        assert abs(eval_real(chebyshev_u(1), math.cos(t)) * math.sin(t) - math.cos(2 * t)) > 0.5


@pytest.mark.parametrize("m", range(1, 31))
def test_families_consistent(m):
    assert consistency_check(disc_optimal(m))
    assert consistency_check(parabolic_optimal(m))
    if m >= 2:
        assert consistency_check(hyperbolic_optimal(m))
        assert alpha_coefficient(hyperbolic_optimal(m)) >= 0.5


@pytest.mark.parametrize("m", [1, 6, 13, 20])
def test_family_widths(m):
    assert abs(stability_width(parabolic_optimal(m), "negative_real") - 2 * m * m) <= 1e-4
    if m >= 2:
        assert abs(stability_width(hyperbolic_optimal(m), "imaginary") - (m - 1)) <= 1e-4
    assert disc_boundary_max(disc_optimal(m), m) == pytest.approx(1.0, abs=1e-10)
