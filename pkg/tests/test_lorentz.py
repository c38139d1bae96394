from fractions import Fraction

import pytest

from conftest import circle_points
from pqlorentz.lorentz import (
    apply,
    apply_definition_at,
    e_direct,
    e_recurrence,
    iterate,
    multiplier_factorial,
    multiplier_product,
    multiplier_row,
    recurrence_report,
    sigma,
    sigma_closed_form,
    voronovskaja_term,
)
from pqlorentz.pqcore import PQParams, pq_integer
from pqlorentz.scalars import qc
from pqlorentz.series import catalog, evaluate, polynomial

CATALOG = ["exp", "geometric:4", "monomial:2", "monomial:3", "monomial:4", "monomial:5", "polynomial:1,-2,1/2,3"]


class TestMultipliers:
    def test_first_two(self, p23):
        for n in (1, 2, 7):
            assert multiplier_product(n, 0, p23) == 1
            assert multiplier_product(n, 1, p23) == 1

    def test_examples(self, p23):
        assert multiplier_product(2, 2, p23) == Fraction(3, 5)
        assert multiplier_product(3, 3, p23) == Fraction(135, 361)
        assert multiplier_factorial(2, 2, p23) == Fraction(3, 5)
        assert multiplier_factorial(3, 2, p23) == Fraction(15, 19)
        assert multiplier_factorial(3, 3, p23) == Fraction(135, 361)

    def test_vanish_above_n(self, p23):
        assert multiplier_product(3, 4, p23) == 0
        assert multiplier_product(3, 10, p23) == 0

    def test_factorial_form_range(self, p23):
        with pytest.raises(ValueError):
            multiplier_factorial(3, 4, p23)
        with pytest.raises(ValueError):
            multiplier_factorial(3, 1, p23)

    @pytest.mark.parametrize("params", [PQParams(2, 3), PQParams(Fraction(3, 2), Fraction(5, 2))])
    def test_product_equals_factorial_form(self, params):
        for n in range(2, 26):
            for k in range(2, n + 1):
                assert multiplier_product(n, k, params) == multiplier_factorial(n, k, params)

    def test_range_and_monotone(self, p_slow):
        for n in range(2, 30):
            lam = multiplier_row(n, p_slow).lambdas
            assert all(0 < x < 1 for x in lam[2:])
            assert all(a >= b for a, b in zip(lam, lam[1:]))

    def test_float_path_close(self, p_slow):
        Pf = p_slow.as_float()
        for k in range(2, 31):
            a, b = multiplier_product(30, k, p_slow), multiplier_product(30, k, Pf)
            assert abs(float(a) - b) <= 1e-13 * float(a)


class TestApply:
    def test_fixes_linear(self, p23):
        f = polynomial([Fraction(3, 7), Fraction(-2)])
        for n in (1, 2, 9):
            assert apply(f, n, p23).coeffs[:2] == f.coeffs[:2]

    def test_square(self, p23):
        assert apply(catalog("monomial:2", 4), 2, p23).coeffs == (0, 0, Fraction(3, 5))

    def test_annihilates_high(self, p23):
        assert all(c == 0 for c in apply(catalog("monomial:5", 6), 3, p23).coeffs)

    def test_needs_coefficients(self, p23):
        with pytest.raises(ValueError):
            apply(catalog("exp", 4), 6, p23)

    def test_definition_examples(self, p23):
        z = qc(1, 1)
        assert apply_definition_at(catalog("monomial:1", 3), 5, z, p23) == z
        assert apply_definition_at(catalog("monomial:2", 3), 2, 1, p23) == Fraction(3, 5)
        assert apply_definition_at(catalog("exp", 20), 10, Fraction(0), p23) == 1

    @pytest.mark.parametrize("name", CATALOG)
    @pytest.mark.parametrize("n", [2, 5, 10])
    def test_path_agreement(self, name, n, p23):
        f = catalog(name, 16)
        Ln = apply(f, n, p23)
        for z in circle_points(Fraction(3, 4), 16):
            assert evaluate(Ln.as_series(), z).value == apply_definition_at(f, n, z, p23)

    def test_linearity(self, p_alt):
        f, g = catalog("exp", 12), catalog("cos", 12)
        a = Fraction(5, 3)
        lhs = apply(f + g.scale(a), 8, p_alt).coeffs
        rhs = [x + a * y for x, y in zip(apply(f, 8, p_alt).coeffs, apply(g, 8, p_alt).coeffs)]
        assert list(lhs) == rhs

    def test_json(self, p23):
        import json

        d = json.loads(apply(catalog("monomial:2", 4), 2, p23).to_json())
        assert d["n"] == 2 and d["m"] == 1
        assert d["coeffs"][2] == [3, 5, 0, 1]


class TestIterate:
    def test_base_case(self, p23):
        f = catalog("exp", 12)
        assert iterate(f, 6, 1, p23).coeffs == apply(f, 6, p23).coeffs

    def test_square(self, p23):
        assert iterate(catalog("monomial:2", 5), 3, 2, p23).coeffs[2] == Fraction(225, 361)

    def test_fixed_linear(self, p23):
        f = polynomial([Fraction(1), Fraction(4)])
        assert iterate(f, 4, 5, p23).coeffs[:2] == (1, 4)

    def test_bad_m(self, p23):
        with pytest.raises(ValueError):
            iterate(catalog("exp", 5), 3, 0, p23)

    def test_semigroup(self, p_alt):
        f = catalog("exp", 14)
        for n in range(1, 13):
            g = apply(f, n, p_alt)
            for m in range(2, 6):
                g = apply(g.as_series(), n, p_alt)
                assert g.coeffs == iterate(f, n, m, p_alt).coeffs


class TestSigma:
    def test_examples(self, p23):
        assert sigma(2, p23) == 1
        assert sigma(3, p23) == 6
        assert sigma(4, p23) == 25
        assert sigma_closed_form(3, p23) == 6
        assert sigma_closed_form(4, p23) == 25

    def test_needs_k2(self, p23):
        with pytest.raises(ValueError):
            sigma(1, p23)

    def test_closed_form_undefined_at_p1(self):
        P = PQParams(1, 2)
        assert sigma(3, P) == 1 + 3
        with pytest.raises(ZeroDivisionError):
            sigma_closed_form(3, P)

    def test_q_minus_one_variant_differs(self, p_alt):
        # dividing by q - 1 instead of p - 1 breaks the identity
        k = 5
        alt = (pq_integer(k, p_alt) - sum(p_alt.q**i for i in range(k))) / (p_alt.q - 1)
        assert alt != sigma(k, p_alt)


class TestVoronovskajaTerm:
    def test_linear_is_zero(self, p23):
        S = voronovskaja_term(polynomial([Fraction(1), Fraction(2)]), 4, 6, p23)
        assert all(c == 0 for c in S.coeffs)

    def test_examples(self, p23):
        assert voronovskaja_term(catalog("monomial:2", 5), 3, 5, p23).coeffs[2] == 4
        assert voronovskaja_term(catalog("monomial:3", 5), 3, 5, p23).coeffs[3] == 12

    @pytest.mark.parametrize("name", CATALOG + ["sin", "cos"])
    def test_nonvanishing(self, name, p23):
        f = catalog(name, 12)
        S = voronovskaja_term(f, 6, 12, p23)
        assert any(S.coeffs[2:]) == any(f.coeffs[2:])

    def test_tail_sound(self, p_slow):
        S = voronovskaja_term(catalog("exp", 20), 10, 20, p_slow)
        long = voronovskaja_term(catalog("exp", 90), 10, 90, p_slow)
        for k in range(21, 91):
            assert abs(long.coeffs[k]) <= S.tail.bound(k)


class TestE:
    def test_base(self, p23):
        for n in range(2, 41):
            assert e_direct(n, 2, p23) == 0

    def test_example(self, p23):
        assert e_direct(3, 3, p23) == Fraction(2, 361)
        assert e_recurrence(3, 3, p23) == Fraction(2, 361)

    def test_n5_k4(self, p23):
        assert e_recurrence(5, 4, p23) == e_direct(5, 4, p23)

    def test_can_be_negative(self, p23):
        # the sign claim 0 <= E_{n,k} fails already at n = 5, k = 4
        assert e_direct(5, 4, p23) == Fraction(-440256, 9393931)

    @pytest.mark.parametrize("params", [PQParams(2, 3), PQParams(Fraction(3, 2), Fraction(5, 2))])
    def test_recurrence_report(self, params):
        for n in (3, 8, 20):
            report = recurrence_report(n, params)
            assert [c.k for c in report] == list(range(3, n + 1))
            assert all(c.exact_match for c in report)

    def test_ranges(self, p23):
        with pytest.raises(ValueError):
            e_direct(3, 4, p23)
        with pytest.raises(ValueError):
            e_recurrence(3, 2, p23)

    @pytest.mark.parametrize("r1", [Fraction(13, 10), 2])
    def test_bound_shape_acceptance_set(self, p_slow, r1):
        p, q = p_slow.p, p_slow.q
        for n in range(2, 41):
            scale = p ** (2 * n) / pq_integer(n, p_slow) ** 2
            for k in range(2, n + 1):
                cap = scale * (k + 1) * (k - 2) ** 2 / (q - p) * (q * r1 / p) ** k
                assert abs(e_direct(n, k, p_slow)) <= cap

    @pytest.mark.parametrize("params", [PQParams(2, 3), PQParams(Fraction(3, 2), Fraction(5, 2))])
    def test_first_order_residue(self, params):
        # S_n cancels the first-order part of lambda - 1 only up to p^(n-2)(1-p)/[n] at k = 3
        p = params.p
        for n in range(3, 25):
            nn = pq_integer(n, params)
            lead = p ** (n - 2) * (1 - p) / nn
            assert e_direct(n, 3, params) - lead == p ** (2 * n - 3) * pq_integer(2, params) / nn**2

    def test_bound_shape_fails_for_large_p(self, p23):
        # with r1 = 7/2 the radii hypotheses hold, yet the shape bound breaks at n = 20
        n, k, r1 = 20, 3, Fraction(7, 2)
        p, q = p23.p, p23.q
        cap = p ** (2 * n) / pq_integer(n, p23) ** 2 * (k + 1) * (k - 2) ** 2 / (q - p) * (q * r1 / p) ** k
        assert abs(e_direct(n, k, p23)) > cap
