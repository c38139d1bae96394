from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqlorentz.pqcore import (
    ParameterError,
    PQParams,
    Regime,
    pq_binomial,
    pq_expansion_coefficient,
    pq_factorial,
    pq_integer,
    pq_integer_sum,
    pq_power_product,
    pq_power_product_coefficients,
    q_integer,
)


@st.composite
def rational_params(draw):
    p = Fraction(draw(st.integers(1, 40)), draw(st.integers(1, 10))) + 1
    gap = Fraction(draw(st.integers(1, 30)), draw(st.integers(1, 10)))
    return PQParams(p, p + gap)


class TestParams:
    def test_exact_by_default(self):
        P = PQParams(2, 3)
        assert P.exact and P.p == 2 and isinstance(P.p, Fraction)
        assert P.regime is Regime.STRICT

    def test_float_path(self):
        P = PQParams(1.1, 1.2)
        assert not P.exact
        assert P == PQParams("1.1", "1.2", exact=False)
        assert P != PQParams("11/10", "6/5")

    def test_strings_parse_exactly(self):
        assert PQParams("1.1", "1.2").p == Fraction(11, 10)

    def test_qcase(self):
        assert PQParams(1, 2).regime is Regime.QCASE

    @pytest.mark.parametrize("p,q", [(2, 2), (3, 2), (Fraction(1, 2), 2), (1, 1), (0, 2)])
    def test_rejects(self, p, q):
        with pytest.raises(ParameterError):
            PQParams(p, q)


class TestIntegers:
    def test_zero(self, p23):
        assert pq_integer(0, p23) == 0

    def test_one(self, p23):
        assert pq_integer(1, p23) == 1

    def test_examples(self, p23):
        assert pq_integer(2, p23) == 5
        assert pq_integer(4, p23) == 65

    def test_negative_n(self, p23):
        with pytest.raises(ValueError):
            pq_integer(-1, p23)

    def test_large_n_exact(self):
        P = PQParams(2, 3)
        assert pq_integer(200, P) == 3**200 - 2**200

    @settings(max_examples=40, deadline=None)
    @given(rational_params(), st.integers(0, 50))
    def test_sum_form(self, P, n):
        assert pq_integer(n, P) == pq_integer_sum(n, P)

    @settings(max_examples=25, deadline=None)
    @given(rational_params(), st.integers(2, 50), st.data())
    def test_complement_identity(self, P, n, data):
        i = data.draw(st.integers(1, n - 1))
        lhs = P.q**i * pq_integer(n - i, P)
        rhs = pq_integer(n, P) - P.p ** (n - i) * pq_integer(i, P)
        assert lhs == rhs

    def test_q_specialisation(self):
        q = Fraction(7, 3)
        P = PQParams(1, q)
        for n in range(12):
            assert pq_integer(n, P) == q_integer(n, q)
            if n:
                assert pq_integer(n, P) == (1 - q**n) / (1 - q)

    def test_q_to_one_limit_float(self):
        for n in (3, 7, 15):
            vals = [pq_integer(n, PQParams(1.0, 1 + 10.0**-e, exact=False)) for e in (2, 4, 6, 8)]
            errs = [abs(v - n) for v in vals]
            assert errs == sorted(errs, reverse=True)
            assert errs[-1] < 1e-5 * n * n


class TestFactorialBinomial:
    def test_factorial(self, p23):
        assert pq_factorial(0, p23) == 1
        assert pq_factorial(3, p23) == 95
        assert pq_factorial(4, p23) == 6175

    def test_binomial(self, p23):
        assert pq_binomial(5, 0, p23) == 1
        assert pq_binomial(3, 2, p23) == 19
        assert pq_binomial(4, 2, p23) == 247

    def test_out_of_range(self, p23):
        assert pq_binomial(4, -1, p23) == 0
        assert pq_binomial(4, 5, p23) == 0

    @settings(max_examples=30, deadline=None)
    @given(rational_params(), st.integers(0, 25), st.data())
    def test_symmetry(self, P, n, data):
        k = data.draw(st.integers(0, n))
        assert pq_binomial(n, k, P) == pq_binomial(n, n - k, P)


class TestPowerProduct:
    def test_examples(self, p23):
        assert pq_power_product(Fraction(5), Fraction(7), 0, p23) == 1
        assert pq_power_product(1, 0, 3, p23) == 8
        assert pq_power_product(1, 1, 2, p23) == 10

    @pytest.mark.parametrize("n", range(0, 13))
    def test_expansion_matches_bruteforce(self, p_alt, n):
        brute = pq_power_product_coefficients(n, p_alt)
        for k in range(n + 1):
            assert brute[k] == pq_expansion_coefficient(n, k, p_alt)
            # divisible by the binomial; the cofactor is a pure p/q power
            cof = brute[k] / pq_binomial(n, k, p_alt)
            assert cof == p_alt.p ** ((n - k) * (n - k - 1) // 2) * p_alt.q ** (k * (k - 1) // 2)

    def test_displayed_expansion_is_not_the_product(self, p23):
        # bare binomials without the p/q powers do not reproduce the product
        n = 3
        bare = sum(pq_binomial(n, k, p23) for k in range(n + 1))
        assert bare != pq_power_product(1, 1, n, p23)

    def test_evaluation_agrees_with_expansion(self, p23):
        x, y = Fraction(2, 3), Fraction(-5, 7)
        n = 6
        coeffs = pq_power_product_coefficients(n, p23)
        assert pq_power_product(x, y, n, p23) == sum(c * x ** (n - k) * y**k for k, c in enumerate(coeffs))
