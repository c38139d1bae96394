"""(p,q)-calculus arithmetic: integers, factorials, binomials and the
(p,q)-power product.

All functions are pure and generic over the numeric type of the
parameters: with rational ``p, q`` every result is an exact ``Fraction``,
with float ``p, q`` every result is a float.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .scalars import Real, to_exact


class Regime(enum.Enum):
    STRICT = "strict"  # q > p > 1, the regime of every convergence theorem
    QCASE = "qcase"  # p = 1, q > 1; operator construction only


class ParameterError(ValueError):
    pass


def _as_float(x) -> float:
    return float(Fraction(x)) if isinstance(x, str) else float(x)


@dataclass(frozen=True, eq=False)
class PQParams:
    """The parameter pair ``(p, q)``.

    Construct with ints/Fractions/strings for the exact path, or pass
    ``exact=False`` (or floats) for the fast float path.
    """

    p: Real
    q: Real

    def __init__(self, p, q, exact: bool | None = None):
        if exact is None:
            exact = not (isinstance(p, float) or isinstance(q, float))
        if exact:
            p, q = to_exact(p), to_exact(q)
        else:
            p, q = _as_float(p), _as_float(q)
        if not (math.isfinite(p) and math.isfinite(q)):
            raise ParameterError("p and q must be finite")
        if p == q:
            raise ParameterError("p = q is not allowed (every bound divides by q - p)")
        if not (q > p >= 1 and q > 1):
            raise ParameterError(f"need q > p >= 1 and q > 1, got p={p}, q={q}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def exact(self) -> bool:
        return isinstance(self.p, Fraction)

    # exactness is part of identity so cached exact and float results never mix
    def __eq__(self, other):
        if not isinstance(other, PQParams):
            return NotImplemented
        return (self.p, self.q, self.exact) == (other.p, other.q, other.exact)

    def __hash__(self):
        return hash((self.p, self.q, self.exact))

    @property
    def regime(self) -> Regime:
        return Regime.QCASE if self.p == 1 else Regime.STRICT

    def as_float(self) -> "PQParams":
        return PQParams(float(self.p), float(self.q), exact=False)

    def as_exact(self) -> "PQParams":
        return PQParams(self.p, self.q, exact=True)

    def one(self):
        return Fraction(1) if self.exact else 1.0

    def zero(self):
        return Fraction(0) if self.exact else 0.0

    def __repr__(self):
        tag = "exact" if self.exact else "float"
        return f"PQParams(p={self.p}, q={self.q}, {tag})"


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")


@lru_cache(maxsize=4096)
def pq_integer(n: int, params: PQParams):
    """``[n]_{p,q} = (p^n - q^n) / (p - q)``."""
    _check_n(n)
    p, q = params.p, params.q
    if n == 0:
        return params.zero()
    return (q**n - p**n) / (q - p)


def pq_integer_sum(n: int, params: PQParams):
    """``sum_{i<n} p^(n-1-i) q^i``; the sum form of :func:`pq_integer`."""
    _check_n(n)
    p, q = params.p, params.q
    total = params.zero()
    for i in range(n):
        total += p ** (n - 1 - i) * q**i
    return total


@lru_cache(maxsize=4096)
def pq_factorial(n: int, params: PQParams):
    _check_n(n)
    if n == 0:
        return params.one()
    return pq_factorial(n - 1, params) * pq_integer(n, params)


def pq_binomial(n: int, k: int, params: PQParams):
    """(p,q)-binomial coefficient; zero outside ``0 <= k <= n``."""
    _check_n(n)
    if k < 0 or k > n:
        return params.zero()
    return pq_factorial(n, params) / (pq_factorial(k, params) * pq_factorial(n - k, params))


def pq_power_product(x, y, n: int, params: PQParams):
    """``(x + y)^n_{p,q} = prod_{i<n} (p^i x + q^i y)``."""
    _check_n(n)
    p, q = params.p, params.q
    result = params.one()
    for i in range(n):
        result = result * (p**i * x + q**i * y)
    return result


def pq_power_product_coefficients(n: int, params: PQParams) -> list:
    """Brute-force expansion of ``(x + y)^n_{p,q}``.

    Returns ``c`` with ``c[k]`` the coefficient of ``x^(n-k) y^k``, computed
    by multiplying out the linear factors one at a time.
    """
    _check_n(n)
    p, q = params.p, params.q
    coeffs = [params.one()]
    for i in range(n):
        a, b = p**i, q**i
        nxt = [params.zero()] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k] += a * c
            nxt[k + 1] += b * c
        coeffs = nxt
    return coeffs


def pq_expansion_coefficient(n: int, k: int, params: PQParams):
    """Coefficient of ``x^(n-k) y^k`` in ``(x + y)^n_{p,q}``.

    This is the (p,q)-binomial times ``p^C(n-k,2) q^C(k,2)``; the bare
    binomial alone does not expand the product.
    """
    if k < 0 or k > n:
        return params.zero()
    p, q = params.p, params.q
    j = n - k
    return pq_binomial(n, k, params) * p ** (j * (j - 1) // 2) * q ** (k * (k - 1) // 2)


def q_integer(n: int, q):
    """Ordinary q-integer ``[n]_q = 1 + q + ... + q^(n-1)``."""
    _check_n(n)
    total = Fraction(0) if isinstance(q, Fraction) else 0.0
    for i in range(n):
        total += q**i
    return total
