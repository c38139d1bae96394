"""The complex (p,q)-Lorentz operator.

``L_n`` maps ``z**k`` to ``lambda_{n,k} z**k`` where ``lambda_{n,0} =
lambda_{n,1} = 1``, ``lambda_{n,k} = prod_{i=1}^{k-1} (1 - p^(n-i) [i] / [n])``
for ``2 <= k <= n`` and ``lambda_{n,k} = 0`` for ``k > n``.  Everything
here is built on that diagonal action.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .pqcore import PQParams, pq_binomial, pq_factorial, pq_integer, q_integer
from .scalars import json_scalar
from .series import (
    INF,
    PowerSeries,
    Tail,
    horner,
    kth_pq_derivative_at_zero,
    linear_weight_tail,
    pq_derivative,
    series_to_dict,
)


@dataclass(frozen=True)
class MultiplierRow:
    n: int
    lambdas: tuple

    def __getitem__(self, k: int):
        if k < 0:
            raise IndexError(k)
        if k > self.n:
            return self.lambdas[0] * 0
        return self.lambdas[k]


@lru_cache(maxsize=512)
def multiplier_row(n: int, params: PQParams) -> MultiplierRow:
    """``lambda_{n,0..n}`` by the product form; one row per ``n`` is cached."""
    if n < 1:
        raise ValueError("operator degree n must be >= 1")
    p = params.p
    nn = pq_integer(n, params)
    lam = [params.one(), params.one()]
    for k in range(2, n + 1):
        i = k - 1
        lam.append(lam[-1] * (1 - p ** (n - i) * pq_integer(i, params) / nn))
    return MultiplierRow(n, tuple(lam[: n + 1]))


def multiplier_product(n: int, k: int, params: PQParams):
    if k < 0:
        raise ValueError("k must be >= 0")
    return multiplier_row(n, params)[k]


def multiplier_factorial(n: int, k: int, params: PQParams):
    """``q^(k(k-1)/2) [n k] [k]! / [n]^k``; cross-check for :func:`multiplier_product`."""
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got n={n}, k={k}")
    q = params.q
    return (
        q ** (k * (k - 1) // 2)
        * pq_binomial(n, k, params)
        * pq_factorial(k, params)
        / pq_integer(n, params) ** k
    )


@dataclass(frozen=True)
class LorentzPolynomial:
    """Image ``L_n^(m) f`` stored as ``b_0..b_n``."""

    n: int
    m: int
    coeffs: tuple
    params: PQParams
    source: str = "f"

    def __call__(self, z):
        return horner(self.coeffs, z)

    def as_series(self) -> PowerSeries:
        return PowerSeries(self.coeffs, INF, Tail(Fraction(0), INF, self.n), f"L{self.n}^{self.m}({self.source})")

    def to_dict(self) -> dict:
        d = series_to_dict(self.as_series())
        d.update(n=self.n, m=self.m, p=json_scalar(self.params.p), q=json_scalar(self.params.q))
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _needed_coeffs(f: PowerSeries, n: int) -> list:
    top = min(n, f.K)
    if f.K < n and not f.is_polynomial():
        raise ValueError(f"operator of degree {n} needs c_0..c_{n}, series stops at K={f.K}")
    return [f.coeffs[k] for k in range(top + 1)]


def iterate(f: PowerSeries, n: int, m: int, params: PQParams) -> LorentzPolynomial:
    """``m``-fold iterate: ``b_k = c_k lambda_{n,k}**m``."""
    if m < 1:
        raise ValueError("iterate count m must be >= 1")
    row = multiplier_row(n, params)
    cs = _needed_coeffs(f, n)
    coeffs = tuple(c * row[k] ** m for k, c in enumerate(cs))
    return LorentzPolynomial(n, m, coeffs, params, f.name)


def apply(f: PowerSeries, n: int, params: PQParams) -> LorentzPolynomial:
    return iterate(f, n, 1, params)


def apply_definition_at(f: PowerSeries, n: int, z, params: PQParams):
    """Evaluate the defining sum of ``L_n f (z)`` term by term."""
    if n < 1:
        raise ValueError("operator degree n must be >= 1")
    _needed_coeffs(f, n)
    q = params.q
    nn = pq_integer(n, params)
    w = z / nn
    total = 0 * z
    for k in range(min(n, f.K) + 1):
        d = kth_pq_derivative_at_zero(f, k, params)
        if not d:
            continue
        total = total + q ** (k * (k - 1) // 2) * pq_binomial(n, k, params) * w**k * d
    return total


# ---------------------------------------------------------------------------
# Voronovskaja quantities


def sigma(k: int, params: PQParams):
    """``[1] + [2] + ... + [k-1]``."""
    if k < 2:
        raise ValueError("sigma needs k >= 2")
    total = params.zero()
    for i in range(1, k):
        total += pq_integer(i, params)
    return total


def sigma_closed_form(k: int, params: PQParams):
    """``([k]_{p,q} - [k]_q) / (p - 1)``; undefined for ``p = 1``."""
    if params.p == 1:
        raise ZeroDivisionError("closed form has p - 1 in the denominator")
    return (pq_integer(k, params) - q_integer(k, params.q)) / (params.p - 1)


def voronovskaja_term(f: PowerSeries, n: int, K: int | None, params: PQParams) -> PowerSeries:
    """``S_n f``: coefficient ``k >= 2`` is ``p^(n-(k-1)) sigma_k c_k``.

    The weight depends on ``n``; ``S_n / [n]`` is the first-order correction
    of ``L_n f - f``.
    """
    if K is None:
        K = f.K
    if K < 2:
        raise ValueError("K must be >= 2")
    if K > f.K and not f.is_polynomial():
        raise ValueError(f"need coefficients up to {K}, series stops at {f.K}")
    p, q = params.p, params.q
    zero = params.zero()
    coeffs = [zero, zero]
    for k in range(2, K + 1):
        c = f.coeffs[k] if k <= f.K else zero
        coeffs.append(p ** (n - (k - 1)) * sigma(k, params) * c if c else c * 0)
    tail = None
    if f.tail is not None and p != 1:
        if f.tail.A and f.tail.rho != INF:
            # sigma_k <= [k]/(p-1) <= k q^(k-1)/(p-1)
            scale = f.tail.A * p ** (n + 1) / (q * (p - 1))
            tail = linear_weight_tail(scale, f.tail.rho * p / q, max(K, f.tail.start))
        else:
            tail = Tail(f.tail.A, f.tail.rho, max(K, f.tail.start))
    return PowerSeries(tuple(coeffs), f.radius, tail, f"S{n}({f.name})")


def e_direct(n: int, k: int, params: PQParams):
    """Scalar ``eps`` with ``E_{n,k}(z) = eps * z**k``."""
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got n={n}, k={k}")
    p = params.p
    return multiplier_product(n, k, params) - 1 + p ** (n - (k - 1)) * sigma(k, params) / pq_integer(n, params)


def _shift(coeffs: list, s: int) -> list:
    return [coeffs[0] * 0] * s + list(coeffs)


def _monomial(c, k: int) -> list:
    return [c * 0] * k + [c]


def e_recurrence(n: int, k: int, params: PQParams):
    """``E_{n,k}`` rebuilt from ``E_{n,k-1}`` by the three-term recurrence.

    The recurrence is assembled as polynomials in ``z`` (with a real
    ``D_{p,q}`` application), then the ``z**k`` coefficient is returned.
    Any stray coefficient in another degree raises ``ArithmeticError``.
    """
    if not 3 <= k <= n:
        raise ValueError(f"need 3 <= k <= n, got n={n}, k={k}")
    p = params.p
    nn = pq_integer(n, params)
    prev = Fraction(0) if params.exact else 0.0  # E_{n,2} = 0
    for j in range(3, k + 1):
        a = multiplier_product(n, j - 1, params) - 1
        g = _monomial(a, j - 1)
        dg = list(pq_derivative(PowerSeries(tuple(g)), params).coeffs)
        t1 = [-(p ** (n - (j - 1))) / nn * c for c in _shift(dg, 2)]
        t2 = [(p - 1) / p * c for c in _shift(g, 1)]
        t3 = [c / p for c in _shift(_monomial(prev, j - 1), 1)]
        size = max(len(t1), len(t2), len(t3))
        total = [sum(t[i] for t in (t1, t2, t3) if i < len(t)) for i in range(size)]
        stray = [i for i, c in enumerate(total) if c and i != j]
        if stray:
            raise ArithmeticError(f"recurrence produced terms in degrees {stray}")
        prev = total[j]
    return prev


@dataclass(frozen=True)
class RecurrenceCheck:
    n: int
    k: int
    direct: object
    recurrence: object
    residual: object

    @property
    def exact_match(self) -> bool:
        return self.residual == 0


def recurrence_report(n: int, params: PQParams) -> list[RecurrenceCheck]:
    """Compare the recurrence against the direct form for ``3 <= k <= n``."""
    out = []
    for k in range(3, n + 1):
        d, r = e_direct(n, k, params), e_recurrence(n, k, params)
        out.append(RecurrenceCheck(n, k, d, r, r - d))
    return out
