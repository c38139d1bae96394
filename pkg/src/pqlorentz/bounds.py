"""Theorem constants and rate units.

Every infinite sum here is taken over the stored coefficients and then the
certified tail remainder is added, so the returned constants are upper
bounds for the true ones.  Hypotheses on the radii are computed and
reported, never assumed.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

from .lorentz import apply, voronovskaja_term
from .norms import CircleGrid, norm_on
from .pqcore import PQParams, pq_integer
from .scalars import json_scalar, modulus
from .series import INF, PowerSeries


def rate_unit(n: int, params: PQParams):
    """``p**n / [n]_{p,q}``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return params.p**n / pq_integer(n, params)


def voronovskaja_rate(n: int, params: PQParams):
    return rate_unit(n, params) ** 2


# ---------------------------------------------------------------------------
# weighted coefficient sums


def _tail_sum(A, y, weight: Callable[[int], int], first: int, max_terms: int = 100000):
    """Upper bound for ``sum_{k >= first} A * weight(k) * y**k``, ``0 <= y < 1``.

    ``weight`` must have a nonincreasing ratio ``weight(k+1)/weight(k)``
    (true for products of ``(k + a)`` with ``a > 0``).  Terms are added
    explicitly until the ratio drops below one, then closed by a geometric
    bound.
    """
    if not A:
        return 0
    if not y < 1:
        return INF
    total = 0
    k = first
    term = A * weight(k) * y**k
    for _ in range(max_terms):
        s = y * Fraction(weight(k + 1), weight(k))
        if isinstance(y, float):
            s = float(s)
        if s < 1:
            return total + term / (1 - s)
        total += term
        k += 1
        term = term * s
    return INF


def weighted_sum(f: PowerSeries, x, weight: Callable[[int], int]):
    """``sum_k |c_k| weight(k) x**k`` with certified tail."""
    total = 0
    for k, c in enumerate(f.coeffs):
        if c:
            total += modulus(c) * weight(k) * x**k
    if f.tail is None:
        raise ValueError("series has no tail majorant; the sum cannot be certified")
    if f.tail.A:
        if f.tail.rho == INF:
            return total
        y = x / f.tail.rho
        if not y < 1:
            raise ValueError(f"radius {float(x)} is not inside the majorant radius {float(f.tail.rho)}")
        total += _tail_sum(f.tail.A, y, weight, max(f.K, f.tail.start) + 1)
    return total


def _w1(k: int) -> int:
    return k + 1


def _w3(k: int) -> int:
    return (k + 1) * (k + 2) ** 2


def coeff_majorant(f: PowerSeries, r1):
    """``sum_k |c_k| (k+1) r1**k`` plus certified tail."""
    return weighted_sum(f, r1, _w1)


def upper_M(f: PowerSeries, r1, params: PQParams):
    p, q = params.p, params.q
    return p * (q - p + 1) / (q - p) ** 2 * coeff_majorant(f, r1)


def q_factor(params: PQParams):
    """Leading factor of ``Q`` as it comes out of the Voronovskaja estimate."""
    p, q = params.p, params.q
    if p == 1:
        raise ZeroDivisionError("Q is undefined for p = 1")
    return (p * q - q + p - 1) / ((p - 1) * (q - p) ** 2)


def q_factor_statement(params: PQParams):
    """Leading factor as displayed with the theorem; reported only."""
    p, q = params.p, params.q
    if p == 1:
        raise ZeroDivisionError("Q is undefined for p = 1")
    return (p * q - q + p) / ((p - 1) * (q - p))


def upper_Q(f: PowerSeries, r1, params: PQParams):
    p, q = params.p, params.q
    return q_factor(params) * weighted_sum(f, q * r1 / p, _w3)


def simultaneous_factor(m: int, r, rstar):
    """``m! r* / (r* - r)**(m+1)``."""
    if not rstar > r:
        raise ValueError("need r* > r")
    if m < 0:
        raise ValueError("m must be >= 0")
    if isinstance(r, (int, Fraction)) and isinstance(rstar, (int, Fraction)):
        r, rstar = Fraction(r), Fraction(rstar)
    return math.factorial(m) * rstar / (rstar - r) ** (m + 1)


def iterate_bound(f: PowerSeries, r1, m: int, n: int, params: PQParams):
    """``m p^n/[n] (q-p+1)/(q-p)^2 sum |c_k|(k+1) r1^k``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    p, q = params.p, params.q
    return m * rate_unit(n, params) * (q - p + 1) / (q - p) ** 2 * coeff_majorant(f, r1)


def upper_bound_proof_form(f: PowerSeries, r1, n: int, params: PQParams):
    """``p^(n+1)/[n] (q-p+1)/(q-p)^2 R_{r1}(f)``; equals ``rate_unit * M``."""
    p, q = params.p, params.q
    return p ** (n + 1) / pq_integer(n, params) * (q - p + 1) / (q - p) ** 2 * coeff_majorant(f, r1)


# ---------------------------------------------------------------------------
# hypotheses


def hypothesis_flags(params: PQParams, r, r1, R, rstar=None) -> dict:
    """Which theorem hypotheses the radii satisfy.

    Keys without a ``printed_`` prefix are the standardised hypotheses used
    to gate assertions (strict regime ``q > p > 1``).  ``printed_`` keys
    evaluate the hypotheses exactly as displayed with each theorem, some of
    which cannot hold in that regime.
    """
    p, q = params.p, params.q
    strict = q > p > 1
    flags = {
        "strict_regime": strict,
        "upper": strict and R > q and 1 <= r < p * r1 / q < p * R / q,
        "voronovskaja": strict and R > q**4 and 1 <= r < p**3 * r1 / q**3 < p**4 * R / q**4,
        "iterates": strict and R > q and 1 <= r < p * r1 / q < p * R / q,
    }
    flags["lower"] = flags["voronovskaja"]
    flags["printed_lower"] = R > p**4 / q**4 > 1 and 1 <= r < q**3 * r1 / p**3 < q**4 * R / p**4
    flags["printed_iterates"] = R > p > q > 1 and 1 <= r < p * r1 / q < p * R / q
    if rstar is not None:
        flags["simultaneous_upper"] = strict and R > q and 1 <= r < rstar < p * r1 / q < p * R / q
        flags["simultaneous_order"] = (
            strict and R > q**4 and 1 <= r < rstar < p**3 * r1 / q**3 < p**4 * R / q**4
        )
    return flags


# ---------------------------------------------------------------------------
# report


@dataclass
class BoundReport:
    n: int
    rate_unit: object
    M: object
    Q: object
    Q_statement: object
    simultaneous_factor: object
    iterate_bound: object
    radii: dict
    hypothesis_flags: dict
    params: dict
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        exact = {}
        for key in ("rate_unit", "M", "Q", "Q_statement", "simultaneous_factor", "iterate_bound"):
            v = d[key]
            # exact text only while it stays readable
            if isinstance(v, Fraction) and max(abs(v.numerator), v.denominator) < 10**60:
                exact[key] = json_scalar(v)
            d[key] = None if v is None else float(v)
        d["exact"] = exact
        d["radii"] = {k: json_scalar(v) for k, v in self.radii.items()}
        d["params"] = {k: json_scalar(v) for k, v in self.params.items()}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def bound_report(
    f: PowerSeries, n: int, params: PQParams, r, r1, rstar=None, m: int = 1, iterates: int = 1
) -> BoundReport:
    notes = []
    try:
        Q = upper_Q(f, r1, params)
        Q_stmt = q_factor_statement(params) * weighted_sum(f, params.q * r1 / params.p, _w3)
        notes.append("Q uses (pq-q+p-1)/((p-1)(q-p)^2); Q_statement uses (pq-q+p)/((p-1)(q-p))")
    except (ZeroDivisionError, ValueError) as exc:
        Q = Q_stmt = None
        notes.append(f"Q unavailable: {exc}")
    sim = simultaneous_factor(m, r, rstar) if rstar is not None else None
    flags = hypothesis_flags(params, r, r1, f.radius, rstar)
    if not flags["printed_iterates"]:
        notes.append("iterate theorem as printed requires p > q; checked under q > p instead")
    return BoundReport(
        n=n,
        rate_unit=rate_unit(n, params),
        M=upper_M(f, r1, params),
        Q=Q,
        Q_statement=Q_stmt,
        simultaneous_factor=sim,
        iterate_bound=iterate_bound(f, r1, iterates, n, params),
        radii={"r": r, "rstar": rstar, "r1": r1, "R": f.radius},
        hypothesis_flags=flags,
        params={"p": params.p, "q": params.q},
        notes=notes,
    )


# ---------------------------------------------------------------------------
# empirical lower constant


@dataclass(frozen=True)
class LowerBoundEstimate:
    C: float
    argmin_n: int
    normalized: tuple
    s_half: float
    s_half_normalized: float
    n0: int | None


def is_linear(f: PowerSeries) -> bool:
    return f.is_polynomial() and all(not c for c in f.coeffs[2:])


def lower_constant_estimate(
    f: PowerSeries, r, n_max: int, params: PQParams, grid_size: int | None = None
) -> LowerBoundEstimate:
    """Empirical ``min_{1<=n<=n_max} ||L_n f - f||_r [n] / p^n``.

    Also returns ``||S_{n_max} f||_r / 2`` and the same quantity divided by
    ``p**n_max`` (the scale comparable with the normalized errors), and the
    first ``n`` from which every normalized error stays above that level.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    if all(not c for c in f.coeffs[2:]) and (f.is_polynomial() or f.K < 2):
        raise ValueError("f is a polynomial of degree <= 1; the lower estimate excludes it")
    grid = CircleGrid.for_degree(r, f.K, grid_size)
    normalized = []
    for n in range(1, n_max + 1):
        Ln = apply(f, n, params)
        diff = [(Ln.coeffs[k] if k <= n else 0) - c for k, c in enumerate(f.coeffs)]
        err = norm_on(diff, grid)
        normalized.append(float(err) / float(rate_unit(n, params)))
    S = voronovskaja_term(f, n_max, f.K, params)
    s_half = float(norm_on(S.coeffs, grid)) / 2
    s_half_norm = s_half / float(params.p**n_max)
    n0 = None
    for i in range(n_max):
        if all(v >= s_half_norm for v in normalized[i:]):
            n0 = i + 1
            break
    C = min(normalized)
    return LowerBoundEstimate(C, normalized.index(C) + 1, tuple(normalized), s_half, s_half_norm, n0)
