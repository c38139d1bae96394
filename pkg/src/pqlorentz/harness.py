"""Convergence experiments: rate tables and exact-order audits.

Every error polynomial is assembled coefficientwise in the arithmetic of
the inputs (exact for rational ``f`` and ``p, q``); floats enter only when
the polynomial is sampled on the circle.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .bounds import (
    coeff_majorant,
    hypothesis_flags,
    is_linear,
    iterate_bound,
    rate_unit,
    simultaneous_factor,
    upper_M,
    upper_Q,
)
from .lorentz import apply, iterate, voronovskaja_term
from .norms import CircleGrid, norm_on, sup_norm
from .pqcore import PQParams, pq_integer
from .scalars import fmt17, json_scalar
from .series import DomainError, PowerSeries, ordinary_derivative, tail_bound_at

__all__ = [
    "CircleGrid",
    "RateRow",
    "RateTable",
    "AuditResult",
    "sup_norm",
    "convergence_table",
    "voronovskaja_table",
    "simultaneous_table",
    "iterate_table",
    "exact_order_audit",
    "decreasing_from",
]


@dataclass(frozen=True)
class RateRow:
    n: int
    error: object
    rate: object
    normalized: object
    bound: object
    within_bound: bool
    tail: float = 0.0
    m: int = 1


@dataclass
class RateTable:
    kind: str
    rows: list
    meta: dict = field(default_factory=dict)

    def column(self, name: str) -> list:
        return [getattr(row, name) for row in self.rows]

    @property
    def header(self) -> list:
        base = ["n", "error", "rate", "normalized", "bound", "within_bound"]
        return base[:1] + ["m"] + base[1:] if self.kind == "iterate" else base

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        for row in self.rows:
            vals = []
            for name in self.header:
                v = getattr(row, name)
                vals.append(v if isinstance(v, int) and not isinstance(v, bool) else fmt17(v))
            w.writerow(vals)
        return buf.getvalue()

    def to_dict(self) -> dict:
        rows = []
        for row in self.rows:
            d = {name: getattr(row, name) for name in self.header}
            for key in ("error", "rate", "normalized", "bound"):
                d[key] = float(d[key])
            d["tail"] = float(row.tail)
            rows.append(d)
        return {"kind": self.kind, "meta": _jsonable(self.meta), "rows": rows}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, str, int)) or obj is None:
        return obj
    if isinstance(obj, (Fraction, float)):
        return json_scalar(obj)
    return str(obj)


def _ratio(a, b):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a / b
    return float(a) / float(b)


def _within(error, tail, bound) -> bool:
    return float(error) + float(tail) <= float(bound)


def _check_range(f: PowerSeries, n_range: Sequence[int]) -> list:
    ns = sorted(set(int(n) for n in n_range))
    if not ns:
        raise ValueError("empty n range")
    if ns[0] < 1:
        raise ValueError("degrees must be >= 1")
    if ns[-1] > f.K and not f.is_polynomial():
        raise ValueError(f"largest degree {ns[-1]} exceeds the series truncation K={f.K}")
    return ns


def _check_radius(f: PowerSeries, *radii) -> None:
    for rad in radii:
        if not rad < f.radius:
            raise DomainError(f"radius {float(rad)} is not inside the disk of analyticity R={float(f.radius)}")


def _meta(kind, f, params, **extra) -> dict:
    meta = {"kind": kind, "f": f.name, "K": f.K, "p": params.p, "q": params.q, "exact": params.exact}
    meta.update(extra)
    return meta


def _error_series(f: PowerSeries, image) -> PowerSeries:
    return image.as_series() - f


def convergence_table(
    f: PowerSeries, r, r1, n_range: Iterable[int], params: PQParams, grid_size: int | None = None
) -> RateTable:
    """``||L_n f - f||_r`` against ``p^n/[n]`` and the bound ``p^n/[n] M``."""
    ns = _check_range(f, list(n_range))
    _check_radius(f, r)
    grid = CircleGrid.for_degree(r, f.K, grid_size)
    M = upper_M(f, r1, params)
    rows = []
    for n in ns:
        err_series = _error_series(f, apply(f, n, params))
        error = norm_on(err_series.coeffs, grid)
        tail = tail_bound_at(err_series, r) or 0
        rate = rate_unit(n, params)
        bound = rate * M
        rows.append(RateRow(n, error, rate, _ratio(error, rate), bound, _within(error, tail, bound), float(tail)))
    flags = hypothesis_flags(params, r, r1, f.radius)
    return RateTable(
        "converge",
        rows,
        _meta("converge", f, params, r=r, r1=r1, G=grid.G, M=M, flags=flags, degenerate=is_linear(f)),
    )


def voronovskaja_table(
    f: PowerSeries, r, r1, n_range: Iterable[int], params: PQParams, grid_size: int | None = None
) -> RateTable:
    """``||L_n f - f + S_n f/[n]||_r`` against ``p^(2n)/[n]^2`` and ``Q``."""
    if params.p == 1:
        raise ValueError("the Voronovskaja estimate needs p > 1")
    ns = _check_range(f, list(n_range))
    _check_radius(f, r)
    grid = CircleGrid.for_degree(r, f.K, grid_size)
    Q = upper_Q(f, r1, params)
    rows = []
    for n in ns:
        S = voronovskaja_term(f, n, max(f.K, 2), params)
        resid = _error_series(f, apply(f, n, params)) + S.scale(1 / pq_integer(n, params))
        error = norm_on(resid.coeffs, grid)
        tail = tail_bound_at(resid, r) or 0
        rate = rate_unit(n, params) ** 2
        bound = rate * Q
        rows.append(RateRow(n, error, rate, _ratio(error, rate), bound, _within(error, tail, bound), float(tail)))
    flags = hypothesis_flags(params, r, r1, f.radius)
    return RateTable(
        "voronovskaja",
        rows,
        _meta("voronovskaja", f, params, r=r, r1=r1, G=grid.G, Q=Q, flags=flags, degenerate=is_linear(f)),
    )


def simultaneous_table(
    f: PowerSeries,
    m: int,
    r,
    rstar,
    r1,
    n_range: Iterable[int],
    params: PQParams,
    grid_size: int | None = None,
) -> RateTable:
    """``||(L_n f)^(m) - f^(m)||_r`` by exact differentiation of the image."""
    if m < 1:
        raise ValueError("derivative order m must be >= 1")
    factor = simultaneous_factor(m, r, rstar)
    ns = _check_range(f, list(n_range))
    _check_radius(f, r)
    grid = CircleGrid.for_degree(r, f.K, grid_size)
    M = upper_M(f, r1, params)
    rows = []
    for n in ns:
        d = ordinary_derivative(_error_series(f, apply(f, n, params)), m)
        error = norm_on(d.coeffs, grid)
        tail = tail_bound_at(d, r) or 0
        rate = rate_unit(n, params)
        bound = rate * M * factor
        rows.append(RateRow(n, error, rate, _ratio(error, rate), bound, _within(error, tail, bound), float(tail)))
    excluded = f.is_polynomial() and f.degree() <= max(1, m - 1)
    flags = hypothesis_flags(params, r, r1, f.radius, rstar)
    return RateTable(
        "simultaneous",
        rows,
        _meta(
            "simultaneous", f, params, m=m, r=r, rstar=rstar, r1=r1, G=grid.G, M=M,
            factor=factor, flags=flags, degenerate=excluded,
        ),
    )


def decreasing_from(values: Sequence) -> int | None:
    """First index from which ``values`` is strictly decreasing to the end."""
    vals = [float(v) for v in values]
    if not vals:
        return None
    i = len(vals) - 1
    while i > 0 and vals[i - 1] > vals[i]:
        i -= 1
    return i


def iterate_table(
    f: PowerSeries, r, r1, schedule: Sequence[tuple[int, int]], params: PQParams, grid_size: int | None = None
) -> RateTable:
    """``||L_n^(m_n) f - f||_r`` along a schedule of ``(n, m_n)`` pairs."""
    sched = sorted((int(n), int(m)) for n, m in schedule)
    if not sched:
        raise ValueError("empty schedule")
    _check_range(f, [n for n, _ in sched])
    _check_radius(f, r)
    grid = CircleGrid.for_degree(r, f.K, grid_size)
    R1 = coeff_majorant(f, r1)
    rows = []
    for n, m in sched:
        err_series = _error_series(f, iterate(f, n, m, params))
        error = norm_on(err_series.coeffs, grid)
        tail = tail_bound_at(err_series, r) or 0
        rate = rate_unit(n, params)
        bound = iterate_bound(f, r1, m, n, params)
        rows.append(
            RateRow(n, error, rate, _ratio(error, rate), bound, _within(error, tail, bound), float(tail), m)
        )
    flags = hypothesis_flags(params, r, r1, f.radius)
    errors = [row.error for row in rows]
    drivers = [float(m * rate_unit(n, params)) for n, m in sched]
    return RateTable(
        "iterate",
        rows,
        _meta(
            "iterate", f, params, r=r, r1=r1, G=grid.G, R1=R1, flags=flags, degenerate=is_linear(f),
            decreasing_from=decreasing_from(errors), driver=drivers,
        ),
    )


@dataclass(frozen=True)
class AuditResult:
    lo: float
    hi: float
    passed: bool
    ratio: float
    rows_used: int


def exact_order_audit(
    table: RateTable, n_burnin: int = 3, ratio_cap: float = 100.0, min_rows: int = 6
) -> AuditResult:
    """Check that ``error / rate`` stays between two positive constants."""
    if table.meta.get("degenerate"):
        raise ValueError("exact order is not claimed for this f (polynomial of too low degree)")
    if len(table.rows) < min_rows:
        raise ValueError(f"audit needs at least {min_rows} rows, table has {len(table.rows)}")
    used = [row.normalized for row in table.rows if row.n >= n_burnin]
    if not used:
        raise ValueError("no rows past the burn-in")
    lo, hi = min(used), max(used)
    lo_f, hi_f = float(lo), float(hi)
    ratio = hi_f / lo_f if lo_f > 0 else float("inf")
    passed = lo_f > 0 and ratio <= ratio_cap
    if isinstance(lo, Fraction) and isinstance(hi, Fraction) and lo > 0:
        ratio = hi / lo
    return AuditResult(lo, hi, passed, ratio, len(used))
