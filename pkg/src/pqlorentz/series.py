"""Power series with certified geometric tail majorants.

A :class:`PowerSeries` stores ``c_0 .. c_K`` of an analytic function
``f(z) = sum c_k z^k`` plus, optionally, constants ``A, rho`` with
``|c_k| <= A * rho**(-k)`` for every ``k > tail.start``.  Coefficients are
exact (``Fraction`` / :class:`~pqlorentz.scalars.QComplex`) when available
and floats otherwise.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .pqcore import PQParams, pq_factorial, pq_integer
from .scalars import (
    QComplex,
    from_json_scalar,
    is_exact,
    json_scalar,
    modulus,
    qc,
    to_float,
)

INF = math.inf


class DomainError(ValueError):
    """Evaluation requested outside the disk of analyticity."""


@dataclass(frozen=True)
class Tail:
    """Geometric majorant ``|c_k| <= A * rho**(-k)`` valid for ``k > start``."""

    A: object
    rho: object
    start: int

    def bound(self, k: int):
        if not self.A:
            return 0
        return self.A / self.rho**k


@dataclass(frozen=True)
class PowerSeries:
    coeffs: tuple
    radius: object = INF
    tail: Tail | None = None
    name: str = "series"

    def __post_init__(self):
        if len(self.coeffs) == 0:
            object.__setattr__(self, "coeffs", (Fraction(0),))
        else:
            object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def K(self) -> int:
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return all(is_exact(c) for c in self.coeffs)

    def coeff(self, k: int):
        if k < 0:
            return 0
        if k <= self.K:
            return self.coeffs[k]
        if self.tail is not None and not self.tail.A:
            return Fraction(0) if self.exact else 0.0
        raise IndexError(f"coefficient {k} is beyond the stored truncation K={self.K}")

    def degree(self) -> int:
        """Index of the last nonzero stored coefficient (-1 for zero)."""
        for k in range(self.K, -1, -1):
            if self.coeffs[k]:
                return k
        return -1

    def is_polynomial(self) -> bool:
        return self.tail is not None and not self.tail.A

    def __call__(self, z):
        return horner(self.coeffs, z)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        return _combine(self, other, 1)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return _combine(self, other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s) -> "PowerSeries":
        tail = self.tail
        if tail is not None and tail.A:
            tail = Tail(tail.A * modulus(s), tail.rho, tail.start)
        return PowerSeries(tuple(s * c for c in self.coeffs), self.radius, tail, self.name)

    def to_float(self) -> "PowerSeries":
        coeffs = tuple(complex(to_float(c)) for c in self.coeffs)
        return PowerSeries(coeffs, self.radius, self.tail, self.name)

    def to_json(self) -> str:
        return json.dumps(series_to_dict(self), sort_keys=True)


def _combine(a: PowerSeries, b: PowerSeries, sign: int) -> PowerSeries:
    # a truncated (non-polynomial) operand limits how far the result is known
    K = max(a.K, b.K)
    for s in (a, b):
        if not s.is_polynomial():
            K = min(K, s.K)
    coeffs = []
    for k in range(K + 1):
        x = a.coeffs[k] if k <= a.K else 0
        y = b.coeffs[k] if k <= b.K else 0
        coeffs.append(x + y if sign > 0 else x - y)
    if a.tail is None or b.tail is None:
        tail = None
    elif not a.tail.A:
        tail = Tail(b.tail.A, b.tail.rho, max(b.tail.start, K))
    elif not b.tail.A:
        tail = Tail(a.tail.A, a.tail.rho, max(a.tail.start, K))
    else:
        rho = min(a.tail.rho, b.tail.rho)
        tail = Tail(a.tail.A + b.tail.A, rho, max(a.tail.start, b.tail.start, K))
    op = "+" if sign > 0 else "-"
    return PowerSeries(tuple(coeffs), min(a.radius, b.radius), tail, f"{a.name}{op}{b.name}")


def horner(coeffs: Sequence, z):
    """Evaluate ``sum coeffs[k] z**k`` by Horner's rule, highest degree first.

    Works for exact scalars, Python floats/complex and numpy arrays of
    points.  The summation order is fixed, so results are reproducible.
    """
    acc = 0 * z
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def horner_array(coeffs: Sequence, points: np.ndarray) -> np.ndarray:
    """Vectorised float Horner over an array of complex points."""
    cs = np.array([to_float(c) for c in coeffs], dtype=np.complex128)
    acc = np.zeros_like(points, dtype=np.complex128)
    for c in cs[::-1]:
        acc = acc * points + c
    return acc


# ---------------------------------------------------------------------------
# catalog


def _factorial_rho(K: int) -> Fraction:
    """Rational ``rho`` with ``rho**k <= k!`` for every ``k > K``.

    ``(k!)**(1/k)`` is nondecreasing, so it suffices that
    ``rho**(K+1) <= (K+1)!``; the float root is rounded down and then
    verified exactly.
    """
    n = K + 1
    target = math.factorial(n)
    guess = math.exp(math.lgamma(n + 1) / n)
    rho = Fraction(math.floor(guess * 2**20), 2**20)
    while rho**n > target:
        rho -= Fraction(1, 2**20)
    return rho


def _parse_catalog(name: str):
    name = name.strip()
    if ":" in name:
        head, arg = name.split(":", 1)
    else:
        head, arg = name, ""
    return head.strip().lower(), arg.strip()


def catalog(name: str, K: int, exact: bool = True) -> PowerSeries:
    """Build a test function by name.

    Names: ``exp``, ``sin``, ``cos``, ``geometric:a``, ``monomial:j``,
    ``polynomial:c0,c1,...``.  Arguments are parsed as rationals, so
    ``geometric:4`` and ``polynomial:1,1/2,-3`` are exact.
    """
    if not isinstance(K, int) or K < 1:
        raise ValueError(f"truncation degree K must be >= 1, got {K!r}")
    head, arg = _parse_catalog(name)

    if head == "exp":
        coeffs = [Fraction(1, math.factorial(k)) for k in range(K + 1)]
        series = PowerSeries(tuple(coeffs), INF, Tail(Fraction(1), _factorial_rho(K), K), "exp")
    elif head in ("sin", "sinlike"):
        coeffs = [
            Fraction((-1) ** (k // 2), math.factorial(k)) if k % 2 else Fraction(0) for k in range(K + 1)
        ]
        series = PowerSeries(tuple(coeffs), INF, Tail(Fraction(1), _factorial_rho(K), K), "sin")
    elif head in ("cos", "coslike"):
        coeffs = [
            Fraction((-1) ** (k // 2), math.factorial(k)) if k % 2 == 0 else Fraction(0)
            for k in range(K + 1)
        ]
        series = PowerSeries(tuple(coeffs), INF, Tail(Fraction(1), _factorial_rho(K), K), "cos")
    elif head == "geometric":
        if not arg:
            raise ValueError("geometric needs an argument, e.g. geometric:4")
        a = _parse_scalar(arg)
        if not a:
            raise ValueError("geometric(a) requires |a| > 0")
        inv = 1 / a
        coeffs = [inv**k for k in range(K + 1)]
        R = modulus(a)
        series = PowerSeries(tuple(coeffs), R, Tail(Fraction(1), R, K), f"geometric:{arg}")
    elif head == "monomial":
        j = int(arg)
        if j < 0:
            raise ValueError("monomial degree must be >= 0")
        if j > K:
            raise ValueError(f"monomial degree {j} exceeds K={K}")
        coeffs = [Fraction(int(k == j)) for k in range(K + 1)]
        series = PowerSeries(tuple(coeffs), INF, Tail(Fraction(0), INF, K), f"monomial:{j}")
    elif head in ("polynomial", "poly"):
        vals = [_parse_scalar(s) for s in arg.split(",") if s.strip()] if arg else [Fraction(0)]
        if len(vals) - 1 > K:
            raise ValueError(f"polynomial degree {len(vals) - 1} exceeds K={K}")
        coeffs = vals + [Fraction(0)] * (K + 1 - len(vals))
        series = PowerSeries(tuple(coeffs), INF, Tail(Fraction(0), INF, K), f"polynomial:{arg}")
    else:
        raise ValueError(f"unknown catalog function {name!r}")
    return series if exact else series.to_float()


def _parse_scalar(text: str):
    text = text.strip().replace(" ", "")
    if text.endswith("i") or text.endswith("j"):
        z = complex(text[:-1] + "j")
        return qc(Fraction(z.real), Fraction(z.imag))
    return Fraction(text)


def polynomial(coeffs: Sequence, name: str = "polynomial") -> PowerSeries:
    """Series for an explicit polynomial (exact if the inputs are)."""
    cs = tuple(c if is_exact(c) or isinstance(c, (float, complex)) else Fraction(c) for c in coeffs)
    return PowerSeries(cs or (Fraction(0),), INF, Tail(Fraction(0), INF, len(cs) - 1), name)


# ---------------------------------------------------------------------------
# evaluation


class Evaluation(NamedTuple):
    value: object
    error_bound: object


def tail_bound_at(f: PowerSeries, abs_z):
    """``sum_{k>K} A rho^-k |z|^k`` or ``None`` without a majorant."""
    if f.tail is None:
        return None
    if not f.tail.A:
        return 0
    x = abs_z / f.tail.rho
    if x >= 1:
        return INF
    N = max(f.K, f.tail.start) + 1
    return f.tail.A * x**N / (1 - x)


def evaluate(f: PowerSeries, z, certified: bool = False) -> Evaluation:
    """Value of the stored polynomial at ``z`` plus the truncation bound."""
    az = modulus(z)
    if not az < f.radius:
        raise DomainError(f"|z| = {float(az)} is outside the disk of radius {f.radius}")
    bound = tail_bound_at(f, az)
    if certified and bound is None:
        raise ValueError("a certified bound needs a tail majorant")
    return Evaluation(horner(f.coeffs, z), bound)


# ---------------------------------------------------------------------------
# differentiation


def pq_derivative(f: PowerSeries, params: PQParams) -> PowerSeries:
    """Termwise ``D_{p,q}``: coefficient ``k`` becomes ``[k+1] c_{k+1}``."""
    if f.K == 0:
        return PowerSeries((f.coeffs[0] * 0,), f.radius, Tail(Fraction(0), INF, 0), f"Dpq({f.name})")
    coeffs = tuple(pq_integer(k + 1, params) * f.coeffs[k + 1] for k in range(f.K))
    tail = None
    if f.tail is not None:
        if f.tail.A:
            # [k+1] <= (k+1) q^k, so the majorant radius shrinks by q
            tail = _derivative_tail(f.tail, f.K, params.q)
        else:
            tail = Tail(f.tail.A, f.tail.rho, f.K - 1)
    return PowerSeries(coeffs, f.radius / params.q if f.radius != INF else INF, tail, f"Dpq({f.name})")


def pq_derivative_pointwise(f: PowerSeries, z, params: PQParams):
    """Difference quotient ``(f(pz) - f(qz)) / ((p - q) z)`` of the stored polynomial."""
    if not z:
        raise ValueError("z = 0: use the coefficient rule (D_{p,q} f(0) = f'(0))")
    p, q = params.p, params.q
    if not modulus(q * z) < f.radius:
        raise DomainError("|q z| must be inside the disk of analyticity")
    return (horner(f.coeffs, p * z) - horner(f.coeffs, q * z)) / ((p - q) * z)


def kth_pq_derivative_at_zero(f: PowerSeries, k: int, params: PQParams):
    """``D^k_{p,q} f (0) = [k]!_{p,q} c_k``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    c = f.coeff(k)
    return pq_factorial(k, params) * c


def linear_weight_tail(scale, rho, start: int) -> Tail:
    """Majorant for coefficients bounded by ``scale * (k+1) * rho**(-k)``, ``k > start``.

    With ``theta = (start+2)/(start+3)`` the sequence ``(k+1) theta**k`` is
    nonincreasing for ``k > start``, so its first term bounds the rest.
    """
    theta = Fraction(start + 2, start + 3)
    if isinstance(rho, float) or isinstance(scale, float):
        theta = float(theta)
    return Tail(scale * (start + 2) * theta ** (start + 1), rho * theta, start)


def _derivative_tail(tail: Tail, K: int, growth=1) -> Tail:
    # new coefficient k is at most (k+1) growth^k |c_{k+1}| for k > K-1
    Kn = max(K, tail.start) - 1
    return linear_weight_tail(tail.A / tail.rho, tail.rho / growth, Kn)


def ordinary_derivative(f: PowerSeries, m: int = 1) -> PowerSeries:
    """``m``-th analytic derivative, coefficientwise."""
    if m < 0:
        raise ValueError("m must be >= 0")
    g = f
    for _ in range(m):
        if g.K == 0:
            zero = g.coeffs[0] * 0
            g = PowerSeries((zero,), g.radius, Tail(Fraction(0), INF, 0) if g.tail else None, g.name)
            continue
        coeffs = tuple((k + 1) * g.coeffs[k + 1] for k in range(g.K))
        tail = g.tail
        if tail is not None:
            tail = _derivative_tail(tail, g.K) if tail.A else Tail(tail.A, tail.rho, g.K - 1)
        g = PowerSeries(coeffs, g.radius, tail, g.name)
    if m:
        g = PowerSeries(g.coeffs, g.radius, g.tail, f"d{m}({f.name})")
    return g


# ---------------------------------------------------------------------------
# JSON


def _coeff_entry(c) -> list:
    if isinstance(c, QComplex):
        re, im = c.re, c.im
    elif isinstance(c, complex):
        re, im = Fraction(c.real), Fraction(c.imag)
    else:
        re, im = Fraction(c), Fraction(0)
    return [re.numerator, re.denominator, im.numerator, im.denominator]


def series_to_dict(f: PowerSeries) -> dict:
    tail = None
    if f.tail is not None:
        tail = {"A": json_scalar(f.tail.A), "rho": json_scalar(f.tail.rho), "start": f.tail.start}
    return {
        "name": f.name,
        "K": f.K,
        "exact": f.exact,
        "coeffs": [_coeff_entry(c) for c in f.coeffs],
        "tail": tail,
        "radius": json_scalar(f.radius),
    }


def series_from_dict(d: dict) -> PowerSeries:
    coeffs = []
    for re_n, re_d, im_n, im_d in d["coeffs"]:
        c = qc(Fraction(re_n, re_d), Fraction(im_n, im_d))
        coeffs.append(c)
    series = PowerSeries(tuple(coeffs), from_json_scalar(d["radius"]), None, d.get("name", "series"))
    if d.get("tail") is not None:
        t = d["tail"]
        A = from_json_scalar(t["A"])
        series = PowerSeries(
            series.coeffs, series.radius, Tail(A, from_json_scalar(t["rho"]), t.get("start", series.K)), series.name
        )
    if not d.get("exact", True):
        series = series.to_float()
    return series


def series_from_json(text: str) -> PowerSeries:
    return series_from_dict(json.loads(text))
