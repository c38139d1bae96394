"""Sup-norms on circles.

For a function analytic on the closed disk ``|z| <= r`` the maximum modulus
is attained on the boundary circle, so ``||g||_r`` is estimated by sampling
``|z| = r`` at ``G`` equally spaced points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence, Union

import numpy as np

from .scalars import QComplex
from .series import PowerSeries, horner_array

MIN_GRID = 1024
GRID_PER_DEGREE = 16


class EvaluationError(RuntimeError):
    """A sample on the grid produced a non-finite value."""

    def __init__(self, z, value):
        super().__init__(f"evaluation failed at z={z!r} (value {value!r})")
        self.z = z
        self.value = value


def grid_size_for(degree: int, requested: int | None = None) -> int:
    minimum = max(MIN_GRID, GRID_PER_DEGREE * max(degree, 0))
    return minimum if requested is None else max(int(requested), minimum)


@dataclass(frozen=True)
class CircleGrid:
    r: object
    G: int
    points: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.G < 1:
            raise ValueError("grid needs at least one point")
        if not float(self.r) > 0:
            raise ValueError("radius must be positive")
        theta = 2 * np.pi * np.arange(self.G) / self.G
        pts = float(self.r) * np.exp(1j * theta)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def for_degree(cls, r, degree: int, G: int | None = None) -> "CircleGrid":
        return cls(r, grid_size_for(degree, G))

    def refined(self, factor: int = 2) -> "CircleGrid":
        return CircleGrid(self.r, self.G * factor)


Evaluatable = Union[Callable, Sequence, PowerSeries]


def _values(fn: Evaluatable, pts: np.ndarray) -> np.ndarray:
    coeffs = getattr(fn, "coeffs", None)
    if coeffs is not None:
        return horner_array(coeffs, pts)
    if callable(fn):
        return np.asarray(fn(pts), dtype=np.complex128) * np.ones_like(pts)
    return horner_array(fn, pts)


def sup_norm(fn: Evaluatable, grid: CircleGrid) -> float:
    """``max_j |fn(z_j)|`` over the grid.

    ``fn`` may be a vectorised callable, a coefficient sequence or anything
    with a ``coeffs`` attribute.  Never exceeds the true sup-norm (up to
    rounding) and increases toward it as ``G`` grows.
    """
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        vals = _values(fn, grid.points)
        mods = np.abs(vals)
    bad = ~np.isfinite(mods)
    if bad.any():
        j = int(np.argmax(bad))
        raise EvaluationError(complex(grid.points[j]), complex(vals[j]))
    return float(mods.max())


def exact_monomial_norm(coeffs: Sequence, r) -> Fraction | None:
    """``|c| r**k`` for a single real (or purely imaginary) rational monomial.

    Returns ``None`` when the coefficient list is not such a monomial or
    ``r`` is not rational; callers fall back to :func:`sup_norm`.
    """
    if not isinstance(r, (int, Fraction)):
        return None
    nz = [(k, c) for k, c in enumerate(coeffs) if c]
    if not nz:
        return Fraction(0) if all(isinstance(c, (int, Fraction, QComplex)) for c in coeffs) else None
    if len(nz) != 1:
        return None
    k, c = nz[0]
    if isinstance(c, QComplex):
        if c.re and c.im:
            return None
        c = c.re or c.im
    if not isinstance(c, (int, Fraction)):
        return None
    return abs(Fraction(c)) * Fraction(r) ** k


def norm_on(coeffs: Sequence, grid: CircleGrid):
    """Exact norm when one is available, otherwise the grid estimate."""
    exact = exact_monomial_norm(coeffs, grid.r)
    return exact if exact is not None else sup_norm(coeffs, grid)


def is_close_rel(a: float, b: float, rel: float) -> bool:
    return math.isclose(float(a), float(b), rel_tol=rel, abs_tol=0.0) or (a == b)
