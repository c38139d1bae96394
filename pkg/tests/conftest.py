from fractions import Fraction

import pytest

from pqlorentz.pqcore import PQParams


@pytest.fixture
def p23():
    return PQParams(2, 3)


@pytest.fixture
def p_alt():
    return PQParams(Fraction(3, 2), Fraction(5, 2))


@pytest.fixture
def p_slow():
    """Slow-decay parameters used by the rate experiments."""
    return PQParams(Fraction(11, 10), Fraction(6, 5))


def circle_points(radius, count):
    """``count`` exact rational points on ``|z| = radius``.

    Uses ``t -> ((1 - t^2) + 2 t i) / (1 + t^2)`` with ``t = tan(theta/2)``
    taken over rationals spread in both directions, so every point lies
    exactly on the circle.
    """
    from pqlorentz.scalars import qc

    pts = []
    ts = [Fraction(k, 4) for k in range(-2 * count, 2 * count + 1)]
    ts.sort(key=lambda t: abs(t))
    for t in ts:
        d = 1 + t * t
        z = qc(radius * (1 - t * t) / d, radius * 2 * t / d)
        pts.append(z)
        pts.append(-z)
        if len(pts) >= count:
            break
    return pts[:count]
