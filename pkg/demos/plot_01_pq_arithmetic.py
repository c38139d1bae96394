"""
(p,q)-integers and friends
==========================

The two-parameter integers interpolate between ordinary integers
(``p = q = 1`` in the limit) and the q-integers (``p = 1``).
Everything is exact when ``p`` and ``q`` are rational.
"""

from fractions import Fraction

from pqlorentz.pqcore import (
    PQParams,
    pq_binomial,
    pq_factorial,
    pq_integer,
    pq_power_product,
    pq_power_product_coefficients,
)

P = PQParams(2, 3)

# [n] = (q^n - p^n)/(q - p), so [1] = 1, [2] = p + q, [3] = p^2 + pq + q^2
print([pq_integer(n, P) for n in range(1, 6)])

# factorials and binomials are built from those integers
print(pq_factorial(4, P), pq_binomial(5, 2, P))

# the power product (x + y)(px + qy)(p^2 x + q^2 y) expands with
# binomial coefficients weighted by powers of p and q
x, y = Fraction(1, 3), Fraction(-2, 5)
coeffs = pq_power_product_coefficients(3, P)
print(coeffs)
print(pq_power_product(x, y, 3, P) == sum(c * x ** (3 - k) * y**k for k, c in enumerate(coeffs)))

# float parameters run the same code path in floating point
Pf = PQParams(1.1, 1.2)
print(pq_integer(20, Pf))
