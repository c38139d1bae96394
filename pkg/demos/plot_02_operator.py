"""
The operator acts diagonally on monomials
=========================================

``L_n`` multiplies ``z**k`` by a scalar ``lambda_{n,k}``.  Those scalars
decrease in ``k``, equal one for ``k <= 1`` and vanish for ``k > n``.
"""

from fractions import Fraction

from pqlorentz.lorentz import apply, apply_definition_at, iterate, multiplier_row
from pqlorentz.pqcore import PQParams
from pqlorentz.scalars import qc
from pqlorentz.series import catalog, evaluate

P = PQParams(2, 3)

row = multiplier_row(5, P)
for k in range(7):
    print(k, row[k])

# applying the operator to a truncated exponential gives a degree-n polynomial
f = catalog("exp", 20)
L5 = apply(f, 5, P)
print(L5.coeffs)

# the coefficient route and the defining sum agree exactly at rational points
z = qc(Fraction(3, 5), Fraction(4, 5))
print(evaluate(L5.as_series(), z).value == apply_definition_at(f, 5, z, P))

# iterates raise each multiplier to the m-th power
print(iterate(catalog("monomial:2", 4), 3, 2, P).coeffs)
