"""
Bound constants and the lower estimate
======================================

Constants are sums over the coefficients plus a certified remainder, so
they are upper bounds.  The lower constant is estimated empirically.
"""

from fractions import Fraction

from pqlorentz.bounds import bound_report, lower_constant_estimate
from pqlorentz.pqcore import PQParams
from pqlorentz.series import catalog

P = PQParams(2, 3)
rep = bound_report(catalog("monomial:2", 4), 4, P, 1, 2, rstar=2, m=2, iterates=3)
print(rep.to_json())

Pf = PQParams(1.1, 1.2)
for name in ("exp", "sin", "geometric:4"):
    est = lower_constant_estimate(catalog(name, 80, exact=False), 1.0, 16, Pf)
    print(name, est.C, est.argmin_n, est.n0)

# linear functions are fixed by the operator, so no lower estimate exists
try:
    lower_constant_estimate(catalog("polynomial:1,2", 4, exact=False), 1.0, 8, Pf)
except ValueError as exc:
    print("rejected:", exc)
