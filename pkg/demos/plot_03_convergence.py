"""
Convergence rate of L_n f to f
==============================

With ``q > p > 1`` the error on the circle ``|z| = r`` behaves like
``p**n / [n]``.  The normalized column divides that rate out and should
stay within a narrow band.
"""

from fractions import Fraction

from pqlorentz.harness import convergence_table, exact_order_audit
from pqlorentz.pqcore import PQParams
from pqlorentz.series import catalog

P = PQParams(Fraction(11, 10), Fraction(6, 5))
f = catalog("exp", 104)

table = convergence_table(f, 1, 2, [5, 10, 15, 20, 30, 40], P)
print(table.to_csv())
print(table.meta["flags"])

audit = exact_order_audit(table)
print("lo", float(audit.lo), "hi", float(audit.hi), "passed", audit.passed)

# for z^2 the normalized error equals 1/p in every row
sq = convergence_table(catalog("monomial:2", 4), 1, 2, range(2, 12), P)
print(set(sq.column("normalized")))
