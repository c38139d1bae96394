"""
Derivatives and iterates
========================

Derivatives of ``L_n f`` approach those of ``f`` at the same rate on a
smaller circle.  Iterates ``L_n^(m)`` still converge when ``m * p**n/[n]``
goes to zero.
"""

from fractions import Fraction

from pqlorentz.harness import exact_order_audit, iterate_table, simultaneous_table
from pqlorentz.pqcore import PQParams
from pqlorentz.series import catalog

P = PQParams(Fraction(11, 10), Fraction(6, 5))
f = catalog("exp", 104)
ns = [5, 10, 15, 20, 30, 40]

for m in (1, 2):
    t = simultaneous_table(f, m, 1, Fraction(3, 2), Fraction(5, 2), ns, P)
    print(t.to_csv())
    print("audit passed:", exact_order_audit(t).passed)

schedule = [(n, n) for n in range(5, 61, 5)]
t = iterate_table(catalog("exp", 124), 1, 2, schedule, P)
print(t.to_csv())
print("decreasing from row", t.meta["decreasing_from"])
