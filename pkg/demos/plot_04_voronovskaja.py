"""
First-order correction
======================

Adding ``S_n f / [n]`` to ``L_n f - f`` removes most of the error.  The
residual is compared with ``p**(2n)/[n]**2`` and the constant ``Q``.
"""

from fractions import Fraction

from pqlorentz.harness import voronovskaja_table
from pqlorentz.lorentz import e_direct, recurrence_report, voronovskaja_term
from pqlorentz.pqcore import PQParams, pq_integer
from pqlorentz.series import catalog

P = PQParams(Fraction(11, 10), Fraction(6, 5))
f = catalog("exp", 104)

table = voronovskaja_table(f, 1, 2, [5, 10, 15, 20, 30, 40], P)
print(table.to_csv())
print("Q =", float(table.meta["Q"]))

# S depends on n through a factor p^(n-k+1)
print(voronovskaja_term(catalog("monomial:3", 5), 3, 5, PQParams(2, 3)).coeffs)

# the per-monomial residual eps_{n,k}: zero for k = 2, matches its recurrence,
# and can be negative
P23 = PQParams(2, 3)
print(e_direct(3, 3, P23), e_direct(5, 4, P23))
print(all(check.exact_match for check in recurrence_report(12, P23)))

# for p > 1 the k = 3 residual keeps a first-order piece p^(n-2)(1-p)/[n]
n = 10
print(e_direct(n, 3, P23) - 2 ** (n - 2) * (1 - 2) / pq_integer(n, P23))
