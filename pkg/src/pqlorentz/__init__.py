"""Complex (p,q)-Lorentz polynomials with exact arithmetic and certified bounds."""

from .bounds import BoundReport, bound_report, hypothesis_flags, lower_constant_estimate, rate_unit
from .harness import (
    RateTable,
    convergence_table,
    exact_order_audit,
    iterate_table,
    simultaneous_table,
    voronovskaja_table,
)
from .lorentz import LorentzPolynomial, apply, iterate, multiplier_product, voronovskaja_term
from .norms import CircleGrid, sup_norm
from .pqcore import PQParams, pq_binomial, pq_factorial, pq_integer
from .series import PowerSeries, catalog, polynomial

__all__ = [
    "BoundReport",
    "CircleGrid",
    "LorentzPolynomial",
    "PQParams",
    "PowerSeries",
    "RateTable",
    "apply",
    "bound_report",
    "catalog",
    "convergence_table",
    "exact_order_audit",
    "hypothesis_flags",
    "iterate",
    "iterate_table",
    "lower_constant_estimate",
    "multiplier_product",
    "polynomial",
    "pq_binomial",
    "pq_factorial",
    "pq_integer",
    "rate_unit",
    "simultaneous_table",
    "sup_norm",
    "voronovskaja_table",
    "voronovskaja_term",
]
