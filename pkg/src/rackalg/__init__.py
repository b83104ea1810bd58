"""Exact-arithmetic constructions for Leibniz algebras, racks, and their
bialgebra envelopes.

The package builds rack bialgebras and Hopf dialgebras out of finite
dimensional Leibniz algebras and finite racks, computes the associated
deformation star products, and verifies every structural identity in exact
rational (or truncated power series) arithmetic.
"""

from rackalg.errors import (
    AxiomViolation,
    BudgetExceeded,
    DecompositionFailure,
    DegreeCapExceeded,
    GaugeEquivarianceViolation,
    IdealSandwichViolation,
    LeibnizViolation,
    RackalgError,
    SchemaError,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomViolation",
    "BudgetExceeded",
    "DecompositionFailure",
    "DegreeCapExceeded",
    "GaugeEquivarianceViolation",
    "IdealSandwichViolation",
    "LeibnizViolation",
    "RackalgError",
    "SchemaError",
    "__version__",
]
