"""Exception types shared across the package.

Every verification failure carries a concrete witness (basis labels and the
two evaluated sides) so that reports can surface it without re-running the
computation.
"""

from __future__ import annotations

from typing import Any


class RackalgError(Exception):
    """Base class for all package-specific errors."""


class SchemaError(RackalgError):
    """Malformed input document (JSON shape, indices out of range, bad rationals)."""


class LeibnizViolation(RackalgError):
    """The Leibniz identity fails on a basis triple.

    Indices are 1-based, matching the JSON interface and reports.
    """

    def __init__(self, j: int, k: int, l: int, lhs: Any, rhs: Any) -> None:
        self.j, self.k, self.l = j, k, l
        self.lhs, self.rhs = lhs, rhs
        super().__init__(
            f"Leibniz identity fails at (j,k,l)=({j},{k},{l}): "
            f"[e{j},[e{k},e{l}]] = {lhs} but [[e{j},e{k}],e{l}] + [e{k},[e{j},e{l}]] = {rhs}"
        )


class IdealSandwichViolation(RackalgError):
    """A quotient was requested for an ideal z not satisfying Q(h) <= z <= z(h)."""


class AxiomViolation(RackalgError):
    """A rack-bialgebra (or coalgebra/Hopf) axiom fails on concrete basis elements."""

    def __init__(self, axiom: str, witness: Any, lhs: Any, rhs: Any) -> None:
        self.axiom = axiom
        self.witness = witness
        self.lhs, self.rhs = lhs, rhs
        super().__init__(f"axiom '{axiom}' fails at {witness}: lhs={lhs} rhs={rhs}")


class GaugeEquivarianceViolation(RackalgError):
    """The gauge map is not a coalgebra morphism or not product-equivariant."""


class DegreeCapExceeded(RackalgError):
    """An enveloping-algebra operation would leave the declared filtration cap.

    Raised instead of silently truncating; callers choose a larger cap.
    """

    def __init__(self, needed: int, cap: int, context: str = "") -> None:
        self.needed = needed
        self.cap = cap
        msg = f"operation needs filtration degree {needed} but the cap is {cap}"
        if context:
            msg += f" ({context})"
        super().__init__(msg)


class DecompositionFailure(RackalgError):
    """A Suschkewitsch-type decomposition identity fails; the input is not as assumed."""

    def __init__(self, identity: str, witness: Any, lhs: Any, rhs: Any) -> None:
        self.identity = identity
        self.witness = witness
        self.lhs, self.rhs = lhs, rhs
        super().__init__(f"decomposition identity '{identity}' fails at {witness}")


class BudgetExceeded(RackalgError):
    """A computation would exceed the configured size budget."""

    def __init__(self, what: str, needed: int, budget: int) -> None:
        self.what = what
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what}: needs {needed}, budget is {budget}")
