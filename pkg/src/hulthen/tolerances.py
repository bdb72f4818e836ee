"""Library-wide tolerance record.

Every check in the package reads its threshold from a :class:`Tolerances`
instance so that the CLI can override them in one place.
"""
from __future__ import annotations

from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    identity: float = 1e-12          # contiguous relations, relative to round-off scale
    decomposition: float = 1e-11     # derivative split of the family polynomial
    quadrature: float = 1e-12        # successive Gauss-Legendre refinements
    normalization: float = 1e-10     # quadrature vs exact norm, relative
    ladder: float = 1e-9             # raising/lowering action, relative
    reconstruction: float = 1e-10    # analytic derivative vs two-term recombination
    commutator_grid: float = 1e-8
    su2_scalar: float = 1e-10
    ode: float = 1e-10
    expected_failure_floor: float = 0.1
    shooting: float = 1e-6           # shooting vs closed form, relative
    shooting_floor: float = 1e-6     # |eps| below which no level is claimed

    def override(self, **changes: float) -> "Tolerances":
        known = {f.name for f in fields(self)}
        unknown = set(changes) - known
        if unknown:
            raise KeyError(f"unknown tolerance(s): {', '.join(sorted(unknown))}")
        return replace(self, **{k: float(v) for k, v in changes.items()})

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


DEFAULT = Tolerances()
