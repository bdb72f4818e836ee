"""Bound states of the Hulthen potential.

Closed-form spectrum, hypergeometric eigenfunctions and their norms, the
raising/lowering operators of the fixed-``s`` family, and independent
numerical oracles (quadrature, finite differences, ODE residuals and a
shooting eigensolver) that check them.
"""
__version__ = "0.1.0"

from ._kernels import BACKEND as KERNEL_BACKEND
from .errors import (
    BracketError,
    CapacityError,
    HulthenError,
    LowestWeightError,
    NoBoundStateError,
    NumericalFailure,
    ParameterDomainError,
)
from .grid import GridFunction, make_grid
from .hypergeom import HypParams, TerminatingSeries, build_terminating, eval_2f1
from .spectrum import PAPER, Coupling, Mode, SpectrumEntry, bound_state_count, energy, s_param
from .tolerances import DEFAULT as DEFAULT_TOLERANCES, Tolerances
from .wavefunction import FamilyState, eval_psi, make_state, normalize_quadrature, normalize_symbolic

__all__ = [
    "KERNEL_BACKEND", "BracketError", "CapacityError", "HulthenError", "LowestWeightError",
    "NoBoundStateError", "NumericalFailure", "ParameterDomainError", "GridFunction", "make_grid",
    "HypParams", "TerminatingSeries", "build_terminating", "eval_2f1", "PAPER", "Coupling", "Mode",
    "SpectrumEntry", "bound_state_count", "energy", "s_param", "DEFAULT_TOLERANCES", "Tolerances",
    "FamilyState", "eval_psi", "make_state", "normalize_quadrature", "normalize_symbolic",
]
