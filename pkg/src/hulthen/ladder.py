"""Raising and lowering operators on the fixed-``s`` family.

Both operators are first order in ``d/dy`` with coefficients that depend on
the level ``n`` they act on:

    L+ = [y(1-y) d/dy + y - s(1-y) - Q+(y)] (2s+2n+1)/(2s+n+1)
    Q+ = (1-y)(2s+n+1)((n+1)/((1-y)(2s+2n+1)) - 1)

    L- = [-y(1-y) d/dy - y + s(1-y) + Q-(y)] (2s+2n-1)/(n-1)
    Q- = (1-y)(n-1)(1 - (2s+n-1)/((1-y)(2s+2n-1)))

with ``L+ psi_n = l+ psi_{n+1}``, ``l+ = (2s+n) N_n/N_{n+1}`` and
``L- psi_n = l- psi_{n-1}``, ``l- = n N_n/N_{n-1}``. ``L0 = n + s``.

The published raising operator adds ``Q+`` instead of subtracting it; that
version does not map ``psi_n`` onto ``psi_{n+1}`` and is available as
``form="printed"`` for comparison. The published commutator
``[L+, L-] psi_n = 2(n+s) psi_n`` also has the opposite sign of what the
operators give; ``[L-, L+] = 2 L0`` is the consistent ordering and is what
is implemented and checked.

Every function ``y^s P(y)`` with polynomial ``P`` is mapped to another
function of the same form, so operators are applied and composed exactly
on :class:`PowerPoly` objects and only sampled at the end. ``L- psi_1`` is
the zero function by convention (the printed ``L-`` divides by ``n - 1``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import CapacityError, LowestWeightError, ParameterDomainError
from .grid import GridFunction, make_grid, require_interior
from .hypergeom import eval_coeffs, family_derivative_decomposition
from .report import Check
from .tolerances import DEFAULT
from .wavefunction import FamilyState, family_norms, make_state, normalize_symbolic, state_meta


@dataclass(frozen=True)
class PowerPoly:
    """``y^s * P(y)``; ``coeffs`` are the coefficients of ``P``, lowest first."""

    s: float
    coeffs: np.ndarray

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        return y**self.s * eval_coeffs(self.coeffs, y)

    def derivative(self, y):
        """``d/dy`` evaluated at interior points: ``y^(s-1) (s P + y P')``."""
        y = np.asarray(y, dtype=float)
        inner = self.s * self.coeffs + _y_times(npoly.polyder(self.coeffs))
        return y ** (self.s - 1.0) * eval_coeffs(inner, y)

    def __sub__(self, other: "PowerPoly") -> "PowerPoly":
        return PowerPoly(self.s, npoly.polysub(self.coeffs, other.coeffs))

    def scaled(self, k: float) -> "PowerPoly":
        return PowerPoly(self.s, k * self.coeffs)

    @classmethod
    def zero(cls, s: float) -> "PowerPoly":
        return cls(s, np.zeros(1))


def _y_times(c: np.ndarray) -> np.ndarray:
    return np.concatenate(([0.0], c)) if c.size else np.zeros(1)


def _euler_part(f: PowerPoly) -> np.ndarray:
    """Polynomial part of ``y(1-y) d/dy (y^s P)``, i.e. ``(1-y)(sP + yP')``."""
    inner = f.s * f.coeffs + _trim(_y_times(npoly.polyder(f.coeffs)), f.coeffs.size)
    return npoly.polymul([1.0, -1.0], inner)


def _trim(c, size):
    out = np.zeros(max(size, c.size))
    out[: c.size] = c
    return out


def state_function(state: FamilyState) -> PowerPoly:
    F = state.poly.float_coeffs()
    return PowerPoly(float(state.s), state.norm * npoly.polymul([1.0, -1.0], F))


def raise_function(f: PowerPoly, n: int, form: str = "corrected") -> PowerPoly:
    """Apply ``L+`` with the coefficients of level ``n``."""
    s = f.s
    k = 2 * s + n + 1
    c1 = k * (n + 1) / (2 * s + 2 * n + 1)
    q_plus = np.array([c1 - k, k])            # Q+ = c1 - k (1 - y)
    mult = np.array([-s, 1.0 + s])            # y - s(1 - y)
    if form == "corrected":
        mult = npoly.polysub(mult, q_plus)
    elif form == "printed":
        mult = npoly.polyadd(mult, q_plus)
    else:
        raise ParameterDomainError(f"unknown operator form {form!r}")
    body = npoly.polyadd(_euler_part(f), npoly.polymul(mult, f.coeffs))
    return PowerPoly(s, body * ((2 * s + 2 * n + 1) / k))


def lower_function(f: PowerPoly, n: int) -> PowerPoly:
    """Apply ``L-`` with the coefficients of level ``n`` (zero for ``n = 1``)."""
    if n < 1:
        raise ParameterDomainError(f"n must be >= 1, got {n}")
    if n == 1:
        return PowerPoly.zero(f.s)
    s = f.s
    c2 = (n - 1) * (2 * s + n - 1) / (2 * s + 2 * n - 1)
    q_minus = np.array([(n - 1) - c2, -(n - 1.0)])   # (n-1)(1-y) - c2
    mult = npoly.polyadd(np.array([s, -1.0 - s]), q_minus)   # -y + s(1-y) + Q-
    body = npoly.polyadd(-_euler_part(f), npoly.polymul(mult, f.coeffs))
    return PowerPoly(s, body * ((2 * s + 2 * n - 1) / (n - 1)))


def _grid(grid, size=200):
    return make_grid(size, "uniform", interior=True) if grid is None else require_interior(grid)


def apply_raise(state: FamilyState, grid=None, form: str = "corrected") -> GridFunction:
    """``L+ psi_n`` sampled on an interior grid (analytic derivative)."""
    g = _grid(grid)
    out = raise_function(state_function(state), state.n, form)
    return GridFunction(g, out(g), {**state_meta(state), "operator": f"raise/{form}"})


def apply_lower(state: FamilyState, grid=None, strict: bool = False) -> GridFunction:
    """``L- psi_n`` sampled on an interior grid.

    For ``n = 1`` the result is the zero function, or :class:`LowestWeightError`
    when ``strict``.
    """
    g = _grid(grid)
    if state.n == 1 and strict:
        raise LowestWeightError("L- is singular on psi_1; no lower state in the family")
    out = lower_function(state_function(state), state.n)
    return GridFunction(g, out(g), {**state_meta(state), "operator": "lower"})


# --- eigen-factors ------------------------------------------------------------

@dataclass(frozen=True)
class LadderCoeffs:
    s: float
    n: int
    l_plus: float
    l_minus: float | None
    l_zero: float
    norms: Mapping[int, float]


def _need(norms, ks):
    missing = [k for k in ks if k not in norms]
    if missing:
        raise CapacityError(f"norms missing for n = {missing}")
    if any(not norms[k] > 0 for k in ks):
        raise ParameterDomainError("norms must be positive")


def l_plus(s, n: int, norms: Mapping[int, float]) -> float:
    _need(norms, (n, n + 1))
    return (2 * float(s) + n) * norms[n] / norms[n + 1]


def l_minus(s, n: int, norms: Mapping[int, float]) -> float:
    if n < 2:
        raise LowestWeightError("l- is undefined at the bottom of the family")
    _need(norms, (n - 1, n))
    return n * norms[n] / norms[n - 1]


def ladder_coeffs(s, n: int, norms: Mapping[int, float]) -> LadderCoeffs:
    need = [n - 1, n, n + 1] if n > 1 else [n, n + 1]
    _need(norms, need)
    return LadderCoeffs(
        s=float(s),
        n=n,
        l_plus=l_plus(s, n, norms),
        l_minus=l_minus(s, n, norms) if n > 1 else None,
        l_zero=n + float(s),
        norms={k: norms[k] for k in need},
    )


def _norms(s, ns, norms):
    if norms is None:
        return family_norms(s, ns)
    return norms


def _rel_max(diff, ref) -> float:
    return float(np.max(np.abs(diff)) / np.max(np.abs(ref)))


def raise_residual(s, n: int, grid=None, norms=None, form: str = "corrected") -> float:
    """``max |L+ psi_n - l+ psi_{n+1}| / max |l+ psi_{n+1}|`` on the grid."""
    g = _grid(grid)
    norms = _norms(s, [n, n + 1], norms)
    lhs = apply_raise(make_state(s, n, norms[n]), g, form).values
    target = l_plus(s, n, norms) * make_state(s, n + 1, norms[n + 1])(g)
    return _rel_max(lhs - target, target)


def lower_residual(s, n: int, grid=None, norms=None) -> float:
    if n < 2:
        raise LowestWeightError("the lowering relation needs n >= 2")
    g = _grid(grid)
    norms = _norms(s, [n - 1, n], norms)
    lhs = apply_lower(make_state(s, n, norms[n]), g).values
    target = l_minus(s, n, norms) * make_state(s, n - 1, norms[n - 1])(g)
    return _rel_max(lhs - target, target)


def derivative_reconstruction_residual(s, n: int, grid=None, norms=None) -> float:
    """Analytic ``d psi_n/dy`` against its two-term split into ``psi_n`` and ``psi_{n+1}``."""
    g = _grid(grid)
    norms = _norms(s, [n, n + 1], norms)
    psi_n = make_state(s, n, norms[n])
    psi_next = make_state(s, n + 1, norms[n + 1])
    exact = state_function(psi_n).derivative(g)
    coef_same, coef_next = family_derivative_decomposition(n, s, g)
    s = float(s)
    rebuilt = (s / g - 1.0 / (1.0 - g) + coef_same) * psi_n(g) + coef_next * (norms[n] / norms[n + 1]) * psi_next(g)
    return _rel_max(exact - rebuilt, exact)


# --- commutators --------------------------------------------------------------

def commutator_function(state: FamilyState) -> PowerPoly:
    """``[L-, L+] psi_n`` by exact composition; operator coefficients follow the level."""
    f = state_function(state)
    n = state.n
    up_down = lower_function(raise_function(f, n), n + 1)
    down_up = raise_function(lower_function(f, n), n - 1) if n > 1 else PowerPoly.zero(f.s)
    return up_down - down_up


def commutator_eigenvalue(s, n: int, grid=None, state: FamilyState | None = None) -> float:
    """Least-squares scalar ``lambda`` with ``[L-, L+] psi_n = lambda psi_n`` on the grid."""
    if n < 2:
        raise ParameterDomainError(
            "n >= 2 required; with L- psi_1 = 0 the bottom state gives 2(2s+1), not 2(1+s)"
        )
    g = _grid(grid)
    state = state or make_state(s, n)
    c = commutator_function(state)(g)
    psi = state(g)
    return float(np.dot(c, psi) / np.dot(psi, psi))


def commutator_grid_residual(s, n: int, grid=None) -> float:
    g = _grid(grid)
    state = make_state(s, n)
    target = 2 * (n + float(s)) * state(g)
    return _rel_max(commutator_function(state)(g) - target, target)


def scalar_commutator(s, n: int, norms: Mapping[int, float]) -> float:
    """``l+(n) l-(n+1) - l-(n) l+(n-1)``; the norms cancel and leave ``2(n+s)``."""
    if n < 2:
        raise ParameterDomainError("n >= 2 required")
    return l_plus(s, n, norms) * l_minus(s, n + 1, norms) - l_minus(s, n, norms) * l_plus(s, n - 1, norms)


def _exact_sqrt(q: Fraction) -> Fraction:
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num != q.numerator or den * den != q.denominator:
        raise ArithmeticError(f"{q} is not a rational square")
    return Fraction(num, den)


def exact_commutator(s: Fraction, n: int) -> Fraction:
    """Scalar commutator in exact arithmetic from the symbolic squared norms."""
    if n < 2:
        raise ParameterDomainError("n >= 2 required")
    s = Fraction(s)
    sq = {k: 1 / normalize_symbolic(k).inv_norm_sq_at(s) for k in (n - 1, n, n + 1)}
    up = (2 * s + n) * (n + 1) * _exact_sqrt((sq[n] / sq[n + 1]) * (sq[n + 1] / sq[n]))
    down = n * (2 * s + n - 1) * _exact_sqrt((sq[n] / sq[n - 1]) * (sq[n - 1] / sq[n]))
    return up - down


def su2_relations_check(s, ns: Iterable[int], norms: Mapping[int, float] | None = None,
                        tol: float = DEFAULT.su2_scalar) -> list[Check]:
    """Scalar SU(2) relations per level.

    ``[L-, L+] = 2 L0``, ``[L0, L+] = L+`` and ``[L0, L-] = -L-`` acting on
    ``psi_n``, each reduced to its eigen-factor identity. ``[L0, L-]`` is
    skipped at ``n = 1``.
    """
    ns = list(ns)
    need = {k for n in ns for k in (n - 1, n, n + 1) if k >= 1}
    norms = _norms(s, need, norms)
    s = float(s)
    out = []
    for n in ns:
        lc = ladder_coeffs(s, n, norms)
        l0_up, l0, l0_down = n + 1 + s, n + s, n - 1 + s
        out.append(Check("su2", f"[L0,L+] n={n} s={s:g}",
                         abs((l0_up - l0) * lc.l_plus - lc.l_plus) / abs(lc.l_plus), tol))
        if n >= 2:
            out.append(Check("su2", f"[L0,L-] n={n} s={s:g}",
                             abs((l0_down - l0) * lc.l_minus + lc.l_minus) / abs(lc.l_minus), tol))
            comm = scalar_commutator(s, n, norms)
            out.append(Check("su2", f"[L-,L+]=2L0 n={n} s={s:g}", abs(comm - 2 * l0) / (2 * l0), tol))
    return out
