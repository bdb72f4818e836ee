"""Independent numerical checks for the closed forms.

Nothing here reuses the hypergeometric algebra: integrals are done by
Gauss-Legendre quadrature, derivatives by five-point stencils, and
eigenvalues by integrating the radial equation

    psi''(x) + (beta e^{-x} / (1 - e^{-x}) + eps) psi(x) = 0,   psi(0) = 0

outward with RK4 and counting nodes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable

import numpy as np

from . import _kernels
from .errors import BracketError, NumericalFailure, ParameterDomainError
from .grid import GridFunction, require_interior
from .hypergeom import eval_coeffs


# --- quadrature -----------------------------------------------------------

@lru_cache(maxsize=16)
def _gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _gl_sum(f, a, b, n):
    """Gauss-Legendre estimates of ``int f`` and ``int |f|``."""
    x, w = _gauss_legendre(n)
    half = 0.5 * (b - a)
    v = f(a + half * (x + 1.0))
    return half * np.dot(w, v), half * np.dot(w, np.abs(v))


def quadrature(
    f: Callable[[np.ndarray], np.ndarray],
    interval: tuple[float, float] = (0.0, 1.0),
    tol: float = 1e-12,
    left_exponent: float | None = None,
    min_nodes: int = 64,
    max_nodes: int = 8192,
) -> tuple[float, float]:
    """Integrate a vectorized ``f`` over ``interval``.

    Gauss-Legendre with the node count doubled from ``min_nodes`` until two
    successive estimates agree to ``tol`` relative to ``int |f|``. If ``f`` behaves like
    ``(y - a)^left_exponent`` at the left end with a non-integer exponent
    (> -1), the substitution ``y = a + (b - a) t^k`` is applied first, with
    ``k`` chosen so the transformed endpoint power is at least 5.

    Returns ``(value, error_estimate)``; raises :class:`NumericalFailure`
    carrying the achieved estimate if ``max_nodes`` is reached first.
    """
    a, b = map(float, interval)
    if not b > a:
        raise ParameterDomainError("interval must have b > a")
    g = f
    lo, hi = a, b
    if left_exponent is not None and left_exponent != math.floor(left_exponent):
        if left_exponent <= -1:
            raise ParameterDomainError("endpoint exponent must exceed -1 for convergence")
        k = max(1, math.ceil(6.0 / (left_exponent + 1.0)))
        width = b - a

        def g(t, _f=f, _k=k):
            tk = t**_k
            with np.errstate(divide="ignore", invalid="ignore"):
                v = _f(a + width * tk) * (width * _k * t ** (_k - 1))
            # t^k underflows for large k; the transformed integrand vanishes there
            return np.where(tk > 0.0, v, 0.0)

        lo, hi = 0.0, 1.0
    n = min_nodes
    prev, _ = _gl_sum(g, lo, hi, n)
    err = math.inf
    while n < max_nodes:
        n *= 2
        cur, mag = _gl_sum(g, lo, hi, n)
        err = abs(cur - prev)
        # relative to int |f| so that cancelling integrands can converge
        if err <= tol * max(abs(cur), mag, 1e-300):
            return float(cur), float(err)
        prev = cur
    raise NumericalFailure(
        f"quadrature did not reach tol={tol} with {max_nodes} nodes (estimate {err:.3g})",
        estimate=err,
    )


# --- finite differences ---------------------------------------------------

def fd_derivative(g: GridFunction, order: int = 1) -> GridFunction:
    """Fourth-order central differences on a uniform grid.

    The result lives on ``g.grid[2:-2]``: the five-point stencil needs two
    neighbours on each side.
    """
    y = g.grid
    v = g.values
    if y.size < 5:
        raise ParameterDomainError("five-point stencil needs at least 5 grid points")
    h = (y[-1] - y[0]) / (y.size - 1)
    if not np.allclose(np.diff(y), h, rtol=1e-9, atol=0.0):
        raise ParameterDomainError("fd_derivative needs a uniform grid")
    if order == 1:
        d = (-v[4:] + 8.0 * v[3:-1] - 8.0 * v[1:-3] + v[:-4]) / (12.0 * h)
    elif order == 2:
        d = (-v[4:] + 16.0 * v[3:-1] - 30.0 * v[2:-2] + 16.0 * v[1:-3] - v[:-4]) / (12.0 * h * h)
    else:
        raise ParameterDomainError("order must be 1 or 2")
    return GridFunction(y[2:-2], d, dict(g.meta))


# --- ODE residual ---------------------------------------------------------

def ode_residual(state, beta, grid, epsilon=None) -> float:
    """Max relative residual of the closed form in the ``y``-form radial equation.

    Evaluates ``y^2 psi'' + y psi' + (eps + beta y / (1-y)) psi`` with exact
    polynomial calculus on ``psi = N y^s P(y)``, ``P = (1 - y) F(y)``, and
    divides the largest residual by ``max |psi|`` on the grid. ``epsilon``
    defaults to ``-s^2``.
    """
    y = require_interior(grid)
    s = float(state.s)
    eps = -s * s if epsilon is None else float(epsilon)
    F = state.poly.float_coeffs()
    P = np.append(F, 0.0) - np.concatenate(([0.0], F))
    dP = P[1:] * np.arange(1, P.size)
    d2P = dP[1:] * np.arange(1, dP.size)
    ys = float(state.norm) * y**s
    bracket = (
        (s * s + eps) * eval_coeffs(P, y)
        + (2 * s + 1) * y * (eval_coeffs(dP, y) if dP.size else 0.0)
        + y * y * (eval_coeffs(d2P, y) if d2P.size else 0.0)
        + float(beta) * y * eval_coeffs(F, y)
    )
    residual = ys * bracket
    psi = ys * eval_coeffs(P, y)
    return float(np.max(np.abs(residual)) / np.max(np.abs(psi)))


# --- shooting eigensolver -------------------------------------------------

@dataclass(frozen=True)
class ShootingConfig:
    x_max: float = 40.0
    step: float = 1e-3
    energy_bracket: tuple[float, float] | None = None
    node_target: int | None = None
    tol: float = 1e-10          # relative width of the final bisection bracket
    x_min: float = 1e-8
    max_doublings: int = 4
    tail_ratio: float = 1e-12   # neglected potential at x_max relative to |eps|
    top: float = -1e-14         # default upper end of the search window

    def __post_init__(self):
        if not self.x_max > self.x_min > 0:
            raise ParameterDomainError("need 0 < x_min < x_max")
        if not self.step > 0:
            raise ParameterDomainError("step must be positive")
        if self.energy_bracket is not None:
            lo, hi = self.energy_bracket
            if not lo < hi < 0:
                raise ParameterDomainError("bound-state bracket needs eps_lo < eps_hi < 0")


@dataclass(frozen=True)
class ShootingResult:
    n: int            # level label, nodes + 1
    epsilon: float
    nodes: int
    x_max: float


def count_below(beta: float, eps: float, config: ShootingConfig = ShootingConfig(), kernel=None) -> int:
    """Number of bound levels strictly below ``eps`` (Sturm node count).

    Beyond ``x_max`` the potential is dropped and the solution continued as
    ``A e^{k(x-X)} + B e^{-k(x-X)}`` with ``k = sqrt(-eps)``; a zero in that
    tail is counted as well.
    """
    kernel = kernel or _kernels.rk4_outward
    nodes, p, d = kernel(float(beta), float(eps), config.x_min, config.x_max, config.step)
    kappa = math.sqrt(-eps)
    A = 0.5 * (p + d / kappa)
    B = 0.5 * (p - d / kappa)
    if A != 0.0 and -B / A > 1.0:
        nodes += 1
    return nodes


def _split(lo: float, hi: float) -> float:
    if lo / hi > 4.0:
        return -math.sqrt(lo * hi)
    return 0.5 * (lo + hi)


def _bisect_level(beta, k, lo, hi, config, kernel) -> float:
    for _ in range(400):
        if hi - lo <= config.tol * abs(hi):
            return 0.5 * (lo + hi)
        mid = _split(lo, hi)
        if not lo < mid < hi:
            return 0.5 * (lo + hi)
        if count_below(beta, mid, config, kernel) > k:
            hi = mid
        else:
            lo = mid
    raise NumericalFailure(f"bisection for level {k} did not converge", estimate=hi - lo)


def _scan(beta, lo, hi, config, kernel, points=12):
    eps = -np.geomspace(-lo, -hi, points)
    return [(float(e), count_below(beta, float(e), config, kernel)) for e in eps]


def shoot_eigenvalues(beta, config: ShootingConfig = ShootingConfig(), kernel=None) -> list[ShootingResult]:
    """Bound-state energies of the well of strength ``beta`` by shooting.

    Returns every level in the search window (or only ``config.node_target``),
    ordered by node count. ``beta <= 1`` has no levels and gives an empty list
    unless a target is requested.
    """
    beta = float(beta)
    if not beta > 0:
        raise ParameterDomainError("beta must be positive")
    kernel = kernel or _kernels.rk4_outward
    if config.energy_bracket is not None:
        lo, hi = map(float, config.energy_bracket)
    else:
        hi = config.top
        lo = -max(1.0, beta * beta)
        for _ in range(60):
            if count_below(beta, lo, config, kernel) == 0:
                break
            lo *= 4.0
        else:
            raise BracketError("could not find an energy below the ground state")
    first = count_below(beta, lo, config, kernel)
    last = count_below(beta, hi, config, kernel)
    targets = range(first, last)
    if config.node_target is not None:
        if config.node_target not in targets:
            raise BracketError(
                f"bracket ({lo:g}, {hi:g}) holds levels {list(targets)}, not node count "
                f"{config.node_target}; scan (eps, levels below): {_scan(beta, lo, hi, config, kernel)}"
            )
        targets = [config.node_target]

    out = []
    for k in targets:
        cfg = config
        for _ in range(config.max_doublings + 1):
            eps = _bisect_level(beta, k, lo, hi, cfg, kernel)
            if beta / math.expm1(cfg.x_max) <= cfg.tail_ratio * abs(eps):
                break
            cfg = replace(cfg, x_max=2.0 * cfg.x_max)
        else:
            raise NumericalFailure(
                f"level {k}: potential tail still significant at x_max = {cfg.x_max}",
                estimate=beta / math.expm1(cfg.x_max),
            )
        out.append(ShootingResult(n=k + 1, epsilon=eps, nodes=k, x_max=cfg.x_max))
    return out


def level_nodes(beta, eps, config: ShootingConfig = ShootingConfig(), kernel=None) -> int:
    """Interior nodes of the outward solution on ``(0, x_max)``."""
    kernel = kernel or _kernels.rk4_outward
    return kernel(float(beta), float(eps), config.x_min, config.x_max, config.step)[0]
