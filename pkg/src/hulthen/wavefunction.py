"""Family functions psi_n(y) = N_n y^s (1 - y) F_n(y) and their norms.

``F_n(y) = 2F1(2s+1+n, 1-n, 2s+1; y)`` is a polynomial of degree ``n - 1``.
At fixed ``s`` the states ``n = 1, 2, ...`` form the family the ladder
operators act on; a physical level picks ``s`` from :mod:`hulthen.spectrum`.

Norms use the plain measure ``dy`` on ``[0, 1]``:

    1 / N_n^2 = int_0^1 y^{2s} (1 - y)^2 F_n(y)^2 dy

computed two ways: by quadrature (:func:`normalize_quadrature`) and exactly
as a rational function of ``s`` (:func:`normalize_symbolic`), using
``int_0^1 y^{2s+j} (1-y)^2 dy = 2 / ((2s+j+1)(2s+j+2)(2s+j+3))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import CapacityError, ParameterDomainError
from .grid import GridFunction, make_grid
from .hypergeom import TerminatingSeries, build_terminating, eval_2f1, family_series
from .oracle import quadrature
from .ratfunc import Polynomial, RationalFunction, squarefree_factorization
from .tolerances import DEFAULT

MAX_SYMBOLIC_N = 12


@dataclass(frozen=True)
class FamilyState:
    s: float | Fraction
    n: int
    poly: TerminatingSeries
    norm: float

    def __call__(self, y):
        return eval_psi(self, y)


def _check_s(s, allow_zero=False):
    if not (s >= 0 if allow_zero else s > 0):
        raise ParameterDomainError(f"s must be {'>= 0' if allow_zero else 'positive'}, got {s}")


def make_state(s, n: int, norm: float | None = None, method: str = "quadrature") -> FamilyState:
    """Build ``psi_n`` at fixed ``s``; the norm is computed unless given."""
    _check_s(s)
    poly = family_series(s, n)
    if norm is None:
        if method == "quadrature":
            norm = normalize_quadrature(s, n)
        elif method == "symbolic":
            norm = normalize_symbolic(n).value(s)
        else:
            raise ParameterDomainError(f"unknown normalization method {method!r}")
    return FamilyState(s=s, n=n, poly=poly, norm=float(norm))


def eval_psi(state: FamilyState, y):
    yv = np.asarray(y, dtype=float)
    if np.any((yv < 0.0) | (yv > 1.0)):
        raise ParameterDomainError("psi is defined for y in [0, 1]")
    out = state.norm * yv ** float(state.s) * (1.0 - yv) * eval_2f1(state.poly, yv)
    return float(out) if out.ndim == 0 else out


def eval_radial(state: FamilyState, r, a: float):
    """``psi`` as a function of the radius, through ``y = exp(-r/a)``."""
    if not a > 0:
        raise ParameterDomainError("range parameter a must be positive")
    rv = np.asarray(r, dtype=float)
    if np.any(rv < 0):
        raise ParameterDomainError("r must be nonnegative")
    return eval_psi(state, np.exp(-rv / a))


def sample(state: FamilyState, grid=None, size: int = 201, kind: str = "uniform") -> GridFunction:
    g = make_grid(size, kind) if grid is None else np.asarray(grid, dtype=float)
    return GridFunction(g, eval_psi(state, g), state_meta(state))


def state_meta(state: FamilyState) -> dict:
    return {"s": format(float(state.s), ".17g"), "n": state.n, "N_n": format(state.norm, ".17g")}


# --- normalization --------------------------------------------------------

def normalize_quadrature(s, n: int, tol: float = DEFAULT.quadrature) -> float:
    _check_s(s, allow_zero=True)
    coeffs = family_series(float(s), n).float_coeffs()
    two_s = 2.0 * float(s)

    def integrand(y):
        f = np.polynomial.polynomial.polyval(y, coeffs)
        return y**two_s * (1.0 - y) ** 2 * f * f

    value, _ = quadrature(integrand, (0.0, 1.0), tol=tol, left_exponent=two_s)
    return 1.0 / math.sqrt(value)


@dataclass(frozen=True)
class SymbolicNorm:
    """Exact ``1/N_n^2`` and the split ``N_n = prefactor(s) * sqrt(radicand(s))``.

    ``radicand`` is an integer polynomial with positive leading coefficient
    and no repeated factors apart from a possible integer content.
    """

    n: int
    inv_norm_sq: RationalFunction
    prefactor: RationalFunction
    radicand: Polynomial

    def inv_norm_sq_at(self, s):
        return self.inv_norm_sq(Fraction(s) if isinstance(s, int) else s)

    def value(self, s) -> float:
        return 1.0 / math.sqrt(float(self.inv_norm_sq_at(s)))

    def __str__(self):
        return f"({self.prefactor}) * sqrt({self.radicand})"


def _square_split(k: Fraction) -> tuple[Fraction, int]:
    """``k = r^2 t`` with ``t`` a positive integer free of small square factors."""
    pq = k.numerator * k.denominator
    a, t = 1, pq
    p = 2
    while p * p <= t and p < 10**6:
        while t % (p * p) == 0:
            t //= p * p
            a *= p
        p += 1 if p == 2 else 2
    return Fraction(a, k.denominator), t


def _sqrt_split(ratfun: RationalFunction) -> tuple[RationalFunction, Polynomial]:
    num, den = ratfun.num, ratfun.den
    k = num.lead / den.lead
    halves = {}
    for side, poly in (("num", num), ("den", den)):
        square, odd = Polynomial.constant(1), Polynomial.constant(1)
        for factor, mult in squarefree_factorization(poly):
            square = square * factor ** (mult // 2)
            if mult % 2:
                odd = odd * factor
        halves[side] = (square, odd)
    (sq_n, odd_n), (sq_d, odd_d) = halves["num"], halves["den"]
    radicand = odd_n * odd_d
    prefactor = RationalFunction(sq_n, sq_d * odd_d)
    primitive = radicand.primitive()
    content = Fraction(radicand.lead) / primitive.lead
    r, t = _square_split(k * content)
    return prefactor * r, primitive.scale(t)


@lru_cache(maxsize=None)
def normalize_symbolic(n: int, max_n: int = MAX_SYMBOLIC_N) -> SymbolicNorm:
    """Exact ``1/N_n^2`` as a reduced rational function of ``s``."""
    if n < 1:
        raise ParameterDomainError(f"n must be >= 1, got {n}")
    if n > max_n:
        raise CapacityError(f"n = {n} exceeds the symbolic limit {max_n}")
    s = RationalFunction.symbol()
    coeffs = build_terminating(2 * s + 1 + n, n - 1, 2 * s + 1).coeffs
    total = RationalFunction(0)
    for j in range(2 * len(coeffs) - 1):
        d_j = RationalFunction(0)
        for i in range(max(0, j - len(coeffs) + 1), min(j, len(coeffs) - 1) + 1):
            d_j = d_j + coeffs[i] * coeffs[j - i]
        total = total + d_j * 2 / ((2 * s + j + 1) * (2 * s + j + 2) * (2 * s + j + 3))
    prefactor, radicand = _sqrt_split(1 / total)
    return SymbolicNorm(n=n, inv_norm_sq=total, prefactor=prefactor, radicand=radicand)


def family_norms(s, ns: Iterable[int], method: str = "quadrature") -> dict[int, float]:
    ns = sorted(set(ns))
    if method == "quadrature":
        return {n: normalize_quadrature(s, n) for n in ns}
    if method == "symbolic":
        return {n: normalize_symbolic(n).value(s) for n in ns}
    raise ParameterDomainError(f"unknown normalization method {method!r}")


# --- published closed forms for n = 1..4 ------------------------------------

def _p(*coeffs) -> Polynomial:
    return Polynomial([Fraction(c) for c in coeffs])


#: ``n -> (prefactor, radicand)`` with ``N_n = prefactor * sqrt(radicand)``.
PUBLISHED_NORMS: dict[int, tuple[Polynomial, Polynomial]] = {
    1: (_p(1), _p(3, 11, 12, 4)),
    2: (_p(Fraction(1, 2), 1), _p(30, 47, 24, 4)),
    3: (_p(Fraction(1, 3), 1, Fraction(2, 3)), _p(105, 107, 36, 4)),
    4: (_p(Fraction(3, 12), Fraction(11, 12), 1, Fraction(4, 12)), _p(252, 191, 48, 4)),
}


def published_norm(n: int, s) -> float | None:
    """Value of the published closed form, or ``None`` beyond the tabulated rows."""
    if n not in PUBLISHED_NORMS:
        return None
    pre, rad = PUBLISHED_NORMS[n]
    x = Fraction(s) if isinstance(s, int) else s
    return float(pre(x)) * math.sqrt(float(rad(x)))


def published_identity(n: int) -> RationalFunction:
    """``(1/N_n^2) * prefactor^2 * radicand``; exactly 1 when the forms agree."""
    pre, rad = PUBLISHED_NORMS[n]
    return normalize_symbolic(n).inv_norm_sq * (pre * pre) * rad
