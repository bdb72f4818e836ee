"""Terminating Gauss hypergeometric polynomials and their contiguous relations.

The bound-state family only ever needs ``2F1(a, -m, c; y)`` with a
nonnegative integer ``m``, which is a polynomial of degree ``m``. Series are
built with the Pochhammer ratio

    c_{k+1} / c_k = (a + k)(k - m) / ((c + k)(k + 1)),   c_0 = 1

and evaluated by Horner's rule. The coefficient type follows the inputs:
``float`` parameters give floats, ``int``/``Fraction`` parameters give exact
``Fraction`` coefficients, and :class:`~hulthen.ratfunc.RationalFunction`
parameters give coefficients that are rational functions of ``s``.

The contiguous-relation residuals return ``(lhs - rhs) / scale`` where
``scale`` is the round-off scale of the identity: the same combination
evaluated with every coefficient and term replaced by its absolute value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Any

import numpy as np

from .errors import ParameterDomainError
from .ratfunc import RationalFunction

#: ``|y|`` beyond which a non-terminating neighbour series is not summed.
SERIES_RADIUS = 0.95
_TAIL_TOL = 1e-15
_MAX_TERMS = 200_000


def _is_zero(x) -> bool:
    if isinstance(x, RationalFunction):
        return x.num.is_zero()
    return x == 0


def _is_exact(x) -> bool:
    return isinstance(x, (int, Rational, RationalFunction)) and not isinstance(x, bool)


def _to_float(x) -> float:
    if isinstance(x, RationalFunction):
        raise TypeError("cannot evaluate a symbolic coefficient numerically; substitute s first")
    return float(x)


@dataclass(frozen=True)
class HypParams:
    """Parameters of ``2F1(a, b, c; y)`` with ``b = -m``."""

    a: Any
    m: int
    c: Any

    def __post_init__(self):
        if isinstance(self.m, bool) or not isinstance(self.m, (int, np.integer)) or self.m < 0:
            raise ParameterDomainError(f"m must be a nonnegative integer, got {self.m!r}")
        object.__setattr__(self, "m", int(self.m))

    @property
    def b(self) -> int:
        return -self.m


@dataclass(frozen=True)
class TerminatingSeries:
    """Coefficients ``c_0..c_m`` of a terminating ``2F1`` (``c_0 = 1``)."""

    coeffs: tuple
    params: HypParams

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int):
        """``c_k``; zero beyond the degree (the series has terminated)."""
        if k < 0:
            raise IndexError(k)
        return self.coeffs[k] if k < len(self.coeffs) else 0 * self.coeffs[0]

    def float_coeffs(self) -> np.ndarray:
        return np.array([_to_float(c) for c in self.coeffs], dtype=float)

    def derivative_coeffs(self) -> tuple:
        return tuple(k * c for k, c in enumerate(self.coeffs) if k)

    def __call__(self, y):
        return eval_2f1(self, y)


def build_terminating(a, m: int, c) -> TerminatingSeries:
    params = HypParams(a, m, c)
    if _is_exact(a) and not isinstance(a, RationalFunction):
        a = Fraction(a)
    if _is_exact(c) and not isinstance(c, RationalFunction):
        c = Fraction(c)
    exact = _is_exact(a) and _is_exact(c)
    one = Fraction(1) if exact else 1.0
    if isinstance(a, RationalFunction) or isinstance(c, RationalFunction):
        one = RationalFunction(1)
    coeffs = [one]
    term = one
    for k in range(m):
        denom = (c + k) * (k + 1)
        if _is_zero(c + k):
            raise ParameterDomainError(
                f"c = {c} makes the denominator (c + k) vanish at term index k = {k}"
            )
        term = term * (a + k) * (k - m) / denom
        coeffs.append(term)
    return TerminatingSeries(tuple(coeffs), params)


def eval_coeffs(coeffs, y):
    """Horner evaluation of ``sum c_k y^k`` for scalar or array ``y``."""
    if isinstance(y, (int, Fraction)) and all(isinstance(c, (int, Fraction)) for c in coeffs):
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * y + c
        return acc
    y = np.asarray(y, dtype=float) if not np.isscalar(y) else float(y)
    acc = 0.0 * y
    for c in reversed(coeffs):
        acc = acc * y + _to_float(c)
    return acc


def eval_2f1(series: TerminatingSeries, y):
    return eval_coeffs(series.coeffs, y)


def _eval_abs(series: TerminatingSeries, y):
    return eval_coeffs([abs(_to_float(c)) for c in series.coeffs], np.abs(y))


def _nonpositive_int(x) -> int | None:
    """Return ``m`` when ``x == -m`` for an integer ``m >= 0``."""
    if isinstance(x, RationalFunction):
        return None
    xf = float(x)
    if xf <= 0 and xf == math.floor(xf):
        return int(-xf)
    return None


def _series_sum(a: float, b: float, c: float, y: float) -> tuple[float, float]:
    """Sum a non-terminating ``2F1`` for ``|y| <= SERIES_RADIUS``.

    Stops once the tail is provably below ``_TAIL_TOL`` relative to the
    absolute sum: when the term-ratio factor ``f_k`` is monotone for large
    ``k`` every later ratio is bounded by ``rho = |y| max(f_k, 1)``.
    Returns ``(value, sum of |terms|)``.
    """
    if abs(y) > SERIES_RADIUS:
        raise ParameterDomainError(
            f"non-terminating series requested at |y| = {abs(y)} > {SERIES_RADIUS}"
        )
    term = 1.0
    total = 1.0
    total_abs = 1.0
    for k in range(_MAX_TERMS):
        if c + k == 0:
            raise ParameterDomainError(f"c = {c} makes (c + k) vanish at term index k = {k}")
        factor = (a + k) * (b + k) / ((c + k) * (k + 1))
        term *= factor * y
        total += term
        total_abs += abs(term)
        if term == 0.0:
            break
        rho = abs(y) * max(abs(factor), 1.0)
        if k > abs(a) + abs(b) + abs(c) and rho < 1.0:
            if abs(term) * rho / (1.0 - rho) < _TAIL_TOL * total_abs:
                break
    else:
        raise ParameterDomainError("series did not converge within the term budget")
    return total, total_abs


def hyp2f1(a, b, c, y) -> tuple[float, float]:
    """Evaluate ``2F1(a, b, c; y)`` and its absolute-value majorant.

    Polynomial cases (``a`` or ``b`` a nonpositive integer) are exact sums;
    everything else goes through the truncated series, restricted to
    ``|y| <= SERIES_RADIUS``.
    """
    m = _nonpositive_int(b)
    if m is None:
        m_a = _nonpositive_int(a)
        if m_a is not None:
            a, b, m = b, a, m_a
    if m is not None:
        series = build_terminating(a, m, c)
        return eval_2f1(series, y), _eval_abs(series, y)
    if np.ndim(y):
        pairs = [_series_sum(float(a), float(b), float(c), float(v)) for v in np.ravel(y)]
        shape = np.shape(y)
        return (np.array([p[0] for p in pairs]).reshape(shape),
                np.array([p[1] for p in pairs]).reshape(shape))
    return _series_sum(float(a), float(b), float(c), float(y))


def derivative_2f1(params: HypParams):
    """Derivative rule ``d/dy F(a, b, c) = (ab/c) F(a+1, b+1, c+1)``.

    Returns ``(scale, shifted)``. For ``m = 0`` the derivative of the
    constant series is zero: ``scale`` is zero and ``shifted`` is ``None``.
    """
    a, b, c = params.a, params.b, params.c
    if _is_zero(c):
        raise ParameterDomainError("c = 0: the derivative rule divides by c")
    scale = a * b / c
    if params.m == 0:
        return scale, None
    return scale, HypParams(a + 1, params.m - 1, c + 1)


def derivative_residual(params: HypParams, y) -> float:
    """Coefficient-wise derivative minus ``scale * F(a+1, b+1, c+1; y)``, relative."""
    series = build_terminating(params.a, params.m, params.c)
    deriv = series.derivative_coeffs()
    scale, shifted = derivative_2f1(params)
    lhs = eval_coeffs(deriv, y) if deriv else 0.0 * np.asarray(y, dtype=float)
    lhs_abs = eval_coeffs([abs(_to_float(d)) for d in deriv], np.abs(y)) if deriv else 0.0
    if shifted is None:
        return np.asarray(lhs, dtype=float)
    sh = build_terminating(shifted.a, shifted.m, shifted.c)
    rhs = _to_float(scale) * eval_2f1(sh, y)
    rhs_abs = abs(_to_float(scale)) * _eval_abs(sh, y)
    return (lhs - rhs) / np.maximum(lhs_abs + rhs_abs, 1e-300)


def _combine(terms, y):
    """Sum ``coef * 2F1(a, b, c; y)`` terms; return value and round-off scale."""
    value = 0.0
    scale = 0.0
    for coef, (a, b, c) in terms:
        coef = _to_float(coef)
        if coef == 0.0:
            continue
        v, vabs = hyp2f1(a, b, c, y)
        value = value + coef * v
        scale = scale + abs(coef) * vabs
    return value, scale


def _relative(value, scale):
    return value / np.maximum(scale, 1e-300)


def residual_raise_b(params: HypParams, y) -> float:
    """``(a/c) y F(a+1, b+1, c+1) - [F(a, b+1, c) - F(a, b, c)]``, relative.

    For ``m = 0`` the ``b + 1 = 1`` neighbours do not terminate and are
    summed numerically, which requires ``|y| <= SERIES_RADIUS``.
    """
    a, b, c = _floats(params)
    y = np.asarray(y, dtype=float) if np.ndim(y) else float(y)
    yv = np.asarray(y, dtype=float)
    v1, s1 = _combine([(a / c, (a + 1, b + 1, c + 1))], y)
    v2, s2 = _combine([(-1.0, (a, b + 1, c)), (1.0, (a, b, c))], y)
    value = yv * v1 + v2
    scale = np.abs(yv) * s1 + s2
    return _relative(value, scale)


def residual_raise_a_b(params: HypParams, y, printed: bool = False) -> float:
    """``(a-b) F - a F(a+1) + b F(b+1)``, relative.

    ``printed=True`` evaluates the variant with ``+ a F(a+1)``, which is not an
    identity (it equals ``2a`` at ``y = 0``); kept to document the discrepancy.
    """
    a, b, c = _floats(params)
    sign_a = 1.0 if printed else -1.0
    value, scale = _combine(
        [(a - b, (a, b, c)), (sign_a * a, (a + 1, b, c)), (b, (a, b + 1, c))], y
    )
    return _relative(value, scale)


def residual_lower_a_b(params: HypParams, y, printed: bool = False) -> float:
    """``(a-b)(1-y) F + (c-a) F(a-1) - (c-b) F(b-1)``, relative.

    ``printed=True`` uses ``(c-a)`` on the ``F(b-1)`` term as well; that form
    is off by ``a-b`` already at ``y = 0``.
    """
    a, b, c = _floats(params)
    y = np.asarray(y, dtype=float) if np.ndim(y) else float(y)
    last = (c - a) if printed else (c - b)
    v0, s0 = _combine([(a - b, (a, b, c))], y)
    v1, s1 = _combine([(c - a, (a - 1, b, c)), (-last, (a, b - 1, c))], y)
    one_minus = 1.0 - np.asarray(y, dtype=float)
    value = one_minus * v0 + v1
    scale = np.abs(one_minus) * s0 + s1
    return _relative(value, scale)


def _floats(params: HypParams) -> tuple[float, float, float]:
    return _to_float(params.a), float(params.b), _to_float(params.c)


# --- the bound-state family F_n(y) = 2F1(2s+1+n, 1-n, 2s+1; y) -------------

def family_params(s, n: int) -> HypParams:
    if n < 1:
        raise ParameterDomainError(f"family index n must be >= 1, got {n}")
    return HypParams(2 * s + 1 + n, n - 1, 2 * s + 1)


def family_series(s, n: int) -> TerminatingSeries:
    p = family_params(s, n)
    return build_terminating(p.a, p.m, p.c)


def family_derivative_decomposition(n: int, s, y):
    """Split ``dF_n/dy`` into ``coef_same * F_n + coef_next * F_{n+1}``.

    Only defined strictly inside ``(0, 1)``; both coefficients carry
    ``1/y`` and ``1/(1-y)`` factors.
    """
    yv = np.asarray(y, dtype=float)
    if np.any((yv <= 0.0) | (yv >= 1.0)):
        raise ParameterDomainError("the derivative split needs y strictly inside (0, 1)")
    s = float(s)
    k = 2 * s + 2 * n + 1
    coef_next = (2 * s + n + 1) * (2 * s + n) / (y * (1 - y) * k)
    coef_same = (2 * s + n + 1) / y * ((n + 1) / ((1 - y) * k) - 1)
    return coef_same, coef_next


def family_decomposition_residual(n: int, s, y):
    """Relative residual of the derivative split at ``y``."""
    s = float(s)
    fn = family_series(s, n)
    fnext = family_series(s, n + 1)
    coef_same, coef_next = family_derivative_decomposition(n, s, y)
    deriv = fn.derivative_coeffs()
    lhs = eval_coeffs(deriv, y) if deriv else 0.0
    lhs_abs = eval_coeffs([abs(d) for d in deriv], np.abs(y)) if deriv else 0.0
    rhs = coef_next * eval_2f1(fnext, y) + coef_same * eval_2f1(fn, y)
    scale = lhs_abs + np.abs(coef_next) * _eval_abs(fnext, y) + np.abs(coef_same) * _eval_abs(fn, y)
    return (lhs - rhs) / np.maximum(scale, 1e-300)
