"""Bound-state spectrum of the Hulthen well.

Two modes are supported:

``paper``
    The coupling is fixed at ``beta = 1`` and the exponent parameter is the
    published ``s = (n^2 - 1) / (2n)``, giving ``E_n = -V0 s^2``.

``generalized``
    Arbitrary dimensionless well strength ``beta = 2 M V0 a^2 / hbar^2``.
    The quantization condition ``s + n = sqrt(s^2 + beta)`` gives
    ``s = (beta - n^2) / (2n)``, and a level exists only while ``n^2 < beta``.
    In this mode the closed-form wavefunction solves the radial equation
    exactly.

Dimensionless energies are ``epsilon = -s^2`` in units of
``hbar^2 / (2 M a^2) = V0 / beta``; with ``beta = 1`` this is ``E / V0``.

Note on conventions: the reduction to dimensionless form requires
``hbar^2 / (2 M a^2) = V0``; the published relation is written with ``a^2``
in the numerator, which is dimensionally inconsistent and is read here as
the former. Also, the published quantization condition ``s - sqrt(s^2+1) = -n``
has only the negative root ``s = (1 - n^2)/(2n)``; the positive ``s`` used for
the energies corresponds to the branch ``sqrt(s^2+1) = n - s``. The function
:func:`quantization_residual` exposes this rather than hiding it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable

from .errors import NoBoundStateError, ParameterDomainError


@dataclass(frozen=True)
class Mode:
    kind: str = "paper"
    beta: float | Fraction = 1

    def __post_init__(self):
        if self.kind not in ("paper", "generalized"):
            raise ParameterDomainError(f"unknown mode {self.kind!r}")
        if self.kind == "paper" and self.beta != 1:
            raise ParameterDomainError("paper mode fixes beta = 1")
        if not self.beta > 0:
            raise ParameterDomainError(f"beta must be positive, got {self.beta}")

    @classmethod
    def generalized(cls, beta) -> "Mode":
        return cls("generalized", _exactify(beta))

    def __str__(self):
        return "paper" if self.kind == "paper" else f"generalized(beta={self.beta})"


PAPER = Mode()


def _exactify(x):
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    return x


@dataclass(frozen=True)
class Coupling:
    """Physical parameters of the well; ``beta`` is derived from them."""

    V0: float = 1.0
    a: float = 1.0
    M: float = 0.5
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("V0", "a", "M", "hbar"):
            if not getattr(self, name) > 0:
                raise ParameterDomainError(f"{name} must be positive")

    @property
    def beta(self) -> float:
        return 2 * self.M * self.V0 * self.a**2 / self.hbar**2

    @classmethod
    def from_beta(cls, beta, V0=1.0, a=1.0, hbar=1.0) -> "Coupling":
        return cls(V0=V0, a=a, M=beta * hbar**2 / (2 * V0 * a**2), hbar=hbar)


@dataclass(frozen=True)
class SpectrumEntry:
    n: int
    s: float | Fraction
    epsilon: float | Fraction
    E: float | Fraction


def _check_n(n) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise ParameterDomainError(f"n must be an integer, got {n!r}")
    if n == 0:
        raise ParameterDomainError(
            "n = 0 is excluded: the second solution of the hypergeometric "
            "connection then survives and diverges like (1-y)^-1 as y -> 1"
        )
    if n < 0:
        raise ParameterDomainError(f"n must be >= 1, got {n}")
    return n


def s_param(n: int, mode: Mode = PAPER):
    """Exponent ``s`` of ``y^s`` for level ``n``; exact for exact inputs."""
    n = _check_n(n)
    if mode.kind == "paper":
        return Fraction(n * n - 1, 2 * n)
    beta = mode.beta
    if not n * n < beta:
        raise NoBoundStateError(
            f"no bound state for n = {n} at beta = {beta}: need n^2 < beta"
        )
    return (beta - n * n) / (2 * n)


def dimensionless_energy(n: int, mode: Mode = PAPER):
    s = s_param(n, mode)
    return -s * s


def energy(n: int, coupling: Coupling | None = None, mode: Mode = PAPER):
    """Level energy in the units of ``coupling.V0``.

    Paper mode returns ``-V0 s^2``; generalized mode ``-(V0 / beta) s^2``.
    """
    V0 = 1 if coupling is None else coupling.V0
    eps = dimensionless_energy(n, mode)
    if mode.kind == "paper":
        return V0 * eps
    return V0 * eps / mode.beta


def entry(n: int, coupling: Coupling | None = None, mode: Mode = PAPER) -> SpectrumEntry:
    s = s_param(n, mode)
    return SpectrumEntry(n=n, s=s, epsilon=-s * s, E=energy(n, coupling, mode))


def spectrum(ns: Iterable[int], coupling: Coupling | None = None, mode: Mode = PAPER) -> list[SpectrumEntry]:
    return [entry(n, coupling, mode) for n in ns]


def quantization_residual(s, n: int, beta=1) -> float:
    """``s + n - sqrt(s^2 + beta)``; zero exactly when ``s = (beta - n^2)/(2n)``."""
    if not beta > 0:
        raise ParameterDomainError("beta must be positive")
    return float(s) + n - math.sqrt(float(s) ** 2 + float(beta))


def bound_state_count(beta) -> int:
    """Number of levels ``n >= 1`` with ``n^2 < beta``."""
    if not beta > 0:
        raise ParameterDomainError("beta must be positive")
    beta = _exactify(beta)
    n = math.isqrt(math.floor(beta))
    while n > 0 and not n * n < beta:
        n -= 1
    return n


def is_equidistant(energies) -> bool:
    gaps = [b - a for a, b in zip(energies, energies[1:])]
    return all(g == gaps[0] for g in gaps)
