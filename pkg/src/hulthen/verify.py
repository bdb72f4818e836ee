"""Verification suites behind ``hulthen verify``.

Each suite returns a list of :class:`~hulthen.report.Check`. Random draws use
a seeded generator so repeated runs give identical residuals.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import hypergeom as hg
from . import ladder, oracle, spectrum, wavefunction
from .errors import ParameterDomainError
from .grid import make_grid
from .report import Check
from .spectrum import Mode
from .tolerances import DEFAULT, Tolerances

SUITES = ("contiguous", "ladder", "su2", "ode", "table1", "shooting")
FAMILY_S = (Fraction(1, 2), Fraction(3, 4), Fraction(4, 3), Fraction(2))
ODE_BETAS = (4, 9, 25, 49)


@dataclass
class VerifyConfig:
    suites: tuple[str, ...] = SUITES
    mode: str | None = None             # None runs both paper and generalized checks
    beta: Fraction | float | None = None
    ns: list[int] | None = None
    s: Fraction | None = None
    seed: int = 12345
    draws: int = 100
    grid_size: int = 200
    tol: Tolerances = field(default_factory=lambda: DEFAULT)

    def as_dict(self) -> dict:
        return {
            "suites": list(self.suites),
            "mode": self.mode,
            "beta": None if self.beta is None else str(self.beta),
            "n": self.ns,
            "s": None if self.s is None else str(self.s),
            "seed": self.seed,
            "draws": self.draws,
            "grid_size": self.grid_size,
        }


def _s_label(s) -> str:
    return str(Fraction(s)) if isinstance(s, (int, Fraction)) else format(s, "g")


def _family_s(cfg):
    return (cfg.s,) if cfg.s is not None else FAMILY_S


# --- contiguous ---------------------------------------------------------------

def _draw_params(rng, m_max=6):
    return hg.HypParams(float(rng.uniform(0.5, 10.0)), int(rng.integers(0, m_max + 1)),
                        float(rng.uniform(0.5, 10.0)))


def suite_contiguous(cfg: VerifyConfig) -> list[Check]:
    rng = np.random.default_rng(cfg.seed)
    tol = cfg.tol
    worst = {"derivative": 0.0, "raise_b": 0.0, "raise_a_b": 0.0, "lower_a_b": 0.0,
             "raise_a_b printed": 0.0, "lower_a_b printed": 0.0}
    relations = {
        "derivative": hg.derivative_residual,
        "raise_b": hg.residual_raise_b,
        "raise_a_b": hg.residual_raise_a_b,
        "lower_a_b": hg.residual_lower_a_b,
        "raise_a_b printed": lambda p, y: hg.residual_raise_a_b(p, y, printed=True),
        "lower_a_b printed": lambda p, y: hg.residual_lower_a_b(p, y, printed=True),
    }
    for name, fn in relations.items():
        done = 0
        while done < cfg.draws:
            p = _draw_params(rng)
            y = float(rng.uniform(0.0, 1.0))
            try:
                r = abs(float(fn(p, y)))
            except ParameterDomainError:
                continue  # non-terminating neighbour outside the summation radius
            worst[name] = max(worst[name], r)
            done += 1
    out = []
    for name in ("derivative", "raise_b", "raise_a_b", "lower_a_b"):
        out.append(Check("contiguous", f"{name}: max over {cfg.draws} draws", worst[name], tol.identity))
    for name in ("raise_a_b printed", "lower_a_b printed"):
        out.append(Check("contiguous", f"{name}: max over {cfg.draws} draws", worst[name],
                         tol.expected_failure_floor, expected_failure=True))
    split = 0.0
    for _ in range(cfg.draws):
        n = int(rng.integers(1, 7))
        s = float(rng.uniform(0.0, 3.0))
        y = float(rng.uniform(0.05, 0.95))
        split = max(split, abs(float(hg.family_decomposition_residual(n, s, y))))
    out.append(Check("contiguous", f"family derivative split: max over {cfg.draws} draws", split,
                     tol.decomposition))
    return out


# --- ladder -------------------------------------------------------------------

def suite_ladder(cfg: VerifyConfig) -> list[Check]:
    tol = cfg.tol
    g = make_grid(cfg.grid_size, "uniform", interior=True)
    ns = cfg.ns or list(range(1, 7))
    out = []
    for s in _family_s(cfg):
        sf = float(s)
        norms = wavefunction.family_norms(sf, range(max(1, min(ns) - 1), max(ns) + 2))
        lab = _s_label(s)
        for n in ns:
            out.append(Check("ladder", f"raise n={n} s={lab}",
                             ladder.raise_residual(sf, n, g, norms), tol.ladder))
            if n >= 2:
                out.append(Check("ladder", f"lower n={n} s={lab}",
                                 ladder.lower_residual(sf, n, g, norms), tol.ladder))
            out.append(Check("ladder", f"derivative reconstruction n={n} s={lab}",
                             ladder.derivative_reconstruction_residual(sf, n, g, norms),
                             tol.reconstruction))
        n0 = ns[0]
        out.append(Check("ladder", f"raise as printed n={n0} s={lab}",
                         ladder.raise_residual(sf, n0, g, norms, form="printed"),
                         tol.expected_failure_floor, expected_failure=True))
        bottom = ladder.apply_lower(wavefunction.make_state(sf, 1, norms.get(1)), g)
        out.append(Check("ladder", f"lower on n=1 is the zero function s={lab}",
                         float(np.max(np.abs(bottom.values))), 0.0))
    return out


# --- su2 ----------------------------------------------------------------------

def suite_su2(cfg: VerifyConfig) -> list[Check]:
    tol = cfg.tol
    g = make_grid(cfg.grid_size, "uniform", interior=True)
    ns = [n for n in (cfg.ns or range(2, 7))]
    s_values = (cfg.s,) if cfg.s is not None else (Fraction(3, 4),)
    rng = np.random.default_rng(cfg.seed)
    out = []
    for s in s_values:
        sf = float(s)
        lab = _s_label(s)
        norms = wavefunction.family_norms(sf, range(max(1, min(ns) - 1), max(ns) + 2))
        out.extend(ladder.su2_relations_check(sf, ns, norms, tol.su2_scalar))
        for n in ns:
            if n < 2:
                continue
            target = 2 * (n + s)
            exact = ladder.exact_commutator(Fraction(s), n)
            out.append(Check("su2", f"[L-,L+] exact rational n={n} s={lab}",
                             float(abs(exact - target)), 0.0))
            lam = ladder.commutator_eigenvalue(sf, n, g)
            out.append(Check("su2", f"[L-,L+] grid composition n={n} s={lab}",
                             abs(lam - float(target)) / float(target), tol.commutator_grid))
            shaken = {k: v * float(rng.uniform(0.1, 10.0)) for k, v in norms.items()}
            out.append(Check("su2", f"[L-,L+] with rescaled norms n={n} s={lab}",
                             abs(ladder.scalar_commutator(sf, n, shaken) - float(target)) / float(target),
                             tol.su2_scalar))
            swapped = -ladder.scalar_commutator(sf, n, norms)
            out.append(Check("su2", f"[L+,L-]=+2(n+s) as printed n={n} s={lab}",
                             abs(swapped - float(target)) / float(target),
                             tol.expected_failure_floor, expected_failure=True))
    return out


# --- ode ----------------------------------------------------------------------

def suite_ode(cfg: VerifyConfig) -> list[Check]:
    tol = cfg.tol
    g = make_grid(cfg.grid_size, "uniform", interior=True)
    out = []
    if cfg.mode in (None, "generalized"):
        betas = (cfg.beta,) if cfg.beta is not None else ODE_BETAS
        for beta in betas:
            mode = Mode.generalized(beta)
            count = spectrum.bound_state_count(beta)
            ns = [n for n in (cfg.ns or range(1, count + 1)) if n <= count]
            for n in ns:
                s = spectrum.s_param(n, mode)
                state = wavefunction.make_state(s, n)
                out.append(Check("ode", f"generalized beta={beta} n={n}",
                                 oracle.ode_residual(state, beta, g), tol.ode))
    if cfg.mode in (None, "paper"):
        for n in [n for n in (cfg.ns or range(2, 5)) if n >= 2]:
            s = spectrum.s_param(n)
            state = wavefunction.make_state(s, n)
            out.append(Check("ode", f"paper mode beta=1 n={n} s={s}",
                             oracle.ode_residual(state, 1, g), tol.expected_failure_floor,
                             expected_failure=True))
    return out


# --- table1 -------------------------------------------------------------------

def suite_table1(cfg: VerifyConfig) -> list[Check]:
    tol = cfg.tol
    out = []
    for n in sorted(wavefunction.PUBLISHED_NORMS):
        ok = wavefunction.published_identity(n) == 1
        out.append(Check("table1", f"exact rational identity n={n}", 0.0 if ok else 1.0, 0.0))
    out.append(Check("table1", "N_1 at s=0 equals sqrt(3)",
                     abs(wavefunction.normalize_symbolic(1).value(0) - 3**0.5) / 3**0.5, tol.normalization))
    for s in _family_s(cfg):
        for n in (cfg.ns or range(1, 9)):
            q = wavefunction.normalize_quadrature(float(s), n)
            e = wavefunction.normalize_symbolic(n).value(Fraction(s))
            out.append(Check("table1", f"quadrature vs exact n={n} s={_s_label(s)}",
                             abs(q - e) / e, tol.normalization))
    return out


# --- shooting -----------------------------------------------------------------

def suite_shooting(cfg: VerifyConfig) -> list[Check]:
    tol = cfg.tol
    out = []
    betas = (cfg.beta,) if cfg.beta is not None else (4, 9)
    if cfg.mode in (None, "generalized"):
        for beta in betas:
            mode = Mode.generalized(beta)
            levels = oracle.shoot_eigenvalues(float(beta))
            count = spectrum.bound_state_count(beta)
            out.append(Check("shooting", f"beta={beta} level count {len(levels)} vs {count}",
                             float(abs(len(levels) - count)), 0.0))
            for lev in levels[:count]:
                exact = float(spectrum.dimensionless_energy(lev.n, mode))
                out.append(Check("shooting", f"beta={beta} n={lev.n} eps={lev.epsilon:.10g}",
                                 abs(lev.epsilon - exact) / abs(exact), tol.shooting))
    if cfg.mode in (None, "paper"):
        floor = -tol.shooting_floor
        found = oracle.shoot_eigenvalues(1.0, oracle.ShootingConfig(energy_bracket=(-4.0, floor)))
        out.append(Check("shooting", f"paper mode beta=1: levels below {floor:g}",
                         float(len(found)), 0.0))
        out.append(Check("shooting", "paper mode beta=1: bound_state_count",
                         float(spectrum.bound_state_count(1)), 0.0))
    return out


RUNNERS = {
    "contiguous": suite_contiguous,
    "ladder": suite_ladder,
    "su2": suite_su2,
    "ode": suite_ode,
    "table1": suite_table1,
    "shooting": suite_shooting,
}


def run(cfg: VerifyConfig | None = None) -> list[Check]:
    cfg = cfg or VerifyConfig()
    out = []
    for name in cfg.suites:
        if name not in RUNNERS:
            raise ParameterDomainError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
        out.extend(RUNNERS[name](cfg))
    return out
