"""Acceptance criteria, one test each.

Every test prints a ``PASS``/``FAIL`` line. Run directly
(``python tests/test_acceptance.py``) for just the summary.
"""
import json
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from hulthen import hypergeom as hg
from hulthen import ladder, oracle, spectrum, wavefunction
from hulthen.grid import make_grid
from hulthen.spectrum import Mode

FAMILY_S = (Fraction(1, 2), Fraction(3, 4), Fraction(4, 3), Fraction(2))
GRID = make_grid(200, "uniform", interior=True)


def norm_table_exact():
    t0 = time.perf_counter()
    wavefunction.normalize_symbolic.cache_clear()
    same = [wavefunction.published_identity(n) == 1 for n in range(1, 5)]
    dt = time.perf_counter() - t0
    return all(same) and dt < 1.0, f"identities {same}, {dt:.2f}s"


def normalization_consistency():
    worst = 0.0
    for s in FAMILY_S:
        for n in range(1, 9):
            exact = wavefunction.normalize_symbolic(n).value(s)
            worst = max(worst, abs(wavefunction.normalize_quadrature(float(s), n) - exact) / exact)
    return worst < 1e-10, f"max rel diff {worst:.2e}"


def energy_formula():
    exact = all(spectrum.energy(n) == -Fraction(n * n - 1, 2 * n) ** 2 for n in range(1, 21))
    e1, e2, e3 = (spectrum.energy(n) for n in (1, 2, 3))
    uneven = e2 - e1 != e3 - e2
    return exact and uneven, f"exact n=1..20: {exact}; gaps {e2 - e1} vs {e3 - e2}"


def contiguous_relations():
    rng = np.random.default_rng(2024)
    draws = 100
    relations = {
        "derivative": hg.derivative_residual,
        "raise_b": hg.residual_raise_b,
        "raise_a_b": hg.residual_raise_a_b,
        "lower_a_b": hg.residual_lower_a_b,
    }
    worst = {}
    for name, fn in relations.items():
        values = []
        for _ in range(draws):
            p = hg.HypParams(rng.uniform(0.5, 10), int(rng.integers(0, 7)), rng.uniform(0.5, 10))
            values.append(abs(float(fn(p, rng.uniform(0.0, 0.95)))))
        worst[name] = max(values)
    ok = all(v < 1e-12 for v in worst.values())
    return ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + f" ({draws} draws each)"


def ladder_actions():
    worst_r = worst_l = worst_d = 0.0
    for s in FAMILY_S:
        sf = float(s)
        norms = wavefunction.family_norms(sf, range(1, 8))
        for n in range(1, 7):
            worst_r = max(worst_r, ladder.raise_residual(sf, n, GRID, norms))
            worst_d = max(worst_d, ladder.derivative_reconstruction_residual(sf, n, GRID, norms))
            if n >= 2:
                worst_l = max(worst_l, ladder.lower_residual(sf, n, GRID, norms))
    ok = worst_r < 1e-9 and worst_l < 1e-9 and worst_d < 1e-10
    return ok, f"raise {worst_r:.1e}, lower {worst_l:.1e}, reconstruction {worst_d:.1e}"


def su2_algebra():
    grid_worst = 0.0
    exact_ok = True
    for s in FAMILY_S:
        for n in range(2, 7):
            target = 2 * (n + s)
            exact_ok &= ladder.exact_commutator(s, n) == target
            lam = ladder.commutator_eigenvalue(float(s), n, GRID)
            grid_worst = max(grid_worst, abs(lam - float(target)) / float(target))
    checks = [c for s in FAMILY_S for c in ladder.su2_relations_check(float(s), range(2, 7))]
    rel_ok = all(c.passed for c in checks)
    ok = exact_ok and grid_worst < 1e-8 and rel_ok
    return ok, f"exact {exact_ok}, grid {grid_worst:.1e}, [L0,L+-] {len(checks)} checks pass {rel_ok}"


def shooting_oracle():
    got4 = oracle.shoot_eigenvalues(4)
    got9 = oracle.shoot_eigenvalues(9)
    want = {4: [-2.25], 9: [-16.0, -25 / 16]}
    errs = []
    ok = len(got4) == 1 and len(got9) == 2
    for levels, beta in ((got4, 4), (got9, 9)):
        for lv, w in zip(levels, want[beta]):
            errs.append(abs(lv.epsilon - w) / abs(w))
    ok &= all(e < 1e-6 for e in errs)
    paper = oracle.shoot_eigenvalues(1.0, oracle.ShootingConfig(energy_bracket=(-4.0, -1e-6)))
    ok &= paper == [] and spectrum.bound_state_count(1) == 0
    return ok, f"max rel err {max(errs, default=float('nan')):.1e}, paper-mode levels {len(paper)}"


def ode_residual():
    worst = 0.0
    for beta in (4, 9, 25, 49):
        mode = Mode.generalized(beta)
        for n in range(1, spectrum.bound_state_count(beta) + 1):
            state = wavefunction.make_state(spectrum.s_param(n, mode), n)
            worst = max(worst, oracle.ode_residual(state, beta, GRID))
    paper = [oracle.ode_residual(wavefunction.make_state(spectrum.s_param(n), n), 1, GRID) for n in (2, 3, 4)]
    ok = worst < 1e-10 and min(paper) > 0.1
    return ok, f"generalized max {worst:.1e}; paper mode (expected failure) min {min(paper):.3g}"


def determinism():
    cmd = [sys.executable, "-m", "hulthen", "verify", "-q"]
    runs = [subprocess.run(cmd, capture_output=True, text=True) for _ in range(2)]
    data = [json.loads(r.stdout)["data"] for r in runs]
    same = json.dumps(data[0], sort_keys=True) == json.dumps(data[1], sort_keys=True)
    codes = [r.returncode for r in runs]
    return same and codes == [0, 0], f"identical data {same}, exit codes {codes}"


CRITERIA = [
    ("1 published norm table exact reproduction", norm_table_exact),
    ("2 normalization consistency", normalization_consistency),
    ("3 energy formula", energy_formula),
    ("4 contiguous relations", contiguous_relations),
    ("5 ladder actions", ladder_actions),
    ("6 SU(2) algebra", su2_algebra),
    ("7 shooting oracle", shooting_oracle),
    ("8 ODE residual", ode_residual),
    ("9 determinism", determinism),
]


def _report(name, fn):
    ok, detail = fn()
    return ok, f"{'PASS' if ok else 'FAIL'}  criterion {name}: {detail}"


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(name, fn, capsys):
    ok, line = _report(name, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for name, fn in CRITERIA:
        ok, line = _report(name, fn)
        print(line)
        failed += not ok
    sys.exit(1 if failed else 0)
