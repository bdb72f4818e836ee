import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hulthen import oracle
from hulthen.errors import BracketError, NumericalFailure, ParameterDomainError
from hulthen.grid import GridFunction, make_grid
from hulthen.spectrum import Mode, dimensionless_energy, s_param
from hulthen.wavefunction import make_state, normalize_symbolic, sample
from hulthen._kernels import available_backends


# --- quadrature -----------------------------------------------------------

def test_quadrature_examples():
    v, _ = oracle.quadrature(lambda y: (1 - y) ** 2)
    assert v == pytest.approx(1 / 3, rel=1e-15)
    v, _ = oracle.quadrature(lambda y: y**1.5 * (1 - y) ** 2, left_exponent=1.5)
    assert v == pytest.approx(16 / 315, rel=1e-13)


def test_quadrature_family_integrand():
    from hulthen.hypergeom import family_series
    c = family_series(0.75, 2).float_coeffs()
    v, _ = oracle.quadrature(lambda y: y**1.5 * (1 - y) ** 2 * np.polyval(c[::-1], y) ** 2, left_exponent=1.5)
    exact = 1 / normalize_symbolic(2).value(0.75) ** 2
    assert abs(v - exact) / exact < 1e-12


@given(st.lists(st.floats(-5, 5), min_size=1, max_size=60))
def test_quadrature_polynomials_exact(coeffs):
    v, _ = oracle.quadrature(lambda y: np.polynomial.polynomial.polyval(y, coeffs))
    exact = sum(c / (k + 1) for k, c in enumerate(coeffs))
    assert abs(v - exact) <= 1e-13 * max(1.0, sum(abs(c) for c in coeffs))


@given(st.floats(-0.95, 3.0).filter(lambda a: a != math.floor(a)))
def test_quadrature_endpoint_singularity(alpha):
    v, _ = oracle.quadrature(lambda y: y**alpha, left_exponent=alpha)
    assert v == pytest.approx(1 / (alpha + 1), rel=1e-12)


def test_quadrature_failure_carries_estimate():
    with pytest.raises(NumericalFailure) as info:
        oracle.quadrature(lambda y: np.sign(y - 1 / math.pi), tol=1e-15, max_nodes=256)
    assert info.value.estimate > 0
    with pytest.raises(ParameterDomainError):
        oracle.quadrature(lambda y: y, (1.0, 0.0))


# --- finite differences ---------------------------------------------------

def test_fd_examples():
    g = make_grid(101)
    const = GridFunction(g, np.full_like(g, 3.0))
    assert np.max(np.abs(oracle.fd_derivative(const).values)) < 1e-12
    sq = oracle.fd_derivative(GridFunction(g, g**2))
    assert sq.values[np.argmin(np.abs(sq.grid - 0.5))] == pytest.approx(1.0, abs=1e-8)
    second = oracle.fd_derivative(GridFunction(g, g**3), order=2)
    assert np.allclose(second.values, 6 * second.grid, atol=1e-8)


def test_fd_preconditions():
    with pytest.raises(ParameterDomainError):
        oracle.fd_derivative(GridFunction(make_grid(4), np.zeros(4)))
    with pytest.raises(ParameterDomainError):
        oracle.fd_derivative(GridFunction(make_grid(20, "chebyshev"), np.zeros(20)))
    with pytest.raises(ParameterDomainError):
        oracle.fd_derivative(GridFunction(make_grid(20), np.zeros(20)), order=3)


def _psi_derivative_error(state, h):
    lo, hi = 0.2, 0.8
    size = int(round((hi - lo) / h)) + 1
    g = np.linspace(lo, hi, size)
    fd = oracle.fd_derivative(sample(state, g))
    from hulthen.ladder import state_function
    exact = state_function(state).derivative(fd.grid)
    return np.max(np.abs(fd.values - exact))


def test_fd_matches_analytic_derivative():
    state = make_state(0.75, 3)
    assert _psi_derivative_error(state, 1e-3) < 1e-6


def test_fd_convergence_order():
    state = make_state(1.3, 4)
    hs = np.array([0.02, 0.01, 0.005, 0.0025])
    errs = np.array([_psi_derivative_error(state, h) for h in hs])
    slope = np.polyfit(np.log(hs), np.log(errs), 1)[0]
    assert slope >= 3.7


# --- ODE residual ---------------------------------------------------------

GRID = make_grid(200, "uniform", interior=True)


@pytest.mark.parametrize("beta,n", [(4, 1), (9, 2), (9, 1), (49, 6), (10.5, 3)])
def test_generalized_closed_form_solves_ode(beta, n):
    s = s_param(n, Mode.generalized(beta))
    assert oracle.ode_residual(make_state(s, n), beta, GRID) < 1e-10


def test_ode_example_values():
    assert s_param(2, Mode.generalized(9)) == 1.25


def test_paper_mode_residual_is_order_one():
    s = s_param(2)
    assert oracle.ode_residual(make_state(s, 2), 1, GRID) > 0.1


def test_ode_residual_against_finite_differences():
    # same equation rebuilt from stencils, independent of the polynomial calculus
    beta, n = 9, 2
    s = float(s_param(n, Mode.generalized(beta)))
    state = make_state(s, n)
    g = np.linspace(0.1, 0.9, 8001)
    psi = sample(state, g)
    d1 = oracle.fd_derivative(psi).values
    d2 = oracle.fd_derivative(psi, order=2).values
    y = g[2:-2]
    res = y * y * d2 + y * d1 + (-s * s + beta * y / (1 - y)) * psi.values[2:-2]
    assert np.max(np.abs(res)) / np.max(np.abs(psi.values)) < 1e-6


def test_ode_residual_needs_interior():
    with pytest.raises(ParameterDomainError):
        oracle.ode_residual(make_state(1.5, 1), 4, make_grid(20))


# --- shooting -------------------------------------------------------------

def test_shooting_beta4():
    levels = oracle.shoot_eigenvalues(4)
    assert len(levels) == 1
    assert abs(levels[0].epsilon + 2.25) / 2.25 < 1e-6


def test_shooting_beta9():
    levels = oracle.shoot_eigenvalues(9)
    assert [lv.n for lv in levels] == [1, 2]
    assert abs(levels[0].epsilon + 16) / 16 < 1e-6
    assert abs(levels[1].epsilon + 25 / 16) / (25 / 16) < 1e-6


def test_shooting_shallow_state():
    levels = oracle.shoot_eigenvalues(1.0001)
    assert len(levels) == 1
    exact = -((1.0001 - 1) / 2) ** 2
    assert abs(levels[0].epsilon - exact) / abs(exact) < 1e-6
    assert levels[0].x_max > 40


def test_shooting_paper_mode_finds_nothing():
    cfg = oracle.ShootingConfig(energy_bracket=(-4.0, -1e-6))
    assert oracle.shoot_eigenvalues(1.0, cfg) == []
    assert oracle.shoot_eigenvalues(1.0) == []


def test_shooting_node_target():
    cfg = oracle.ShootingConfig(node_target=1)
    (lv,) = oracle.shoot_eigenvalues(9, cfg)
    assert lv.n == 2 and lv.nodes == 1
    with pytest.raises(BracketError, match="scan"):
        oracle.shoot_eigenvalues(9, oracle.ShootingConfig(node_target=4))


def test_node_monotonicity():
    beta = 30
    levels = oracle.shoot_eigenvalues(beta)
    assert len(levels) == 5
    for k, lv in enumerate(levels):
        assert lv.nodes == k
        assert oracle.level_nodes(beta, lv.epsilon * (1 + 1e-7)) == k
        exact = float(dimensionless_energy(k + 1, Mode.generalized(beta)))
        assert abs(lv.epsilon - exact) / abs(exact) < 1e-6


def test_shooting_step_convergence():
    beta, exact = 9, -16.0
    errs = []
    steps = [0.04, 0.02, 0.01]
    for h in steps:
        (lv,) = oracle.shoot_eigenvalues(beta, oracle.ShootingConfig(step=h, node_target=0, tol=1e-13))
        errs.append(abs(lv.epsilon - exact))
    slope = np.polyfit(np.log(steps), np.log(errs), 1)[0]
    assert slope >= 2.0


def test_python_backend_agrees():
    backends = available_backends()
    cfg = oracle.ShootingConfig(step=4e-3, x_max=30, tol=1e-8)
    got = oracle.shoot_eigenvalues(4, cfg, kernel=backends["python"])
    assert abs(got[0].epsilon + 2.25) / 2.25 < 1e-6


def test_config_validation():
    with pytest.raises(ParameterDomainError):
        oracle.ShootingConfig(x_max=-1)
    with pytest.raises(ParameterDomainError):
        oracle.ShootingConfig(step=0)
    with pytest.raises(ParameterDomainError):
        oracle.ShootingConfig(energy_bracket=(-1.0, 0.5))
    with pytest.raises(ParameterDomainError):
        oracle.shoot_eigenvalues(-2)
