""" Conservation Tests

First integrals, RK4 drift and closed-form solutions
"""
import io
import math

import pytest
import sympy

from noether_dho import conservation, config, dho, errors, noether_solver
from noether_dho import symexpr, variational
from noether_dho.conservation import FirstIntegral
from noether_dho.noether_solver import GaugeFunction, NoetherSymmetry
from noether_dho.symexpr import Params, t, u, u1
from noether_dho.variational import VectorField


STANDARD = [Params(1, 3, 2), Params(1, 1, 1), Params(1, 2, 1)]

CRITICAL_I1 = FirstIntegral(sympy.exp(t) * (u + u1), 'I1')
CRITICAL_I2 = FirstIntegral(sympy.exp(t) * (t * u + t * u1 - u), 'I2')


def _solved_integrals(params):
    L = dho.bateman(params)
    return [conservation.first_integral(ns, L)
            for ns in noether_solver.solve_dho(L, params)]


@pytest.mark.parametrize('params', STANDARD)
def test_solved_integrals_are_conserved(params):
    eom = variational.euler_lagrange(dho.bateman(params))
    found = _solved_integrals(params)
    assert len(found) == 5
    for I in found:
        assert conservation.verify_symbolic(I, eom)

    traj = conservation.integrate_rk4(params, (0, 1, 0), 10, 1e-3)
    for I in found:
        assert conservation.conservation_drift(I, traj) < 1e-8


def test_not_conserved():
    eom = variational.euler_lagrange(dho.bateman(Params(1, 2, 1)))
    assert not conservation.verify_symbolic(FirstIntegral(u * u1), eom)


def test_first_integral_requires_symmetry():
    L = variational.Lagrangian((u1 ** 2 - u ** 2) / 2)
    bogus = NoetherSymmetry(VectorField(0, u ** 2), GaugeFunction(0), 'Y')
    with pytest.raises(errors.NotASymmetryError):
        conservation.first_integral(bogus, L)


def test_integrate_rk4_ends_on_t_end(capsys):
    traj = conservation.integrate_rk4(Params(1, 0, 1), (0, 1, 0),
                                      2 * math.pi, 0.1)
    assert len(traj) == 64
    assert traj.h <= 0.1
    assert traj.t[-1] == pytest.approx(2 * math.pi)
    # one full period of cos(t)
    assert traj.u[-1] == pytest.approx(1.0, abs=1e-4)
    assert traj.u1[-1] == pytest.approx(0.0, abs=1e-4)
    assert 'shrunk to 0.0997331' in capsys.readouterr().err

    conservation.integrate_rk4(Params(1, 0, 1), (0, 1, 0), 1, 0.25)
    assert capsys.readouterr().err == ''


def test_integrate_rk4_errors():
    params = Params(1, 1, 1)
    with pytest.raises(ValueError):
        conservation.integrate_rk4(params, (0, 1, 0), 1, 0)
    with pytest.raises(ValueError):
        conservation.integrate_rk4(params, (2, 1, 0), 1, 0.1)
    small = config.DEFAULTS.replace(max_steps=10)
    with pytest.raises(errors.StepOverflowError):
        conservation.integrate_rk4(params, (0, 1, 0), 10, 0.1, small)


def test_trajectory_is_read_only():
    traj = conservation.integrate_rk4(Params(1, 1, 1), (0, 1, 0), 1, 0.5)
    with pytest.raises(ValueError):
        traj.u[0] = 2.0


def test_drift_of_integral_vanishing_on_initial_condition():
    params = Params(1, 2, 1)
    traj = conservation.integrate_rk4(params, (0, 1, -1), 10, 1e-3)
    assert conservation.conservation_drift(CRITICAL_I1, traj) < 1e-8


def test_drift_when_terms_vanish_at_start():
    # every term of I2 carries t or u, all zero at (0, 0, 1)
    traj = conservation.integrate_rk4(Params(1, 2, 1), (0, 0, 1), 10, 1e-3)
    assert conservation.conservation_drift(CRITICAL_I2, traj) < 1e-8


def test_drift_detects_non_conserved_quantity():
    traj = conservation.integrate_rk4(Params(1, 2, 1), (0, 1, 0), 10, 1e-3)
    assert conservation.conservation_drift(FirstIntegral(u), traj) > 0.5
    assert conservation.conservation_drift(
        FirstIntegral(sympy.exp(t) * u), traj) > 0.5


def test_write_csv():
    traj = conservation.integrate_rk4(Params(1, 1, 1), (0, 1, 0), 1, 0.25)
    stream = io.StringIO()
    conservation.write_csv(traj, stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == 't,u,u1'
    assert len(lines) == 6
    assert lines[1] == '0,1,0'


def test_rk4_convergence_order():
    exact = (1 + t) * sympy.exp(-t)
    ratio = conservation.convergence_ratio(Params(1, 2, 1), (0, 1, 0), 5,
                                           0.1, exact)
    assert 12 <= ratio <= 20


def test_integrals_match():
    I = FirstIntegral(sympy.exp(t) * (u + u1))
    matched, scale = conservation.integrals_match(
        FirstIntegral(3 * I.expr + 2), I)
    assert matched
    assert scale == pytest.approx(3.0)

    matched, scale = conservation.integrals_match(I, CRITICAL_I2)
    assert not matched
    assert scale is None


def test_jacobian_rank():
    params = Params(1, 2, 1)
    assert conservation.jacobian_rank([CRITICAL_I1, CRITICAL_I2], params) == 2
    doubled = FirstIntegral(2 * CRITICAL_I1.expr)
    assert conservation.jacobian_rank([CRITICAL_I1, doubled], params) == 1


def test_reconstruct_critical_solution():
    solution = conservation.reconstruct_solution(CRITICAL_I1, CRITICAL_I2,
                                                 'critical')
    C1, C2 = solution.constants
    assert symexpr.is_zero(solution.u_of_t - sympy.exp(-t) * (C1 * t - C2))
    assert symexpr.is_zero(solution.residual(Params(1, 2, 1)))

    params = Params(1, 2, 1)
    traj = conservation.integrate_rk4(params, (0, 1, -1), 10, 1e-3)
    assert conservation.fit_constants(solution, traj) == {
        C1: pytest.approx(0.0), C2: pytest.approx(-1.0)}
    assert conservation.solution_deviation(solution, traj) < 1e-7


@pytest.mark.parametrize('params, pair', [
    (Params(1, 3, 2), (3, 4)),
    (Params(1, 1, 1), (3, 4)),
])
def test_reconstruct_matches_rk4(params, pair):
    found = _solved_integrals(params)
    solution = conservation.reconstruct_solution(found[pair[0]],
                                                 found[pair[1]])
    assert symexpr.is_zero(solution.residual(params))
    for ic in config.DEFAULTS.ic_suite:
        traj = conservation.integrate_rk4(params, ic, 10, 1e-3)
        assert conservation.solution_deviation(solution, traj) < 1e-7


def test_reconstruct_errors():
    quadratic = FirstIntegral(sympy.exp(2 * t) * (u ** 2 + u1 ** 2))
    with pytest.raises(errors.NonAffineIntegralError):
        conservation.reconstruct_solution(CRITICAL_I1, quadratic)

    doubled = FirstIntegral(2 * CRITICAL_I1.expr)
    with pytest.raises(errors.SingularSystemError):
        conservation.reconstruct_solution(CRITICAL_I1, doubled)
