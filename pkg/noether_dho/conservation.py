""" First integrals

Noether's theorem I = xi L + (eta - u1 xi) dL/du1 - B, symbolic and
numeric conservation checks, and closed-form solutions recovered from a
pair of integrals affine in (u, u1).
"""
import dataclasses
import math
from typing import Tuple

import numpy as np
import sympy

from . import config, errors, log, symexpr
from .noether_solver import check_noether
from .symexpr import canonical, t, u, u1
from .variational import total_derivative


@dataclasses.dataclass(frozen=True)
class FirstIntegral:
    expr: sympy.Expr
    provenance: str = ''

    def __post_init__(self):
        object.__setattr__(self, 'expr', sympy.sympify(self.expr))

    def bind(self, params):
        return FirstIntegral(symexpr.substitute(self.expr, params.bindings()),
                             self.provenance)

    def __str__(self):
        return symexpr.to_string(self.expr)


@dataclasses.dataclass(frozen=True, eq=False)
class Trajectory:
    t: np.ndarray
    u: np.ndarray
    u1: np.ndarray
    h: float
    params: symexpr.Params
    ic: Tuple[float, float, float]

    def __post_init__(self):
        for array in (self.t, self.u, self.u1):
            array.setflags(write=False)

    def __len__(self):
        return len(self.t)


@dataclasses.dataclass(frozen=True)
class ClosedFormSolution:
    """u(t) in terms of the values of two first integrals. """
    u_of_t: sympy.Expr
    constants: Tuple[sympy.Symbol, sympy.Symbol]
    integrals: Tuple[FirstIntegral, FirstIntegral]
    validity: str = ''

    def residual(self, params=None):
        """Left side of u'' + (c/m) u' + (k/m) u = 0 along u_of_t """
        x = self.u_of_t
        expr = (sympy.diff(x, t, 2) + symexpr.c / symexpr.m * sympy.diff(x, t) +
                symexpr.k / symexpr.m * x)
        if params is not None:
            expr = expr.subs(params.bindings())
        return canonical(expr)

    def fit(self, ic, params):
        """Values of the constants for initial condition (t0, u0, v0). """
        t0, u0, v0 = ic
        point = {'t': t0, 'u': u0, 'u1': v0}
        return {constant: symexpr.evaluate(integral.bind(params).expr, point)
                for constant, integral in zip(self.constants, self.integrals)}

    def __str__(self):
        return 'u(t) = ' + symexpr.to_string(self.u_of_t)


def first_integral(ns, L, settings=None):
    """Noether's theorem for the symmetry `ns` of `L`. """
    if not check_noether(ns.field, ns.gauge, L, settings):
        raise errors.NotASymmetryError(f'{ns.name or ns.field} is not Noether')
    xi, eta = ns.field.xi, ns.field.eta
    expr = (xi * L.expr + (eta - u1 * xi) * sympy.diff(L.expr, u1) -
            ns.gauge.B)
    return FirstIntegral(canonical(expr), ns.name)


def verify_symbolic(I, eom, params=None, settings=None):
    """True iff D(I) vanishes on-shell. """
    return symexpr.is_zero(total_derivative(I.expr, eom), params, settings)


""" Numerics """


def rk4_step(f, t0, y, h):
    k1 = f(t0, y)
    k2 = f(t0 + h / 2, y + h / 2 * k1)
    k3 = f(t0 + h / 2, y + h / 2 * k2)
    k4 = f(t0 + h, y + h * k3)
    return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def integrate_rk4(params, ic, t_end, h, settings=None):
    """Classical fixed-step RK4 for (u, u1)' = (u1, -(c/m) u1 - (k/m) u).

    The step is shrunk so that an integer number of equal steps ends
    exactly at `t_end`; the effective step is stored on the trajectory.
    """
    settings = settings or config.DEFAULTS
    t0, u0, v0 = (float(x) for x in ic)
    if not h > 0:
        raise ValueError(f'step must be positive, got {h}')
    if not t_end > t0:
        raise ValueError(f't_end {t_end} must exceed t0 {t0}')

    steps = int(math.ceil((t_end - t0) / h - 1e-9))
    if steps > settings.max_steps:
        raise errors.StepOverflowError(steps, settings.max_steps)
    effective = (t_end - t0) / steps
    if abs(effective - h) > 1e-9 * h:
        log.warn(f'RK4 step {h:g} shrunk to {effective:.6g} to end at '
                 f't = {t_end:g}')
    h = effective

    p = float(params.c / params.m)
    q = float(params.k / params.m)

    def f(_, y):
        return np.array([y[1], -p * y[1] - q * y[0]])

    ys = np.empty((steps + 1, 2))
    ys[0] = (u0, v0)
    times = t0 + h * np.arange(steps + 1)
    for i in range(steps):
        ys[i + 1] = rk4_step(f, times[i], ys[i], h)
    return Trajectory(times, ys[:, 0].copy(), ys[:, 1].copy(), h, params,
                      (t0, u0, v0))


def conservation_drift(I, traj, settings=None):
    """Max |I(t_i) - I(t_0)| relative to the size of the terms of I.

    The size is the largest summed magnitude of the terms of I over the
    samples, plus eps_abs. Integrals that vanish on the initial condition,
    or whose terms cancel, are measured against what the terms can carry.
    """
    settings = settings or config.DEFAULTS
    expr = canonical(I.expr.subs(traj.params.bindings()))
    samples = (traj.t, traj.u, traj.u1)
    values = symexpr.numeric(expr)(*samples)
    magnitude = np.zeros_like(values)
    for term in sympy.Add.make_args(expr):
        magnitude = magnitude + np.abs(symexpr.numeric(term)(*samples))
    denominator = float(np.max(magnitude)) + settings.eps_abs
    return float(np.max(np.abs(values - values[0])) / denominator)


def write_csv(traj, stream):
    """Export `t,u,u1` rows with 17 significant digits. """
    np.savetxt(stream, np.column_stack([traj.t, traj.u, traj.u1]),
               delimiter=',', header='t,u,u1', comments='', fmt='%.17g')


def convergence_ratio(params, ic, t_end, h, exact):
    """Final-time error at step h over the error at h/2. """
    target = symexpr.numeric(exact.subs(params.bindings()), variables=(t,))

    def final_error(step):
        traj = integrate_rk4(params, ic, t_end, step)
        return abs(traj.u[-1] - float(target(np.array(traj.t[-1]))))

    return final_error(h) / final_error(h / 2)


""" Comparing and combining integrals """


def integrals_match(a, b, params=None, settings=None):
    """Whether a = lambda b + kappa for constants lambda != 0, kappa.

    Returns (matched, lambda).
    """
    ea, eb = a.expr, b.expr
    if params is not None:
        ea, eb = ea.subs(params.bindings()), eb.subs(params.bindings())
    ea, eb = canonical(ea), canonical(eb)
    point = {'t': 0.37, 'u': 0.61, 'u1': -0.43}
    scale = None
    for v in (u1, u, t):
        db = sympy.diff(eb, v)
        if db == 0:
            continue
        denominator = symexpr.evaluate(db, point)
        if abs(denominator) > 1e-12:
            scale = symexpr.evaluate(sympy.diff(ea, v), point) / denominator
            break
    if scale is None or abs(scale) < 1e-12:
        return False, None
    lam = sympy.Float(scale, 17)
    difference = ea - lam * eb
    matched = all(symexpr.is_zero(sympy.diff(difference, v), settings=settings)
                  for v in symexpr.VARIABLES)
    return matched, (scale if matched else None)


def jacobian_rank(integrals, params, count=5, seed=11):
    """Smallest rank of d(I_i)/d(u, u1) over random points (t, u, u1). """
    rng = np.random.default_rng(seed)
    gradients = [[symexpr.numeric(sympy.diff(I.expr, v), params)
                  for v in (u, u1)] for I in integrals]
    ranks = []
    for point in rng.uniform(-1.0, 1.0, (count, 3)):
        matrix = np.array([[float(g(*point)) for g in row]
                           for row in gradients])
        ranks.append(int(np.linalg.matrix_rank(matrix)))
    return min(ranks)


def _affine_coefficients(I):
    try:
        poly = sympy.Poly(canonical(I.expr), u, u1)
    except sympy.PolynomialError:
        raise errors.NonAffineIntegralError(f'{I} is not polynomial in u, u1')
    if poly.total_degree() > 1 or any(
            coeff.has(u, u1) for coeff in poly.coeffs()):
        raise errors.NonAffineIntegralError(f'{I} is not affine in u, u1')
    return (poly.coeff_monomial(u), poly.coeff_monomial(u1),
            poly.coeff_monomial(1))


def reconstruct_solution(I_a, I_b, regime='', names=None, settings=None):
    """Solve {I_a = C_a, I_b = C_b} for u(t), eliminating u1. """
    names = names or (I_a.provenance or 'C_a', I_b.provenance or 'C_b')
    a1, b1, c1 = _affine_coefficients(I_a)
    a2, b2, c2 = _affine_coefficients(I_b)
    det = canonical(a1 * b2 - a2 * b1)
    if symexpr.is_zero(det, settings=settings):
        raise errors.SingularSystemError(
            f'{I_a} and {I_b} do not determine u')
    C_a, C_b = (sympy.Symbol(name, real=True) for name in names)
    with log.with_feedback(f'Eliminating u1 from {names[0]}, {names[1]}'):
        numerator = canonical((C_a - c1) * b2 - (C_b - c2) * b1)
        if len(sympy.Add.make_args(det)) > 1:
            solution = canonical(sympy.cancel(numerator / det))
        else:
            solution = canonical(numerator / det)
    return ClosedFormSolution(solution, (C_a, C_b), (I_a, I_b), regime)


def fit_constants(solution, traj):
    """Values of the solution constants at the first sample of `traj`. """
    return solution.fit(traj.ic, traj.params)


def solution_deviation(solution, traj):
    """Max |u_closed(t_i) - u_i| with constants fit at the first sample. """
    bindings = fit_constants(solution, traj)
    expr = solution.u_of_t.subs(bindings)
    closed = symexpr.numeric(expr, traj.params, (t,))(traj.t)
    return float(np.max(np.abs(closed - traj.u)))
