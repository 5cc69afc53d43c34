""" Noether symmetries of quadratic Lagrangians

The Noether condition Z^[1](L) + D(xi) L = D(B) is expanded under the
ansatz xi = alpha(t), eta = beta(t) u + gamma(t),
B = delta(t) u^2 + epsilon(t) u + zeta(t). Collecting monomials in (u, u1)
gives six coefficient equations. Three of them are algebraic in beta,
delta, epsilon; the remaining two are constant-coefficient linear ODEs for
alpha and gamma, solved through their characteristic roots.
"""
import dataclasses

import numpy as np
import sympy

from . import errors, log, symexpr
from .symexpr import canonical, t, u, u1
from .variational import (VectorField, is_quadratic, noether_residual,
                          total_derivative)


MONOMIALS = (
    ('u1^2', (0, 2)),
    ('u*u1', (1, 1)),
    ('u1', (0, 1)),
    ('u^2', (2, 0)),
    ('u', (1, 0)),
    ('1', (0, 0)),
)


@dataclasses.dataclass(frozen=True)
class GaugeFunction:
    B: sympy.Expr

    def __post_init__(self):
        object.__setattr__(self, 'B', sympy.sympify(self.B))
        if self.B.has(u1):
            raise ValueError(f'gauge function depends on u1: {self.B}')


@dataclasses.dataclass(frozen=True)
class NoetherSymmetry:
    field: VectorField
    gauge: GaugeFunction
    name: str = ''

    def __str__(self):
        return f'{self.name}: {self.field}'


@dataclasses.dataclass(frozen=True)
class Ansatz:
    """xi = alpha(t); eta = beta(t) u + gamma(t); B quadratic in u """
    alpha: sympy.Expr = sympy.Function('alpha')(t)
    beta: sympy.Expr = sympy.Function('beta')(t)
    gamma: sympy.Expr = sympy.Function('gamma')(t)
    delta: sympy.Expr = sympy.Function('delta')(t)
    epsilon: sympy.Expr = sympy.Function('epsilon')(t)
    zeta: sympy.Expr = sympy.Function('zeta')(t)

    @property
    def field(self):
        return VectorField(self.alpha, self.beta * u + self.gamma)

    @property
    def gauge(self):
        return self.delta * u ** 2 + self.epsilon * u + self.zeta


@dataclasses.dataclass(frozen=True)
class DeterminingEquation:
    monomial: str
    expr: sympy.Expr

    def __str__(self):
        return f'[{self.monomial}] {self.expr} = 0'


@dataclasses.dataclass(frozen=True)
class ReducedSystem:
    """Determining equations after eliminating beta, delta and epsilon. """
    beta: sympy.Expr
    delta: sympy.Expr
    epsilon: sympy.Expr
    xi_roots: dict
    gamma_roots: dict

    @property
    def dimension(self):
        return sum(self.xi_roots.values()) + sum(self.gamma_roots.values())


def determining_equations(L, ansatz=None):
    """Coefficients of u1^2, u u1, u1, u^2, u, 1 in the Noether residual. """
    ansatz = ansatz or Ansatz()
    residual = noether_residual(ansatz.field, ansatz.gauge, L)
    try:
        poly = sympy.Poly(residual, u, u1)
    except sympy.PolynomialError:
        raise errors.AnsatzMismatchError('residual is not polynomial in u, u1')

    known = {monom for _, monom in MONOMIALS}
    extra = [monom for monom in poly.monoms() if monom not in known]
    if extra:
        raise errors.AnsatzMismatchError(
            'unexpected monomials u^i u1^j with (i, j) in %s' % extra)
    return [DeterminingEquation(label, canonical(poly.coeff_monomial(monom)))
            for label, monom in MONOMIALS]


def _substitute_function(e, function, value, order=3):
    for n in range(order, 0, -1):
        e = e.subs(sympy.Derivative(function, (t, n)),
                   sympy.diff(value, t, n))
    return e.subs(function, value)


def _solve_for(equation, unknown):
    solutions = sympy.solve(equation, unknown)
    if len(solutions) != 1:
        raise errors.AnsatzMismatchError(
            f'cannot isolate {unknown} in {equation}')
    return canonical(solutions[0])


def _characteristic_roots(equation, function):
    """Roots of the characteristic polynomial of a linear ODE in `function`.

    The ODE may carry a common weight (e.g. exp(c t/m)); after dividing it out
    the coefficients have to be constant.
    """
    r = sympy.Dummy('r')
    trial = sympy.exp(r * t)
    expr = canonical(_substitute_function(equation, function, trial) / trial)
    terms = sympy.collect(expr, r, evaluate=False)
    powers = {}
    for key, value in terms.items():
        degree = sympy.degree(key, r) if key != 1 else 0
        powers[degree] = powers.get(degree, 0) + value
    if not powers:
        raise errors.AnsatzMismatchError(f'{function} is unconstrained')
    leading = powers[max(powers)]
    coefficients = {}
    for degree, value in powers.items():
        ratio = canonical(value / leading)
        if ratio.has(t):
            ratio = canonical(sympy.cancel(ratio))
        if ratio.has(t, u, u1):
            raise errors.AnsatzMismatchError(
                f'non-constant coefficient {ratio} in the {function} equation')
        coefficients[degree] = ratio
    polynomial = sympy.Poly(
        sum(coef * r ** degree for degree, coef in coefficients.items()), r)
    roots = sympy.roots(polynomial)
    if sum(roots.values()) != polynomial.degree():
        raise errors.AnsatzMismatchError(
            f'cannot factor characteristic polynomial {polynomial}')
    return roots


def reduce_determining(L, ansatz=None):
    """Eliminate the algebraic unknowns and extract characteristic roots. """
    ansatz = ansatz or Ansatz()
    equations = {eq.monomial: eq.expr
                 for eq in determining_equations(L, ansatz)}

    beta = _solve_for(equations['u1^2'], ansatz.beta)

    def eliminate(e):
        return canonical(_substitute_function(e, ansatz.beta, beta))

    delta = _solve_for(eliminate(equations['u*u1']), ansatz.delta)
    epsilon = _solve_for(equations['u1'], ansatz.epsilon)

    xi_equation = canonical(_substitute_function(
        eliminate(equations['u^2']), ansatz.delta, delta))
    gamma_equation = canonical(_substitute_function(
        equations['u'], ansatz.epsilon, epsilon))

    return ReducedSystem(
        beta=beta,
        delta=delta,
        epsilon=epsilon,
        xi_roots=_characteristic_roots(xi_equation, ansatz.alpha),
        gamma_roots=_characteristic_roots(gamma_equation, ansatz.gamma),
    )


""" Real bases from characteristic roots """


def _split(root):
    real, imag = sympy.re(root), sympy.im(root)
    if real.is_real is None or imag.is_zero is None:
        raise errors.RegimeResolutionError(root)
    return real, imag


def _xi_basis(roots):
    if roots == {0: 3}:
        return ['critical', [sympy.Integer(1), t, t ** 2 / 2]]
    if roots.get(0) != 1 or len(roots) != 3:
        raise errors.AnsatzMismatchError(f'unexpected xi roots {roots}')
    others = [root for root in roots if root != 0]
    real, imag = _split(others[0])
    if imag.is_zero:
        w = abs(real)
        return ['over', [sympy.Integer(1), sympy.sinh(w * t),
                         sympy.cosh(w * t)]]
    w = abs(imag)
    return ['under', [sympy.Integer(1), sympy.sin(w * t), sympy.cos(w * t)]]


def _gamma_basis(roots):
    if len(roots) == 1:
        (root, multiplicity), = roots.items()
        _split(root)
        return ['critical', [sympy.exp(root * t) * t ** j
                             for j in range(multiplicity)]]
    first, second = roots
    real, imag = _split(first)
    if imag.is_zero:
        low, high = sorted((first, second), key=lambda r: float(r))
        return ['over', [sympy.exp(low * t), sympy.exp(high * t)]]
    w = abs(imag)
    return ['under', [sympy.exp(real * t) * sympy.cos(w * t),
                      sympy.exp(real * t) * sympy.sin(w * t)]]


def _generator(beta, alpha, gamma, ansatz):
    b = canonical(_substitute_function(beta, ansatz.alpha, alpha))
    return VectorField(canonical(alpha), canonical(b * u + gamma))


def solve_dho(L, params, settings=None):
    """Five Noether symmetries of a DHO Lagrangian at `params`.

    Ordering follows the regime catalogs: over/under-damped
    [1, sinh|sin, cosh|cos] for xi then the two translations; critical
    [e^{rt}, t e^{rt}] translations then xi in [1, t, t^2/2].
    """
    ansatz = Ansatz()
    bound = L.bind(params)
    if not is_quadratic(bound):
        raise errors.AnsatzMismatchError('Lagrangian is not quadratic in u, u1')

    with log.with_feedback(f'Reducing determining equations at {params}'):
        system = reduce_determining(bound, ansatz)
    xi_regime, xis = _xi_basis(system.xi_roots)
    gamma_regime, gammas = _gamma_basis(system.gamma_roots)
    if xi_regime != gamma_regime:
        raise errors.VerificationError(
            f'xi roots ({xi_regime}) and translation roots ({gamma_regime}) '
            'disagree on the regime')

    zero = sympy.Integer(0)
    rotations = [_generator(system.beta, xi, zero, ansatz) for xi in xis]
    translations = [_generator(system.beta, zero, gamma, ansatz)
                    for gamma in gammas]
    if xi_regime == 'critical':
        fields = translations + rotations
        names = ['X1', 'X2', 'X3', 'X4', 'X5']
    elif xi_regime == 'under':
        fields = rotations + translations
        names = ['X1', 'X2', 'X3', 'G4', 'G5']
    else:
        fields = rotations + translations
        names = ['X1', 'X2', 'X3', 'X4', 'X5']

    symmetries = []
    for name, field in zip(names, fields):
        gauge = solve_gauge(field, bound, settings)
        if gauge is None or not check_noether(field, gauge, bound, settings):
            raise errors.VerificationError(f'{name} = {field}')
        symmetries.append(NoetherSymmetry(field, gauge, name))
    return symmetries


def check_noether(Z, B, L, settings=None):
    """True iff Z^[1](L) + D(xi) L - D(B) vanishes identically. """
    gauge = B.B if isinstance(B, GaugeFunction) else B
    return symexpr.is_zero(noether_residual(Z, gauge, L), settings=settings)


def integrate_total(R, settings=None):
    """F(t, u) with D(F) = R and F(0, 0) = 0, or None.

    R must be affine in u1; D(F) = F_t + u1 F_u, so the u1 coefficient is
    F_u and the rest is F_t.
    """
    R = canonical(R)
    try:
        poly = sympy.Poly(R, u1)
    except sympy.PolynomialError:
        return None
    if poly.degree() > 1:
        # u1^2 terms cannot come from D(F)
        if not all(symexpr.is_zero(coeff, settings=settings)
                   for (power,), coeff in poly.terms() if power > 1):
            return None
    P = canonical(poly.coeff_monomial(u1))
    Q = canonical(poly.coeff_monomial(1))

    try:
        F = sympy.Poly(P, u).integrate().as_expr()
    except sympy.PolynomialError:
        F = sympy.integrate(P, u)
    remainder = canonical(Q - sympy.diff(F, t))
    if not symexpr.is_zero(sympy.diff(remainder, u), settings=settings):
        return None
    F = canonical(F + sympy.integrate(remainder.subs(u, 0), t))
    F = canonical(F - F.subs({t: 0, u: 0}))
    if not symexpr.is_zero(R - total_derivative(F), settings=settings):
        return None
    return F


def solve_gauge(Z, L, settings=None):
    """Recover B(t, u) with D(B) = Z^[1](L) + D(xi) L, B(0, 0) = 0.

    Returns None when the residual is not a total derivative of a
    function of (t, u), i.e. Z is not a Noether symmetry of L.
    """
    B = integrate_total(noether_residual(Z, 0, L), settings)
    return None if B is None else GaugeFunction(B)


""" Spans """


def _sample_points(count, seed):
    rng = np.random.default_rng(seed)
    return rng.uniform(-1.5, 1.5, (count, 2))


def field_matrix(fields, params=None, count=12, seed=7):
    """Rows: fields; columns: xi and eta sampled at points (t, u). """
    points = _sample_points(count, seed)
    rows = []
    for field in fields:
        xi = symexpr.numeric(field.xi, params, (t, u))
        eta = symexpr.numeric(field.eta, params, (t, u))
        rows.append(np.concatenate([xi(points[:, 0], points[:, 1]),
                                    eta(points[:, 0], points[:, 1])]))
    return np.array(rows)


def span_rank(fields, params=None):
    if not fields:
        return 0
    matrix = field_matrix(fields, params)
    return int(np.linalg.matrix_rank(matrix, tol=1e-8 * max(
        1.0, np.abs(matrix).max())))


def same_span(first, second, params=None):
    rank = span_rank(first, params)
    return (rank == span_rank(second, params) ==
            span_rank(list(first) + list(second), params))


def complex_pair(params):
    """The complex translations of the under-damped case (display only).

    Returns (X4, X5) as complex expressions of the coefficient of d/du and
    asserts their real and imaginary parts span the real pair.
    """
    if params.discriminant >= 0:
        raise errors.RegimeResolutionError(params.discriminant)
    a = -params.c / (2 * params.m)
    w = sympy.sqrt(-params.discriminant) / (2 * params.m)
    x4 = sympy.exp(a * t) * (sympy.cos(w * t) - sympy.I * sympy.sin(w * t))
    x5 = sympy.exp(a * t) * (sympy.cos(w * t) + sympy.I * sympy.sin(w * t))
    g4 = sympy.exp(a * t) * sympy.cos(w * t)
    g5 = sympy.exp(a * t) * sympy.sin(w * t)
    if not (symexpr.is_zero(sympy.re(x4) - g4) and
            symexpr.is_zero(sympy.im(x5) - g5)):
        raise errors.VerificationError('complex split of X4, X5')
    return x4, x5
