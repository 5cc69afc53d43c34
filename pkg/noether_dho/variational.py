""" Variational calculus

Total derivative, Euler-Lagrange operator and first prolongation of point
vector fields Z = xi(t,u) d/dt + eta(t,u) d/du.
"""
import dataclasses

import sympy

from . import errors, symexpr
from .symexpr import U2, canonical, t, u, u1


@dataclasses.dataclass(frozen=True)
class Lagrangian:
    expr: sympy.Expr

    @classmethod
    def parse(cls, text):
        return cls(symexpr.parse(text))

    def bind(self, params):
        """Instantiate the parameters m, c, k. """
        return Lagrangian(symexpr.substitute(self.expr, params.bindings()))

    def __str__(self):
        return symexpr.to_string(self.expr)


@dataclasses.dataclass(frozen=True)
class EquationOfMotion:
    """u'' = w(t, u, u1) """
    w: sympy.Expr

    def bind(self, params):
        return EquationOfMotion(symexpr.substitute(self.w, params.bindings()))

    def __str__(self):
        return 'u2 = ' + symexpr.to_string(self.w)


@dataclasses.dataclass(frozen=True)
class VectorField:
    xi: sympy.Expr
    eta: sympy.Expr

    def __post_init__(self):
        object.__setattr__(self, 'xi', sympy.sympify(self.xi))
        object.__setattr__(self, 'eta', sympy.sympify(self.eta))
        for component in (self.xi, self.eta):
            if component.has(u1):
                raise ValueError(
                    f'point field component depends on u1: {component}')

    def __add__(self, other):
        return VectorField(self.xi + other.xi, self.eta + other.eta)

    def __sub__(self, other):
        return VectorField(self.xi - other.xi, self.eta - other.eta)

    def scale(self, factor):
        return VectorField(factor * self.xi, factor * self.eta)

    def canonical(self):
        return VectorField(canonical(self.xi), canonical(self.eta))

    def subs(self, bindings):
        return VectorField(symexpr.substitute(self.xi, bindings),
                           symexpr.substitute(self.eta, bindings))

    def is_zero(self, params=None, settings=None):
        return (symexpr.is_zero(self.xi, params, settings) and
                symexpr.is_zero(self.eta, params, settings))

    def __str__(self):
        return '(%s) d/dt + (%s) d/du' % (
            symexpr.to_string(self.xi), symexpr.to_string(self.eta))


ZERO_FIELD = VectorField(sympy.Integer(0), sympy.Integer(0))


@dataclasses.dataclass(frozen=True)
class ProlongedField:
    base: VectorField
    eta1: sympy.Expr

    def apply(self, f):
        """Z^[1](f) for f(t, u, u1) """
        return canonical(self.base.xi * sympy.diff(f, t) +
                         self.base.eta * sympy.diff(f, u) +
                         self.eta1 * sympy.diff(f, u1))


def apply_field(Z, f):
    """Z(f) = xi f_t + eta f_u for f(t, u) """
    return canonical(Z.xi * sympy.diff(f, t) + Z.eta * sympy.diff(f, u))


def total_derivative(e, eom=None):
    """D = d/dt + u1 d/du + u2 d/du1, truncated at first order.

    Without `eom` the result carries the formal symbol u2; with it the
    derivative is taken on-shell, u2 replaced by w.
    """
    e = sympy.sympify(e)
    second = U2 if eom is None else eom.w
    return canonical(sympy.diff(e, t) + u1 * sympy.diff(e, u) +
                     second * sympy.diff(e, u1))


def is_quadratic(L):
    """L is a polynomial of degree <= 2 in (u, u1) with coefficients in t. """
    try:
        poly = sympy.Poly(canonical(L.expr), u, u1)
    except sympy.PolynomialError:
        return False
    return poly.total_degree() <= 2 and not any(
        coeff.has(u, u1) for coeff in poly.coeffs())


def euler_lagrange(L, settings=None):
    """Solve d/dt(dL/du1) - dL/du = 0 for u''. """
    momentum = sympy.diff(L.expr, u1)
    el = total_derivative(momentum) - canonical(sympy.diff(L.expr, u))
    # linear in u2 for the supported class
    leading = canonical(sympy.diff(el, U2))
    if leading == 0 or (not leading.has(U2) and
                        symexpr.is_zero(leading, settings=settings)):
        raise errors.DegenerateLagrangianError(L)
    if leading.has(U2):
        raise errors.AnsatzMismatchError('Euler-Lagrange is nonlinear in u2')
    rest = canonical(el.subs(U2, 0))
    return EquationOfMotion(canonical(-rest / leading))


def prolong(Z):
    """First prolongation: eta1 = eta_t + (eta_u - xi_t) u1 - xi_u u1^2 """
    eta1 = (sympy.diff(Z.eta, t) + sympy.diff(Z.eta, u) * u1 -
            sympy.diff(Z.xi, t) * u1 - sympy.diff(Z.xi, u) * u1 ** 2)
    return ProlongedField(Z, canonical(eta1))


def noether_residual(Z, B, L):
    """Z^[1](L) + D(xi) L - D(B); vanishes iff (Z, B) is Noether for L. """
    return canonical(prolong(Z).apply(L.expr) +
                     total_derivative(Z.xi) * L.expr -
                     total_derivative(B))
