""" Damped harmonic oscillator

Regime classification, the Bateman Lagrangian and its gauge-equivalent
alternative, the printed generator/integral/solution catalogs per damping
regime, and the audit that checks every printed form against the solver.
"""
import dataclasses
import enum
from typing import Dict, Tuple

import sympy

from . import config, errors, liealgebra, log, symexpr, utils
from .conservation import (ClosedFormSolution, FirstIntegral,
                           conservation_drift, first_integral, integrate_rk4,
                           reconstruct_solution, solution_deviation,
                           verify_symbolic)
from .noether_solver import (NoetherSymmetry, integrate_total, same_span,
                             solve_dho, solve_gauge)
from .symexpr import canonical, t, u, u1
from .variational import Lagrangian, VectorField, euler_lagrange


class Regime(enum.Enum):
    OVER = 'over'
    UNDER = 'under'
    CRITICAL = 'critical'

    @property
    def label(self):
        return self.value.capitalize()


@dataclasses.dataclass(frozen=True)
class DampingRegime:
    kind: Regime
    discriminant: sympy.Rational

    def __str__(self):
        return f'{self.kind.label} (c^2 - 4km = {self.discriminant})'


def classify(params):
    """Sign of c^2 - 4km, compared exactly. """
    d = params.discriminant
    if d > 0:
        kind = Regime.OVER
    elif d < 0:
        kind = Regime.UNDER
    else:
        kind = Regime.CRITICAL
    return DampingRegime(kind, d)


def standard_params(regime, settings=None):
    settings = settings or config.DEFAULTS
    triple = dict(settings.standard_params)[Regime(regime).value]
    return symexpr.Params(*triple)


""" Lagrangians """

BATEMAN = 'exp(c*t/m)*(m*u1^2 - k*u^2)/2'
NEW = 'exp(c*t/m)/(4*m^2)*(2*m^2*u1^2 + 2*c*m*u*u1 + (c^2 - 2*k*m)*u^2)'


def bateman(params=None):
    """L = exp(ct/m)(m u1^2 - k u^2)/2, symbolic unless `params` is given. """
    L = Lagrangian.parse(BATEMAN)
    return L.bind(params) if params is not None else L


def new_lagrangian(params=None):
    L = Lagrangian.parse(NEW)
    return L.bind(params) if params is not None else L


def gauge_decompose(L1, L2, settings=None):
    """Find (scale, F) with L1 = scale L2 + D(F), or None.

    The scale is fixed by the u1^2 coefficients; what is left must be the
    total derivative of some F(t, u).
    """
    try:
        p1 = sympy.Poly(canonical(L1.expr), u1)
        p2 = sympy.Poly(canonical(L2.expr), u1)
    except sympy.PolynomialError:
        return None
    a1, a2 = p1.coeff_monomial(u1 ** 2), p2.coeff_monomial(u1 ** 2)
    if a2 == 0 or symexpr.is_zero(a2, settings=settings):
        return None
    scale = canonical(sympy.cancel(a1 / a2))
    if scale.has(t, u) or symexpr.is_zero(scale, settings=settings):
        return None
    F = integrate_total(L1.expr - scale * L2.expr, settings)
    if F is None:
        return None
    return scale, F


""" Printed catalogs """

S = 'sqrt(c^2 - 4*k*m)'
T = 'sqrt(4*k*m - c^2)'
R = 'sqrt(k/m)'

# (name, xi, eta) of the general set, valid for any m, c, k
GENERAL_GENERATORS = (
    ('X1', '1', '-c*u/(2*m)'),
    ('X2', f'sin({T}*t/m)',
     f'u*{T}/(2*m)*cos({T}*t/m) - c*u/(2*m)*sin({T}*t/m)'),
    ('X3', f'cos({T}*t/m)',
     f'-(u*{T}/(2*m)*sin({T}*t/m) + c*u/(2*m)*cos({T}*t/m))'),
    ('X4', '0', f'exp((-c - {S})*t/(2*m))'),
    ('X5', '0', f'exp((-c + {S})*t/(2*m))'),
)

GENERAL_INTEGRALS = (
    '-exp(c*t/m)*(m*u1^2 + c*u*u1 + k*u^2)',
    f'-exp(c*t/m)/(4*m)*(2*m^2*u1^2 + 2*m*u*(c*u1 - k*u) + c^2*u^2)'
    f'*sin({T}*t/m)'
    f' + exp(c*t/m)/(4*m)*u*{T}*(c*u + 2*m*u1)*cos({T}*t/m)',
    f'-exp(c*t/m)/(4*m)*(2*m^2*u1^2 + 2*m*u*(c*u1 - k*u) + c^2*u^2)'
    f'*cos({T}*t/m)'
    f' - exp(c*t/m)/(4*m)*u*{T}*(c*u + 2*m*u1)*sin({T}*t/m)',
    f'exp(c*t/m)*exp(-(c + {S})*t/(2*m))*m*u1'
    f' + (c + {S})/2*u*exp((c - {S})*t/(2*m))',
    f'exp(c*t/m)*exp((-c + {S})*t/(2*m))*m*u1'
    f' + (c - {S})/2*u*exp((c + {S})*t/(2*m))',
)

_OVER_QUADRATIC = ('-4*k*m*exp(c*t/m)*(2*m^2*u1^2 + 2*m*(c*u*u1 - k*u^2)'
                   ' + c^2*u^2)')
_OVER_LINEAR = ('exp(c*t/m)*(c*u^2 + 2*m*u*u1)'
                f'*(c^2*{S} - (c^2 - 4*k*m)^(3/2))')


@dataclasses.dataclass(frozen=True)
class PrintedForms:
    generators: Tuple[Tuple[str, str, str], ...]
    integrals: Tuple[str, ...]
    # u(t) with two named constants, and the integrals they stand for
    solution: str
    constants: Tuple[str, str]
    constant_integrals: Tuple[str, str]
    table: Tuple[Tuple[str, ...], ...]
    notes: Tuple[str, ...] = ()


PRINTED = {
    Regime.OVER: PrintedForms(
        generators=(
            ('X1', '1', '-c*u/(2*m)'),
            ('X2', f'sinh({S}*t/m)',
             f'u*{S}/(2*m)*cosh({S}*t/m) - c*u/(2*m)*sinh({S}*t/m)'),
            ('X3', f'cosh({S}*t/m)',
             f'-(u*{S}/(2*m)*sinh({S}*t/m) + c*u/(2*m)*cosh({S}*t/m))'),
            ('X4', '0', f'exp((-c - {S})*t/(2*m))'),
            ('X5', '0', f'exp((-c + {S})*t/(2*m))'),
        ),
        integrals=(
            GENERAL_INTEGRALS[0],
            f'1/(16*k*m^2)*({_OVER_QUADRATIC}*sinh({S}*t/m)'
            f' + {_OVER_LINEAR}*cosh({S}*t/m))',
            f'1/(16*k*m^2)*({_OVER_QUADRATIC}*cosh({S}*t/m)'
            f' + {_OVER_LINEAR}*sinh({S}*t/m))',
            GENERAL_INTEGRALS[3],
            GENERAL_INTEGRALS[4],
        ),
        solution=(f'2*m/(c^2 - 4*k*m)*(I4*exp((-c + {S})*t/(2*m))'
                  f' - I5*exp((-c - {S})*t/(2*m)))'),
        constants=('I4', 'I5'),
        constant_integrals=(GENERAL_INTEGRALS[3], GENERAL_INTEGRALS[4]),
        table=(
            ('0', f'{S}/m*X3', f'{S}/m*X2', f'-{S}/(2*m)*X4',
             f'{S}/(2*m)*X5'),
            (f'-{S}/m*X3', '0', f'-{S}/m*X1', f'-{S}/(2*m)*X5',
             f'-{S}/(2*m)*X4'),
            (f'-{S}/m*X2', f'{S}/m*X1', '0', f'-{S}/(2*m)*X5',
             f'{S}/(2*m)*X4'),
            (f'{S}/(2*m)*X4', f'{S}/(2*m)*X5', f'{S}/(2*m)*X5', '0', '0'),
            (f'-{S}/(2*m)*X5', f'{S}/(2*m)*X4', f'-{S}/(2*m)*X4', '0', '0'),
        ),
        notes=(
            'X2 is printed with a factor iota; stored without it, a '
            'constant multiple of a symmetry being a symmetry',
            'the printed solution has no t in its exponents; stored with '
            'exponents (-c +- sqrt(c^2 - 4km)) t/(2m)',
        ),
    ),
    Regime.UNDER: PrintedForms(
        generators=GENERAL_GENERATORS[:3] + (
            ('G4', '0', f'exp(-c*t/(2*m))*cos({T}*t/(2*m))'),
            ('G5', '0', f'exp(-c*t/(2*m))*sin({T}*t/(2*m))'),
        ),
        integrals=GENERAL_INTEGRALS[:3] + (
            f'exp(c*t/(2*m))*((m*u1 + c*u/2)*cos({T}*t/(2*m))'
            f' + u*{T}/2*sin({T}*t/(2*m)))',
            f'exp(c*t/(2*m))*((m*u1 + c*u/2)*sin({T}*t/(2*m))'
            f' - u*{T}/2*cos({T}*t/(2*m)))',
        ),
        solution=(f'1/{T}*exp(-c*t/(2*m))*(C1*sin({T}*t/(2*m))'
                  f' - C2*cos({T}*t/(2*m)))'),
        constants=('C1', 'C2'),
        constant_integrals=(
            f'2*exp(c*t/(2*m))*((m*u1 + c*u/2)*cos({T}*t/(2*m))'
            f' + u*{T}/2*sin({T}*t/(2*m)))',
            f'2*exp(c*t/(2*m))*((m*u1 + c*u/2)*sin({T}*t/(2*m))'
            f' - u*{T}/2*cos({T}*t/(2*m)))',
        ),
        table=(
            ('0', f'{T}/m*X3', f'-{T}/m*X2', f'-{T}/(2*m)*X5',
             f'{T}/(2*m)*X4'),
            (f'-{T}/m*X3', '0', f'-{T}/m*X1', f'-{T}/(2*m)*X4',
             f'{T}/(2*m)*X5'),
            (f'{T}/m*X2', f'{T}/m*X1', '0', f'{T}/(2*m)*X5',
             f'{T}/(2*m)*X4'),
            (f'{T}/(2*m)*X5', f'{T}/(2*m)*X4', f'-{T}/(2*m)*X5', '0', '0'),
            (f'-{T}/(2*m)*X4', f'-{T}/(2*m)*X5', f'-{T}/(2*m)*X4', '0', '0'),
        ),
        notes=(
            'the complex translations X4, X5 are stored as their real and '
            'imaginary parts G4, G5; the constants are C1 = 2 I4, C2 = 2 I5',
        ),
    ),
    Regime.CRITICAL: PrintedForms(
        generators=(
            ('X1', '0', f'exp(-{R}*t)'),
            ('X2', '0', f't*exp(-{R}*t)'),
            ('X3', '1', f'-{R}*u'),
            ('X4', 't', f'-1/2*(2*t*{R} - 1)*u'),
            ('X5', 't^2/2', f'-1/2*(t^2*{R} - t)*u'),
        ),
        integrals=(
            f'exp({R}*t)*({R}*u + u1)',
            f'exp({R}*t)*({R}*t*u + t*u1 - u)',
            f'exp({R}*t)^2*(k*u^2/(2*m) + {R}*u*u1 + u1^2/2)',
            f'exp({R}*t)^2*(t/2*({R}*u + u1)^2'
            f' - ({R}*t*u - u/2 + t*u1)*({R}*u + u1))',
            f'u^2/4*exp(2*t*{R}) + t/(4*m)*(2*m*u*(t*u1 - u)*{R}'
            f' + t*m*u1^2 + t*k*u^2 - 2*m*u*u1)*exp({R}*t)^2',
        ),
        solution=f'exp(-{R}*t)*(I1*t - I2)',
        constants=('I1', 'I2'),
        constant_integrals=(
            f'exp({R}*t)*({R}*u + u1)',
            f'exp({R}*t)*({R}*t*u + t*u1 - u)',
        ),
        table=(
            ('0', '0', '0', 'X1/2', 'X2/2'),
            ('0', '0', '-X1', '-X2/2', '0'),
            ('0', 'X1', '0', 'X3', 'X4'),
            ('-X1/2', 'X2/2', '-X3', '0', 'X5'),
            ('-X2/2', '0', '-X4', '-X5', '0'),
        ),
        notes=(
            'X5 and I5 are claimed new relative to an earlier '
            'classification that is not available here; the novelty claim '
            'is not audited',
        ),
    ),
}

# Solver indices of the integrals that are affine in (u, u1)
SOLUTION_PAIRS = {
    Regime.OVER: (3, 4),
    Regime.UNDER: (3, 4),
    Regime.CRITICAL: (0, 1),
}

TABLE_NAMES = ('X1', 'X2', 'X3', 'X4', 'X5')


def _parse_bound(text, params, declared=()):
    return symexpr.substitute(symexpr.parse(text, declared), params.bindings())


def general_symmetries():
    """The five generators and integrals for symbolic m, c, k.

    Returned as (name, field, integral) for display; the radicals stay
    symbolic, so no regime is assumed.
    """
    return [(name, VectorField(symexpr.parse(xi), symexpr.parse(eta)),
             FirstIntegral(symexpr.parse(integral), name))
            for (name, xi, eta), integral in zip(GENERAL_GENERATORS,
                                                 GENERAL_INTEGRALS)]


def claimed_table(regime, params=None):
    """Printed commutator table as {(i, j): {l: coeff}}, 1-based. """
    names = [sympy.Symbol(name, real=True) for name in TABLE_NAMES]
    bindings = params.bindings() if params is not None else {}
    table = {}
    for i, row in enumerate(PRINTED[regime].table, start=1):
        for j, entry in enumerate(row, start=1):
            expr = symexpr.parse(entry, TABLE_NAMES).subs(bindings)
            table[(i, j)] = {l: sympy.diff(expr, X)
                             for l, X in enumerate(names, start=1)
                             if sympy.diff(expr, X) != 0}
    return table


@dataclasses.dataclass(frozen=True)
class RegimeCatalog:
    regime: DampingRegime
    params: symexpr.Params
    symmetries: Tuple[NoetherSymmetry, ...]
    integrals: Tuple[FirstIntegral, ...]
    solution: ClosedFormSolution
    printed_fields: Tuple[VectorField, ...]
    printed_integrals: Tuple[FirstIntegral, ...]
    printed_solution: ClosedFormSolution
    claimed: Dict[Tuple[int, int], Dict[int, sympy.Expr]]
    notes: Tuple[str, ...] = ()

    @property
    def names(self):
        return tuple(ns.name for ns in self.symmetries)

    @property
    def fields(self):
        return tuple(ns.field for ns in self.symmetries)


def catalog(regime, params, settings=None):
    """Instantiate the printed forms of `regime` at `params`.

    Gauges are derived. A printed generator that fails the Noether
    condition is replaced by the solved generator in the same position,
    a printed integral that is not conserved by Noether's theorem applied
    to its generator; each replacement leaves a note.
    """
    kind = regime.kind if isinstance(regime, DampingRegime) else Regime(regime)
    regime = classify(params)
    if regime.kind is not kind:
        raise ValueError(f'{params} is not {kind.value}-damped')
    printed = PRINTED[regime.kind]
    L = bateman(params)
    eom = euler_lagrange(L, settings)
    notes = list(printed.notes)
    solved = None

    fields, symmetries = [], []
    for index, (name, xi, eta) in enumerate(printed.generators):
        field = VectorField(_parse_bound(xi, params), _parse_bound(eta, params))
        fields.append(field)
        gauge = solve_gauge(field, L, settings)
        if gauge is None:
            if solved is None:
                solved = solve_dho(L, params, settings)
            replacement = solved[index]
            notes.append(f'{name} as printed is not a Noether symmetry; '
                         f'replaced by {replacement.field}')
            symmetries.append(dataclasses.replace(replacement, name=name))
        else:
            symmetries.append(NoetherSymmetry(field, gauge, name))

    printed_integrals, integrals = [], []
    for ns, text in zip(symmetries, printed.integrals):
        integral = FirstIntegral(_parse_bound(text, params), ns.name)
        printed_integrals.append(integral)
        if verify_symbolic(integral, eom, settings=settings):
            integrals.append(integral)
        else:
            derived = first_integral(ns, L, settings)
            notes.append(f'I for {ns.name} as printed is not conserved; '
                         f'Noether gives {derived}')
            integrals.append(derived)

    constants = tuple(sympy.Symbol(name, real=True)
                      for name in printed.constants)
    printed_solution = ClosedFormSolution(
        _parse_bound(printed.solution, params, printed.constants),
        constants,
        tuple(FirstIntegral(_parse_bound(text, params), name)
              for name, text in zip(printed.constants,
                                    printed.constant_integrals)),
        regime.kind.value)
    solution = printed_solution
    if regime.kind is Regime.OVER:
        a, b = SOLUTION_PAIRS[regime.kind]
        solution = reconstruct_solution(integrals[a], integrals[b],
                                        regime.kind.value, printed.constants,
                                        settings)

    return RegimeCatalog(
        regime=regime,
        params=params,
        symmetries=tuple(symmetries),
        integrals=tuple(integrals),
        solution=solution,
        printed_fields=tuple(fields),
        printed_integrals=tuple(printed_integrals),
        printed_solution=printed_solution,
        claimed=claimed_table(regime.kind, params),
        notes=tuple(notes),
    )


""" Audit """

PASS = 'pass'
FAIL = 'fail'
NOTE = 'note'


@dataclasses.dataclass(frozen=True)
class AuditItem:
    item: str
    status: str
    note: str = ''


@dataclasses.dataclass(frozen=True)
class AuditReport:
    catalog: RegimeCatalog
    items: Tuple[AuditItem, ...]
    table: liealgebra.CommutatorTable = None

    @property
    def failures(self):
        return [item for item in self.items if item.status == FAIL]

    @property
    def ok(self):
        return not self.failures


def _check(item, ok, note=''):
    return AuditItem(item, PASS if ok else FAIL, note)


def audit_catalog(regime, params, settings=None):
    """Check every printed form of `regime` at `params`.

    Failures are items of the report, never exceptions.
    """
    settings = settings or config.DEFAULTS
    with log.with_feedback(f'Instantiating the {classify(params)} catalog'):
        cat = catalog(regime, params, settings)
    L = bateman(params)
    eom = euler_lagrange(L, settings)
    items = []

    for name, field, ns in zip(cat.names, cat.printed_fields, cat.symmetries):
        ok = solve_gauge(field, L, settings) is not None
        items.append(_check(f'noether {name}', ok,
                            '' if ok else f'corrected: {ns.field}'))

    for printed, integral in zip(cat.printed_integrals, cat.integrals):
        ok = verify_symbolic(printed, eom, settings=settings)
        items.append(_check(f'integral I({printed.provenance})', ok,
                            '' if ok else f'corrected: {integral}'))

    trajectories = []
    for ic in settings.ic_suite:
        with log.with_feedback(f'Integrating from {utils.format_ic(ic)}'):
            trajectories.append(integrate_rk4(
                params, ic, settings.t_end, settings.step, settings))
    for integral in cat.integrals:
        for traj in trajectories:
            drift = conservation_drift(integral, traj, settings)
            ic = utils.format_ic(traj.ic)
            items.append(_check(f'drift I({integral.provenance}) ic={ic}',
                                drift < settings.drift_tolerance,
                                f'{drift:.2e}'))

    items.append(_check('solution residual', symexpr.is_zero(
        cat.solution.residual(params), settings=settings)))
    for label, solution in (('printed solution', cat.printed_solution),
                            ('solution', cat.solution)):
        if label == 'printed solution' and solution is cat.solution:
            continue
        for traj in trajectories:
            deviation = solution_deviation(solution, traj)
            ok = deviation < settings.solution_tolerance
            note = f'{deviation:.2e}'
            if not ok and solution is cat.printed_solution:
                note += f'; derived {cat.solution}'
            items.append(_check(f'{label} ic={utils.format_ic(traj.ic)}',
                                ok, note))

    table = None
    try:
        with log.with_feedback('Computing structure constants'):
            table = liealgebra.structure_constants(
                cat.fields, params, settings, cat.names)
    except (errors.NotClosedError, errors.DependentBasisError) as e:
        items.append(_check('closure', False, str(e)))
    else:
        items.append(_check('closure', True))
        items.append(_check('jacobi', liealgebra.jacobi_check(table,
                                                              settings)))
        if cat.regime.kind is Regime.UNDER:
            items.append(_check('[G4, G5] = 0', table.describe(3, 4) == '0'))
        for d in liealgebra.audit_table(table, cat.claimed, params):
            items.append(AuditItem(
                f'table [{cat.names[d.i - 1]}, {cat.names[d.j - 1]}]', FAIL,
                f'printed {d.claimed}; computed {d.computed}'))

    with log.with_feedback('Solving the determining equations'):
        solved = solve_dho(L, params, settings)
    items.append(_check('span', same_span(
        [ns.field for ns in solved], cat.fields)))

    items.extend(AuditItem('remark', NOTE, note) for note in cat.notes)
    return AuditReport(cat, tuple(items), table)


def audit_equivalence(L, params, settings=None):
    """Compare `L` with the Bateman Lagrangian at `params`.

    Gauge-equivalent Lagrangians share their equation of motion and their
    Noether symmetries.
    """
    B = bateman(params)
    L = L.bind(params)
    found = gauge_decompose(L, B, settings)
    note = ''
    if found is not None:
        scale, F = found
        note = (f'L = ({symexpr.to_string(scale)}) L_B + '
                f'D({symexpr.to_string(F)})')
    items = [_check('gauge equivalence', found is not None, note)]

    same_eom = symexpr.is_zero(euler_lagrange(L, settings).w -
                               euler_lagrange(B, settings).w,
                               settings=settings)
    items.append(_check('equation of motion', same_eom))
    with log.with_feedback('Solving the determining equations of L'):
        ours = solve_dho(L, params, settings)
    theirs = solve_dho(B, params, settings)
    items.append(_check('symmetry span', same_span(
        [ns.field for ns in ours], [ns.field for ns in theirs])))
    return items


""" Export """


def generators_json(symmetries):
    return [{'name': ns.name,
             'xi': symexpr.to_string(ns.field.xi),
             'eta': symexpr.to_string(ns.field.eta),
             'gauge': symexpr.to_string(ns.gauge.B)} for ns in symmetries]


def to_json(report):
    cat = report.catalog
    return {
        'regime': cat.regime.kind.value,
        'params': [str(x) for x in cat.params.as_tuple()],
        'generators': generators_json(cat.symmetries),
        'integrals': [str(I) for I in cat.integrals],
        'solution': symexpr.to_string(cat.solution.u_of_t),
        'table': (liealgebra.to_json(report.table)
                  if report.table is not None else None),
        'audit': [dataclasses.asdict(item) for item in report.items],
    }
