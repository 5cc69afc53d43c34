import sys

import click

from . import (config, conservation, dho, errors, liealgebra, log,
               noether_solver, symexpr, utils, validation, variational)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DISCREPANCY = 2
EXIT_VERIFICATION = 3


class DhoGroup(click.Group):
    """Maps command outcomes onto the documented exit codes. """

    def main(self, *args, **kwargs):
        kwargs['standalone_mode'] = False
        try:
            rv = super().main(*args, **kwargs)
        except (click.ClickException, click.exceptions.Abort) as e:
            if isinstance(e, click.ClickException):
                e.show()
            sys.exit(EXIT_USAGE)
        except (errors.NoetherError, ValueError) as e:
            log.error(str(e))
            sys.exit(EXIT_VERIFICATION)
        sys.exit(rv or EXIT_OK)


def common_options(f):
    options = [
        click.option('-m', metavar='RATIONAL',
                     callback=validation.validate_rational,
                     help='Mass m > 0, as an integer or p/q.'),
        click.option('-c', metavar='RATIONAL',
                     callback=validation.validate_rational,
                     help='Damping c >= 0, as an integer or p/q.'),
        click.option('-k', metavar='RATIONAL',
                     callback=validation.validate_rational,
                     help='Spring constant k > 0, as an integer or p/q.'),
        click.option('--lagrangian', default='bateman', show_default=True,
                     metavar='bateman|new|expr:STRING',
                     callback=validation.validate_lagrangian,
                     help='Lagrangian of the oscillator.'),
        click.option('--format', 'fmt', type=click.Choice(['text', 'json']),
                     default='text', show_default=True),
        click.option('--tol-zero', type=float,
                     callback=validation.validate_positive,
                     help='Relative tolerance of the zero test.'),
        click.option('--tol-drift', type=float,
                     callback=validation.validate_positive,
                     help='Largest accepted relative drift of an integral.'),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def numeric_options(f):
    options = [
        click.option('--h', 'step', type=float,
                     callback=validation.validate_positive,
                     help='RK4 step (shrunk to end exactly at --t-end).'),
        click.option('--t-end', type=float,
                     callback=validation.validate_positive,
                     help='End of the integration interval.'),
        click.option('--ic', metavar='T0,U0,V0', multiple=True,
                     callback=validation.validate_ic,
                     help='Initial condition; may be repeated.'),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _params(m, c, k):
    if None in (m, c, k):
        raise click.UsageError('-m, -c and -k are required')
    try:
        return symexpr.Params(m, c, k)
    except ValueError as e:
        raise click.UsageError(str(e))


def _settings(tol_zero=None, tol_drift=None, step=None, t_end=None, ic=()):
    settings = config.DEFAULTS.replace(
        zero_tolerance=tol_zero, drift_tolerance=tol_drift, step=step,
        t_end=t_end, ic_suite=tuple(ic) or None)
    for initial in settings.ic_suite:
        if not settings.t_end > initial[0]:
            raise click.BadParameter(
                f't0 = {initial[0]} must be below --t-end {settings.t_end:g}',
                param_hint='--ic')
    return settings


def _emit(fmt, payload, lines):
    if fmt == 'json':
        click.echo(utils.dump_json(payload))
    else:
        log.report(lines)


def _solve(lagrangian, params, settings):
    label, L = lagrangian
    with log.with_feedback(f'Solving the Noether condition for {label}'):
        return noether_solver.solve_dho(L, params, settings)


""" CLI Commands """


@click.group(cls=DhoGroup)
@click.option('-v', '--verbose', is_flag=True, help='Report progress.')
def cli(verbose):
    """Noether symmetries and first integrals of the damped oscillator. """
    log.verbose = verbose


@cli.command()
@common_options
def classify(m, c, k, lagrangian, fmt, tol_zero, tol_drift):
    """Classify the damping regime of (m, c, k). """
    regime = dho.classify(_params(m, c, k))
    _emit(fmt, {'regime': regime.kind.value,
                'discriminant': str(regime.discriminant)}, [str(regime)])


@cli.command()
@common_options
@click.option('--general', is_flag=True,
              help='Print the generators for symbolic m, c, k instead.')
@click.option('--complex', 'complex_', is_flag=True,
              help='Also print X4, X5 in complex form (under-damped only).')
def symmetries(m, c, k, lagrangian, fmt, tol_zero, tol_drift, general,
               complex_):
    """Five Noether symmetries with their gauge functions.

    The generators are solved from the Noether condition of the chosen
    Lagrangian at the given parameters, so the form depends on the regime:
    hyperbolic when over-damped, trigonometric when under-damped and
    polynomial in t when critically damped.
    """
    if general:
        rows = dho.general_symmetries()
        _emit(fmt, {'generators': [
            {'name': name, 'xi': symexpr.to_string(field.xi),
             'eta': symexpr.to_string(field.eta)}
            for name, field, _ in rows]},
            [f'{name} = {field}' for name, field, _ in rows])
        return EXIT_OK

    params = _params(m, c, k)
    regime = dho.classify(params)
    if complex_ and regime.kind != dho.Regime.UNDER:
        raise click.UsageError('--complex needs an under-damped (m, c, k)')
    settings = _settings(tol_zero, tol_drift)
    found = _solve(lagrangian, params, settings)
    payload = {'regime': regime.kind.value,
               'lagrangian': lagrangian[0],
               'generators': dho.generators_json(found)}
    lines = [str(regime)] + utils.columns(
        [(f'{ns.name} =', str(ns.field),
          f'B = {symexpr.to_string(ns.gauge.B)}') for ns in found])
    if complex_:
        pair = noether_solver.complex_pair(params)
        payload['complex'] = [
            {'name': name, 'xi': '0', 'eta': symexpr.to_string(eta)}
            for name, eta in zip(('X4', 'X5'), pair)]
        lines += [f'{name} = (0) d/dt + ({symexpr.to_string(eta)}) d/du'
                  for name, eta in zip(('X4', 'X5'), pair)]
    _emit(fmt, payload, lines)


@cli.command()
@common_options
def integrals(m, c, k, lagrangian, fmt, tol_zero, tol_drift):
    """First integrals from Noether's theorem. """
    params = _params(m, c, k)
    settings = _settings(tol_zero, tol_drift)
    L = lagrangian[1].bind(params)
    found = [conservation.first_integral(ns, L, settings)
             for ns in _solve(lagrangian, params, settings)]
    rank = conservation.jacobian_rank(found, params)
    _emit(fmt,
          {'integrals': [{'name': I.provenance, 'expr': str(I)}
                         for I in found],
           'rank': rank},
          [f'I({I.provenance}) = {I}' for I in found] +
          [f'rank d(I)/d(u, u1) = {rank}'])


@cli.command()
@common_options
def brackets(m, c, k, lagrangian, fmt, tol_zero, tol_drift):
    """Commutator table of the solved generators. """
    params = _params(m, c, k)
    settings = _settings(tol_zero, tol_drift)
    found = _solve(lagrangian, params, settings)
    table = liealgebra.structure_constants(
        [ns.field for ns in found], params, settings,
        [ns.name for ns in found])
    jacobi = liealgebra.jacobi_check(table, settings)
    if not jacobi:
        raise errors.VerificationError('Jacobi identity')
    n = len(table)
    payload = liealgebra.to_json(table)
    payload['jacobi'] = jacobi
    _emit(fmt, payload, utils.columns(
        [(f'[{table.names[i]}, {table.names[j]}] =', table.describe(i, j))
         for i in range(n) for j in range(i + 1, n)]))


@cli.command()
@common_options
@numeric_options
def solve(m, c, k, lagrangian, fmt, tol_zero, tol_drift, step, t_end, ic):
    """Closed-form u(t) from two integrals, checked against RK4. """
    params = _params(m, c, k)
    settings = _settings(tol_zero, tol_drift, step, t_end, ic)
    regime = dho.classify(params)
    L = lagrangian[1].bind(params)
    found = [conservation.first_integral(ns, L, settings)
             for ns in _solve(lagrangian, params, settings)]
    a, b = dho.SOLUTION_PAIRS[regime.kind]
    solution = conservation.reconstruct_solution(
        found[a], found[b], regime.kind.value, settings=settings)
    if not symexpr.is_zero(solution.residual(params), settings=settings):
        raise errors.VerificationError(f'{solution} does not solve the EOM')

    deviations = []
    for initial in settings.ic_suite:
        traj = conservation.integrate_rk4(params, initial, settings.t_end,
                                          settings.step, settings)
        deviations.append(conservation.solution_deviation(solution, traj))
    if max(deviations) >= settings.solution_tolerance:
        raise errors.VerificationError(
            f'{solution} deviates from RK4 by {max(deviations):.2e}')

    _emit(fmt,
          {'solution': symexpr.to_string(solution.u_of_t),
           'constants': {C.name: str(I)
                         for C, I in zip(solution.constants,
                                         solution.integrals)},
           'deviations': deviations},
          [str(solution)] +
          [f'{C} = {I}' for C, I in zip(solution.constants,
                                        solution.integrals)] +
          [f'max |u - u_rk4| = {d:.2e} for ic={utils.format_ic(initial)}'
           for d, initial in zip(deviations, settings.ic_suite)])


@cli.command()
@common_options
@numeric_options
def verify(m, c, k, lagrangian, fmt, tol_zero, tol_drift, step, t_end, ic):
    """Check every solved integral symbolically and along RK4 runs. """
    params = _params(m, c, k)
    settings = _settings(tol_zero, tol_drift, step, t_end, ic)
    L = lagrangian[1].bind(params)
    eom = variational.euler_lagrange(L, settings)
    found = [conservation.first_integral(ns, L, settings)
             for ns in _solve(lagrangian, params, settings)]
    trajectories = [conservation.integrate_rk4(
        params, initial, settings.t_end, settings.step, settings)
        for initial in settings.ic_suite]

    checks = []
    for I in found:
        checks.append((f'D(I({I.provenance})) = 0',
                       conservation.verify_symbolic(I, eom, settings=settings),
                       ''))
        for traj in trajectories:
            drift = conservation.conservation_drift(I, traj, settings)
            checks.append((
                f'drift I({I.provenance}) ic={utils.format_ic(traj.ic)}',
                drift < settings.drift_tolerance, f'{drift:.2e}'))

    _emit(fmt,
          {'checks': [{'item': item, 'status': 'pass' if ok else 'fail',
                       'note': note} for item, ok, note in checks]},
          [log.status(item, ok, note) for item, ok, note in checks])
    if not all(ok for _, ok, _ in checks):
        return EXIT_VERIFICATION


@cli.command()
@common_options
@numeric_options
def audit(m, c, k, lagrangian, fmt, tol_zero, tol_drift, step, t_end, ic):
    """Audit the printed catalog of the regime of (m, c, k).

    Every printed generator, integral, solution and commutator is checked
    against the solver. A non-Bateman --lagrangian is also compared with
    the Bateman Lagrangian. Exits with 2 when a printed form is wrong.
    """
    params = _params(m, c, k)
    settings = _settings(tol_zero, tol_drift, step, t_end, ic)
    report = dho.audit_catalog(dho.classify(params), params, settings)
    items = list(report.items)
    if lagrangian[0] != 'bateman':
        items.extend(dho.audit_equivalence(lagrangian[1], params, settings))
    report = dho.AuditReport(report.catalog, tuple(items), report.table)

    lines = [str(report.catalog.regime)]
    for item in report.items:
        if item.status == dho.NOTE:
            lines.append(f'NOTE {item.note}')
        else:
            lines.append(log.status(item.item, item.status == dho.PASS,
                                    item.note))
    _emit(fmt, dho.to_json(report), lines)
    if not report.ok:
        log.warn(f'{len(report.failures)} printed forms disagree with the '
                 'derived ones')
        return EXIT_DISCREPANCY
    return EXIT_OK


@cli.command('export-trajectory')
@common_options
@numeric_options
@click.option('--output', type=click.File('w'), default='-',
              help='CSV destination; standard output by default.')
def export_trajectory(m, c, k, lagrangian, fmt, tol_zero, tol_drift, step,
                      t_end, ic, output):
    """Write an RK4 trajectory as CSV rows t,u,u1.

    Uses the first --ic, or the first of the default initial conditions.
    """
    params = _params(m, c, k)
    settings = _settings(tol_zero, tol_drift, step, t_end, ic)
    traj = conservation.integrate_rk4(params, settings.ic_suite[0],
                                      settings.t_end, settings.step, settings)
    with log.on_error(f'Writing {output.name}'):
        conservation.write_csv(traj, output)
    log.success(f'Wrote {len(traj)} rows')
