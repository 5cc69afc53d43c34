import click
from . import dho, errors, utils
from .variational import Lagrangian, euler_lagrange, is_quadratic


def validate_rational(ctx, param, value):
    if value is None:
        return None
    try:
        return utils.parse_rational(value)
    except ValueError as e:
        raise click.BadParameter(str(e))


def validate_positive(ctx, param, value):
    if value is not None and not value > 0:
        raise click.BadParameter(f'must be positive, got {value}')
    return value


def validate_ic(ctx, param, value):
    ics = []
    for ic in value:
        try:
            ics.append(utils.parse_ic(ic))
        except ValueError as e:
            raise click.BadParameter(str(e))
    return tuple(ics)


LAGRANGIANS = {
    'bateman': dho.bateman,
    'new': dho.new_lagrangian,
}


def validate_lagrangian(ctx, param, value):
    """bateman | new | expr:STRING, returned as (label, Lagrangian). """
    if value in LAGRANGIANS:
        return value, LAGRANGIANS[value]()
    if not value.startswith('expr:'):
        raise click.BadParameter(
            'needs to be one of bateman, new or expr:STRING')

    text = value[len('expr:'):]
    try:
        L = Lagrangian.parse(text)
    except (errors.ExprSyntaxError, errors.UnknownSymbolError) as e:
        raise click.BadParameter(str(e))
    if not is_quadratic(L):
        raise click.BadParameter(
            f'{text} is not quadratic in u, u1 with coefficients in t')
    try:
        euler_lagrange(L)
    except errors.NoetherError as e:
        raise click.BadParameter(str(e))
    return 'expr', L
