import json
import re

import sympy


""" Numbers """

# Exact input only: "3", "-1", "3/2". Floats would make the critical
# regime unreachable.
RE_RATIONAL = re.compile(r'^\s*(?P<num>[-+]?\d+)(\s*/\s*(?P<den>\d+))?\s*$')

RE_FLOAT = r'[-+]?(\d+(\.\d*)?|\.\d+)([eE][-+]?\d+)?'
RE_IC = re.compile(
    fr'^\s*(?P<t0>{RE_FLOAT})\s*,\s*(?P<u0>{RE_FLOAT})\s*,'
    fr'\s*(?P<v0>{RE_FLOAT})\s*$'
)


def parse_rational(value):
    """Parse "p/q" or an integer into an exact rational. """
    match = RE_RATIONAL.match(value)
    if not match:
        raise ValueError(f'{value!r} is not an integer or p/q rational')
    den = int(match.group('den') or 1)
    if den == 0:
        raise ValueError(f'{value!r} has a zero denominator')
    return sympy.Rational(int(match.group('num')), den)


def parse_ic(value):
    """Parse an initial condition "t0,u0,v0". """
    match = RE_IC.match(value)
    if not match:
        raise ValueError(f'{value!r} is not of the form t0,u0,v0')
    return tuple(float(match.group(key)) for key in ('t0', 'u0', 'v0'))


def format_ic(ic):
    return '(%s)' % ', '.join('%g' % x for x in ic)


""" Output """

def dump_json(payload):
    """Serialize deterministically; same payload, same bytes. """
    return json.dumps(payload, sort_keys=True, indent=2)


def columns(rows, sep='  '):
    """Left-align rows of strings into columns. """
    rows = [[str(cell) for cell in row] for row in rows]
    if not rows:
        return []
    widths = [max(len(row[i]) for row in rows if i < len(row))
              for i in range(max(len(row) for row in rows))]
    return [sep.join(cell.ljust(width) for cell, width in zip(row, widths))
            .rstrip() for row in rows]
