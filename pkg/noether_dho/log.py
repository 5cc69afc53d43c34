"""Utilities for pretty output """

import contextlib
from click import echo, style


_success = lambda msg, bold: style(msg, fg='green', bold=bold)
_warning = lambda msg, bold: style(msg, fg='yellow', bold=bold)
_error = lambda msg, bold: style(msg, fg='red', bold=bold)

# Progress chatter goes to stderr and only when verbose; stdout is
# reserved for the single report of a command.
verbose = False


def info(msg, bold=False, nl=True):
    if verbose:
        echo(msg, nl=nl, err=True)


def success(msg, bold=True, nl=True):
    if verbose:
        echo(_success(msg, bold), nl=nl, err=True)


def warn(msg, bold=True, nl=True):
    echo(_warning(msg, bold), nl=nl, err=True)


def error(msg, bold=True, nl=True):
    echo(_error(msg, bold), nl=nl, err=True)


def report(lines):
    """Print a text report to stdout """
    for line in lines:
        echo(line)


def status(label, ok, note=''):
    """Format one audit line, coloured by outcome """
    mark = _success('PASS', True) if ok else _warning('FAIL', True)
    suffix = f' ({note})' if note else ''
    return f'{mark} {label}{suffix}'


@contextlib.contextmanager
def with_feedback(description, success_status='OK', error_status='FAILED'):
    info(f'{description}... ', nl=False)
    try:
        yield
    except Exception as e:
        if not verbose:
            echo(f'{description}... ', nl=False, err=True)
        error(f'{error_status} ({e})')
        raise
    else:
        success(success_status)


@contextlib.contextmanager
def on_error(description, error_status='FAILED'):
    try:
        yield
    except Exception as e:
        echo(f'{description}... ', nl=False, err=True)
        error(f'{error_status} ({e})')
        raise
