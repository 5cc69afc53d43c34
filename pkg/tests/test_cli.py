""" CLI Tests

Commands, exit codes and the JSON output
"""
import json

import pytest
from click.testing import CliRunner

from noether_dho import cli, noether_solver


CRITICAL = ['-m', '1', '-c', '2', '-k', '1']
QUICK = ['--t-end', '1', '--h', '0.01']


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


def test_classify(runner):
    result = runner.invoke(cli.cli, ['classify'] + CRITICAL)
    assert result.exit_code == cli.EXIT_OK
    assert result.output.strip() == 'Critical (c^2 - 4km = 0)'

    result = runner.invoke(cli.cli, ['classify', '-m', '1/2', '-c', '1',
                                     '-k', '1', '--format', 'json'])
    assert json.loads(result.output) == {'regime': 'under',
                                         'discriminant': '-1'}


@pytest.mark.parametrize('args', [
    ['classify', '-m', '1.5', '-c', '2', '-k', '1'],
    ['classify', '-m', '1', '-c', '2'],
    ['classify', '-m', '0', '-c', '2', '-k', '1'],
    ['classify', '-m', '1', '-c', '2', '-k', '1/0'],
    ['symmetries', '--lagrangian', 'expr:u1^^2'] + CRITICAL,
    ['symmetries', '--lagrangian', 'expr:u1^2 - u^4'] + CRITICAL,
    ['symmetries', '--lagrangian', 'foo'] + CRITICAL,
    ['verify', '--h=-1'] + CRITICAL,
    ['verify', '--ic', '0,1'] + CRITICAL,
    ['verify', '--t-end', '1', '--ic', '2,1,0'] + CRITICAL,
    ['symmetries', '--complex'] + CRITICAL,
])
def test_usage_errors(runner, args):
    result = runner.invoke(cli.cli, args)
    assert result.exit_code == cli.EXIT_USAGE


def test_symmetries(runner):
    result = runner.invoke(cli.cli, ['symmetries', '--format', 'json'] +
                           CRITICAL)
    assert result.exit_code == cli.EXIT_OK
    data = json.loads(result.output)
    assert data['regime'] == 'critical'
    assert [g['name'] for g in data['generators']] == \
        ['X1', 'X2', 'X3', 'X4', 'X5']

    result = runner.invoke(cli.cli, ['symmetries', '--general',
                                     '--format', 'json'])
    assert result.exit_code == cli.EXIT_OK
    assert len(json.loads(result.output)['generators']) == 5


def test_symmetries_complex(runner):
    result = runner.invoke(cli.cli, ['symmetries', '--complex', '-m', '1',
                                     '-c', '1', '-k', '1'])
    assert result.exit_code == cli.EXIT_OK
    assert 'X4 = (0) d/dt + (' in result.output
    assert 'X5 = (0) d/dt + (' in result.output

    result = runner.invoke(cli.cli, ['symmetries', '--complex', '--format',
                                     'json', '-m', '1', '-c', '1',
                                     '-k', '1'])
    data = json.loads(result.output)
    assert [g['name'] for g in data['complex']] == ['X4', 'X5']


def test_internal_value_error_is_a_verification_failure(runner,
                                                       monkeypatch):
    def broken(*args, **kwargs):
        raise ValueError('inconsistent basis')

    monkeypatch.setattr(noether_solver, 'solve_dho', broken)
    result = runner.invoke(cli.cli, ['symmetries'] + CRITICAL)
    assert result.exit_code == cli.EXIT_VERIFICATION
    assert 'inconsistent basis' in result.stderr


def test_integrals(runner):
    result = runner.invoke(cli.cli, ['integrals', '--format', 'json'] +
                           CRITICAL)
    assert result.exit_code == cli.EXIT_OK
    data = json.loads(result.output)
    assert len(data['integrals']) == 5
    assert data['rank'] == 2


def test_brackets(runner):
    result = runner.invoke(cli.cli, ['brackets', '--format', 'json'] +
                           CRITICAL)
    assert result.exit_code == cli.EXIT_OK
    data = json.loads(result.output)
    assert data['jacobi'] is True
    assert len(data['entries']) == 20


def test_solve(runner):
    result = runner.invoke(cli.cli, ['solve', '--format', 'json',
                                     '--t-end', '2'] + CRITICAL)
    assert result.exit_code == cli.EXIT_OK
    data = json.loads(result.output)
    assert len(data['deviations']) == 3
    assert max(data['deviations']) < 1e-7


def test_verify(runner):
    result = runner.invoke(cli.cli, ['verify', '--t-end', '1'] + CRITICAL)
    assert result.exit_code == cli.EXIT_OK
    assert 'FAIL' not in result.output


def test_audit_is_deterministic(runner):
    args = ['audit', '--format', 'json'] + QUICK + CRITICAL
    first = runner.invoke(cli.cli, args)
    second = runner.invoke(cli.cli, args)
    assert first.exit_code in (cli.EXIT_OK, cli.EXIT_DISCREPANCY)
    assert first.output == second.output
    assert json.loads(first.output)['regime'] == 'critical'


def test_audit_over_exits_with_discrepancy(runner):
    result = runner.invoke(cli.cli, ['audit', '-m', '1', '-c', '3', '-k', '2',
                                     '--lagrangian', 'new'] + QUICK)
    assert result.exit_code == cli.EXIT_DISCREPANCY
    assert 'noether X3' in result.output
    assert 'gauge equivalence' in result.output


def test_export_trajectory(runner):
    result = runner.invoke(cli.cli, ['export-trajectory', '--t-end', '1',
                                     '--h', '0.25', '--ic', '0,1,0'] +
                           CRITICAL)
    assert result.exit_code == cli.EXIT_OK
    lines = result.output.splitlines()
    assert lines[0] == 't,u,u1'
    assert len(lines) == 6
