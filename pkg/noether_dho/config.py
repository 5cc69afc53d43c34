""" Numeric settings

Defaults are read from the packaged `defaults.yaml`; the command line
overrides them through `Settings.replace`.
"""
import dataclasses
import os
from typing import Tuple

import yaml


DEFAULTS_FILE = os.path.join(os.path.dirname(__file__), 'defaults.yaml')


@dataclasses.dataclass(frozen=True)
class Settings:
    zero_points: int = 12
    zero_tolerance: float = 1e-9
    zero_retries: int = 50
    zero_seed: int = 20190517
    zero_interval: Tuple[float, float] = (0.1, 2.0)
    fit_points: int = 8
    step: float = 1e-3
    t_end: float = 10.0
    max_steps: int = 10_000_000
    eps_abs: float = 1e-12
    drift_tolerance: float = 1e-8
    solution_tolerance: float = 1e-7
    ic_suite: Tuple[Tuple[float, float, float], ...] = (
        (0.0, 1.0, 0.0), (0.0, 0.0, 1.0), (0.0, 1.0, -1.0))
    standard_params: Tuple[Tuple[str, Tuple[int, int, int]], ...] = (
        ('over', (1, 3, 2)), ('under', (1, 1, 1)), ('critical', (1, 2, 1)))

    def __post_init__(self):
        for name in ('zero_tolerance', 'step', 'eps_abs', 'drift_tolerance',
                     'solution_tolerance'):
            if not getattr(self, name) > 0:
                raise ValueError(f'{name} must be positive')
        low, high = self.zero_interval
        if not 0 < low < high:
            raise ValueError('zero_interval must satisfy 0 < low < high')

    def replace(self, **changes):
        """Return a copy with the non-None `changes` applied. """
        changes = {k: v for k, v in changes.items() if v is not None}
        return dataclasses.replace(self, **changes)


def load(path=DEFAULTS_FILE):
    with open(path, 'r') as stream:
        data = yaml.safe_load(stream) or {}

    zero = data.get('zero_test', {})
    rk4 = data.get('rk4', {})
    drift = data.get('drift', {})
    defaults = Settings()
    return Settings(
        zero_points=int(zero.get('points', defaults.zero_points)),
        zero_tolerance=float(zero.get('tolerance', defaults.zero_tolerance)),
        zero_retries=int(zero.get('retries', defaults.zero_retries)),
        zero_seed=int(zero.get('seed', defaults.zero_seed)),
        zero_interval=tuple(
            float(x) for x in zero.get('interval', defaults.zero_interval)),
        fit_points=int(data.get('lie', {}).get(
            'fit_points', defaults.fit_points)),
        step=float(rk4.get('step', defaults.step)),
        t_end=float(rk4.get('t_end', defaults.t_end)),
        max_steps=int(rk4.get('max_steps', defaults.max_steps)),
        eps_abs=float(drift.get('eps_abs', defaults.eps_abs)),
        drift_tolerance=float(drift.get('tolerance',
                                        defaults.drift_tolerance)),
        solution_tolerance=float(data.get('solution', {}).get(
            'tolerance', defaults.solution_tolerance)),
        ic_suite=tuple(
            tuple(float(x) for x in ic)
            for ic in data.get('ic_suite', defaults.ic_suite)),
        standard_params=tuple(
            (name, tuple(int(x) for x in triple))
            for name, triple in data.get(
                'standard_params', dict(defaults.standard_params)).items()),
    )


DEFAULTS = load()
