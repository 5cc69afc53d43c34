""" Lie algebra of point vector fields

Brackets, structure constants over a basis, Jacobi checks and the audit of
published commutator tables against computed brackets.
"""
import dataclasses
import itertools
from typing import Dict, Tuple

import numpy as np
import sympy

from . import config, errors, log, symexpr
from .symexpr import canonical, t, u
from .variational import VectorField, apply_field


@dataclasses.dataclass(frozen=True, eq=False)
class CommutatorTable:
    """[X_i, X_j] = sum_l coefficients[(i, j)][l] X_l """
    basis: Tuple[VectorField, ...]
    coefficients: Dict[Tuple[int, int], Tuple[sympy.Expr, ...]]
    names: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, 'names', tuple(
                f'X{i + 1}' for i in range(len(self.basis))))

    def __len__(self):
        return len(self.basis)

    def describe(self, i, j):
        return format_combination(self.coefficients[(i, j)], self.names)


@dataclasses.dataclass(frozen=True)
class Discrepancy:
    i: int
    j: int
    claimed: str
    computed: str


def format_combination(vector, names):
    parts = [f'({symexpr.to_string(coeff)})*{name}'
             for coeff, name in zip(vector, names) if coeff != 0]
    return ' + '.join(parts) if parts else '0'


def bracket(Z1, Z2):
    """[Z1, Z2] = (Z1(xi2) - Z2(xi1)) d/dt + (Z1(eta2) - Z2(eta1)) d/du """
    return VectorField(
        canonical(apply_field(Z1, Z2.xi) - apply_field(Z2, Z1.xi)),
        canonical(apply_field(Z1, Z2.eta) - apply_field(Z2, Z1.eta)),
    )


def _samples(basis, points):
    columns = []
    for X in basis:
        xi = symexpr.numeric(X.xi, variables=(t, u))
        eta = symexpr.numeric(X.eta, variables=(t, u))
        columns.append(np.concatenate([xi(points[:, 0], points[:, 1]),
                                       eta(points[:, 0], points[:, 1])]))
    return np.column_stack(columns)


def _exact(value, hints):
    if abs(value) < 1e-10:
        return sympy.Integer(0)
    return sympy.nsimplify(value, hints, tolerance=1e-9, rational=False)


def structure_constants(basis, params=None, settings=None, names=()):
    """Expand every bracket of `basis` in `basis`.

    Coefficients are proposed by a least-squares fit at sample points (t, u)
    and then confirmed exactly; a bracket without an exact expansion raises
    NotClosedError.
    """
    settings = settings or config.DEFAULTS
    hints = []
    if params is not None:
        basis = [X.subs(params.bindings()) for X in basis]
        if params.discriminant != 0:
            hints.append(sympy.sqrt(abs(params.discriminant)))
    basis = tuple(basis)
    n = len(basis)

    rng = np.random.default_rng(settings.zero_seed)
    points = rng.uniform(-1.5, 1.5, (settings.fit_points, 2))
    matrix = _samples(basis, points)
    rank = int(np.linalg.matrix_rank(matrix))
    if rank < n:
        raise errors.DependentBasisError(rank, n)

    zero = tuple(sympy.Integer(0) for _ in range(n))
    coefficients = {(i, i): zero for i in range(n)}
    for i, j in itertools.combinations(range(n), 2):
        with log.with_feedback(f'Expanding [{i + 1}, {j + 1}]'):
            Z = bracket(basis[i], basis[j])
            rhs = _samples([Z], points)[:, 0]
            fit, *_ = np.linalg.lstsq(matrix, rhs, rcond=None)
            vector = tuple(_exact(float(x), hints) for x in fit)
            residual = Z
            for coeff, X in zip(vector, basis):
                residual = residual - X.scale(coeff)
            if not residual.is_zero(settings=settings):
                raise errors.NotClosedError(i + 1, j + 1)
        coefficients[(i, j)] = vector
        coefficients[(j, i)] = tuple(-x for x in vector)
    return CommutatorTable(basis, coefficients, tuple(names))


def _vanishes(value):
    value = canonical(value)
    return value == 0 or (value.is_number and abs(complex(value)) < 1e-9)


def jacobi_check(table, settings=None):
    """Jacobi identity from raw brackets and from the structure constants. """
    n = len(table)
    C = table.coefficients
    for i, j in itertools.product(range(n), repeat=2):
        if not all(_vanishes(a + b) for a, b in zip(C[(i, j)], C[(j, i)])):
            return False

    for i, j, k in itertools.combinations(range(n), 3):
        X = table.basis
        raw = (bracket(X[i], bracket(X[j], X[k])) +
               bracket(X[j], bracket(X[k], X[i])) +
               bracket(X[k], bracket(X[i], X[j])))
        if not raw.is_zero(settings=settings):
            return False
        for p in range(n):
            total = sum(C[(j, k)][l] * C[(i, l)][p] +
                        C[(k, i)][l] * C[(j, l)][p] +
                        C[(i, j)][l] * C[(k, l)][p] for l in range(n))
            if not _vanishes(total):
                return False
    return True


def audit_table(table, claimed, params=None):
    """Compare a claimed table {(i, j): {l: coeff}} (1-based) with `table`. """
    bindings = params.bindings() if params is not None else {}
    discrepancies = []
    n = len(table)
    for i, j in itertools.product(range(n), repeat=2):
        if i == j:
            continue
        entry = claimed.get((i + 1, j + 1), {})
        vector = tuple(sympy.sympify(entry.get(l + 1, 0)).subs(bindings)
                       for l in range(n))
        computed = table.coefficients[(i, j)]
        if not all(_vanishes(a - b) for a, b in zip(vector, computed)):
            discrepancies.append(Discrepancy(
                i + 1, j + 1,
                format_combination(vector, table.names),
                table.describe(i, j)))
    return discrepancies


def to_json(table):
    n = len(table)
    return {
        'basis': list(table.names),
        'entries': [
            {'i': i + 1, 'j': j + 1,
             'coeffs': [symexpr.to_string(x)
                        for x in table.coefficients[(i, j)]]}
            for i, j in itertools.product(range(n), repeat=2) if i != j
        ],
    }
