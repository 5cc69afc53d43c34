""" Lie Algebra Tests

Brackets, structure constants and the Jacobi identity
"""
import pytest
import sympy

from noether_dho import errors, liealgebra, noether_solver, symexpr
from noether_dho.dho import bateman, new_lagrangian
from noether_dho.liealgebra import CommutatorTable
from noether_dho.symexpr import Params, t, u
from noether_dho.variational import VectorField


def _basis(params):
    found = noether_solver.solve_dho(bateman(), params)
    return [ns.field for ns in found], [ns.name for ns in found]


@pytest.fixture(scope='module')
def critical():
    fields, names = _basis(Params(1, 2, 1))
    return liealgebra.structure_constants(fields, Params(1, 2, 1),
                                          names=names)


def test_bracket_antisymmetry():
    Z1 = VectorField(t ** 2, u * sympy.exp(t))
    Z2 = VectorField(u, sympy.sin(t))
    assert liealgebra.bracket(Z1, Z1).is_zero()
    assert (liealgebra.bracket(Z1, Z2) + liealgebra.bracket(Z2, Z1)).is_zero()


def test_bracket_bilinear():
    Z1 = VectorField(1, -u)
    Z2 = VectorField(t, u ** 2)
    Z3 = VectorField(sympy.exp(t), t * u)
    lhs = liealgebra.bracket(Z1 + Z2.scale(3), Z3)
    rhs = liealgebra.bracket(Z1, Z3) + liealgebra.bracket(Z2, Z3).scale(3)
    assert (lhs - rhs).is_zero()


def test_bracket_examples():
    fields, _ = _basis(Params(1, 2, 1))
    X1, X4 = fields[0], fields[3]
    assert (liealgebra.bracket(X1, X4) - X1.scale(sympy.Rational(1, 2))) \
        .is_zero()

    fields, _ = _basis(Params(1, 3, 2))
    assert liealgebra.bracket(fields[3], fields[4]).is_zero()


def test_critical_table(critical):
    C = critical.coefficients
    assert C[(2, 3)] == (0, 0, 1, 0, 0)
    assert C[(3, 4)] == (0, 0, 0, 0, 1)
    assert C[(1, 2)] == (-1, 0, 0, 0, 0)
    assert C[(0, 3)] == (sympy.Rational(1, 2), 0, 0, 0, 0)
    assert C[(3, 0)] == (-sympy.Rational(1, 2), 0, 0, 0, 0)
    assert critical.describe(2, 3) == '(1)*X3'
    assert critical.describe(0, 1) == '0'


def test_jacobi(critical):
    assert liealgebra.jacobi_check(critical)

    corrupted = dict(critical.coefficients)
    corrupted[(2, 3)] = (0, 0, -1, 0, 0)
    assert not liealgebra.jacobi_check(
        CommutatorTable(critical.basis, corrupted, critical.names))


def test_single_field_basis():
    table = liealgebra.structure_constants([VectorField(1, 0)])
    assert table.names == ('X1',)
    assert liealgebra.jacobi_check(table)


@pytest.mark.parametrize('params', [Params(1, 3, 2), Params(1, 1, 1)])
def test_solved_algebra_is_closed(params):
    fields, names = _basis(params)
    table = liealgebra.structure_constants(fields, params, names=names)
    assert liealgebra.jacobi_check(table)
    # translations commute
    assert table.describe(3, 4) == '0'


def test_not_closed():
    with pytest.raises(errors.NotClosedError):
        liealgebra.structure_constants([VectorField(1, 0),
                                        VectorField(t ** 2, 0)])


def test_dependent_basis():
    with pytest.raises(errors.DependentBasisError):
        liealgebra.structure_constants([VectorField(1, 0),
                                        VectorField(2, 0)])


def test_audit_table(critical):
    claimed = {(i + 1, j + 1): {l + 1: x for l, x in enumerate(vector)}
               for (i, j), vector in critical.coefficients.items()}
    assert liealgebra.audit_table(critical, claimed) == []

    claimed[(3, 4)] = {3: -1}
    found = liealgebra.audit_table(critical, claimed)
    assert [(d.i, d.j) for d in found] == [(3, 4)]
    assert found[0].claimed == '(-1)*X3'
    assert found[0].computed == '(1)*X3'


def test_to_json(critical):
    data = liealgebra.to_json(critical)
    assert data['basis'] == ['X1', 'X2', 'X3', 'X4', 'X5']
    assert len(data['entries']) == 20
    entry = next(e for e in data['entries'] if (e['i'], e['j']) == (1, 4))
    assert entry['coeffs'] == ['1/2', '0', '0', '0', '0']


@pytest.mark.parametrize('params', [Params(1, 1, 1), Params(1, 2, 1)])
def test_new_lagrangian_has_the_same_algebra(params):
    ours = [ns.field for ns in
            noether_solver.solve_dho(new_lagrangian(), params)]
    theirs, _ = _basis(params)
    assert noether_solver.same_span(ours, theirs)

    first = liealgebra.structure_constants(ours, params)
    second = liealgebra.structure_constants(theirs, params)
    assert first.coefficients.keys() == second.coefficients.keys()
    for key, vector in first.coefficients.items():
        for a, b in zip(vector, second.coefficients[key]):
            assert symexpr.is_zero(a - b)
