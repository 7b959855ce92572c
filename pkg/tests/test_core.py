import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import invertible_matrices, small_fractions, symmetric_tensors
from dhbkit import core, corpus, linalg, numeric
from dhbkit.core import Algebra, InvalidInputError, QuadraticSystem, QuadricForm, Rank3Type
from dhbkit.scalars import EISENSTEIN


def test_euler_tensor_matches_products():
    alg = core.system_to_algebra(corpus.euler_top())
    for i, j, k in itertools.product(range(3), repeat=3):
        assert alg.c[i][j][k] == oracles.EULER_NONZERO.get((i, j, k), 0)
    x = [alg.basis(j) for j in range(3)]
    assert core.multiply(alg, x[1], x[2]) == x[0]
    assert core.multiply(alg, x[0], x[0]) == (0, 0, 0)


def test_zero_tensor_gives_zero_algebra():
    z = [[[F(0)] * 2 for _ in range(2)] for _ in range(2)]
    alg = core.system_to_algebra(QuadraticSystem(z))
    assert core.multiply(alg, (F(1), F(2)), (F(3), F(4))) == (0, 0)


def test_asymmetric_tensor_rejected():
    t = [[[F(0), F(1)], [F(0), F(0)]], [[F(0)] * 2, [F(0)] * 2]]
    with pytest.raises(InvalidInputError):
        QuadraticSystem(t)


@given(symmetric_tensors(n=3))
def test_round_trip(t):
    sys = QuadraticSystem(t)
    assert core.algebra_to_system(core.system_to_algebra(sys)) == sys


@given(symmetric_tensors(n=3), invertible_matrices(n=3))
def test_change_vars_is_change_basis_with_contragredient(t, c):
    sys = QuadraticSystem(t)
    x = (F(1, 2), F(-1), F(2))
    y = linalg.matvec(c, x)
    # Y' = C X' must hold pointwise
    lhs = core.evaluate_field(core.change_vars(sys, c), y)
    rhs = linalg.matvec(c, core.evaluate_field(sys, x))
    assert lhs == rhs


@given(symmetric_tensors(n=3), small_fractions())
def test_evaluate_field_is_quadratic(t, lam):
    sys = QuadraticSystem(t)
    x = (F(1), F(-2), F(1, 3))
    fx = core.evaluate_field(sys, x)
    assert core.evaluate_field(sys, [lam * v for v in x]) == tuple(lam * lam * v for v in fx)


def test_evaluate_field_examples():
    assert core.evaluate_field(corpus.euler_top(), (1, 1, 1)) == (2, 2, 2)
    assert core.evaluate_field(corpus.halphen2(), (F(1), F(0), F(0))) == oracles.HALPHEN2_THETA_AT_100
    with pytest.raises(InvalidInputError):
        core.evaluate_field(corpus.euler_top(), (1, 1))


@given(symmetric_tensors(n=3), invertible_matrices(n=3))
def test_unit_and_derivations_are_basis_invariant(t, m):
    alg = Algebra(t)
    alg2 = core.change_basis(alg, m)
    assert core.derivation_dimension(alg) == core.derivation_dimension(alg2)
    u = core.find_unit(alg)
    u2 = core.find_unit(alg2)
    assert (u is None) == (u2 is None)
    if u is not None:
        # the unit's coordinates transform with the inverse basis matrix
        assert linalg.matvec(linalg.transpose(m), u2) == u
        for j in range(3):
            assert core.multiply(alg, u, alg.basis(j)) == alg.basis(j)


def test_rank3_classification():
    assert core.classify_rank3(core.system_to_algebra(corpus.euler_top())) is Rank3Type.NO_UNIT
    h2 = core.system_to_algebra(corpus.halphen2(1, 2, 3))
    assert core.classify_rank3(h2) is Rank3Type.HYPERGEOMETRIC
    ric = core.system_to_algebra(corpus.riccati_identity())
    assert core.find_unit(ric) == oracles.RICCATI_UNIT
    assert core.classify_rank3(ric) is Rank3Type.ELEMENTARY


def test_classify_needs_rank3():
    with pytest.raises(InvalidInputError):
        core.classify_rank3(core.system_to_algebra(corpus.level3_system()[0]))


def test_riccati_field():
    sys = core.riccati_system(((1, 0), (0, 1)))
    x = (F(2), F(3), F(5))
    assert core.evaluate_field(sys, x) == (4 + 9, 3 * 7, 9 + 25)
    zero = core.riccati_system(((0, 0), (0, 0)))
    assert all(v == 0 for p in zero.a for r in p for v in r)
    with pytest.raises(InvalidInputError):
        core.riccati_system(((1, 2), (3, 1)))


def test_homogenize_lotka_volterra_matches_standard_form():
    a, b, c, d = 2, 3, 5, 7
    hom = core.homogenize(
        [[[0, F(-b, 2)], [F(-b, 2), 0]], [[0, F(-d, 2)], [F(-d, 2), 0]]], [[a, 0], [-c, 0]], [0, 0]
    )
    assert hom == corpus.lotka_volterra(a, b, c, d)


def test_homogenize_projects_to_the_original(rng):
    # dX = X^2 - 1 from X(0) = 0 is -tanh(t)
    hom = core.homogenize([[[F(1)]]], [[F(0)]], [F(-1)])
    traj = numeric.integrate_quadratic(hom, (0, 1), (0, 1), tol=1e-12)
    import numpy as np

    assert np.max(np.abs(traj.x[:, 0] + np.tanh(traj.t))) < 1e-10
    assert np.max(np.abs(traj.x[:, 1] - 1)) == 0


def test_cofactor_examples():
    euler = corpus.euler_top()
    l = core.find_cofactor(euler, QuadricForm.from_monomials(3, {(0, 0): F(1), (1, 1): F(-1)}))
    assert l is not None and l.is_zero()
    sys, q = corpus.level3_system()
    l = core.find_cofactor(sys, q)
    assert l.l == oracles.LEVEL3_COFACTOR
    # a generic quadric is not invariant for Euler's top
    assert core.find_cofactor(euler, QuadricForm.from_monomials(3, {(0, 1): F(1), (2, 2): F(3)})) is None


@given(symmetric_tensors(n=3), st.lists(small_fractions(), min_size=6, max_size=6))
def test_cofactor_identity_is_exact(t, qc):
    sys = QuadraticSystem(t)
    keys = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]
    q = QuadricForm.from_monomials(3, dict(zip(keys, qc)))
    l = core.find_cofactor(sys, q)
    if l is None:
        return
    for x in [(F(1), F(2), F(-1)), (F(0), F(1, 2), F(3)), (F(-2), F(1), F(1))]:
        f = core.evaluate_field(sys, x)
        grad = [2 * sum(q.b[i][j] * x[j] for j in range(3)) for i in range(3)]
        assert sum(g * fi for g, fi in zip(grad, f)) == l(x) * q(x)


def test_cofactor_refuses_complex():
    sys = QuadraticSystem([[[1.0]]])
    with pytest.raises(InvalidInputError):
        core.find_cofactor(sys, QuadricForm(((1.0,),)))


def test_quadric_normalized():
    q = QuadricForm.from_monomials(2, {(0, 1): F(4), (1, 1): F(2)})
    assert q.normalized().monomials() == {(0, 1): 1, (1, 1): F(1, 2)}


def test_system_from_field_eisenstein():
    sys, _ = corpus.level3_system()
    assert sys.domain == EISENSTEIN
    for (j, k), v in oracles.LEVEL3_W_ROW.items():
        assert sys.a[0][j][k] == v
