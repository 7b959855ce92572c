from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

import oracles
from conftest import invertible_matrices, small_fractions, symmetric_tensors
from dhbkit import core, corpus, dhb, linalg
from dhbkit.core import Algebra, QuadricForm
from dhbkit.dhb import (
    E_BASIS,
    TWO_MINUS,
    NotGDHBError,
    ParametricAlgebra,
    build_A3_from_gdhb,
    check_square_all_c,
    check_unit_for_all_c,
    extract_normal_form,
    parametric_change_basis,
    product_affine,
    quadric_in_basis,
    recognize,
    scramble,
    search_basis,
    solve_some_c,
    specialize,
)
from dhbkit.fuchsian import FuchsianData, anharmonic_constraints, gdhb_system

I4 = linalg.identity(4, F(1))


def zero_q(domain="rational"):
    return QuadricForm.from_monomials(4, {}, domain)


ZERO_ALG = Algebra([[[0] * 4 for _ in range(4)] for _ in range(4)])
vec4 = st.lists(small_fractions(), min_size=4, max_size=4).map(tuple)


@st.composite
def parametric(draw):
    t = draw(symmetric_tensors(4))
    b = draw(st.lists(small_fractions(), min_size=10, max_size=10))
    it = iter(b)
    m = [[None] * 4 for _ in range(4)]
    for j in range(4):
        for k in range(j, 4):
            m[j][k] = m[k][j] = next(it)
    return ParametricAlgebra(Algebra(t), QuadricForm(tuple(map(tuple, m))))


@st.composite
def round_trip_data(draw):
    poles = draw(st.lists(small_fractions(5, 3), min_size=3, max_size=3, unique=True))
    alpha = draw(st.lists(small_fractions(), min_size=3, max_size=3))
    beta = draw(st.lists(small_fractions(), min_size=2, max_size=2))
    return FuchsianData(tuple(poles), tuple(alpha), tuple(beta))


def ra():
    return build_A3_from_gdhb(corpus.ROUND_TRIP["roundtrip-a"])


@settings(max_examples=50)
@given(parametric(), vec4, vec4, vec4)
def test_specialize_then_multiply_is_affine(pa, c, u, v):
    p = product_affine(pa, u, v)
    assert core.multiply(specialize(pa, c), u, v) == p.at(c)
    assert p.q == product_affine(pa, v, u).q


@given(parametric(), vec4, invertible_matrices(4))
def test_change_basis_commutes_with_specialize(pa, c, m):
    # x_c keeps its meaning, so its coordinates transform by m^{-1}
    minv = linalg.inverse(m)
    c_new = tuple(sum(c[i] * minv[i][k] for i in range(4)) for k in range(4))
    lhs = core.change_basis(specialize(pa, c), m)
    assert lhs == specialize(parametric_change_basis(pa, m), c_new)


def test_specialize_trivia():
    pa = ParametricAlgebra(core.system_to_algebra(corpus.level3_system()[0]), corpus.level3_system()[1])
    assert specialize(pa, (0, 0, 0, 0)).c == pa.base.c
    flat = ParametricAlgebra(pa.base, zero_q(pa.domain))
    assert specialize(flat, (1, 2, 3, 4)) == specialize(flat, (0, 0, 0, 0))


def test_product_affine_reads_b00():
    pa = ParametricAlgebra(ZERO_ALG, QuadricForm.from_monomials(4, {(0, 0): F(5)}))
    assert product_affine(pa, (1, 0, 0, 0), (1, 0, 0, 0)).q == 5
    with pytest.raises(core.InvalidInputError):
        product_affine(pa, (1, 0, 0), (1, 0, 0))
    with pytest.raises(core.InvalidInputError):
        specialize(pa, (1, 2))


@given(round_trip_data(), vec4)
def test_for_all_c_checks_agree_with_specializations(fd, c):
    assume(len(anharmonic_constraints(fd.poles)) == 1)
    pa = build_A3_from_gdhb(fd)
    e = (1, 1, 1, 1)
    assert check_unit_for_all_c(pa, e)
    alg = specialize(pa, c)
    assert core.find_unit(alg) == e
    for v in dhb.SINGLE_MINUS:
        lam = check_square_all_c(pa, v, e)
        assert lam is not None
        assert core.multiply(alg, v, v) == tuple(lam * x for x in e)


def test_check_square_of_unit_is_one():
    assert check_square_all_c(ra(), (1, 1, 1, 1), (1, 1, 1, 1)) == 1


def test_check_square_needs_isotropic_v():
    pa = ra()
    v = (1, 0, 0, 0)
    assert pa.quadric.bilinear(v, (0, 1, 0, 0)) != 0
    assert check_square_all_c(pa, (1, 1, 0, 0), (1, 1, 1, 1)) is None


def test_alpha_tilde_round_trip():
    alpha = oracles.AT_4_9_25_ALPHA
    fd = FuchsianData((F(0), F(1), F(-1)), alpha, (F(1, 3), F(2)))
    pa = build_A3_from_gdhb(fd)
    got = [check_square_all_c(pa, v, (1, 1, 1, 1)) for v in E_BASIS[1:]]
    assert got == [4, 9, 25]
    nf = extract_normal_form(pa)
    assert nf.alpha_tilde == (4, 9, 25) and nf.alpha == alpha


def test_unit_trivia():
    euler4 = corpus.padded_euler()
    pa = ParametricAlgebra.from_system(*euler4)
    assert not any(check_unit_for_all_c(pa, e) for e in [(1, 1, 1, 1), (1, 0, 0, 0), (0, 0, 0, 1)])
    assert core.find_unit(pa.base) is None
    ident = Algebra([[[1 if i == j == k else 0 for k in range(4)] for j in range(4)] for i in range(4)])
    assert check_unit_for_all_c(ParametricAlgebra(ident, zero_q()), (1, 1, 1, 1))


def test_solve_some_c_trivia():
    pa = ra()
    z = (0, 0, 0, 0)
    assert solve_some_c(pa, [], (1, 1, 1, 1)) == (z, ())
    ident = Algebra([[[1 if i == j == k else 0 for k in range(4)] for j in range(4)] for i in range(4)])
    flat = ParametricAlgebra(ident, zero_q())
    assert solve_some_c(flat, [(1, 0, 0, 0)], (1, 1, 1, 1)) is None


def test_two_minus_witness_is_the_normal_form_shift():
    base_pa = ra()
    shift = F(3)
    pa = ParametricAlgebra(specialize(base_pa, (shift,) * 4), base_pa.quadric)
    rep = recognize(pa, basis=I4)
    assert rep.passed
    assert rep.normal_form.c == (shift,) * 4
    assert rep.condition2[0] == (shift,) * 4
    # the solver's own particular solution lies on the line c* + s(1,1,1,1)
    c, _ = solve_some_c(pa, [tuple(v) for v in TWO_MINUS], (1, 1, 1, 1))
    assert len({x - shift for x in c}) == 1


def test_quadric_in_basis_gamma_oracle():
    (q,) = anharmonic_constraints((F(0), F(1), F(-1)))
    _, rep = quadric_in_basis(q, I4)
    assert rep.ok
    assert rep.gamma == oracles.POLES_0_1_M1_GAMMA


def _from_e_form(be):
    p_inv = linalg.inverse(core._as_domain_matrix(E_BASIS, "rational"))
    return QuadricForm(linalg.matmul(linalg.matmul(p_inv, be), linalg.transpose(p_inv)))


def test_quadric_in_basis_identity_on_gamma_form():
    g = (F(1), F(2), F(-3))
    be = [[F(0)] * 4 for _ in range(4)]
    be[1][2] = be[2][1] = g[0] / 2
    be[2][3] = be[3][2] = g[1] / 2
    be[1][3] = be[3][1] = g[2] / 2
    _, rep = quadric_in_basis(_from_e_form(be), I4)
    assert rep.ok and rep.gamma == g


def test_quadric_in_basis_flags_square():
    be = [[F(0)] * 4 for _ in range(4)]
    be[1][1] = F(1)
    _, rep = quadric_in_basis(_from_e_form(be), I4)
    assert rep.squares == (1, 0, 0) and not rep.ok


def test_quadric_in_basis_singular():
    with pytest.raises(linalg.SingularMatrixError):
        quadric_in_basis(zero_q(), [[1, 0, 0, 0]] * 4)


def test_gamma3_zero_is_an_error():
    be = [[F(0)] * 4 for _ in range(4)]
    be[1][2] = be[2][1] = F(1, 2)
    be[2][3] = be[3][2] = F(-1, 2)
    q = _from_e_form(be)
    pa = ParametricAlgebra(core.system_to_algebra(gdhb_system((0, 0, 0), (0, 0))), q)
    with pytest.raises(NotGDHBError):
        extract_normal_form(pa)
    assert not recognize(pa, basis=I4).passed


def test_alpha_tilde_one_gives_zero_alpha():
    fd = FuchsianData((F(0), F(2), F(5)), (0, 0, 0), (F(1), F(-1)))
    nf = extract_normal_form(build_A3_from_gdhb(fd))
    assert nf.alpha_tilde == (1, 1, 1) and nf.alpha == (0, 0, 0)


def test_cross_product_violation():
    pa = ra()
    t = [[list(r) for r in plane] for plane in pa.base.c]
    # perturb x1.x2 along x1: e1.e2 picks up a component off e0
    t[1][1][2] += 1
    t[1][2][1] += 1
    bad = ParametricAlgebra(Algebra(t), pa.quadric)
    assert not recognize(bad, basis=I4).passed


def test_condition3_failure():
    # unit for all c exists, but B(e1, e1) != 0
    be = [[F(0)] * 4 for _ in range(4)]
    be[1][1] = F(1)
    q = _from_e_form(be)
    pa = ParametricAlgebra(core.system_to_algebra(gdhb_system((0, 0, 0), (0, 0))), q)
    rep = recognize(pa, basis=I4)
    assert rep.condition1 and not rep.passed
    assert rep.condition3[(1, -1, 1, 1)] is None  # the pattern of e1
    assert "condition 3" in rep.message


def test_padded_euler_condition1():
    pa = ParametricAlgebra.from_system(*corpus.padded_euler())
    rep = recognize(pa, basis=I4)
    assert not rep.condition1 and rep.normal_form is None


@given(round_trip_data())
def test_full_round_trip(fd):
    nf = recognize(build_A3_from_gdhb(fd), basis=I4).normal_form
    assert nf is not None
    assert (nf.alpha, nf.beta, nf.c) == (fd.alpha, fd.beta, (0, 0, 0, 0))


@given(round_trip_data(), invertible_matrices(4))
def test_recognize_is_covariant(fd, m):
    pa = build_A3_from_gdhb(fd)
    scrambled, inv = scramble(pa, m)
    assert recognize(scrambled, basis=inv).normal_form == recognize(pa, basis=I4).normal_form


def test_round_trip_fixture_b():
    fd = corpus.ROUND_TRIP["roundtrip-b"]
    nf = recognize(build_A3_from_gdhb(fd), basis=I4).normal_form
    assert (nf.alpha, nf.beta) == (fd.alpha, fd.beta)


def test_search_recovers_scrambled_fixture():
    pa, _ = scramble(ra(), corpus.SCRAMBLE_BASIS)
    m = search_basis(pa, attempts=20, seed=0)
    assert m is not None
    nf = recognize(pa, basis=m).normal_form
    assert nf is not None
    # another basis may send a different singular point to infinity, so the
    # recovered alphas are three of the four local data (1/4, -1/3, 2, 17/12);
    # 17/12 is the limit of z^2 Q(z) at infinity
    local = [F(1, 4), F(-1, 3), F(2), F(17, 12)]
    for a in nf.alpha:
        local.remove(a)


def test_search_none_cases():
    assert search_basis(ParametricAlgebra(ZERO_ALG, zero_q()), attempts=3) is None
    assert search_basis(ParametricAlgebra.from_system(*corpus.padded_euler()), attempts=3) is None
    rep = recognize(ParametricAlgebra.from_system(*corpus.padded_euler()), attempts=3)
    assert not rep.passed and "not a proof" in rep.message


def test_level3_identity_is_not_a_gdhb_basis():
    sys, q = corpus.level3_system()
    assert not recognize(ParametricAlgebra.from_system(sys, q), basis=I4).passed


def test_level3_half_integer_basis():
    sys, q = corpus.level3_system()
    h = F(1, 2)
    m = ((h, h, h, -h), (h, -h, h, h), (-h, h, h, h), (h, h, -h, h))
    nf = recognize(ParametricAlgebra.from_system(sys, q), basis=m).normal_form
    assert nf is not None
    assert nf.alpha == oracles.LEVEL3_ALPHA
    assert nf.beta == oracles.LEVEL3_BETA
    assert nf.c == (F(1, 6),) * 4


def test_level3_search():
    sys, q = corpus.level3_system()
    rep = recognize(ParametricAlgebra.from_system(sys, q), attempts=30, seed=0)
    assert rep.passed
    assert sorted(map(str, rep.normal_form.alpha)) == ["1/4"] * 3


def test_random_unimodular_is_invertible():
    rng = np.random.default_rng(1)
    for _ in range(10):
        m = dhb.random_unimodular(rng)
        assert abs(linalg.det(core._as_domain_matrix(m, "rational"))) == 1


def test_search_config_overrides():
    from dhbkit.config import SearchConfig

    pa, _ = scramble(ra(), corpus.SCRAMBLE_BASIS)
    assert search_basis(pa, SearchConfig(attempts=0)) is None
    assert search_basis(pa, SearchConfig(attempts=0), attempts=20) is not None
