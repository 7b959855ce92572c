"""The rank-4 parametric algebra and recognition of gDHB systems.

``ParametricAlgebra`` is the pair (base tensor ``a``, quadric ``b``) with
product ``x_j . x_k = sum_i a^i_jk x_i + b_jk x_c`` and ``x_c = sum c_i x_i``.
Products are affine in ``c``, so every "for all c" check below is a
coefficientwise identity rather than a sampled one.

Basis matrices follow :func:`dhbkit.core.change_basis`: rows are the new
basis vectors in old coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np
from scipy.optimize import least_squares

from . import core, linalg
from .config import SearchConfig
from .core import Algebra, InvalidInputError, QuadraticSystem, QuadricForm
from .fuchsian import FuchsianData, anharmonic_constraints, build_gdhb, gdhb_system
from .scalars import COMPLEX, EISENSTEIN, convert, domain_of, eisenstein_from_complex, rationalize


class NotGDHBError(ValueError):
    pass


# e_0 = x0+x1+x2+x3, e_j flips the sign of x_j
E_BASIS = ((1, 1, 1, 1), (1, -1, 1, 1), (1, 1, -1, 1), (1, 1, 1, -1))
ALL_PLUS = E_BASIS[0]
SINGLE_MINUS = ((-1, 1, 1, 1), (1, -1, 1, 1), (1, 1, -1, 1), (1, 1, 1, -1))
TWO_MINUS = ((1, 1, -1, -1), (1, -1, 1, -1), (1, -1, -1, 1))
# beta_tilde_1 <-> e1 e2, beta_tilde_2 <-> e2 e3, beta_tilde_3 <-> e1 e3
CROSS_PAIRS = ((1, 2), (2, 3), (1, 3))


@dataclass(frozen=True)
class ParametricAlgebra:
    base: Algebra
    quadric: QuadricForm

    def __post_init__(self):
        if self.base.n != self.quadric.n:
            raise InvalidInputError("base tensor and quadric dimensions differ")
        dom = core._common_domain(self.base.domain, self.quadric.domain)
        if self.base.domain != dom:
            object.__setattr__(self, "base", Algebra(self.base.c, domain=dom))
        if self.quadric.domain != dom:
            qb = tuple(tuple(convert(x, dom) for x in row) for row in self.quadric.b)
            object.__setattr__(self, "quadric", QuadricForm(qb))

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def domain(self) -> str:
        return self.base.domain

    @classmethod
    def from_system(cls, sys: QuadraticSystem, q: QuadricForm) -> "ParametricAlgebra":
        return cls(core.system_to_algebra(sys), q)


@dataclass(frozen=True)
class AffineProduct:
    """``u . v = w + q x_c``."""

    w: tuple
    q: object

    def at(self, c: Sequence) -> tuple:
        return tuple(wi + self.q * ci for wi, ci in zip(self.w, c))


def _vec(v, dom):
    return tuple(convert(x, dom) for x in v)


def specialize(pa: ParametricAlgebra, c: Sequence) -> Algebra:
    if len(c) != pa.n:
        raise InvalidInputError(f"parameter length {len(c)} != {pa.n}")
    dom = pa.domain
    try:
        c = _vec(c, dom)
    except TypeError as exc:
        raise InvalidInputError(str(exc)) from exc
    n, a, b = pa.n, pa.base.c, pa.quadric.b
    t = [[[a[i][j][k] + b[j][k] * c[i] for k in range(n)] for j in range(n)] for i in range(n)]
    return Algebra(t, domain=dom)


def product_affine(pa: ParametricAlgebra, u: Sequence, v: Sequence) -> AffineProduct:
    if len(u) != pa.n or len(v) != pa.n:
        raise InvalidInputError("element length does not match dimension")
    return AffineProduct(core.multiply(pa.base, u, v), pa.quadric.bilinear(u, v))


def parametric_change_basis(pa: ParametricAlgebra, m: Sequence[Sequence]) -> ParametricAlgebra:
    base = core.change_basis(pa.base, m)
    mm = core._as_domain_matrix(m, base.domain)
    qb = core._as_domain_matrix(pa.quadric.b, base.domain)
    return ParametricAlgebra(base, QuadricForm(linalg.matmul(linalg.matmul(mm, qb), linalg.transpose(mm))))


def _proportional(w, e):
    """λ with ``w == λ e`` exactly, or None."""
    piv = next(i for i, x in enumerate(e) if x != 0)
    lam = w[piv] / e[piv]
    if all(wi == lam * ei for wi, ei in zip(w, e)):
        return lam
    return None


def check_unit_for_all_c(pa: ParametricAlgebra, e: Sequence) -> bool:
    n = pa.n
    if len(e) != n or not any(x != 0 for x in e):
        return False
    for j in range(n):
        xj = pa.base.basis(j)
        p = product_affine(pa, e, xj)
        if p.q != 0 or p.w != xj:
            return False
    return True


def check_square_all_c(pa: ParametricAlgebra, v: Sequence, e: Sequence):
    p = product_affine(pa, v, v)
    if p.q != 0:
        return None
    return _proportional(p.w, e)


def solve_some_c(pa: ParametricAlgebra, patterns: Sequence[Sequence], e: Sequence):
    """One ``c`` and per-pattern λ with ``v.v = λ_v e`` for every pattern.

    Unknowns ``(c_0..c_{n-1}, λ_1..λ_P)``; free variables are set to zero.
    """
    n, dom = pa.n, pa.domain
    z = core.zero_of(dom)
    if not patterns:
        return tuple(z for _ in range(n)), ()
    np_ = len(patterns)
    rows, rhs = [], []
    for p, v in enumerate(patterns):
        ap = product_affine(pa, v, v)
        for i in range(n):
            row = [z] * (n + np_)
            row[i] = ap.q
            row[n + p] = -convert(e[i], dom)
            rows.append(row)
            rhs.append(-ap.w[i])
    sol = linalg.solve(rows, rhs, zero=z)
    if sol is None:
        return None
    return tuple(sol[:n]), tuple(sol[n:])


def witness_at(pa: ParametricAlgebra, patterns: Sequence[Sequence], e: Sequence, c: Sequence):
    """Per-pattern λ at a given ``c``, or None if some square is off the line of ``e``."""
    lams = []
    for v in patterns:
        lam = _proportional(product_affine(pa, v, v).at(c), e)
        if lam is None:
            return None
        lams.append(lam)
    return tuple(c), tuple(lams)


@dataclass(frozen=True)
class EFormReport:
    e0_terms: tuple  # coefficients of E0^2, E0E1, E0E2, E0E3
    squares: tuple  # coefficients of E1^2, E2^2, E3^2
    gamma: tuple  # E1E2, E2E3, E1E3
    sum_zero: bool
    nonzero: bool

    @property
    def ok(self) -> bool:
        return (
            all(x == 0 for x in self.e0_terms) and all(x == 0 for x in self.squares) and self.sum_zero and self.nonzero
        )


def quadric_in_basis(q: QuadricForm, m: Sequence[Sequence]):
    """``q`` in the E-coordinates of the basis ``m`` plus its γ-form report."""
    if q.n != 4:
        raise InvalidInputError("E-form needs dimension 4")
    dom = core._common_domain(q.domain, domain_of(x for row in m for x in row))
    mm = core._as_domain_matrix(m, dom)
    z = core.zero_of(dom)
    if linalg.det(mm) == 0:
        raise linalg.SingularMatrixError("basis matrix is singular")
    pm = linalg.matmul(core._as_domain_matrix(E_BASIS, dom), mm)
    qb = core._as_domain_matrix(q.b, dom)
    be = linalg.matmul(linalg.matmul(pm, qb), linalg.transpose(pm))
    qe = QuadricForm(be)
    e0 = (be[0][0], 2 * be[0][1], 2 * be[0][2], 2 * be[0][3])
    squares = (be[1][1], be[2][2], be[3][3])
    gamma = (2 * be[1][2], 2 * be[2][3], 2 * be[1][3])
    report = EFormReport(e0, squares, gamma, sum(gamma, z) == 0, all(g != 0 for g in gamma))
    return qe, report


@dataclass(frozen=True)
class NormalForm:
    alpha_tilde: tuple
    beta_tilde: tuple
    gamma: tuple
    alpha: tuple
    beta: tuple
    c: tuple


def _e_vectors(dom):
    return [_vec(v, dom) for v in E_BASIS]


def extract_normal_form(pa: ParametricAlgebra, basis: Sequence[Sequence] | None = None) -> NormalForm:
    if pa.n != 4:
        raise InvalidInputError("normal form needs dimension 4")
    dom = pa.domain
    if basis is None:
        basis = linalg.identity(4, core.one_of(dom))
    pb = parametric_change_basis(pa, basis)
    dom = pb.domain
    es = _e_vectors(dom)
    e0 = es[0]
    if not check_unit_for_all_c(pb, e0):
        raise NotGDHBError("e0 is not a unit for every c")
    at = []
    for j in (1, 2, 3):
        lam = check_square_all_c(pb, es[j], e0)
        if lam is None:
            raise NotGDHBError(f"e{j}^2 is not proportional to e0 for every c")
        at.append(lam)
    bt = []
    for i, j in CROSS_PAIRS:
        w = core.multiply(pb.base, es[i], es[j])
        w = tuple(w[k] - es[i][k] - es[j][k] for k in range(4))
        lam = _proportional(w, e0)
        if lam is None:
            raise NotGDHBError(f"e{i}.e{j} - e{i} - e{j} is not proportional to e0")
        bt.append(lam)
    _, rep = quadric_in_basis(pb.quadric, linalg.identity(4, core.one_of(dom)))
    if not rep.ok:
        raise NotGDHBError(f"quadric is not of the gamma form: {rep}")
    g1, g2, g3 = rep.gamma
    one = core.one_of(dom)
    # shift t with base = gDHB + t Q e; B(e_i, e_j) = gamma/2 on the pair
    t = 2 * (one + bt[2]) / g3
    alpha = tuple((one - x) / 4 for x in at)
    beta = (-(one + bt[0]) / 2 + t * g1 / 4, -(one + bt[1]) / 2 + t * g2 / 4)
    nf = NormalForm(tuple(at), tuple(bt), rep.gamma, alpha, beta, (t, t, t, t))
    _verify_rebuild(pb, nf)
    return nf


def _verify_rebuild(pb: ParametricAlgebra, nf: NormalForm):
    rebuilt = core.system_to_algebra(gdhb_system(nf.alpha, nf.beta))
    expect = specialize(ParametricAlgebra(rebuilt, pb.quadric), nf.c)
    if expect.c != pb.base.c:
        raise NotGDHBError("rebuilt gDHB tensor does not match the input")


@dataclass
class RecognitionReport:
    condition1: bool = False
    condition3: dict = field(default_factory=dict)
    condition2: tuple | None = None
    normal_form: NormalForm | None = None
    basis_used: tuple | None = None
    message: str = ""

    @property
    def passed(self) -> bool:
        return self.normal_form is not None


def recognize(
    pa: ParametricAlgebra,
    basis: Sequence[Sequence] | None = None,
    attempts: int = 20,
    seed: int = 0,
    max_den: int = 10**6,
) -> RecognitionReport:
    rep = RecognitionReport()
    if pa.n != 4:
        rep.message = f"dimension {pa.n} != 4"
        return rep
    if basis is None:
        if pa.domain == COMPLEX:
            rep.message = "basis search needs an exact domain"
            return rep
        basis = search_basis(pa, attempts=attempts, seed=seed, max_den=max_den)
        if basis is None:
            rep.message = "no basis found (not a proof of non-existence)"
            return rep
    try:
        pb = parametric_change_basis(pa, basis)
    except (linalg.SingularMatrixError, ZeroDivisionError):
        rep.message = "basis matrix is singular"
        return rep
    rep.basis_used = tuple(tuple(row) for row in basis)
    es = _e_vectors(pb.domain)
    e0 = es[0]
    rep.condition1 = check_unit_for_all_c(pb, e0)
    if not rep.condition1:
        rep.message = "condition 1 fails: e is not a unit for every c"
        return rep
    for v in SINGLE_MINUS:
        rep.condition3[v] = check_square_all_c(pb, _vec(v, pb.domain), e0)
    if any(x is None for x in rep.condition3.values()):
        rep.message = "condition 3 fails"
        return rep
    rep.condition2 = solve_some_c(pb, [_vec(v, pb.domain) for v in TWO_MINUS], e0)
    if rep.condition2 is None:
        rep.message = "condition 2 fails: no common c"
        return rep
    try:
        rep.normal_form = extract_normal_form(pb)
    except (NotGDHBError, ZeroDivisionError) as exc:
        rep.message = str(exc)
        return rep
    # the witness line is c* + s(1,1,1,1); report the member the normal form uses
    at_nf = witness_at(pb, [_vec(v, pb.domain) for v in TWO_MINUS], e0, rep.normal_form.c)
    if at_nf is not None:
        rep.condition2 = at_nf
    rep.message = "ok"
    return rep


# -- numerical basis search ------------------------------------------------


def _snap(x: complex, dom: str, max_den: int):
    if dom == EISENSTEIN:
        return eisenstein_from_complex(complex(x), max_den)
    return rationalize(float(np.real(x)), max_den)


def _residuals(ctens, qmat, e, xs, rho):
    """Condition residuals for candidate ``x'_1..x'_3``; ``x'_0 = e - sum``."""
    ee = np.vdot(e, e).real

    def perp(w):
        return w - (np.vdot(e, w) / ee) * e

    def prod(u, v):
        return np.einsum("ijk,j,k->i", ctens, u, v)

    x0 = e - xs.sum(axis=0)
    es = [e - 2 * x0] + [e - 2 * x for x in xs]
    out = []
    for v in es:
        out.extend(perp(prod(v, v)))
        out.append(v @ qmat @ v)
    for i, j in CROSS_PAIRS:
        out.extend(perp(prod(es[i], es[j]) - es[i] - es[j]))
    d = np.linalg.det(np.vstack([x0, xs]))
    out.append(rho / d if abs(d) > 1e-300 else 1e300)
    return np.asarray(out, dtype=complex)


def _denominator_ladder(max_den: int):
    d = 10
    while d < max_den:
        yield d
        d *= 10
    yield max_den


def search_basis(pa: ParametricAlgebra, config: SearchConfig = SearchConfig(), **overrides):
    """Best-effort random-restart least squares; exact re-verification on success.

    Returns a basis matrix that passes :func:`recognize` exactly, or None.
    None says nothing about existence. Keyword overrides patch ``config``.
    """
    cfg = replace(config, **overrides)
    if pa.n != 4 or pa.domain == COMPLEX:
        return None
    e = core.find_unit(pa.base)
    if e is None or not check_unit_for_all_c(pa, e):
        return None
    dom = pa.domain
    ctens = np.array([[[complex(x) for x in row] for row in plane] for plane in pa.base.c])
    qmat = np.array([[complex(x) for x in row] for row in pa.quadric.b])
    ev = np.array([complex(x) for x in e])
    cplx = dom == EISENSTEIN
    nvar = 12 * (2 if cplx else 1)
    rng = np.random.default_rng(cfg.seed)

    def unpack(p):
        if cplx:
            return (p[:12] + 1j * p[12:]).reshape(3, 4)
        return p.reshape(3, 4).astype(complex)

    def fun(p, rho):
        r = _residuals(ctens, qmat, ev, unpack(p), rho)
        return np.concatenate([r.real, r.imag]) if cplx else r.real

    for _ in range(cfg.attempts):
        p = rng.normal(scale=cfg.start_scale, size=nvar)
        try:
            # shrink the det barrier gradually; dropping it at once collapses to e_j = 0
            for rho in cfg.barrier_schedule:
                p = least_squares(fun, p, args=(rho,), method="lm", max_nfev=3000).x
            p = least_squares(fun, p, args=(0.0,), method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=5000).x
        except (ValueError, np.linalg.LinAlgError):
            continue
        xs = unpack(p)
        mnum = np.vstack([ev - xs.sum(axis=0), xs])
        # the roots are degenerate, so LM stalls near 1e-7; exact checks decide
        if np.max(np.abs(fun(p, 0.0)[:-1])) > cfg.numeric_gate or abs(np.linalg.det(mnum)) < cfg.min_det:
            continue
        for den in _denominator_ladder(cfg.max_den):
            rows = [[_snap(v, dom, den) for v in row] for row in xs]
            row0 = [convert(e[k], dom) - sum((r[k] for r in rows), core.zero_of(dom)) for k in range(4)]
            m = tuple(tuple(r) for r in [row0] + rows)
            if linalg.det(m) != 0 and recognize(pa, basis=m).passed:
                return m
    return None


# -- constructors ----------------------------------------------------------


def build_A3_from_gdhb(fd: FuchsianData, tuple_index: int = 0) -> ParametricAlgebra:
    """The gDHB system of ``fd`` (m = 3) with one of its anharmonic quadrics."""
    if fd.m != 3:
        raise InvalidInputError("the parametric algebra needs m = 3")
    g = build_gdhb(fd)
    q = anharmonic_constraints(fd.poles)[tuple_index]
    return ParametricAlgebra.from_system(g.system, q)


def scramble(pa: ParametricAlgebra, m: Sequence[Sequence]):
    """Express ``pa`` in the basis ``m``; the original basis is then ``m^{-1}``."""
    return parametric_change_basis(pa, m), linalg.inverse(core._as_domain_matrix(m, pa.domain))


def random_unimodular(rng, n: int = 4, steps: int = 6, bound: int = 2):
    """Product of elementary integer matrices, so the inverse stays small."""
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.choice(n, size=2, replace=False)
        k = int(rng.integers(-bound, bound + 1)) or 1
        for col in range(n):
            m[i][col] += k * m[j][col]
    perm = rng.permutation(n)
    return tuple(tuple(m[p]) for p in perm)


def isomorphic_by(alg1: Algebra, alg2: Algebra, m: Sequence[Sequence]) -> bool:
    return core.change_basis(alg1, m).c == alg2.c

