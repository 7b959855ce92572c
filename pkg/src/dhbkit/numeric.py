"""Numerical integration and residual checks.

Quadratic systems and Fuchsian equations are integrated with a Dormand-Prince
5(4) pair on complex state vectors. Fuchsian equations are integrated along
straight segments in the z-plane, parametrized by ``s in [0, 1]``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .core import LinearForm, QuadraticSystem, QuadricForm
from .fuchsian import GDHBSystem
from .polys import RationalFunction

# Dormand-Prince 5(4) tableau
_C = np.array([0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1, 1])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B5 = np.array([35 / 384, 0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0])
_B4 = np.array([5179 / 57600, 0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])
_E = _B5 - _B4


class IntegrationError(RuntimeError):
    pass


class ClearanceError(ValueError):
    pass


class ResampleError(RuntimeError):
    """A solution ``y_1`` vanished on the path; perturb the path and retry."""


@dataclass
class _RunResult:
    ts: np.ndarray
    ys: np.ndarray
    truncated: bool
    message: str
    steps: int


def _dopri(
    f: Callable[[float, np.ndarray], np.ndarray],
    y0: np.ndarray,
    t0: float,
    outputs: Sequence[float],
    tol: float,
    blowup: float = 1e12,
    max_steps: int = 1_000_000,
) -> _RunResult:
    """Integrate and return the state at every time in ``outputs`` (increasing)."""
    y = np.array(y0, dtype=complex)
    t = t0
    span = abs(outputs[-1] - t0) if len(outputs) else 1.0
    h_try = 1e-3 * span if span > 0 else 1e-3
    k1 = f(t, y)
    ts, ys = [t0], [y.copy()]
    steps = 0
    for target in outputs:
        while t < target:
            if steps >= max_steps:
                return _RunResult(np.array(ts), np.array(ys), True, "step budget exhausted", steps)
            clipped = t + h_try >= target
            h = target - t if clipped else h_try
            ks = [k1]
            for i in range(1, 7):
                yi = y + h * sum(a * k for a, k in zip(_A[i], ks))
                ks.append(f(t + _C[i] * h, yi))
            y_new = y + h * sum(b * k for b, k in zip(_B5, ks) if b != 0)
            err_vec = h * sum(e * k for e, k in zip(_E, ks))
            steps += 1
            if np.all(np.isfinite(y_new)):
                scale = tol + tol * np.maximum(np.abs(y), np.abs(y_new))
                err = float(np.max(np.abs(err_vec) / scale))
            else:
                err = np.inf
            if err == 0:
                factor = 5.0
            elif np.isfinite(err):
                factor = min(5.0, max(0.2, 0.9 * err ** (-0.2)))
            else:
                factor = 0.2
            if err <= 1.0:
                t = target if clipped else t + h
                y = y_new
                k1 = ks[6]
                h_try = max(h_try, h * factor) if clipped else h * factor
                if np.max(np.abs(y), initial=0.0) > blowup:
                    ts.append(t)
                    ys.append(y.copy())
                    return _RunResult(np.array(ts), np.array(ys), True, f"blow-up past |x| > {blowup:g}", steps)
            else:
                h_try = h * factor
                if h_try < 1e-14 * max(1.0, abs(t)):
                    return _RunResult(np.array(ts), np.array(ys), True, "step size underflow", steps)
        ts.append(target)
        ys.append(y.copy())
    return _RunResult(np.array(ts), np.array(ys), False, "ok", steps)


def dopri_fixed(f: Callable, y0: Sequence, t0: float, t1: float, steps: int) -> np.ndarray:
    """Fifth-order solution with ``steps`` equal steps; for order checks."""
    y = np.array(y0, dtype=complex)
    h = (t1 - t0) / steps
    for n in range(steps):
        t = t0 + n * h
        ks = [f(t, y)]
        for i in range(1, 6):
            ks.append(f(t + _C[i] * h, y + h * sum(a * k for a, k in zip(_A[i], ks))))
        y = y + h * sum(b * k for b, k in zip(_B5, ks))
    return y


# -- quadratic systems -----------------------------------------------------


@dataclass
class Trajectory:
    t: np.ndarray
    x: np.ndarray
    truncated: bool
    message: str
    tol: float
    system: QuadraticSystem | None = field(default=None, repr=False)


def quadratic_rhs(sys: QuadraticSystem) -> Callable:
    a = sys.as_array()
    if np.all(a.imag == 0):
        a = a.real

    def f(_t, x):
        return np.einsum("ijk,j,k->i", a, x, x)

    return f


def integrate_quadratic(
    sys: QuadraticSystem,
    x0: Sequence,
    t_span: tuple,
    tol: float = 1e-10,
    n_samples: int = 101,
    t_eval: Sequence[float] | None = None,
    blowup: float = 1e12,
) -> Trajectory:
    x0 = np.array([complex(v) for v in x0])
    if x0.shape != (sys.n,) or not np.all(np.isfinite(x0)):
        raise ValueError("x0 must be a finite vector of the system dimension")
    if tol <= 0:
        raise ValueError("tol must be positive")
    t0, t1 = t_span
    if t_eval is None:
        t_eval = np.linspace(t0, t1, n_samples)[1:]
    else:
        t_eval = [t for t in t_eval if t > t0]
    run = _dopri(quadratic_rhs(sys), x0, t0, list(t_eval), tol, blowup=blowup)
    return Trajectory(run.ts, run.ys, run.truncated, run.message, tol, sys)


# -- Fuchsian equations along complex paths --------------------------------


@dataclass(frozen=True)
class Path:
    waypoints: tuple
    clearance: float

    def segments(self):
        return list(zip(self.waypoints[:-1], self.waypoints[1:]))


def _segment_distance(p: complex, a: complex, b: complex) -> float:
    d = b - a
    if d == 0:
        return abs(p - a)
    s = ((p - a) * d.conjugate()).real / abs(d) ** 2
    s = min(1.0, max(0.0, s))
    return abs(p - (a + s * d))


def default_clearance(poles: Sequence) -> float:
    pts = [complex(p) for p in poles]
    if len(pts) < 2:
        return 0.1
    return 0.1 * min(abs(p - q) for p, q in itertools.combinations(pts, 2))


def make_path(waypoints: Sequence, poles: Sequence, clearance: float | None = None) -> Path:
    wp = tuple(complex(w) for w in waypoints)
    if len(wp) < 2:
        raise ValueError("a path needs at least two waypoints")
    delta = default_clearance(poles) if clearance is None else clearance
    for p in poles:
        pc = complex(p)
        for a, b in zip(wp[:-1], wp[1:]):
            dist = _segment_distance(pc, a, b)
            if dist < delta:
                raise ClearanceError(f"path passes within {dist:.3g} of pole {pc} (clearance {delta:.3g})")
    return Path(wp, delta)


def _numeric_rf(rf: RationalFunction) -> Callable[[complex], complex]:
    num = np.array([complex(c) for c in reversed(rf.num.c)] or [0j])
    den = np.array([complex(c) for c in reversed(rf.den.c)])
    return lambda z: np.polyval(num, z) / np.polyval(den, z)


def _poles_of(rf: RationalFunction) -> list:
    den = [complex(c) for c in reversed(rf.den.c)]
    return list(np.roots(den)) if len(den) > 1 else []


@dataclass
class ODESolution:
    z: np.ndarray
    y1: np.ndarray
    y1p: np.ndarray
    y2: np.ndarray
    y2p: np.ndarray
    wronskian: np.ndarray
    potential: RationalFunction | None
    normal_form: bool
    tol: float

    @property
    def w0(self) -> complex:
        return complex(self.wronskian[0])

    def sampled_wronskian(self) -> np.ndarray:
        return self.y1 * self.y2p - self.y2 * self.y1p

    def wronskian_drift(self) -> float:
        w = self.sampled_wronskian()
        return float(np.max(np.abs(w - self.w0)) / abs(self.w0))


def integrate_fuchsian(
    potential,
    path: Path,
    tol: float = 1e-10,
    init=((1, 0), (0, 1)),
    samples_per_segment: int = 40,
    fixed_steps: int | None = None,
) -> ODESolution:
    """Two solutions of ``y'' + Q y = 0`` (or ``y'' + p y' + q y = 0``) along ``path``.

    ``potential`` is a :class:`RationalFunction` ``Q`` or a pair ``(p, q)``.
    In the general form the Wronskian is co-integrated via ``W' = -p W``.
    ``fixed_steps`` switches to that many equal steps between samples (``tol`` is
    then only recorded); useful for order checks.
    """
    if isinstance(potential, RationalFunction):
        qf = _numeric_rf(potential)
        pf = None
        poles = _poles_of(potential)
    else:
        p_rf, q_rf = potential
        pf, qf = _numeric_rf(p_rf), _numeric_rf(q_rf)
        poles = _poles_of(p_rf) + _poles_of(q_rf)
    for pole in poles:
        for a, b in path.segments():
            if _segment_distance(pole, a, b) < path.clearance:
                raise ClearanceError(f"path passes within clearance of pole {pole:.6g}")
    (u0, u0p), (v0, v0p) = init
    w0 = complex(u0) * complex(v0p) - complex(v0) * complex(u0p)
    if w0 == 0:
        raise ValueError("initial conditions are linearly dependent")
    state = np.array([u0, u0p, v0, v0p, w0], dtype=complex)
    zs, states = [path.waypoints[0]], [state.copy()]
    outs = list(np.linspace(0.0, 1.0, samples_per_segment + 1)[1:])
    for za, zb in path.segments():
        dz = zb - za

        def f(s, y, za=za, dz=dz):
            z = za + s * dz
            q = qf(z)
            if pf is None:
                return dz * np.array([y[1], -q * y[0], y[3], -q * y[2], 0.0])
            p = pf(z)
            return dz * np.array([y[1], -p * y[1] - q * y[0], y[3], -p * y[3] - q * y[2], -p * y[4]])

        if fixed_steps is None:
            run = _dopri(f, state, 0.0, outs, tol)
        else:
            ys, y, s0 = [state], state, 0.0
            for s1 in outs:
                y = dopri_fixed(f, y, s0, s1, fixed_steps)
                ys.append(y)
                s0 = s1
            ok = bool(np.all(np.isfinite(ys[-1])))
            run = _RunResult(np.array([0.0] + outs), np.array(ys), not ok, "ok" if ok else "non-finite state", 0)
        if run.truncated:
            raise IntegrationError(f"Fuchsian integration failed: {run.message}")
        for s, y in zip(run.ts[1:], run.ys[1:]):
            zs.append(za + s * dz)
            states.append(y)
        state = run.ys[-1]
    arr = np.array(states)
    return ODESolution(
        z=np.array(zs),
        y1=arr[:, 0],
        y1p=arr[:, 1],
        y2=arr[:, 2],
        y2p=arr[:, 3],
        wronskian=arr[:, 4],
        potential=potential if isinstance(potential, RationalFunction) else None,
        normal_form=pf is None,
        tol=tol,
    )


# -- Brioschi variables ----------------------------------------------------


@dataclass
class BrioschiSamples:
    z: np.ndarray
    tau: np.ndarray
    X: np.ndarray
    dX: np.ndarray
    poles: tuple
    tol: float


def brioschi(sol: ODESolution, poles: Sequence, potential: RationalFunction | None = None) -> BrioschiSamples:
    """Brioschi variables and their exact tau-derivatives from sampled solutions.

    ``X_0 = y1 y1'/W`` and ``X_j = X_0 - (y1^2/W)/(z - a_j)`` use the constant
    Wronskian fixed by the initial data. ``d/dtau = (y1^2/W_s) d/dz`` uses the
    Wronskian ``W_s`` recomputed from both sampled solutions, as ``dtau/dz``
    follows from ``tau = y2/y1``; integration error therefore shows up as a
    residual instead of cancelling.
    """
    pot = potential if potential is not None else sol.potential
    if pot is None:
        raise ValueError("brioschi needs the normal-form potential")
    qf = _numeric_rf(pot)
    z, y1, y1p = sol.z, sol.y1, sol.y1p
    scale = np.max(np.abs(y1))
    bad = np.abs(y1) < 1e-8 * scale
    if np.any(bad):
        where = z[np.argmax(bad)]
        raise ResampleError(f"y1 vanishes near z = {where:.6g}; perturb the path midpoint")
    w0 = sol.w0
    ws = sol.sampled_wronskian()
    if np.any(ws == 0):
        raise ResampleError("degenerate Wronskian on the path")
    q = np.array([qf(zz) for zz in z])
    tau = sol.y2 / y1
    h = y1 * y1 / w0
    x0 = y1 * y1p / w0
    dx0_dz = (y1p * y1p - q * y1 * y1) / w0
    dh_dz = 2 * y1 * y1p / w0
    dz_dtau = y1 * y1 / ws
    cols, dcols = [x0], [dx0_dz]
    for a in poles:
        d = z - complex(a)
        cols.append(x0 - h / d)
        dcols.append(dx0_dz - (dh_dz / d - h / (d * d)))
    X = np.stack(cols, axis=1)
    dX = np.stack(dcols, axis=1) * dz_dtau[:, None]
    return BrioschiSamples(z, tau, X, dX, tuple(poles), sol.tol)


# -- residual reports ------------------------------------------------------


@dataclass
class ResidualReport:
    equations: tuple
    constraints: tuple
    samples: int
    tol: float | None
    label: str = ""

    @property
    def max_equation(self) -> float:
        return max(self.equations, default=0.0)

    @property
    def max_constraint(self) -> float:
        return max(self.constraints, default=0.0)

    @property
    def worst(self) -> float:
        return max(self.max_equation, self.max_constraint)

    def passes(self, threshold: float) -> bool:
        return self.worst <= threshold


def _quadric_array(q: QuadricForm) -> np.ndarray:
    return np.array([[complex(x) for x in row] for row in q.b])


def gdhb_residual(gdhb, bs: BrioschiSamples, constraints: Sequence[QuadricForm] | None = None) -> ResidualReport:
    """Max over samples of ``|dX_k/dtau - RHS_k| / max(1, |X|^2)`` and constraint values."""
    if isinstance(gdhb, GDHBSystem):
        sys = gdhb.system
        if constraints is None:
            constraints = gdhb.constraints
    else:
        sys = gdhb
    constraints = constraints or ()
    if sys.n != bs.X.shape[1]:
        raise ValueError(f"system has {sys.n} variables, samples have {bs.X.shape[1]}")
    a = sys.as_array()
    rhs = np.einsum("ijk,sj,sk->si", a, bs.X, bs.X)
    norm = np.maximum(1.0, np.sum(np.abs(bs.X) ** 2, axis=1))
    eq = np.max(np.abs(bs.dX - rhs) / norm[:, None], axis=0)
    cons = []
    for c in constraints:
        b = _quadric_array(c)
        vals = np.einsum("jk,sj,sk->s", b, bs.X, bs.X)
        cons.append(float(np.max(np.abs(vals) / (norm * np.max(np.abs(b))))))
    return ResidualReport(tuple(float(v) for v in eq), tuple(cons), len(bs.z), bs.tol, "gdhb")


def invariance_drift(traj: Trajectory, q: QuadricForm, cofactor: LinearForm | None = None) -> ResidualReport:
    """``max |Q(x(t)) exp(-int_0^t L) - Q(x(0))|`` along a trajectory."""
    b = _quadric_array(q)
    x = traj.x
    if cofactor is None or cofactor.is_zero():
        weight = np.ones(len(traj.t))
    else:
        if traj.system is None:
            raise ValueError("trajectory does not carry its system")
        l = np.array([complex(v) for v in cofactor.l])
        base = quadratic_rhs(traj.system)

        def f(t, y):
            return np.concatenate([base(t, y[:-1]), [l @ y[:-1]]])

        run = _dopri(f, np.concatenate([x[0], [0.0]]), traj.t[0], list(traj.t[1:]), traj.tol)
        if run.truncated or len(run.ts) != len(traj.t):
            raise IntegrationError("cofactor integral did not cover the trajectory")
        x = run.ys[:, :-1]
        weight = np.exp(-run.ys[:, -1])
    qv = np.einsum("jk,sj,sk->s", b, x, x) * weight
    drift = float(np.max(np.abs(qv - qv[0]))) if len(qv) else 0.0
    return ResidualReport((drift,), (), len(traj.t), traj.tol, "invariance")


def sample_residuals(sys: QuadraticSystem, bs: BrioschiSamples) -> np.ndarray:
    """Per-sample worst normalized equation residual (for CSV dumps)."""
    rhs = np.einsum("ijk,sj,sk->si", sys.as_array(), bs.X, bs.X)
    norm = np.maximum(1.0, np.sum(np.abs(bs.X) ** 2, axis=1))
    return np.max(np.abs(bs.dX - rhs), axis=1) / norm


def default_path(poles: Sequence, shift: float = 0.0) -> Path:
    """A short polyline around the pole centroid, inside the nearest-pole disc.

    ``shift`` rotates the shape; use it to resample when ``y1`` vanishes.
    """
    pts = [complex(p) for p in poles]
    c = sum(pts) / len(pts)
    d = min(abs(p - c) for p in pts) or 1.0
    rot = np.exp(1j * shift)
    shape = (0.29 + 0.17j, 0.31 + 0.52j, -0.23 + 0.43j, -0.26 + 0.11j)
    wp = [c + d * rot * s for s in shape]
    for p in pts:
        if min(abs(w - p) for w in wp) < 1e-12:
            raise ClearanceError("default path hits a pole")
    return make_path(wp, pts)
