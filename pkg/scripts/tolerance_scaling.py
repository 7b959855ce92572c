#!/usr/bin/env python3
"""How the Brioschi residual of the theta case responds to the integrator.

Adaptive runs: tolerance halved repeatedly. Fixed-step runs: step halved.
scipy's RK45 and DOP853 integrate the same equation as a cross-check on the
Wronskian drift.
"""
from fractions import Fraction as F

import numpy as np
from scipy.integrate import solve_ivp

from dhbkit import fuchsian, numeric
from dhbkit.fuchsian import HGParams

PATH = (0.5, 0.5 + 0.6j, -0.4 + 0.5j, -0.3 + 0.1j)
SAMPLES = 5


def pipeline(fd, **kw):
    g = fuchsian.build_gdhb(fd)
    path = numeric.make_path(PATH, fd.poles)
    sol = numeric.integrate_fuchsian(fuchsian.q_rational_from_fuchsian(fd), path, samples_per_segment=SAMPLES, **kw)
    return numeric.gdhb_residual(g, numeric.brioschi(sol, fd.poles)).worst, sol.wronskian_drift()


def scipy_drift(fd, method, tol):
    num = fuchsian.q_rational_from_fuchsian(fd)
    qf = numeric._numeric_rf(num)
    y = np.array([1, 0, 0, 1], dtype=complex)
    for za, zb in zip(PATH[:-1], PATH[1:]):
        dz = zb - za

        def f(s, v, za=za, dz=dz):
            q = qf(za + s * dz)
            return dz * np.array([v[1], -q * v[0], v[3], -q * v[2]])

        y = solve_ivp(f, (0, 1), y, method=method, rtol=tol, atol=tol).y[:, -1]
    return abs(y[0] * y[3] - y[2] * y[1] - 1)


def main():
    fd = fuchsian.hypergeometric_fuchsian(HGParams(F(1, 2), F(1, 2), F(1)))
    print("adaptive DP5(4): tol, residual, ratio to previous")
    prev = None
    for tol in (1e-6, 5e-7, 2.5e-7, 1e-8, 5e-9, 1e-10, 5e-11):
        r, _ = pipeline(fd, tol=tol)
        print(f"  {tol:8.1e}  {r:9.3e}  {'' if prev is None else f'{prev / r:6.2f}x'}")
        prev = r
    print("fixed-step DP5: steps per sample interval, residual, ratio")
    prev = None
    for n in (1, 2, 4, 8, 16):
        r, _ = pipeline(fd, fixed_steps=n)
        print(f"  {n:3d}  {r:9.3e}  {'' if prev is None else f'{prev / r:6.2f}x'}")
        prev = r
    print("scipy cross-check, Wronskian drift at the path end")
    for method in ("RK45", "DOP853"):
        prev = None
        for tol in (1e-8, 5e-9, 2.5e-9):
            d = scipy_drift(fd, method, tol)
            print(f"  {method:6s} {tol:8.1e}  {d:9.3e}  {'' if prev is None else f'{prev / d:6.2f}x'}")
            prev = d


if __name__ == "__main__":
    main()
