#!/usr/bin/env python3
"""Recovery rate of the numerical basis search on scrambled round-trip fixtures.

Every returned basis is re-checked exactly; a basis that fails is counted as a
false positive (there should be none).
"""
import argparse
import time
from fractions import Fraction as F

import numpy as np

from dhbkit import dhb
from dhbkit.config import SearchConfig
from dhbkit.fuchsian import FuchsianData


def random_fd(rng):
    def frac(lim, den):
        return F(int(rng.integers(-lim, lim + 1)), int(rng.integers(1, den + 1)))

    while True:
        poles = tuple(frac(5, 3) for _ in range(3))
        if len(set(poles)) == 3:
            break
    return FuchsianData(poles, tuple(frac(6, 6) for _ in range(3)), tuple(frac(6, 6) for _ in range(2)))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=10, help="number of fixtures")
    ap.add_argument("--attempts", type=int, default=20)
    ap.add_argument("--seed", type=int, default=20261016)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    found = false_pos = 0
    for i in range(args.n):
        fd = random_fd(rng)
        pa, _ = dhb.scramble(dhb.build_A3_from_gdhb(fd), dhb.random_unimodular(rng))
        t0 = time.perf_counter()
        m = dhb.search_basis(pa, SearchConfig(attempts=args.attempts, seed=int(rng.integers(1 << 30))))
        dt = time.perf_counter() - t0
        if m is None:
            print(f"{i:2d}  none           {dt:6.2f}s")
            continue
        nf = dhb.recognize(pa, basis=m).normal_form
        if nf is None:
            false_pos += 1
            print(f"{i:2d}  FALSE POSITIVE {dt:6.2f}s")
            continue
        found += 1
        print(f"{i:2d}  recovered      {dt:6.2f}s  alpha={[str(a) for a in nf.alpha]}  input={[str(a) for a in fd.alpha]}")
    print(f"recovered {found}/{args.n}, false positives {false_pos}")


if __name__ == "__main__":
    main()
