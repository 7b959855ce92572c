#!/usr/bin/env python3
"""Is the stored level-3 system a gDHB system, and in which basis?

The identity map (W, X, Y, Z) = (X0..X3) fails the recognizer. The numerical
search finds an exact basis in which it passes; the extracted (alpha, beta)
are compared with the Fuchsian data of the Picard-Fuchs equation.
"""
from dhbkit import core, corpus, dhb, linalg
from dhbkit.scalars import format_scalar


def show(m):
    return "\n".join("  [" + ", ".join(format_scalar(x) for x in row) + "]" for row in m)


def main():
    sys, q = corpus.level3_system()
    pa = dhb.ParametricAlgebra.from_system(sys, q)
    ident = dhb.recognize(pa, basis=linalg.identity(4, core.one_of(pa.domain)))
    print("identity basis:", "passes" if ident.passed else f"fails ({ident.message})")

    rep = dhb.recognize(pa, attempts=30, seed=0)
    if not rep.passed:
        print("search found nothing:", rep.message)
        return
    nf = rep.normal_form
    print("basis found (rows = new basis in W, X, Y, Z coordinates):")
    print(show(rep.basis_used))
    print("alpha =", [format_scalar(x) for x in nf.alpha])
    print("beta  =", [format_scalar(x) for x in nf.beta])
    print("c     =", format_scalar(nf.c[0]))
    fd = corpus.level3_fuchsian()
    print("Picard-Fuchs alpha =", [format_scalar(x) for x in fd.alpha])
    print("Picard-Fuchs beta  =", [format_scalar(x) for x in fd.beta])
    same = sorted(map(str, nf.alpha)) == sorted(map(str, fd.alpha))
    print("alpha multiset agrees:", same, "| beta agrees:", tuple(nf.beta) == tuple(fd.beta))


if __name__ == "__main__":
    main()
