"""Command-line front end.

Exit codes: 0 success, 1 negative verdict or residual over threshold,
2 input error.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import core, corpus, descriptor, dhb, fuchsian, linalg, numeric
from .config import VerifyConfig
from .core import InvalidInputError
from .descriptor import SCHEMA_VERSION, Descriptor
from .scalars import COMPLEX, RATIONAL, format_scalar

OK, NEGATIVE, INPUT_ERROR = 0, 1, 2



class CLIError(Exception):
    pass


# -- loading ---------------------------------------------------------------


def _parse_params(items):
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise CLIError(f"--param expects key=value, got {item!r}")
        out[key] = Fraction(value)
    return out


def load_source(source: str, params=None) -> Descriptor:
    """A descriptor file, ``-`` for stdin, or a corpus name."""
    params = params or {}
    if source == "-":
        return descriptor.loads(sys.stdin.read())
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return descriptor.loads(fh.read())
    try:
        entry = corpus.get(source, **params)
    except KeyError as exc:
        raise CLIError(f"{source!r} is neither a file nor a corpus entry ({exc.args[0]})") from None
    except ValueError as exc:
        raise CLIError(str(exc)) from None
    return Descriptor(entry.system, entry.quadric, entry.fuchsian, (), entry.name, entry.note)


# -- formatting ------------------------------------------------------------


def _s(x):
    v = format_scalar(x)
    return v if isinstance(v, str) else f"{v[0]}{v[1]:+}j"


def _vec(v):
    return None if v is None else [_s(x) for x in v]


def format_system(sys_: core.QuadraticSystem) -> list[str]:
    labels = sys_.labels or tuple(f"X{k}" for k in range(sys_.n))
    lines = []
    for i in range(sys_.n):
        terms = []
        for j in range(sys_.n):
            for k in range(j, sys_.n):
                coef = sys_.a[i][j][k] * (1 if j == k else 2)
                if coef != 0:
                    mono = f"{labels[j]}^2" if j == k else f"{labels[j]}*{labels[k]}"
                    if coef == 1:
                        terms.append(f"+ {mono}")
                    elif coef == -1:
                        terms.append(f"- {mono}")
                    else:
                        terms.append(f"+ ({_s(coef)})*{mono}")
        rhs = " ".join(terms).removeprefix("+ ") if terms else "0"
        lines.append(f"d{labels[i]}/dt = {rhs}")
    return lines


def emit(report: dict, as_json: bool, out=None):
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
        return
    for key, value in report.items():
        if key == "schema_version":
            continue
        if isinstance(value, list) and value and isinstance(value[0], str) and key in ("equations", "system"):
            out.write(f"{key}:\n")
            for line in value:
                out.write(f"  {line}\n")
        elif isinstance(value, dict):
            out.write(f"{key}:\n")
            for k, v in value.items():
                out.write(f"  {k}: {v}\n")
        else:
            out.write(f"{key}: {value}\n")


def _report(command: str, **fields) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, **fields}


# -- commands --------------------------------------------------------------


def cmd_analyze(args) -> tuple[dict, int]:
    d = load_source(args.source, _parse_params(args.param))
    sys_ = d.system
    if sys_.domain == COMPLEX:
        raise CLIError("analysis needs an exact scalar domain (rational or eisenstein)")
    alg = core.system_to_algebra(sys_)
    unit = core.find_unit(alg)
    res = {
        "name": d.name,
        "dim": sys_.n,
        "scalar_domain": sys_.domain,
        "unit": _vec(unit),
        "derivation_dimension": core.derivation_dimension(alg),
    }
    if sys_.n == 3:
        res["classification"] = core.classify_rank3(alg).value
    if d.quadric is not None:
        cof = core.find_cofactor(sys_, d.quadric)
        res["cofactor"] = _vec(cof.l) if cof is not None else None
    return _report("analyze", **res), OK


def _basis_arg(args, pa):
    if args.basis:
        with open(args.basis, encoding="utf-8") as fh:
            m = descriptor.matrix_from_json(fh.read(), pa.domain)
        if len(m) != pa.n:
            raise CLIError(f"basis must be {pa.n}x{pa.n}")
        return m
    if args.search:
        return None
    return linalg.identity(pa.n, core.one_of(pa.domain))


def cmd_recognize(args) -> tuple[dict, int]:
    d = load_source(args.source, _parse_params(args.param))
    if d.system.n != 4:
        raise CLIError(f"recognize needs dimension 4, got {d.system.n}")
    if d.quadric is None:
        raise CLIError("recognize needs a quadric")
    if d.system.domain == COMPLEX and not args.basis:
        raise CLIError("complex descriptors need an explicit --basis")
    cof = core.find_cofactor(d.system, d.quadric) if d.system.domain != COMPLEX else None
    pa = dhb.ParametricAlgebra.from_system(d.system, d.quadric)
    basis = _basis_arg(args, pa)
    rep = dhb.recognize(pa, basis, attempts=args.attempts, seed=args.seed)
    res = {
        "name": d.name,
        "cofactor": _vec(cof.l) if cof is not None else None,
        "search": bool(args.search and not args.basis),
        "basis": None if rep.basis_used is None else [_vec(r) for r in rep.basis_used],
        "condition1": rep.condition1,
        "condition3": {"".join("+" if s > 0 else "-" for s in k): (None if v is None else _s(v))
                       for k, v in rep.condition3.items()},
        "condition2": None
        if rep.condition2 is None
        else {"c": _vec(rep.condition2[0]), "lambda": _vec(rep.condition2[1])},
        "message": rep.message,
    }
    nf = rep.normal_form
    if nf is not None:
        res["normal_form"] = {
            "alpha": _vec(nf.alpha),
            "beta": _vec(nf.beta),
            "c": _vec(nf.c),
            "alpha_tilde": _vec(nf.alpha_tilde),
            "beta_tilde": _vec(nf.beta_tilde),
            "gamma": _vec(nf.gamma),
        }
    res["recognized"] = rep.passed
    return _report("recognize", **res), OK if rep.passed else NEGATIVE


def cmd_build_dhb(args) -> tuple[dict, int]:
    if args.from_hypergeometric:
        hg = fuchsian.HGParams(*(Fraction(v) for v in args.from_hypergeometric))
        fd = fuchsian.hypergeometric_fuchsian(hg)
        name = "hypergeometric " + " ".join(args.from_hypergeometric)
    elif args.input:
        with open(args.input, encoding="utf-8") as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise CLIError(f"not valid JSON: {exc}") from None
        fd = descriptor.fuchsian_from_dict(obj.get("fuchsian", obj))
        name = obj.get("name", os.path.basename(args.input))
    else:
        raise CLIError("give a Fuchsian JSON file or --from-hypergeometric A B G")
    g = fuchsian.build_gdhb(fd, all_tuples=args.all_tuples)
    quadric = g.constraints[0] if fd.m == 3 else None
    d = Descriptor(g.system, quadric, fd, tuple(g.constraints), name, "gDHB system")
    text = descriptor.dumps(d)
    res = {"m": fd.m, "dim": g.system.n, "constraints": len(g.constraints), "equations": format_system(g.system)}
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        res["written"] = args.output
        return _report("build-dhb", **res), OK
    if args.json:
        res["descriptor"] = descriptor.to_dict(d)
        return _report("build-dhb", **res), OK
    sys.stdout.write(text)
    return {}, OK


def _start_point(n, dom, seed):
    rng = np.random.default_rng(seed)
    x = 0.2 + 0.3 * rng.random(n)
    return x.astype(complex) if dom == COMPLEX else x


def cmd_verify(args) -> tuple[dict, int]:
    d = load_source(args.source, _parse_params(args.param))
    want = {k for k in ("integrate", "brioschi", "invariance") if getattr(args, k)}
    if not want:
        want = {"integrate"}
        if d.fuchsian is not None:
            want.add("brioschi")
        if d.quadric is not None:
            want.add("invariance")
    cfg = VerifyConfig(tol=args.tol, t_end=args.t_end, seed=args.seed, path_shift=args.path_shift)
    th = cfg.thresholds
    res = {"name": d.name, "tol": cfg.tol}
    verdict = OK
    sys_ = d.system
    if "integrate" in want or "invariance" in want:
        x0 = _start_point(sys_.n, sys_.domain, cfg.seed)
        traj = numeric.integrate_quadratic(sys_, x0, (0.0, cfg.t_end), tol=cfg.tol)
        res["integrate"] = {
            "samples": len(traj.t),
            "t_reached": float(traj.t[-1]),
            "truncated": traj.truncated,
            "message": traj.message or "ok",
        }
    if "invariance" in want:
        if d.quadric is None:
            raise CLIError("--invariance needs a quadric")
        cof = None if sys_.domain == COMPLEX else core.find_cofactor(sys_, d.quadric)
        if cof is None and sys_.domain != COMPLEX:
            res["invariance"] = {"cofactor": None, "verdict": "quadric is not invariant"}
            verdict = NEGATIVE
        else:
            rep = numeric.invariance_drift(traj, d.quadric, cof)
            q0 = abs(complex(np.einsum("jk,j,k->", numeric._quadric_array(d.quadric), traj.x[0], traj.x[0])))
            limit = (th.first_integral if cof is None or cof.is_zero() else th.cofactor) * max(1.0, q0)
            ok = rep.worst <= limit
            res["invariance"] = {"cofactor": _vec(cof.l) if cof else None, "drift": rep.worst, "threshold": limit,
                                 "pass": ok}
            verdict = max(verdict, OK if ok else NEGATIVE)
    if "brioschi" in want:
        if d.fuchsian is None:
            raise CLIError("--brioschi needs a fuchsian block")
        fd = d.fuchsian
        g = fuchsian.build_gdhb(fd)
        pot = fuchsian.q_rational_from_fuchsian(fd)
        try:
            path = numeric.default_path(fd.poles, shift=cfg.path_shift)
            sol = numeric.integrate_fuchsian(pot, path, tol=cfg.tol, samples_per_segment=cfg.samples_per_segment)
            bs = numeric.brioschi(sol, fd.poles)
        except (numeric.ClearanceError, numeric.ResampleError) as exc:
            raise CLIError(f"{exc}; retry with a different --path-shift") from None
        rep = numeric.gdhb_residual(g, bs)
        limit = th.brioschi_rational if fd.domain == RATIONAL else th.brioschi_other
        ok = rep.passes(limit)
        res["brioschi"] = {
            "samples": rep.samples,
            "equation_residual": rep.max_equation,
            "constraint_residual": rep.max_constraint,
            "wronskian_drift": sol.wronskian_drift(),
            "threshold": limit,
            "descriptor_is_gdhb_system": g.system == sys_,
            "pass": ok,
        }
        verdict = max(verdict, OK if ok else NEGATIVE)
        if args.dump:
            _dump_csv(args.dump, bs, numeric.sample_residuals(g.system, bs))
            res["dump"] = args.dump
    res["verified"] = verdict == OK
    return _report("verify", **res), verdict


def _dump_csv(path, bs, resid):
    m = bs.X.shape[1]
    header = ["z_re", "z_im", "tau_re", "tau_im"]
    for k in range(m):
        header += [f"X{k}_re", f"X{k}_im"]
    header.append("residual")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for s in range(len(bs.z)):
            row = [bs.z[s].real, bs.z[s].imag, bs.tau[s].real, bs.tau[s].imag]
            for k in range(m):
                row += [bs.X[s, k].real, bs.X[s, k].imag]
            row.append(resid[s])
            w.writerow([repr(float(v)) for v in row])


def cmd_corpus(args) -> tuple[dict, int]:
    if args.action == "list":
        return _report("corpus", entries=corpus.names()), OK
    if not args.name:
        raise CLIError(f"corpus {args.action} needs a NAME")
    d = load_source(args.name, _parse_params(args.param)) if args.name in corpus.names() else None
    if d is None:
        raise CLIError(f"unknown corpus entry {args.name!r}")
    if args.action == "export":
        sys.stdout.write(descriptor.dumps(d))
        return {}, OK
    res = {"name": d.name, "dim": d.system.n, "scalar_domain": d.system.domain, "note": d.note,
           "equations": format_system(d.system)}
    if d.quadric is not None:
        res["quadric"] = {f"{j},{k}": _s(v) for (j, k), v in d.quadric.monomials().items()}
    if d.fuchsian is not None:
        fd = d.fuchsian
        res["fuchsian"] = {"poles": _vec(fd.poles), "alpha": _vec(fd.alpha), "beta": _vec(fd.beta)}
    if args.json:
        res["descriptor"] = descriptor.to_dict(d)
    return _report("corpus", **res), OK


# -- entry point -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dhbkit", description="Quadratic systems, their algebras and gDHB systems.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, source=True):
        if source:
            sp.add_argument("source", help="descriptor JSON file, '-' for stdin, or a corpus name")
            sp.add_argument("--param", action="append", metavar="KEY=VALUE", help="corpus entry parameter")
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("analyze", help="unit, derivations, rank-3 class, cofactor")
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("recognize", help="test the rank-4 gDHB conditions")
    common(sp)
    sp.add_argument("--basis", metavar="FILE", help="JSON basis matrix, rows = new basis vectors")
    sp.add_argument("--search", action="store_true", help="numerical basis search (best effort)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--attempts", type=int, default=20)
    sp.set_defaults(func=cmd_recognize)

    sp = sub.add_parser("build-dhb", help="gDHB system from Fuchsian data")
    common(sp, source=False)
    sp.add_argument("input", nargs="?", help="JSON with poles, alpha, beta")
    sp.add_argument("--from-hypergeometric", nargs=3, metavar=("ALPHA", "BETA", "GAMMA"))
    sp.add_argument("--all-tuples", action="store_true", help="emit every 4-tuple constraint")
    sp.add_argument("-o", "--output", metavar="FILE")
    sp.set_defaults(func=cmd_build_dhb)

    sp = sub.add_parser("verify", help="numerical pipelines and residuals")
    common(sp)
    sp.add_argument("--integrate", action="store_true")
    sp.add_argument("--brioschi", action="store_true")
    sp.add_argument("--invariance", action="store_true")
    sp.add_argument("--tol", type=float, default=1e-10, help="integrator tolerance")
    sp.add_argument("--t-end", type=float, default=0.5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--path-shift", type=float, default=0.0, help="rotate the default z-path (radians)")
    sp.add_argument("--dump", metavar="PATH", help="CSV of Brioschi samples")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("corpus", help="built-in systems")
    sp.add_argument("action", choices=("list", "show", "export"))
    sp.add_argument("name", nargs="?")
    sp.add_argument("--param", action="append", metavar="KEY=VALUE")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        report, code = args.func(args)
    except (CLIError, InvalidInputError, linalg.SingularMatrixError, fuchsian.NotRepresentableError,
            ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return INPUT_ERROR
    if report:
        emit(report, args.json)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
