"""JSON system descriptors. Exact scalars travel as strings."""
from __future__ import annotations

import json
from dataclasses import dataclass

from .core import InvalidInputError, QuadraticSystem, QuadricForm
from .fuchsian import FuchsianData
from .scalars import COMPLEX, EISENSTEIN, RATIONAL, format_scalar, parse_scalar

SCHEMA_VERSION = 1
DOMAINS = (RATIONAL, EISENSTEIN, COMPLEX)


@dataclass(frozen=True)
class Descriptor:
    system: QuadraticSystem
    quadric: QuadricForm | None = None
    fuchsian: FuchsianData | None = None
    constraints: tuple = ()
    name: str = ""
    note: str = ""


def _fmt_all(obj):
    if isinstance(obj, (list, tuple)):
        return [_fmt_all(x) for x in obj]
    return format_scalar(obj)


def _parse_all(obj, dom):
    if dom == COMPLEX and isinstance(obj, list) and len(obj) == 2 and not isinstance(obj[0], list):
        return parse_scalar(obj, dom)
    if isinstance(obj, list):
        return [_parse_all(x, dom) for x in obj]
    return parse_scalar(obj, dom)


def to_dict(d: Descriptor) -> dict:
    sys = d.system
    dom = sys.domain
    out = {"schema_version": SCHEMA_VERSION, "name": d.name, "dim": sys.n, "scalar_domain": dom}
    if sys.labels is not None:
        out["labels"] = list(sys.labels)
    out["tensor"] = _fmt_all(sys.a)
    if d.quadric is not None:
        out["quadric"] = _fmt_all(d.quadric.b)
    if d.constraints:
        out["constraints"] = [_fmt_all(c.b) for c in d.constraints]
    if d.fuchsian is not None:
        fd = d.fuchsian
        out["fuchsian"] = {
            "scalar_domain": fd.domain,
            "poles": _fmt_all(fd.poles),
            "alpha": _fmt_all(fd.alpha),
            "beta": _fmt_all(fd.beta),
        }
    if d.note:
        out["note"] = d.note
    return out


def dumps(d: Descriptor) -> str:
    return json.dumps(to_dict(d), indent=2, ensure_ascii=False) + "\n"


def _require(cond, msg):
    if not cond:
        raise InvalidInputError(msg)


def _square(m, n, what):
    _require(isinstance(m, list) and len(m) == n and all(isinstance(r, list) and len(r) == n for r in m),
             f"{what} must be a {n}x{n} array")


def from_dict(obj: dict) -> Descriptor:
    _require(isinstance(obj, dict), "descriptor must be a JSON object")
    _require(obj.get("schema_version") == SCHEMA_VERSION, f"schema_version must be {SCHEMA_VERSION}")
    dom = obj.get("scalar_domain")
    _require(dom in DOMAINS, f"scalar_domain must be one of {DOMAINS}")
    n = obj.get("dim")
    _require(isinstance(n, int) and n >= 1, "dim must be a positive integer")
    t = obj.get("tensor")
    _require(isinstance(t, list) and len(t) == n, f"tensor must be {n}x{n}x{n}")
    for plane in t:
        _square(plane, n, "tensor plane")
    try:
        a = _parse_all(t, dom)
        labels = obj.get("labels")
        if labels is not None:
            _require(len(labels) == n, "labels length must equal dim")
        sys = QuadraticSystem(a, labels=labels, domain=dom)
        quadric = None
        if obj.get("quadric") is not None:
            _square(obj["quadric"], n, "quadric")
            quadric = QuadricForm(tuple(map(tuple, _parse_all(obj["quadric"], dom))))
        cons = []
        for c in obj.get("constraints", []):
            _square(c, n, "constraint")
            cons.append(QuadricForm(tuple(map(tuple, _parse_all(c, dom)))))
        fd = None
        if obj.get("fuchsian") is not None:
            fd = fuchsian_from_dict(obj["fuchsian"])
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        if isinstance(exc, InvalidInputError):
            raise
        raise InvalidInputError(f"bad descriptor: {exc}") from exc
    return Descriptor(sys, quadric, fd, tuple(cons), obj.get("name", ""), obj.get("note", ""))


def fuchsian_from_dict(obj: dict) -> FuchsianData:
    _require(isinstance(obj, dict), "fuchsian block must be an object")
    dom = obj.get("scalar_domain", RATIONAL)
    _require(dom in DOMAINS, f"fuchsian scalar_domain must be one of {DOMAINS}")
    try:
        poles, alpha, beta = (tuple(_parse_all(obj[k], dom)) for k in ("poles", "alpha", "beta"))
        return FuchsianData(poles, alpha, beta)
    except KeyError as exc:
        raise InvalidInputError(f"fuchsian block lacks {exc}") from exc
    except (ValueError, TypeError) as exc:
        if isinstance(exc, InvalidInputError):
            raise
        raise InvalidInputError(f"bad fuchsian block: {exc}") from exc


def loads(text: str) -> Descriptor:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"not valid JSON: {exc}") from exc
    return from_dict(obj)


def matrix_from_json(text: str, domain: str | None = None):
    """A basis file: a JSON list of rows of exact strings."""
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"basis is not valid JSON: {exc}") from exc
    _require(isinstance(rows, list) and rows and all(isinstance(r, list) for r in rows), "basis must be a list of rows")
    n = len(rows)
    _square(rows, n, "basis")
    dom = domain or (EISENSTEIN if any("w" in str(x) for r in rows for x in r) else RATIONAL)
    try:
        return tuple(tuple(parse_scalar(x, dom) for x in r) for r in rows)
    except (ValueError, TypeError) as exc:
        raise InvalidInputError(f"bad basis entry: {exc}") from exc


def matrix_to_json(m) -> str:
    return json.dumps([[format_scalar(x) for x in r] for r in m])

