"""Command-line front end.

Surfaces come from a JSON spec file, inline family flags, or a small
polynomial expression language in z, zb, u; reports are deterministic JSON
(or plain text) with every number serialized exactly.  Exit status: 0 on
success, 1 on domain errors (class violations, resonant stage under
--policy strict), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import __version__
from .scalar import (
    GaussianRational,
    ZERO,
    ONE,
    I,
    gaussian_to_obj,
    parse_rational,
    rational_str,
)
from .series import FormalMap, HoloSeries2, Series3
from .surface import (
    GraphSurface,
    check_normal_form,
    infinitesimal_defect,
    jet7,
    map_defect,
    validate_class,
)
from .resonance import char_poly
from .normalizer import normalize
from .families import FamilySpec, gen_Ht, gen_X, generate

DEFAULT_ORDER = 13


class ParseError(ValueError):
    """Syntax or validation error in user-supplied specs (exit status 2)."""


# ---------------------------------------------------------------------------
# expression language: polynomials in z, zb, u with rational literals,
# the imaginary unit i, operators + - * ^ and parentheses.

_VARS = {"z": (1, 0, 0), "zb": (0, 1, 0), "u": (0, 0, 1)}


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.toks = []
        self._lex()
        self.idx = 0

    def _lex(self):
        text, i, n = self.text, 0, len(self.text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            start = i
            if ch.isdigit():
                while i < n and text[i].isdigit():
                    i += 1
                num = int(text[start:i])
                j = i
                while j < n and text[j].isspace():
                    j += 1
                if j < n and text[j] == "/":
                    j += 1
                    while j < n and text[j].isspace():
                        j += 1
                    dstart = j
                    while j < n and text[j].isdigit():
                        j += 1
                    if dstart == j:
                        raise ParseError(f"column {j + 1}: expected denominator digits")
                    den = int(text[dstart:j])
                    if den == 0:
                        raise ParseError(f"column {dstart + 1}: zero denominator")
                    self.toks.append(("num", Fraction(num, den), start))
                    i = j
                else:
                    self.toks.append(("num", Fraction(num), start))
                continue
            if ch.isalpha():
                while i < n and text[i].isalnum():
                    i += 1
                name = text[start:i]
                if name == "i":
                    self.toks.append(("imag", None, start))
                elif name in _VARS:
                    self.toks.append(("var", name, start))
                else:
                    raise ParseError(f"column {start + 1}: unknown symbol {name!r}")
                continue
            if ch in "+-*^()":
                self.toks.append((ch, None, start))
                i += 1
                continue
            raise ParseError(f"column {start + 1}: unexpected character {ch!r}")
        self.toks.append(("end", None, n))

    def peek(self):
        return self.toks[self.idx]

    def take(self, kind=None):
        tok = self.toks[self.idx]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"column {tok[2] + 1}: expected {kind!r}, found {tok[0]!r}")
        self.idx += 1
        return tok


class _Poly(dict):
    """Unbounded sparse polynomial {(a,b,c): GaussianRational} used during parsing."""

    def add(self, key, val):
        cur = self.get(key, ZERO) + val
        if cur.is_zero():
            self.pop(key, None)
        else:
            self[key] = cur


def _poly_scale(p: _Poly, c) -> _Poly:
    out = _Poly()
    for k, v in p.items():
        out.add(k, v * c)
    return out


def _poly_add(p: _Poly, q: _Poly, sign=1) -> _Poly:
    out = _Poly(p)
    for k, v in q.items():
        out.add(k, v if sign > 0 else -v)
    return out


def _poly_mul(p: _Poly, q: _Poly) -> _Poly:
    out = _Poly()
    for (a1, b1, c1), v1 in p.items():
        for (a2, b2, c2), v2 in q.items():
            out.add((a1 + a2, b1 + b2, c1 + c2), v1 * v2)
    return out


def _parse_expr(toks: _Tokens) -> _Poly:
    acc = _parse_term(toks)
    while toks.peek()[0] in ("+", "-"):
        op = toks.take()[0]
        rhs = _parse_term(toks)
        acc = _poly_add(acc, rhs, 1 if op == "+" else -1)
    return acc


def _parse_term(toks: _Tokens) -> _Poly:
    acc = _parse_factor(toks)
    while toks.peek()[0] == "*":
        toks.take()
        acc = _poly_mul(acc, _parse_factor(toks))
    return acc


def _parse_factor(toks: _Tokens) -> _Poly:
    base = _parse_atom(toks)
    while toks.peek()[0] == "^":
        toks.take()
        tok = toks.take("num")
        e = tok[1]
        if e.denominator != 1 or e < 0:
            raise ParseError(f"column {tok[2] + 1}: exponent must be a non-negative integer")
        out = _Poly({(0, 0, 0): ONE})
        for _ in range(int(e)):
            out = _poly_mul(out, base)
        base = out
    return base


def _parse_atom(toks: _Tokens) -> _Poly:
    kind, val, pos = toks.peek()
    if kind == "num":
        toks.take()
        return _Poly({(0, 0, 0): GaussianRational(val)})
    if kind == "imag":
        toks.take()
        return _Poly({(0, 0, 0): I})
    if kind == "var":
        toks.take()
        return _Poly({_VARS[val]: ONE})
    if kind == "(":
        toks.take()
        inner = _parse_expr(toks)
        toks.take(")")
        return inner
    if kind == "-":
        toks.take()
        return _poly_scale(_parse_atom(toks), GaussianRational(-1))
    if kind == "+":
        toks.take()
        return _parse_atom(toks)
    raise ParseError(f"column {pos + 1}: unexpected token {kind!r}")


def parse_expression(text: str) -> dict:
    """Parse the expression language into a coefficient map (a,b,c) -> value."""
    toks = _Tokens(text)
    poly = _parse_expr(toks)
    toks.take("end")
    return dict(poly)


# ---------------------------------------------------------------------------
# surface / map / field spec resolution


def _hermitian_check(terms: dict):
    for (a, b, c), v in terms.items():
        if terms.get((b, a, c), ZERO) != v.conjugate():
            raise ParseError(
                f"not Hermitian: monomial z^{a}*zb^{b}*u^{c} has no conjugate partner")


def surface_spec_to_obj(spec) -> dict:
    """Canonical JSON-ready form of a resolved surface spec."""
    out = {"order": spec["order"]}
    if "family" in spec:
        fam = dict(spec["family"])
        out["family"] = {k: (v if isinstance(v, (str, int)) else rational_str(v))
                         for k, v in fam.items()}
    elif "series" in spec:
        out["series"] = [
            {"a": a, "b": b, "c": c, **gaussian_to_obj(v)}
            for (a, b, c), v in sorted(spec["series"].items())
        ]
    elif "expr" in spec:
        out["expr"] = spec["expr"]
    return out


def parse_surface_spec(obj, default_order: int = DEFAULT_ORDER) -> dict:
    """Normalize a raw spec object (from JSON or flags) to {order, family|series|expr}."""
    if not isinstance(obj, dict):
        raise ParseError("surface spec must be a JSON object")
    order = int(obj.get("order", default_order))
    kinds = [k for k in ("family", "series", "expr") if k in obj]
    if len(kinds) != 1:
        raise ParseError("surface spec needs exactly one of: family, series, expr")
    kind = kinds[0]
    if kind == "family":
        fam = obj["family"]
        if not isinstance(fam, dict) or "name" not in fam:
            raise ParseError("family spec needs a name")
        name = fam["name"]
        params = {}
        for key, val in fam.items():
            if key == "name":
                continue
            params[key] = int(val) if key == "m" else parse_rational(str(val))
        return {"order": order, "family": {"name": name, **params}}
    if kind == "series":
        terms = {}
        for item in obj["series"]:
            try:
                key = (int(item["a"]), int(item["b"]), int(item["c"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"bad series item {item!r}") from exc
            val = GaussianRational(parse_rational(str(item.get("re", "0"))),
                                   parse_rational(str(item.get("im", "0"))))
            if not val.is_zero():
                terms[key] = val
        _hermitian_check(terms)
        return {"order": order, "series": terms}
    text = obj["expr"]
    terms = parse_expression(text)
    for (a, b, c) in terms:
        if a + b + c > order:
            raise ParseError(f"monomial z^{a}*zb^{b}*u^{c} exceeds the truncation order {order}")
    _hermitian_check(terms)
    return {"order": order, "expr": text, "series": terms}


def build_surface(spec) -> GraphSurface:
    if "family" in spec:
        fam = spec["family"]
        name = fam["name"]
        params = {k: v for k, v in fam.items() if k != "name"}
        return generate(FamilySpec(name=name, params=params, order=spec["order"]))
    return GraphSurface(Series3(spec["order"], spec["series"]))


def parse_map_spec(obj, order: int) -> FormalMap:
    if not isinstance(obj, dict):
        raise ParseError("map spec must be a JSON object")
    if "builtin" in obj:
        if obj["builtin"] != "ht":
            raise ParseError(f"unknown builtin map {obj['builtin']!r}")
        m = int(obj.get("m", 1))
        t = parse_rational(str(obj.get("t", "1")))
        return gen_Ht(m, t, order)
    def side(items):
        terms = {}
        for item in items:
            key = (int(item["l"]), int(item["k"]))
            val = GaussianRational(parse_rational(str(item.get("re", "0"))),
                                   parse_rational(str(item.get("im", "0"))))
            if not val.is_zero():
                terms[key] = val
        return HoloSeries2(order, terms)
    try:
        return FormalMap(side(obj.get("f", [])), side(obj.get("g", [])))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad map spec: {exc}") from exc


def parse_field_spec(obj, order: int):
    if not isinstance(obj, dict):
        raise ParseError("field spec must be a JSON object")
    if "builtin" in obj:
        if obj["builtin"] != "mmt":
            raise ParseError(f"unknown builtin field {obj['builtin']!r}")
        m = int(obj.get("m", 1))
        T = parse_rational(str(obj.get("T", "1")))
        return gen_X(m, T, order)
    def side(items):
        terms = {}
        for item in items:
            key = (int(item["l"]), int(item["k"]))
            val = GaussianRational(parse_rational(str(item.get("re", "0"))),
                                   parse_rational(str(item.get("im", "0"))))
            if not val.is_zero():
                terms[key] = val
        return HoloSeries2(order, terms)
    try:
        return side(obj.get("Xz", [])), side(obj.get("Xw", []))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad field spec: {exc}") from exc


# ---------------------------------------------------------------------------
# reports


def _series_obj(s: Series3, cutoff: int) -> list:
    return [
        {"a": a, "b": b, "c": c, **gaussian_to_obj(v)}
        for (a, b, c), v in s.sorted_terms()
        if a + b + c <= cutoff
    ]


def _kpoly_obj(p) -> list:
    return [gaussian_to_obj(c) for c in p.coeffs]


def _first_nonzero(s: Series3):
    if s.is_zero():
        return None
    key = min(s.terms, key=lambda k: (sum(k), k))
    return {"a": key[0], "b": key[1], "c": key[2], **gaussian_to_obj(s.terms[key])}


def make_report(command: list, payload: dict, digest_src) -> dict:
    digest = hashlib.sha256(
        json.dumps(digest_src, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()
    return {
        "command": command,
        "input_digest": digest,
        "tool_version": __version__,
        "results": payload,
    }


def emit(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    lines = [f"# {' '.join(str(c) for c in report['command'])}",
             f"tool version {report['tool_version']}, input digest {report['input_digest'][:16]}"]

    def render(obj, indent=""):
        if isinstance(obj, dict):
            for key in sorted(obj):
                val = obj[key]
                if isinstance(val, (dict, list)):
                    lines.append(f"{indent}{key}:")
                    render(val, indent + "  ")
                else:
                    lines.append(f"{indent}{key}: {val}")
        elif isinstance(obj, list):
            for val in obj:
                if isinstance(val, (dict, list)):
                    render(val, indent + "  ")
                    lines.append(indent + "  -")
                else:
                    lines.append(f"{indent}- {val}")
        else:
            lines.append(f"{indent}{obj}")

    render(report["results"])
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands


def _resolve_surface(args) -> tuple[dict, GraphSurface]:
    order = args.order_total
    if args.surface:
        with open(args.surface) as fh:
            raw = json.load(fh)
        spec = parse_surface_spec(raw, default_order=order)
    elif args.family:
        fam = {"name": args.family}
        if args.m is not None:
            fam["m"] = args.m
        if args.T is not None:
            fam["T"] = args.T
        if args.C is not None:
            fam["C"] = args.C
        if args.D is not None:
            fam["D"] = args.D
        spec = parse_surface_spec({"order": order, "family": fam}, default_order=order)
    elif args.expr:
        spec = parse_surface_spec({"order": order, "expr": args.expr}, default_order=order)
    else:
        raise ParseError("no surface given: use --surface, --family or --expr")
    return spec, build_surface(spec)


def _resolve_map(args, order: int) -> tuple[dict, FormalMap]:
    if not args.map:
        raise ParseError("no map given: use --map FILE or --map ht")
    if args.map == "ht":
        raw = {"builtin": "ht", "m": args.m if args.m is not None else 1,
               "t": args.t if args.t is not None else "1"}
    else:
        with open(args.map) as fh:
            raw = json.load(fh)
    return raw, parse_map_spec(raw, order)


def _resolve_field(args, order: int):
    if args.field:
        with open(args.field) as fh:
            raw = json.load(fh)
    else:
        raw = {"builtin": "mmt", "m": args.m if args.m is not None else 1,
               "T": args.T if args.T is not None else "1"}
    return raw, parse_field_spec(raw, order)


def _charpoly_payload(M: GraphSurface) -> dict:
    rep = char_poly(jet7(M))
    j = rep.jet
    return {
        "char_poly": _kpoly_obj(rep.char_poly),
        "monic_constant": gaussian_to_obj(rep.monic_constant),
        "resonances": rep.resonances,
        "jet7": {
            "phi22": gaussian_to_obj(j.phi22),
            "phi32": gaussian_to_obj(j.phi32),
            "phi33": gaussian_to_obj(j.phi33),
            "phi42": gaussian_to_obj(j.phi42),
            "phi43": gaussian_to_obj(j.phi43),
        },
    }


def cmd_charpoly(args) -> dict:
    spec, M = _resolve_surface(args)
    return make_report(args.echo, _charpoly_payload(M), surface_spec_to_obj(spec))


def cmd_resonances(args) -> dict:
    spec, M = _resolve_surface(args)
    rep = char_poly(jet7(M))
    payload = {
        "resonances": rep.resonances,
        "monic_constant": gaussian_to_obj(rep.monic_constant),
    }
    return make_report(args.echo, payload, surface_spec_to_obj(spec))


def cmd_normalize(args) -> dict:
    spec, M = _resolve_surface(args)
    K = args.order if args.order is not None else M.n - 6
    policy = args.policy.replace("-", "_")
    result = normalize(M, K, policy=policy)
    defect = map_defect(M, result.map, result.normal_form)
    payload = {
        "stages": [
            {
                "k": s.k,
                "status": s.status,
                "residuals": [
                    {"a": a, "b": b, "c": c, **gaussian_to_obj(v)}
                    for (a, b, c), v in s.residuals
                ],
                "gauge": ["".join(map(str, lab)) for lab in s.gauge],
            }
            for s in result.stages
        ],
        "resonances_predicted": result.resonances_predicted,
        "resonances_observed": result.resonances_observed,
        "normal_form": _series_obj(result.normal_form.phi, args.display_cutoff),
        "map_defect_zero_to_order": defect.n if defect.is_zero() else None,
        "char_poly": _kpoly_obj(result.char_poly_report.char_poly),
    }
    return make_report(args.echo, payload, surface_spec_to_obj(spec))


def cmd_transform(args) -> dict:
    from .surface import transform as do_transform

    spec, M = _resolve_surface(args)
    raw_map, m = _resolve_map(args, M.n)
    out = do_transform(M, m)
    report = validate_class(out)
    payload = {
        "surface": _series_obj(out.phi, args.display_cutoff),
        "in_class": report.in_class,
    }
    return make_report(args.echo, payload, [surface_spec_to_obj(spec), raw_map])


def cmd_verify_map(args) -> dict:
    spec, M = _resolve_surface(args)
    raw_map, m = _resolve_map(args, M.n)
    if args.target:
        with open(args.target) as fh:
            traw = json.load(fh)
        tspec = parse_surface_spec(traw, default_order=M.n)
        Mt = build_surface(tspec)
        tobj = surface_spec_to_obj(tspec)
    else:
        Mt, tobj = M, None
    defect = map_defect(M, m, Mt)
    payload = {
        "defect_zero": defect.is_zero(),
        "order": M.n,
        "first_nonzero": _first_nonzero(defect),
    }
    return make_report(args.echo, payload, [surface_spec_to_obj(spec), raw_map, tobj])


def cmd_verify_field(args) -> dict:
    spec, M = _resolve_surface(args)
    raw_field, (Xz, Xw) = _resolve_field(args, M.n)
    defect = infinitesimal_defect(M, Xz, Xw)
    payload = {
        "defect_zero": defect.is_zero(),
        "order": M.n,
        "first_nonzero": _first_nonzero(defect),
    }
    return make_report(args.echo, payload, [surface_spec_to_obj(spec), raw_field])


def cmd_selftest(args) -> dict:
    from .families import gen_cd, gen_mm, gen_mmt, gen_quadric

    checks = []

    def check(name, fn):
        try:
            ok = bool(fn())
        except Exception as exc:   # noqa: BLE001 - report, do not crash
            checks.append({"name": name, "ok": False, "error": str(exc)})
            return
        checks.append({"name": name, "ok": ok})

    check("quadric is nonresonant",
          lambda: char_poly(jet7(gen_quadric(9))).resonances == [])
    check("quadric monic constant 3/16",
          lambda: char_poly(jet7(gen_quadric(9))).monic_constant == GaussianRational(Fraction(3, 16)))
    check("M_1 resonances are {2, 3}",
          lambda: char_poly(jet7(gen_mm(1, 9))).resonances == [2, 3])
    check("M_2 resonances are {3, 5}",
          lambda: char_poly(jet7(gen_mm(2, 9))).resonances == [3, 5])
    check("M_{2,1} resonance is {3}",
          lambda: char_poly(jet7(gen_mmt(2, 1, 9))).resonances == [3])
    check("H_1 maps M_1 into itself (order 9)",
          lambda: map_defect(gen_mm(1, 9), gen_Ht(1, 1, 9), gen_mm(1, 9)).is_zero())
    check("vector field tangency for M_{1,1} (order 9)",
          lambda: infinitesimal_defect(gen_mmt(1, 1, 9), *gen_X(1, 1, 9)).is_zero())
    check("normalize fixes the quadric",
          lambda: normalize(gen_quadric(10), 4).map.is_identity())
    check("normalize solves all stages for C=0, D=-24 (K=4)",
          lambda: all(s.status == "solved" for s in normalize(gen_cd(0, -24, 10), 4).stages))
    ok = all(c["ok"] for c in checks)
    payload = {"checks": checks, "all_ok": ok}
    report = make_report(args.echo, payload, {"selftest": True})
    report["_exit"] = 0 if ok else 1
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nfc",
        description="Exact characteristic polynomials, resonances and normal forms "
                    "for infinite-type hypersurface graphs in C^2.",
    )
    parser.add_argument("--version", action="version", version=f"nfc {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p, with_map=False, with_field=False):
        p.add_argument("--surface", help="surface spec file (JSON)")
        p.add_argument("--family", help="built-in family: quadric, cd, mm, mmt")
        p.add_argument("--expr", help="surface expression in z, zb, u")
        p.add_argument("--m", type=int, help="family parameter m")
        p.add_argument("--T", help="family parameter T (rational)")
        p.add_argument("--C", help="family parameter C (rational)")
        p.add_argument("--D", help="family parameter D (rational)")
        p.add_argument("--order-total", type=int, default=DEFAULT_ORDER,
                       help=f"series truncation order N (default {DEFAULT_ORDER})")
        p.add_argument("--format", choices=("json", "text"), default="json")
        if with_map:
            p.add_argument("--map", help="map spec file (JSON) or 'ht'")
            p.add_argument("--t", help="parameter t for the built-in map family")
            p.add_argument("--target", help="target surface spec file (verify-map)")
        if with_field:
            p.add_argument("--field", help="field spec file (JSON); default built-in")

    p = sub.add_parser("charpoly", help="monic characteristic polynomial of the 7-jet")
    common(p)
    p = sub.add_parser("resonances", help="integer resonances k >= 2")
    common(p)
    p = sub.add_parser("normalize", help="run the stage-by-stage normalization")
    common(p)
    p.add_argument("--order", type=int, help="last stage K (default N-6)")
    p.add_argument("--policy", choices=("strict", "gauge-zero"), default="gauge-zero")
    p.add_argument("--display-cutoff", type=int, default=9,
                   help="emit normal-form terms up to this total degree")
    p = sub.add_parser("transform", help="transform a surface by a formal map")
    common(p, with_map=True)
    p.add_argument("--display-cutoff", type=int, default=9)
    p = sub.add_parser("verify-map", help="check a map sends the surface into the target")
    common(p, with_map=True)
    p = sub.add_parser("verify-field", help="check a vector field is tangent to the surface")
    common(p, with_field=True)
    p = sub.add_parser("selftest", help="run the built-in example checks")
    p.add_argument("--format", choices=("json", "text"), default="json")
    return parser


_COMMANDS = {
    "charpoly": cmd_charpoly,
    "resonances": cmd_resonances,
    "normalize": cmd_normalize,
    "transform": cmd_transform,
    "verify-map": cmd_verify_map,
    "verify-field": cmd_verify_field,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.echo = ["nfc"] + argv
    try:
        report = _COMMANDS[args.cmd](args)
    except ParseError as exc:
        print(f"nfc: parse error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"nfc: input error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"nfc: {exc}", file=sys.stderr)
        return 1
    exit_code = report.pop("_exit", 0)
    sys.stdout.write(emit(report, getattr(args, "format", "json")))
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
