"""Batch command-line front end.

Every command prints a JSON document ``{"config": ..., "result": ...}``
(or CSV preceded by a ``# config:`` line) and exits 0 on success, 1 on
domain errors and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
from fractions import Fraction

import numpy as np

from . import __version__, a2, ckz
from .qinduce import DXObject, classify, hn_dx, q_support, x_hom_bound
from .qlattice import KClass, QLattice, n_reduce
from .quiver import QuiverError, cartan_at_one, load_quiver, positive_roots, q_cartan
from .repalg import interval, simple_module
from .ring import format_laurent, parse_laurent
from .stability import DObject, gldim, hn_filtration, min_gldim_search, parse_charge, semistable_table

CSV_HELP = """CSV columns:
  a2 domain-sample: x, y, membership (interior|boundary|exterior|unsupported-range)
  ckz sweep:        nu, max_hecke_residual, max_hecke_residual_inverse_q, max_braid_residual
"""


class DomainError(Exception):
    pass


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise DomainError(f"non-finite value {x} in output")
    out = format(x, ".17g")
    if out == "-0":
        out = "0"
    if not any(c in out for c in ".e"):
        out += ".0"
    return out


def to_plain(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return float(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [to_plain(v) for v in obj]
    if hasattr(obj, "to_json"):
        return to_plain(obj.to_json())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with floats fixed to 17 significant digits."""
    obj = to_plain(obj) if _level == 0 else obj
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent, _level + 1) for v in obj) + "\n" + end + "]"
    return json.dumps(obj)


def parse_number(text: str):
    """Exact Fraction for real decimals / a/b, complex otherwise ("3+1i" or "3+1j")."""
    t = text.strip()
    try:
        return Fraction(t)
    except ValueError:
        pass
    try:
        return complex(t.replace("i", "j").replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def parse_grid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be start:stop:step")
    a, b, h = (Fraction(p) for p in parts)
    if h <= 0:
        raise argparse.ArgumentTypeError("grid step must be positive")
    out, k = [], 0
    while a + k * h <= b:
        out.append(float(a + k * h))
        k += 1
    return out


def parse_class(text: str, n: int) -> KClass:
    text = text.strip()
    if text.startswith("["):
        return KClass.from_json(text)
    cls = KClass(parse_laurent(p) for p in text.split(","))
    if cls.n != n:
        raise DomainError(f"class has {cls.n} coordinates, quiver has {n} vertices")
    return cls


def parse_word(text: str) -> list[int]:
    text = text.strip()
    return [int(t) for t in text.split(",") if t.strip()] if text else []


_SUMMAND = re.compile(r"^(?:S(\d+)|M\[(\d+),(\d+)\])(?:\[(-?\d+)?(?:([+-]?\d*)X)?\])?$")


def parse_object(Q, text: str) -> list[tuple]:
    """Summands like "S1", "M[1,2]", "S1[1]", "M[1,2][-1+2X]" separated by " + "."""
    depth, buf, parts = 0, "", []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "+" and depth == 0:
            parts.append(buf)
            buf = ""
        else:
            buf += ch
    parts.append(buf)
    out = []
    for p in parts:
        p = p.replace(" ", "")
        if not p:
            continue
        m = _SUMMAND.match(p)
        if not m:
            raise DomainError(f"cannot parse object summand {p!r}")
        mod = simple_module(Q, int(m.group(1))) if m.group(1) else interval(Q, int(m.group(2)), int(m.group(3)))
        shift = int(m.group(4)) if m.group(4) else 0
        xs = m.group(5)
        if xs is None:
            l = 0
        elif xs in ("", "+"):
            l = 1
        elif xs == "-":
            l = -1
        else:
            l = int(xs)
        out.append((mod, shift, l))
    return out


# --- commands -----------------------------------------------------------------


def cmd_cartan(args):
    Q = load_quiver(args.quiver)
    A = q_cartan(Q)
    if args.at_q is None:
        return [[format_laurent(a) for a in row] for row in A]
    q = parse_number(args.at_q)
    if isinstance(q, Fraction) and q.denominator == 1:
        return [[int(a.evaluate(int(q))) for a in row] for row in A]
    return [[complex(a.evaluate(complex(q))) for a in row] for row in A]


def cmd_roots(args):
    Q = load_quiver(args.quiver)
    rs = positive_roots(Q)
    return {
        "type": rs.type_tag,
        "coxeter_number": rs.coxeter_h,
        "count": len(rs.positive_roots),
        "cartan_at_1": [list(r) for r in cartan_at_one(Q)],
        "positive_roots": [list(r) for r in rs.positive_roots],
    }


def cmd_hecke_check(args):
    Q = load_quiver(args.quiver)
    lat = QLattice(Q)
    hecke = {str(i): lat.verify_hecke_quadratic(i) for i in Q.vertices}
    braids = lat.verify_braid_relations()
    result = {
        "skew_symmetry": lat.verify_skew_symmetry(),
        "hecke_quadratic": hecke,
        "braid_relations": braids,
        "twist_inverse_equals_reflection": lat.twist_inverse_is_reflection(),
        "euler_form_equals_q_form": lat.euler_matches_form(),
    }
    result["all_pass"] = bool(
        result["skew_symmetry"]
        and all(hecke.values())
        and all(b["status"] != "fail" for b in braids)
        and result["twist_inverse_equals_reflection"]
        and result["euler_form_equals_q_form"]
    )
    return result


def cmd_twist(args):
    Q = load_quiver(args.quiver)
    lat = QLattice(Q)
    word = parse_word(args.word)
    out = {"word": word, "matrix": lat.word_matrix(word).to_json()}
    if args.cls:
        x = parse_class(args.cls, Q.n)
        out["input"] = x.to_json()
        out["image"] = lat.braid_word_apply(word, x).to_json()
    return out


def cmd_reduce(args):
    Q = load_quiver(args.quiver)
    lat = QLattice(Q)
    x = parse_class(args.cls, Q.n)
    word = parse_word(args.word)
    y = lat.braid_word_apply(word, x)
    return {"N": args.N, "word": word, "input": x.to_json(), "image": y.to_json(), "reduced_image": list(n_reduce(y, args.N))}


def cmd_gldim(args):
    Q = load_quiver(args.quiver)
    sigma = parse_charge(Q, args.charge)
    table = semistable_table(sigma)
    res = gldim(sigma)
    out = {"semistables": [e.to_json() for e in table.entries]}
    out.update(res.to_json())
    return out


def cmd_min_gldim(args):
    Q = load_quiver(args.quiver)
    return min_gldim_search(Q, budget=args.budget).to_json()


def cmd_induce(args):
    Q = load_quiver(args.quiver)
    sigma = parse_charge(Q, args.charge)
    verdict = classify(sigma, args.s)
    out = verdict.to_json()
    sup = q_support(sigma, args.s)
    out["L"] = sup["L"]
    out["N0"] = x_hom_bound(Q).n0
    out["q_support"] = sup["holds"]
    return out


def cmd_hn(args):
    Q = load_quiver(args.quiver)
    sigma = parse_charge(Q, args.charge)
    summands = parse_object(Q, args.object)
    if args.s is None:
        if any(l for _, _, l in summands):
            raise DomainError("X-shifted summands need --s")
        obj = DObject(tuple((M, m) for M, m, _ in summands))
        return {"factors": [f.to_json() for f in hn_filtration(obj, sigma)]}
    factors = hn_dx(DXObject(tuple(summands)), sigma, args.s)
    return {"factors": [f.to_json() for f in factors]}


def cmd_a2(args):
    if args.action == "gepner":
        g = a2.gepner_charge(args.s)
        return g.to_json()
    if args.action == "domain":
        if args.z is None:
            raise DomainError("a2 domain needs --z")
        z = complex(args.z.replace("i", "j").replace(" ", ""))
        return {"z": z, "membership": a2.in_fundamental_domain(z, args.s).value, "orbifold_points": a2.orbifold_points(args.s)}
    return a2.domain_sample(args.s, args.grid)


def cmd_ckz(args):
    rep = ckz.ReflectionRep.of_type(args.type)
    if args.action == "sweep":
        grid = args.nu_grid if args.nu_grid is not None else [float(args.nu)]
        return ckz.sweep(rep, grid, args.tol)
    return ckz.monodromy_report(rep, complex(args.nu), args.tol).to_json()


COMMANDS = {
    "cartan": cmd_cartan,
    "roots": cmd_roots,
    "hecke-check": cmd_hecke_check,
    "twist": cmd_twist,
    "reduce": cmd_reduce,
    "gldim": cmd_gldim,
    "min-gldim": cmd_min_gldim,
    "induce": cmd_induce,
    "hn": cmd_hn,
    "a2": cmd_a2,
    "ckz": cmd_ckz,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qstab",
        description="Exact q-root-lattice algebra, type-A stability data and CKZ monodromy.",
        epilog=CSV_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--seed", type=int, default=0, help="seed for randomized steps (default 0)")
    p.add_argument("--format", choices=["json", "csv"], default=None, help="output format")
    sub = p.add_subparsers(dest="command", required=True)

    def quiver_cmd(name, help_):
        sp = sub.add_parser(name, help=help_, epilog=CSV_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
        sp.add_argument("--quiver", required=True, help='preset ("A2", "D4", "E8", "Kronecker") or quiver JSON path')
        return sp

    sp = quiver_cmd("cartan", "q-deformed Cartan matrix")
    sp.add_argument("--at-q", default=None, help="specialize at this value of q")
    quiver_cmd("roots", "positive roots and Coxeter number")
    quiver_cmd("hecke-check", "exact skew-symmetry, Hecke and braid checks")
    sp = quiver_cmd("twist", "twist-matrix of a braid word")
    sp.add_argument("--word", default="", help="comma-separated signed generators, e.g. 1,-2,1")
    sp.add_argument("--class", dest="cls", default=None, help='class, e.g. "1,q" or JSON array')
    sp = quiver_cmd("reduce", "N-reduction q -> (-1)^N of a (twisted) class")
    sp.add_argument("--class", dest="cls", required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--word", default="")
    sp = quiver_cmd("gldim", "semistables and gldim of a heart charge")
    sp.add_argument("--charge", required=True, help='comma-separated "mass@phase" tokens')
    sp = quiver_cmd("min-gldim", "numerical minimisation of gldim")
    sp.add_argument("--budget", type=int, default=20000)
    sp = quiver_cmd("induce", "classify the induced q-stability condition")
    sp.add_argument("--charge", required=True)
    sp.add_argument("--s", type=parse_number, required=True)
    sp = quiver_cmd("hn", "HN filtration of a formal sum of shifted modules")
    sp.add_argument("--charge", required=True)
    sp.add_argument("--object", required=True, help='e.g. "S1 + M[1,2][1] + S2[0+1X]"')
    sp.add_argument("--s", type=parse_number, default=None, help="work in D_X with this s")

    sp = sub.add_parser("a2", help="the A2 example", epilog=CSV_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    sp.add_argument("action", choices=["gepner", "domain", "domain-sample"])
    sp.add_argument("--s", type=parse_number, default=Fraction(3))
    sp.add_argument("--z", default=None, help='point such as "0.6+0.0i"')
    sp.add_argument("--grid", type=int, default=400)

    sp = sub.add_parser("ckz", help="CKZ monodromy report or residual sweep", epilog=CSV_HELP,
                        formatter_class=argparse.RawDescriptionHelpFormatter)
    sp.add_argument("action", nargs="?", choices=["report", "sweep"], default="report")
    sp.add_argument("--type", required=True, help="ADE type, e.g. A3")
    sp.add_argument("--nu", type=parse_number, default=Fraction(0))
    sp.add_argument("--nu-grid", type=parse_grid, default=None, help="start:stop:step")
    sp.add_argument("--tol", type=float, default=ckz.DEFAULT_TOL)
    return p


def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k != "format"}
    cfg["format"] = _output_format(args)
    if "cls" in cfg:
        cfg["class"] = cfg.pop("cls")
    return to_plain({k: (str(v) if isinstance(v, Fraction) else v) for k, v in cfg.items()})


def _output_format(args) -> str:
    if args.format:
        return args.format
    if (args.command == "a2" and args.action == "domain-sample") or (args.command == "ckz" and args.action == "sweep"):
        return "csv"
    return "json"


def _csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    cols = list(rows[0])
    lines = [",".join(cols)]
    for r in rows:
        cells = []
        for c in cols:
            v = r[c]
            cells.append(_fmt_float(float(v)) if isinstance(v, (float, Fraction, np.floating)) else str(v))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    config = _config(args)
    fmt = config["format"]
    try:
        result = COMMANDS[args.command](args)
    except (DomainError, QuiverError, ValueError, ArithmeticError, ckz.TransportError) as exc:
        sys.stdout.write(dumps({"config": config, "error": str(exc)}) + "\n")
        return 1
    if fmt == "csv":
        if not isinstance(result, list):
            sys.stderr.write("csv output is only available for tabular commands\n")
            return 2
        sys.stdout.write("# config: " + json.dumps(config, sort_keys=True) + "\n" + _csv(result))
    else:
        sys.stdout.write(dumps({"config": config, "result": result}) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
