"""Command line front end.

Exit codes: 0 success (or a positive analysis answer), 1 negative answer,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import conditions
from .algebra import LeavittContext, ck_check, degree_decompose, ideal_membership, recover_HS, tilde_iso_check
from .algebra.membership import quotient_context
from .approximation import build_GF, gf_family, gf_generation, gf_relations, regions_partition
from .core import (
    UltragraphError,
    check_tilde_eq_GA,
    edge_matrix,
    from_matrix,
    tilde,
    validate,
)
from .dot import gf_dot, ultragraph_dot
from .ideals import admissible_pairs, breaking_vertices
from .quotient import quotient_of, quotient_summary
from .rings import Ring
from .setalgebra import atoms, brute_closure, in_algebra, is_unital, range_closure
from .vsets import format_vset, natkey, parse_vset
from .workspace import Workspace, WorkspaceError, dumps, load, parse_expression


class Output:
    """Collects the text report and writes artifacts to ``--out`` when given."""

    def __init__(self, args):
        self.args = args
        self.lines: list[str] = []

    def say(self, line=""):
        self.lines.append(str(line))

    def artifact(self, name: str, text: str):
        if self.args.out:
            os.makedirs(self.args.out, exist_ok=True)
            path = os.path.join(self.args.out, name)
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
            self.say(f"wrote {path}")
        else:
            self.lines.append(text.rstrip("\n"))

    def flush(self):
        if self.lines:
            sys.stdout.write("\n".join(self.lines) + "\n")


def _fmt(args, default: str) -> str:
    return args.format or default


def _ring(args) -> Ring:
    return Ring.parse(args.ring)


def _matrix(text: str) -> np.ndarray:
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return np.asarray(json.loads(text), dtype=int)
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise WorkspaceError(f"cannot read a 0/1 matrix from {text!r}: {exc}") from None


def _csv(text: str) -> tuple:
    return tuple(t.strip() for t in text.split(",") if t.strip())


def _pair(args, ws: Workspace, required: bool = True):
    if args.pair is None:
        if required:
            raise WorkspaceError("this command needs --pair NAME (a declared pair, 'empty' or 'pool:i')")
        return None
    return ws.pair(args.pair)


def _context(args, ws: Workspace):
    pair = _pair(args, ws, required=False)
    if pair is None:
        return LeavittContext(ws.ultragraph, _ring(args))
    return quotient_context(pair, _ring(args))


# -- commands ------------------------------------------------------------------

def cmd_validate(args, out: Output) -> int:
    ws = load(args.file, resolve=False)
    problems = validate(ws.ultragraph)
    if not problems:
        out.say("ok")
        return 0
    for p in problems:
        out.say(f"error: {p}")
    return 1


def cmd_atoms(args, out: Output) -> int:
    table = atoms(load(args.file).ultragraph)
    if _fmt(args, "text") == "json":
        out.artifact("atoms.json", json.dumps({",".join(sorted(s, key=natkey)): format_vset(a) for s, a in table.items()}, indent=2) + "\n")
    else:
        for sig, a in table.items():
            out.say(f"{{{', '.join(sorted(sig, key=natkey))}}}: {format_vset(a)}")
    return 0


def cmd_in_algebra(args, out: Output) -> int:
    U = load(args.file).ultragraph
    A = parse_vset(args.set, U.families)
    ok = in_algebra(U, A)
    out.say(f"{format_vset(A)}: {'in' if ok else 'not in'} the set algebra")
    return 0 if ok else 1


def cmd_unital(args, out: Output) -> int:
    ok = is_unital(load(args.file).ultragraph)
    out.say("unital" if ok else "not unital")
    return 0 if ok else 1


def cmd_closure(args, out: Output) -> int:
    U = load(args.file).ultragraph
    if U.families or any(e.bundle for e in U.edges):
        out.say("# unions of atoms (the range-generated ring)")
        sets = range_closure(U)
    else:
        sets = brute_closure(U)
    for A in sets:
        out.say(format_vset(A))
    return 0


def cmd_breaking(args, out: Output) -> int:
    ws = load(args.file)
    pair = _pair(args, ws)
    B = breaking_vertices(ws.ultragraph, pair.H)
    out.say("B_H = {" + ", ".join(B) + "}")
    return 0


def cmd_pairs(args, out: Output) -> int:
    pairs = admissible_pairs(load(args.file).ultragraph)
    if _fmt(args, "text") == "json":
        data = [
            {"index": i, "V_H": format_vset(p.H.vertices), "atoms": sorted(",".join(sorted(s, key=natkey)) for s in p.H.atoms), "S": sorted(p.S, key=natkey)}
            for i, p in enumerate(pairs)
        ]
        out.artifact("pairs.json", json.dumps(data, indent=2) + "\n")
    else:
        for i, p in enumerate(pairs):
            out.say(f"pool:{i} {p}")
    return 0


def cmd_quotient(args, out: Output) -> int:
    ws = load(args.file)
    Q = quotient_of(_pair(args, ws))
    fmt = _fmt(args, "dot")
    if fmt == "dot":
        out.artifact("quotient.dot", ultragraph_dot(Q, "quotient", classes=True))
    elif fmt == "json":
        out.artifact("quotient.json", json.dumps(quotient_summary(Q), indent=2) + "\n")
    else:
        summary = quotient_summary(Q)
        out.say("vertices: " + ", ".join(f"[{v}]" for v in summary["vertices"]))
        for e in summary["edges"]:
            out.say(f"edge {e['id']}: {e['source']} -> {e['range']} ({e['multiplicity']})")
    return 0


def cmd_gf(args, out: Output) -> int:
    ws = load(args.file)
    pair = _pair(args, ws, required=False)
    X = ws.ultragraph if pair is None else quotient_of(pair)
    ap = build_GF(X, args.vertices, args.edges)
    fmt = _fmt(args, "dot")
    if fmt == "dot":
        out.artifact("gf.dot", gf_dot(ap))
        return 0
    fam = gf_family(ap, _ring(args))
    fails = gf_relations(ap, fam)
    gen = gf_generation(ap, fam, _ring(args))
    part = regions_partition(ap)
    if fmt == "json":
        data = {
            "vertices": list(ap.graph.vertices),
            "edges": [list(g) for g in ap.graph.edges],
            "regions": [{"omega": "".join(map(str, r.omega)), "r": format_vset(r.r), "R": format_vset(r.R), "kind": r.kind} for r in ap.regions],
            "relations_ok": not any(fails.values()),
            "generation_ok": not gen,
            "partition_ok": part,
        }
        out.artifact("gf.json", json.dumps(data, indent=2) + "\n")
    else:
        out.say("vertices: " + ", ".join(ap.graph.vertices))
        out.say("edges: " + ", ".join(f"({a},{b})" for a, b in ap.graph.edges))
        for r in ap.regions:
            out.say(f"omega={''.join(map(str, r.omega))}: r={format_vset(r.r)} R={format_vset(r.R)} {r.kind}")
        out.say(f"relations: {'ok' if not any(fails.values()) else fails}")
        out.say(f"generation: {'ok' if not gen else gen}")
        out.say(f"partition: {'ok' if part else 'failed'}")
    ok = not any(fails.values()) and not gen and part
    return 0 if ok else 1


def cmd_condition_k(args, out: Output) -> int:
    U = load(args.file).ultragraph
    ok = conditions.satisfies_K(U)
    if _fmt(args, "text") == "json":
        counts = {v: conditions.first_return_count(U, v) for v in U.vertices}
        out.artifact("condition_k.json", json.dumps({"K": ok, "first_return": counts}, indent=2) + "\n")
    else:
        out.say(f"K: {'satisfied' if ok else 'violated'}")
    return 0 if ok else 1


def cmd_condition_l(args, out: Output) -> int:
    ws = load(args.file)
    pair = _pair(args, ws, required=False)
    X = quotient_of(pair) if pair is not None else ws.ultragraph
    ok = conditions.satisfies_L(X)
    out.say(f"L: {'satisfied' if ok else 'violated'}")
    return 0 if ok else 1


def cmd_k_vs_l(args, out: Output) -> int:
    report = conditions.k_iff_quotients_L(load(args.file).ultragraph)
    for line in report.lines():
        out.say(line)
    return 0 if report.agree else 1


def _expressions(args, ws):
    exprs = [args.expr] if args.expr else ws.expressions
    if not exprs:
        raise WorkspaceError("no expression given and the workspace lists none")
    return exprs


def cmd_eval(args, out: Output) -> int:
    ws = load(args.file)
    ctx = _context(args, ws)
    for text in _expressions(args, ws):
        out.say(str(parse_expression(text, ctx)))
    return 0


def cmd_degree(args, out: Output) -> int:
    ws = load(args.file)
    ctx = _context(args, ws)
    for text in _expressions(args, ws):
        parts = degree_decompose(parse_expression(text, ctx))
        if not parts:
            out.say("0")
        for d, x in parts.items():
            out.say(f"{d}: {x}")
    return 0


def cmd_ideal_member(args, out: Output) -> int:
    ws = load(args.file)
    pair = _pair(args, ws)
    ctx = LeavittContext(ws.ultragraph, _ring(args))
    verdicts = []
    for text in _expressions(args, ws):
        ok = ideal_membership(parse_expression(text, ctx), pair)
        verdicts.append(ok)
        out.say(f"{text}: {'in' if ok else 'not in'} I_(H,S)")
    return 0 if all(verdicts) else 1


def cmd_recover(args, out: Output) -> int:
    ws = load(args.file)
    pair = _pair(args, ws)
    H, S = recover_HS(pair, _ring(args))
    out.say(f"recovered H: {H}")
    out.say("recovered S: {" + ", ".join(sorted(S, key=natkey)) + "}")
    ok = H.vertices == pair.H.vertices and H.atoms == pair.H.atoms and S == pair.S
    out.say("matches the pair" if ok else f"differs from the pair {pair}")
    return 0 if ok else 1


def cmd_exel_laca(args, out: Output) -> int:
    U = from_matrix(_matrix(args.matrix))
    out.artifact("exel_laca.json", dumps(U))
    return 0


def cmd_ck_check(args, out: Output) -> int:
    report = ck_check(_matrix(args.matrix), _ring(args))
    for key, val in report.items():
        if key != "ok":
            out.say(f"{key}: {'ok' if not val else val}")
    out.say("CK relations: " + ("pass" if report["ok"] else "fail"))
    return 0 if report["ok"] else 1


def cmd_tilde(args, out: Output) -> int:
    U = load(args.file).ultragraph
    if _fmt(args, "json") == "json":
        out.artifact("tilde.json", dumps(tilde(U)))
        return 0
    same = check_tilde_eq_GA(U)
    report = tilde_iso_check(U, _ring(args))
    out.say(f"G_(A_G) equals tilde: {same}")
    for key, val in report.items():
        if key != "ok":
            out.say(f"{key}: {'ok' if not val else val}")
    return 0 if same and report["ok"] else 1


def cmd_edge_matrix(args, out: Output) -> int:
    M = edge_matrix(load(args.file).ultragraph)
    out.say(json.dumps(M.tolist(), separators=(",", ":")))
    return 0


COMMANDS = {
    "validate": (cmd_validate, "check a workspace for structural errors", ["file"]),
    "atoms": (cmd_atoms, "list the atoms of the range algebra", ["file"]),
    "in-algebra": (cmd_in_algebra, "decide membership of SET in the set algebra", ["set", "file"]),
    "unital": (cmd_unital, "decide whether the algebra is unital", ["file"]),
    "closure": (cmd_closure, "enumerate the set algebra (fully finite) or the range ring", ["file"]),
    "breaking": (cmd_breaking, "breaking vertices of --pair", ["file"]),
    "pairs": (cmd_pairs, "enumerate pool-generated admissible pairs", ["file"]),
    "quotient": (cmd_quotient, "quotient ultragraph by --pair", ["file"]),
    "gf": (cmd_gf, "finite approximation G_F", ["file"]),
    "condition-k": (cmd_condition_k, "decide Condition (K)", ["file"]),
    "condition-l": (cmd_condition_l, "decide Condition (L) (of the quotient by --pair if given)", ["file"]),
    "k-vs-l": (cmd_k_vs_l, "compare (K) with (L) on all enumerated quotients", ["file"]),
    "eval": (cmd_eval, "normalize an expression", ["expr?", "file"]),
    "degree": (cmd_degree, "homogeneous components of an expression", ["expr?", "file"]),
    "ideal-member": (cmd_ideal_member, "membership in the ideal of --pair", ["expr?", "file"]),
    "recover": (cmd_recover, "recover (H, S) from the ideal of --pair", ["file"]),
    "exel-laca": (cmd_exel_laca, "ultragraph G_A of a 0/1 matrix", ["matrix"]),
    "ck-check": (cmd_ck_check, "Cuntz-Krieger relations in L_R(G_A)", ["matrix"]),
    "tilde": (cmd_tilde, "split ultragraph (json) or isomorphism report (text)", ["file"]),
    "edge-matrix": (cmd_edge_matrix, "edge matrix of a bundle-free ultragraph", ["file"]),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", default="int", help="int, rat or mod:m (default int)")
    common.add_argument("--pair", help="declared pair name, 'empty' or 'pool:i'")
    common.add_argument("--out", help="directory for DOT/JSON artifacts")
    common.add_argument("--format", choices=("json", "dot", "text"))
    parser = argparse.ArgumentParser(prog="ultraleavitt", description="Ultragraph Leavitt path algebra toolkit")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (func, help_text, positionals) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        for pos in positionals:
            if pos.endswith("?"):
                p.add_argument(pos[:-1], nargs="?", help="expression (defaults to the workspace's list)")
            else:
                p.add_argument(pos)
        if name == "gf":
            p.add_argument("--vertices", type=_csv, default=(), help="comma-separated singular vertices in F")
            p.add_argument("--edges", type=_csv, default=(), help="comma-separated edges or bundle instances in F")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args)
    try:
        code = args.func(args, out)
    except (UltragraphError, ValueError, KeyError, OSError) as exc:
        out.flush()
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
