"""JSON workspace files and the algebra expression language.

A workspace holds an ultragraph and, optionally, named admissible pairs and
expressions::

    {"vertices": ["v0"], "families": ["W"],
     "edges": [{"id": "e", "source": "v0", "multiplicity": "one",
                "range": {"named": [], "families": {"W": {"mode": "cofinite",
                                                          "members_or_exceptions": []}}}}],
     "pairs": {"Hfin": {"generators": [], "vertices": ["W"], "S": []}},
     "expressions": ["p[{v0}] - s[e] s[e*]"]}

Pair generators and vertex sets use the set-literal syntax of
:func:`~ultraleavitt.vsets.parse_vset`.  Errors carry the line and column of
the offending JSON object.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from json import scanner

from .core import EdgeDecl, Ultragraph, UltragraphError, validate
from .ideals import AdmissiblePair, HSCollection, admissible_pairs, hs_closure
from .vsets import Trace, VSet, natkey, parse_vset, split_member

TOP_KEYS = {"vertices", "families", "edges", "pairs", "expressions"}
EDGE_KEYS = {"id", "source", "multiplicity", "range"}


class WorkspaceError(UltragraphError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class _PositionDecoder(json.JSONDecoder):
    """Records the start offset of every decoded object and array."""

    def __init__(self):
        super().__init__()
        self.positions: dict[int, int] = {}
        obj, arr = self.parse_object, self.parse_array

        def parse_object(s_and_end, *args):
            value, end = obj(s_and_end, *args)
            self.positions[id(value)] = s_and_end[1] - 1
            return value, end

        def parse_array(s_and_end, *args):
            value, end = arr(s_and_end, *args)
            self.positions[id(value)] = s_and_end[1] - 1
            return value, end

        self.parse_object = parse_object
        self.parse_array = parse_array
        self.scan_once = scanner.py_make_scanner(self)


@dataclass(frozen=True)
class PairSpec:
    generators: tuple = ()
    vertices: tuple = ()
    S: tuple = ()


@dataclass
class Workspace:
    ultragraph: Ultragraph
    pairs: dict = field(default_factory=dict)  # name -> PairSpec
    expressions: list = field(default_factory=list)

    def pair(self, name: str) -> AdmissiblePair:
        """A declared pair, ``empty``, or ``pool:i`` (the i-th enumerated pair)."""
        U = self.ultragraph
        if name in self.pairs:
            spec = self.pairs[name]
            fams = U.families
            gens = [parse_vset(t, fams) for t in spec.generators]
            verts = VSet()
            for t in spec.vertices:
                verts = verts | parse_vset(t, fams)
            return AdmissiblePair(hs_closure(U, gens, verts), frozenset(spec.S))
        if name == "empty":
            return AdmissiblePair(HSCollection(U))
        if name.startswith("pool:"):
            pairs = admissible_pairs(U)
            i = int(name[5:])
            if not 0 <= i < len(pairs):
                raise WorkspaceError(f"pair index {i} out of range (0..{len(pairs) - 1})")
            return pairs[i]
        raise WorkspaceError(f"unknown pair {name!r}")


# -- JSON <-> objects ----------------------------------------------------------

def range_to_json(A: VSet) -> dict:
    fams = {}
    for f, t in A.traces:
        if t.is_finite():
            fams[f] = {"mode": "finite", "members_or_exceptions": t.members()}
        elif t.is_cofinite():
            fams[f] = {"mode": "cofinite", "members_or_exceptions": t.exceptions()}
        else:
            raise WorkspaceError(f"range {A} is not finite or cofinite on family {f!r}")
    return {"named": sorted(A.named, key=natkey), "families": fams}


def ultragraph_to_json(U: Ultragraph) -> dict:
    return {
        "vertices": list(U.vertices),
        "families": list(U.families),
        "edges": [
            {"id": e.id, "source": e.source, "multiplicity": e.multiplicity, "range": range_to_json(e.range)}
            for e in U.edges
        ],
    }


def workspace_to_json(ws: Workspace) -> dict:
    out = ultragraph_to_json(ws.ultragraph)
    if ws.pairs:
        out["pairs"] = {
            name: {"generators": list(p.generators), "vertices": list(p.vertices), "S": list(p.S)}
            for name, p in sorted(ws.pairs.items())
        }
    if ws.expressions:
        out["expressions"] = list(ws.expressions)
    return out


def dumps(obj) -> str:
    if isinstance(obj, Workspace):
        obj = workspace_to_json(obj)
    elif isinstance(obj, Ultragraph):
        obj = ultragraph_to_json(obj)
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def loads(text: str, resolve: bool = True) -> Workspace:
    """Parse workspace text; with ``resolve`` every reference must be declared."""
    dec = _PositionDecoder()
    try:
        data = dec.decode(text)
    except json.JSONDecodeError as exc:
        raise WorkspaceError(exc.msg, exc.lineno, exc.colno) from None

    def fail(node, msg):
        pos = dec.positions.get(id(node))
        if pos is None:
            raise WorkspaceError(msg)
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        raise WorkspaceError(msg, line, col)

    def str_list(node, parent, where):
        if not isinstance(node, list) or not all(isinstance(x, str) for x in node):
            fail(parent, f"{where} must be a list of strings")
        return node

    if not isinstance(data, dict):
        raise WorkspaceError("top level must be an object", 1, 1)
    extra = set(data) - TOP_KEYS
    if extra:
        fail(data, f"unknown key {sorted(extra)[0]!r}")
    for key in ("vertices", "families", "edges"):
        if key not in data:
            fail(data, f"missing key {key!r}")
    vertices = str_list(data["vertices"], data, "vertices")
    families = str_list(data["families"], data, "families")
    if not isinstance(data["edges"], list):
        fail(data, "edges must be a list")
    edges = []
    for i, ed in enumerate(data["edges"]):
        where = f"edges[{i}]"
        if not isinstance(ed, dict):
            fail(data["edges"], f"{where} must be an object")
        if set(ed) != EDGE_KEYS:
            fail(ed, f"{where} must have exactly the keys {sorted(EDGE_KEYS)}")
        if not isinstance(ed["id"], str) or not isinstance(ed["source"], str):
            fail(ed, f"{where}: id and source must be strings")
        if ed["multiplicity"] not in ("one", "infinite"):
            fail(ed, f"{where}: multiplicity must be 'one' or 'infinite'")
        rng = _range_from_json(ed["range"], ed, where, fail, families if resolve else None, vertices if resolve else None)
        if resolve and rng.is_empty():
            fail(ed["range"], f"{where}: empty range")
        if resolve and ed["source"] not in vertices:
            fail(ed, f"{where}: dangling reference to source {ed['source']!r}")
        edges.append(EdgeDecl(ed["id"], ed["source"], rng, ed["multiplicity"] == "infinite"))
    U = Ultragraph.build(vertices, families, edges)
    if resolve:
        problems = validate(U)
        if problems:
            fail(data, problems[0])
    pairs = {}
    if "pairs" in data:
        if not isinstance(data["pairs"], dict):
            fail(data, "pairs must be an object")
        for name, spec in data["pairs"].items():
            if not isinstance(spec, dict) or not set(spec) <= {"generators", "vertices", "S"}:
                fail(data["pairs"], f"pair {name!r} must have keys among generators, vertices, S")
            ps = PairSpec(
                tuple(str_list(spec.get("generators", []), spec, f"pair {name!r} generators")),
                tuple(str_list(spec.get("vertices", []), spec, f"pair {name!r} vertices")),
                tuple(str_list(spec.get("S", []), spec, f"pair {name!r} S")),
            )
            for t in ps.generators + ps.vertices:
                try:
                    A = parse_vset(t, families)
                except ValueError as exc:
                    fail(spec, f"pair {name!r}: {exc}")
                if resolve:
                    _resolve_set(A, spec, f"pair {name!r}", fail, families, vertices)
            pairs[name] = ps
    exprs = []
    if "expressions" in data:
        exprs = list(str_list(data["expressions"], data, "expressions"))
    return Workspace(U, pairs, exprs)


def _resolve_set(A: VSet, node, where, fail, families, vertices):
    for v in sorted(A.named, key=natkey):
        if v not in vertices:
            fail(node, f"{where}: dangling reference to vertex {v!r}")
    for f in A.families:
        if f not in families:
            fail(node, f"{where}: dangling reference to family {f!r}")


def _range_from_json(node, parent, where, fail, families, vertices) -> VSet:
    if not isinstance(node, dict) or set(node) != {"named", "families"}:
        fail(parent, f"{where}.range must have exactly the keys ['families', 'named']")
    if not isinstance(node["named"], list) or not all(isinstance(v, str) for v in node["named"]):
        fail(node, f"{where}.range.named must be a list of strings")
    if not isinstance(node["families"], dict):
        fail(node, f"{where}.range.families must be an object")
    traces = {}
    for f, spec in node["families"].items():
        if families is not None and f not in families:
            fail(node, f"{where}: dangling reference to family {f!r}")
        if not isinstance(spec, dict) or set(spec) != {"mode", "members_or_exceptions"}:
            fail(node["families"], f"{where}.range.families.{f} must have keys mode, members_or_exceptions")
        nums = spec["members_or_exceptions"]
        if not isinstance(nums, list) or not all(isinstance(n, int) and not isinstance(n, bool) and n >= 1 for n in nums):
            fail(spec, f"{where}.range.families.{f}: indices must be positive integers")
        if len(set(nums)) != len(nums):
            fail(spec, f"{where}.range.families.{f}: duplicate index")
        if spec["mode"] == "finite":
            traces[f] = Trace.finite(nums)
        elif spec["mode"] == "cofinite":
            traces[f] = Trace.cofinite(nums)
        else:
            fail(spec, f"{where}.range.families.{f}: mode must be 'finite' or 'cofinite'")
    named = node["named"]
    for v in named:
        if split_member(v) is not None:
            fail(node, f"{where}: family member {v!r} belongs under 'families'")
        if vertices is not None and v not in vertices:
            fail(node, f"{where}: dangling reference to vertex {v!r}")
    return VSet.make(named, traces)


def load(path: str, resolve: bool = True) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), resolve)


# -- expressions -----------------------------------------------------------------

_EXPR_TOKEN = re.compile(
    r"\s*(?:(?P<gen>[ps])\[(?P<arg>[^\]]*)\]|(?P<num>\d+(?:/\d+)?)|(?P<op>[-+()]))"
)


def parse_expression(text: str, ctx):
    """Evaluate an expression such as ``2 s[1] p[{v1}] s[1*] - p[v1]`` in ``ctx``.

    Juxtaposition is the product; ``p[SET]`` takes a set literal, ``s[e]`` and
    ``s[e*]`` an edge or bundle instance.  A bare scalar means a multiple of
    the unit.
    """
    toks = []
    pos = 0
    text_len = len(text.rstrip())
    while pos < text_len:
        m = _EXPR_TOKEN.match(text, pos)
        if not m:
            col = len(text) - len(text[pos:].lstrip()) + 1
            raise WorkspaceError(f"unexpected character at column {col} in expression {text!r}")
        toks.append((m, m.end() - len(m.group(0).lstrip()) + 1))
        pos = m.end()
    i = 0
    families = ctx.graph.families

    def peek():
        return toks[i][0] if i < len(toks) else None

    def err(msg):
        col = toks[i][1] if i < len(toks) else len(text) + 1
        raise WorkspaceError(f"{msg} at column {col} in expression {text!r}")

    def factor():
        nonlocal i
        m = peek()
        if m is None:
            err("unexpected end")
        if m.group("num"):
            i += 1
            return Fraction(m.group("num"))
        if m.group("op") == "(":
            i += 1
            v = expr()
            if peek() is None or peek().group("op") != ")":
                err("expected ')'")
            i += 1
            return v
        if m.group("gen"):
            i += 1
            arg = m.group("arg").strip()
            try:
                if m.group("gen") == "p":
                    return ctx.p(parse_vset(arg, families))
                if arg.endswith("*"):
                    return ctx.s_star(arg[:-1].strip())
                return ctx.s(arg)
            except (ValueError, KeyError) as exc:
                i -= 1
                err(str(exc))
        err(f"unexpected {m.group(0).strip()!r}")

    def starts_factor(m):
        return m is not None and (m.group("num") or m.group("gen") or m.group("op") == "(")

    def term():
        scalar = Fraction(1)
        value = None
        if not starts_factor(peek()):
            err("expected a term")
        while starts_factor(peek()):
            f = factor()
            if isinstance(f, Fraction):
                scalar *= f
            else:
                value = f if value is None else value * f
        if value is None:
            try:
                value = ctx.unit()
            except UltragraphError:
                err("a scalar needs a generator (the algebra has no unit)")
        if scalar == 1:
            return value
        try:
            return value * ctx.ring(scalar)
        except (ValueError, ZeroDivisionError) as exc:
            err(f"scalar {scalar} is not in the ring {ctx.ring}: {exc}")

    def expr():
        nonlocal i
        sign = 1
        if peek() is not None and peek().group("op") in ("+", "-"):
            sign = -1 if peek().group("op") == "-" else 1
            i += 1
        acc = term()
        if sign < 0:
            acc = -acc
        while peek() is not None and peek().group("op") in ("+", "-"):
            op = peek().group("op")
            i += 1
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    if not toks:
        raise WorkspaceError("empty expression")
    out = expr()
    if i != len(toks):
        err("trailing input")
    return out
