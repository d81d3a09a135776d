import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import u1, u2
from ultraleavitt import Trace, VSet, make_ultragraph, mod
from ultraleavitt.algebra import LeavittContext
from ultraleavitt.workspace import PairSpec, Workspace, WorkspaceError, dumps, load, loads, parse_expression

DATA = Path(__file__).parent / "data"


@st.composite
def workspaces(draw):
    n = draw(st.integers(1, 4))
    verts = [f"v{i}" for i in range(n)]
    fams = draw(st.sampled_from([[], ["W"], ["W", "X"]]))
    edges = []
    for k in range(draw(st.integers(0, 4))):
        A = VSet.of(*draw(st.lists(st.sampled_from(verts), max_size=3)))
        for f in fams:
            nums = draw(st.sets(st.integers(1, 9), max_size=3))
            mode = draw(st.sampled_from(["none", "finite", "cofinite"]))
            if mode == "finite" and nums:
                A = A | VSet.family(f, Trace.finite(nums))
            elif mode == "cofinite":
                A = A | VSet.family(f, Trace.cofinite(nums))
        if A.is_empty():
            A = VSet.of(verts[0])
        edges.append((f"e{k}", draw(st.sampled_from(verts)), A, draw(st.booleans())))
    U = make_ultragraph(verts, fams, edges)
    pairs = {}
    if draw(st.booleans()):
        pairs["P"] = PairSpec((f"{{{verts[-1]}}}",), tuple(fams[:1]), ())
    exprs = draw(st.lists(st.sampled_from(["p[v0]", "2 p[v0] - p[v0]", "s[e0] s[e0*]"]), max_size=2))
    if not edges:
        exprs = [x for x in exprs if "s[" not in x]
    return Workspace(U, pairs, exprs)


@given(workspaces())
@settings(max_examples=100, deadline=None)
def test_print_parse_round_trip(ws):
    text = dumps(ws)
    again = loads(text)
    assert again.ultragraph.vertices == ws.ultragraph.vertices
    assert again.ultragraph.edges == ws.ultragraph.edges
    assert again.pairs == ws.pairs and again.expressions == ws.expressions
    assert dumps(again) == text


@pytest.mark.parametrize("name", ["U1", "U2", "U3", "U4", "U5"])
def test_data_files_are_canonical(name):
    path = DATA / f"{name}.json"
    text = path.read_text(encoding="utf-8")
    assert dumps(loads(text)) == text


def test_u1_file_matches_fixture():
    ws = load(str(DATA / "U1.json"))
    assert ws.ultragraph.edges == u1().edges
    assert ws.pair("Hfin").H.vertices == VSet.family("W")


def edit(text, old, new):
    assert old in text
    return text.replace(old, new, 1)


class TestErrors:
    base = (DATA / "U1.json").read_text(encoding="utf-8")

    def test_empty_range(self):
        text = edit(self.base, '"families": {\n          "W": {\n            "mode": "cofinite",\n            "members_or_exceptions": []\n          }\n        }', '"families": {}')
        with pytest.raises(WorkspaceError) as exc:
            loads(text)
        assert "empty range" in str(exc.value)
        assert exc.value.line == 13

    def test_unresolved_family(self):
        text = edit(self.base, '"W": {\n            "mode"', '"Z": {\n            "mode"')
        with pytest.raises(WorkspaceError) as exc:
            loads(text)
        assert "dangling reference to family 'Z'" in str(exc.value)
        assert exc.value.line is not None and exc.value.column is not None

    def test_unresolved_family_allowed_without_resolution(self):
        text = edit(self.base, '"W": {\n            "mode"', '"Z": {\n            "mode"')
        ws = loads(text, resolve=False)
        assert ws.ultragraph.range("e") == VSet.family("Z")

    def test_syntax_error_position(self):
        with pytest.raises(WorkspaceError) as exc:
            loads('{\n  "vertices": [,]\n}')
        assert (exc.value.line, exc.value.column) == (2, 16)
        assert str(exc.value).startswith("line 2, column 16")

    def test_unknown_key(self):
        with pytest.raises(WorkspaceError) as exc:
            loads(edit(self.base, '"vertices"', '"vertexes": [], "vertices"'))
        assert "unknown key" in str(exc.value) and exc.value.line == 1

    def test_bad_multiplicity(self):
        with pytest.raises(WorkspaceError):
            loads(edit(self.base, '"one"', '"two"'))

    def test_family_member_in_named(self):
        with pytest.raises(WorkspaceError):
            loads(edit(self.base, '"named": []', '"named": ["W#1"]'))

    def test_unknown_pair(self):
        with pytest.raises(WorkspaceError):
            load(str(DATA / "U1.json")).pair("nope")
        with pytest.raises(WorkspaceError):
            load(str(DATA / "U1.json")).pair("pool:99")

    def test_pool_and_empty_pairs(self):
        ws = load(str(DATA / "U1.json"))
        assert ws.pair("empty").H.vertices.is_empty()
        assert ws.pair("pool:1").H.vertices == VSet.family("W")


class TestExpressions:
    def test_basic(self):
        ctx = LeavittContext(u2())
        assert parse_expression("p[v1] - s[1]s[1*]", ctx).is_zero()
        assert parse_expression("2 s[1] p[{v1}] s[1*]", ctx) == 2 * (ctx.s("1") * ctx.p(VSet.of("v1")) * ctx.s_star("1"))
        assert parse_expression("(p[v1] + p[v2]) s[1]", ctx) == ctx.s("1")

    def test_scalar_is_unit_multiple(self):
        ctx = LeavittContext(u2(), mod(3))
        assert parse_expression("4", ctx) == ctx.unit()

    def test_fractions(self):
        from ultraleavitt import RATIONALS

        ctx = LeavittContext(u2(), RATIONALS)
        assert parse_expression("1/2 p[v1] + 1/2 p[v1]", ctx) == ctx.p(VSet.of("v1"))

    def test_family_sets(self):
        ctx = LeavittContext(u1())
        x = parse_expression("p[W \\ {W#1}] + p[{W#1}]", ctx)
        assert x == ctx.p(VSet.family("W"))

    def test_errors(self):
        ctx = LeavittContext(u2())
        for bad in ("p[v1] +", "s[9]", "p[v1", "p[v1] ? p[v2]", "(p[v1]"):
            with pytest.raises((WorkspaceError, ValueError)):
                parse_expression(bad, ctx)

    def test_error_reports_column(self):
        ctx = LeavittContext(u2())
        with pytest.raises(WorkspaceError) as exc:
            parse_expression("p[v1] ? p[v2]", ctx)
        assert "column 7" in str(exc.value)


def test_json_schema_keys():
    data = json.loads(dumps(u1()))
    assert set(data) == {"vertices", "families", "edges"}
    assert set(data["edges"][0]) == {"id", "source", "multiplicity", "range"}
    assert data["edges"][0]["range"] == {"named": [], "families": {"W": {"mode": "cofinite", "members_or_exceptions": []}}}
