import random

import networkx as nx
import pytest

from helpers import SEED, u1, u2, u3, u4, u5, u5_exit
from ultraleavitt import (
    AdmissiblePair,
    HSCollection,
    UltragraphError,
    VSet,
    admissible_pairs,
    breaking_vertices,
    contains,
    gap_idempotent,
    hs_closure,
    import_graph,
    is_hereditary,
    is_saturated,
    make_ultragraph,
)
from ultraleavitt.algebra import LeavittContext
from ultraleavitt.core import all_subsets
from ultraleavitt.ideals import pool_collections

W = VSet.family("W")


def h_fin():
    return hs_closure(u1(), (), W)


def brute_hs_vertex_sets(U):
    """Hereditary saturated vertex sets of a fully finite ultragraph, by enumeration."""
    out = []
    for B in all_subsets(U.vertices):
        V = set(B)
        hereditary = all(set(e.range.vertices()) <= V for e in U.edges if e.source in V)
        saturated = all(
            v in V
            for v in U.vertices
            if U.is_regular(v) and all(set(e.range.vertices()) <= V for e in U.out_decls(v))
        )
        if hereditary and saturated:
            out.append(frozenset(V))
    return out


def random_graph(r):
    G = nx.MultiDiGraph()
    n = r.randint(1, 4)
    G.add_nodes_from(f"n{i}" for i in range(n))
    for _ in range(r.randint(0, 6)):
        G.add_edge(f"n{r.randrange(n)}", f"n{r.randrange(n)}")
    return import_graph(G)


class TestContains:
    def test_finite_subsets(self):
        assert contains(h_fin(), VSet.of("W#1", "W#5"))

    def test_whole_family_not_contained(self):
        assert not contains(h_fin(), W)

    def test_outside_vertex(self):
        assert not contains(h_fin(), VSet.of("v0"))

    def test_requires_algebra_member(self):
        from ultraleavitt import Trace

        with pytest.raises(UltragraphError):
            contains(h_fin(), VSet.family("W", Trace.residue(2, 0)))

    def test_flagged_atom(self):
        H = hs_closure(u1(), [W])
        assert contains(H, W) and contains(H, W - VSet.of("W#2"))
        assert contains(H, VSet.of("v0"))  # saturation: v0 is regular with r(e) in H


class TestHereditarySaturated:
    def test_h_fin(self):
        assert is_hereditary(u1(), h_fin()) and is_saturated(u1(), h_fin())

    def test_not_hereditary(self):
        U = u2()
        H = HSCollection(U, VSet.of("v1"))
        assert not is_hereditary(U, H)

    def test_empty_collection(self):
        for make in (u1, u3, u4, u5_exit):
            U = make()
            assert is_hereditary(U, HSCollection.empty(U)) and is_saturated(U, HSCollection.empty(U))

    def test_not_saturated(self):
        U = make_ultragraph(["a", "b"], [], [("e", "a", ["b"])])
        H = HSCollection(U, VSet.of("b"))
        assert is_hereditary(U, H) and not is_saturated(U, H)

    def test_flag_invariant_enforced(self):
        with pytest.raises(UltragraphError):
            HSCollection(u1(), VSet(), frozenset({frozenset({"e"})}))


class TestClosure:
    def test_cascade(self):
        H = hs_closure(u2(), [VSet.of("v2")])
        assert H.vertices == VSet.of("v1", "v2")

    def test_single_family_member(self):
        H = hs_closure(u1(), [VSet.of("W#1")])
        assert H.vertices == VSet.of("W#1") and not H.atoms

    def test_no_generators(self):
        H = hs_closure(u1(), [])
        assert H.vertices.is_empty() and not H.atoms

    def test_rejects_non_member(self):
        from ultraleavitt import Trace

        with pytest.raises(UltragraphError):
            hs_closure(u1(), [VSet.family("W", Trace.residue(2, 1))])

    @pytest.mark.parametrize("make", [u2, u3, u5, u5_exit])
    def test_least_against_enumeration(self, make):
        U = make()
        candidates = brute_hs_vertex_sets(U)
        for B in all_subsets(U.vertices):
            H = hs_closure(U, [VSet.of(*B)] if B else [])
            containing = [V for V in candidates if set(B) <= V]
            least = min(containing, key=len)
            assert all(least <= V for V in containing)
            assert set(H.vertices.vertices()) == least

    def test_random_graphs_against_enumeration(self):
        r = random.Random(SEED + 11)
        for _ in range(60):
            U = random_graph(r)
            candidates = brute_hs_vertex_sets(U)
            gens = r.sample(list(U.vertices), r.randint(0, len(U.vertices)))
            H = hs_closure(U, [VSet.of(v) for v in gens])
            least = min((V for V in candidates if set(gens) <= V), key=len)
            assert set(H.vertices.vertices()) == least
            assert is_hereditary(U, H) and is_saturated(U, H)

    @pytest.mark.parametrize("make", [u1, u2, u4, u5])
    def test_results_are_hereditary_and_saturated(self, make):
        U = make()
        for H in pool_collections(U):
            assert is_hereditary(U, H) and is_saturated(U, H)


class TestBreakingVertices:
    def test_u4(self):
        U = u4()
        assert breaking_vertices(U, hs_closure(U, [VSet.of("x")])) == ("u",)

    def test_u4_empty(self):
        U = u4()
        assert breaking_vertices(U, HSCollection.empty(U)) == ()

    def test_no_bundles(self):
        U = u1()
        for H in pool_collections(U):
            assert breaking_vertices(U, H) == ()


class TestAdmissiblePairs:
    def test_counts(self):
        assert len(admissible_pairs(u2())) == 2
        assert len(admissible_pairs(u3())) == 2
        assert len(pool_collections(u1())) == 3

    def test_u1_collections(self):
        H0, Hf, Hall = pool_collections(u1())
        assert H0.vertices.is_empty()
        assert Hf.vertices == W and not Hf.atoms
        assert Hall.vertices == VSet.of("v0") | W and Hall.atoms

    def test_u4_includes_breaking_subsets(self):
        pairs = admissible_pairs(u4())
        Hx = hs_closure(u4(), [VSet.of("x")])
        S_values = {p.S for p in pairs if p.H.vertices == Hx.vertices}
        assert S_values == {frozenset(), frozenset({"u"})}

    def test_rejects_non_breaking_S(self):
        with pytest.raises(UltragraphError):
            AdmissiblePair(h_fin(), frozenset({"v0"}))


class TestGapIdempotent:
    def test_u4(self):
        U = u4()
        H = hs_closure(U, [VSet.of("x")])
        x = gap_idempotent(U, H, "u")
        ctx = LeavittContext(U)
        assert x == ctx.p(VSet.of("u")) - ctx.s("g") * ctx.s_star("g")

    def test_idempotent(self):
        U = u4()
        x = gap_idempotent(U, hs_closure(U, [VSet.of("x")]), "u")
        assert (x * x - x).is_zero()

    def test_not_breaking(self):
        with pytest.raises(UltragraphError):
            gap_idempotent(u1(), h_fin(), "v0")
