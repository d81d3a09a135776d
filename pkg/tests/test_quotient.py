import random

import pytest

from helpers import SEED, u1, u2, u4, u5
from ultraleavitt import (
    AdmissiblePair,
    HSCollection,
    UltragraphError,
    VSet,
    admissible_pairs,
    build_overline,
    build_quotient,
    class_eq,
    class_op,
    class_reduce,
    contains,
    hs_closure,
)
from ultraleavitt.quotient import quotient_of, quotient_summary, reduce_rep
from ultraleavitt.setalgebra import cell_pool

W = VSet.family("W")


def h_fin():
    return hs_closure(u1(), (), W)


class TestOverline:
    def test_no_breaking_vertices(self):
        ov = build_overline(u1(), h_fin())
        assert ov.graph.vertices == u1().vertices and ov.graph.edges == u1().edges

    def test_primed_copy(self):
        U = u4()
        ov = build_overline(U, hs_closure(U, [VSet.of("x")]))
        assert ov.graph.vertices == ("u", "u'", "x", "y")
        assert ov.graph.source("f#1") == "u'" and ov.graph.source("g") == "u"

    def test_broken_vertex_not_primed(self):
        U = u4()
        ov = build_overline(U, hs_closure(U, [VSet.of("x")]), {"u"})
        assert ov.graph.vertices == ("u", "x", "y")

    def test_S_outside_breaking(self):
        with pytest.raises(UltragraphError):
            build_overline(u1(), h_fin(), {"v0"})


class TestClasses:
    def test_reduce(self):
        H = h_fin()
        assert class_reduce(VSet.of("v0", "W#3"), H).rep == VSet.of("v0")
        assert class_reduce(W, H).rep == W
        assert class_reduce(VSet.of("W#2"), H).is_empty()

    def test_eq(self):
        H = h_fin()
        assert class_eq(W, W - VSet.of("W#1"), H)
        assert not class_eq(W, W | VSet.of("v0"), H)
        assert class_eq(VSet(), VSet.of("W#2"), H)

    def test_mixed_contexts(self):
        U = u4()
        X = class_reduce(VSet.of("y"), hs_closure(U, [VSet.of("x")]))
        Y = class_reduce(VSet.of("y"), HSCollection.empty(U))
        with pytest.raises(UltragraphError):
            class_op("union", X, Y)

    def test_eq_matches_symmetric_difference_rule(self):
        r = random.Random(SEED + 21)
        pairs = [p for make in (u1, u2, u4, u5) for p in admissible_pairs(make())]
        for t in range(200):
            pair = pairs[t % len(pairs)]
            U = pair.ultragraph
            pool = cell_pool(U) + [VSet()]
            A = r.choice(pool) | r.choice(pool)
            B = r.choice(pool) - r.choice(pool)
            if r.random() < 0.3:
                B = A | VSet.of(r.choice(U.vertices))
            expected = contains(pair.H, A - B) and contains(pair.H, B - A)
            assert class_eq(A, B, pair.H, pair.S) == expected

    def test_representative_is_a_fixed_point(self):
        for make in (u1, u2, u4):
            for pair in admissible_pairs(make()):
                for A in cell_pool(pair.ultragraph):
                    rep = reduce_rep(pair.H, A)
                    assert reduce_rep(pair.H, rep) == rep
                    assert contains(pair.H, A - rep) or not (A - rep)


class TestQuotient:
    def test_u1_h_fin(self):
        Q = build_quotient(u1(), h_fin())
        assert Q.vertices == ("v0",)
        assert Q.edge_ids == ("e",)
        assert Q.range("e") == W
        assert Q.vertices_inside(Q.range("e")).is_empty()

    def test_everything_collapses(self):
        U = u2()
        Q = build_quotient(U, hs_closure(U, [VSet.of("v2")]))
        assert Q.vertex_set().is_empty() and not Q.edges

    def test_u4(self):
        U = u4()
        Q = build_quotient(U, hs_closure(U, [VSet.of("x")]))
        assert Q.vertices == ("u", "u'", "y")
        assert Q.edge_ids == ("g",)
        assert Q.source("g") == "u" and Q.range("g") == VSet.of("y")
        summary = quotient_summary(Q)
        assert summary["edges"] == [{"id": "g", "source": "[u]", "range": "[{y}]", "multiplicity": "one"}]

    @pytest.mark.parametrize("make", [u1, u2, u4, u5])
    def test_empty_pair_is_the_ultragraph(self, make):
        U = make()
        Q = build_quotient(U, HSCollection.empty(U))
        assert Q.vertices == U.vertices
        assert [(e.id, e.source, e.range, e.bundle) for e in Q.edges] == [(e.id, e.source, e.range, e.bundle) for e in U.edges]

    def test_quotient_of_pair(self):
        Q = quotient_of(AdmissiblePair(h_fin()))
        assert Q.range("e") == W and Q.in_algebra(W)
