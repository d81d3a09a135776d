import itertools
import random

import networkx as nx
import pytest

from helpers import SEED, u1, u2, u3, u4, u5
from ultraleavitt import Trace, UltragraphError, VSet, atoms, brute_closure, import_graph, in_algebra, is_unital, make_ultragraph, vset_op
from ultraleavitt.core import all_subsets
from ultraleavitt.setalgebra import cell_pool, range_closure

W = VSet.family("W")


def random_vset(r: random.Random) -> VSet:
    A = VSet.of(*r.sample(["v0", "v1", "W#1", "W#2", "W#5"], r.randint(0, 3)))
    if r.random() < 0.7:
        A = A | VSet.family("W", Trace.make(r.choice([1, 2, 3, 4]), r.sample(range(4), r.randint(0, 3)), r.sample(range(1, 12), r.randint(0, 3))))
    return A


def test_ring_of_sets_laws():
    r = random.Random(SEED)
    for _ in range(1000):
        A, B, C = random_vset(r), random_vset(r), random_vset(r)
        assert vset_op("union", vset_op("union", A, B), C) == vset_op("union", A, vset_op("union", B, C))
        assert vset_op("intersect", vset_op("intersect", A, B), C) == vset_op("intersect", A, vset_op("intersect", B, C))
        assert A & (B | C) == (A & B) | (A & C)
        assert A - B == A - (A & B)
        assert (A | B) - C == (A - C) | (B - C)


def test_vset_op_examples():
    assert vset_op("diff", W, VSet.of("W#1")).trace("W") == Trace.cofinite([1])
    assert vset_op("intersect", W - VSet.of("W#1"), VSet.of("W#1", "W#2")) == VSet.of("W#2")
    assert vset_op("union", W, VSet.of("v0")) == VSet.of("v0") | W
    with pytest.raises(ValueError):
        vset_op("xor", W, W)


class TestAtoms:
    def test_u1(self):
        assert atoms(u1()) == {frozenset({"e"}): W}

    def test_u2(self):
        assert atoms(u2()) == {frozenset({"1", "2"}): VSet.of("v1"), frozenset({"1"}): VSet.of("v2")}

    def test_u3(self):
        assert atoms(u3()) == {}

    @pytest.mark.parametrize("make", [u1, u2, u4, u5])
    def test_partition_of_range_union(self, make):
        U = make()
        table = list(atoms(U).values())
        for a, b in itertools.combinations(table, 2):
            assert (a & b).is_empty()
        union = VSet()
        for a in table:
            union = union | a
        ranges = VSet()
        for e in U.edges:
            ranges = ranges | e.range
        assert union == ranges

    def test_signatures_describe_atoms(self):
        U = make_ultragraph(["a"], ["W"], [("e", "a", W), ("f", "a", VSet.family("W", Trace.residue(2, 0)) | VSet.of("a"))])
        for sig, a in atoms(U).items():
            for e in U.edges:
                inside = (a & e.range) == a
                assert inside == (e.id in sig)


def three_vertex():
    G = nx.MultiDiGraph()
    G.add_edges_from([("a", "b"), ("b", "c"), ("c", "a"), ("a", "c")])
    return import_graph(G)


def bare_ranges():
    # ranges that do not separate vertices; brute closure must still add singletons
    return make_ultragraph(["a", "b", "c", "d"], [], [("e", "a", ["b", "c", "d"]), ("f", "b", ["c", "d"])])


class TestMembership:
    @pytest.mark.parametrize("make", [u2, u3, u5, three_vertex, bare_ranges])
    def test_agrees_with_brute_closure(self, make):
        U = make()
        closure = set(brute_closure(U))
        for B in all_subsets(U.vertices):
            A = VSet.of(*B)
            assert in_algebra(U, A) == (A in closure)

    def test_finite_sets_are_members(self):
        assert in_algebra(u1(), VSet.of("v0", "W#3", "W#9"))

    def test_evens_rejected(self):
        assert not in_algebra(u1(), VSet.family("W", Trace.residue(2, 0)))

    def test_whole_vertex_set(self):
        assert in_algebra(u1(), VSet.of("v0") | W)

    def test_matches_finite_difference_rule(self):
        # A in algebra iff A differs finitely from some union of atoms
        U = make_ultragraph(["a"], ["W", "X"], [("e", "a", W | VSet.family("X", Trace.residue(2, 1))), ("f", "a", VSet.family("W", Trace.residue(3, 0)))])
        unions = range_closure(U)
        r = random.Random(SEED + 1)
        for _ in range(300):
            A = VSet.of(*r.sample(["a", "W#1", "X#2"], r.randint(0, 2)))
            for fam in ("W", "X"):
                A = A | VSet.family(fam, Trace.make(r.choice([1, 2, 3, 6]), r.sample(range(6), r.randint(0, 4)), r.sample(range(1, 9), r.randint(0, 2))))
            expected = any((A ^ B).is_finite() for B in unions)
            assert in_algebra(U, A) == expected

    def test_closed_under_operations(self):
        r = random.Random(SEED + 2)
        for U in (u1(), u4(), make_ultragraph(["a"], ["W"], [("e", "a", W), ("f", "a", VSet.family("W", Trace.residue(2, 0)))])):
            pool = cell_pool(U)
            for _ in range(500 // 3 + 1):
                A = r.choice(pool) | VSet.of(*r.sample(list(U.vertices), 1))
                B = r.choice(pool) - r.choice(pool)
                assert in_algebra(U, A) and in_algebra(U, B)
                for kind in ("union", "intersect", "diff"):
                    assert in_algebra(U, vset_op(kind, A, B))


class TestUnital:
    def test_u1(self):
        assert is_unital(u1())

    def test_finite(self):
        assert is_unital(u2())

    def test_family_without_edges(self):
        assert not is_unital(make_ultragraph(["v0"], ["W"], []))


class TestBruteClosure:
    def test_u2_power_set(self):
        assert len(brute_closure(u2())) == 4

    def test_u3(self):
        assert brute_closure(u3()) == [VSet(), VSet.of("v")]

    def test_three_vertex_import(self):
        assert len(brute_closure(three_vertex())) == 8

    def test_rejects_infinite(self):
        with pytest.raises(UltragraphError):
            brute_closure(u1())
        with pytest.raises(UltragraphError):
            brute_closure(u4())


def test_cell_pool_members_are_nonempty_and_in_algebra():
    for make in (u1, u2, u3, u4, u5):
        U = make()
        for A in cell_pool(U):
            assert A and in_algebra(U, A)
