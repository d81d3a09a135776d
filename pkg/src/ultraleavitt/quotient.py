"""Overline ultragraphs, classes of sets modulo ``H`` and quotient ultragraphs.

``A ~ B`` iff ``A \\ B`` and ``B \\ A`` lie in ``H``.  Each class has a
canonical representative: members of ``V_H`` are removed, except that on an
unflagged atom met in an infinite set the representative is filled up with
all of ``atom & V_H``.  So with ``H`` the finite subsets of ``W`` the class
``[W]`` keeps ``W`` as representative and stays distinct from ``[{}]``.
The representative map preserves unions, intersections and differences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .core import EdgeDecl, Ultragraph, UltragraphError
from .ideals import AdmissiblePair, HSCollection, _contains, breaking_vertices
from .setalgebra import atoms, in_algebra
from .vsets import VSet, natkey


def prime(w: str) -> str:
    return f"{w}'"


def _unflagged_atoms(H: HSCollection) -> list:
    return [(sig, a) for sig, a in atoms(H.ultragraph).items() if sig not in H.atoms]


def reduce_rep(H: HSCollection, A: VSet) -> VSet:
    """Canonical representative of the class of ``A`` modulo ``H``."""
    V = H.vertices
    out = A - V
    for _, a in _unflagged_atoms(H):
        if not (A & a).is_finite():
            out = out | (a & V)
    return out


@dataclass(frozen=True)
class OverlineUltragraph:
    base: Ultragraph
    pair: AdmissiblePair
    graph: Ultragraph
    unbroken: tuple  # B_H \ S, the vertices that get a primed copy

    def bar(self, A: VSet) -> VSet:
        """``A`` together with ``w'`` for each ``w`` in ``A & (B_H \\ S)``."""
        return A | VSet.of(*(prime(w) for w in self.unbroken if w in A))


def build_overline(U: Ultragraph, H: HSCollection, S=()) -> OverlineUltragraph:
    pair = AdmissiblePair(H, frozenset(S))
    unbroken = tuple(w for w in breaking_vertices(U, H) if w not in pair.S)
    ov = OverlineUltragraph(U, pair, U, unbroken)
    edges = []
    for e in U.edges:
        src = e.source
        if src in unbroken and _contains(U, H.vertices, H.atoms, e.range):
            src = prime(src)
        edges.append(EdgeDecl(e.id, src, ov.bar(e.range), e.bundle))
    graph = Ultragraph.build(U.vertices + tuple(prime(w) for w in unbroken), U.families, edges, name=f"overline({U})")
    return OverlineUltragraph(U, pair, graph, unbroken)


@dataclass(frozen=True)
class ClassSet:
    """The class ``[A]`` of a set modulo an admissible pair, via its canonical representative."""

    rep: VSet
    pair: AdmissiblePair = field(repr=False)

    def is_empty(self) -> bool:
        return self.rep.is_empty()

    def __str__(self):
        return f"[{self.rep}]"


def class_reduce(A: VSet, H: HSCollection, S=()) -> ClassSet:
    ov = build_overline(H.ultragraph, H, S)
    if not in_algebra(ov.graph, A):
        raise UltragraphError(f"{A} is not in the overline set algebra")
    return ClassSet(reduce_rep(H, A), ov.pair)


def class_eq(A: VSet, B: VSet, H: HSCollection, S=()) -> bool:
    return class_reduce(A, H, S) == class_reduce(B, H, S)


def class_op(kind: str, X: ClassSet, Y: ClassSet) -> ClassSet:
    if X.pair != Y.pair:
        raise UltragraphError("classes belong to different quotients")
    ops = {"union": VSet.__or__, "intersect": VSet.__and__, "diff": VSet.__sub__}
    if kind not in ops:
        raise ValueError(f"unknown set operation {kind!r}")
    return ClassSet(reduce_rep(X.pair.H, ops[kind](X.rep, Y.rep)), X.pair)


class QuotientUltragraph:
    """``G/(H,S)``: vertex classes outside ``H``, primed classes, edges with range outside ``H``.

    Exposes the same read interface as :class:`Ultragraph` (``edges``,
    ``decl``, ``source``, ``range``, ``out_decls``, ``is_regular``, ...);
    ranges are canonical class representatives and vertices are named by a
    representative vertex.
    """

    def __init__(self, U: Ultragraph, H: HSCollection, S=()):
        self.base = U
        self.overline = build_overline(U, H, S)
        self.pair = self.overline.pair
        self.H = H
        V = H.vertices
        og = self.overline.graph
        self.vertices = tuple(v for v in og.vertices if v not in V)
        self.families = U.families
        base_range = {e.id: e.range for e in U.edges}
        kept = []
        for e in og.edges:
            if _contains(U, V, H.atoms, base_range[e.id]):
                continue
            kept.append(EdgeDecl(e.id, e.source, reduce_rep(H, e.range), e.bundle))
        self.presentation = Ultragraph.build(self.vertices, U.families, kept, name=f"{U}/{self.pair}")
        self.edges = self.presentation.edges
        self.name = self.presentation.name

    # read interface shared with Ultragraph
    def decl(self, ref):
        return self.presentation.decl(ref)

    def source(self, ref):
        return self.presentation.source(ref)

    def range(self, ref):
        return self.presentation.range(ref)

    def is_bundle(self, ref):
        return self.presentation.is_bundle(ref)

    @property
    def edge_ids(self):
        return self.presentation.edge_ids

    def out_decls(self, v):
        return self.presentation.out_decls(v)

    def out_edges(self, v):
        return self.presentation.out_edges(v)

    def emits(self, v):
        return self.presentation.emits(v)

    def is_regular(self, v):
        return self.presentation.is_regular(v)

    def is_infinite_emitter(self, v):
        return self.presentation.is_infinite_emitter(v)

    def instances(self, bundle_bound=2):
        return self.presentation.instances(bundle_bound)

    @property
    def named_vertices(self):
        return self.vertices

    def reduce(self, A: VSet) -> VSet:
        return reduce_rep(self.H, A)

    def classes(self, A: VSet) -> ClassSet:
        return ClassSet(self.reduce(A), self.pair)

    @cached_property
    def _vertex_set(self) -> VSet:
        fams = {f: VSet.family(f).trace(f) - self.H.vertices.trace(f) for f in self.families}
        return VSet.make(self.vertices, fams)

    def vertex_set(self) -> VSet:
        """Representatives of the vertex classes ``[v]`` (may be infinite)."""
        return self._vertex_set

    def vertices_inside(self, A: VSet) -> VSet:
        """Vertices ``v`` with ``[v]`` contained in ``[A]``."""
        return self._vertex_set & self.reduce(A)

    def in_algebra(self, A: VSet) -> bool:
        return in_algebra(self.overline.graph, A)

    def singular_vertices(self) -> VSet:
        named = [v for v in self.vertices if not self.is_regular(v)]
        fams = {f: t for f, t in self._vertex_set.traces}
        return VSet.make(named, fams)

    def __str__(self):
        return self.name


def build_quotient(U: Ultragraph, H: HSCollection, S=()) -> QuotientUltragraph:
    return QuotientUltragraph(U, H, S)


def quotient_of(pair: AdmissiblePair) -> QuotientUltragraph:
    return QuotientUltragraph(pair.ultragraph, pair.H, pair.S)


def quotient_summary(Q: QuotientUltragraph) -> dict:
    return {
        "vertices": [v for v in Q.vertices] + ([str(VSet.make((), dict(Q.vertex_set().traces)))] if Q.vertex_set().traces else []),
        "edges": [
            {"id": e.id, "source": f"[{e.source}]", "range": f"[{e.range}]", "multiplicity": e.multiplicity}
            for e in Q.edges
        ],
    }


def sorted_vertices(vs) -> list:
    return sorted(vs, key=natkey)
