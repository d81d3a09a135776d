"""Ultragraphs with finitely presented infinite structure.

An ultragraph has finitely many named vertices, finitely many countably
infinite vertex families (members ``W#1, W#2, ...``) and finitely many edge
declarations.  Every edge is sourced at a named vertex and has a nonempty
:class:`~ultraleavitt.vsets.VSet` as range.  An edge declared with
``bundle=True`` stands for countably many parallel edges ``f#1, f#2, ...``
sharing source and range; a vertex carrying a bundle is an infinite emitter.
Family members never emit edges.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from .vsets import VSet, natkey, split_member

_IDENT = re.compile(r"^[A-Za-z0-9_.\-]+$")


class UltragraphError(ValueError):
    """Raised when an ultragraph or path violates a structural invariant."""


@dataclass(frozen=True)
class EdgeDecl:
    id: str
    source: str
    range: VSet
    bundle: bool = False

    @property
    def multiplicity(self) -> str:
        return "infinite" if self.bundle else "one"


def split_edge(ref: str) -> tuple[str, int]:
    """``"f#7" -> ("f", 7)``; single edges get index 0."""
    if "#" in ref:
        e, _, i = ref.rpartition("#")
        return e, int(i)
    return ref, 0


def edge_key(ref: str) -> tuple:
    e, i = split_edge(ref)
    return (natkey(e), i)


@dataclass(frozen=True, eq=True)
class Ultragraph:
    """Immutable ultragraph; use :meth:`build` for canonical ordering."""

    vertices: tuple = ()
    families: tuple = ()
    edges: tuple = ()
    name: str = field(default="", compare=False)

    @classmethod
    def build(cls, vertices: Iterable[str] = (), families: Iterable[str] = (), edges: Iterable[EdgeDecl] = (), name: str = ""):
        return cls(
            tuple(sorted(vertices, key=natkey)),
            tuple(sorted(families, key=natkey)),
            tuple(sorted(edges, key=lambda e: natkey(e.id))),
            name,
        )

    # -- lookups ---------------------------------------------------------
    @cached_property
    def _by_id(self) -> dict:
        return {e.id: e for e in self.edges}

    def decl(self, ref: str) -> EdgeDecl:
        """Declaration of an edge or bundle instance (``"f#3"``)."""
        e, i = split_edge(ref)
        try:
            d = self._by_id[e]
        except KeyError:
            raise UltragraphError(f"unknown edge {ref!r}") from None
        if d.bundle != (i > 0):
            kind = "bundle instance" if i else "single edge"
            raise UltragraphError(f"{ref!r} is not a valid {kind}")
        return d

    def source(self, ref: str) -> str:
        return self.decl(ref).source

    def range(self, ref: str) -> VSet:
        return self.decl(ref).range

    def is_bundle(self, ref: str) -> bool:
        return self._by_id[split_edge(ref)[0]].bundle

    @cached_property
    def edge_ids(self) -> tuple:
        return tuple(e.id for e in self.edges)

    @cached_property
    def _out(self) -> dict:
        out = {v: [] for v in self.vertices}
        for e in self.edges:
            out.setdefault(e.source, []).append(e)
        return out

    def out_decls(self, v: str) -> list:
        return list(self._out.get(v, []))

    def emits(self, v: str) -> bool:
        return bool(self._out.get(v))

    def is_infinite_emitter(self, v: str) -> bool:
        return any(e.bundle for e in self._out.get(v, []))

    def is_regular(self, v: str) -> bool:
        """Emits finitely many, and at least one, edges."""
        es = self._out.get(v, [])
        return bool(es) and not any(e.bundle for e in es)

    def out_edges(self, v: str) -> tuple:
        """Edge ids at a regular vertex in canonical order (the last is the pivot)."""
        return tuple(e.id for e in self._out.get(v, []) if not e.bundle)

    def vertex_set(self) -> VSet:
        """All vertices, ``G^0`` itself."""
        return VSet.make(self.vertices, {f: VSet.family(f).trace(f) for f in self.families})

    @property
    def named_vertices(self) -> tuple:
        return self.vertices

    def reduce(self, A: VSet) -> VSet:
        # plain ultragraphs: sets are their own classes
        return A

    def instances(self, bundle_bound: int = 2) -> list:
        """Edge instances, bundles truncated to indices ``1..bundle_bound``."""
        out = []
        for e in self.edges:
            if e.bundle:
                out.extend(f"{e.id}#{i}" for i in range(1, bundle_bound + 1))
            else:
                out.append(e.id)
        return out

    def __str__(self):
        return self.name or f"Ultragraph({len(self.vertices)} vertices, {len(self.families)} families, {len(self.edges)} edges)"


def make_ultragraph(vertices=(), families=(), edges=(), name="") -> Ultragraph:
    """Convenience constructor: ``edges`` are ``(id, source, range[, bundle])``.

    Ranges may be a :class:`VSet` or an iterable of vertex strings.
    """
    decls = []
    for spec in edges:
        if isinstance(spec, EdgeDecl):
            decls.append(spec)
            continue
        eid, src, rng, *rest = spec
        if not isinstance(rng, VSet):
            rng = VSet.of(*rng)
        decls.append(EdgeDecl(eid, src, rng, bool(rest and rest[0])))
    return Ultragraph.build(vertices, families, decls, name)


# -- validation ------------------------------------------------------------

def _vset_problems(U: Ultragraph, A: VSet, where: str) -> list[str]:
    out = []
    for v in sorted(A.named - set(U.vertices), key=natkey):
        out.append(f"{where}: dangling reference to vertex {v!r}")
    for f in A.families:
        if f not in U.families:
            out.append(f"{where}: dangling reference to family {f!r}")
    return out


def validate(U: Ultragraph) -> list[str]:
    """All invariant violations of ``U``; an empty list means well formed."""
    errors = []
    seen = set()
    for kind, names in (("vertex", U.vertices), ("family", U.families)):
        for v in names:
            if not _IDENT.match(v):
                errors.append(f"{kind} {v!r}: invalid name")
            if v in seen:
                errors.append(f"{kind} {v!r}: duplicate id")
            seen.add(v)
    ids = set()
    for e in U.edges:
        where = f"edge {e.id!r}"
        if not _IDENT.match(e.id):
            errors.append(f"{where}: invalid id")
        if e.id in ids:
            errors.append(f"{where}: duplicate id")
        ids.add(e.id)
        if split_member(e.source) is not None:
            errors.append(f"{where}: source {e.source!r} is a family member (family vertices are sinks)")
        elif e.source not in U.vertices:
            errors.append(f"{where}: dangling reference to source {e.source!r}")
        if e.range.is_empty():
            errors.append(f"{where}: empty range")
        errors.extend(_vset_problems(U, e.range, where))
    return errors


def check(U: Ultragraph) -> Ultragraph:
    errs = validate(U)
    if errs:
        raise UltragraphError("; ".join(errs))
    return U


# -- paths -----------------------------------------------------------------

def is_path(U: Ultragraph, path: Sequence[str]) -> bool:
    return all(U.source(b) in U.range(a) for a, b in zip(path, path[1:]))


def paths_up_to(U: Ultragraph, n: int, bundle_bound: int = 2) -> list[tuple]:
    """All paths of length ``1..n``; bundle instances up to ``bundle_bound``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    inst = sorted(U.instances(bundle_bound), key=edge_key)
    out = []
    layer = [(e,) for e in inst]
    for _ in range(n):
        out.extend(layer)
        layer = [p + (e,) for p in layer for e in inst if U.source(e) in U.range(p[-1])]
    return out


def path_endpoints(U: Ultragraph, path: Sequence[str]) -> tuple[str, VSet]:
    """``(s(path), r(path))``."""
    if not path:
        raise UltragraphError("empty path: use a vertex set (cell) instead")
    if not is_path(U, path):
        raise UltragraphError(f"{' '.join(path)} is not a path")
    return U.source(path[0]), U.range(path[-1])


def singular_vertices(U: Ultragraph) -> VSet:
    """Sinks and infinite emitters; family members are always sinks."""
    named = [v for v in U.vertices if not U.is_regular(v)]
    return VSet.make(named, {f: VSet.family(f).trace(f) for f in U.families})


# -- matrices --------------------------------------------------------------

def edge_matrix(U: Ultragraph) -> np.ndarray:
    """``A[e, f] = 1`` iff ``s(f)`` lies in ``r(e)``; rows/cols in ``U.edge_ids`` order."""
    if any(e.bundle for e in U.edges):
        raise UltragraphError("edge matrix needs a bundle-free ultragraph")
    n = len(U.edges)
    A = np.zeros((n, n), dtype=int)
    for i, e in enumerate(U.edges):
        for j, f in enumerate(U.edges):
            A[i, j] = int(f.source in e.range)
    return A


def from_matrix(A) -> Ultragraph:
    """The ultragraph ``G_A``: vertex ``v_i`` emits edge ``i`` with range ``{v_j : A[i,j]=1}``."""
    A = np.asarray(A, dtype=int)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise UltragraphError("matrix must be square")
    if not np.isin(A, (0, 1)).all():
        raise UltragraphError("matrix entries must be 0 or 1")
    for i, row in enumerate(A):
        if not row.any():
            raise UltragraphError(f"row {i + 1} is identically zero")
    n = A.shape[0]
    edges = [
        EdgeDecl(str(i + 1), f"v{i + 1}", VSet.of(*(f"v{j + 1}" for j in range(n) if A[i, j])))
        for i in range(n)
    ]
    return Ultragraph.build([f"v{i + 1}" for i in range(n)], (), edges, name=f"G_A{A.tolist()}")


def _require_nonsingular(U: Ultragraph):
    sing = singular_vertices(U)
    if not sing.is_empty():
        raise UltragraphError(f"singular vertices present: {sing}")


def tilde(U: Ultragraph) -> Ultragraph:
    """Split every vertex ``v`` into ``v_e``, one per emitted edge."""
    _require_nonsingular(U)

    def split(A: VSet) -> VSet:
        return VSet.of(*(f"{w}_{f}" for w in A.vertices() for f in U.out_edges(w)))

    verts = [f"{v}_{e}" for v in U.vertices for e in U.out_edges(v)]
    edges = [EdgeDecl(e.id, f"{e.source}_{e.id}", split(e.range)) for e in U.edges]
    return Ultragraph.build(verts, (), edges, name=f"tilde({U})")


def check_tilde_eq_GA(U: Ultragraph) -> bool:
    """Whether ``G_{A_G}`` equals the tilde ultragraph under ``v_e <-> v_{index(e)}``."""
    T = tilde(U)
    GA = from_matrix(edge_matrix(U))
    index = {e.id: i + 1 for i, e in enumerate(U.edges)}
    rename = {f"{e.source}_{e.id}": f"v{index[e.id]}" for e in U.edges}
    if sorted(rename[v] for v in T.vertices) != sorted(GA.vertices):
        return False
    for e in T.edges:
        g = GA.decl(str(index[e.id]))
        if rename[e.source] != g.source:
            return False
        if VSet.of(*(rename[w] for w in e.range.vertices())) != g.range:
            return False
    return True


def import_graph(G) -> Ultragraph:
    """Regard a finite directed (multi)graph as an ultragraph with singleton ranges.

    ``G`` is a networkx ``DiGraph``/``MultiDiGraph``; an edge attribute ``id``
    names the edge, otherwise edges are numbered ``e1, e2, ...`` in insertion
    order.
    """
    if isinstance(G, (nx.MultiDiGraph, nx.MultiGraph)):
        raw = list(G.edges(keys=True, data=True))
        triples = [(u, v, d) for u, v, _, d in raw]
    else:
        triples = list(G.edges(data=True))
    edges = []
    for i, (u, v, d) in enumerate(triples):
        eid = str(d.get("id", f"e{i + 1}"))
        edges.append(EdgeDecl(eid, str(u), VSet.of(str(v))))
    return Ultragraph.build([str(n) for n in G.nodes], (), edges, name="imported graph")


def to_networkx(U: Ultragraph) -> nx.MultiDiGraph:
    """Finite ultragraph as a multigraph with one arc per (edge, target vertex)."""
    D = nx.MultiDiGraph()
    D.add_nodes_from(U.vertices)
    for e in U.edges:
        if not e.range.is_finite():
            raise UltragraphError("infinite range cannot be drawn as a finite graph")
        for w in e.range.vertices():
            D.add_edge(e.source, w, key=e.id)
    return D


def all_subsets(items: Sequence) -> Iterable[tuple]:
    return itertools.chain.from_iterable(itertools.combinations(items, k) for k in range(len(items) + 1))
