"""Finite graphs ``G_F`` approximating a (quotient) ultragraph, and their Leavitt families.

For finitely many singular vertices ``F0`` and edges ``F1 = (e_1, ..., e_n)``
the graph has vertices ``F0``, ``F1`` and the regions ``omega`` in ``Gamma_F``;
``r(omega)`` is the Boolean combination of the ranges selected by ``omega``
and ``R(omega)`` removes the classes of ``F0`` from it.  Everything is read
through the shared ultragraph interface, so plain ultragraphs behave like
quotients by the empty pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import networkx as nx
import numpy as np

from .algebra import Element, LeavittContext
from .core import Ultragraph, UltragraphError, singular_vertices
from .rings import Ring
from .vsets import VSet


def region_name(omega: tuple) -> str:
    return "w:" + "".join(map(str, omega))


@dataclass(frozen=True)
class OmegaRegion:
    omega: tuple
    r: VSet
    R: VSet
    kind: str  # "empty", "gamma0" or "gammaF"

    @property
    def name(self) -> str:
        return region_name(self.omega)


@dataclass(frozen=True)
class FiniteGraph:
    vertices: tuple  # names: "[v]" for F0, edge ids for F1, "w:..." for regions
    edges: tuple  # (source, target) pairs; a pair names the edge

    def source(self, g):
        return g[0]

    def target(self, g):
        return g[1]

    def out_edges(self, z) -> list:
        return [g for g in self.edges if g[0] == z]

    def adjacency(self) -> np.ndarray:
        idx = {v: i for i, v in enumerate(self.vertices)}
        M = np.zeros((len(self.vertices), len(self.vertices)), dtype=int)
        for a, b in self.edges:
            M[idx[a], idx[b]] += 1
        return M

    def to_networkx(self) -> nx.MultiDiGraph:
        D = nx.MultiDiGraph()
        D.add_nodes_from(self.vertices)
        D.add_edges_from(self.edges)
        return D


@dataclass(frozen=True)
class Approximation:
    graph: FiniteGraph
    regions: tuple  # OmegaRegion for every nonzero omega
    F0: tuple
    F1: tuple
    source: object = None  # the ultragraph or quotient ultragraph

    def region(self, omega) -> OmegaRegion:
        omega = tuple(omega)
        return next(r for r in self.regions if r.omega == omega)

    @property
    def gamma_F(self) -> list:
        return [r for r in self.regions if r.kind == "gammaF"]


def _singular(X) -> VSet:
    return singular_vertices(X) if isinstance(X, Ultragraph) else X.singular_vertices()


def _gamma0(X, R: VSet, F1: set) -> bool:
    if not R.is_finite():
        return False
    for w in R.vertices():
        decls = X.out_decls(w)
        if not decls or any(d.bundle or d.id not in F1 for d in decls):
            return False
    return True


def build_GF(X, vertices=(), edges=()) -> Approximation:
    """``G_F`` for the singular vertices ``vertices`` and edge instances ``edges``."""
    F0 = tuple(vertices)
    F1 = tuple(edges)
    sing = _singular(X)
    for v in F0:
        if v not in sing:
            raise UltragraphError(f"{v!r} is not a singular vertex")
    for e in F1:
        X.decl(e)
    if len(set(F1)) != len(F1) or len(set(F0)) != len(F0):
        raise UltragraphError("F lists an element twice")
    removed = VSet.of(*F0)
    regions = []
    n = len(F1)
    for omega in product((0, 1), repeat=n):
        if not any(omega):
            continue
        r = None
        for i, bit in enumerate(omega):
            if bit:
                r = X.range(F1[i]) if r is None else r & X.range(F1[i])
        for i, bit in enumerate(omega):
            if not bit:
                r = r - X.range(F1[i])
        r = X.reduce(r)
        R = X.reduce(r - removed)
        if R.is_empty():
            kind = "empty"
        elif _gamma0(X, R, set(F1)):
            kind = "gamma0"
        else:
            kind = "gammaF"
        regions.append(OmegaRegion(omega, r, R, kind))
    gamma = [reg for reg in regions if reg.kind == "gammaF"]
    verts = tuple(f"[{v}]" for v in F0) + F1 + tuple(reg.name for reg in gamma)
    out = []
    for i, e in enumerate(F1):
        r = X.range(e)
        out += [(e, f) for f in F1 if X.source(f) in r]
        out += [(e, f"[{v}]") for v in F0 if v in r]
        out += [(e, reg.name) for reg in gamma if reg.omega[i] == 1]
    return Approximation(FiniteGraph(verts, tuple(out)), tuple(regions), F0, F1, X)


def gf_family(ap: Approximation, ring: Ring | None = None) -> dict:
    """Elements ``P_z``, ``S_g``, ``S_g*`` of the ambient algebra keyed by ``("P", z)``, ``("S", g)``, ``("S*", g)``."""
    ctx = LeavittContext(ap.source, ring)
    T = ctx.zero()
    for e in ap.F1:
        T = T + ctx.s(e) * ctx.s_star(e)

    def gap(q: Element) -> Element:
        return q - q * T

    P = {}
    for v in ap.F0:
        P[f"[{v}]"] = gap(ctx.p(VSet.of(v)))
    for e in ap.F1:
        P[e] = ctx.s(e) * ctx.s_star(e)
    for reg in ap.gamma_F:
        P[reg.name] = gap(ctx.p(reg.R))
    fam = {("P", z): P[z] for z in ap.graph.vertices}
    for g in ap.graph.edges:
        e, z = g
        fam[("S", g)] = ctx.s(e) * P[z]
        fam[("S*", g)] = P[z] * ctx.s_star(e)
    return fam


def gf_relations(ap: Approximation, family: dict) -> dict[str, list]:
    """Failing instances of the graph Leavitt relations for ``family``."""
    G = ap.graph
    P = {z: family[("P", z)] for z in G.vertices}
    S = {g: family[("S", g)] for g in G.edges}
    Ss = {g: family[("S*", g)] for g in G.edges}
    fails = {"idempotents": [], "source_range": [], "cuntz_krieger_1": [], "cuntz_krieger_2": []}
    for a, b in product(G.vertices, repeat=2):
        want = P[a] if a == b else P[a] - P[a]
        if not (P[a] * P[b] - want).is_zero():
            fails["idempotents"].append((a, b))
    for g in G.edges:
        s, t = g
        ok = (P[s] * S[g] - S[g]).is_zero() and (S[g] * P[t] - S[g]).is_zero()
        ok = ok and (P[t] * Ss[g] - Ss[g]).is_zero() and (Ss[g] * P[s] - Ss[g]).is_zero()
        if not ok:
            fails["source_range"].append(g)
        for h in G.edges:
            want = P[t] if g == h else P[t] - P[t]
            if not (Ss[g] * S[h] - want).is_zero():
                fails["cuntz_krieger_1"].append((g, h))
    for z in G.vertices:
        out = G.out_edges(z)
        if out:
            total = P[z]
            for g in out:
                total = total - S[g] * Ss[g]
            if not total.is_zero():
                fails["cuntz_krieger_2"].append(z)
    return fails


def gf_generation(ap: Approximation, family: dict, ring: Ring | None = None) -> list:
    """Identities expressing ``q_[v]`` (``[v]`` in ``F0``) and ``t_e`` (``e`` in ``F1``) through the family.

    ``t_e = sum of S_g over g leaving e`` and ``q_[v] = P_[v] + sum of P_e
    over e in F1 at v``; the family itself is built from these generators,
    so together they generate the same subalgebra.  Returns failures.
    """
    ctx = LeavittContext(ap.source, ring)
    fails = []
    for e in ap.F1:
        total = ctx.zero()
        for g in ap.graph.out_edges(e):
            total = total + family[("S", g)]
        if not (total - ctx.s(e)).is_zero():
            fails.append(e)
    for v in ap.F0:
        total = family[("P", f"[{v}]")]
        for e in ap.F1:
            if ap.source.source(e) == v:
                total = total + family[("P", e)]
        if not (total - ctx.p(VSet.of(v))).is_zero():
            fails.append(f"[{v}]")
    return fails


def regions_partition(ap: Approximation) -> bool:
    """Nonempty ``r(omega)`` are pairwise disjoint and cover the union of the ranges in ``F1``."""
    X = ap.source
    nonempty = [reg.r for reg in ap.regions if not reg.r.is_empty()]
    for i, A in enumerate(nonempty):
        for B in nonempty[i + 1:]:
            if not (A & B).is_empty():
                return False
    union = VSet()
    for A in nonempty:
        union = union | A
    target = VSet()
    for e in ap.F1:
        target = target | X.range(e)
    return union == X.reduce(target)
