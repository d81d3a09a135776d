"""Hereditary saturated collections, breaking vertices and admissible pairs.

A hereditary collection ``H`` is an ideal of the set ring ``G^0``.  It is
stored as ``(V_H, At_H)``: the vertices whose singletons lie in ``H`` and the
atoms of which ``H`` contains a cofinite part.  Then ``A`` is in ``H`` iff
``A`` is contained in ``V_H`` and every atom meeting ``A`` in an infinite set
is flagged.  The flag is what separates, for a single infinite range ``W``,
the collection of all finite subsets of ``W`` from the collection of all
subsets of ``W``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .core import Ultragraph, UltragraphError, all_subsets
from .setalgebra import atoms, in_algebra, sig_key
from .vsets import VSet, natkey


@dataclass(frozen=True)
class HSCollection:
    ultragraph: Ultragraph = field(repr=False)
    vertices: VSet = VSet()
    atoms: frozenset = frozenset()

    def __post_init__(self):
        table = atoms(self.ultragraph)
        for sig in self.atoms:
            if sig not in table:
                raise UltragraphError(f"unknown atom {sorted(sig)}")
            if not (table[sig] - self.vertices).is_finite():
                raise UltragraphError(f"flagged atom {sorted(sig)} is not cofinitely inside V_H")

    @classmethod
    def empty(cls, U: Ultragraph) -> "HSCollection":
        return cls(U)

    def __contains__(self, A: VSet) -> bool:
        return contains(self, A)

    def key(self) -> tuple:
        return (self.vertices.sort_key(), tuple(sorted(sig_key(s) for s in self.atoms)))

    def __str__(self):
        flags = ", ".join("{" + ",".join(sorted(s, key=natkey)) + "}" for s in sorted(self.atoms, key=sig_key))
        return f"H(V_H={self.vertices}; atoms=[{flags}])"


def _contains(U: Ultragraph, V: VSet, flags: frozenset, A: VSet) -> bool:
    if not A <= V:
        return False
    for sig, a in atoms(U).items():
        if sig not in flags and not (A & a).is_finite():
            return False
    return True


def contains(H: HSCollection, A: VSet) -> bool:
    """Whether ``A`` (a member of ``G^0``) belongs to ``H``."""
    if not in_algebra(H.ultragraph, A):
        raise UltragraphError(f"{A} is not in the set algebra")
    return _contains(H.ultragraph, H.vertices, H.atoms, A)


def is_hereditary(U: Ultragraph, H: HSCollection) -> bool:
    """Ranges of edges sourced in ``H`` lie in ``H`` (unions and subsets are built in)."""
    return all(
        _contains(U, H.vertices, H.atoms, e.range)
        for e in U.edges
        if e.source in H.vertices
    )


def is_saturated(U: Ultragraph, H: HSCollection) -> bool:
    """Every regular vertex all of whose ranges lie in ``H`` is in ``H``."""
    for v in U.vertices:
        if U.is_regular(v) and v not in H.vertices:
            if all(_contains(U, H.vertices, H.atoms, e.range) for e in U.out_decls(v)):
                return False
    return True


def hs_closure(U: Ultragraph, generators: Iterable[VSet] = (), vertices: VSet | None = None) -> HSCollection:
    """Least hereditary saturated collection containing ``generators``.

    ``vertices`` optionally adds the singletons of a (possibly infinite) vertex
    set without adding the set itself: ``vertices=W`` gives the finite subsets
    of ``W``.
    """
    table = atoms(U)
    V = vertices if vertices is not None else VSet()
    flags: set = set()

    def add(A: VSet):
        nonlocal V
        V = V | A
        for sig, a in table.items():
            if not (A & a).is_finite():
                flags.add(sig)

    for A in generators:
        if not in_algebra(U, A):
            raise UltragraphError(f"generator {A} is not in the set algebra")
        add(A)
    changed = True
    while changed:
        changed = False
        fl = frozenset(flags)
        for e in U.edges:
            if e.source in V and not _contains(U, V, fl, e.range):
                add(e.range)
                changed = True
        fl = frozenset(flags)
        for v in U.vertices:
            if v not in V and U.is_regular(v) and all(_contains(U, V, fl, e.range) for e in U.out_decls(v)):
                add(VSet.of(v))
                changed = True
    return HSCollection(U, V, frozenset(flags))


def breaking_vertices(U: Ultragraph, H: HSCollection) -> tuple:
    """Infinite emitters with finitely many, but at least one, edges ranging outside ``H``."""
    out = []
    for v in U.vertices:
        decls = U.out_decls(v)
        bundles = [e for e in decls if e.bundle]
        if not bundles:
            continue
        if any(not _contains(U, H.vertices, H.atoms, e.range) for e in bundles):
            continue
        if any(not _contains(U, H.vertices, H.atoms, e.range) for e in decls if not e.bundle):
            out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class AdmissiblePair:
    H: HSCollection
    S: frozenset = frozenset()

    def __post_init__(self):
        U = self.H.ultragraph
        if not (is_hereditary(U, self.H) and is_saturated(U, self.H)):
            raise UltragraphError(f"{self.H} is not hereditary and saturated")
        extra = set(self.S) - set(breaking_vertices(U, self.H))
        if extra:
            raise UltragraphError(f"S is not contained in B_H: {sorted(extra, key=natkey)}")

    @property
    def ultragraph(self) -> Ultragraph:
        return self.H.ultragraph

    def __str__(self):
        return f"({self.H}, S={{{', '.join(sorted(self.S, key=natkey))}}})"


def generator_pool(U: Ultragraph) -> list[tuple[str, VSet]]:
    """Named singletons, whole families (as singletons) and distinct ranges."""
    pool = [("set", VSet.of(v)) for v in U.vertices]
    pool += [("vertices", VSet.family(f)) for f in U.families]
    for e in U.edges:
        item = ("set", e.range)
        if item not in pool:
            pool.append(item)
    return pool


def _closure_of(U, items):
    sets = [A for kind, A in items if kind == "set"]
    verts = VSet()
    for kind, A in items:
        if kind == "vertices":
            verts = verts | A
    return hs_closure(U, sets, verts)


def pool_collections(U: Ultragraph, max_pool: int = 14) -> list[HSCollection]:
    """Distinct closures of all subsets of the generator pool."""
    pool = generator_pool(U)
    if len(pool) > max_pool:
        raise UltragraphError(f"generator pool too large ({len(pool)} > {max_pool})")
    found = {}
    for items in all_subsets(pool):
        H = _closure_of(U, items)
        found.setdefault((H.vertices, H.atoms), H)
    return sorted(found.values(), key=lambda H: (_size_key(H), H.key()))


def _size_key(H: HSCollection) -> tuple:
    V = H.vertices
    return (len(H.atoms), not V.is_finite(), len(V) if V.is_finite() else 0)


def admissible_pairs(U: Ultragraph) -> list[AdmissiblePair]:
    """Pool-generated hereditary saturated collections crossed with subsets of their breaking vertices."""
    out = []
    for H in pool_collections(U):
        for S in all_subsets(breaking_vertices(U, H)):
            out.append(AdmissiblePair(H, frozenset(S)))
    return out


def gap_idempotent(U: Ultragraph, H: HSCollection, w: str, ring=None):
    """``p_w - sum of s_e s_e*`` over edges at ``w`` with range outside ``H``."""
    from .algebra import LeavittContext

    if w not in breaking_vertices(U, H):
        raise UltragraphError(f"{w!r} is not a breaking vertex of H")
    ctx = LeavittContext(U, ring)
    x = ctx.p(VSet.of(w))
    for e in U.out_decls(w):
        if not e.bundle and not _contains(U, H.vertices, H.atoms, e.range):
            x = x - ctx.s(e.id) * ctx.s_star(e.id)
    return x
