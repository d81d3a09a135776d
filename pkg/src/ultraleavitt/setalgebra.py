"""The algebra ``G^0`` generated by singletons and edge ranges.

Ranges generate a finite Boolean ring whose minimal nonempty members are the
atoms ``r(sigma) = (intersection of r(e), e in sigma) minus (union of r(f), f
not in sigma)``.  A set lies in ``G^0`` exactly when it differs by a finite set
from a union of atoms, which is decidable on :class:`VSet` values.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .core import Ultragraph, UltragraphError
from .vsets import VSet, natkey


def vset_op(kind: str, A: VSet, B: VSet) -> VSet:
    ops = {"union": VSet.__or__, "intersect": VSet.__and__, "diff": VSet.__sub__}
    try:
        return ops[kind](A, B)
    except KeyError:
        raise ValueError(f"unknown set operation {kind!r}") from None


def sig_key(sig: frozenset) -> tuple:
    return (len(sig), sorted(natkey(e) for e in sig))


@lru_cache(maxsize=None)
def atoms(U: Ultragraph) -> dict:
    """Nonempty atoms keyed by edge signature (a bundle counts once)."""
    table = {}
    for e in U.edges:
        r = e.range
        new = {}
        for sig, a in table.items():
            inside, outside = a & r, a - r
            if inside:
                new[sig | {e.id}] = inside
            if outside:
                new[sig] = outside
            r = r - a
        if r:
            new[frozenset({e.id})] = r
        table = new
    return dict(sorted(table.items(), key=lambda kv: sig_key(kv[0])))


@lru_cache(maxsize=None)
def range_union(U: Ultragraph) -> VSet:
    out = VSet()
    for e in U.edges:
        out = out | e.range
    return out


def in_algebra(U: Ultragraph, A: VSet) -> bool:
    """Membership in ``G^0``: ``A`` is a finite modification of a union of atoms."""
    if not (A - range_union(U)).is_finite():
        return False
    for a in atoms(U).values():
        if not ((A & a).is_finite() or (a - A).is_finite()):
            return False
    return True


def is_unital(U: Ultragraph) -> bool:
    """``L_R(G)`` is unital iff the whole vertex set lies in ``G^0``."""
    return in_algebra(U, U.vertex_set())


def range_closure(U: Ultragraph) -> list[VSet]:
    """All unions of atoms, i.e. the ring generated by the ranges (incl. the empty set)."""
    items = list(atoms(U).values())
    out = []
    for mask in range(1 << len(items)):
        acc = VSet()
        for i, a in enumerate(items):
            if mask >> i & 1:
                acc = acc | a
        out.append(acc)
    return out


def brute_closure(U: Ultragraph, max_vertices: int = 12) -> list[VSet]:
    """Exhaustive fixpoint closure of singletons and ranges under union, intersection, difference.

    Only for fully finite ultragraphs; independent of :func:`atoms`.
    """
    if U.families or any(e.bundle for e in U.edges):
        raise UltragraphError("brute_closure needs a fully finite ultragraph")
    verts = list(U.vertices)
    if len(verts) > max_vertices:
        raise UltragraphError(f"more than {max_vertices} vertices")
    bit = {v: 1 << i for i, v in enumerate(verts)}

    def mask(A: VSet) -> int:
        return sum(bit[v] for v in A.vertices())

    seen = {0}
    seen.update(bit.values())
    seen.update(mask(e.range) for e in U.edges)
    frontier = list(seen)
    while frontier:
        fresh = []
        current = list(seen)
        for x in frontier:
            for y in current:
                for z in (x | y, x & y, x & ~y, y & ~x):
                    if z not in seen:
                        seen.add(z)
                        fresh.append(z)
        frontier = fresh
    out = [VSet.of(*(v for v in verts if m & bit[v])) for m in seen]
    return sorted(out, key=lambda A: (len(A), A.sort_key()))


def cell_pool(U: Ultragraph, member_bound: int = 2) -> list[VSet]:
    """A finite, deterministic sample of nonempty sets in ``G^0`` used by checks.

    Contains the atoms, every named singleton, the first members of each
    family, the ranges, and the whole vertex set when it belongs to ``G^0``.
    """
    cands: list[VSet] = list(atoms(U).values())
    cands += [VSet.of(v) for v in U.vertices]
    for f in U.families:
        cands += [VSet.of(f"{f}#{i}") for i in range(1, member_bound + 1)]
    cands += [e.range for e in U.edges]
    for a in atoms(U).values():
        if not a.is_finite():
            first = next(a.vertices())
            cands.append(a - VSet.of(first))
    if is_unital(U):
        cands.append(U.vertex_set())
    out, seen = [], set()
    for c in cands:
        if c and c not in seen:
            seen.add(c)
            out.append(c)
    return out


def algebra_members(U: Ultragraph, sets: Iterable[VSet]) -> list[VSet]:
    return [A for A in sets if in_algebra(U, A)]
