"""A concrete representation of ``L_R(G)`` on a free module with countable basis.

Every vertex ``w`` owns a countably infinite block of basis vectors:

* a sink ``w`` owns ``("v", w, k)`` for ``k = 0, 1, ...``;
* an emitter ``w`` owns ``("e", edge, k)`` for every edge instance at ``w``.

``P_A`` is the identity on the blocks of vertices in ``A`` and zero elsewhere.
``S_e`` maps the sum of the blocks over ``r(e)`` bijectively onto the copies
``("e", e, k)``: the source basis is enumerated (see :func:`range_rank`) and
position ``j`` goes to copy ``shift(j)``, where ``shift`` is translation by one
on the integers under the zigzag numbering ``0, -1, 1, -2, ...``.  The shift
makes a loop act as a bilateral shift instead of the identity.  ``S_e*`` is
the inverse on the copies of ``e`` and zero on everything else.

Enumerations, all fixed and reproducible:

* block of an emitter with ``m`` single edges and no bundles: index ``n`` is
  edge ``n % m``, copy ``n // m``;
* block of an emitter with bundles: edges are the singles in canonical order
  followed by bundle instances ``f#1, g#1, f#2, g#2, ...``; index ``n`` is
  ``cantor(edge position, copy)``;
* sum over a finite range with ``m`` vertices: index ``j * m + i`` for vertex
  rank ``i`` and block index ``j``; over an infinite range ``cantor(i, j)``.
"""

from __future__ import annotations

import os
import random
from math import isqrt

from ..core import UltragraphError, split_edge
from ..vsets import VSet
from .elements import Element, LeavittContext

PROBES = 50
INCONCLUSIVE = "inconclusive"


def cantor(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def uncantor(n: int) -> tuple[int, int]:
    w = (isqrt(8 * n + 1) - 1) // 2
    b = n - w * (w + 1) // 2
    return w - b, b


def zig(z: int) -> int:
    return 2 * z if z >= 0 else -2 * z - 1


def unzig(n: int) -> int:
    return n // 2 if n % 2 == 0 else -(n + 1) // 2


def shift(j: int) -> int:
    return zig(unzig(j) + 1)


def unshift(k: int) -> int:
    return zig(unzig(k) - 1)


class RepState(dict):
    """Finitely supported vector: basis element -> nonzero coefficient."""

    def __init__(self, ring, items=()):
        super().__init__()
        self.ring = ring
        for b, c in dict(items).items():
            self.add(b, c)

    def add(self, b, c):
        v = self.ring(self.get(b, 0) + c)
        if v == 0:
            self.pop(b, None)
        else:
            self[b] = v

    @classmethod
    def basis(cls, ring, b) -> "RepState":
        return cls(ring, {b: ring.one})

    def __add__(self, other: "RepState") -> "RepState":
        out = RepState(self.ring, self)
        for b, c in other.items():
            out.add(b, c)
        return out

    def scale(self, c) -> "RepState":
        return RepState(self.ring, {b: v * c for b, v in self.items()})


class Representation:
    def __init__(self, ctx: LeavittContext):
        if ctx.is_quotient:
            raise UltragraphError("the representation oracle needs a plain ultragraph context")
        self.ctx = ctx
        self.U = ctx.graph

    # -- blocks ----------------------------------------------------------
    def owner(self, b) -> str:
        return self.U.source(b[1]) if b[0] == "e" else b[1]

    def _edge_at(self, w: str, pos: int) -> str:
        decls = self.U.out_decls(w)
        singles = [d.id for d in decls if not d.bundle]
        bundles = [d.id for d in decls if d.bundle]
        if pos < len(singles):
            return singles[pos]
        j = pos - len(singles)
        return f"{bundles[j % len(bundles)]}#{j // len(bundles) + 1}"

    def _edge_pos(self, w: str, ref: str) -> int:
        decls = self.U.out_decls(w)
        singles = [d.id for d in decls if not d.bundle]
        bundles = [d.id for d in decls if d.bundle]
        eid, i = split_edge(ref)
        if i == 0:
            return singles.index(eid)
        return len(singles) + (i - 1) * len(bundles) + bundles.index(eid)

    def block_unrank(self, w: str, n: int):
        if not self.U.emits(w):
            return ("v", w, n)
        if self.U.is_regular(w):
            m = len(self.U.out_edges(w))
            return ("e", self._edge_at(w, n % m), n // m)
        pos, k = uncantor(n)
        return ("e", self._edge_at(w, pos), k)

    def block_rank(self, b) -> int:
        if b[0] == "v":
            return b[2]
        w = self.owner(b)
        pos = self._edge_pos(w, b[1])
        if self.U.is_regular(w):
            return b[2] * len(self.U.out_edges(w)) + pos
        return cantor(pos, b[2])

    # -- range sums --------------------------------------------------------
    def range_rank(self, R: VSet, b) -> int:
        i = R.rank(self.owner(b))
        j = self.block_rank(b)
        return j * len(R) + i if R.is_finite() else cantor(i, j)

    def range_unrank(self, R: VSet, n: int):
        if R.is_finite():
            j, i = divmod(n, len(R))
        else:
            i, j = uncantor(n)
        return self.block_unrank(R.unrank(i), j)

    # -- generators --------------------------------------------------------
    def apply_p(self, A: VSet, v: RepState) -> RepState:
        return RepState(v.ring, {b: c for b, c in v.items() if self.owner(b) in A})

    def apply_s(self, ref: str, v: RepState) -> RepState:
        R = self.U.range(ref)
        out = RepState(v.ring)
        for b, c in v.items():
            if self.owner(b) in R:
                out.add(("e", ref, shift(self.range_rank(R, b))), c)
        return out

    def apply_s_star(self, ref: str, v: RepState) -> RepState:
        R = self.U.range(ref)
        out = RepState(v.ring)
        for b, c in v.items():
            if b[0] == "e" and b[1] == ref:
                out.add(self.range_unrank(R, unshift(b[2])), c)
        return out

    def apply_monomial(self, alpha, cell, beta, v: RepState) -> RepState:
        for e in beta:
            v = self.apply_s_star(e, v)
        v = self.apply_p(cell, v)
        for e in reversed(alpha):
            v = self.apply_s(e, v)
        return v

    def apply(self, x: Element, v: RepState) -> RepState:
        out = RepState(v.ring)
        for m, c in x.terms.items():
            out = out + self.apply_monomial(m.alpha, m.cell, m.beta, v).scale(c)
        return out

    # -- probes ----------------------------------------------------------
    def random_basis(self, rng: random.Random, near: list[str]):
        w = rng.choice(near)
        return self.block_unrank(w, rng.randrange(12))

    def probe_vertices(self) -> list[str]:
        out = list(self.U.vertices)
        for f in self.U.families:
            out += [f"{f}#{i}" for i in range(1, 4)]
        return out


def rep_apply(x: Element, v: RepState) -> RepState:
    """Action of ``x`` on the state ``v``."""
    return Representation(x.ctx).apply(x, v)


def seed_from_env(default: int = 0) -> int:
    return int(os.environ.get("ULTRALEAVITT_SEED", default))


def nonzero_certify(x: Element, probes: int = PROBES, seed: int | None = None):
    """``True`` when some probe vector is not killed by ``x``, else ``"inconclusive"``.

    Probes are the images ``S_beta b`` of basis vectors ``b`` owned by
    vertices of each monomial's cell, then ``probes`` random sparse vectors.
    """
    rep = Representation(x.ctx)
    ring = x.ctx.ring
    if not x.terms:
        return INCONCLUSIVE

    def hit(v):
        return bool(v) and bool(rep.apply(x, v))

    for m in x.terms:
        verts = m.cell.vertices()
        for _, w in zip(range(3), verts):
            for k in range(2):
                v = RepState.basis(ring, rep.block_unrank(w, k))
                for e in reversed(m.beta):
                    v = rep.apply_s(e, v)
                if hit(v):
                    return True
    rng = random.Random(seed_from_env() if seed is None else seed)
    near = rep.probe_vertices()
    for _ in range(probes):
        v = RepState(ring)
        for _ in range(rng.randint(1, 4)):
            b = rep.random_basis(rng, near)
            for _ in range(rng.randint(0, 2)):
                refs = [i for i in x.ctx.graph.instances(2) if rep.owner(b) in x.ctx.range(i)]
                if refs:
                    b = next(iter(rep.apply_s(rng.choice(refs), RepState.basis(ring, b))))
            v.add(b, ring.random_element(rng, nonzero=True))
        if hit(v):
            return True
    return INCONCLUSIVE
