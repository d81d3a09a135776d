"""Membership in the graded ideal ``I_(H,S)`` and recovery of ``(H, S)`` from it.

``x`` lies in ``I_(H,S)`` iff its image in ``L_R(G/(H,S))`` vanishes.  The
image of ``s_alpha p_A s_beta*`` is zero when a path uses an edge with range
in ``H``; otherwise the cell becomes the class of the overline set of ``A``.
At a vertex of ``S`` the quotient keeps only the finitely many edges ranging
outside ``H``, so the relation there makes every gap idempotent vanish
without a separate substitution step.
"""

from __future__ import annotations

from functools import lru_cache, reduce
from math import lcm

from ..core import UltragraphError, split_edge
from ..ideals import AdmissiblePair, HSCollection, breaking_vertices, gap_idempotent
from ..quotient import QuotientUltragraph, quotient_of
from ..setalgebra import atoms
from ..vsets import Trace, VSet
from .elements import Element, LeavittContext


@lru_cache(maxsize=64)
def _quotient(pair: AdmissiblePair) -> QuotientUltragraph:
    return quotient_of(pair)


def quotient_context(pair: AdmissiblePair, ring=None) -> LeavittContext:
    return LeavittContext(_quotient(pair), ring)


def quotient_image(x: Element, pair: AdmissiblePair) -> Element:
    """The image of ``x`` under ``L_R(G) -> L_R(G/(H,S))``."""
    if x.ctx.is_quotient:
        raise UltragraphError("ideal membership needs a plain ultragraph context")
    if pair.ultragraph != x.ctx.graph:
        raise UltragraphError("the pair belongs to a different ultragraph")
    Q = _quotient(pair)
    qctx = LeavittContext(Q, x.ctx.ring)
    kept = set(Q.edge_ids)
    raw = []
    for m, c in x.terms.items():
        if all(split_edge(e)[0] in kept for e in m.alpha + m.beta):
            raw.append((m.alpha, Q.overline.bar(m.cell), m.beta, c))
    return qctx.element(raw)


def ideal_membership(x: Element, pair: AdmissiblePair) -> bool:
    """Whether ``x`` lies in the graded ideal ``I_(H,S)``."""
    return quotient_image(x, pair).is_zero()


def _probe_window(pair: AdmissiblePair) -> tuple[int, int]:
    U = pair.ultragraph
    sets = [e.range for e in U.edges] + [pair.H.vertices]
    traces = [t for A in sets for _, t in A.traces]
    K = max([A.bound() for A in sets] + [0]) + 1
    P = reduce(lcm, (t.period for t in traces), 1)
    return K, P


def recover_HS(pair: AdmissiblePair, ring=None) -> tuple[HSCollection, frozenset]:
    """Rebuild ``(H, S)`` from ``I_(H,S)`` by probing idempotents.

    ``V_H`` comes from the vertex idempotents ``p_v`` (family members are
    probed on a window beyond every index the pair mentions and extended
    periodically), the atom flags from the tails ``p_{a \\ {first K}}``, and
    ``S`` from the gap idempotents of the recovered ``H``.
    """
    U = pair.ultragraph
    ctx = LeavittContext(U, ring)

    def member(A: VSet) -> bool:
        return ideal_membership(ctx.p(A), pair)

    K, P = _probe_window(pair)
    named = [v for v in U.vertices if member(VSet.of(v))]
    traces = {}
    for f in U.families:
        hits = [n for n in range(1, K + P + 1) if member(VSet.of(f"{f}#{n}"))]
        residues = {n % P for n in hits if n > K}
        pattern = Trace.make(P, residues, ())
        flips = [n for n in range(1, K + 1) if (n in hits) != (n in pattern)]
        traces[f] = Trace.make(P, residues, flips)
    V = VSet.make(named, traces)
    head = VSet.make((), {f: Trace.finite(range(1, K + 1)) for f in U.families})
    flags = frozenset(
        sig for sig, a in atoms(U).items() if not a.is_finite() and member(a - head)
    )
    H = HSCollection(U, V, flags)
    S = frozenset(
        w for w in breaking_vertices(U, H) if ideal_membership(gap_idempotent(U, H, w, ctx.ring), pair)
    )
    return H, S


def recovers(pair: AdmissiblePair, ring=None) -> bool:
    H, S = recover_HS(pair, ring)
    return H.vertices == pair.H.vertices and H.atoms == pair.H.atoms and S == pair.S
