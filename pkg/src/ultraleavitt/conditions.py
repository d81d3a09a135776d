"""Condition (K) via first-return paths and Condition (L) for quotient ultragraphs.

Both analyses accept a plain :class:`~ultraleavitt.core.Ultragraph` or a
:class:`~ultraleavitt.quotient.QuotientUltragraph`; ranges of the latter are
class representatives, so ``w in r(e)`` reads as ``[w]`` contained in ``r(e)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from .core import Ultragraph
from .ideals import AdmissiblePair, admissible_pairs
from .quotient import quotient_of
from .vsets import VSet

ZERO, ONE, MANY = "0", "1", "many"


def _return_graph(X, v: str) -> nx.DiGraph:
    """Edges as nodes; ``e -> f`` when ``f`` can follow ``e`` inside a first-return path at ``v``.

    Only edges lying on some first-return path are kept.
    """
    D = nx.DiGraph()
    decls = list(X.edges)
    for e in decls:
        D.add_node(e.id, first=e.source == v, last=v in e.range, bundle=e.bundle)
    for e in decls:
        for f in decls:
            if f.source != v and f.source in e.range:
                D.add_edge(e.id, f.id)
    starts = [n for n, d in D.nodes(data=True) if d["first"]]
    ends = [n for n, d in D.nodes(data=True) if d["last"]]
    forward = set(starts).union(*(nx.descendants(D, s) for s in starts)) if starts else set()
    backward = set(ends).union(*(nx.ancestors(D, t) for t in ends)) if ends else set()
    return D.subgraph(forward & backward).copy()


def first_return_count(X, v: str) -> str:
    """Number of first-return paths based at ``v``: ``"0"``, ``"1"`` or ``"many"``."""
    D = _return_graph(X, v)
    if D.number_of_nodes() == 0:
        return ZERO
    if any(d["bundle"] for _, d in D.nodes(data=True)) or not nx.is_directed_acyclic_graph(D):
        return MANY
    count = {}
    total = 0
    for n in reversed(list(nx.topological_sort(D))):
        c = 1 if D.nodes[n]["last"] else 0
        c += sum(count[m] for m in D.successors(n))
        count[n] = min(c, 2)
        if D.nodes[n]["first"]:
            total += count[n]
    return (ZERO, ONE, MANY)[min(total, 2)]


def satisfies_K(X) -> bool:
    """No vertex is the base of exactly one first-return path."""
    return all(first_return_count(X, v) != ONE for v in X.vertices)


def chain_graph(X) -> nx.DiGraph:
    """``e -> f`` when ``r(e)`` is exactly the class of ``s(f)`` and ``f`` is the only edge there."""
    D = nx.DiGraph()
    for e in X.edges:
        D.add_node(e.id)
    for e in X.edges:
        for f in X.edges:
            if f.bundle or e.range != VSet.of(f.source):
                continue
            if len(X.out_decls(f.source)) == 1:
                D.add_edge(e.id, f.id)
    return D


def satisfies_L(X) -> bool:
    """Every loop has an exit or a step with ``r(alpha_i) != s(alpha_{i+1})``."""
    return nx.is_directed_acyclic_graph(chain_graph(X))


@dataclass
class KLReport:
    K: bool
    quotients: list = field(default_factory=list)  # (pair, satisfies L)

    @property
    def all_L(self) -> bool:
        return all(ok for _, ok in self.quotients)

    @property
    def agree(self) -> bool:
        return self.K == self.all_L

    @property
    def counterexample(self) -> AdmissiblePair | None:
        if self.agree:
            return None
        return next((p for p, ok in self.quotients if not ok), None) or (self.quotients[0][0] if self.quotients else None)

    def lines(self) -> list[str]:
        out = [f"K: {'satisfied' if self.K else 'violated'}"]
        out += [f"L on quotient by {p}: {'satisfied' if ok else 'violated'}" for p, ok in self.quotients]
        out.append("agree" if self.agree else f"disagree at {self.counterexample}")
        return out


def k_iff_quotients_L(U: Ultragraph) -> KLReport:
    """Compare Condition (K) on ``U`` with Condition (L) on every enumerated quotient."""
    return KLReport(satisfies_K(U), [(p, satisfies_L(quotient_of(p))) for p in admissible_pairs(U)])
