"""Symbolic elements of Leavitt path algebras of ultragraphs and their quotients.

Every element is kept in a canonical normal form, a finite linear
combination of monomials ``s_alpha p_A s_beta*``:

* for each pair of paths ``(alpha, beta)`` the cells ``A`` are contained in
  ``r(alpha) & r(beta)`` and pairwise disjoint; one monomial per distinct
  coefficient, so the block is literally the coefficient function on vertices;
* at a regular vertex ``v`` with pivot edge ``e`` (the last edge at ``v`` in
  canonical order) a block ``(alpha' e, beta' e)`` vanishes at a fixed
  distinguished point of ``r(e)``.  The constant part of the block is moved
  through ``s_e p_{r(e)} s_e* = p_v - sum_{f != e} s_f s_f*`` into shorter
  and non-pivot blocks.

The distinguished point of ``r(e)`` is the cofinite end of the first
infinite atom inside ``r(e)`` if there is one, and otherwise its first
vertex.  Cells in the algebra are eventually constant on every atom, so
evaluating a block there is well defined and linear.

The same code runs on plain ultragraphs and on quotient ultragraphs; in the
latter every cell is replaced by its class representative.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable

from ..core import Ultragraph, UltragraphError, edge_key, split_edge
from ..rings import INTEGERS, Ring
from ..setalgebra import atoms, in_algebra
from ..vsets import VSet, format_vset


class Monomial(tuple):
    """``(alpha, cell, beta)`` standing for ``s_alpha p_cell s_beta*``."""

    __slots__ = ()

    def __new__(cls, alpha: tuple, cell: VSet, beta: tuple):
        return super().__new__(cls, (tuple(alpha), cell, tuple(beta)))

    @property
    def alpha(self) -> tuple:
        return self[0]

    @property
    def cell(self) -> VSet:
        return self[1]

    @property
    def beta(self) -> tuple:
        return self[2]

    @property
    def degree(self) -> int:
        return len(self[0]) - len(self[2])

    def sort_key(self) -> tuple:
        return (
            len(self[0]) + len(self[2]),
            len(self[0]),
            [edge_key(e) for e in self[0]],
            [edge_key(e) for e in self[2]],
            self[1].sort_key(),
        )

    def __repr__(self):
        return f"Monomial({self.alpha}, {self.cell}, {self.beta})"


class LeavittContext:
    """Ambient data for elements: an (quotient) ultragraph and a coefficient ring."""

    def __init__(self, graph, ring: Ring | None = None):
        self.graph = graph
        self.ring = ring or INTEGERS
        self.is_quotient = not isinstance(graph, Ultragraph)
        if self.is_quotient:
            base = graph.base
            flagged = graph.H.atoms
            table = [(s, a) for s, a in atoms(base).items() if s not in flagged]
        else:
            table = list(atoms(graph).items())
        self._infinite_atoms = [a for _, a in table if not a.is_finite()]
        self._points = {}

    def __eq__(self, other):
        return isinstance(other, LeavittContext) and self.graph is other.graph and self.ring == other.ring

    def __hash__(self):
        return hash((id(self.graph), self.ring))

    def __repr__(self):
        return f"LeavittContext({self.graph}, {self.ring})"

    # -- graph data ------------------------------------------------------
    def source(self, ref: str) -> str:
        return self.graph.source(ref)

    def range(self, ref: str) -> VSet:
        return self.graph.range(ref)

    def path_range(self, path: tuple) -> VSet | None:
        return self.graph.range(path[-1]) if path else None

    def reduce(self, A: VSet) -> VSet:
        return self.graph.reduce(A)

    def in_algebra(self, A: VSet) -> bool:
        if self.is_quotient:
            return self.graph.in_algebra(A)
        return in_algebra(self.graph, A)

    def pivot(self, v: str) -> str | None:
        if not self.graph.is_regular(v):
            return None
        return self.graph.out_edges(v)[-1]

    def point(self, ref: str) -> tuple:
        """Distinguished point of ``r(e)`` used by the pivot reduction."""
        eid = split_edge(ref)[0]
        if eid not in self._points:
            R = self.range(ref)
            pt = None
            for a in self._infinite_atoms:
                if not (R & a).is_finite():
                    pt = ("atom", a)
                    break
            if pt is None:
                pt = ("vertex", R.first())
            self._points[eid] = pt
        return self._points[eid]

    def is_path(self, path: tuple) -> bool:
        for a, b in zip(path, path[1:]):
            if self.source(b) not in self.range(a):
                return False
        return True

    # -- constructors ----------------------------------------------------
    def element(self, raw: Iterable[tuple]) -> "Element":
        """Normalize ``(alpha, cell, beta, coeff)`` tuples into an element."""
        return Element(self, _normalize(self, raw), _trusted=True)

    def zero(self) -> "Element":
        return Element(self, {}, _trusted=True)

    def p(self, A, coeff=1) -> "Element":
        if not isinstance(A, VSet):
            A = VSet.of(*([A] if isinstance(A, str) else A))
        if not self.in_algebra(A):
            raise UltragraphError(f"{A} is not in the set algebra")
        return self.element([((), A, (), coeff)])

    def _check_edge(self, ref: str):
        self.graph.decl(ref)

    def s(self, ref: str) -> "Element":
        self._check_edge(ref)
        return self.element([((ref,), self.range(ref), (), 1)])

    def s_star(self, ref: str) -> "Element":
        self._check_edge(ref)
        return self.element([((), self.range(ref), (ref,), 1)])

    def s_path(self, path: tuple) -> "Element":
        if not path:
            raise UltragraphError("empty path")
        for e in path:
            self._check_edge(e)
        if not self.is_path(tuple(path)):
            raise UltragraphError(f"{' '.join(path)} is not a path")
        return self.element([(tuple(path), self.range(path[-1]), (), 1)])

    def monomial(self, alpha=(), cell: VSet | None = None, beta=(), coeff=1) -> "Element":
        alpha, beta = tuple(alpha), tuple(beta)
        for e in alpha + beta:
            self._check_edge(e)
        if not (self.is_path(alpha) and self.is_path(beta)):
            raise UltragraphError("monomial paths are not paths")
        if cell is None:
            if not alpha and not beta:
                raise UltragraphError("a monomial with empty paths needs a cell")
            cell = self.range((alpha or beta)[-1])
        elif not self.in_algebra(cell):
            raise UltragraphError(f"{cell} is not in the set algebra")
        return self.element([(alpha, cell, beta, coeff)])

    def unit(self) -> "Element":
        V = self.graph.vertex_set()
        if not self.in_algebra(V):
            raise UltragraphError("the algebra is not unital (G^0 is not in the set algebra)")
        return self.p(V)


# -- normalization -----------------------------------------------------------

def _add_piece(ring: Ring, pieces: list, cell: VSet, c) -> list:
    out = []
    rest = cell
    for P, val in pieces:
        inside = P & cell
        if inside:
            v = ring(val + c)
            if v != 0:
                out.append((inside, v))
        outside = P - cell
        if outside:
            out.append((outside, val))
        rest = rest - P
    if rest:
        out.append((rest, c))
    return out


def _value_at(pieces: list, point: tuple, ring: Ring):
    kind, where = point
    for P, val in pieces:
        if kind == "vertex":
            if where in P:
                return val
        elif not (P & where).is_finite():
            return val
    return ring.zero


def _normalize(ctx: LeavittContext, raw: Iterable[tuple]) -> dict:
    ring = ctx.ring
    blocks: dict = defaultdict(list)

    def feed(alpha, cell, beta, c):
        c = ring(c)
        if c == 0:
            return
        if alpha:
            cell = cell & ctx.range(alpha[-1])
        if beta:
            cell = cell & ctx.range(beta[-1])
        cell = ctx.reduce(cell)
        if cell.is_empty():
            return
        key = (alpha, beta)
        blocks[key] = _add_piece(ring, blocks[key], cell, c)

    for alpha, cell, beta, c in raw:
        feed(tuple(alpha), cell, tuple(beta), c)

    # pivot reduction, longest blocks first; new work only lands in shorter
    # blocks or in non-pivot blocks of the same length
    by_len = defaultdict(set)
    for key in blocks:
        by_len[len(key[0]) + len(key[1])].add(key)
    lengths = sorted(by_len, reverse=True)
    done = set()
    while lengths:
        L = lengths.pop(0)
        for key in sorted(by_len[L], key=lambda k: ([edge_key(e) for e in k[0]], [edge_key(e) for e in k[1]])):
            if key in done:
                continue
            done.add(key)
            alpha, beta = key
            if not alpha or not beta or alpha[-1] != beta[-1]:
                continue
            e = alpha[-1]
            if split_edge(e)[1]:
                continue
            v = ctx.source(e)
            if ctx.pivot(v) != e:
                continue
            c = _value_at(blocks[key], ctx.point(e), ring)
            if c == 0:
                continue
            blocks[key] = _add_piece(ring, blocks[key], ctx.reduce(ctx.range(e)), ring(-c))
            a0, b0 = alpha[:-1], beta[:-1]
            feed(a0, VSet.of(v), b0, c)
            for f in ctx.graph.out_edges(v):
                if f != e:
                    feed(a0 + (f,), ctx.range(f), b0 + (f,), -c)
            short = len(a0) + len(b0)
            by_len[short].add((a0, b0))
            if short not in lengths:
                lengths.append(short)
                lengths.sort(reverse=True)
    terms = {}
    for (alpha, beta), pieces in blocks.items():
        grouped: dict = {}
        for P, val in pieces:
            val = ring(val)
            if val == 0:
                continue
            grouped[val] = grouped[val] | P if val in grouped else P
        for val, P in grouped.items():
            terms[Monomial(alpha, P, beta)] = val
    return dict(sorted(terms.items(), key=lambda kv: kv[0].sort_key()))


# -- products ----------------------------------------------------------------

def _raw_product(ctx: LeavittContext, m1: Monomial, m2: Monomial):
    """Product of two normalized monomials as a raw monomial, or ``None`` for 0."""
    alpha, A, beta = m1
    mu, B, nu = m2
    lb, lm = len(beta), len(mu)
    if lm > lb and mu[:lb] == beta:
        rest = mu[lb:]
        if ctx.source(rest[0]) in A:
            return (alpha + rest, B, nu)
        return None
    if mu == beta:
        return (alpha, A & B, nu)
    if lb > lm and beta[:lm] == mu:
        rest = beta[lm:]
        if ctx.source(rest[0]) in B:
            return (alpha, A, nu + rest)
        return None
    return None


def mono_mul(x: Monomial, y: Monomial, ctx: LeavittContext) -> "Element":
    """Product of two monomials (coefficient 1) as a normalized element."""
    raw = _raw_product(ctx, x, y)
    if raw is None:
        return ctx.zero()
    return ctx.element([raw + (1,)])


class Element:
    """An element of ``L_R(G)`` or ``L_R(G/(H,S))`` in normal form.

    Supports ``+``, ``-``, ``*`` (with elements and scalars), ``==`` and
    ``str``.  Construct through :class:`LeavittContext`.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: LeavittContext, terms: dict, _trusted: bool = False):
        self.ctx = ctx
        self.terms = terms if _trusted else _normalize(ctx, ((m.alpha, m.cell, m.beta, c) for m, c in terms.items()))

    def _same(self, other: "Element"):
        if not isinstance(other, Element) or other.ctx != self.ctx:
            raise UltragraphError("elements live in different algebras")

    def _raw(self, scale=1):
        r = self.ctx.ring
        return [(m.alpha, m.cell, m.beta, r(c * scale)) for m, c in self.terms.items()]

    def __add__(self, other):
        if isinstance(other, (int,)) and other == 0:
            return self
        self._same(other)
        return self.ctx.element(self._raw() + other._raw())

    __radd__ = __add__

    def __neg__(self):
        return self.ctx.element(self._raw(-1))

    def __sub__(self, other):
        self._same(other)
        return self.ctx.element(self._raw() + other._raw(-1))

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.ctx.element(self._raw(self.ctx.ring(other)))
        self._same(other)
        raw = []
        ring = self.ctx.ring
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                p = _raw_product(self.ctx, m1, m2)
                if p is not None:
                    raw.append(p + (ring(c1 * c2),))
        return self.ctx.element(raw)

    def __rmul__(self, scalar):
        return self.ctx.element(self._raw(self.ctx.ring(scalar)))

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, Element) and self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def monomials(self) -> list:
        return list(self.terms)

    def degrees(self) -> set:
        return {m.degree for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({format_element(self)})"


def normalize(x: Element) -> Element:
    """Re-normalize (elements are always stored normalized; this is idempotent)."""
    return x.ctx.element(x._raw())


def degree_decompose(x: Element) -> dict:
    """Split ``x`` into homogeneous components ``{|alpha| - |beta|: component}``."""
    parts = defaultdict(list)
    for m, c in x.terms.items():
        parts[m.degree].append((m.alpha, m.cell, m.beta, c))
    return {d: x.ctx.element(raw) for d, raw in sorted(parts.items())}


# -- printing ----------------------------------------------------------------

def format_monomial(ctx: LeavittContext, m: Monomial) -> str:
    alpha, cell, beta = m
    parts = [f"s[{e}]" for e in alpha]
    implied = None
    if alpha or beta:
        implied = ctx.reduce(ctx.range((alpha or beta)[-1]))
        if alpha and beta:
            implied = ctx.reduce(ctx.range(alpha[-1]) & ctx.range(beta[-1]))
    if cell != implied:
        parts.append(f"p[{format_vset(cell)}]")
    parts += [f"s[{e}*]" for e in reversed(beta)]
    return " ".join(parts)


def format_element(x: Element) -> str:
    if not x.terms:
        return "0"
    out = []
    for m, c in x.terms.items():
        body = format_monomial(x.ctx, m)
        neg = x.ctx.ring.kind != "mod" and c < 0
        mag = -c if neg else c
        coef = "" if mag == 1 else f"{mag} "
        sign = "-" if neg else "+"
        out.append((sign, f"{coef}{body}"))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, t in out[1:]:
        text += f" {sign} {t}"
    return text
