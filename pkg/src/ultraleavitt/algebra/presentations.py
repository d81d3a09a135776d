"""Relation checks for Leavitt families and matrix presentations.

:func:`leavitt_relations` evaluates (LP1)-(LP4) for an arbitrary assignment
of elements to the generators of an ultragraph, which covers the defining
family itself, the Cuntz-Krieger presentation of ``G_A`` and the family
inside the algebra of the split ultragraph.
"""

from __future__ import annotations

from itertools import product
from typing import Callable

import numpy as np

from ..core import Ultragraph, all_subsets, from_matrix, tilde
from ..rings import Ring
from ..setalgebra import cell_pool
from ..vsets import VSet
from .elements import Element, LeavittContext


def leavitt_relations(
    U: Ultragraph,
    P: Callable[[VSet], Element],
    S: Callable[[str], Element],
    S_star: Callable[[str], Element],
    cells=None,
    bundle_bound: int = 2,
) -> dict[str, list]:
    """Failing instances of each relation schema (empty lists mean all hold)."""
    cells = list(cell_pool(U) if cells is None else cells)
    edges = U.instances(bundle_bound)
    fails: dict[str, list] = {"LP1": [], "LP2": [], "LP3": [], "LP4": []}
    if not P(VSet()).is_zero():
        fails["LP1"].append("p_empty")
    for A, B in product(cells, repeat=2):
        if not (P(A) * P(B) - P(A & B)).is_zero():
            fails["LP1"].append(("product", str(A), str(B)))
        if not (P(A | B) - P(A) - P(B) + P(A & B)).is_zero():
            fails["LP1"].append(("union", str(A), str(B)))
    for e in edges:
        s, r = U.source(e), U.range(e)
        if not (P(VSet.of(s)) * S(e) - S(e)).is_zero() or not (S(e) * P(r) - S(e)).is_zero():
            fails["LP2"].append(e)
        for f in edges:
            want = P(r) if e == f else P(VSet())
            if not (S_star(e) * S(f) - want).is_zero():
                fails["LP3"].append((e, f))
    for v in U.vertices:
        if U.is_regular(v):
            total = P(VSet.of(v))
            for e in U.out_edges(v):
                total = total - S(e) * S_star(e)
            if not total.is_zero():
                fails["LP4"].append(v)
    return fails


def defining_relations(ctx: LeavittContext, cells=None) -> dict[str, list]:
    """(LP1)-(LP4) for the canonical generators of a plain context."""
    return leavitt_relations(ctx.graph, ctx.p, ctx.s, ctx.s_star, cells)


def ck_check(A, ring: Ring | None = None) -> dict:
    """Cuntz-Krieger relations for ``x_i = s_i``, ``y_i = s_i*`` in ``L_R(G_A)``.

    Schemas: partial isometries, orthogonality ``y_i x_j = 0`` for ``i != j``,
    ``y_i x_i = sum_j A(i,j) x_j y_j``, ``sum_j x_j y_j = 1``; plus the
    generating identity ``p_B = sum_{v_i in B} x_i y_i`` for every vertex set.
    """
    U = from_matrix(A)
    n = len(U.vertices)
    if n > 6:
        raise ValueError("ck_check supports matrices up to 6x6")
    ctx = LeavittContext(U, ring)
    x = {i: ctx.s(str(i)) for i in range(1, n + 1)}
    y = {i: ctx.s_star(str(i)) for i in range(1, n + 1)}
    one = ctx.unit()
    mat = np.asarray(A, dtype=int)
    report = {"partial_isometry": [], "orthogonality": [], "range_relation": [], "unit": [], "generation": []}
    for i in x:
        if not (x[i] * y[i] * x[i] - x[i]).is_zero() or not (y[i] * x[i] * y[i] - y[i]).is_zero():
            report["partial_isometry"].append(i)
        for j in x:
            if i != j and not (y[i] * x[j]).is_zero():
                report["orthogonality"].append((i, j))
        rhs = ctx.zero()
        for j in x:
            if mat[i - 1, j - 1]:
                rhs = rhs + x[j] * y[j]
        if not (y[i] * x[i] - rhs).is_zero():
            report["range_relation"].append(i)
    total = ctx.zero()
    for j in x:
        total = total + x[j] * y[j]
    if not (total - one).is_zero():
        report["unit"].append("sum x_j y_j")
    for B in all_subsets(U.vertices):
        rhs = ctx.zero()
        for v in B:
            i = int(v[1:])
            rhs = rhs + x[i] * y[i]
        if not (ctx.p(VSet.of(*B)) - rhs).is_zero():
            report["generation"].append(B)
    report["ok"] = not any(report[k] for k in report)
    return report


def split_set(U: Ultragraph, A: VSet) -> VSet:
    """``{v_e : v in A, s(e) = v}`` in the split ultragraph."""
    return VSet.of(*(f"{w}_{f}" for w in A.vertices() for f in U.out_edges(w)))


def tilde_iso_check(U: Ultragraph, ring: Ring | None = None) -> dict:
    """Check that ``P_A = q_{split(A)}``, ``S_e = t_e`` is a Leavitt family of ``U``
    in the algebra of the split ultragraph, and that ``q_{v_e} = S_e S_e*``."""
    T = tilde(U)
    tctx = LeavittContext(T, ring)
    fails = leavitt_relations(
        U,
        lambda A: tctx.p(split_set(U, A)),
        tctx.s,
        tctx.s_star,
        cells=[VSet.of(*B) for B in all_subsets(U.vertices)],
    )
    generation = []
    for e in U.edges:
        v = f"{e.source}_{e.id}"
        if not (tctx.p(VSet.of(v)) - tctx.s(e.id) * tctx.s_star(e.id)).is_zero():
            generation.append(v)
    report = dict(fails)
    report["generation"] = generation
    report["ok"] = not any(report[k] for k in report)
    return report
