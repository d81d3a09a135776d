"""Graphviz DOT rendering of ultragraphs, quotients and ``G_F``."""

from __future__ import annotations

from .vsets import VSet, format_vset


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def ultragraph_dot(X, name: str = "G", classes: bool = False) -> str:
    """One node per named vertex; edges with infinite range point at a set node.

    With ``classes`` the vertices are labelled ``[v]``.
    """
    label = (lambda v: f"[{v}]") if classes else (lambda v: v)
    lines = [f"digraph {_q(name)} {{"]
    for v in X.vertices:
        lines.append(f"  {_q(v)} [label={_q(label(v))}];")
    sets = {}
    declared = set(X.vertices)
    for e in X.edges:
        tag = f"{e.id}#*" if e.bundle else e.id
        R: VSet = e.range
        if R.is_finite():
            for w in R.vertices():
                if w not in declared:
                    declared.add(w)
                    lines.append(f"  {_q(w)} [label={_q(label(w))}];")
                lines.append(f"  {_q(e.source)} -> {_q(w)} [label={_q(tag)}];")
        else:
            text = format_vset(R)
            if text not in sets:
                node = sets[text] = f"range:{len(sets)}"
                lines.append(f"  {_q(node)} [label={_q(f'[{text}]' if classes else text)}, shape=ellipse, style=dashed];")
            lines.append(f"  {_q(e.source)} -> {_q(sets[text])} [label={_q(tag)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def gf_dot(ap, name: str = "G_F") -> str:
    """Edge vertices as ellipses, ``[v]`` vertices labelled as classes, regions boxed."""
    lines = [f"digraph {_q(name)} {{"]
    regions = {r.name for r in ap.gamma_F}
    for z in ap.graph.vertices:
        if z in regions:
            lines.append(f"  {_q(z)} [label={_q('ω=' + z[2:])}, shape=box];")
        else:
            lines.append(f"  {_q(z)};")
    for a, b in ap.graph.edges:
        lines.append(f"  {_q(a)} -> {_q(b)} [label={_q(f'({a},{b})')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
