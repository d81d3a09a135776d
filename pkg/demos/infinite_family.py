"""One vertex v0 emitting a single edge e onto an infinite family W.

Walks through the set algebra, the ideal of finite subsets of W, the
quotient by it, Condition (K), and the ideals generated by single family
members over Z/2.
"""

from itertools import product

from ultraleavitt import AdmissiblePair, Trace, VSet, hs_closure, in_algebra, is_unital, make_ultragraph, mod
from ultraleavitt.algebra import LeavittContext, ideal_membership, nonzero_certify
from ultraleavitt.conditions import satisfies_K
from ultraleavitt.quotient import quotient_of

W = VSet.family("W")
U = make_ultragraph(["v0"], ["W"], [("e", "v0", W)], name="U1")

print("set algebra")
print("  {v0} | W in algebra:", in_algebra(U, VSet.of("v0") | W))
print("  even members in algebra:", in_algebra(U, VSet.family("W", Trace.residue(2, 0))))
print("  unital:", is_unital(U))
print("  Condition (K):", satisfies_K(U))

pair = AdmissiblePair(hs_closure(U, (), W))
Q = quotient_of(pair)
print("\nquotient by the finite subsets of W")
print("  vertices:", Q.vertex_set(), " r(e) =", Q.range("e"))
print("  vertex classes inside r(e):", Q.vertices_inside(Q.range("e")))

ctx = LeavittContext(U, mod(2))
p1 = ctx.p(VSet.of("W#1"))
print("  p[W#1] in the ideal:", ideal_membership(p1, pair))
print("  p[v0] in the ideal:", ideal_membership(ctx.p(VSet.of("v0")), pair))

print("\nideal generated by p[W#1] over Z/2")
gens = [p1, ctx.s("e") * p1, p1 * ctx.s_star("e"), ctx.s("e") * p1 * ctx.s_star("e")]
forms = set()
for coeffs in product((0, 1), repeat=4):
    x = ctx.zero()
    for c, g in zip(coeffs, gens):
        if c:
            x = x + g
    forms.add(str(x))
    if any(coeffs):
        assert nonzero_certify(x) is True
print("  distinct elements:", len(forms))
for g in gens:
    print("   ", g)
p2 = ctx.p(VSet.of("W#2"))
print("  p[W#1] x p[W#2] products vanish:", (p1 * ctx.s_star("e") * ctx.s("e") * p2).is_zero())
