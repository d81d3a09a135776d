"""An infinite emitter u with a bundle onto x and one edge onto y.

Shows a breaking vertex, the two quotients it allows, and recovery of the
pair from the ideal.
"""

from ultraleavitt import AdmissiblePair, VSet, breaking_vertices, gap_idempotent, hs_closure, make_ultragraph
from ultraleavitt.algebra import ideal_membership, recover_HS
from ultraleavitt.conditions import satisfies_L
from ultraleavitt.quotient import quotient_of, quotient_summary

U = make_ultragraph(["u", "x", "y"], [], [("f", "u", ["x"], True), ("g", "u", ["y"])], name="U4")
H = hs_closure(U, [VSet.of("x")])
print("H:", H)
print("breaking vertices:", breaking_vertices(U, H))
gap = gap_idempotent(U, H, "u")
print("gap idempotent:", gap, " idempotent:", (gap * gap - gap).is_zero())

for S in (frozenset(), frozenset({"u"})):
    pair = AdmissiblePair(H, S)
    Q = quotient_of(pair)
    print(f"\nquotient with S={set(S) or '{}'}")
    print("  ", quotient_summary(Q))
    print("   Condition (L):", satisfies_L(Q))
    print("   gap idempotent in ideal:", ideal_membership(gap, pair))
    H2, S2 = recover_HS(pair)
    print("   recovered:", H2, set(S2) or "{}")
