"""The 2x2 matrix [[1,1],[1,0]] as an ultragraph, its split graph and its finite approximation."""

from ultraleavitt import VSet, check_tilde_eq_GA, edge_matrix, from_matrix, tilde
from ultraleavitt.algebra import LeavittContext, ck_check, tilde_iso_check
from ultraleavitt.approximation import build_GF, gf_family, gf_relations
from ultraleavitt.conditions import first_return_count

A = [[1, 1], [1, 0]]
U = from_matrix(A)
for e in U.edges:
    print(f"edge {e.id}: {e.source} -> {e.range}")
print("edge matrix:", edge_matrix(U).tolist())
print("split graph equals the matrix graph:", check_tilde_eq_GA(U))
T = tilde(U)
print("split vertices:", T.vertices)
print("split isomorphism report ok:", tilde_iso_check(U)["ok"])
print("Cuntz-Krieger relations:", {k: not v for k, v in ck_check(A).items() if k != "ok"})
print("first-return paths at v1:", first_return_count(U, "v1"))

ctx = LeavittContext(U)
print("\nnormal forms")
for text, x in [
    ("p[v1] - s[1] s[1*]", ctx.p(VSet.of("v1")) - ctx.s("1") * ctx.s_star("1")),
    ("s[1*] s[1]", ctx.s_star("1") * ctx.s("1")),
    ("s[2] s[1] s[1*] s[2*]", ctx.s("2") * ctx.s("1") * ctx.s_star("1") * ctx.s_star("2")),
]:
    print(f"  {text} = {x}")

ap = build_GF(U, (), ("1", "2"))
print("\nG_F for F = {1, 2}")
print("  edges:", ap.graph.edges)
for r in ap.regions:
    print(f"  omega={r.omega}: r={r.r} kind={r.kind}")
print("  adjacency:", ap.graph.adjacency().tolist())
print("  relations hold:", not any(gf_relations(ap, gf_family(ap)).values()))
