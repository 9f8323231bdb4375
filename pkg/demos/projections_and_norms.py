"""Norm retrieval for projection families and the two-subspace construction."""
from frameret import Frame, ProjectionFamily, Subspace, does_norm_retrieval, fusion_norm_retrieval
from frameret import perp_family, span_criterion_at, two_subspace_operator
from frameret.linalg import format_vector as fmt, inner

# A subspace together with its orthogonal complement always does norm retrieval
print("[e1], [e2,e3]:", fusion_norm_retrieval(ProjectionFamily.from_bases([[1, 0, 0], [[0, 1, 0], [0, 0, 1]]])).holds)

# Replacing an orthonormal basis of [e1,e2] by a skewed one breaks it
riesz = Frame([[1, 1, 0], [0, 1, 0], [0, 0, 1], [0, 1, 1], [1, 0, 1]])
res = does_norm_retrieval(riesz)
print("skewed basis does norm retrieval:", res.holds)
print("  complement vectors u, v:", fmt(res.witness.u), fmt(res.witness.v), "<u,v> =", inner(res.witness.u, res.witness.v))

# Hyperplanes perpendicular to four vectors in R^3: at (1,1,0) the projected
# vectors span only a plane, so phase retrieval fails there
PF = perp_family(Frame([[1, 1, 1], [-1, 1, 1], [1, -1, 1], [1, 1, -1]]))
for point in ([1, 1, 1], [1, 1, 0]):
    w = span_criterion_at(PF, point)
    print(f"span of P_i{tuple(point)}:", 3 if w is None else w.achieved_rank)

# Two overlapping subspaces: the orthogonal remainders give a measurement-equal pair
res = two_subspace_operator(Subspace(3, [[1, 0, 0], [0, 1, 0]]), Subspace(3, [[0, 1, 0], [0, 0, 1]]))
print()
print("case:", res.case)
print("y1 =", fmt(res.y1), " y2 =", fmt(res.y2))
print("||y1||^2 =", inner(res.y1, res.y1), " ||y2||^2 =", inner(res.y2, res.y2))
