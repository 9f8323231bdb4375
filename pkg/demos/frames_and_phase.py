"""Frames, spark and the complement property on a few small examples."""
from frameret import Frame, does_phase_retrieval, has_complement_property, is_full_spark, spark
from frameret.linalg import format_vector as fmt
from frameret.weak_phase import measurements_equal, phase_relation

# An orthonormal basis: every vector is recovered up to its norm, but not up to sign
onb = Frame([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
print("orthonormal basis spark:", spark(onb))
res = does_phase_retrieval(onb)
print("does phase retrieval:", res.holds)
print("  witness pair:", fmt(res.witness.x), fmt(res.witness.y))

# Five generic vectors in R^3 (m = 2n - 1) recover signals up to a global sign
five = Frame([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]])
print()
print("five vectors full spark:", is_full_spark(five))
print("complement property:", has_complement_property(five).holds)
print("phase retrieval:", does_phase_retrieval(five).holds)

# Four vectors in R^3 are full spark yet too few: this pair has equal
# measurements without sharing phase coordinatewise
four = Frame([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, -3]])
x, y = [4, 3, 1], [4, -3, -1]
print()
print("four vectors spark:", spark(four))
print("|<x,x_i>| == |<y,x_i>|:", measurements_equal(four, x, y))
print("relation of x and y:", phase_relation(x, y).value)
