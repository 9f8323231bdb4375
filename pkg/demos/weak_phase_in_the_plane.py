"""Which pairs of vectors in R^2 do weak phase retrieval, and how the others fail."""
from fractions import Fraction

from frameret import Frame, SearchBudget, classify_wpr_r2, wpr_falsify
from frameret.linalg import format_vector as fmt, norm_sq
from frameret.weak_phase import measurements_equal

# Up to scaling and swapping, only the mirror pairs (1,b), (1,-b) work
for p, q in [([1, 1], [1, -1]), ([1, 3], [1, -3]), ([1, 2], [1, 3]), ([1, 2], [1, -3]), ([1, 0], [1, 2])]:
    c = classify_wpr_r2(p, q)
    line = f"{p} {q}: {'weak phase retrieval' if c.does_wpr else 'fails'}"
    if not c.does_wpr:
        line += f"  (witness {c.witness.construction}: x={fmt(c.witness.x)}, y={fmt(c.witness.y)})"
    print(line)

# The falsifier reaches the same verdicts by exhausting partitions exactly
print()
for p, q in [([1, 3], [1, -3]), ([1, 2], [1, 3])]:
    r = wpr_falsify(Frame([p, q]), SearchBudget(seed=1))
    print(f"falsifier on {p} {q}: found={r.found} stats={r.stats}")

# Weak phase retrieval does not force norm retrieval: x and y below are
# measurement-equal for {(1,3),(1,-3)} but differ in norm
b = Fraction(3)
F = Frame([[1, b], [1, -b]])
x, y = [1, 1], [b, 1 / b]
print()
print("equal measurements:", measurements_equal(F, x, y))
print("||x||^2 =", norm_sq(x), " ||y||^2 =", norm_sq(y))
