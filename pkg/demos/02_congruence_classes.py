"""
From a triple to a congruence class and its lattice cover
=========================================================

Stripping common factors from a primitive triple gives a solution of
a1 x1^2 y1^3 + a2 x2^2 y2^3 + a3 x3^2 y3^3 = 0.  With q = y3 the pair
(x1 y1, x2 y2) pins down a class kappa mod q, and every solution in that
class satisfies a small system of congruences in (x1, x2, y1, y2).
"""

from sqfull.cover import congruence_sums, extract_cover, kappa_of, lambda_lattice, verify_congruences, w_vector
from sqfull.squarefull import CoeffTriple, Solution, Triple, box_of, reduce_triple

# 4 + 121 = 125: 2^2 + 11^2 = 5^3
g, sol = reduce_triple(Triple(4, 121, 125))
print("reduced:", sol)

# a hand-sized instance: x = (2, 11, 1), y = (1, 1, 5) for 1, 1, -1
a = CoeffTriple(1, 1, -1)
s = Solution(a, (2, 11, 1), (1, 1, 5))
c = kappa_of(s)
print("class:", c)
print("congruence sums:", congruence_sums(s.point, c, a))
print("all hold:", verify_congruences(s.point, c, a))

# %%
# The lattice of linear forms vanishing on these points has determinant 2 / q^6
L = lambda_lattice(c, a)
print("det =", L.det, "w =", w_vector(s.point))

# %%
# The cover for this class in the solution's dyadic box
cov = extract_cover(c, a, box_of(s))
s0, lattices = cov
print(len(s0), "pieces with a fixed pair,", len(lattices), "rank-two lattices")
print("point covered:", cov.contains(s.point))
for M in lattices[:3]:
    print("  h =", M.h, "basis", M.gens, "quintic", M.quintic(a))
