"""
Points on diagonal cubics
=========================

rho(B; a, b, c) counts coprime (x, y, z) with a x^3 + b y^3 + c z^3 = 0 in a
box of size B.  The curve is a twist of Y^2 = X^3 - 3 M^2, and a 3-descent
gives an explicit bound on its rank.
"""

from collections import Counter

from sqfull.cubic import jacobian_m, rank_upper_bound, rho_count, uniformity_table

print(rho_count(20, 1, 1, -1).points)
# 9^3 + 10^3 = 1^3 + 12^3 = 1729
print(rho_count(12, 1, 1, -1729).points)

# %%
# how rho is spread over small coefficients
tab = uniformity_table(100, 12)
print(Counter(r for *_, r in tab).most_common())
best = max(tab, key=lambda t: t[3])
print("largest:", best, "M =", jacobian_m(*best[:3]))

# %%
for a, b, c in [(1, 1, -1), (1, 1, -2), (1, 2, 3), (3, 4, 5)]:
    M = abs(jacobian_m(a, b, c))
    print((a, b, c), "M =", M, rank_upper_bound(M))
