"""
Character sums behind the square sieve
======================================

For an odd-degree binary form F the complete sum of (F(m, n)/q) against an
additive character has size about p per prime, and factors over q = p1 p2.
Counting square values of F over a box is the quantity the sieve bounds.
"""

import numpy as np

from sqfull.sieve import QuinticForm, mu0_count, pp_factor, sieve_ratio, sigma0, sigma0_table, weil_report

F = QuinticForm(L1=(1, 2), L2=(3, -1), M1=(1, 0), M2=(0, 1))
print("F coefficients:", F.coeffs, "discriminant:", F.discriminant)

# exact values live in Z[zeta_q]
s = sigma0(F, 2, 1, 13)
print("Sigma0(2, 1; 13) =", s.c, "~", np.round(s.value, 4))
print("vanishes at the origin:", sigma0(F, 0, 0, 13).is_zero())

# %%
# the product formula over 13 * 17, compared exactly
u, v = 5, 9
lhs = sigma0(F, u, v, 13 * 17)
rhs = sigma0(F, u, v, 13) * sigma0(F, u, v, 17) * pp_factor(13, 17, 5)
print("product formula holds:", lhs == rhs)

# %%
# the whole table mod p at once via a 2-d FFT
tab = np.abs(sigma0_table(F, 31)) / 31
print("max |Sigma0| / p at p = 31:", tab.max().round(4), " (bound D + 1 = 6)")
for row in weil_report(F, 60):
    print(row["p"], round(row["max_ratio"], 3))

# %%
# square values
for U in (16, 32, 64, 128):
    print(U, mu0_count(F, U, U), round(sieve_ratio(F, U), 4))
