"""
Counting square-full sums u + v = w
===================================

A square-full number has every prime appearing at least squared, and each
one is x^2 y^3 with y square-free.  Here we count triples of them with
u + v = w <= B and look at how the count grows.
"""

import math
import time

import numpy as np

from sqfull.squarefull import count_solutions, count_solutions_bruteforce, decompose_squarefull, squarefull_array

# the square-full numbers themselves: about 2.17 sqrt(B) of them below B
sf = squarefull_array(10**6)
print(len(sf), "square-full numbers up to 1e6, ratio to sqrt:", round(len(sf) / 1000, 3))
print("first few:", sf[:12].tolist())
print("1800 =", decompose_squarefull(1800))

# %%
# The smallest solutions.  n(10) counts 1 + 8 = 9 twice (ordered) and 4 + 4 = 8 once.
small = count_solutions_bruteforce(130)
for t in small.witnesses:
    print(t)

# %%
# The fast counter against the quadratic oracle
for B in (10**3, 10**4, 10**5):
    fast, slow = count_solutions(B).count, count_solutions_bruteforce(B).count
    print(f"B={B:>7}  fast={fast:>5}  oracle={slow:>5}")

# %%
# Growth.  Primitive triples grow noticeably slower than all triples,
# which pick up the families (k^2 u, k^2 v, k^2 w) from every square k^2.
rows = []
for k in range(3, 9):
    B = 10**k
    t = time.perf_counter()
    n = count_solutions(B, threads=4).count
    n_prim = count_solutions(B, True, threads=4).count
    rows.append((B, n, n_prim, time.perf_counter() - t))
print(f"{'B':>10} {'n':>8} {'n_prim':>8} {'n_prim/sqrt(B)':>15} {'secs':>6}")
for B, n, n_prim, dt in rows:
    print(f"{B:>10} {n:>8} {n_prim:>8} {n_prim / math.sqrt(B):>15.4f} {dt:>6.2f}")

# log-log slope of the primitive count between successive decades
logs = np.log10([r[2] for r in rows])
print("local exponents:", np.round(np.diff(logs), 3))
