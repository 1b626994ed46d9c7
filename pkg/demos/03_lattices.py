"""
Small lattice tools
===================

Two pieces used by the cover: splitting {v : Q(v) = 0 mod r} into lattices,
and finding a short set H of lattice vectors such that every short dual
vector is orthogonal to one of them.
"""

import random

import numpy as np

from sqfull.lattice import IntLattice, minimal_basis_linf, omega_decompose, quadratic_residue_mask, residue_mask, siegel_cover, verify_siegel_cover

# x^2 + y^2 = 0 mod 65 splits into one lattice per choice of square root of -1
Q, r = (1, 0, 1), 65
parts = omega_decompose(Q, r)
for P in parts:
    print(P.num, "index", P.det)
mask = np.zeros((r, r), bool)
for P in parts:
    mask |= residue_mask(P, r)
print("union is exact:", bool((mask == quadratic_residue_mask(Q, r)).all()))

# %%
# A minimal basis in the sup norm, and Siegel's set H
L = IntLattice([[3, 17, 4], [1, -5, 9], [2, 2, -7]])
mb = minimal_basis_linf(L)
print("minima:", mb.norms)
H = siegel_cover(L)
ok, n_dual = verify_siegel_cover(H)
print(f"#H = {H.size}, size ratio {float(H.size_ratio):.3f}, checked {n_dual} dual vectors: {ok}")

# %%
# Random lattices of growing determinant: how big does H get?
rng = random.Random(1)
for det in (10, 100, 1000, 10**4):
    L = IntLattice([[1, rng.randint(0, det), rng.randint(0, det)], [0, 1, rng.randint(0, det)], [0, 0, det]])
    H = siegel_cover(L)
    print(det, H.size, round(float(H.norm_ratio), 3), verify_siegel_cover(H)[0])
