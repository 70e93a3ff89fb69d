"""
Blockwise spectral theory
=========================

Determinants, characteristic and minimal polynomials per block, then the
spectral resolution, square root and polar factors of a block matrix.
"""

import numpy as np

import smla

# Three plane rotations by a quarter turn, in exact rational arithmetic.
rot = smla.SuperDiagonalMatrix([[[0, -1], [1, 0]], [[0, -1], [1, 0]], [[0, 1], [-1, 0]]],
                               exact=True)
print("det:", smla.super_det(rot))
print("charpoly:", smla.char_super_poly(rot))
print("real eigenvalues per block:", smla.char_super_values(rot, real=True))
print("Cayley-Hamilton residual:", smla.cayley_hamilton_residual(rot, exact=True))

# A nilpotent block is what stops diagonalization.
m = smla.SuperDiagonalMatrix([np.diag([1.0, 1.0, 2.0]), [[0.0, 1.0], [0.0, 0.0]]])
verdict = smla.is_super_diagonalizable(m)
print("minimal polynomials:", verdict.minimal)
print("diagonalizable per block:", verdict.blocks)

rng = np.random.default_rng(0)
g = rng.normal(size=(3, 3))
spd = smla.SuperDiagonalMatrix([g @ g.T + np.eye(3), np.diag([4.0, 9.0])])

res = smla.spectral_resolution(spd)
for i, cs in enumerate(res.eigenvalues):
    print(f"block {i} eigenvalues:", np.round(cs, 6))
print("worst resolution residual per block:", res.residuals(spd))

root = smla.nonneg_sqrt(spd)
print("sqrt of diag(4, 9):\n", root.blocks[1])
print("|N^2 - A| =", np.max(np.abs((root @ root).flatten() - spd.flatten())))

u, n = smla.polar_decomposition(smla.SuperDiagonalMatrix([g, [[2.0]]]))
print("U is orthogonal:", np.allclose(u.blocks[0].T @ u.blocks[0], np.eye(3)))
