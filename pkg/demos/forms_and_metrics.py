"""
Inner products and bilinear forms
=================================

Per-block inner products, Gram-Schmidt and projection, then the signature
of a symmetric form and the canonical basis of a skew one.
"""

import numpy as np

import smla

u = smla.SuperVector([1, 1, 3, 4], (2, 2))
v = smla.SuperVector([1, 0, 0, 1], (2, 2))
print("(u|v) =", smla.inner(u, v), " |u| =", smla.norm(u))

es = smla.gram_schmidt([u, v])
for e in es:
    print("orthonormal:", e)

beta = smla.SuperVector([3, 4, 1, 2], (2, 2))
alpha = smla.best_approximation([v], beta)
print("projection of beta on span(v):", alpha)

# The hyperbolic plane next to a positive definite block.
f = smla.BilinearSuperForm(smla.SuperDiagonalMatrix([[[0.0, 1.0], [1.0, 0.0]],
                                                      [[2.0, 1.0], [1.0, 2.0]]]))
p, d, report = smla.diagonalize_symmetric(f)
print("diagonal form:\n", d.flatten())
print("signature report:", report.as_dict())

# A skew form of rank 2 on a 3-dimensional block.
k = np.array([[0.0, 2.0, 1.0], [-2.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])
basis, pairs = smla.skew_canonical(smla.BilinearSuperForm(smla.SuperDiagonalMatrix([k])))
b = basis.blocks[0]
print("L copies:", pairs)
print("form in the new basis:\n", np.round(b.T @ k @ b, 12))
