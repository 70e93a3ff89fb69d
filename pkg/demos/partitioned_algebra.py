"""
Partitioned matrices and block maps
===================================

Cutting a matrix into blocks, adding and transposing with the cuts kept,
and treating a block diagonal matrix as a linear map.
"""

import numpy as np

import smla

# A 6x6 grid cut after row 4 and after column 2 has four blocks.
grid = np.arange(36).reshape(6, 6)
a = smla.make_super_matrix(grid, (4, 2), (2, 4))
print(a)
print("block order:", a.super_order)
print("bottom-left block:\n", a.block(1, 0))

# Transposing swaps the cuts as well as the entries.
print(smla.transpose(a))

# Same entries with different cuts are equal as plain matrices only.
b = smla.make_super_matrix(grid, (3, 3), (3, 3))
print("simple equal:", smla.simple_equals(a, b), " strictly equal:", smla.equals(a, b))

# Row super vectors add block by block.
x = smla.SuperVector([3, 2, 1, -5, 3], (3, 2))
y = smla.SuperVector([0, 2, 4, 1, -2], (3, 2))
print("x + y =", x + y)

# A block diagonal matrix acts on a super vector block by block.
t = smla.SuperLinearMap([[[1, 0, 0], [1, 0, 2]],
                         [[2, 1], [0, -1], [0, 1]]])
v = smla.SuperVector(np.ones(5), (3, 2))
print("T v =", t(v))

ranks, nullities = smla.rank_nullity(t)
print("ranks", ranks, "nullities", nullities)

# Dimension of the space of block maps between two cut spaces.
print("dim SL:", smla.sl_dimension((3, 2, 2), (2, 2, 5)))
