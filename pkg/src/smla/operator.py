"""Linear maps between partitioned vector spaces.

A map ``T = (T1 | ... | Tn)`` sends block ``i`` of its argument through the
matrix ``Ti`` and nothing else, so it is carried by a
:class:`~smla.core.SuperDiagonalMatrix`.
"""

from fractions import Fraction

import numpy as np

from ._numeric import as_exact, identity_like, is_exact, zeros_like_mode
from .core import PartitionSpec, SuperDiagonalMatrix, SuperScalar, SuperVector
from .errors import (ComponentCountMismatch, NonSquareBlock, PartitionMismatch,
                     SingularBlock)

__all__ = [
    "SuperLinearMap",
    "apply",
    "compose",
    "add_maps",
    "scale_map",
    "identity_map",
    "zero_map",
    "embed_map",
    "rank_nullity",
    "null_space",
    "invert",
    "sl_dimension",
    "sl_dimension_bound",
    "block_rank",
    "RANK_RTOL",
]

# Singular values below RANK_RTOL * (largest singular value) count as zero.
RANK_RTOL = 1e-10


class SuperLinearMap:
    """Partition-preserving linear map, stored as its super diagonal matrix.

    The domain partition is the column partition of the matrix and the
    codomain partition its row partition; both have the same block count.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        if not isinstance(matrix, SuperDiagonalMatrix):
            matrix = SuperDiagonalMatrix(matrix)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("SuperLinearMap is immutable")

    @property
    def blocks(self):
        return self.matrix.blocks

    @property
    def domain_partition(self):
        return self.matrix.col_partition

    @property
    def codomain_partition(self):
        return self.matrix.row_partition

    @property
    def n_blocks(self):
        return self.matrix.n_blocks

    def dense(self):
        """The block-diagonal simple matrix of the map."""
        return self.matrix.flatten()

    def __call__(self, v):
        return apply(self, v)

    def __matmul__(self, other):
        if isinstance(other, SuperLinearMap):
            return compose(self, other)
        if isinstance(other, SuperVector):
            return apply(self, other)
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, SuperLinearMap):
            return NotImplemented
        return add_maps(self, other)

    def __mul__(self, c):
        if isinstance(c, (SuperLinearMap, SuperVector)):
            return NotImplemented
        return scale_map(c, self)

    __rmul__ = __mul__

    def __repr__(self):
        return (f"SuperLinearMap({list(self.domain_partition)} -> "
                f"{list(self.codomain_partition)}: {self.matrix})")


def apply(t, v):
    """``T v`` computed block by block."""
    if v.partition != t.domain_partition:
        raise PartitionMismatch(
            f"vector cut as {list(v.partition)}, map expects {list(t.domain_partition)}")
    return SuperVector.from_blocks([b.dot(x) for b, x in zip(t.blocks, v.blocks)])


def compose(s, t):
    """The map ``S o T`` (apply ``T`` first)."""
    if t.codomain_partition != s.domain_partition:
        raise PartitionMismatch(
            f"cannot compose: T lands in {list(t.codomain_partition)}, "
            f"S starts from {list(s.domain_partition)}")
    return SuperLinearMap(s.matrix @ t.matrix)


def add_maps(s, t):
    if (s.domain_partition != t.domain_partition
            or s.codomain_partition != t.codomain_partition):
        raise PartitionMismatch("maps between different super spaces cannot be added")
    return SuperLinearMap(s.matrix + t.matrix)


def scale_map(c, t):
    return SuperLinearMap(t.matrix * c)


def identity_map(partition, *, exact=False):
    return SuperLinearMap(SuperDiagonalMatrix.identity(partition, exact=exact))


def zero_map(domain, codomain=None, *, exact=False):
    domain = PartitionSpec.coerce(domain)
    codomain = domain if codomain is None else PartitionSpec.coerce(codomain)
    return SuperLinearMap(SuperDiagonalMatrix.zeros(codomain, domain, exact=exact))


def embed_map(blocks, codomain):
    """Map whose image sits inside a larger codomain, padded with zero rows.

    ``blocks[i]`` has ``m_i <= codomain[i]`` rows; the missing rows are zero,
    which keeps the map partition preserving.
    """
    codomain = PartitionSpec.coerce(codomain)
    if len(blocks) != len(codomain):
        raise ComponentCountMismatch(f"{len(blocks)} blocks for {len(codomain)} codomain blocks")
    padded = []
    for i, (b, m) in enumerate(zip(blocks, codomain)):
        b = np.atleast_2d(np.asarray(b))
        if b.shape[0] > m:
            raise PartitionMismatch(f"block {i} has {b.shape[0]} rows, codomain block has {m}")
        out = zeros_like_mode((m, b.shape[1]), is_exact(b))
        out[:b.shape[0]] = b
        padded.append(out)
    return SuperLinearMap(SuperDiagonalMatrix(padded))


def _exact_rref(m):
    """Reduced row echelon form over Q; returns (rref, pivot columns)."""
    a = as_exact(m).copy()
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i, c] != 0), None)
        if p is None:
            continue
        a[[r, p]] = a[[p, r]]
        a[r] = a[r] / a[r, c]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def block_rank(b, rtol=RANK_RTOL):
    """Rank of one block: exact row reduction for Fractions, SVD otherwise."""
    b = np.asarray(b)
    if is_exact(b):
        return len(_exact_rref(b)[1])
    s = np.linalg.svd(b, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def _null_basis(b, rtol=RANK_RTOL):
    b = np.asarray(b)
    n = b.shape[1]
    if is_exact(b):
        rref, pivots = _exact_rref(b)
        free = [c for c in range(n) if c not in pivots]
        basis = zeros_like_mode((n, len(free)), True)
        for k, f in enumerate(free):
            basis[f, k] = Fraction(1)
            for row, p in enumerate(pivots):
                basis[p, k] = -rref[row, f]
        return basis
    _, s, vh = np.linalg.svd(b)
    rank = int(np.sum(s > rtol * s[0])) if s.size and s[0] > 0 else 0
    return vh[rank:].conj().T


def rank_nullity(t, rtol=RANK_RTOL):
    """Per-block ranks and nullities; ``rank_i + nullity_i = n_i`` for every block."""
    ranks = [block_rank(b, rtol) for b in t.blocks]
    nullities = [b.shape[1] - r for b, r in zip(t.blocks, ranks)]
    return SuperScalar(ranks), SuperScalar(nullities)


def null_space(t, rtol=RANK_RTOL):
    """Per-block bases (as columns) of the null super space of ``t``."""
    return [_null_basis(b, rtol) for b in t.blocks]


def invert(t, tol=1e-12):
    """Blockwise inverse.

    Raises :class:`NonSquareBlock` or :class:`SingularBlock` naming the first
    offending block.  In float mode a block counts as singular when its
    reciprocal condition number is below ``tol``.
    """
    inv = []
    for i, b in enumerate(t.blocks):
        if b.shape[0] != b.shape[1]:
            raise NonSquareBlock(i, b.shape)
        if is_exact(b):
            n = b.shape[0]
            aug = np.concatenate([b, identity_like(n, True)], axis=1)
            rref, pivots = _exact_rref(aug)
            if pivots[:n] != list(range(n)):
                raise SingularBlock(i)
            inv.append(rref[:, n:])
            continue
        s = np.linalg.svd(b, compute_uv=False)
        if s[0] == 0 or s[-1] / s[0] < tol:
            raise SingularBlock(i, f"reciprocal condition {s[-1] / s[0] if s[0] else 0:.3g}")
        inv.append(np.linalg.inv(b))
    return SuperLinearMap(SuperDiagonalMatrix(inv))


def sl_dimension(domain, codomain):
    """Dimension ``sum m_i n_i`` of the space of maps between two super spaces."""
    domain = PartitionSpec.coerce(domain)
    codomain = PartitionSpec.coerce(codomain)
    if len(domain) != len(codomain):
        raise ComponentCountMismatch(
            f"domain has {len(domain)} blocks, codomain has {len(codomain)}")
    return sum(m * n for m, n in zip(codomain, domain))


def sl_dimension_bound(domain, codomain):
    """``(sum m_i n_i, m n)``; the first never exceeds the second."""
    domain = PartitionSpec.coerce(domain)
    codomain = PartitionSpec.coerce(codomain)
    return sl_dimension(domain, codomain), domain.total * codomain.total
