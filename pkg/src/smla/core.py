"""Partitioned vectors and matrices.

A *supermatrix* is an ordinary dense matrix together with a row partition and
a column partition: the "thin lines" cutting it into submatrices.  Everything
here is immutable; arithmetic returns new objects carrying the partitions of
their operands.

>>> a = make_super_matrix([[3, 2, 1, -5, 3]], [1], [3, 2])
>>> b = make_super_matrix([[0, 2, 4, 1, -2]], [1], [3, 2])
>>> add(a, b)
SuperMatrix([[3 4 5 | -4 1]])
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._numeric import (DEFAULT_TOL, as_exact, as_numeric, coerce_array,
                       format_scalar, frozen, identity_like, is_exact, max_abs,
                       zeros_like_mode)
from .errors import (ComponentCountMismatch, IncompatiblePartition,
                     PartitionMismatch)

__all__ = [
    "PartitionSpec",
    "SuperScalar",
    "SuperVector",
    "SuperMatrix",
    "SuperDiagonalMatrix",
    "make_super_matrix",
    "equals",
    "simple_equals",
    "add",
    "scalar_mul",
    "blockwise_scale",
    "transpose",
    "is_symmetrically_partitioned",
    "is_symmetric_super",
    "flatten",
    "repartition",
]


@dataclass(frozen=True)
class PartitionSpec:
    """Ordered block lengths, e.g. ``PartitionSpec((3, 2))`` for ``(x1 x2 x3 | x4 x5)``."""

    lengths: tuple

    def __post_init__(self):
        lengths = tuple(int(n) for n in self.lengths)
        if not lengths:
            raise PartitionMismatch("a partition needs at least one block")
        if any(n < 1 for n in lengths):
            raise PartitionMismatch(f"block lengths must be positive, got {lengths}")
        object.__setattr__(self, "lengths", lengths)

    @classmethod
    def coerce(cls, obj):
        if isinstance(obj, cls):
            return obj
        if isinstance(obj, (int, np.integer)):
            return cls((int(obj),))
        return cls(tuple(obj))

    @property
    def total(self):
        return sum(self.lengths)

    @property
    def offsets(self):
        """Start index of each block, followed by :attr:`total`."""
        return tuple(np.concatenate([[0], np.cumsum(self.lengths)]).astype(int).tolist())

    def slices(self):
        off = self.offsets
        return [slice(off[i], off[i + 1]) for i in range(len(self.lengths))]

    def __len__(self):
        return len(self.lengths)

    def __iter__(self):
        return iter(self.lengths)

    def __getitem__(self, i):
        return self.lengths[i]

    def __repr__(self):
        return f"PartitionSpec({list(self.lengths)})"


class SuperScalar(tuple):
    """One scalar per block: eigenvalue tuples, determinants, norms, ranks."""

    def __new__(cls, components=()):
        return super().__new__(cls, tuple(components))

    def __repr__(self):
        return "(" + " | ".join(format_scalar(c) for c in self) + ")"

    __str__ = __repr__


def _fmt_row(row, cuts):
    parts = []
    for s in cuts:
        parts.append(" ".join(format_scalar(x) for x in row[s]))
    return " | ".join(parts)


class SuperVector:
    """A scalar sequence cut into contiguous blocks."""

    __slots__ = ("entries", "partition")

    def __init__(self, entries, partition=None, *, exact=None):
        arr = coerce_array(entries, exact)
        if arr.ndim != 1:
            raise PartitionMismatch(f"entries must be one-dimensional, got shape {arr.shape}")
        part = PartitionSpec((arr.shape[0],)) if partition is None else PartitionSpec.coerce(partition)
        if part.total != arr.shape[0]:
            raise PartitionMismatch(
                f"partition {list(part)} covers {part.total} entries, vector has {arr.shape[0]}")
        object.__setattr__(self, "entries", frozen(arr))
        object.__setattr__(self, "partition", part)

    def __setattr__(self, name, value):
        raise AttributeError("SuperVector is immutable")

    @classmethod
    def from_blocks(cls, blocks, *, exact=None):
        blocks = [np.atleast_1d(coerce_array(b, exact)) for b in blocks]
        return cls(np.concatenate(blocks), [len(b) for b in blocks])

    @property
    def blocks(self):
        return tuple(self.entries[s] for s in self.partition.slices())

    @property
    def n_blocks(self):
        return len(self.partition)

    @property
    def exact(self):
        return is_exact(self.entries)

    def _check(self, other):
        if not isinstance(other, SuperVector):
            return NotImplemented
        if other.partition != self.partition:
            raise IncompatiblePartition(
                f"cannot combine vectors cut as {list(self.partition)} and {list(other.partition)}")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return SuperVector(self.entries + other.entries, self.partition)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return SuperVector(self.entries - other.entries, self.partition)

    def __neg__(self):
        return SuperVector(-self.entries, self.partition)

    def __mul__(self, c):
        if isinstance(c, (SuperVector, SuperMatrix, SuperDiagonalMatrix)):
            return NotImplemented
        return SuperVector(self.entries * c, self.partition)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SuperVector):
            return NotImplemented
        return equals(self, other)

    __hash__ = None

    def __len__(self):
        return self.entries.shape[0]

    def __repr__(self):
        return f"SuperVector({self})"

    def __str__(self):
        return "(" + _fmt_row(self.entries, self.partition.slices()) + ")"


class SuperMatrix:
    """Dense matrix with independent row and column partitions."""

    __slots__ = ("data", "row_partition", "col_partition")

    def __init__(self, data, row_partition=None, col_partition=None, *, exact=None):
        arr = coerce_array(data, exact)
        if arr.ndim != 2:
            raise PartitionMismatch(f"data must be two-dimensional, got shape {arr.shape}")
        rows, cols = arr.shape
        rp = PartitionSpec((rows,)) if row_partition is None else PartitionSpec.coerce(row_partition)
        cp = PartitionSpec((cols,)) if col_partition is None else PartitionSpec.coerce(col_partition)
        if rp.total != rows:
            raise PartitionMismatch(
                f"row partition {list(rp)} sums to {rp.total}, matrix has {rows} rows")
        if cp.total != cols:
            raise PartitionMismatch(
                f"column partition {list(cp)} sums to {cp.total}, matrix has {cols} columns")
        object.__setattr__(self, "data", frozen(arr))
        object.__setattr__(self, "row_partition", rp)
        object.__setattr__(self, "col_partition", cp)

    def __setattr__(self, name, value):
        raise AttributeError("SuperMatrix is immutable")

    @classmethod
    def from_blocks(cls, grid, *, exact=None):
        """Assemble from a nested list of submatrices (rows of blocks)."""
        grid = [[np.atleast_2d(coerce_array(b, exact)) for b in row] for row in grid]
        rows = [row[0].shape[0] for row in grid]
        cols = [b.shape[1] for b in grid[0]]
        for i, row in enumerate(grid):
            if len(row) != len(cols):
                raise PartitionMismatch(f"block row {i} has {len(row)} blocks, expected {len(cols)}")
            for j, b in enumerate(row):
                if b.shape != (rows[i], cols[j]):
                    raise PartitionMismatch(
                        f"block ({i},{j}) has shape {b.shape}, expected {(rows[i], cols[j])}")
        return cls(np.block(grid), rows, cols)

    @property
    def shape(self):
        return self.data.shape

    @property
    def super_order(self):
        """Number of block rows and block columns."""
        return len(self.row_partition), len(self.col_partition)

    @property
    def exact(self):
        return is_exact(self.data)

    def block(self, i, j):
        return self.data[self.row_partition.slices()[i], self.col_partition.slices()[j]]

    @property
    def blocks(self):
        rs, cs = self.row_partition.slices(), self.col_partition.slices()
        return tuple(tuple(self.data[r, c] for c in cs) for r in rs)

    @property
    def T(self):
        return transpose(self)

    def __add__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return add(self, -other)

    def __neg__(self):
        return SuperMatrix(-self.data, self.row_partition, self.col_partition)

    def __mul__(self, c):
        if isinstance(c, (SuperVector, SuperMatrix, SuperDiagonalMatrix)):
            return NotImplemented
        return scalar_mul(c, self)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return equals(self, other)

    __hash__ = None

    def __repr__(self):
        return f"SuperMatrix({self})"

    def __str__(self):
        cuts = self.col_partition.slices()
        groups = []
        for r in self.row_partition.slices():
            groups.append(", ".join("[" + _fmt_row(row, cuts) + "]" for row in self.data[r]))
        return "[" + " / ".join(groups) + "]"


class SuperDiagonalMatrix:
    """Block-diagonal supermatrix stored as its diagonal blocks only.

    Block ``i`` may be rectangular (``m_i x n_i``); the row partition is
    ``(m_1, ..., m_n)`` and the column partition ``(n_1, ..., n_n)``, so the
    numbers of row and column blocks always agree.
    """

    __slots__ = ("blocks",)

    def __init__(self, blocks, *, exact=None):
        blocks = tuple(blocks)
        if not blocks:
            raise PartitionMismatch("a super diagonal matrix needs at least one block")
        arrs = []
        for i, b in enumerate(blocks):
            arr = coerce_array(b, exact)
            if arr.ndim == 0:
                arr = arr.reshape(1, 1)
            if arr.ndim != 2:
                raise PartitionMismatch(f"block {i} must be two-dimensional, got shape {arr.shape}")
            if 0 in arr.shape:
                raise PartitionMismatch(f"block {i} is empty")
            arrs.append(arr)
        if exact is None and any(is_exact(a) for a in arrs):
            arrs = [as_exact(a) for a in arrs]
        elif exact is None and any(np.iscomplexobj(a) for a in arrs):
            arrs = [a.astype(complex) for a in arrs]
        object.__setattr__(self, "blocks", tuple(frozen(a) for a in arrs))

    def __setattr__(self, name, value):
        raise AttributeError("SuperDiagonalMatrix is immutable")

    @classmethod
    def identity(cls, sizes, *, exact=False):
        return cls([identity_like(int(n), exact) for n in PartitionSpec.coerce(sizes)])

    @classmethod
    def zeros(cls, rows, cols=None, *, exact=False):
        rows = PartitionSpec.coerce(rows)
        cols = rows if cols is None else PartitionSpec.coerce(cols)
        if len(rows) != len(cols):
            raise ComponentCountMismatch(
                f"{len(rows)} row blocks but {len(cols)} column blocks")
        return cls([zeros_like_mode((m, n), exact) for m, n in zip(rows, cols)])

    @classmethod
    def from_super_matrix(cls, a, tol=0.0):
        """Extract the diagonal blocks; off-diagonal blocks must vanish (within ``tol``)."""
        p, q = a.super_order
        if p != q:
            raise PartitionMismatch(f"super order {p}x{q} is not square in blocks")
        for i in range(p):
            for j in range(p):
                if i != j and max_abs(a.block(i, j)) > tol:
                    raise PartitionMismatch(f"off-diagonal block ({i},{j}) is nonzero")
        return cls([a.block(i, i) for i in range(p)])

    @property
    def n_blocks(self):
        return len(self.blocks)

    @property
    def row_partition(self):
        return PartitionSpec(tuple(b.shape[0] for b in self.blocks))

    @property
    def col_partition(self):
        return PartitionSpec(tuple(b.shape[1] for b in self.blocks))

    @property
    def shape(self):
        return self.row_partition.total, self.col_partition.total

    @property
    def exact(self):
        return is_exact(self.blocks[0])

    def is_square(self):
        """True for a "square super diagonal square matrix": every block square."""
        return all(b.shape[0] == b.shape[1] for b in self.blocks)

    def flatten(self):
        rows, cols = self.shape
        out = zeros_like_mode((rows, cols), self.exact)
        if not self.exact and any(np.iscomplexobj(b) for b in self.blocks):
            out = out.astype(complex)
        for r, c, b in zip(self.row_partition.slices(), self.col_partition.slices(), self.blocks):
            out[r, c] = b
        return out

    def to_super_matrix(self):
        return SuperMatrix(self.flatten(), self.row_partition, self.col_partition)

    def map_blocks(self, fn):
        return SuperDiagonalMatrix([fn(b) for b in self.blocks])

    def to_exact(self):
        return SuperDiagonalMatrix([as_exact(b) for b in self.blocks])

    @property
    def T(self):
        return self.map_blocks(lambda b: b.T)

    @property
    def H(self):
        """Blockwise conjugate transpose."""
        return self.map_blocks(lambda b: b.conj().T if not is_exact(b) else b.T)

    def _check(self, other):
        if (other.row_partition != self.row_partition
                or other.col_partition != self.col_partition):
            raise IncompatiblePartition(
                f"block shapes differ: {[b.shape for b in self.blocks]} vs "
                f"{[b.shape for b in other.blocks]}")

    def __add__(self, other):
        if not isinstance(other, SuperDiagonalMatrix):
            return NotImplemented
        self._check(other)
        return SuperDiagonalMatrix([a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        if not isinstance(other, SuperDiagonalMatrix):
            return NotImplemented
        self._check(other)
        return SuperDiagonalMatrix([a - b for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self):
        return self.map_blocks(lambda b: -b)

    def __mul__(self, c):
        if isinstance(c, (SuperVector, SuperMatrix, SuperDiagonalMatrix)):
            return NotImplemented
        return self.map_blocks(lambda b: b * c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, SuperDiagonalMatrix):
            return NotImplemented
        if self.col_partition != other.row_partition:
            raise PartitionMismatch(
                f"column partition {list(self.col_partition)} does not match "
                f"row partition {list(other.row_partition)}")
        return SuperDiagonalMatrix([a.dot(b) for a, b in zip(self.blocks, other.blocks)])

    def __eq__(self, other):
        if not isinstance(other, SuperDiagonalMatrix):
            return NotImplemented
        return equals(self, other)

    __hash__ = None

    def __repr__(self):
        return f"SuperDiagonalMatrix({self})"

    def __str__(self):
        parts = []
        for b in self.blocks:
            rows = "; ".join(" ".join(format_scalar(x) for x in row) for row in b)
            parts.append("[" + rows + "]")
        return "(" + " | ".join(parts) + ")"


def make_super_matrix(data, row_partition, col_partition):
    """Cut a dense grid into a supermatrix.

    Raises :class:`PartitionMismatch` when a partition does not cover the
    corresponding dimension exactly.
    """
    return SuperMatrix(data, row_partition, col_partition)


def _pieces(x):
    """(data, partitions) of any super object, used by the generic functions."""
    if isinstance(x, SuperVector):
        return x.entries, (x.partition,)
    if isinstance(x, SuperMatrix):
        return x.data, (x.row_partition, x.col_partition)
    if isinstance(x, SuperDiagonalMatrix):
        return x.flatten(), (x.row_partition, x.col_partition)
    raise TypeError(f"not a super object: {type(x).__name__}")


def _close(a, b, tol):
    if a.shape != b.shape:
        return False
    if is_exact(a) and is_exact(b):
        return max_abs(a - b) <= tol
    return max_abs(as_numeric(a) - as_numeric(b)) <= tol


def simple_equals(a, b, tol=DEFAULT_TOL):
    """Compare the underlying simple (unpartitioned) matrices only."""
    da, _ = _pieces(a)
    db, _ = _pieces(b)
    return _close(da, db, tol)


def equals(a, b, tol=DEFAULT_TOL):
    """Strict equality: same entries (within ``tol``) *and* same partitions."""
    if type(a) is not type(b):
        return False
    da, pa = _pieces(a)
    db, pb = _pieces(b)
    return pa == pb and _close(da, db, tol)


def add(a, b):
    """Entrywise sum of two super objects of the same type.

    Partitions must agree exactly; equal scalar shapes with different cuts
    raise :class:`IncompatiblePartition`.
    """
    if isinstance(a, SuperVector) and isinstance(b, SuperVector):
        return a + b
    if isinstance(a, SuperDiagonalMatrix) and isinstance(b, SuperDiagonalMatrix):
        return a + b
    if not (isinstance(a, SuperMatrix) and isinstance(b, SuperMatrix)):
        raise TypeError("add expects two super objects of the same kind")
    if a.shape != b.shape:
        raise PartitionMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    if a.row_partition != b.row_partition or a.col_partition != b.col_partition:
        raise IncompatiblePartition(
            "submatrices do not have the same order: "
            f"rows {list(a.row_partition)} vs {list(b.row_partition)}, "
            f"cols {list(a.col_partition)} vs {list(b.col_partition)}")
    return SuperMatrix(a.data + b.data, a.row_partition, a.col_partition)


def scalar_mul(c, a):
    if isinstance(a, SuperMatrix):
        return SuperMatrix(a.data * c, a.row_partition, a.col_partition)
    return a * c


def blockwise_scale(c: Sequence, v: SuperVector) -> SuperVector:
    """Scale block ``i`` of ``v`` by ``c[i]``."""
    c = tuple(c)
    if len(c) != v.n_blocks:
        raise ComponentCountMismatch(f"{len(c)} scalars for {v.n_blocks} blocks")
    return SuperVector.from_blocks([ci * b for ci, b in zip(c, v.blocks)])


def transpose(a):
    """Transpose of a supermatrix: block (i, j) of the result is block (j, i) of ``a``, transposed."""
    if isinstance(a, SuperDiagonalMatrix):
        return a.T
    return SuperMatrix(a.data.T, a.col_partition, a.row_partition)


def is_symmetrically_partitioned(a: SuperMatrix) -> bool:
    return a.shape[0] == a.shape[1] and a.row_partition == a.col_partition


def is_symmetric_super(a: SuperMatrix, tol=DEFAULT_TOL) -> bool:
    """Symmetrically partitioned and equal to its own transpose."""
    return is_symmetrically_partitioned(a) and _close(a.data, a.data.T, tol)


def flatten(a):
    """The simple matrix behind a super object (partition lines dropped)."""
    data, _ = _pieces(a)
    return np.array(data, copy=True)


def repartition(a, row_partition, col_partition):
    return SuperMatrix(flatten(a) if not isinstance(a, np.ndarray) else a,
                       row_partition, col_partition)
