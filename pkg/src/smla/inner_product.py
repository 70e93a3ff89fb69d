"""Inner products, orthogonalisation and bilinear forms, block by block.

The standard super inner product of ``a = (a1 | ... | an)`` and
``b = (b1 | ... | bn)`` is the tuple of ordinary inner products
``(sum a1 conj(b1) | ... | sum an conj(bn))``; norms, projections and forms
are likewise tuples of their per-block counterparts.
"""

from dataclasses import dataclass

import numpy as np

from ._numeric import max_abs
from .core import SuperDiagonalMatrix, SuperScalar, SuperVector
from .errors import (DependentBlock, IncompatiblePartition, NonSquareBlock,
                     NotSkew, NotSymmetric, PartitionMismatch)
from .operator import SuperLinearMap, block_rank, invert

__all__ = [
    "inner",
    "norm",
    "gram_schmidt",
    "best_approximation",
    "dual_basis",
    "transpose_map",
    "BilinearSuperForm",
    "SignatureReport",
    "form_eval",
    "quadratic",
    "form_rank",
    "is_nondegenerate",
    "form_in_basis",
    "diagonalize_symmetric",
    "leading_principal_minors",
    "is_positive_definite",
    "skew_canonical",
    "preserves_form",
    "GS_TOL",
    "SIGNATURE_TOL",
]

GS_TOL = 1e-10
SIGNATURE_TOL = 1e-9


def _same_partition(u, v):
    if u.partition != v.partition:
        raise PartitionMismatch(
            f"vectors cut as {list(u.partition)} and {list(v.partition)}")


def _scalar(x):
    x = complex(x)
    return x.real if x.imag == 0 else x


def inner(u, v):
    """Standard super inner product, linear in ``u`` and conjugate linear in ``v``."""
    _same_partition(u, v)
    return SuperScalar(_scalar(np.vdot(bv, bu)) for bu, bv in zip(u.blocks, v.blocks))


def norm(v):
    return SuperScalar(float(np.linalg.norm(np.asarray(b, dtype=complex))) for b in v.blocks)


def gram_schmidt(vs, tol=GS_TOL):
    """Orthonormalise each block of a sequence of super vectors.

    Block ``i`` of the ``k``-th output spans, together with the earlier
    outputs, the same space as block ``i`` of the first ``k`` inputs.  A block
    whose inputs are dependent raises :class:`DependentBlock` at the first
    step where the residual falls below ``tol`` (relative to the input).
    """
    vs = list(vs)
    if not vs:
        return []
    for v in vs[1:]:
        if v.partition != vs[0].partition:
            raise IncompatiblePartition(
                f"vectors cut as {list(vs[0].partition)} and {list(v.partition)}")
    complex_mode = any(np.iscomplexobj(v.entries) for v in vs)
    dtype = complex if complex_mode else float
    out_blocks = [[] for _ in vs]
    for i in range(vs[0].n_blocks):
        basis = []
        for k, v in enumerate(vs):
            w = np.asarray(v.blocks[i], dtype=dtype)
            r = w.copy()
            # Classical Gram-Schmidt, run twice to recover orthogonality lost to rounding.
            for _ in range(2):
                coeffs = [np.vdot(e, r) for e in basis]
                for c, e in zip(coeffs, basis):
                    r = r - c * e
            rn = float(np.linalg.norm(r))
            if rn <= tol * max(1.0, float(np.linalg.norm(w))):
                raise DependentBlock(i, k)
            e = r / rn
            basis.append(e)
            out_blocks[k].append(e)
    return [SuperVector.from_blocks(bl) for bl in out_blocks]


def best_approximation(basis, beta, tol=GS_TOL):
    """Orthogonal projection of ``beta`` onto the span of ``basis``, per block.

    ``beta`` minus the result is orthogonal to every basis vector.
    """
    for b in basis:
        _same_partition(b, beta)
    es = gram_schmidt(basis, tol)
    blocks = []
    for i, bb in enumerate(beta.blocks):
        bb = np.asarray(bb, dtype=complex if np.iscomplexobj(bb) or any(
            np.iscomplexobj(e.entries) for e in es) else float)
        acc = np.zeros_like(bb)
        for e in es:
            ei = e.blocks[i]
            acc = acc + np.vdot(ei, bb) * ei
        blocks.append(acc)
    return SuperVector.from_blocks(blocks)


def dual_basis(basis):
    """Dual functionals of a per-block basis.

    ``basis`` holds the basis vectors of each block as columns (a super
    diagonal matrix or a list of square arrays).  Row ``j`` of block ``i`` in
    the result is the functional taking the value 1 on the ``j``-th basis
    vector of that block and 0 on the others.
    """
    if not isinstance(basis, SuperDiagonalMatrix):
        basis = SuperDiagonalMatrix(basis)
    return invert(SuperLinearMap(basis)).matrix


def transpose_map(t):
    """Transpose of a map: blockwise matrix transpose, domain and codomain swapped."""
    return SuperLinearMap(t.matrix.T)


class BilinearSuperForm:
    """Tuple of bilinear forms ``f_i(x, y) = x^T A_i y`` given by square blocks."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        if not isinstance(matrix, SuperDiagonalMatrix):
            matrix = SuperDiagonalMatrix(matrix)
        for i, b in enumerate(matrix.blocks):
            if b.shape[0] != b.shape[1]:
                raise NonSquareBlock(i, b.shape)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("BilinearSuperForm is immutable")

    @property
    def blocks(self):
        return self.matrix.blocks

    @property
    def partition(self):
        return self.matrix.row_partition

    def _scale(self, b):
        return max(1.0, max_abs(np.asarray(b, dtype=complex)))

    def is_symmetric(self, tol=SIGNATURE_TOL):
        return all(max_abs(b - b.T) <= tol * self._scale(b) for b in self.blocks)

    def is_skew(self, tol=SIGNATURE_TOL):
        return all(max_abs(b + b.T) <= tol * self._scale(b) for b in self.blocks)

    def is_hermitian(self, tol=SIGNATURE_TOL):
        return all(max_abs(np.asarray(b) - np.asarray(b).conj().T) <= tol * self._scale(b)
                   for b in self.blocks)

    def symmetry_class(self):
        if self.is_symmetric():
            return "symmetric"
        if self.is_skew():
            return "skew"
        if self.is_hermitian():
            return "hermitian"
        return "general"

    def __call__(self, x, y):
        return form_eval(self, x, y)

    def __repr__(self):
        return f"BilinearSuperForm({self.matrix})"


@dataclass(frozen=True)
class SignatureReport:
    """Per-block counts of +1, -1 and 0 entries in a diagonal form matrix."""

    p: tuple
    q: tuple
    z: tuple

    @property
    def rank(self):
        return tuple(a + b for a, b in zip(self.p, self.q))

    @property
    def signature(self):
        return tuple(2 * a - r for a, r in zip(self.p, self.rank))

    def as_dict(self):
        return {"p": list(self.p), "q": list(self.q), "z": list(self.z),
                "rank": list(self.rank), "signature": list(self.signature)}


def _check_vec(f, x):
    if x.partition != f.partition:
        raise PartitionMismatch(
            f"vector cut as {list(x.partition)}, form expects {list(f.partition)}")


def form_eval(f, x, y, conjugate=False):
    """``(x1^T A1 y1 | ... )``; ``conjugate=True`` conjugates ``y`` (sesquilinear)."""
    _check_vec(f, x)
    _check_vec(f, y)
    out = []
    for a, xb, yb in zip(f.blocks, x.blocks, y.blocks):
        yb = np.conj(yb) if conjugate else yb
        out.append(_scalar(np.asarray(xb).dot(np.asarray(a).dot(yb))))
    return SuperScalar(out)


def quadratic(f, x):
    return form_eval(f, x, x)


def form_rank(f, rtol=1e-10):
    return SuperScalar(block_rank(b, rtol) for b in f.blocks)


def is_nondegenerate(f, rtol=1e-10):
    return tuple(form_rank(f, rtol)) == tuple(f.partition)


def form_in_basis(f, p):
    """Matrix of ``f`` in the basis given by the columns of each block of ``p``."""
    return BilinearSuperForm(SuperDiagonalMatrix(
        [np.asarray(pb).T.dot(a).dot(pb) if not np.iscomplexobj(pb) or f.is_symmetric()
         else np.asarray(pb).conj().T.dot(a).dot(pb)
         for a, pb in zip(f.blocks, p.blocks)]))


def diagonalize_symmetric(f, tol=SIGNATURE_TOL):
    """Congruence ``P_i^T A_i P_i = D_i`` with ``D_i`` diagonal over {+1, -1, 0}.

    Entries are ordered +1 first, then -1, then 0.  Hermitian complex blocks
    are handled with ``P^*`` in place of ``P^T``.  Eigenvalues with
    ``|lambda| <= tol * ||A_i||`` count as zero.
    """
    ps, ds = [], []
    pc, qc, zc = [], [], []
    for i, a in enumerate(f.blocks):
        a = np.asarray(a)
        complex_block = np.iscomplexobj(a)
        scale = max(1.0, max_abs(a))
        if complex_block:
            if max_abs(a - a.conj().T) > tol * scale:
                raise NotSymmetric(i, "complex blocks must be Hermitian")
        elif max_abs(a - a.T) > tol * scale:
            raise NotSymmetric(i)
        herm = (a + a.conj().T) / 2
        lam, vec = np.linalg.eigh(herm)
        norm2 = max(abs(lam)) if lam.size else 0.0
        cut = tol * max(norm2, 1e-300)
        pos = [j for j in np.argsort(-lam) if lam[j] > cut]
        neg = [j for j in np.argsort(lam) if lam[j] < -cut]
        zero = [j for j in range(len(lam)) if abs(lam[j]) <= cut]
        order = pos + neg + zero
        scale_cols = np.array([1 / np.sqrt(abs(lam[j])) if j not in zero else 1.0
                               for j in order])
        p = vec[:, order] * scale_cols
        if not complex_block:
            p = p.real
        ps.append(p)
        ds.append(np.diag([1.0] * len(pos) + [-1.0] * len(neg) + [0.0] * len(zero)))
        pc.append(len(pos))
        qc.append(len(neg))
        zc.append(len(zero))
    return (SuperDiagonalMatrix(ps), SuperDiagonalMatrix(ds),
            SignatureReport(tuple(pc), tuple(qc), tuple(zc)))


def leading_principal_minors(f):
    """Per block, the determinants of the leading ``k x k`` submatrices, k = 1..n."""
    return [tuple(float(np.linalg.det(np.asarray(a)[:k, :k]).real)
                  for k in range(1, a.shape[0] + 1)) for a in f.blocks]


def is_positive_definite(f):
    """Every leading principal minor of every (symmetric) block is positive."""
    if not f.is_hermitian():
        return False
    return all(all(m > 0 for m in ms) for ms in leading_principal_minors(f))


def skew_canonical(f, tol=1e-10):
    """Basis in which a skew form is ``L (+) ... (+) L (+) 0`` with ``L = [[0, 1], [-1, 0]]``.

    Built by repeated pairing: take two vectors with ``f(a, b) != 0``, rescale
    so ``f(a, b) = 1``, and replace every remaining vector ``g`` by
    ``g - f(g, b) a + f(g, a) b``, which is ``f``-orthogonal to both.  Returns
    the basis (columns, per block) and the number of ``L`` copies per block.
    """
    if not f.is_skew():
        bad = next(i for i, b in enumerate(f.blocks)
                   if max_abs(b + b.T) > SIGNATURE_TOL * max(1.0, max_abs(np.asarray(b, dtype=complex))))
        raise NotSkew(bad)
    bases, ks = [], []
    for a in f.blocks:
        a = np.asarray(a)
        n = a.shape[0]
        dtype = complex if np.iscomplexobj(a) else float
        work = [np.eye(n, dtype=dtype)[:, j] for j in range(n)]
        scale = max(1.0, max_abs(a))
        pairs = []
        while len(work) >= 2:
            g = np.column_stack(work)
            vals = g.T.dot(a).dot(g)
            idx = np.unravel_index(np.argmax(np.abs(vals)), vals.shape)
            if abs(vals[idx]) <= tol * scale:
                break
            s, t = int(idx[0]), int(idx[1])
            alpha = work[s]
            beta = work[t] / vals[s, t]
            rest = [w for j, w in enumerate(work) if j not in (s, t)]
            work = [w - (w.dot(a).dot(beta)) * alpha + (w.dot(a).dot(alpha)) * beta
                    for w in rest]
            pairs.extend([alpha, beta])
        cols = pairs + work
        bases.append(np.column_stack(cols))
        ks.append(len(pairs) // 2)
    return SuperDiagonalMatrix(bases), SuperScalar(ks)


def preserves_form(f, m, tol=1e-8):
    """True when ``M_i^T A_i M_i = A_i`` in every block (within ``tol``)."""
    if m.row_partition != f.partition or m.col_partition != f.partition:
        raise PartitionMismatch(
            f"operator blocks {[b.shape for b in m.blocks]} do not fit form "
            f"blocks {[b.shape for b in f.blocks]}")
    return all(max_abs(np.asarray(mb).T.dot(a).dot(mb) - a) <= tol
               for a, mb in zip(f.blocks, m.blocks))
