"""Blockwise spectral theory of super diagonal matrices.

Every quantity is a tuple with one entry per diagonal block: the super
determinant ``(|A1|, ..., |An|)``, the characteristic super polynomial
``(det(xI - A1) | ... | det(xI - An))``, the minimal super polynomial, and so
on.  Functions taking ``exact=True`` convert the blocks to Fractions first and
return exact results.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

import numpy as np

from ._numeric import as_exact, identity_like, is_exact, max_abs
from .core import SuperDiagonalMatrix, SuperScalar
from .errors import (NegativeSpectrum, NonSquareBlock, NotAnEigenvalue,
                     NotDiagonalizable, NotNormal, NotSelfAdjoint,
                     PartitionMismatch, SingularBlock)
from .operator import SuperLinearMap, _exact_rref, _null_basis, invert
from .polynomial import (ROOT_CLUSTER_TOL, Polynomial, SuperPolynomial,
                         distinct_roots, real_roots, roots)

__all__ = [
    "SpectralResolution",
    "Diagonalizability",
    "super_det",
    "char_poly",
    "char_super_poly",
    "char_super_values",
    "char_super_vectors",
    "minimal_poly",
    "minimal_super_poly",
    "similarity_conjugate",
    "is_super_diagonalizable",
    "cayley_hamilton_residual",
    "spectral_resolution",
    "apply_function",
    "nonneg_sqrt",
    "polar_decomposition",
    "classify_normal",
    "KRYLOV_TOL",
    "NORMAL_TOL",
]

KRYLOV_TOL = 1e-10
NORMAL_TOL = 1e-8


def _square_blocks(a, exact=False):
    for i, b in enumerate(a.blocks):
        if b.shape[0] != b.shape[1]:
            raise NonSquareBlock(i, b.shape)
    if exact:
        return [as_exact(b) for b in a.blocks]
    return list(a.blocks)


def _exact_det(b):
    a = b.copy()
    n = a.shape[0]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i, c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[[c, p]] = a[[p, c]]
            det = -det
        det *= a[c, c]
        for i in range(c + 1, n):
            if a[i, c] != 0:
                a[i] = a[i] - (a[i, c] / a[c, c]) * a[c]
    return det


def super_det(a, exact=False):
    """``(|A1|, ..., |An|)``; defined only when every block is square."""
    blocks = _square_blocks(a, exact or a.exact)
    return SuperScalar(_exact_det(b) if is_exact(b) else np.linalg.det(b) for b in blocks)


def char_poly(b):
    """Characteristic polynomial ``det(xI - B)`` by Faddeev-LeVerrier.

    Works unchanged on Fraction blocks, in which case every coefficient is
    exact.
    """
    b = np.asarray(b)
    n = b.shape[0]
    exact = is_exact(b)
    eye = identity_like(n, exact)
    coeffs = [None] * (n + 1)
    coeffs[n] = Fraction(1) if exact else 1.0
    m = eye * 0
    for k in range(1, n + 1):
        m = b.dot(m) + eye * coeffs[n - k + 1]
        tr = np.trace(b.dot(m))
        coeffs[n - k] = -tr / (Fraction(k) if exact else k)
    return Polynomial(coeffs, exact=exact or None)


def char_super_poly(a, exact=False):
    return SuperPolynomial([char_poly(b) for b in _square_blocks(a, exact)])


def char_super_values(a, real=False, exact=False, tol=ROOT_CLUSTER_TOL):
    """Eigenvalues of each block as the roots of its characteristic polynomial.

    With ``real=True`` only real roots are kept, so a rotation block yields an
    empty list.
    """
    f = char_super_poly(a, exact)
    if real:
        return [real_roots(p) for p in f]
    return [roots(p, tol) for p in f]


def _eig_null_basis(b, c, tol):
    c = complex(c)
    c = c.real if c.imag == 0 else c
    b = np.asarray(b, dtype=complex if np.iscomplexobj(b) or isinstance(c, complex) else float)
    shifted = b - c * np.eye(b.shape[0])
    _, s, vh = np.linalg.svd(shifted)
    scale = max(1.0, float(np.linalg.norm(b, 2)))
    k = int(np.sum(s <= tol * scale))
    return vh[vh.shape[0] - k:].conj().T


def char_super_vectors(a, c, tol=1e-8):
    """Per-block bases (columns) of the eigenspaces ``ker(Ai - ci I)``."""
    blocks = _square_blocks(a)
    c = tuple(c)
    if len(c) != len(blocks):
        raise PartitionMismatch(f"{len(c)} values for {len(blocks)} blocks")
    out = []
    for i, (b, ci) in enumerate(zip(blocks, c)):
        if is_exact(b):
            shifted = b - identity_like(b.shape[0], True) * Fraction(ci)
            basis = _null_basis(shifted)
        else:
            basis = _eig_null_basis(b, ci, tol)
        if basis.shape[1] == 0:
            raise NotAnEigenvalue(i, f"{ci!r}")
        out.append(basis)
    return out


def minimal_poly(b, tol=KRYLOV_TOL):
    """Least-degree monic annihilator of ``B`` from the first linear
    dependence among ``vec(I), vec(B), vec(B^2), ...``."""
    b = np.asarray(b)
    n = b.shape[0]
    exact = is_exact(b)
    power = identity_like(n, exact)
    vecs = [power.reshape(-1)]
    if exact:
        for k in range(1, n + 1):
            power = power.dot(b)
            w = power.reshape(-1)
            aug = np.column_stack(vecs + [w])
            rref, pivots = _exact_rref(aug)
            if k not in pivots:
                coef = [Fraction(0)] * k
                for row, p in enumerate(pivots):
                    coef[p] = rref[row, k]
                return Polynomial([-x for x in coef] + [Fraction(1)], exact=True)
            vecs.append(w)
        raise AssertionError("Cayley-Hamilton bounds the degree by n")
    dtype = complex if np.iscomplexobj(b) else float
    q = [vecs[0] / np.linalg.norm(vecs[0])]
    for k in range(1, n + 1):
        power = power.dot(b)
        w = power.reshape(-1).astype(dtype)
        r = w.copy()
        for _ in range(2):
            for u in q:
                r = r - np.vdot(u, r) * u
        wn = np.linalg.norm(w)
        if np.linalg.norm(r) <= tol * wn or k == n:
            basis = np.column_stack(vecs).astype(dtype)
            coef, *_ = np.linalg.lstsq(basis, w, rcond=None)
            return Polynomial(np.concatenate([-coef, [1.0]]))
        q.append(r / np.linalg.norm(r))
        vecs.append(w)
    raise AssertionError("unreachable")


def minimal_super_poly(a, exact=False, tol=KRYLOV_TOL):
    return SuperPolynomial([minimal_poly(b, tol) for b in _square_blocks(a, exact)])


def similarity_conjugate(a, p):
    """``P^-1 A P`` block by block."""
    blocks = _square_blocks(a)
    pb = _square_blocks(p)
    if [b.shape for b in blocks] != [b.shape for b in pb]:
        raise PartitionMismatch(
            f"blocks {[b.shape for b in pb]} do not conform with {[b.shape for b in blocks]}")
    pinv = invert(SuperLinearMap(p)).blocks
    return SuperDiagonalMatrix([pi.dot(ai).dot(pj) for pi, ai, pj in zip(pinv, blocks, pb)])


@dataclass(frozen=True)
class Diagonalizability:
    """Verdict of :func:`is_super_diagonalizable`.

    ``witness[i]`` holds an eigenvector basis of block ``i`` as columns when
    the whole matrix is diagonalizable, else ``None``.
    """

    diagonalizable: bool
    blocks: tuple
    minimal: SuperPolynomial
    witness: Union[tuple, None]

    def __bool__(self):
        return self.diagonalizable


def is_super_diagonalizable(a, tol=ROOT_CLUSTER_TOL, exact=False):
    """Diagonalizable iff each block's minimal polynomial has only simple roots."""
    mins = minimal_super_poly(a, exact=exact)
    verdicts = []
    for m in mins:
        verdicts.append(all(k == 1 for _, k in distinct_roots(m, tol)))
    ok = all(verdicts)
    witness = None
    if ok:
        witness = []
        for b, m in zip(a.blocks, mins):
            num = np.asarray(b, dtype=float) if is_exact(b) else b
            cols = [_eig_null_basis(num, r, 1e-7) for r, _ in distinct_roots(m, tol)]
            basis = np.column_stack(cols)
            if np.iscomplexobj(basis) and not np.any(basis.imag):
                basis = basis.real
            witness.append(basis)
        witness = tuple(witness)
    return Diagonalizability(ok, tuple(verdicts), mins, witness)


def cayley_hamilton_residual(a, exact=False):
    """``max |f_i(A_i)|`` per block with ``f`` the characteristic super polynomial."""
    blocks = _square_blocks(a, exact)
    return SuperScalar(max_abs(char_poly(b).eval_matrix(b)) for b in blocks)


@dataclass(frozen=True)
class SpectralResolution:
    """Per block, distinct eigenvalues ``c_j`` and projections ``E_j`` with
    ``sum E_j = I``, ``E_i E_j = delta_ij E_j`` and ``sum c_j E_j = A_i``."""

    eigenvalues: tuple
    projections: tuple

    @property
    def n_blocks(self):
        return len(self.eigenvalues)

    def reconstruct(self):
        return apply_function(self, lambda x: x)

    def residuals(self, a):
        """Worst entry of the four resolution laws, per block."""
        out = []
        for b, cs, es in zip(a.blocks, self.eigenvalues, self.projections):
            n = b.shape[0]
            worst = max_abs(sum(es) - np.eye(n))
            for i, ei in enumerate(es):
                for j, ej in enumerate(es):
                    target = ei if i == j else 0
                    worst = max(worst, max_abs(ei.dot(ej) - target))
            worst = max(worst, max_abs(sum(c * e for c, e in zip(cs, es)) - b))
            out.append(worst)
        return SuperScalar(out)


def _hermitian(b, tol):
    scale = max(1.0, float(np.max(np.abs(b))) if b.size else 1.0)
    return float(np.max(np.abs(b - b.conj().T))) <= tol * scale


def spectral_resolution(a, tol=NORMAL_TOL, cluster_tol=ROOT_CLUSTER_TOL):
    """Blockwise spectral resolution of a super diagonal matrix with normal blocks.

    Eigenvalues within ``cluster_tol`` (relative) are merged.  The projection
    onto ``c_j`` is ``V_j V_j^*`` where the columns of ``V_j`` are an
    orthonormal basis of its eigenspace; for a normal block this coincides
    with the Lagrange interpolation polynomial in ``A`` but avoids dividing
    by small eigenvalue gaps.
    """
    blocks = [np.asarray(b, dtype=complex if np.iscomplexobj(b) else float)
              for b in _square_blocks(a)]
    eigenvalues, projections = [], []
    for i, b in enumerate(blocks):
        norm = max(1.0, float(np.linalg.norm(b, 2)))
        comm = b.dot(b.conj().T) - b.conj().T.dot(b)
        if float(np.max(np.abs(comm))) > tol * norm:
            raise NotNormal(i, f"commutator norm {float(np.max(np.abs(comm))):.3g}")
        herm = _hermitian(b, tol)
        if herm:
            raw, vecs = np.linalg.eigh((b + b.conj().T) / 2)
        else:
            raw, vecs = np.linalg.eig(b)
        clusters = _cluster_indices(raw, cluster_tol)
        real = herm or all(c.imag == 0 for c, _ in clusters)
        cs, es = [], []
        for c, members in clusters:
            v = vecs[:, members]
            if not herm:
                v, _ = np.linalg.qr(v)
            e = v.dot(v.conj().T)
            if real and not np.iscomplexobj(b):
                e = e.real
            cs.append(c.real if real else c)
            es.append(e)
        # Non-normal input slipping past the commutator test would show up here.
        if max_abs(sum(c * e for c, e in zip(cs, es)) - b) > 1e3 * tol * norm:
            raise NotDiagonalizable(i, "projections do not reconstruct the block")
        eigenvalues.append(tuple(cs))
        projections.append(tuple(es))
    return SpectralResolution(tuple(eigenvalues), tuple(projections))


def _cluster_indices(raw, tol):
    """Single-linkage groups of eigenvalue indices, as sorted (mean, indices) pairs."""
    raw = [complex(x) for x in raw]
    groups = []
    for k, r in enumerate(raw):
        hits = [g for g in groups
                if any(abs(r - raw[m]) <= tol * max(1.0, abs(r), abs(raw[m])) for m in g)]
        merged = [k] + [m for g in hits for m in g]
        groups = [g for g in groups if g not in hits] + [sorted(merged)]
    out = []
    for g in groups:
        mean = complex(np.mean([raw[m] for m in g]))
        if abs(mean.imag) <= 1e-12 * max(1.0, abs(mean)):
            mean = complex(mean.real, 0.0)
        out.append((mean, g))
    return sorted(out, key=lambda cg: (cg[0].real, cg[0].imag))


def apply_function(res, f: Union[Callable, Sequence[Callable]]):
    """``(sum_j f1(c_j) E_j | ...)``; ``f`` is one callable or one per block."""
    fs = list(f) if not callable(f) else [f] * res.n_blocks
    if len(fs) != res.n_blocks:
        raise PartitionMismatch(f"{len(fs)} functions for {res.n_blocks} blocks")
    out = []
    for fi, cs, es in zip(fs, res.eigenvalues, res.projections):
        out.append(sum(fi(c) * e for c, e in zip(cs, es)))
    return SuperDiagonalMatrix(out)


def nonneg_sqrt(a, tol=NORMAL_TOL):
    """Unique non-negative square root of a block-wise self-adjoint,
    non-negative super diagonal matrix."""
    blocks = _square_blocks(a)
    for i, b in enumerate(blocks):
        b = np.asarray(b, dtype=complex if np.iscomplexobj(b) else float)
        if not _hermitian(b, tol):
            raise NotSelfAdjoint(i)
    res = spectral_resolution(a, tol)
    for i, (b, cs) in enumerate(zip(blocks, res.eigenvalues)):
        scale = max(1.0, float(np.max(np.abs(np.asarray(b, dtype=complex)))))
        low = min(cs)
        if low < -tol * scale:
            raise NegativeSpectrum(i, f"eigenvalue {low:.3g}")
    return apply_function(res, lambda c: np.sqrt(max(c, 0.0)))


def polar_decomposition(a, tol=NORMAL_TOL):
    """``A = U N`` with ``U`` unitary and ``N = sqrt(A* A)``; invertible blocks only."""
    blocks = _square_blocks(a)
    for i, b in enumerate(blocks):
        s = np.linalg.svd(np.asarray(b, dtype=complex if np.iscomplexobj(b) else float),
                          compute_uv=False)
        if s[0] == 0 or s[-1] / s[0] < 1e-12:
            raise SingularBlock(i)
    gram = a.H @ a
    # Symmetrise away rounding so the self-adjointness test sees an exact Hermitian matrix.
    gram = gram.map_blocks(lambda g: (g + g.conj().T) / 2)
    n = nonneg_sqrt(gram, tol)
    ninv = invert(SuperLinearMap(n)).matrix
    return a @ ninv, n


def classify_normal(a, tol=NORMAL_TOL):
    """For each normal block: which of self-adjoint / non-negative / unitary it is,
    read off from its eigenvalues (real, non-negative, unit modulus)."""
    res = spectral_resolution(a, tol)
    out = []
    for cs in res.eigenvalues:
        cs = [complex(c) for c in cs]
        real = all(abs(c.imag) <= tol for c in cs)
        out.append({
            "self_adjoint": real,
            "nonnegative": real and all(c.real >= -tol for c in cs),
            "unitary": all(abs(abs(c) - 1) <= tol for c in cs),
        })
    return out
