"""Markov super chains and Leontief input-output models.

Both families are collections of independent ordinary models, one per block.
The *row* variant requires every block to have the same size (a super row
matrix); the *diagonal* variant lets block sizes differ (a super diagonal
matrix).  Apart from that check the two variants share every code path, so
equal-sized inputs give identical results under either.
"""

from dataclasses import dataclass, field

import numpy as np

from .core import SuperDiagonalMatrix, SuperVector
from .errors import (InvalidModel, NegativeSteps, NoNonnegativeSolution,
                     NotErgodic, NotProductive, PartitionMismatch)
from .operator import _null_basis

__all__ = [
    "MarkovSuperChain",
    "DistributionSuperVector",
    "step",
    "chain_power",
    "ErgodicLimit",
    "ergodic_limit",
    "LeontiefModel",
    "ClosedSolution",
    "OpenSolution",
    "leontief_closed_solve",
    "leontief_open_solve",
    "STOCHASTIC_TOL",
    "RENORMALIZE_EVERY",
]

STOCHASTIC_TOL = 1e-9
RENORMALIZE_EVERY = 64
_VARIANTS = ("row", "diagonal")


def _as_blocks(blocks, what):
    out = []
    for t, b in enumerate(blocks):
        try:
            b = np.array(b, dtype=float)
        except (TypeError, ValueError) as exc:
            raise InvalidModel(f"{what}[{t}]: not a numeric matrix ({exc})") from None
        if b.ndim != 2 or b.shape[0] != b.shape[1] or b.shape[0] == 0:
            raise InvalidModel(f"{what}[{t}]: expected a non-empty square matrix, got shape {b.shape}")
        if not np.all(np.isfinite(b)):
            raise InvalidModel(f"{what}[{t}]: non-finite entry")
        b.setflags(write=False)
        out.append(b)
    if not out:
        raise InvalidModel(f"{what}: at least one block is required")
    return tuple(out)


def _check_variant(variant, blocks, what):
    if variant not in _VARIANTS:
        raise InvalidModel(f"variant must be 'row' or 'diagonal', got {variant!r}")
    if variant == "row" and len({b.shape[0] for b in blocks}) > 1:
        raise InvalidModel(
            f"{what}: row variant needs equal block sizes, got {[b.shape[0] for b in blocks]}")


class MarkovSuperChain:
    """Independent Markov chains ``P_1 | ... | P_p`` evolved side by side.

    Every ``P_t`` is square, nonnegative, and each of its rows sums to 1.
    """

    __slots__ = ("transitions", "kind", "labels")

    def __init__(self, transitions, kind="row", labels=None, tol=STOCHASTIC_TOL):
        ps = _as_blocks(transitions, "blocks")
        _check_variant(kind, ps, "blocks")
        for t, p in enumerate(ps):
            if p.min() < 0:
                raise InvalidModel(f"blocks[{t}]: negative entry {p.min():.3g}")
            rs = p.sum(axis=1)
            bad = np.flatnonzero(np.abs(rs - 1) > tol)
            if bad.size:
                raise InvalidModel(
                    f"blocks[{t}]: row {int(bad[0])} sums to {rs[bad[0]]:.12g}, not 1")
        if labels is not None:
            labels = tuple(tuple(str(s) for s in lab) for lab in labels)
            if [len(lab) for lab in labels] != [p.shape[0] for p in ps]:
                raise InvalidModel("labels: one name per state in every block is required")
        object.__setattr__(self, "transitions", ps)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, name, value):
        raise AttributeError("MarkovSuperChain is immutable")

    @property
    def sizes(self):
        return tuple(p.shape[0] for p in self.transitions)

    @property
    def n_blocks(self):
        return len(self.transitions)

    def matrix(self):
        return SuperDiagonalMatrix(list(self.transitions))

    def __repr__(self):
        return f"MarkovSuperChain(kind={self.kind!r}, sizes={list(self.sizes)})"


class DistributionSuperVector:
    """Probability row vectors ``X_1 | ... | X_p``, each nonnegative with unit sum."""

    __slots__ = ("blocks",)

    def __init__(self, blocks, tol=STOCHASTIC_TOL):
        out = []
        for t, x in enumerate(blocks):
            x = np.array(x, dtype=float)
            if x.ndim != 1 or x.size == 0:
                raise InvalidModel(f"x0[{t}]: expected a non-empty vector")
            if x.min() < -tol:
                raise InvalidModel(f"x0[{t}]: negative probability {x.min():.3g}")
            if abs(x.sum() - 1) > tol:
                raise InvalidModel(f"x0[{t}]: entries sum to {x.sum():.12g}, not 1")
            x.setflags(write=False)
            out.append(x)
        if not out:
            raise InvalidModel("x0: at least one block is required")
        object.__setattr__(self, "blocks", tuple(out))

    def __setattr__(self, name, value):
        raise AttributeError("DistributionSuperVector is immutable")

    @classmethod
    def uniform(cls, sizes):
        return cls([np.full(n, 1.0 / n) for n in sizes])

    @property
    def sizes(self):
        return tuple(x.size for x in self.blocks)

    def to_super_vector(self):
        return SuperVector.from_blocks(list(self.blocks))

    def __repr__(self):
        return f"DistributionSuperVector({self.to_super_vector()})"


def _conform(chain, x):
    if chain.sizes != x.sizes:
        raise PartitionMismatch(
            f"distribution blocks {list(x.sizes)} do not match chain blocks {list(chain.sizes)}")


def _renormalize_rows(m):
    s = m.sum(axis=-1, keepdims=True)
    return m / s


def step(chain, x, n=1):
    """``X^(n) = X^(0) P^n`` in every block.

    Iterates vector-matrix products and rescales each block to unit sum every
    ``RENORMALIZE_EVERY`` steps so rounding drift cannot accumulate.
    """
    if n < 0:
        raise NegativeSteps(f"n must be >= 0, got {n}")
    _conform(chain, x)
    out = []
    for p, xb in zip(chain.transitions, x.blocks):
        v = xb.copy()
        for k in range(1, n + 1):
            v = v @ p
            if k % RENORMALIZE_EVERY == 0:
                v = v / v.sum()
        out.append(np.clip(v, 0.0, None) if n else v)
    return DistributionSuperVector(out)


def chain_power(chain, n):
    """The per-block matrix powers ``P_t^n``."""
    if n < 0:
        raise NegativeSteps(f"n must be >= 0, got {n}")
    return [np.linalg.matrix_power(p, n) for p in chain.transitions]


@dataclass(frozen=True)
class ErgodicLimit:
    """Per-block limits ``L_t`` of ``P_t^n`` with their stationary rows."""

    limits: tuple
    iterations: tuple
    stationary: tuple = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "stationary", tuple(lim[0].copy() for lim in self.limits))

    def x_inf(self, x0):
        """``X^inf = X^(0) L`` for a conformable initial distribution."""
        if tuple(lim.shape[0] for lim in self.limits) != x0.sizes:
            raise PartitionMismatch(
                f"distribution blocks {list(x0.sizes)} do not match "
                f"{[lim.shape[0] for lim in self.limits]}")
        return DistributionSuperVector([xb @ lim for xb, lim in zip(x0.blocks, self.limits)])

    def rows_agree(self, tol=1e-8):
        """Per block, whether every row of ``L_t`` is the same distribution."""
        return tuple(bool(np.max(np.abs(lim - lim[0])) <= tol) for lim in self.limits)


def _periodic(p, tol=1e-12):
    # A stochastic matrix has a limiting power unless some eigenvalue other
    # than 1 lies on the unit circle.
    lam = np.linalg.eigvals(p)
    return bool(np.any((np.abs(lam) > 1 - tol) & (np.abs(lam - 1) > 1e-8)))


def ergodic_limit(chain, tol=1e-10, max_iter=10**6):
    """Limits of ``P_t^n`` by power iteration.

    Block ``t`` has converged once successive powers differ by at most
    ``tol`` entrywise.  :class:`NotErgodic` is raised when a block hits
    ``max_iter``, when ``P^(n+2)`` returns to ``P^n`` while ``P^(n+1)``
    stays away from it, or when the spectrum has a unit-modulus eigenvalue
    other than 1.
    """
    limits, iters = [], []
    osc = np.sqrt(tol)
    for t, p in enumerate(chain.transitions):
        if _periodic(p):
            raise NotErgodic(t, "P^n oscillates (eigenvalue on the unit circle other than 1)")
        q0, q1 = p, p @ p
        k = 1
        while True:
            d01 = np.max(np.abs(q1 - q0))
            if d01 <= tol:
                break
            q2 = q1 @ p
            if np.max(np.abs(q2 - q0)) <= tol and d01 > osc:
                raise NotErgodic(t, f"P^n oscillates with period 2 at n = {k}")
            k += 1
            if k >= max_iter:
                raise NotErgodic(t, f"no convergence within {max_iter} iterations")
            q0, q1 = q1, q2
            if k % RENORMALIZE_EVERY == 0:
                q0, q1 = _renormalize_rows(q0), _renormalize_rows(q1)
        lim = _renormalize_rows(np.clip(q1, 0.0, None))
        lim.setflags(write=False)
        limits.append(lim)
        iters.append(k)
    return ErgodicLimit(tuple(limits), tuple(iters))


class LeontiefModel:
    """Closed (exchange) or open (consumption plus demand) Leontief model.

    Closed blocks ``A_t`` are nonnegative with unit column sums; open blocks
    ``C_t`` are nonnegative and come with demand vectors ``d_t >= 0``.
    ``relaxed=True`` switches the closed-model checks off, allowing negative
    entries and arbitrary column sums.
    """

    __slots__ = ("kind", "variant", "blocks", "demand", "relaxed")

    def __init__(self, kind, blocks, demand=None, variant="row", relaxed=False,
                 tol=STOCHASTIC_TOL):
        if kind not in ("closed", "open"):
            raise InvalidModel(f"kind must be 'closed' or 'open', got {kind!r}")
        name = "A" if kind == "closed" else "C"
        bs = _as_blocks(blocks, name)
        _check_variant(variant, bs, name)
        ds = None
        if kind == "closed":
            if demand is not None:
                raise InvalidModel("d: a closed model takes no demand vector")
            if not relaxed:
                for t, a in enumerate(bs):
                    if a.min() < 0:
                        raise InvalidModel(f"A[{t}]: negative entry {a.min():.3g}")
                    cs = a.sum(axis=0)
                    bad = np.flatnonzero(np.abs(cs - 1) > tol)
                    if bad.size:
                        raise InvalidModel(
                            f"A[{t}]: column {int(bad[0])} sums to {cs[bad[0]]:.12g}, not 1")
        else:
            if demand is None:
                raise InvalidModel("d: an open model needs a demand vector per block")
            if len(demand) != len(bs):
                raise InvalidModel(f"d: {len(demand)} demand vectors for {len(bs)} blocks")
            ds = []
            for t, (c, d) in enumerate(zip(bs, demand)):
                if c.min() < 0:
                    raise InvalidModel(f"C[{t}]: negative entry {c.min():.3g}")
                d = np.array(d, dtype=float)
                if d.shape != (c.shape[0],):
                    raise InvalidModel(f"d[{t}]: expected {c.shape[0]} entries, got shape {d.shape}")
                if d.min() < 0:
                    raise InvalidModel(f"d[{t}]: negative demand {d.min():.3g}")
                d.setflags(write=False)
                ds.append(d)
            ds = tuple(ds)
        for name_, val in (("kind", kind), ("variant", variant), ("blocks", bs),
                           ("demand", ds), ("relaxed", bool(relaxed))):
            object.__setattr__(self, name_, val)

    def __setattr__(self, name, value):
        raise AttributeError("LeontiefModel is immutable")

    @property
    def sizes(self):
        return tuple(b.shape[0] for b in self.blocks)

    def __repr__(self):
        return (f"LeontiefModel(kind={self.kind!r}, variant={self.variant!r}, "
                f"sizes={list(self.sizes)})")


@dataclass(frozen=True)
class ClosedSolution:
    prices: tuple
    unique: tuple
    residuals: tuple
    candidates: tuple


@dataclass(frozen=True)
class OpenSolution:
    production: tuple
    inverses: tuple
    row_sum_test: tuple
    col_sum_test: tuple
    inverse_nonnegative: tuple
    production_nonnegative: tuple
    residuals: tuple

    @property
    def productive(self):
        return tuple(self.inverse_nonnegative)


def _primitive(a):
    """Some power of ``a`` is strictly positive (Wielandt: check ``(n-1)^2 + 1``)."""
    n = a.shape[0]
    pattern = (a > 0).astype(np.int64)
    q = pattern.copy()
    for _ in range((n - 1) ** 2):
        if q.all():
            return True
        q = ((q @ pattern) > 0).astype(np.int64)
    return bool(q.all())


def _normalize(v):
    s = v.sum()
    if abs(s) > 1e-12 * max(1.0, np.max(np.abs(v))):
        return v / s
    return v / np.max(np.abs(v))


def _sign_fix(v):
    return v if v[np.argmax(np.abs(v))] >= 0 else -v


def leontief_closed_solve(model, tol=1e-10):
    """Price vectors with ``(I - A_t) p_t = 0``, ``p_t >= 0`` and unit sum.

    A one-dimensional null space gives the price vector directly.  For a
    larger null space the uniform vector is projected onto it; when that is
    not nonnegative the nonnegative part of the dominant basis vector is
    tried.  In relaxed mode every null-space basis vector is returned as a
    candidate and the one with the largest minimum entry is chosen.
    """
    if model.kind != "closed":
        raise InvalidModel("leontief_closed_solve needs a closed model")
    prices, unique, residuals, candidates = [], [], [], []
    for t, a in enumerate(model.blocks):
        n = a.shape[0]
        m = np.eye(n) - a
        basis = np.real_if_close(_null_basis(m, 1e-10))
        if basis.shape[1] == 0:
            raise NoNonnegativeSolution(t, "I - A is nonsingular, only p = 0 solves (I - A)p = 0")
        cands = [_normalize(_sign_fix(basis[:, j])) for j in range(basis.shape[1])]
        if model.relaxed:
            p = max(cands, key=lambda v: v.min())
        else:
            if basis.shape[1] == 1:
                p = cands[0]
            else:
                u = np.full(n, 1.0 / n)
                p = basis @ (basis.T @ u)
                if p.min() < -tol * np.max(np.abs(p)):
                    j = int(np.argmax([np.max(np.abs(basis[:, j])) for j in range(basis.shape[1])]))
                    p = np.clip(_sign_fix(basis[:, j]), 0.0, None)
                p = _normalize(p)
            if p.min() < -tol or np.max(np.abs(m @ p)) > 1e-8:
                raise NoNonnegativeSolution(t, "null space has no nonnegative representative")
            p = np.clip(p, 0.0, None)
            p = p / p.sum()
        p.setflags(write=False)
        prices.append(p)
        unique.append(basis.shape[1] == 1 and not model.relaxed and _primitive(a))
        residuals.append(float(np.max(np.abs(m @ p))))
        candidates.append(tuple(cands))
    return ClosedSolution(tuple(prices), tuple(unique), tuple(residuals), tuple(candidates))


def leontief_open_solve(model, tol=1e-9, rcond=1e-12):
    """Production ``x_t = (I - C_t)^-1 d_t`` for every productive block.

    Raises :class:`NotProductive` for the first block whose ``I - C_t`` is
    singular or whose inverse has an entry below ``-tol``.
    """
    if model.kind != "open":
        raise InvalidModel("leontief_open_solve needs an open model")
    xs, invs, rows, cols, inv_ok, x_ok, res = [], [], [], [], [], [], []
    for t, (c, d) in enumerate(zip(model.blocks, model.demand)):
        n = c.shape[0]
        m = np.eye(n) - c
        s = np.linalg.svd(m, compute_uv=False)
        if s[-1] <= rcond * s[0]:
            raise NotProductive(t, "I - C is singular")
        inv = np.linalg.inv(m)
        if inv.min() < -tol:
            raise NotProductive(t, f"(I - C)^-1 has a negative entry {inv.min():.3g}")
        x = np.linalg.solve(m, d)
        x.setflags(write=False)
        inv.setflags(write=False)
        xs.append(x)
        invs.append(inv)
        rows.append(bool(np.all(c.sum(axis=1) < 1)))
        cols.append(bool(np.all(c.sum(axis=0) < 1)))
        inv_ok.append(True)
        x_ok.append(bool(x.min() >= -1e-10))
        res.append(float(np.max(np.abs(m @ x - d))))
    return OpenSolution(tuple(xs), tuple(invs), tuple(rows), tuple(cols),
                        tuple(inv_ok), tuple(x_ok), tuple(res))
