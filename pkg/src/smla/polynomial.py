"""Univariate polynomials and their blockwise tuples.

Coefficients are stored in ascending order.  A polynomial is *exact* when its
coefficients are :class:`~fractions.Fraction` objects; arithmetic between two
exact polynomials stays exact, which is what the characteristic/minimal
polynomial identities are checked against.
"""

from fractions import Fraction

import numpy as np

from ._numeric import (as_exact, as_numeric, format_scalar, identity_like,
                       is_exact, max_abs)
from .core import SuperDiagonalMatrix, SuperScalar
from .errors import ComponentCountMismatch, NonSquareBlock, ZeroPolynomial

__all__ = [
    "Polynomial",
    "SuperPolynomial",
    "sp_add",
    "sp_mul",
    "sp_eval_scalar",
    "sp_eval_operator",
    "roots",
    "distinct_roots",
    "real_roots",
    "sp_roots",
    "same_root_set",
    "ROOT_CLUSTER_TOL",
]

# Roots closer than this (relative to max(1, |r|)) count as one repeated root.
ROOT_CLUSTER_TOL = 1e-6


def _trim(c):
    n = len(c)
    while n > 0 and c[n - 1] == 0:
        n -= 1
    return c[:n]


def _convolve(a, b):
    if is_exact(a) or is_exact(b):
        out = np.empty(len(a) + len(b) - 1, dtype=object)
        out[...] = Fraction(0)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out
    return np.convolve(a, b)


class Polynomial:
    """Polynomial with ascending coefficients ``c0 + c1 x + ...``.

    The zero polynomial has no coefficients; its :attr:`degree` is ``-1`` and
    :attr:`is_zero` is true.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, *, exact=None):
        if isinstance(coeffs, Polynomial):
            coeffs = coeffs.coeffs
        c = np.atleast_1d(np.asarray(coeffs, dtype=object if exact else None))
        if exact or (exact is None and c.dtype == object
                     and any(isinstance(x, Fraction) for x in c.flat)):
            c = as_exact(c)
        elif c.dtype == object or not np.issubdtype(c.dtype, np.complexfloating):
            c = as_numeric(c)
        c = np.array(_trim(c), copy=True)
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def from_roots(cls, rs, *, exact=False):
        p = cls([1], exact=exact)
        for r in rs:
            p = p * cls([-r, 1], exact=exact)
        return p

    @classmethod
    def x(cls, *, exact=False):
        return cls([0, 1], exact=exact)

    @property
    def exact(self):
        return is_exact(self.coeffs)

    @property
    def is_zero(self):
        return len(self.coeffs) == 0

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lead(self):
        if self.is_zero:
            raise ZeroPolynomial("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self, tol=1e-9):
        if self.is_zero:
            return False
        if self.exact:
            return self.lead == 1
        return abs(self.lead - 1) <= tol

    def monic(self):
        return self * (1 / self.lead if not self.exact else Fraction(1) / self.lead)

    def to_float(self):
        return Polynomial(as_numeric(self.coeffs))

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        return Polynomial([other], exact=self.exact or None)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = np.array(a, copy=True)
        if len(b):
            out[:len(b)] = out[:len(b)] + b
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial(self.coeffs * other)
        if self.is_zero or other.is_zero:
            return Polynomial([])
        return Polynomial(_convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __call__(self, x):
        """Horner evaluation at a scalar."""
        acc = 0
        for c in self.coeffs[::-1]:
            acc = acc * x + c
        return acc

    def eval_matrix(self, m):
        """Horner evaluation at a square matrix."""
        m = np.asarray(m)
        n = m.shape[0]
        if m.ndim != 2 or m.shape[1] != n:
            raise NonSquareBlock(0, m.shape)
        exact = is_exact(m) and (self.exact or self.is_zero)
        eye = identity_like(n, exact)
        if self.is_zero:
            return eye * 0
        acc = eye * self.coeffs[-1]
        for c in self.coeffs[-2::-1]:
            acc = acc.dot(m) + eye * c
        return acc

    def divmod(self, other):
        """Long division ``self = q * other + r`` with ``deg r < deg other``."""
        if other.is_zero:
            raise ZeroPolynomial("division by the zero polynomial")
        exact = self.exact and other.exact
        if exact:
            num = list(self.coeffs)
            den = other.coeffs
        else:
            num = list(as_numeric(self.coeffs))
            den = as_numeric(other.coeffs)
        dn = len(den) - 1
        if len(num) - 1 < dn:
            return Polynomial([], exact=exact or None), Polynomial(num, exact=exact or None)
        q = [0] * (len(num) - dn)
        for k in range(len(num) - 1 - dn, -1, -1):
            coef = num[k + dn] / den[-1]
            q[k] = coef
            for j in range(dn + 1):
                num[k + j] = num[k + j] - coef * den[j]
        rem = num[:dn]
        return Polynomial(q, exact=exact or None), Polynomial(rem, exact=exact or None)

    def derivative(self):
        if len(self.coeffs) <= 1:
            return Polynomial([], exact=self.exact or None)
        k = np.arange(1, len(self.coeffs))
        if self.exact:
            return Polynomial([c * int(i) for c, i in zip(self.coeffs[1:], k)])
        return Polynomial(self.coeffs[1:] * k)

    def gcd(self, other):
        """Monic greatest common divisor; exact coefficients only."""
        if not (self.exact and other.exact):
            raise TypeError("gcd is only defined for exact polynomials")
        a, b = self, other
        while not b.is_zero:
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero else a

    def squarefree_part(self):
        """``p / gcd(p, p')`` made monic: same roots, each simple (exact only)."""
        g = self.gcd(self.derivative())
        return self.divmod(g)[0].monic()

    def max_coeff(self):
        return max_abs(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and bool(np.all(self.coeffs == other.coeffs))

    __hash__ = None

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if isinstance(c, (complex, np.complexfloating)) and c.imag != 0:
                body, sign = "(" + format_scalar(c) + ")", "+"
            else:
                c = c.real if isinstance(c, (complex, np.complexfloating)) else c
                sign = "-" if c < 0 else "+"
                body = format_scalar(abs(c))
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and body == "1":
                term = mono
            elif mono:
                term = f"{body}*{mono}"
            else:
                term = body
            terms.append((sign, term))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, term in terms[1:]:
            out += sign + term
        return out


def _numeric_roots(p):
    # Companion-matrix eigenvalues (numpy.roots).  No Newton polishing: it
    # improves each root's residual on its own but breaks the correlated
    # errors that keep prod(x - r_i) backward stable for clustered roots.
    c = as_numeric(p.coeffs)
    if len(c) < 2:
        return []
    return [complex(r) for r in np.roots(c[::-1])]


def _cluster(rs, tol):
    """Group roots into (mean, multiplicity) by single-linkage within ``tol``."""
    rs = list(rs)
    parent = list(range(len(rs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(rs)):
        for j in range(i + 1, len(rs)):
            if abs(rs[i] - rs[j]) <= tol * max(1.0, abs(rs[i]), abs(rs[j])):
                parent[find(i)] = find(j)
    groups = {}
    for i, r in enumerate(rs):
        groups.setdefault(find(i), []).append(r)
    out = []
    for members in groups.values():
        mean = complex(np.mean(members))
        if abs(mean.imag) <= 1e-12 * max(1.0, abs(mean)):
            mean = complex(mean.real, 0.0)
        out.append((mean, len(members)))
    return sorted(out, key=lambda rm: (rm[0].real, rm[0].imag))


def distinct_roots(p, tol=ROOT_CLUSTER_TOL):
    """Sorted ``(root, multiplicity)`` pairs of a nonzero polynomial.

    Multiplicities come from a squarefree factorisation of the coefficients
    taken as exact rationals (every float is one), so repeated roots that the
    coefficients represent exactly are found regardless of how far apart the
    floating point root finder scatters them.  Roots of the squarefree factors
    are then merged only if they lie within ``tol`` of each other.
    """
    if p.is_zero:
        raise ZeroPolynomial("the zero polynomial has every scalar as a root")
    if np.iscomplexobj(p.coeffs) or not np.all(np.isfinite(as_numeric(p.coeffs))):
        return _cluster(_numeric_roots(p), tol)
    out = []
    for factor, k in _yun(Polynomial(p.coeffs, exact=True)):
        for r, m in _cluster(_numeric_roots(factor), tol):
            out.append((r, k * m))
    return _cluster_weighted(out, tol)


def _yun(p):
    """Squarefree factorisation ``p ~ prod f_k^k`` over Q (Yun's algorithm)."""
    out = []
    a = p.monic()
    if a.degree == 0:
        return out
    b = a.derivative()
    c = a.gcd(b)
    w = a.divmod(c)[0]
    k = 1
    while w.degree > 0:
        y = w.gcd(c)
        z = w.divmod(y)[0]
        if z.degree > 0:
            out.append((z, k))
        w, c = y, c.divmod(y)[0]
        k += 1
    return out


def _cluster_weighted(pairs, tol):
    # Factors are coprime, but their float roots may still land within tol.
    merged = []
    for r, m in sorted(pairs, key=lambda rm: (rm[0].real, rm[0].imag)):
        for i, (s, k) in enumerate(merged):
            if abs(r - s) <= tol * max(1.0, abs(r), abs(s)):
                merged[i] = ((s * k + r * m) / (k + m), k + m)
                break
        else:
            merged.append((r, m))
    return sorted(merged, key=lambda rm: (rm[0].real, rm[0].imag))


def roots(p, tol=ROOT_CLUSTER_TOL):
    """All complex roots with multiplicity, canonically sorted by (re, im)."""
    out = []
    for r, m in distinct_roots(p, tol):
        out.extend([r] * m)
    return out


def real_roots(p, tol=1e-9):
    """Roots whose imaginary part is below ``tol`` (relative), as floats."""
    return [r.real for r in roots(p) if abs(r.imag) <= tol * max(1.0, abs(r))]


def same_root_set(p, q, tol=ROOT_CLUSTER_TOL):
    """True when ``p`` and ``q`` have the same roots, ignoring multiplicity."""
    if p.exact and q.exact:
        return p.squarefree_part() == q.squarefree_part()
    a = [r for r, _ in distinct_roots(p, tol)]
    b = [r for r, _ in distinct_roots(q, tol)]
    if len(a) != len(b):
        return False

    def covered(xs, ys):
        return all(any(abs(x - y) <= tol * max(1.0, abs(x)) for y in ys) for x in xs)

    return covered(a, b) and covered(b, a)


class SuperPolynomial:
    """Tuple ``(f1 | ... | fn)`` of polynomials applied blockwise."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(p if isinstance(p, Polynomial) else Polynomial(p) for p in parts)
        if not parts:
            raise ComponentCountMismatch("a super polynomial needs at least one part")
        object.__setattr__(self, "parts", parts)

    def __setattr__(self, name, value):
        raise AttributeError("SuperPolynomial is immutable")

    @classmethod
    def constant(cls, c, n, *, exact=False):
        return cls([Polynomial([c], exact=exact)] * n)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    @property
    def degrees(self):
        return tuple(p.degree for p in self.parts)

    def is_super_monic(self, tol=1e-9):
        return all(p.is_monic(tol) for p in self.parts)

    def __add__(self, other):
        return sp_add(self, other)

    def __mul__(self, other):
        return sp_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return self.parts == other.parts

    __hash__ = None

    def __repr__(self):
        return f"SuperPolynomial({self})"

    def __str__(self):
        return " | ".join(str(p) for p in self.parts)


def _pair(f, g):
    if len(f) != len(g):
        raise ComponentCountMismatch(f"{len(f)} parts vs {len(g)} parts")
    return zip(f.parts, g.parts)


def sp_add(f, g):
    return SuperPolynomial([a + b for a, b in _pair(f, g)])


def sp_mul(f, g):
    return SuperPolynomial([a * b for a, b in _pair(f, g)])


def sp_eval_scalar(f, c):
    c = tuple(c)
    if len(c) != len(f):
        raise ComponentCountMismatch(f"{len(f)} parts evaluated at {len(c)} scalars")
    return SuperScalar(p(x) for p, x in zip(f.parts, c))


def sp_eval_operator(f, a):
    """``(f1(A1) | ... | fn(An))`` for a super diagonal matrix with square blocks."""
    if len(f) != a.n_blocks:
        raise ComponentCountMismatch(f"{len(f)} parts for {a.n_blocks} blocks")
    for i, b in enumerate(a.blocks):
        if b.shape[0] != b.shape[1]:
            raise NonSquareBlock(i, b.shape)
    return SuperDiagonalMatrix([p.eval_matrix(b) for p, b in zip(f.parts, a.blocks)])


def sp_roots(f, tol=ROOT_CLUSTER_TOL):
    return [roots(p, tol) for p in f.parts]
