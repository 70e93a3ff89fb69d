"""Scalar helpers shared by the float and exact-rational code paths."""

from fractions import Fraction
from numbers import Rational

import numpy as np

DEFAULT_TOL = 1e-9


def is_exact(a):
    """True when ``a`` holds :class:`~fractions.Fraction` entries (object dtype)."""
    return isinstance(a, np.ndarray) and a.dtype == object


def to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (complex, np.complexfloating)):
        if x.imag != 0:
            raise TypeError("exact mode supports rational scalars only")
        x = x.real
    if isinstance(x, (np.integer,)):
        return Fraction(int(x))
    return Fraction(float(x))


def as_exact(a):
    """Object array of Fractions with the shape of ``a``."""
    arr = np.asarray(a, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = to_fraction(x)
    return out


def as_numeric(a):
    """Coerce to a float or complex ndarray; Fractions become floats."""
    if isinstance(a, np.ndarray) and a.dtype != object:
        if np.issubdtype(a.dtype, np.complexfloating):
            return a.astype(complex)
        return a.astype(float)
    arr = np.asarray(a, dtype=object)
    if arr.size and any(isinstance(x, (complex, np.complexfloating))
                        for x in arr.flat):
        return arr.astype(complex)
    out = np.empty(arr.shape, dtype=float)
    for idx, x in np.ndenumerate(arr):
        out[idx] = float(Fraction(x)) if isinstance(x, str) else float(x)
    return out


def coerce_array(a, exact=None):
    """Array in the requested arithmetic; ``exact=None`` keeps the input's mode."""
    if exact is None:
        arr = np.asarray(a, dtype=object) if not isinstance(a, np.ndarray) else a
        if arr.dtype == object and arr.size and all(
                isinstance(x, (Fraction, int, np.integer)) for x in arr.flat) and any(
                isinstance(x, Fraction) for x in arr.flat):
            return as_exact(arr)
        return as_numeric(a)
    return as_exact(a) if exact else as_numeric(a)


def frozen(a):
    arr = np.array(a, copy=True)
    arr.flags.writeable = False
    return arr


def identity_like(n, exact):
    if exact:
        eye = np.empty((n, n), dtype=object)
        eye[...] = Fraction(0)
        for i in range(n):
            eye[i, i] = Fraction(1)
        return eye
    return np.eye(n)


def zeros_like_mode(shape, exact):
    if exact:
        z = np.empty(shape, dtype=object)
        z[...] = Fraction(0)
        return z
    return np.zeros(shape)


def max_abs(a):
    """Largest entry magnitude; zero for empty arrays. Exact for Fractions."""
    a = np.asarray(a)
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(x) for x in a.flat)
    return float(np.max(np.abs(a)))


def format_scalar(x, digits=12):
    """Render a scalar with ``digits`` significant digits; ``-0`` becomes ``0``."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, (complex, np.complexfloating)):
        re, im = float(x.real), float(x.imag)
        if im == 0:
            return format_scalar(re, digits)
        im_s = format_scalar(abs(im), digits)
        if re == 0:
            return ("-" if im < 0 else "") + im_s + "j"
        return f"{format_scalar(re, digits)}{'-' if im < 0 else '+'}{im_s}j"
    s = f"{float(x):.{digits}g}"
    return "0" if s in ("-0", "0", "-0.0") else s


def jsonable(x):
    """Plain-JSON form of a scalar (Fractions become strings like ``"1/3"``)."""
    if isinstance(x, Fraction):
        return format_scalar(x) if x.denominator != 1 else int(x.numerator)
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)] if x.imag != 0 else float(x.real)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        v = float(x)
        return 0.0 if v == 0 else v
    return x
