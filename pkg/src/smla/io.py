"""JSON readers and writers for super objects and models.

Formats::

    supermatrix     {"row_partition": [...], "col_partition": [...], "data": [[...], ...]}
    super diagonal  {"blocks": [{"rows": m, "cols": n, "data": [[...]]}, ...]}
    map             super diagonal plus optional "domain" / "codomain" partitions
    super vector    {"partition": [...], "entries": [...]}
    vector list     {"vectors": [<super vector>, ...]}
    Markov chain    {"kind": "markov-row" | "markov-diagonal", "blocks": [[[...]]], "x0": [[...]]}
    Leontief        {"kind": "leontief-closed", "variant": ..., "A": [[[...]]]}
                    {"kind": "leontief-open", "variant": ..., "C": [[[...]]], "d": [[...]]}

Scalars may be JSON numbers, rational strings such as ``"1/3"`` or complex
strings such as ``"1+2j"``.  Every loader reports the offending field (as a
path like ``blocks[1].data``) or, for syntax errors, the line and column.
"""

import json
from fractions import Fraction

import numpy as np

from ._numeric import as_exact, as_numeric, jsonable
from .core import PartitionSpec, SuperDiagonalMatrix, SuperMatrix, SuperVector
from .errors import FileFormatError, InputError, InvalidModel
from .models import DistributionSuperVector, LeontiefModel, MarkovSuperChain
from .operator import SuperLinearMap

__all__ = [
    "parse_json",
    "read_json",
    "load_supermatrix",
    "load_super_diagonal",
    "load_map",
    "load_super_vector",
    "load_vectors",
    "load_markov",
    "load_leontief",
    "load_any",
    "dump",
    "to_obj",
]


def parse_json(text, source="<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(
            f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FileFormatError(f"{path}: cannot read file ({exc.strerror})") from None
    return parse_json(text, str(path))


def _need(obj, key, path):
    if not isinstance(obj, dict):
        raise FileFormatError(f"{path}: expected an object")
    if key not in obj:
        raise FileFormatError(f"{path}: missing field '{key}'")
    return obj[key]


def _scalar(x, path):
    if isinstance(x, bool) or x is None:
        raise FileFormatError(f"{path}: expected a number, got {json.dumps(x)}")
    if isinstance(x, (int, float)):
        if isinstance(x, float) and not np.isfinite(x):
            raise FileFormatError(f"{path}: non-finite number")
        return x
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            pass
        try:
            return complex(x.replace(" ", ""))
        except ValueError:
            raise FileFormatError(f"{path}: cannot read {x!r} as a number") from None
    raise FileFormatError(f"{path}: expected a number, got {type(x).__name__}")


def _finish(values, exact):
    # exact=None: rational strings mixed only with integers stay exact.
    obj = np.array(values, dtype=object)
    if exact is None:
        exact = any(isinstance(v, Fraction) for v in obj.flat) and not any(
            isinstance(v, (float, complex)) for v in obj.flat)
    if exact:
        try:
            return as_exact(obj)
        except TypeError as exc:
            raise FileFormatError(f"rational mode: {exc}") from None
    return as_numeric(obj)


def _matrix(rows, path, exact):
    if not isinstance(rows, list) or not rows:
        raise FileFormatError(f"{path}: expected a non-empty list of rows")
    width = None
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise FileFormatError(f"{path}[{i}]: expected a list of numbers")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise FileFormatError(f"{path}[{i}]: row has {len(row)} entries, expected {width}")
        out.append([_scalar(x, f"{path}[{i}][{j}]") for j, x in enumerate(row)])
    if width == 0:
        raise FileFormatError(f"{path}: rows are empty")
    return _finish(out, exact)


def _vector(vals, path, exact):
    if not isinstance(vals, list) or not vals:
        raise FileFormatError(f"{path}: expected a non-empty list of numbers")
    return _finish([_scalar(x, f"{path}[{i}]") for i, x in enumerate(vals)], exact)


def _partition(obj, path):
    if not isinstance(obj, list) or not all(isinstance(n, int) and not isinstance(n, bool)
                                            for n in obj):
        raise FileFormatError(f"{path}: expected a list of positive integers")
    try:
        return PartitionSpec.coerce(obj)
    except InputError as exc:
        raise FileFormatError(f"{path}: {exc}") from None


def load_supermatrix(obj, exact=None, path="$"):
    data = _matrix(_need(obj, "data", path), f"{path}.data", exact)
    rp = _partition(_need(obj, "row_partition", path), f"{path}.row_partition")
    cp = _partition(_need(obj, "col_partition", path), f"{path}.col_partition")
    try:
        return SuperMatrix(data, rp, cp)
    except InputError as exc:
        raise FileFormatError(f"{path}: {exc}") from None


def load_super_diagonal(obj, exact=None, path="$"):
    blocks = _need(obj, "blocks", path)
    if not isinstance(blocks, list) or not blocks:
        raise FileFormatError(f"{path}.blocks: expected a non-empty list")
    arrs = []
    for i, b in enumerate(blocks):
        bp = f"{path}.blocks[{i}]"
        if isinstance(b, list):
            arr = _matrix(b, bp, exact)
        else:
            arr = _matrix(_need(b, "data", bp), f"{bp}.data", exact)
            for key, axis in (("rows", 0), ("cols", 1)):
                if key in b and b[key] != arr.shape[axis]:
                    raise FileFormatError(
                        f"{bp}.{key}: declared {b[key]} but data has {arr.shape[axis]}")
        arrs.append(arr)
    if exact is None and any(a.dtype == object for a in arrs) and not all(
            a.dtype == object for a in arrs):
        arrs = [as_numeric(a) for a in arrs]
    return SuperDiagonalMatrix(arrs)


def load_map(obj, exact=None, path="$"):
    m = load_super_diagonal(obj, exact, path)
    for key, actual in (("domain", m.col_partition), ("codomain", m.row_partition)):
        if isinstance(obj, dict) and key in obj:
            want = _partition(obj[key], f"{path}.{key}")
            if want != actual:
                raise FileFormatError(
                    f"{path}.{key}: declared {list(want)} but blocks give {list(actual)}")
    return SuperLinearMap(m)


def load_super_vector(obj, exact=None, path="$"):
    entries = _vector(_need(obj, "entries", path), f"{path}.entries", exact)
    part = _partition(_need(obj, "partition", path), f"{path}.partition")
    try:
        return SuperVector(entries, part)
    except InputError as exc:
        raise FileFormatError(f"{path}: {exc}") from None


def load_vectors(obj, exact=None, path="$"):
    vs = _need(obj, "vectors", path) if isinstance(obj, dict) else obj
    if not isinstance(vs, list) or not vs:
        raise FileFormatError(f"{path}.vectors: expected a non-empty list")
    return [load_super_vector(v, exact, f"{path}.vectors[{i}]") for i, v in enumerate(vs)]


def _kind(obj, path, family):
    kind = _need(obj, "kind", path)
    if not isinstance(kind, str) or not kind.startswith(family + "-"):
        raise FileFormatError(f"{path}.kind: expected a {family} model, got {kind!r}")
    return kind.split("-", 1)[1]


def _float_blocks(obj, key, path):
    blocks = _need(obj, key, path)
    if not isinstance(blocks, list) or not blocks:
        raise FileFormatError(f"{path}.{key}: expected a non-empty list of matrices")
    return [as_numeric(_matrix(b, f"{path}.{key}[{i}]", False)) for i, b in enumerate(blocks)]


def load_markov(obj, path="$"):
    """Chain and initial distribution (``None`` when the file has no ``x0``)."""
    kind = _kind(obj, path, "markov")
    ps = _float_blocks(obj, "blocks", path)
    try:
        chain = MarkovSuperChain(ps, kind=kind, labels=obj.get("labels"))
        x0 = None
        if "x0" in obj:
            xs = obj["x0"]
            if not isinstance(xs, list):
                raise FileFormatError(f"{path}.x0: expected a list of vectors")
            x0 = DistributionSuperVector(
                [as_numeric(_vector(x, f"{path}.x0[{i}]", False)) for i, x in enumerate(xs)])
    except InvalidModel as exc:
        raise InvalidModel(f"{path}.{exc}") from None
    return chain, x0


def load_leontief(obj, path="$", relaxed=None):
    kind = _kind(obj, path, "leontief")
    if kind not in ("closed", "open"):
        raise FileFormatError(f"{path}.kind: expected leontief-closed or leontief-open")
    variant = obj.get("variant", "row")
    if relaxed is None:
        relaxed = bool(obj.get("relaxed", False))
    try:
        if kind == "closed":
            key = "A" if "A" in obj else "blocks"
            return LeontiefModel("closed", _float_blocks(obj, key, path), variant=variant,
                                 relaxed=relaxed)
        cs = _float_blocks(obj, "C", path)
        ds = _need(obj, "d", path)
        if not isinstance(ds, list):
            raise FileFormatError(f"{path}.d: expected a list of vectors")
        ds = [as_numeric(_vector(d, f"{path}.d[{i}]", False)) for i, d in enumerate(ds)]
        return LeontiefModel("open", cs, ds, variant=variant)
    except InvalidModel as exc:
        raise InvalidModel(f"{path}.{exc}") from None


def load_any(obj, exact=None):
    """Dispatch on the shape of a decoded document."""
    if isinstance(obj, dict):
        kind = obj.get("kind", "")
        if isinstance(kind, str) and kind.startswith("markov"):
            return load_markov(obj)
        if isinstance(kind, str) and kind.startswith("leontief"):
            return load_leontief(obj)
        if "vectors" in obj:
            return load_vectors(obj, exact)
        if "entries" in obj:
            return load_super_vector(obj, exact)
        if "row_partition" in obj:
            return load_supermatrix(obj, exact)
        if "blocks" in obj:
            return load_super_diagonal(obj, exact)
    raise FileFormatError("$: unrecognised document")


def _grid(a):
    return [[jsonable(x) for x in row] for row in np.asarray(a)]


def to_obj(x):
    """Plain JSON-ready structure for a super object (inverse of the loaders)."""
    if isinstance(x, SuperLinearMap):
        out = to_obj(x.matrix)
        out["domain"] = list(x.domain_partition)
        out["codomain"] = list(x.codomain_partition)
        return out
    if isinstance(x, SuperDiagonalMatrix):
        return {"blocks": [{"rows": b.shape[0], "cols": b.shape[1], "data": _grid(b)}
                           for b in x.blocks]}
    if isinstance(x, SuperMatrix):
        return {"row_partition": list(x.row_partition), "col_partition": list(x.col_partition),
                "data": _grid(x.data)}
    if isinstance(x, SuperVector):
        return {"partition": list(x.partition), "entries": [jsonable(v) for v in x.entries]}
    raise TypeError(f"cannot serialise {type(x).__name__}")


def dump(x, **kw):
    return json.dumps(to_obj(x), **kw)
