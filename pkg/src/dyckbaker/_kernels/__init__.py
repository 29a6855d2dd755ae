"""Kernel lane selection and array-facing wrappers.

The compiled extension is used when it imported cleanly; set
DYCKBAKER_PURE=1 to force the pure-Python lane. Both lanes implement the
same operations over dense symbol codes and agree bit for bit; the
compiled lane additionally raises OverflowError when exact values leave
its 64-bit range, in which case the wrappers retry on the pure lane.
"""

from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from . import pure
from .pure import CLASS_ALL, CLASS_ALPHA, CLASS_BETA, CLASS_ZERO

if os.environ.get("DYCKBAKER_PURE") == "1":
    _core = None
else:
    try:
        from . import _core  # type: ignore[no-redef]
    except ImportError:
        _core = None


def backend() -> str:
    return "pure" if _core is None else _core.BACKEND


def class_counts(M: int, n: int, prefix: Sequence[int] = ()) -> tuple[int, int, int]:
    if _core is not None:
        try:
            return _core.class_counts(M, n, tuple(prefix))
        except OverflowError:
            pass
    return pure.class_counts(M, n, tuple(prefix))


def count_class(M: int, n: int, cls: int, prefix: Sequence[int] = ()) -> int:
    a, b, z = class_counts(M, n, prefix)
    return {CLASS_ALL: a + b + z, CLASS_ALPHA: a, CLASS_BETA: b, CLASS_ZERO: z}[cls]


def cylinder_counts(
    M: int, n: int, cls: int, m: int, prefix: Sequence[int] = ()
) -> tuple[np.ndarray, int]:
    """(tally, words): tally[code] counts cyclic length-m windows over the
    class ensemble, words is the ensemble size."""
    table = np.zeros((2 * M) ** m, dtype=np.int64)
    if _core is not None:
        try:
            words = _core.cylinder_fill(M, n, cls, m, tuple(prefix), table)
            return table, int(words)
        except OverflowError:
            table[:] = 0
    counts, words = pure.cylinder_counts(M, n, cls, m, tuple(prefix))
    return np.asarray(counts, dtype=np.int64), words


def word_array(M: int, n: int, cls: int, prefix: Sequence[int] = ()) -> np.ndarray:
    """All admissible words of the class as a (count, n) uint8 code array,
    in lexicographic order."""
    if _core is not None:
        try:
            total = _core.count_class(M, n, cls, tuple(prefix))
            out = np.empty((total, n), dtype=np.uint8)
            filled = _core.word_fill(M, n, cls, tuple(prefix), out)
            assert filled == total
            return out
        except OverflowError:
            pass
    rows = list(pure.iter_codes(M, n, cls, tuple(prefix)))
    return np.array(rows, dtype=np.uint8).reshape(len(rows), n)


def scatter_solve(
    M: int,
    n: int,
    cls: int,
    a: tuple[int, int],
    b: tuple[int, int] | None,
    prefix: Sequence[int] = (),
) -> dict:
    """Solve every admissible word of the class into float arrays.

    Returns dict with xu, xc, optional xs (float64) and interior (bool).
    """
    if cls not in (CLASS_ALPHA, CLASS_BETA):
        raise ValueError("scatter classes are alpha and beta only")
    with_xs = b is not None
    if _core is not None:
        try:
            total = _core.count_class(M, n, cls, tuple(prefix))
            xu = np.empty(total, dtype=np.float64)
            xc = np.empty(total, dtype=np.float64)
            xs = np.empty(total if with_xs else 0, dtype=np.float64)
            interior = np.empty(total, dtype=np.uint8)
            bp, bq = b if with_xs else (1, 4 * M)
            filled = _core.scatter_fill(
                M, n, cls, a[0], a[1], bp, bq, int(with_xs), tuple(prefix),
                xu, xc, xs, interior,
            )
            assert filled == total
            return {
                "xu": xu,
                "xc": xc,
                "xs": xs if with_xs else None,
                "interior": interior.astype(bool),
            }
        except OverflowError:
            pass
    xus, xcs, xss, inner = pure.scatter_solve(M, n, cls, a, b, tuple(prefix))
    return {
        "xu": np.asarray(xus, dtype=np.float64),
        "xc": np.asarray(xcs, dtype=np.float64),
        "xs": None if xss is None else np.asarray(xss, dtype=np.float64),
        "interior": np.asarray(inner, dtype=bool),
    }
