"""Pure-Python kernels: pruned DFS over admissible words, cyclic window
tallies, and bulk exact orbit solving.

These are the reference semantics for the compiled extension in
``_core.pyx``; the two lanes must produce identical results wherever both
run. Words are handled as dense symbol codes 0..2M-1 (left brackets first).
"""

from __future__ import annotations

from math import gcd
from typing import Iterator, Sequence

from ..errors import ConstraintViolationError

CLASS_ALL = 0
CLASS_ALPHA = 1
CLASS_BETA = 2
CLASS_ZERO = 3

BACKEND = "pure"


def _scan_prefix(M: int, prefix: Sequence[int]):
    """Reduce ``prefix``; returns (stack, unmatched_rights, height) or None."""
    stack: list[int] = []
    beta: list[int] = []
    h = 0
    for c in prefix:
        if c < M:
            stack.append(c)
            h += 1
        else:
            h -= 1
            k = c - M
            if stack:
                if stack.pop() != k:
                    return None
            else:
                beta.append(k)
    return stack, beta, h


def _junction_ok(stack: list[int], beta: list[int]) -> bool:
    q = len(stack)
    for i in range(min(q, len(beta))):
        if stack[q - 1 - i] != beta[i]:
            return False
    return True


def _cls_match(cls: int, h: int) -> bool:
    if cls == CLASS_ALL:
        return True
    if cls == CLASS_ALPHA:
        return h > 0
    if cls == CLASS_BETA:
        return h < 0
    return h == 0


def class_counts(M: int, n: int, prefix: Sequence[int] = ()) -> tuple[int, int, int]:
    """Counts of admissible length-n words extending ``prefix``, split as
    (alpha, beta, zero)."""
    state = _scan_prefix(M, prefix)
    if state is None:
        return (0, 0, 0)
    stack, beta, h0 = state
    counts = [0, 0, 0]

    def rec(depth: int, h: int) -> None:
        if depth == n:
            if _junction_ok(stack, beta):
                counts[0 if h > 0 else 1 if h < 0 else 2] += 1
            return
        for k in range(M):
            stack.append(k)
            rec(depth + 1, h + 1)
            stack.pop()
        if stack:
            k = stack.pop()
            rec(depth + 1, h - 1)
            stack.append(k)
        else:
            for k in range(M):
                beta.append(k)
                rec(depth + 1, h - 1)
                beta.pop()

    rec(len(prefix), h0)
    return tuple(counts)


def count_class(M: int, n: int, cls: int, prefix: Sequence[int] = ()) -> int:
    a, b, z = class_counts(M, n, prefix)
    return {CLASS_ALL: a + b + z, CLASS_ALPHA: a, CLASS_BETA: b, CLASS_ZERO: z}[cls]


def iter_codes(
    M: int, n: int, cls: int, prefix: Sequence[int] = ()
) -> Iterator[tuple[int, ...]]:
    """Admissible length-n words of the class, in lexicographic order."""
    state = _scan_prefix(M, prefix)
    if state is None:
        return
    stack, beta, h0 = state
    word = list(prefix)

    def rec(depth: int, h: int) -> Iterator[tuple[int, ...]]:
        if depth == n:
            if _cls_match(cls, h) and _junction_ok(stack, beta):
                yield tuple(word)
            return
        for k in range(M):
            stack.append(k)
            word.append(k)
            yield from rec(depth + 1, h + 1)
            word.pop()
            stack.pop()
        if stack:
            k = stack.pop()
            word.append(M + k)
            yield from rec(depth + 1, h - 1)
            word.pop()
            stack.append(k)
        else:
            for k in range(M):
                beta.append(k)
                word.append(M + k)
                yield from rec(depth + 1, h - 1)
                word.pop()
                beta.pop()

    yield from rec(len(prefix), h0)


def cylinder_counts(
    M: int, n: int, cls: int, m: int, prefix: Sequence[int] = ()
) -> tuple[list[int], int]:
    """Cyclic length-m window tallies over the class ensemble.

    Returns (counts, words) where counts[code] sums, over every admissible
    word of the class, the number of cyclic start positions whose window
    spells the length-m word with that code (first symbol most
    significant). The total of counts is n * words.
    """
    width = 2 * M
    table = [0] * width**m
    words = 0
    for codes in iter_codes(M, n, cls, prefix):
        words += 1
        doubled = codes + codes
        for s in range(n):
            code = 0
            for j in range(s, s + m):
                code = code * width + doubled[j]
            table[code] += 1
    return table, words


def _rred(num: int, den: int) -> tuple[int, int]:
    if den < 0:
        num, den = -num, -den
    g = gcd(num, den)
    return (num // g, den // g) if g > 1 else (num, den)


def _rmul(a, b):
    return _rred(a[0] * b[0], a[1] * b[1])


def _raffine(s, k, x):
    # s*x + k
    return _rred(s[0] * x[0] * k[1] + k[0] * s[1] * x[1], s[1] * x[1] * k[1])


def _rcmp(a, b) -> int:
    d = a[0] * b[1] - b[0] * a[1]
    return (d > 0) - (d < 0)


def _to_float(a) -> float:
    try:
        return float(a[0]) / float(a[1])
    except OverflowError:
        return a[0] / a[1]


def step_tables(M: int, a: tuple[int, int], b: tuple[int, int] | None):
    """Per-symbol affine data: (slope, intercept) per coordinate and the
    closed tile bounds, all as reduced integer pairs."""
    ap, aq = _rred(*a)
    one = (1, 1)
    zero = (0, 1)
    steps = []
    for c in range(2 * M):
        if c < M:
            su, cu = _rred(aq, ap), (-c, 1)
            sc, cc = (1, M), _rred(c, M)
            xu_lo, xu_hi = _rred(c * ap, aq), _rred((c + 1) * ap, aq)
            xc_lo, xc_hi = zero, one
            if b is not None:
                bp, bq = _rred(*b)
                ss, cs = _rred(bq - M * bp, bq), zero
        else:
            k = c - M + 1
            su = _rred(aq, aq - M * ap)
            cu = _rred(-M * ap, aq - M * ap)
            sc, cc = (M, 1), (-(k - 1), 1)
            xu_lo, xu_hi = _rred(M * ap, aq), one
            xc_lo, xc_hi = _rred(k - 1, M), _rred(k, M)
            if b is not None:
                bp, bq = _rred(*b)
                ss = (bp, bq)
                cs = _rred(bq + bp * (k - M - 1), bq)
        if b is None:
            ss = cs = None
        steps.append((su, cu, sc, cc, ss, cs, xu_lo, xu_hi, xc_lo, xc_hi))
    return steps


def _check_tile(step, xu, xc, xs) -> tuple[bool, bool]:
    _, _, _, _, _, _, xu_lo, xu_hi, xc_lo, xc_hi = step
    one = (1, 1)
    zero = (0, 1)
    closed = (
        _rcmp(xu, xu_lo) >= 0
        and _rcmp(xu, xu_hi) <= 0
        and _rcmp(xc, xc_lo) >= 0
        and _rcmp(xc, xc_hi) <= 0
    )
    interior = (
        _rcmp(xu, xu_lo) > 0
        and _rcmp(xu, xu_hi) < 0
        and _rcmp(xc, xc_lo) > 0
        and _rcmp(xc, xc_hi) < 0
    )
    if xs is not None:
        closed = closed and _rcmp(xs, zero) >= 0 and _rcmp(xs, one) <= 0
        interior = interior and _rcmp(xs, zero) > 0 and _rcmp(xs, one) < 0
    return closed, interior


def solve_codes(codes: Sequence[int], steps) -> tuple:
    """Exact fixed point of the affine composition along ``codes``.

    Returns (xu, xc, xs, interior) with coordinates as reduced integer
    pairs (xs None in 2D mode). Raises ConstraintViolationError when some
    iterate steps outside its closed tile.
    """
    with_xs = steps[0][4] is not None
    su, cu = (1, 1), (0, 1)
    sc, cc = (1, 1), (0, 1)
    ss, cs = (1, 1), (0, 1)
    for c in codes:
        st = steps[c]
        su, cu = _rmul(st[0], su), _raffine(st[0], st[1], cu)
        sc, cc = _rmul(st[2], sc), _raffine(st[2], st[3], cc)
        if with_xs:
            ss, cs = _rmul(st[4], ss), _raffine(st[4], st[5], cs)

    def fixed(s, c):
        return _rred(c[0] * s[1], c[1] * (s[1] - s[0]))

    xu, xc = fixed(su, cu), fixed(sc, cc)
    xs = fixed(ss, cs) if with_xs else None
    interior = True
    pu, pc, ps = xu, xc, xs
    for c in codes:
        st = steps[c]
        ok, inner = _check_tile(st, pu, pc, ps)
        if not ok:
            raise ConstraintViolationError(
                f"iterate left its closed tile at symbol code {c}"
            )
        interior = interior and inner
        pu = _raffine(st[0], st[1], pu)
        pc = _raffine(st[2], st[3], pc)
        if with_xs:
            ps = _raffine(st[4], st[5], ps)
    return xu, xc, xs, interior


def scatter_solve(
    M: int,
    n: int,
    cls: int,
    a: tuple[int, int],
    b: tuple[int, int] | None,
    prefix: Sequence[int] = (),
):
    """Solve every admissible word of the class; float coordinates.

    Returns (xu, xc, xs, interior) as lists; xs is None in 2D mode. Floats
    are computed as float(num)/float(den) of the reduced exact value, which
    matches the compiled lane bit for bit.
    """
    steps = step_tables(M, a, b)
    xus: list[float] = []
    xcs: list[float] = []
    xss: list[float] | None = [] if b is not None else None
    interior: list[bool] = []
    for codes in iter_codes(M, n, cls, prefix):
        if cls == CLASS_ALL and sum(1 if c < M else -1 for c in codes) == 0:
            continue  # center multiplier 1, no isolated fixed point
        xu, xc, xs, inner = solve_codes(codes, steps)
        xus.append(_to_float(xu))
        xcs.append(_to_float(xc))
        if xss is not None:
            xss.append(_to_float(xs))
        interior.append(inner)
    return xus, xcs, xss, interior
