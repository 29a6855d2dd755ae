# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the hot loops: pruned DFS over admissible words,
cyclic window tallies, and bulk exact orbit solving with 64-bit rationals.

Reference semantics live in pure.py; the two lanes must agree bit for bit
wherever this one does not raise OverflowError.
"""

from ..errors import ConstraintViolationError

BACKEND = "cython"

CLASS_ALL = 0
CLASS_ALPHA = 1
CLASS_BETA = 2
CLASS_ZERO = 3

cdef enum:
    MAXN = 96
    MAXSYM = 32  # 2*M

cdef extern from *:
    ctypedef long long i128 "__int128"

cdef long long I64MAX = 0x7FFFFFFFFFFFFFFF


cdef struct Rat:
    long long num
    long long den


cdef inline i128 _gcd128(i128 a, i128 b) noexcept:
    cdef i128 t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b != 0:
        t = a % b
        a = b
        b = t
    return a


cdef Rat _rred(i128 num, i128 den) except *:
    cdef i128 g
    cdef Rat r
    if den == 0:
        raise ZeroDivisionError("rational with zero denominator")
    if den < 0:
        num = -num
        den = -den
    g = _gcd128(num, den)
    if g > 1:
        num = num / g
        den = den / g
    if num > <i128> I64MAX or num < -<i128> I64MAX or den > <i128> I64MAX:
        raise OverflowError("rational exceeds the 64-bit kernel range")
    r.num = <long long> num
    r.den = <long long> den
    return r


cdef inline Rat _rmul(Rat a, Rat b) except *:
    return _rred(<i128> a.num * b.num, <i128> a.den * b.den)


cdef inline Rat _radd(Rat a, Rat b) except *:
    return _rred(<i128> a.num * b.den + <i128> b.num * a.den,
                 <i128> a.den * b.den)


cdef inline int _rsign(Rat a, Rat b) noexcept:
    # sign of a - b
    cdef i128 d = <i128> a.num * b.den - <i128> b.num * a.den
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


cdef int _scan_prefix(int M, const unsigned char[::1] prefix,
                      int* stack, int* beta, int* sp, int* bp, int* h) noexcept:
    cdef int i, c, k
    sp[0] = 0
    bp[0] = 0
    h[0] = 0
    for i in range(prefix.shape[0]):
        c = prefix[i]
        if c < M:
            stack[sp[0]] = c
            sp[0] += 1
            h[0] += 1
        else:
            k = c - M
            h[0] -= 1
            if sp[0] > 0:
                sp[0] -= 1
                if stack[sp[0]] != k:
                    return 0
            else:
                beta[bp[0]] = k
                bp[0] += 1
    return 1


cdef inline int _cls_match(int cls, int h) noexcept:
    if cls == CLASS_ALL:
        return 1
    if cls == CLASS_ALPHA:
        return h > 0
    if cls == CLASS_BETA:
        return h < 0
    return h == 0


cdef void _check_dims(int M, int n) except *:
    if M < 1 or 2 * M > MAXSYM:
        raise OverflowError("M outside compiled kernel range")
    if n < 1 or n > MAXN:
        raise OverflowError("n outside compiled kernel range")


# Shared iterative DFS. mode 0: class counts; mode 1: cylinder tally;
# mode 2: materialize words. Branching at each node is the M left-bracket
# pushes plus either the single matching pop (stack nonempty) or all M
# unmatched right brackets (stack empty); mismatched pops never enter the
# tree, which is the zero-is-absorbing pruning.
cdef long long _dfs_tally(int M, int n, int cls, int mode, int m,
                          const unsigned char[::1] prefix,
                          long long* counts3,
                          long long[::1] table,
                          unsigned char[:, ::1] words_out) except -1:
    cdef int stack[MAXN]
    cdef int beta[MAXN]
    cdef unsigned char word[2 * MAXN]
    cdef int nextc[MAXN + 1]
    cdef unsigned char popped[MAXN]
    cdef int sp, bp, h, depth, d0, c, k, q, t, i, s, ok, width
    cdef long long idx = 0, code
    cdef unsigned char wd

    _check_dims(M, n)
    width = 2 * M
    d0 = prefix.shape[0]
    if d0 > n:
        raise ValueError("prefix longer than the word length")
    if not _scan_prefix(M, prefix, stack, beta, &sp, &bp, &h):
        return 0
    for i in range(d0):
        word[i] = prefix[i]
        word[i + n] = prefix[i]

    depth = d0
    nextc[depth] = 0
    while True:
        if depth == n:
            ok = 1
            q = sp
            t = bp if bp < q else q
            for i in range(t):
                if stack[q - 1 - i] != beta[i]:
                    ok = 0
                    break
            if ok:
                if mode == 0:
                    if h > 0:
                        counts3[0] += 1
                    elif h < 0:
                        counts3[1] += 1
                    else:
                        counts3[2] += 1
                elif _cls_match(cls, h):
                    if mode == 1:
                        for s in range(n):
                            code = 0
                            for i in range(m):
                                code = code * width + word[s + i]
                            table[code] += 1
                        idx += 1
                    else:
                        for i in range(n):
                            words_out[idx, i] = word[i]
                        idx += 1
            depth -= 1
            if depth < d0:
                break
            wd = word[depth]
            if wd < M:
                sp -= 1
                h -= 1
            else:
                h += 1
                if popped[depth]:
                    stack[sp] = wd - M
                    sp += 1
                else:
                    bp -= 1
            continue
        c = nextc[depth]
        if c >= M:
            if c < width and sp > 0:
                k = M + stack[sp - 1]
                c = k if k >= c else width
        if c >= width:
            depth -= 1
            if depth < d0:
                break
            wd = word[depth]
            if wd < M:
                sp -= 1
                h -= 1
            else:
                h += 1
                if popped[depth]:
                    stack[sp] = wd - M
                    sp += 1
                else:
                    bp -= 1
            continue
        nextc[depth] = c + 1
        word[depth] = c
        word[depth + n] = c
        if c < M:
            stack[sp] = c
            sp += 1
            h += 1
        else:
            h -= 1
            if sp > 0:
                sp -= 1
                popped[depth] = 1
            else:
                beta[bp] = c - M
                bp += 1
                popped[depth] = 0
        depth += 1
        nextc[depth] = 0
    if mode == 0:
        return counts3[0] + counts3[1] + counts3[2]
    return idx


def class_counts(int M, int n, prefix_codes=()):
    cdef bytes pb = bytes(bytearray(prefix_codes))
    cdef long long counts3[3]
    counts3[0] = counts3[1] = counts3[2] = 0
    _dfs_tally(M, n, CLASS_ALL, 0, 0, pb, counts3, None, None)
    return (counts3[0], counts3[1], counts3[2])


def count_class(int M, int n, int cls, prefix_codes=()):
    a, b, z = class_counts(M, n, prefix_codes)
    if cls == CLASS_ALL:
        return a + b + z
    if cls == CLASS_ALPHA:
        return a
    if cls == CLASS_BETA:
        return b
    return z


def cylinder_fill(int M, int n, int cls, int m, prefix_codes,
                  long long[::1] table):
    """Add cyclic window tallies into ``table``; returns the word count."""
    cdef bytes pb = bytes(bytearray(prefix_codes))
    if m < 1 or m > n:
        raise ValueError("window length must be in 1..n")
    if table.shape[0] != (2 * M) ** m:
        raise ValueError("tally table has the wrong size")
    return _dfs_tally(M, n, cls, 1, m, pb, NULL, table, None)


def word_fill(int M, int n, int cls, prefix_codes,
              unsigned char[:, ::1] out):
    """Fill ``out`` with the admissible words in order; returns the count."""
    cdef bytes pb = bytes(bytearray(prefix_codes))
    if out.shape[1] != n:
        raise ValueError("output row width must equal n")
    return _dfs_tally(M, n, cls, 2, 0, pb, NULL, None, out)


cdef long long _dfs_scatter(int M, int n, int cls,
                            const unsigned char[::1] prefix,
                            Rat* SU, Rat* CU, Rat* SC, Rat* CC,
                            Rat* SS, Rat* CS,
                            Rat* XULO, Rat* XUHI, Rat* XCLO, Rat* XCHI,
                            int with_xs,
                            double[::1] xu_out, double[::1] xc_out,
                            double[::1] xs_out,
                            unsigned char[::1] interior_out) except -1:
    cdef int stack[MAXN]
    cdef int beta[MAXN]
    cdef unsigned char word[2 * MAXN]
    cdef int nextc[MAXN + 1]
    cdef unsigned char popped[MAXN]
    cdef int sp, bp, h, depth, d0, c, k, q, t, i, ok, width, inner
    cdef long long idx = 0
    cdef unsigned char wd
    cdef Rat su, cu, sc, cc, ss, cs, xu, xc, xs, pu, pc, ps, one, zero

    one.num = 1
    one.den = 1
    zero.num = 0
    zero.den = 1
    xs = zero

    _check_dims(M, n)
    width = 2 * M
    d0 = prefix.shape[0]
    if d0 > n:
        raise ValueError("prefix longer than the word length")
    if not _scan_prefix(M, prefix, stack, beta, &sp, &bp, &h):
        return 0
    for i in range(d0):
        word[i] = prefix[i]
        word[i + n] = prefix[i]

    depth = d0
    nextc[depth] = 0
    while True:
        if depth == n:
            ok = 1
            q = sp
            t = bp if bp < q else q
            for i in range(t):
                if stack[q - 1 - i] != beta[i]:
                    ok = 0
                    break
            if ok and ((cls == CLASS_ALPHA and h > 0) or
                       (cls == CLASS_BETA and h < 0)):
                su = one
                cu = zero
                sc = one
                cc = zero
                ss = one
                cs = zero
                for i in range(n):
                    wd = word[i]
                    cu = _radd(_rmul(SU[wd], cu), CU[wd])
                    su = _rmul(SU[wd], su)
                    cc = _radd(_rmul(SC[wd], cc), CC[wd])
                    sc = _rmul(SC[wd], sc)
                    if with_xs:
                        cs = _radd(_rmul(SS[wd], cs), CS[wd])
                        ss = _rmul(SS[wd], ss)
                xu = _rred(<i128> cu.num * su.den,
                           <i128> cu.den * (su.den - su.num))
                xc = _rred(<i128> cc.num * sc.den,
                           <i128> cc.den * (sc.den - sc.num))
                if with_xs:
                    xs = _rred(<i128> cs.num * ss.den,
                               <i128> cs.den * (ss.den - ss.num))
                inner = 1
                pu = xu
                pc = xc
                ps = xs
                for i in range(n):
                    wd = word[i]
                    if (_rsign(pu, XULO[wd]) < 0 or _rsign(pu, XUHI[wd]) > 0 or
                            _rsign(pc, XCLO[wd]) < 0 or _rsign(pc, XCHI[wd]) > 0):
                        raise ConstraintViolationError(
                            "iterate left its closed tile")
                    if (_rsign(pu, XULO[wd]) <= 0 or _rsign(pu, XUHI[wd]) >= 0 or
                            _rsign(pc, XCLO[wd]) <= 0 or _rsign(pc, XCHI[wd]) >= 0):
                        inner = 0
                    if with_xs:
                        if _rsign(ps, zero) < 0 or _rsign(ps, one) > 0:
                            raise ConstraintViolationError(
                                "iterate left the unit interval")
                        if _rsign(ps, zero) <= 0 or _rsign(ps, one) >= 0:
                            inner = 0
                    pu = _radd(_rmul(SU[wd], pu), CU[wd])
                    pc = _radd(_rmul(SC[wd], pc), CC[wd])
                    if with_xs:
                        ps = _radd(_rmul(SS[wd], ps), CS[wd])
                xu_out[idx] = <double> xu.num / <double> xu.den
                xc_out[idx] = <double> xc.num / <double> xc.den
                if with_xs:
                    xs_out[idx] = <double> xs.num / <double> xs.den
                interior_out[idx] = inner
                idx += 1
            depth -= 1
            if depth < d0:
                break
            wd = word[depth]
            if wd < M:
                sp -= 1
                h -= 1
            else:
                h += 1
                if popped[depth]:
                    stack[sp] = wd - M
                    sp += 1
                else:
                    bp -= 1
            continue
        c = nextc[depth]
        if c >= M:
            if c < width and sp > 0:
                k = M + stack[sp - 1]
                c = k if k >= c else width
        if c >= width:
            depth -= 1
            if depth < d0:
                break
            wd = word[depth]
            if wd < M:
                sp -= 1
                h -= 1
            else:
                h += 1
                if popped[depth]:
                    stack[sp] = wd - M
                    sp += 1
                else:
                    bp -= 1
            continue
        nextc[depth] = c + 1
        word[depth] = c
        word[depth + n] = c
        if c < M:
            stack[sp] = c
            sp += 1
            h += 1
        else:
            h -= 1
            if sp > 0:
                sp -= 1
                popped[depth] = 1
            else:
                beta[bp] = c - M
                bp += 1
                popped[depth] = 0
        depth += 1
        nextc[depth] = 0
    return idx


def scatter_fill(int M, int n, int cls, long long ap, long long aq,
                 long long bp, long long bq, int with_xs, prefix_codes,
                 double[::1] xu_out, double[::1] xc_out, double[::1] xs_out,
                 unsigned char[::1] interior_out):
    """Solve every admissible word of the class into the output buffers.

    Returns the number of points written. Raises OverflowError when exact
    values leave the 64-bit range (callers fall back to the pure lane).
    """
    cdef bytes pbytes = bytes(bytearray(prefix_codes))
    cdef Rat SU[MAXSYM]
    cdef Rat CU[MAXSYM]
    cdef Rat SC[MAXSYM]
    cdef Rat CC[MAXSYM]
    cdef Rat SS[MAXSYM]
    cdef Rat CS[MAXSYM]
    cdef Rat XULO[MAXSYM]
    cdef Rat XUHI[MAXSYM]
    cdef Rat XCLO[MAXSYM]
    cdef Rat XCHI[MAXSYM]
    cdef int c, k

    _check_dims(M, n)
    if cls != CLASS_ALPHA and cls != CLASS_BETA:
        raise ValueError("scatter classes are alpha and beta only")
    if ap <= 0 or aq <= 0 or M * ap >= aq:
        raise ValueError("need 0 < a < 1/M")
    if with_xs and (bp <= 0 or bq <= 0 or M * bp >= bq):
        raise ValueError("need 0 < b < 1/M")
    for c in range(2 * M):
        if c < M:
            SU[c] = _rred(aq, ap)
            CU[c] = _rred(-c, 1)
            SC[c] = _rred(1, M)
            CC[c] = _rred(c, M)
            XULO[c] = _rred(<i128> c * ap, aq)
            XUHI[c] = _rred(<i128> (c + 1) * ap, aq)
            XCLO[c] = _rred(0, 1)
            XCHI[c] = _rred(1, 1)
            if with_xs:
                SS[c] = _rred(bq - <i128> M * bp, bq)
                CS[c] = _rred(0, 1)
        else:
            k = c - M + 1
            SU[c] = _rred(aq, aq - <i128> M * ap)
            CU[c] = _rred(-<i128> M * ap, aq - <i128> M * ap)
            SC[c] = _rred(M, 1)
            CC[c] = _rred(-(k - 1), 1)
            XULO[c] = _rred(<i128> M * ap, aq)
            XUHI[c] = _rred(1, 1)
            XCLO[c] = _rred(k - 1, M)
            XCHI[c] = _rred(k, M)
            if with_xs:
                SS[c] = _rred(bp, bq)
                CS[c] = _rred(bq + <i128> bp * (k - M - 1), bq)
    return _dfs_scatter(M, n, cls, pbytes, SU, CU, SC, CC, SS, CS,
                        XULO, XUHI, XCLO, XCHI, with_xs,
                        xu_out, xc_out, xs_out, interior_out)
