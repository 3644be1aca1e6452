# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled twins of the loops in ``_pykernels``; same signatures, same results."""

from libc.stdlib cimport malloc, free

from . import _pykernels

# products of two residues must fit in a signed 64-bit word
cdef long long SMALL = 2147483648


cdef inline long long _pmod(long long x, long long m):
    x %= m
    return x + m if x < 0 else x


def fq_conv(a, b, Py_ssize_t nout, long long order, zech):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, jmax
    cdef long long x, y, prod, acc, z
    cdef long long *A = <long long *> malloc(max(la, 1) * sizeof(long long))
    cdef long long *B = <long long *> malloc(max(lb, 1) * sizeof(long long))
    cdef long long *Z = <long long *> malloc(max(order, 1) * sizeof(long long))
    cdef long long *out = <long long *> malloc(max(nout, 1) * sizeof(long long))
    try:
        for i in range(la):
            A[i] = a[i]
        for i in range(lb):
            B[i] = b[i]
        for i in range(order):
            Z[i] = zech[i]
        for i in range(nout):
            out[i] = 0
        for i in range(min(la, nout)):
            x = A[i]
            if x == 0:
                continue
            jmax = min(lb, nout - i)
            for j in range(jmax):
                y = B[j]
                if y == 0:
                    continue
                prod = 1 + (x + y - 2) % order
                acc = out[i + j]
                if acc == 0:
                    out[i + j] = prod
                else:
                    z = Z[_pmod(prod - acc, order)]
                    out[i + j] = 0 if z < 0 else 1 + (acc - 1 + z) % order
        return [out[i] for i in range(nout)]
    finally:
        free(A)
        free(B)
        free(Z)
        free(out)


def fq_inverse(u, Py_ssize_t n, long long order, zech, long long neg_shift):
    cdef Py_ssize_t lu = len(u), m, k
    cdef long long x, y, prod, acc, z, b0, nb0
    cdef long long *U = <long long *> malloc(max(lu, 1) * sizeof(long long))
    cdef long long *Z = <long long *> malloc(max(order, 1) * sizeof(long long))
    cdef long long *b = <long long *> malloc(max(n, 1) * sizeof(long long))
    try:
        for k in range(lu):
            U[k] = u[k]
        for k in range(order):
            Z[k] = zech[k]
        b0 = 1 + _pmod(-(U[0] - 1), order)
        nb0 = b0 if neg_shift == 0 else 1 + (b0 - 1 + neg_shift) % order
        for k in range(n):
            b[k] = 0
        b[0] = b0
        for m in range(1, n):
            acc = 0
            for k in range(1, min(m, lu - 1) + 1):
                x = U[k]
                y = b[m - k]
                if x == 0 or y == 0:
                    continue
                prod = 1 + (x + y - 2) % order
                if acc == 0:
                    acc = prod
                else:
                    z = Z[_pmod(prod - acc, order)]
                    acc = 0 if z < 0 else 1 + (acc - 1 + z) % order
            b[m] = 0 if acc == 0 else 1 + (acc + nb0 - 2) % order
        return [b[k] for k in range(n)]
    finally:
        free(U)
        free(Z)
        free(b)


def zq_conv(a, b, Py_ssize_t nout, int N0, fmod, long long mod):
    if mod >= SMALL:
        return _pykernels.zq_conv(a, b, nout, N0, fmod, mod)
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, s, r, d, width = 2 * N0 - 1
    cdef long long c, xs
    cdef long long *A = <long long *> malloc(max(la, 1) * N0 * sizeof(long long))
    cdef long long *B = <long long *> malloc(max(lb, 1) * N0 * sizeof(long long))
    cdef long long *F = <long long *> malloc(N0 * sizeof(long long))
    cdef long long *raw = <long long *> malloc(max(nout, 1) * width * sizeof(long long))
    cdef long long *row
    try:
        for i in range(la):
            for s in range(N0):
                A[i * N0 + s] = a[i][s]
        for i in range(lb):
            for s in range(N0):
                B[i * N0 + s] = b[i][s]
        for s in range(N0):
            F[s] = _pmod(fmod[s], mod)
        for i in range(nout * width):
            raw[i] = 0
        for i in range(min(la, nout)):
            for j in range(min(lb, nout - i)):
                row = raw + (i + j) * width
                for s in range(N0):
                    xs = A[i * N0 + s]
                    if xs:
                        for r in range(N0):
                            row[s + r] = (row[s + r] + xs * B[j * N0 + r]) % mod
        out = []
        for i in range(nout):
            row = raw + i * width
            for d in range(width - 1, N0 - 1, -1):
                c = row[d]
                if c:
                    for s in range(N0):
                        row[d - N0 + s] = _pmod(row[d - N0 + s] - c * F[s], mod)
            out.append(tuple([_pmod(row[s], mod) for s in range(N0)]))
        return out
    finally:
        free(A)
        free(B)
        free(F)
        free(raw)


cdef int _val(long long x, long long p):
    cdef int k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


cdef long long _inv_mod(long long x, long long mod):
    # extended Euclid; x is a unit modulo mod
    cdef long long r0 = mod, r1 = _pmod(x, mod), s0 = 0, s1 = 1, q, t
    while r1:
        q = r0 // r1
        t = r0 - q * r1
        r0 = r1
        r1 = t
        t = s0 - q * s1
        s0 = s1
        s1 = t
    return _pmod(s0, mod)


def howell_rows(rows, Py_ssize_t ncols, long long p, int M):
    cdef long long mod = p ** M
    if mod >= SMALL:
        return _pykernels.howell_rows(rows, ncols, p, M)
    work = [list(r) for r in rows if any(r)]
    basis = {}
    while work:
        _insert(basis, work.pop(), ncols, p, mod, work)
    return _finalize(basis, ncols, p, mod)


cdef _insert(dict basis, list r0, Py_ssize_t ncols, long long p, long long mod, list work):
    cdef Py_ssize_t col = 0, i
    cdef long long x, unit, uinv, f, ann, pp
    cdef int v, pv
    cdef long long[:] r
    cdef long long[:] piv
    buf = [0] * ncols
    import array
    ra = array.array("q", r0)
    r = ra
    while True:
        while col < ncols and r[col] == 0:
            col += 1
        if col == ncols:
            return
        x = r[col]
        v = _val(x, p)
        pp = p ** v
        unit = x // pp
        pivrow = basis.get(col)
        if pivrow is None:
            uinv = _inv_mod(unit, mod)
            for i in range(ncols):
                r[i] = (uinv * r[i]) % mod
            basis[col] = ra
            if v > 0:
                ann = mod // pp
                work.append([(ann * r[i]) % mod for i in range(ncols)])
            return
        piv = pivrow
        pv = _val(piv[col], p)
        if v >= pv:
            f = x // piv[col]
            for i in range(ncols):
                r[i] = _pmod(r[i] - f * piv[i], mod)
            continue
        uinv = _inv_mod(unit, mod)
        for i in range(ncols):
            r[i] = (uinv * r[i]) % mod
        basis[col] = ra
        ann = mod // pp
        work.append([(ann * r[i]) % mod for i in range(ncols)])
        work.append(list(pivrow))
        return


cdef _finalize(dict basis, Py_ssize_t ncols, long long p, long long mod):
    cdef Py_ssize_t idx, i, c, c2
    cdef long long x, f
    cdef long long[:] row
    cdef long long[:] above
    cols = sorted(basis)
    for idx in range(len(cols)):
        c = cols[idx]
        row = basis[c]
        for c2 in cols[:idx]:
            above = basis[c2]
            x = above[c]
            if x:
                f = x // row[c]
                for i in range(ncols):
                    above[i] = _pmod(above[i] - f * row[i], mod)
    return [list(basis[c]) for c in cols]


def reduce_vector(basis_rows, pivots, vec, long long p, long long mod):
    if mod >= SMALL:
        return _pykernels.reduce_vector(basis_rows, pivots, vec, p, mod)
    cdef Py_ssize_t n = len(vec), i, c
    cdef long long x, pv, f
    r = list(vec)
    for row, c in zip(basis_rows, pivots):
        x = r[c]
        if x:
            pv = row[c]
            if x % pv:
                continue
            f = x // pv
            for i in range(n):
                r[i] = _pmod(r[i] - f * row[i], mod)
    return r


def reduce_many(basis_rows, pivots, vecs, long long p, long long mod):
    if mod >= SMALL:
        return _pykernels.reduce_many(basis_rows, pivots, vecs, p, mod)
    cdef Py_ssize_t nr = len(basis_rows), n, i, k
    if not vecs:
        return []
    n = len(vecs[0])
    cdef long long x, pv, f
    cdef long long *R = <long long *> malloc(max(nr * n, 1) * sizeof(long long))
    cdef long long *P = <long long *> malloc(max(nr, 1) * sizeof(long long))
    cdef long long *r = <long long *> malloc(max(n, 1) * sizeof(long long))
    try:
        for k in range(nr):
            row = basis_rows[k]
            for i in range(n):
                R[k * n + i] = row[i]
            P[k] = pivots[k]
        out = []
        for vec in vecs:
            for i in range(n):
                r[i] = _pmod(vec[i], mod)
            for k in range(nr):
                x = r[P[k]]
                if x:
                    pv = R[k * n + P[k]]
                    if x % pv:
                        continue
                    f = x // pv
                    for i in range(n):
                        r[i] = _pmod(r[i] - f * R[k * n + i], mod)
            out.append([r[i] for i in range(n)])
        return out
    finally:
        free(R)
        free(P)
        free(r)
