"""Pure-Python inner loops.  ``_ckernels.pyx`` mirrors this module exactly."""


def fq_conv(a, b, nout, order, zech):
    """Truncated product of dense F_q arrays in log encoding (0 is zero)."""
    out = [0] * nout
    la = len(a)
    lb = len(b)
    for i in range(min(la, nout)):
        x = a[i]
        if x == 0:
            continue
        jmax = min(lb, nout - i)
        for j in range(jmax):
            y = b[j]
            if y == 0:
                continue
            prod = 1 + (x + y - 2) % order
            k = i + j
            acc = out[k]
            if acc == 0:
                out[k] = prod
            else:
                z = zech[(prod - acc) % order]
                out[k] = 0 if z < 0 else 1 + (acc - 1 + z) % order
    return out


def fq_inverse(u, n, order, zech, neg_shift):
    """First n coefficients of 1/u for a dense F_q array with u[0] != 0."""
    b0 = 1 + (-(u[0] - 1)) % order
    nb0 = b0 if neg_shift == 0 else 1 + (b0 - 1 + neg_shift) % order
    b = [0] * n
    b[0] = b0
    lu = len(u)
    for m in range(1, n):
        acc = 0
        for k in range(1, min(m, lu - 1) + 1):
            x = u[k]
            y = b[m - k]
            if x == 0 or y == 0:
                continue
            prod = 1 + (x + y - 2) % order
            if acc == 0:
                acc = prod
            else:
                z = zech[(prod - acc) % order]
                acc = 0 if z < 0 else 1 + (acc - 1 + z) % order
        b[m] = 0 if acc == 0 else 1 + (acc + nb0 - 2) % order
    return b


def zq_conv(a, b, nout, N0, fmod, mod):
    """Truncated product of dense arrays of W_L(k) elements (N0-tuples)."""
    width = 2 * N0 - 1
    raw = [[0] * width for _ in range(nout)]
    la = len(a)
    lb = len(b)
    for i in range(min(la, nout)):
        x = a[i]
        if not any(x):
            continue
        jmax = min(lb, nout - i)
        for j in range(jmax):
            y = b[j]
            row = raw[i + j]
            for s, xs in enumerate(x):
                if xs:
                    for r, yr in enumerate(y):
                        row[s + r] += xs * yr
    return [_zq_reduce(row, N0, fmod, mod) for row in raw]


def _zq_reduce(row, N0, fmod, mod):
    row = list(row)
    for d in range(len(row) - 1, N0 - 1, -1):
        c = row[d]
        if c:
            base = d - N0
            for i in range(N0):
                row[base + i] -= c * fmod[i]
    return tuple(v % mod for v in row[:N0])


def howell_rows(rows, ncols, p, M):
    """Howell normal form of the row span of ``rows`` over Z/p^M.

    Rows are lists of ints in [0, p^M).  The result lists the nonzero rows
    of the canonical form, pivots strictly increasing, each pivot a power of
    p, entries above a pivot reduced modulo the pivot, and the Howell
    property (every row span element with leading zeros in the first j
    columns is a combination of rows with pivot column >= j) enforced by
    adding p^(M-k) multiples of pivot rows back into the work list.
    """
    mod = p ** M
    work = [list(r) for r in rows if any(r)]
    basis = {}  # pivot column -> row
    # Each row is reduced against the current basis and inserted; the
    # annihilator multiple of each inserted row is queued, which closes the
    # span under the operations the Howell property needs.
    while work:
        r = work.pop()
        _insert(basis, r, ncols, p, mod, work)
    return _finalize(basis, ncols, p, mod)


def _val(x, p):
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


def _insert(basis, r, ncols, p, mod, work):
    col = 0
    while True:
        while col < ncols and r[col] == 0:
            col += 1
        if col == ncols:
            return
        x = r[col]
        v = _val(x, p)
        unit = x // p ** v
        piv = basis.get(col)
        if piv is None:
            # normalize to a p-power pivot
            uinv = pow(unit, -1, mod)
            r = [(uinv * e) % mod for e in r]
            basis[col] = r
            if v > 0:
                ann = mod // p ** v
                work.append([(ann * e) % mod for e in r])
            return
        pv = _val(piv[col], p)
        if v >= pv:
            f = x // piv[col]
            r = [(e - f * g) % mod for e, g in zip(r, piv)]
            continue
        # the new row has the smaller pivot: swap roles
        uinv = pow(unit, -1, mod)
        r = [(uinv * e) % mod for e in r]
        basis[col] = r
        ann = mod // p ** v
        work.append([(ann * e) % mod for e in r])
        work.append(piv)
        return


def _finalize(basis, ncols, p, mod):
    cols = sorted(basis)
    for idx, c in enumerate(cols):
        row = basis[c]
        for c2 in cols[:idx]:
            above = basis[c2]
            x = above[c]
            if x:
                f = x // row[c]
                basis[c2] = [(e - f * g) % mod for e, g in zip(above, row)]
    return [basis[c] for c in cols]


def reduce_vector(basis_rows, pivots, vec, p, mod):
    """Reduce ``vec`` against Howell rows; returns the remainder."""
    r = list(vec)
    for row, c in zip(basis_rows, pivots):
        x = r[c]
        if x:
            pv = row[c]
            if x % pv:
                continue
            f = x // pv
            r = [(e - f * g) % mod for e, g in zip(r, row)]
    return r


def reduce_many(basis_rows, pivots, vecs, p, mod):
    """Remainders of several vectors against the same Howell rows."""
    return [reduce_vector(basis_rows, pivots, v, p, mod) for v in vecs]
