"""Compiled rank kernels over the integers and over Z/p.

``bareiss_rank`` runs fraction-free elimination in int64 with a magnitude
guard: whenever any entry of the remaining submatrix reaches 2**30 it
raises OverflowError so the caller can redo the computation with Python's
arbitrary-precision integers.  Below the guard, the update
``(piv*a - b*c) / prev`` stays within int64 (|piv*a - b*c| < 2**61).

Both kernels mutate the array they are given; callers pass fresh copies.
"""


cdef long long _modinv(long long a, long long p):
    cdef long long t = 0, newt = 1, r = p, newr = a % p, q, tmp
    if newr < 0:
        newr += p
    while newr != 0:
        q = r / newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def bareiss_rank(long long[:, ::1] m):
    """Rank over Q of an int64 matrix, by Bareiss fraction-free elimination
    with full pivoting on the entry of least magnitude."""
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    cdef Py_ssize_t r = 0, i, j, pi, pj
    cdef long long prev = 1, piv, best, v, fr
    cdef long long guard = <long long> 1 << 30
    while r < rows and r < cols:
        best = 0
        pi = -1
        pj = -1
        for i in range(r, rows):
            for j in range(r, cols):
                v = m[i, j]
                if v < 0:
                    v = -v
                if v >= guard:
                    raise OverflowError("bareiss magnitude guard")
                if v != 0 and (pi < 0 or v < best):
                    best = v
                    pi = i
                    pj = j
        if pi < 0:
            break
        if pi != r:
            for j in range(cols):
                v = m[r, j]
                m[r, j] = m[pi, j]
                m[pi, j] = v
        if pj != r:
            for i in range(rows):
                v = m[i, r]
                m[i, r] = m[i, pj]
                m[i, pj] = v
        piv = m[r, r]
        for i in range(r + 1, rows):
            fr = m[i, r]
            for j in range(r + 1, cols):
                m[i, j] = (piv * m[i, j] - fr * m[r, j]) // prev
            m[i, r] = 0
        prev = piv
        r += 1
    return r


def rank_mod_p(long long[:, ::1] m, long long p):
    """Rank of a matrix over Z/p (p an odd-or-2 prime below 2**31)."""
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    cdef Py_ssize_t r = 0, c = 0, i, j, pi
    cdef long long v, inv, f
    for i in range(rows):
        for j in range(cols):
            v = m[i, j] % p
            if v < 0:
                v += p
            m[i, j] = v
    while r < rows and c < cols:
        pi = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                pi = i
                break
        if pi < 0:
            c += 1
            continue
        if pi != r:
            for j in range(cols):
                v = m[r, j]
                m[r, j] = m[pi, j]
                m[pi, j] = v
        inv = _modinv(m[r, c], p)
        for j in range(c, cols):
            m[r, j] = (m[r, j] * inv) % p
        for i in range(r + 1, rows):
            f = m[i, c]
            if f != 0:
                for j in range(c, cols):
                    v = (m[i, j] - f * m[r, j]) % p
                    if v < 0:
                        v += p
                    m[i, j] = v
        r += 1
        c += 1
    return r
