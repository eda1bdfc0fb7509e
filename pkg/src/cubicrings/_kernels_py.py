"""Pure numpy/python kernels: the fallback twins of _kernels_numba.

Every function here has an identical-signature, identical-semantics compiled
twin; results must match bit for bit (integer arithmetic only).

Conventions: a truncated series is an int64 array of length N holding the
coefficients of 1, t, ..., t^(N-1), each reduced into [0, p).  A lattice is a
(3, 3, N) array H with H[i, j] the series in row i of column j; columns
generate, column j has its pivot t^(d_j) in row j.
"""

from __future__ import annotations

import numpy as np


def inv_mod(x: int, p: int) -> int:
    return pow(int(x) % p, p - 2, p)


def poly_val(a) -> int:
    """Index of the first nonzero coefficient; len(a) when a = 0."""
    nz = np.nonzero(a)[0]
    return int(nz[0]) if nz.size else a.shape[0]


def poly_mul(a, b, p):
    n = a.shape[0]
    return np.convolve(a, b)[:n] % p


def poly_inv(a, p):
    """Inverse of a unit series (a[0] != 0), by back-substitution."""
    n = a.shape[0]
    out = np.zeros(n, dtype=np.int64)
    c0 = inv_mod(int(a[0]), p)
    out[0] = c0
    for k in range(1, n):
        s = 0
        for i in range(1, k + 1):
            s += int(a[i]) * int(out[k - i])
        out[k] = (-s * c0) % p
    return out


def poly_shift(a, k):
    """Multiply by t^k (k >= 0), truncating at t^N."""
    n = a.shape[0]
    out = np.zeros(n, dtype=np.int64)
    if k < n:
        out[k:] = a[: n - k]
    return out


def poly_shift_right(a, k):
    """Exact division by t^k: keep coefficients of t^k and above."""
    n = a.shape[0]
    out = np.zeros(n, dtype=np.int64)
    out[: n - k] = a[k:]
    return out


def elem_mul(x, y, stc, p):
    """Product of algebra elements x, y (3,N) via structure constants (3,3,3,N).

    stc[i][j][k] is the coefficient series of basis element k in b_i * b_j.
    """
    n = x.shape[1]
    out = np.zeros((3, n), dtype=np.int64)
    for i in range(3):
        if not x[i].any():
            continue
        for j in range(3):
            if not y[j].any():
                continue
            c = poly_mul(x[i], y[j], p)
            for k in range(3):
                s = stc[i, j, k]
                if s.any():
                    out[k] = (out[k] + poly_mul(c, s, p)) % p
    return out


def hnf_reduce(gens, p):
    """Canonical column echelon form of the span of the given columns.

    gens: (m, 3, N) generator columns.  Returns (H, rank) where H is (3,3,N)
    with pivot t^(d_i) at (i, i) and off-pivot row entries reduced modulo the
    pivot of their row.  rank < 3 means the span was degenerate and H is
    meaningless.
    """
    m = gens.shape[0]
    n = gens.shape[2]
    work = gens.astype(np.int64).copy() % p
    used = np.zeros(m, dtype=np.bool_)
    order = np.full(3, -1, dtype=np.int64)
    for row in range(3):
        best = -1
        bestval = n
        for c in range(m):
            if used[c]:
                continue
            v = poly_val(work[c, row])
            if v < bestval:
                bestval = v
                best = c
        if best < 0 or bestval >= n:
            return np.zeros((3, 3, n), dtype=np.int64), row
        used[best] = True
        order[row] = best
        d = bestval
        uinv = poly_inv(poly_shift_right(work[best, row], d), p)
        for r2 in range(row, 3):
            work[best, r2] = poly_mul(work[best, r2], uinv, p)
        for c in range(m):
            if used[c]:
                continue
            e = work[c, row]
            if poly_val(e) >= n:
                continue
            q = poly_shift_right(e, d)
            for r2 in range(row, 3):
                work[c, r2] = (work[c, r2] - poly_mul(q, work[best, r2], p)) % p
    H = np.zeros((3, 3, n), dtype=np.int64)
    for j in range(3):
        H[:, j] = work[order[j]]
    # reduce entries below each pivot row of earlier columns
    for i in range(1, 3):
        d = poly_val(H[i, i])
        for j in range(i):
            q = poly_shift_right(H[i, j], d)
            for r2 in range(i, 3):
                H[r2, j] = (H[r2, j] - poly_mul(q, H[r2, i], p)) % p
    return H, 3


def hnf_residue(H, v, p):
    """Residue of the column vector v (3,N) modulo the span of H's columns.

    Linear in v; the residue is zero exactly when v lies in the lattice.
    """
    n = v.shape[1]
    r = v.astype(np.int64).copy() % p
    for i in range(3):
        d = poly_val(H[i, i])
        if d >= n:
            continue
        q = poly_shift_right(r[i], d)
        for r2 in range(i, 3):
            r[r2] = (r[r2] - poly_mul(q, H[r2, i], p)) % p
    return r


def hnf_solve(H, v, p):
    """Coordinates c with H c = v, assuming v lies in the lattice.

    Coordinates are exact when the pivot shifts stay within precision.
    Returns (c, ok) with ok = 0 when v is not in the lattice.
    """
    n = v.shape[1]
    r = v.astype(np.int64).copy() % p
    c = np.zeros((3, n), dtype=np.int64)
    for i in range(3):
        d = poly_val(H[i, i])
        e = r[i]
        if poly_val(e) < d:
            return c, 0
        q = poly_shift_right(e, d)
        c[i] = q
        for r2 in range(i, 3):
            r[r2] = (r[r2] - poly_mul(q, H[r2, i], p)) % p
    for i in range(3):
        if r[i].any():
            return c, 0
    return c, 1


def rref_mod_p(mat, p):
    """Reduced row echelon form over F_p.  Returns (R, pivot_cols, rank)."""
    R = mat.astype(np.int64).copy() % p
    rows, cols = R.shape
    piv = np.full(cols, -1, dtype=np.int64)
    rank = 0
    for col in range(cols):
        sel = -1
        for r in range(rank, rows):
            if R[r, col] != 0:
                sel = r
                break
        if sel < 0:
            continue
        if sel != rank:
            tmp = R[sel].copy()
            R[sel] = R[rank]
            R[rank] = tmp
        R[rank] = (R[rank] * inv_mod(int(R[rank, col]), p)) % p
        for r in range(rows):
            if r != rank and R[r, col] != 0:
                R[r] = (R[r] - R[r, col] * R[rank]) % p
        piv[rank] = col
        rank += 1
        if rank == rows:
            break
    return R, piv, rank
