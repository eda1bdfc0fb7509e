"""Numba-compiled kernels; see _kernels_py for the reference semantics.

Import fails cleanly when numba is unavailable; backend.py falls back to the
pure twins.  All arithmetic is int64 and must match the fallback bit for bit.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def inv_mod(x, p):
    x = x % p
    result = 1
    base = x
    e = p - 2
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


@njit(cache=True)
def poly_val(a):
    for i in range(a.shape[0]):
        if a[i] != 0:
            return i
    return a.shape[0]


@njit(cache=True)
def poly_mul(a, b, p):
    n = a.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        if a[i] == 0:
            continue
        ai = a[i]
        for j in range(n - i):
            if b[j] != 0:
                out[i + j] = (out[i + j] + ai * b[j]) % p
    return out


@njit(cache=True)
def poly_inv(a, p):
    n = a.shape[0]
    out = np.zeros(n, dtype=np.int64)
    c0 = inv_mod(a[0], p)
    out[0] = c0
    for k in range(1, n):
        s = 0
        for i in range(1, k + 1):
            s = (s + a[i] * out[k - i]) % p
        out[k] = (-s * c0) % p
    return out


@njit(cache=True)
def poly_shift(a, k):
    n = a.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for i in range(n - k):
        out[i + k] = a[i]
    return out


@njit(cache=True)
def poly_shift_right(a, k):
    n = a.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for i in range(k, n):
        out[i - k] = a[i]
    return out


@njit(cache=True)
def elem_mul(x, y, stc, p):
    n = x.shape[1]
    out = np.zeros((3, n), dtype=np.int64)
    for i in range(3):
        xi_zero = True
        for q in range(n):
            if x[i, q] != 0:
                xi_zero = False
                break
        if xi_zero:
            continue
        for j in range(3):
            yj_zero = True
            for q in range(n):
                if y[j, q] != 0:
                    yj_zero = False
                    break
            if yj_zero:
                continue
            c = poly_mul(x[i], y[j], p)
            for k in range(3):
                s_zero = True
                for q in range(n):
                    if stc[i, j, k, q] != 0:
                        s_zero = False
                        break
                if s_zero:
                    continue
                term = poly_mul(c, stc[i, j, k], p)
                for q in range(n):
                    out[k, q] = (out[k, q] + term[q]) % p
    return out


@njit(cache=True)
def hnf_reduce(gens, p):
    m = gens.shape[0]
    n = gens.shape[2]
    work = np.empty((m, 3, n), dtype=np.int64)
    for c in range(m):
        for r in range(3):
            for q in range(n):
                work[c, r, q] = gens[c, r, q] % p
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
            if poly_val(work[c, row]) >= n:
                continue
            q = poly_shift_right(work[c, row], d)
            for r2 in range(row, 3):
                term = poly_mul(q, work[best, r2], p)
                for qq in range(n):
                    work[c, r2, qq] = (work[c, r2, qq] - term[qq]) % p
    H = np.zeros((3, 3, n), dtype=np.int64)
    for j in range(3):
        for r in range(3):
            for q in range(n):
                H[r, j, q] = work[order[j], r, q]
    for i in range(1, 3):
        d = poly_val(H[i, i])
        for j in range(i):
            q = poly_shift_right(H[i, j], d)
            for r2 in range(i, 3):
                term = poly_mul(q, H[r2, i], p)
                for qq in range(n):
                    H[r2, j, qq] = (H[r2, j, qq] - term[qq]) % p
    return H, 3


@njit(cache=True)
def hnf_residue(H, v, p):
    n = v.shape[1]
    r = np.empty((3, n), dtype=np.int64)
    for i in range(3):
        for q in range(n):
            r[i, q] = v[i, q] % p
    for i in range(3):
        d = poly_val(H[i, i])
        if d >= n:
            continue
        q = poly_shift_right(r[i], d)
        for r2 in range(i, 3):
            term = poly_mul(q, H[r2, i], p)
            for qq in range(n):
                r[r2, qq] = (r[r2, qq] - term[qq]) % p
    return r


@njit(cache=True)
def hnf_solve(H, v, p):
    n = v.shape[1]
    r = np.empty((3, n), dtype=np.int64)
    for i in range(3):
        for q in range(n):
            r[i, q] = v[i, q] % p
    c = np.zeros((3, n), dtype=np.int64)
    for i in range(3):
        d = poly_val(H[i, i])
        if poly_val(r[i]) < d:
            return c, 0
        q = poly_shift_right(r[i], d)
        c[i] = q
        for r2 in range(i, 3):
            term = poly_mul(q, H[r2, i], p)
            for qq in range(n):
                r[r2, qq] = (r[r2, qq] - term[qq]) % p
    for i in range(3):
        for q in range(n):
            if r[i, q] != 0:
                return c, 0
    return c, 1


@njit(cache=True)
def rref_mod_p(mat, p):
    rows, cols = mat.shape
    R = np.empty((rows, cols), dtype=np.int64)
    for i in range(rows):
        for j in range(cols):
            R[i, j] = mat[i, j] % p
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
            for j in range(cols):
                tmp = R[sel, j]
                R[sel, j] = R[rank, j]
                R[rank, j] = tmp
        inv = inv_mod(R[rank, col], p)
        for j in range(cols):
            R[rank, j] = (R[rank, j] * inv) % p
        for r in range(rows):
            if r != rank and R[r, col] != 0:
                f = R[r, col]
                for j in range(cols):
                    R[r, j] = (R[r, j] - f * R[rank, j]) % p
        piv[rank] = col
        rank += 1
        if rank == rows:
            break
    return R, piv, rank
