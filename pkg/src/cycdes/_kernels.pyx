# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch kernels.  Same API and results as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint8_t, uint64_t

cnp.import_array()

BACKEND = "cython"


def permutations_array(int n):
    cdef Py_ssize_t total = 1
    cdef int i, j, k
    cdef uint8_t tmp
    for i in range(2, n + 1):
        total *= i
    out = np.empty((total, n), dtype=np.uint8)
    if n == 0:
        return out
    cdef uint8_t[:, ::1] o = out
    cdef uint8_t cur[64]
    for i in range(n):
        cur[i] = i + 1
    cdef Py_ssize_t r
    for r in range(total):
        for i in range(n):
            o[r, i] = cur[i]
        # next permutation in lexicographic order
        i = n - 2
        while i >= 0 and cur[i] > cur[i + 1]:
            i -= 1
        if i < 0:
            break
        j = n - 1
        while cur[j] < cur[i]:
            j -= 1
        tmp = cur[i]; cur[i] = cur[j]; cur[j] = tmp
        j = i + 1
        k = n - 1
        while j < k:
            tmp = cur[j]; cur[j] = cur[k]; cur[k] = tmp
            j += 1
            k -= 1
    return out


def des_masks(P):
    cdef const uint8_t[:, ::1] p = np.ascontiguousarray(P, dtype=np.uint8)
    cdef Py_ssize_t rows = p.shape[0], r
    cdef int n = p.shape[1], i
    out = np.zeros(rows, dtype=np.uint64)
    cdef uint64_t[::1] o = out
    cdef uint64_t m
    for r in range(rows):
        m = 0
        for i in range(n - 1):
            if p[r, i] > p[r, i + 1]:
                m |= (<uint64_t>1) << i
        o[r] = m
    return out


def cdes_masks(P):
    cdef const uint8_t[:, ::1] p = np.ascontiguousarray(P, dtype=np.uint8)
    cdef Py_ssize_t rows = p.shape[0], r
    cdef int n = p.shape[1], i
    if n < 2:
        raise ValueError("cyclic descents need n >= 2")
    out = np.zeros(rows, dtype=np.uint64)
    cdef uint64_t[::1] o = out
    cdef uint64_t m
    for r in range(rows):
        m = 0
        for i in range(n - 1):
            if p[r, i] > p[r, i + 1]:
                m |= (<uint64_t>1) << i
        if p[r, n - 1] > p[r, 0]:
            m |= (<uint64_t>1) << (n - 1)
        o[r] = m
    return out


def inverse_rows(P):
    cdef const uint8_t[:, ::1] p = np.ascontiguousarray(P, dtype=np.uint8)
    cdef Py_ssize_t rows = p.shape[0], r
    cdef int n = p.shape[1], i
    out = np.empty((rows, n), dtype=np.uint8)
    cdef uint8_t[:, ::1] o = out
    for r in range(rows):
        for i in range(n):
            o[r, p[r, i] - 1] = i + 1
    return out


def arc_flags(P):
    cdef const uint8_t[:, ::1] p = np.ascontiguousarray(P, dtype=np.uint8)
    cdef Py_ssize_t rows = p.shape[0], r
    cdef int n = p.shape[1], i, v, left, right, blocks
    cdef uint8_t seen[66]
    out = np.ones(rows, dtype=bool)
    cdef cnp.npy_bool[::1] o = out
    if n <= 3:
        return out
    for r in range(rows):
        for i in range(n + 2):
            seen[i] = 0
        blocks = 0
        for i in range(n - 1):
            v = p[r, i]
            left = n if v == 1 else v - 1
            right = 1 if v == n else v + 1
            blocks += 1 - seen[left] - seen[right]
            seen[v] = 1
            if blocks != 1:
                o[r] = 0
                break
    return out


cdef bint _contains(const uint8_t* word, int n, const uint8_t* pat, int k):
    # Depth-first search over increasing index tuples with an explicit stack.
    cdef int idx[8]
    cdef int depth = 0, i, d
    cdef bint ok
    idx[0] = -1
    while depth >= 0:
        idx[depth] += 1
        if idx[depth] > n - (k - depth):
            depth -= 1
            continue
        i = idx[depth]
        ok = True
        for d in range(depth):
            if (pat[d] < pat[depth]) != (word[idx[d]] < word[i]):
                ok = False
                break
        if not ok:
            continue
        if depth == k - 1:
            return True
        depth += 1
        idx[depth] = i
    return False


def avoids_flags(P, patterns):
    cdef const uint8_t[:, ::1] p = np.ascontiguousarray(P, dtype=np.uint8)
    cdef const uint8_t[:, ::1] pats = np.ascontiguousarray(
        np.asarray(patterns, dtype=np.uint8).reshape(len(patterns), -1))
    cdef Py_ssize_t rows = p.shape[0], r
    cdef int n = p.shape[1], k = pats.shape[1], q, npat = pats.shape[0]
    if k > 8:
        raise ValueError("patterns longer than 8 are not supported")
    out = np.ones(rows, dtype=bool)
    cdef cnp.npy_bool[::1] o = out
    for r in range(rows):
        for q in range(npat):
            if _contains(&p[r, 0], n, &pats[q, 0], k):
                o[r] = 0
                break
    return out


cdef void _word_f(const uint8_t* w, int n, uint8_t* out):
    cdef int i, j, q, ones, twos
    cdef uint8_t fixed[256]
    for i in range(n):
        fixed[i] = 0
        out[i] = w[i]
    for i in range(n - 1):
        if w[i] == 2 and w[i + 1] == 1:
            fixed[i] = 1
            fixed[i + 1] = 1
    i = 0
    while i < n:
        if fixed[i]:
            i += 1
            continue
        j = i
        ones = 0
        while j < n and not fixed[j]:
            if w[j] == 1:
                ones += 1
            j += 1
        twos = (j - i) - ones
        for q in range(i, i + twos):
            out[q] = 1
        for q in range(i + twos, j):
            out[q] = 2
        i = j


def word_f(w):
    cdef const uint8_t[::1] a = np.ascontiguousarray(w, dtype=np.uint8)
    cdef int n = a.shape[0]
    if n > 256:
        raise ValueError("words longer than 256 are not supported")
    out = np.empty(n, dtype=np.uint8)
    cdef uint8_t[::1] o = out
    if n:
        _word_f(&a[0], n, &o[0])
    return [int(x) for x in out]


cdef void _apply_adjacent(uint8_t* w, int n, int j, uint8_t* sub, uint8_t* fsub, int* idx):
    cdef int i, m = 0
    for i in range(n):
        if w[i] == j or w[i] == j + 1:
            idx[m] = i
            sub[m] = 1 if w[i] == j else 2
            m += 1
    _word_f(sub, m, fsub)
    for i in range(m):
        w[idx[i]] = j if fsub[i] == 1 else j + 1


def apply_adjacent(w, int j):
    cdef uint8_t[::1] a = np.array(w, dtype=np.uint8)
    cdef int n = a.shape[0]
    cdef uint8_t sub[256]
    cdef uint8_t fsub[256]
    cdef int idx[256]
    if n > 256:
        raise ValueError("words longer than 256 are not supported")
    if n:
        _apply_adjacent(&a[0], n, j, sub, fsub, idx)
    return [int(x) for x in a]


def multi_shuffle_rows(W, steps):
    out = np.array(W, dtype=np.uint8, copy=True, order="C")
    cdef uint8_t[:, ::1] o = out
    cdef Py_ssize_t rows = o.shape[0], r
    cdef int n = o.shape[1], s
    cdef int[::1] st = np.ascontiguousarray(steps, dtype=np.intc)
    cdef int nsteps = st.shape[0]
    cdef uint8_t sub[256]
    cdef uint8_t fsub[256]
    cdef int idx[256]
    if n > 256:
        raise ValueError("words longer than 256 are not supported")
    if n == 0:
        return out
    for r in range(rows):
        for s in range(nsteps):
            _apply_adjacent(&o[r, 0], n, st[s], sub, fsub, idx)
    return out
