"""Pure-Python implementations of the batch kernels.

Every function here has a twin in ``_kernels.pyx`` with the same signature
and results.  Arrays of permutations are C-contiguous ``uint8`` matrices with
one permutation (1-based one-line word) per row.
"""

from itertools import permutations as _permutations

import numpy as np

BACKEND = "python"


def permutations_array(n):
    """All permutations of ``1..n`` in lexicographic order, one per row."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.uint8)
    return np.array(list(_permutations(range(1, n + 1))), dtype=np.uint8).reshape(-1, n)


def des_masks(P):
    P = np.asarray(P, dtype=np.uint8)
    rows, n = P.shape
    out = np.zeros(rows, dtype=np.uint64)
    if n < 2:
        return out
    down = P[:, :-1] > P[:, 1:]
    weights = np.left_shift(np.uint64(1), np.arange(n - 1, dtype=np.uint64))
    return (down.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)


def cdes_masks(P):
    P = np.asarray(P, dtype=np.uint8)
    n = P.shape[1]
    if n < 2:
        raise ValueError("cyclic descents need n >= 2")
    out = des_masks(P)
    wrap = P[:, -1] > P[:, 0]
    out[wrap] |= np.uint64(1) << np.uint64(n - 1)
    return out


def inverse_rows(P):
    P = np.asarray(P, dtype=np.uint8)
    rows, n = P.shape
    out = np.empty_like(P)
    idx = np.arange(rows)[:, None]
    out[idx, P.astype(np.intp) - 1] = np.arange(1, n + 1, dtype=np.uint8)
    return out


def _is_arc(row, n):
    if n <= 3:
        return True
    seen = [False] * (n + 2)
    blocks = 0
    for v in row[:-1]:
        left = n if v == 1 else v - 1
        right = 1 if v == n else v + 1
        blocks += 1 - seen[left] - seen[right]
        seen[v] = True
        if blocks != 1:
            return False
    return True


def arc_flags(P):
    P = np.asarray(P, dtype=np.uint8)
    n = P.shape[1]
    return np.array([_is_arc(row.tolist(), n) for row in P], dtype=bool)


def _contains(word, pat):
    n = len(word)
    k = len(pat)
    # Backtracking over increasing index tuples; patterns here have k <= 4.
    chosen = []

    def extend(start):
        depth = len(chosen)
        if depth == k:
            return True
        for i in range(start, n - (k - depth) + 1):
            v = word[i]
            ok = True
            for d, prev in enumerate(chosen):
                if (pat[d] < pat[depth]) != (prev < v):
                    ok = False
                    break
            if ok:
                chosen.append(v)
                if extend(i + 1):
                    return True
                chosen.pop()
        return False

    return extend(0)


def avoids_flags(P, patterns):
    """Row-wise flag: the permutation avoids every pattern in ``patterns``."""
    P = np.asarray(P, dtype=np.uint8)
    pats = [tuple(int(x) for x in p) for p in patterns]
    out = np.ones(P.shape[0], dtype=bool)
    for r, row in enumerate(P.tolist()):
        for pat in pats:
            if _contains(row, pat):
                out[r] = False
                break
    return out


def word_f(w):
    """Swap the 1- and 2-counts of every block between fixed ``21`` factors."""
    w = list(w)
    n = len(w)
    out = w[:]
    fixed = [False] * n
    for i in range(n - 1):
        if w[i] == 2 and w[i + 1] == 1:
            fixed[i] = fixed[i + 1] = True
    i = 0
    while i < n:
        if fixed[i]:
            i += 1
            continue
        j = i
        ones = 0
        while j < n and not fixed[j]:
            ones += w[j] == 1
            j += 1
        twos = (j - i) - ones
        out[i:i + twos] = [1] * twos
        out[i + twos:j] = [2] * ones
        i = j
    return out


def apply_adjacent(w, j):
    """Apply the two-letter map to the subword of letters ``j`` and ``j + 1``."""
    idx = [i for i, x in enumerate(w) if x == j or x == j + 1]
    sub = word_f([1 if w[i] == j else 2 for i in idx])
    out = list(w)
    for i, x in zip(idx, sub):
        out[i] = j if x == 1 else j + 1
    return out


def multi_shuffle_rows(W, steps):
    """Apply ``apply_adjacent(., j)`` for each ``j`` in ``steps`` (in order) to every row."""
    W = np.asarray(W, dtype=np.uint8)
    out = np.empty_like(W)
    for r, row in enumerate(W.tolist()):
        for j in steps:
            row = apply_adjacent(row, j)
        out[r] = row
    return out
