"""Explicit descent-preserving maps between permutation families and tableaux."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import kernels
from .classes import (
    PermSet,
    decode_word,
    encode_perm,
    in_shuffle_set,
    is_arc,
    is_left_unimodal,
    left_unimodal_from_descents,
    right_unimodal_from_descents,
    shuffle_set,
    shuffle_set_last_star,
)
from .perms import (
    cdes_set,
    check_perm,
    des_set,
    elements,
    interval_mask,
    inverse,
    mask,
    popcount,
    position_of_max,
    rotate_positions,
    shift_values,
)
from .tableaux import Tableau, build_near_hook, rotate_near_hook


class DomainError(ValueError):
    pass


# --- the word map f -------------------------------------------------------------


def word_f(w: Sequence[int]) -> tuple:
    """Fix every ``21`` factor and turn each remaining block ``1^r 2^s`` into ``1^s 2^r``."""
    if any(x not in (1, 2) for x in w):
        raise DomainError("word_f takes words over {1,2}")
    return tuple(kernels.word_f(list(w)))


def word_f_range(w: Sequence[int], p: int, q: int) -> tuple:
    """Apply ``word_f`` to the factor ``w_p ... w_q`` (1-based, inclusive)."""
    w = tuple(w)
    if not 1 <= p <= q + 1 or q > len(w):
        raise DomainError(f"bad range [{p},{q}] for a word of length {len(w)}")
    return w[:p - 1] + word_f(w[p - 1:q]) + w[q:]


def apply_adjacent(w: Sequence[int], j: int) -> tuple:
    """``f_j``: apply ``word_f`` to the subword of letters ``j`` and ``j + 1``."""
    return tuple(kernels.apply_adjacent(list(w), j))


def staircase_word(t: int) -> list[int]:
    """``s1, s2 s1, ..., s_{t-1} ... s1`` as a flat list of indices."""
    out = []
    for i in range(1, t):
        out.extend(range(i, 0, -1))
    return out


def _check_longest(word: Sequence[int], t: int):
    perm = list(range(1, t + 1))
    for j in word:
        if not 1 <= j < t:
            raise DomainError(f"generator s{j} outside 1..{t - 1}")
        perm[j - 1], perm[j] = perm[j], perm[j - 1]
    if perm != list(range(t, 0, -1)) or len(word) != t * (t - 1) // 2:
        raise DomainError(f"{word} is not a reduced word of the longest permutation in S_{t}")


def _steps(t: int, reduced_word):
    word = staircase_word(t) if reduced_word is None else list(reduced_word)
    _check_longest(word, t)
    # the rightmost generator acts first
    return word[::-1]


def multi_shuffle_phi(p: Sequence[int], gamma: Sequence[int], reduced_word=None) -> tuple:
    """Descent-preserving map ``S(a_1, ..., a_t) -> S(a_t, ..., a_1)``."""
    p = tuple(p)
    if not in_shuffle_set(p, gamma):
        raise DomainError(f"{p} is not in S{tuple(gamma)}")
    w = list(encode_perm(p, gamma))
    for j in _steps(len(gamma), reduced_word):
        w = kernels.apply_adjacent(w, j)
    return decode_word(w, tuple(reversed(gamma)))


def multi_shuffle_batch(P: np.ndarray, gamma: Sequence[int], reduced_word=None) -> np.ndarray:
    """``multi_shuffle_phi`` on every row of ``P`` (rows assumed in ``S(gamma)``)."""
    owner = np.repeat(np.arange(1, len(gamma) + 1, dtype=np.uint8), gamma)
    W = owner[np.asarray(P, dtype=np.intp) - 1]
    W = kernels.multi_shuffle_rows(W, _steps(len(gamma), reduced_word))
    rev = tuple(reversed(gamma))
    return np.array([decode_word(row, rev) for row in W.tolist()], dtype=np.uint8).reshape(P.shape)


# --- the product of shuffles --------------------------------------------------------


def circledast(rho: Sequence[int], sigma: Sequence[int], alpha: Sequence[int], beta: Sequence[int]) -> tuple:
    """The member of ``S(alpha + beta)`` built from ``rho in S(alpha)`` and ``sigma in S(beta)``.

    Within value block ``i`` the smallest ``alpha_i`` values go to the
    ``rho`` part and the next ``beta_i`` to the ``sigma`` part.
    """
    if len(alpha) != len(beta):
        raise DomainError("alpha and beta need the same number of parts")
    rho, sigma = tuple(rho), tuple(sigma)
    if len(rho) != sum(alpha) or (rho and not in_shuffle_set(rho, alpha)):
        raise DomainError(f"{rho} is not in S{tuple(alpha)}")
    if len(sigma) != sum(beta) or (sigma and not in_shuffle_set(sigma, beta)):
        raise DomainError(f"{sigma} is not in S{tuple(beta)}")
    gamma = tuple(a + b for a, b in zip(alpha, beta))
    w = (encode_perm(rho, alpha) if rho else ()) + (encode_perm(sigma, beta) if sigma else ())
    return decode_word(w, gamma)


# --- the map for singleton J ----------------------------------------------------------


def _split_value(r: tuple) -> int:
    n = len(r)
    found = []
    for a in range(1, n):
        low = [v for v in r if v <= a]
        high = [v for v in r if v > a]
        if low == sorted(low) and high == sorted(high):
            found.append(a)
    if len(found) != 1:
        raise AssertionError(f"split value of {r} is not unique: {found}")
    return found[0]


def in_vertical_singleton_domain(p: tuple, j: int) -> bool:
    """``p`` lies in ``C_n D^{-1}_{n-1,{j}}``."""
    n = len(p)
    tau = shift_values(p, -p[-1])
    return tau[-1] == n and des_set(inverse(tau)) == 1 << (j - 1)


def psi_singleton(p: Sequence[int], j: int) -> tuple:
    """Bijection ``C_n D^{-1}_{n-1,{j}} -> D^{-1}_{n-1,{j}} C_n`` keeping cDes and the position of ``n``."""
    p = check_perm(p)
    n = len(p)
    if not 1 <= j <= n - 2:
        raise DomainError(f"j must lie in 1..{n - 2}")
    if not in_vertical_singleton_domain(p, j):
        raise DomainError(f"{p} is not in C_n D^-1_(n-1,{{{j}}})")
    k = position_of_max(p)
    if k == n:
        return p
    r = rotate_positions(p, k)
    a = _split_value(r)
    w = tuple(1 if v <= a else 2 for v in r)
    if w[n - k - 1] == 1:
        w = word_f_range(w, n - k + 1, n - 1)
    else:
        w = word_f_range(w, 1, n - k - 1)
    w = word_f_range(w, 1, n - 1)
    ones = w.count(1)
    sigma = decode_word(w, (ones, n - ones))
    return rotate_positions(sigma, -k)


# --- arc permutations ------------------------------------------------------------------


def in_unimodal_horizontal_domain(p: tuple) -> bool:
    """``p`` lies in ``L_{n-1} C_n``."""
    r = rotate_positions(p, position_of_max(p))
    return is_left_unimodal(r[:-1])


def _relabel(word: tuple, values: list[int]) -> list[int]:
    return [values[v - 1] for v in word]


def arc_phi(p: Sequence[int]) -> tuple:
    """cDes-preserving bijection ``L_{n-1} C_n -> A_n`` fixing the position of ``n``."""
    p = check_perm(p)
    n = len(p)
    if not in_unimodal_horizontal_domain(p):
        raise DomainError(f"{p} is not in L_(n-1) C_n")
    j = position_of_max(p)
    if j == n:
        return p
    D = des_set(p)
    if cdes_set(p) >> (n - 1) & 1:
        pre_vals = list(range(1, j))
    else:
        pre_vals = list(range(n - j + 1, n))
    post_vals = sorted(set(range(1, n)) - set(pre_vals))
    pre = left_unimodal_from_descents(D & interval_mask(max(j - 2, 0)), j - 1)
    post_D = mask(i - j for i in elements(D) if i > j)
    post = right_unimodal_from_descents(post_D, n - j)
    return tuple(_relabel(pre, pre_vals) + [n] + _relabel(post, post_vals))


def arc_psi(s: Sequence[int]) -> tuple:
    """Inverse of ``arc_phi``."""
    s = check_perm(s)
    n = len(s)
    if not is_arc(s):
        raise DomainError(f"{s} is not an arc permutation")
    j = position_of_max(s)
    if j == n:
        return s
    hat = rotate_positions(s, j)
    bar = left_unimodal_from_descents(des_set(hat), n)
    assert bar[-1] == n, bar
    return rotate_positions(bar, -j)


def arc_to_syt(s: Sequence[int]) -> Tableau:
    """cDes-preserving bijection ``D^{-1}_{n-1,[k]} C_n -> SYT((n-k-1, 1^k) (+) (1))``."""
    s = check_perm(s)
    n = len(s)
    if n < 2:
        raise DomainError("need n >= 2")
    j = position_of_max(s) % n
    tau = rotate_positions(s, j)
    inv_des = des_set(inverse(tau))
    k = popcount(inv_des)
    if inv_des != interval_mask(k) or k >= n - 1:
        raise DomainError(f"{s} is not in any D^-1_(n-1,[k]) C_n")
    column = [d + 1 for d in elements(des_set(tau))]
    T = build_near_hook(n, k, column, n)
    return rotate_near_hook(T, j)


def arc_perm_to_syt(p: Sequence[int]) -> Tableau:
    """cDes-preserving bijection from ``A_n`` onto the near-hook tableaux of size ``n``."""
    return arc_to_syt(arc_psi(p))


# --- shuffle decompositions used in the equidistribution proof -------------------------


def weak_splits(gamma: Sequence[int], k: int):
    """Pairs ``(alpha, beta)`` of weak compositions with ``alpha + beta = gamma`` and ``|alpha| = k``."""
    t = len(gamma)

    def rec(i, left):
        if i == t:
            if left == 0:
                yield ()
            return
        for a in range(min(gamma[i], left) + 1):
            for rest in rec(i + 1, left - a):
                yield (a,) + rest

    for alpha in rec(0, k):
        yield alpha, tuple(g - a for g, a in zip(gamma, alpha))


def _circledast_sets(A: PermSet, B: PermSet, alpha, beta) -> list[tuple]:
    return [circledast(r, s, alpha, beta) for r in A for s in B]


def rotated_pieces(alpha: Sequence[int], beta: Sequence[int]) -> list[PermSet]:
    """The sets ``S(beta_i, ..., beta_t^*, beta_1, ..., beta_{i-1}) (*) S(alpha_{i+1}, ..., alpha_t, alpha_1, ..., alpha_i^*)`` for ``i = 1..t``."""
    t = len(alpha)
    n = sum(alpha) + sum(beta)
    parts = []
    for i in range(1, t + 1):
        b = tuple(beta[i - 1:]) + tuple(beta[:i - 1])
        a = tuple(alpha[i:]) + tuple(alpha[:i])
        left = shuffle_set_last_star(b, t - i + 1)
        right = shuffle_set_last_star(a, t)
        parts.append(PermSet(n, _circledast_sets(left, right, b, a)))
    return parts


def collapsed_piece(alpha: Sequence[int], beta: Sequence[int]) -> PermSet:
    """``S(beta_t - 1, beta_{t-1}, ..., beta_1) (*) S(alpha_t, ..., alpha_2, (alpha_1 + 1)^*)``."""
    n = sum(alpha) + sum(beta)
    b = (beta[-1] - 1,) + tuple(reversed(beta[:-1]))
    a = tuple(reversed(alpha[1:])) + (alpha[0] + 1,)
    if min(b) < 0:
        return PermSet(n)
    left = shuffle_set(b)
    right = shuffle_set_last_star(a, len(a))
    return PermSet(n, _circledast_sets(left, right, b, a))


def v_decomposition(gamma: Sequence[int], k: int) -> list[PermSet]:
    """Pieces of the claimed disjoint decomposition of ``V_gamma^k c_n^k``.

    Only valid for ``k < n``: at ``k = n`` every ``beta`` is empty, the star
    on ``beta_t`` constrains nothing, and the terms with ``i < t`` are extra.
    """
    return [piece for a, b in weak_splits(gamma, k) for piece in rotated_pieces(a, b)]
