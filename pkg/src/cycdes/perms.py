"""Permutations, masks and compositions.

Permutations are plain tuples in one-line notation over ``1..n``.  Masks are
Python ints used as bitsets: element ``i`` of ``[n]`` is bit ``i - 1``.  The
ambient size of a mask is never stored in the int itself, so functions that
need it take ``n`` explicitly.

Products follow ``(p * q)(i) = p(q(i))``.  With ``c = cn_power(n, 1)`` this
makes ``p * c**j`` a left rotation of positions and ``c**j * p`` a shift of
values, which is how horizontal and vertical rotation are used throughout.
"""

from __future__ import annotations

from typing import Iterable, Sequence

MAX_N = 64

Perm = tuple  # tuple[int, ...]


class SizeMismatchError(ValueError):
    pass


def check_perm(word: Sequence[int]) -> Perm:
    """Validate ``word`` as a permutation of ``1..len(word)`` and return it as a tuple."""
    p = tuple(int(x) for x in word)
    n = len(p)
    if n < 1:
        raise ValueError("permutation must have n >= 1")
    if n > MAX_N:
        raise ValueError(f"n = {n} exceeds the bitset limit {MAX_N}")
    if sorted(p) != list(range(1, n + 1)):
        raise ValueError(f"{p!r} is not a permutation of 1..{n}")
    return p


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def des_set(p: Perm) -> int:
    m = 0
    for i in range(len(p) - 1):
        if p[i] > p[i + 1]:
            m |= 1 << i
    return m


def cdes_set(p: Perm) -> int:
    n = len(p)
    if n < 2:
        raise ValueError("cyclic descents need n >= 2")
    m = des_set(p)
    if p[-1] > p[0]:
        m |= 1 << (n - 1)
    return m


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p, 1):
        inv[v - 1] = i
    return tuple(inv)


def multiply(p: Perm, q: Perm) -> Perm:
    """Return ``p * q``, i.e. ``i -> p(q(i))``."""
    if len(p) != len(q):
        raise SizeMismatchError(f"cannot multiply permutations of sizes {len(p)} and {len(q)}")
    return tuple(p[v - 1] for v in q)


def cn_power(n: int, j: int) -> Perm:
    """The ``j``-th power of the long cycle ``c_n = 23...n1``."""
    return tuple((i + j - 1) % n + 1 for i in range(1, n + 1))


def rotate_positions(p: Perm, j: int) -> Perm:
    """``p * c_n**j``: entry ``i`` of the result is ``p(i + j mod n)``."""
    n = len(p)
    j %= n
    return p[j:] + p[:j]


def shift_values(p: Perm, j: int) -> Perm:
    """``c_n**j * p``: every value is increased by ``j`` modulo ``n``."""
    n = len(p)
    return tuple((v + j - 1) % n + 1 for v in p)


def position_of_max(p: Perm) -> int:
    """1-based position of the letter ``n``."""
    return p.index(len(p)) + 1


# --- masks -----------------------------------------------------------------


def mask(elems: Iterable[int], n: int | None = None) -> int:
    m = 0
    for e in elems:
        if e < 1 or (n is not None and e > n):
            raise ValueError(f"element {e} outside [{n}]")
        m |= 1 << (e - 1)
    return m


def elements(m: int) -> list[int]:
    out = []
    i = 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


def full_mask(n: int) -> int:
    return (1 << n) - 1


def interval_mask(k: int) -> int:
    """Mask of ``[k] = {1, ..., k}``; ``[0]`` is empty."""
    return (1 << k) - 1


def shift_mask(m: int, j: int, n: int) -> int:
    """``j + D`` with residues taken in ``[n]`` (0 becomes ``n``)."""
    j %= n
    if j == 0:
        return m
    full = full_mask(n)
    return ((m << j) | (m >> (n - j))) & full


def popcount(m: int) -> int:
    return bin(m).count("1")


# --- compositions ----------------------------------------------------------


def subset_to_composition(m: int, n: int) -> tuple[int, ...]:
    """Subset of ``[n-1]`` to the composition of ``n`` given by successive gaps."""
    if m >> (n - 1):
        raise ValueError(f"mask {format_mask(m)} is not a subset of [{n - 1}]")
    cuts = [0] + elements(m) + [n]
    return tuple(b - a for a, b in zip(cuts, cuts[1:]))


def composition_to_subset(gamma: Sequence[int]) -> int:
    if any(g < 1 for g in gamma):
        raise ValueError(f"{tuple(gamma)} is not a composition")
    m = 0
    s = 0
    for g in gamma[:-1]:
        s += g
        m |= 1 << (s - 1)
    return m


def compositions(n: int, max_parts: int | None = None):
    """All compositions of ``n`` (ordered by their subset masks)."""
    if n == 0:
        yield ()
        return
    for m in range(1 << (n - 1)):
        gamma = subset_to_composition(m, n)
        if max_parts is None or len(gamma) <= max_parts:
            yield gamma


def weak_compositions(n: int, parts: int):
    """All weak compositions of ``n`` into exactly ``parts`` nonnegative parts."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in weak_compositions(n - first, parts - 1):
            yield (first,) + rest


# --- text formats ----------------------------------------------------------


def format_perm(p: Perm) -> str:
    if len(p) <= 9:
        return "".join(str(v) for v in p)
    return ",".join(str(v) for v in p)


def parse_perm(text: str) -> Perm:
    text = text.strip()
    if "," in text:
        word = [int(x) for x in text.split(",") if x.strip()]
    elif " " in text:
        word = [int(x) for x in text.split()]
    else:
        word = [int(ch) for ch in text]
    return check_perm(word)


def format_mask(m: int) -> str:
    return "{" + ",".join(str(e) for e in elements(m)) + "}"


def parse_mask(text: str, n: int | None = None) -> int:
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise ValueError(f"mask must look like {{1,4,5}}, got {text!r}")
    body = body[1:-1].strip()
    if not body:
        return 0
    return mask((int(x) for x in body.split(",")), n)


def format_composition(gamma: Sequence[int]) -> str:
    return "(" + ",".join(str(g) for g in gamma) + ")"
