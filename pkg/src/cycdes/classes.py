"""Explicit permutation families: descent classes, shuffles, unimodal and arc
permutations, rotation closures, and the class-spec mini-language used by the CLI.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .perms import (
    cdes_set,
    cn_power,
    elements,
    format_perm,
    full_mask,
    inverse,
    multiply,
    parse_mask,
    popcount,
    shift_mask,
)


class PermSet:
    """A duplicate-free set of permutations of a common size ``n``.

    Members are kept as a lexicographically sorted tuple, so equality and
    iteration order are deterministic.
    """

    __slots__ = ("n", "members", "_lookup")

    def __init__(self, n: int, members: Iterable[Sequence[int]] = ()):
        self.n = n
        ms = sorted({tuple(m) for m in members})
        for m in ms:
            if len(m) != n:
                raise ValueError(f"member {m!r} does not have size {n}")
        self.members = tuple(ms)
        self._lookup = None

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, p):
        if self._lookup is None:
            self._lookup = frozenset(self.members)
        return tuple(p) in self._lookup

    def __eq__(self, other):
        if not isinstance(other, PermSet):
            return NotImplemented
        return self.n == other.n and self.members == other.members

    def __hash__(self):
        return hash((self.n, self.members))

    def __repr__(self):
        shown = ", ".join(format_perm(p) for p in self.members[:6])
        more = ", ..." if len(self.members) > 6 else ""
        return f"PermSet(n={self.n}, {{{shown}{more}}}, size={len(self)})"

    def __or__(self, other):
        _same_n(self, other)
        return PermSet(self.n, self.members + other.members)

    def __and__(self, other):
        _same_n(self, other)
        return PermSet(self.n, (p for p in self.members if p in other))

    def __sub__(self, other):
        _same_n(self, other)
        return PermSet(self.n, (p for p in self.members if p not in other))

    def filter(self, pred: Callable[[tuple], bool]) -> "PermSet":
        return PermSet(self.n, (p for p in self.members if pred(p)))

    def as_array(self) -> np.ndarray:
        if not self.members:
            return np.zeros((0, self.n), dtype=np.uint8)
        return np.array(self.members, dtype=np.uint8).reshape(len(self.members), self.n)

    @classmethod
    def from_array(cls, n: int, arr) -> "PermSet":
        return cls(n, map(tuple, np.asarray(arr).tolist()))


def _same_n(a: PermSet, b: PermSet):
    if a.n != b.n:
        raise ValueError(f"permutation sets of different sizes {a.n} and {b.n}")


def disjoint_union(n: int, parts: Iterable[PermSet]) -> PermSet:
    """Union that raises if two parts share a member."""
    seen: set = set()
    total = 0
    for part in parts:
        if part.n != n:
            raise ValueError(f"part of size {part.n} in a union over S_{n}")
        total += len(part)
        seen.update(part.members)
        if len(seen) != total:
            raise ValueError("union is not disjoint")
    return PermSet(n, seen)


# --- the symmetric group and its statistics ---------------------------------


@lru_cache(maxsize=None)
def _sn_array(n: int) -> np.ndarray:
    arr = kernels.permutations_array(n)
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=None)
def _sn_inverse(n: int) -> np.ndarray:
    arr = kernels.inverse_rows(_sn_array(n))
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=None)
def _sn_des(n: int) -> np.ndarray:
    return kernels.des_masks(_sn_array(n))


@lru_cache(maxsize=None)
def _sn_inverse_des(n: int) -> np.ndarray:
    return kernels.des_masks(_sn_inverse(n))


@lru_cache(maxsize=None)
def _sn_inverse_cdes(n: int) -> np.ndarray:
    return kernels.cdes_masks(_sn_inverse(n))


def _select(n: int, flags) -> PermSet:
    return PermSet.from_array(n, _sn_array(n)[flags])


def symmetric_group(n: int) -> PermSet:
    return PermSet.from_array(n, _sn_array(n))


def filter_sn(n: int, pred: Callable[[tuple], bool]) -> PermSet:
    """Brute-force filter of ``S_n`` by an arbitrary predicate."""
    return PermSet(n, (p for p in map(tuple, _sn_array(n).tolist()) if pred(p)))


def _check_subset(J: int, n: int):
    if J < 0 or J >> max(n - 1, 0):
        raise ValueError(f"descent mask must be a subset of [{n - 1}]")


def descent_class(n: int, J: int) -> PermSet:
    _check_subset(J, n)
    return _select(n, _sn_des(n) == np.uint64(J))


def inverse_descent_class(n: int, J: int) -> PermSet:
    _check_subset(J, n)
    return _select(n, _sn_inverse_des(n) == np.uint64(J))


def cyclic_group(n: int) -> PermSet:
    return PermSet(n, (cn_power(n, j) for j in range(n)))


# --- embedding and rotation closures ----------------------------------------


def embed(A: PermSet) -> PermSet:
    """View ``A`` inside ``S_{n+1}`` as the permutations fixing the new top letter."""
    m = A.n + 1
    return PermSet(m, (p + (m,) for p in A))


def _lift(A: PermSet, n: int | None) -> PermSet:
    if n is None:
        n = A.n + 1
    if A.n == n - 1:
        return embed(A)
    if A.n == n and all(p[-1] == n for p in A):
        return A
    raise ValueError(f"closure into S_{n} needs a subset of S_{n - 1}")


def horizontal_closure(A: PermSet, n: int | None = None) -> PermSet:
    """``A C_n``: every member rotated by all powers of ``c_n`` on the right."""
    A = _lift(A, n)
    n = A.n
    powers = [cn_power(n, j) for j in range(n)]
    return PermSet(n, (multiply(a, c) for a in A for c in powers))


def vertical_closure(A: PermSet, n: int | None = None) -> PermSet:
    """``C_n A``: every member with values shifted by all powers of ``c_n``."""
    A = _lift(A, n)
    n = A.n
    powers = [cn_power(n, j) for j in range(n)]
    return PermSet(n, (multiply(c, a) for a in A for c in powers))


# --- shuffles ---------------------------------------------------------------


def _multiset_words(counts: list[int], length: int):
    if length == 0:
        yield ()
        return
    for letter, c in enumerate(counts):
        if c:
            counts[letter] -= 1
            for rest in _multiset_words(counts, length - 1):
                yield (letter + 1,) + rest
            counts[letter] += 1


def block_starts(gamma: Sequence[int]) -> list[int]:
    """Smallest value of each block (``j_{i-1} + 1``)."""
    starts = []
    s = 1
    for g in gamma:
        starts.append(s)
        s += g
    return starts


def decode_word(w: Sequence[int], gamma: Sequence[int]) -> tuple:
    """Permutation of ``S(gamma)`` whose block-letter word is ``w``."""
    nxt = block_starts(gamma)
    out = []
    for letter in w:
        out.append(nxt[letter - 1])
        nxt[letter - 1] += 1
    return tuple(out)


def encode_perm(p: Sequence[int], gamma: Sequence[int]) -> tuple:
    """Block-letter word of ``p``: letter ``i`` where the value lies in block ``i``."""
    owner = []
    for i, g in enumerate(gamma, 1):
        owner.extend([i] * g)
    return tuple(owner[v - 1] for v in p)


def in_shuffle_set(p: Sequence[int], gamma: Sequence[int]) -> bool:
    if len(p) != sum(gamma):
        return False
    w = encode_perm(p, gamma)
    return decode_word(w, gamma) == tuple(p)


def shuffle_words(gamma: Sequence[int]):
    return _multiset_words(list(gamma), sum(gamma))


def shuffle_set(gamma: Sequence[int]) -> PermSet:
    """``S(gamma)``: each value block ``j_{i-1}+1..j_i`` appears left to right increasing.

    Zero parts are allowed and contribute nothing.
    """
    if any(g < 0 for g in gamma):
        raise ValueError(f"{tuple(gamma)} has a negative part")
    n = sum(gamma)
    return PermSet(n, (decode_word(w, gamma) for w in shuffle_words(gamma)))


def _star_words(gamma: Sequence[int], i: int, last: bool):
    if not 1 <= i <= len(gamma):
        raise ValueError(f"star index {i} outside 1..{len(gamma)}")
    n = sum(gamma)
    if n == 0:
        yield ()
        return
    if gamma[i - 1] <= 0:
        return
    counts = list(gamma)
    counts[i - 1] -= 1
    for w in _multiset_words(counts, n - 1):
        yield w + (i,) if last else (i,) + w


def shuffle_set_last_star(gamma: Sequence[int], i: int) -> PermSet:
    """Members of ``S(gamma)`` ending with the largest value of block ``i``."""
    if any(g < 0 for g in gamma):
        return PermSet(max(sum(gamma), 0))
    return PermSet(sum(gamma), (decode_word(w, gamma) for w in _star_words(gamma, i, True)))


def shuffle_set_first_star(gamma: Sequence[int], i: int) -> PermSet:
    """Members of ``S(gamma)`` starting with the smallest value of block ``i``."""
    if any(g < 0 for g in gamma):
        return PermSet(max(sum(gamma), 0))
    return PermSet(sum(gamma), (decode_word(w, gamma) for w in _star_words(gamma, i, False)))


# --- unimodal and arc permutations ------------------------------------------


def left_unimodal_from_descents(D: int, m: int) -> tuple:
    """The unique left-unimodal word on ``1..m`` with descent set ``D``.

    Positions ``1 + D`` receive ``d, d-1, ..., 1`` and the others receive
    ``d+1, ..., m`` in order, where ``d = |D|``.
    """
    down = {i + 1 for i in elements(D)}
    d = len(down)
    lo, hi = d, d + 1
    out = []
    for pos in range(1, m + 1):
        if pos in down:
            out.append(lo)
            lo -= 1
        else:
            out.append(hi)
            hi += 1
    return tuple(out)


def right_unimodal_from_descents(D: int, m: int) -> tuple:
    """The unique right-unimodal word on ``1..m`` with descent set ``D``."""
    ascents_of_reverse = 0
    for i in range(1, m):
        if not D >> (m - i - 1) & 1:
            ascents_of_reverse |= 1 << (i - 1)
    return tuple(reversed(left_unimodal_from_descents(ascents_of_reverse, m)))


def is_left_unimodal(seq: Sequence[int]) -> bool:
    """Every prefix is an interval of integers."""
    if not seq:
        return True
    lo = hi = seq[0]
    for v in seq[1:]:
        if v == hi + 1:
            hi = v
        elif v == lo - 1:
            lo = v
        else:
            return False
    return True


def is_right_unimodal(seq: Sequence[int]) -> bool:
    return is_left_unimodal(tuple(reversed(seq)))


def left_unimodal(n: int) -> PermSet:
    return PermSet(n, (left_unimodal_from_descents(D, n) for D in range(1 << max(n - 1, 0))))


def right_unimodal(n: int) -> PermSet:
    return PermSet(n, (tuple(reversed(p)) for p in left_unimodal(n)))


def is_arc(p: Sequence[int]) -> bool:
    """Every prefix of ``p`` is an interval of the cyclic group ``Z_n``."""
    n = len(p)
    if n <= 3:
        return True
    seen = [False] * (n + 1)
    blocks = 0
    for v in p[:-1]:
        left = n if v == 1 else v - 1
        right = 1 if v == n else v + 1
        blocks += 1 - seen[left] - seen[right]
        seen[v] = True
        if blocks != 1:
            return False
    return True


def arc_permutations(n: int) -> PermSet:
    """``A_n``, generated as ``C_n L_{n-1}``."""
    if n == 1:
        return PermSet(1, [(1,)])
    return vertical_closure(left_unimodal(n - 1), n)


def arc_permutations_brute(n: int) -> PermSet:
    return _select(n, kernels.arc_flags(_sn_array(n)))


ARC_PATTERNS = ((1, 3, 2, 4), (1, 3, 4, 2), (2, 4, 1, 3), (2, 4, 3, 1),
                (3, 1, 2, 4), (3, 1, 4, 2), (4, 2, 1, 3), (4, 2, 3, 1))


def contains_pattern(p: Sequence[int], pattern: Sequence[int]) -> bool:
    return not bool(kernels.avoids_flags(np.array([p], dtype=np.uint8), [pattern])[0])


def avoiders(n: int, patterns: Sequence[Sequence[int]]) -> PermSet:
    """``S_n(patterns)`` by brute force."""
    return _select(n, kernels.avoids_flags(_sn_array(n), patterns))


# --- classes defined through inverse cyclic descents -------------------------


def cdes_inverse_count_class(n: int, k: int) -> PermSet:
    """``C_{n,k}``: permutations whose inverse has exactly ``k`` cyclic descents."""
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must lie in 1..{n - 1}")
    counts = np.array([popcount(int(m)) for m in _sn_inverse_cdes(n)])
    return _select(n, counts == k)


def mask_orbit(J: int, n: int) -> list[int]:
    return sorted({shift_mask(J, i, n) for i in range(n)})


def orbit_class(n: int, J: int) -> PermSet:
    """Permutations whose inverse has cyclic descent set ``i + J`` for some ``i``."""
    if J == 0 or J == full_mask(n) or J >> n:
        raise ValueError("J must be a nonempty proper subset of [n]")
    orbit = np.array(mask_orbit(J, n), dtype=np.uint64)
    return _select(n, np.isin(_sn_inverse_cdes(n), orbit))


def orbit_class_brute(n: int, J: int) -> PermSet:
    orbit = set(mask_orbit(J, n))
    return filter_sn(n, lambda p: cdes_set(inverse(p)) in orbit)


# --- rotation sets V and H --------------------------------------------------


def v_set(gamma: Sequence[int], k: int) -> PermSet:
    """Members of ``C_n S(gamma_1, ..., gamma_t^*)`` with ``n`` in position ``k``."""
    n = sum(gamma)
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}")
    base = vertical_closure(shuffle_set_last_star(gamma, len(gamma)), n)
    return base.filter(lambda p: p[k - 1] == n)


def h_set(gamma: Sequence[int], k: int) -> PermSet:
    """Members of ``S(gamma_1, ..., gamma_t^*) C_n`` with ``n`` in position ``k``."""
    n = sum(gamma)
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}")
    base = horizontal_closure(shuffle_set_last_star(gamma, len(gamma)), n)
    return base.filter(lambda p: p[k - 1] == n)


# --- class-spec mini-language -----------------------------------------------


class ClassSpecError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ClassSpecError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def name(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        if start == self.pos:
            self.error("expected a class name")
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def mask(self) -> int:
        self.skip()
        start = self.pos
        end = self.text.find("}", start)
        if self.peek() != "{" or end < 0:
            self.error("expected a mask like {1,3}")
        self.pos = end + 1
        try:
            return parse_mask(self.text[start:end + 1])
        except ValueError as exc:
            self.pos = start
            self.error(str(exc))

    def starred_part(self):
        first = False
        if self.peek() == "*":
            self.pos += 1
            first = True
        value = self.integer()
        last = False
        if self.peek() == "*":
            self.pos += 1
            last = True
        return value, first, last

    def spec(self) -> PermSet:
        start = self.pos
        nm = self.name()
        if nm in ("HC", "VC"):
            self.expect("[")
            inner = self.spec()
            self.expect("]")
            return horizontal_closure(inner) if nm == "HC" else vertical_closure(inner)
        self.expect("(")
        try:
            result = self.atom(nm)
        except ClassSpecError:
            raise
        except ValueError as exc:
            self.pos = start
            self.error(str(exc))
        self.expect(")")
        return result

    def atom(self, nm: str) -> PermSet:
        if nm in ("D", "Dinv"):
            n = self.integer()
            self.expect(",")
            J = self.mask()
            return descent_class(n, J) if nm == "D" else inverse_descent_class(n, J)
        if nm in ("L", "R", "Arc", "Sym", "C"):
            n = self.integer()
            return {
                "L": left_unimodal,
                "R": right_unimodal,
                "Arc": arc_permutations,
                "Sym": symmetric_group,
                "C": cyclic_group,
            }[nm](n)
        if nm == "Cnk":
            n = self.integer()
            self.expect(",")
            return cdes_inverse_count_class(n, self.integer())
        if nm == "Orbit":
            n = self.integer()
            self.expect(",")
            return orbit_class(n, self.mask())
        if nm == "S":
            parts = [self.starred_part()]
            while self.peek() == ",":
                self.pos += 1
                parts.append(self.starred_part())
            gamma = [v for v, _, _ in parts]
            stars = [(i, f, l) for i, (_, f, l) in enumerate(parts, 1) if f or l]
            if len(stars) > 1 or (stars and stars[0][1] and stars[0][2]):
                self.error("at most one star is allowed")
            if not stars:
                return shuffle_set(gamma)
            i, first, _ = stars[0]
            return shuffle_set_first_star(gamma, i) if first else shuffle_set_last_star(gamma, i)
        self.error(f"unknown class {nm!r}")


def parse_class_spec(text: str) -> PermSet:
    """Build a permutation set from a spec such as ``VC[Dinv(5,{1,2})]`` or ``S(2,3,2*)``."""
    p = _Parser(text)
    result = p.spec()
    if p.peek():
        p.error("trailing input")
    return result


def orbit_decomposition(n: int, J: int) -> list[int]:
    """Masks ``I`` with ``orbit_class(n, J) = disjoint union of C_n D^{-1}_{n-1,I}``.

    Writing ``pi = c_n^i tau`` with ``tau(n) = n`` gives
    ``cDes(pi^-1) = i + (Des(tau^-1) + {n})``, so ``I`` runs over the orbit
    members that contain ``n`` but not ``n - 1``, with ``n`` removed.
    """
    top = 1 << (n - 1)
    return sorted(m & ~top for m in mask_orbit(J, n) if m & top and not m >> (n - 2) & 1)
