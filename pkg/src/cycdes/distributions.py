"""Generating multisets of descent statistics and the fiber-inversion formula."""

from __future__ import annotations

import json
from collections import Counter
from functools import lru_cache

import numpy as np

from . import kernels
from .classes import PermSet
from .perms import elements, full_mask, mask, shift_mask
from .tableaux import (
    ShapeError,
    SkewShape,
    cdes_near_hook,
    cdes_strip,
    des_set_syt,
    enumerate_syt,
    format_shape,
    near_hook_k,
    strip_statistics,
)


class CyclicExtensionError(ValueError):
    """The input has no cyclic descent extension; ``witness`` is the offending mask."""

    def __init__(self, message: str, witness: int | None = None):
        super().__init__(message)
        self.witness = witness


class GenDist:
    """Multiset of ``(mask, t)`` pairs, ``t`` being ``None`` unless tracked."""

    __slots__ = ("n", "track_t", "counts")

    def __init__(self, n: int, track_t: bool = False, counts=None):
        self.n = n
        self.track_t = track_t
        self.counts = Counter()
        for key, c in (counts or {}).items():
            if c < 0:
                raise ValueError(f"negative count for {key}")
            if c:
                self.counts[key] += c

    def add(self, m: int, t: int | None = None, count: int = 1):
        if (t is None) == self.track_t:
            raise ValueError("t must be given exactly when tracking t")
        self.counts[(m, t)] += count

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def get(self, m: int, t: int | None = None) -> int:
        return self.counts.get((m, t), 0)

    def masks(self) -> Counter:
        """Forget ``t``."""
        out = Counter()
        for (m, _), c in self.counts.items():
            out[m] += c
        return out

    def untracked(self) -> "GenDist":
        return GenDist(self.n, False, {(m, None): c for m, c in self.masks().items()})

    def terms(self) -> list[tuple]:
        return sorted(((m, t, c) for (m, t), c in self.counts.items()),
                      key=lambda x: (x[0], -1 if x[1] is None else x[1]))

    def __eq__(self, other):
        if not isinstance(other, GenDist):
            return NotImplemented
        return (self.n, self.track_t, +self.counts) == (other.n, other.track_t, +other.counts)

    def __add__(self, other: "GenDist") -> "GenDist":
        if (self.n, self.track_t) != (other.n, other.track_t):
            raise ValueError("cannot add distributions of different kinds")
        return GenDist(self.n, self.track_t, self.counts + other.counts)

    def scaled(self, k: int) -> "GenDist":
        return GenDist(self.n, self.track_t, {key: k * c for key, c in self.counts.items()})

    def __repr__(self):
        return f"GenDist(n={self.n}, track_t={self.track_t}, terms={len(self.counts)}, total={self.total})"

    def to_json(self) -> dict:
        terms = []
        for m, t, c in self.terms():
            term = {"mask": elements(m)}
            if self.track_t:
                term["t"] = t
            term["count"] = c
            terms.append(term)
        return {"n": self.n, "track_t": self.track_t, "terms": terms}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict) -> "GenDist":
        d = cls(data["n"], data["track_t"])
        for term in data["terms"]:
            d.add(mask(term["mask"]), term.get("t") if d.track_t else None, term["count"])
        return d


def _from_arrays(n: int, masks, ts=None) -> GenDist:
    d = GenDist(n, ts is not None)
    if ts is None:
        keys = zip(masks.tolist(), [None] * len(masks))
    else:
        keys = zip(masks.tolist(), ts.tolist())
    d.counts.update(keys)
    return d


def _position_of_n(arr: np.ndarray) -> np.ndarray:
    return np.argmax(arr == arr.shape[1], axis=1) + 1


def cdes_dist(A: PermSet, track_t: bool = False) -> GenDist:
    """``sum over A of x^cDes(pi) t^(pi^-1(n))``."""
    if A.n < 2:
        raise ValueError("cyclic descents need n >= 2")
    arr = A.as_array()
    if len(arr) == 0:
        return GenDist(A.n, track_t)
    return _from_arrays(A.n, kernels.cdes_masks(arr), _position_of_n(arr) if track_t else None)


def des_dist(A: PermSet, track_t: bool = False) -> GenDist:
    arr = A.as_array()
    if len(arr) == 0:
        return GenDist(A.n, track_t)
    return _from_arrays(A.n, kernels.des_masks(arr), _position_of_n(arr) if track_t else None)


# --- tableaux ---------------------------------------------------------------


def _is_multi_strip(shape: SkewShape) -> bool:
    return shape.is_strip() and len(shape.components()) >= 2


@lru_cache(maxsize=None)
def syt_des_dist(shape: SkewShape) -> GenDist:
    if _is_multi_strip(shape):
        return _from_arrays(shape.n, strip_statistics(shape)[0])
    d = GenDist(shape.n)
    for T in enumerate_syt(shape):
        d.add(des_set_syt(T))
    return d


def _explicit_map(shape: SkewShape):
    if _is_multi_strip(shape):
        return cdes_strip
    try:
        near_hook_k(shape)
    except ShapeError:
        return None
    return cdes_near_hook


def has_explicit_cdes(shape: SkewShape) -> bool:
    return _explicit_map(shape) is not None


@lru_cache(maxsize=None)
def explicit_cdes_dist(shape: SkewShape) -> GenDist:
    """cDes distribution from the explicit strip or near-hook map."""
    fn = _explicit_map(shape)
    if fn is None:
        raise ShapeError(f"no explicit cyclic descent map for {format_shape(shape)}")
    if fn is cdes_strip:
        return _from_arrays(shape.n, strip_statistics(shape)[1])
    d = GenDist(shape.n)
    for T in enumerate_syt(shape):
        d.add(fn(T))
    return d


@lru_cache(maxsize=None)
def syt_cdes_dist(shape: SkewShape, method: str = "auto") -> GenDist:
    """cDes distribution of ``SYT(shape)``.

    ``method="auto"`` uses the explicit map for strips and near-hooks and the
    fiber formula otherwise; ``"fibers"`` and ``"explicit"`` force one path.
    """
    if shape.is_connected_ribbon():
        raise CyclicExtensionError(f"{format_shape(shape)} is a connected ribbon")
    if method == "explicit" or (method == "auto" and has_explicit_cdes(shape)):
        return explicit_cdes_dist(shape)
    if method not in ("auto", "fibers"):
        raise ValueError(f"unknown method {method!r}")
    return fibers_from_des(syt_des_dist(shape), shape.n)


# --- fiber formula ------------------------------------------------------------


def _fiber(J: int, n: int, des: Counter) -> int:
    js = elements(J)
    t = len(js)
    total = 0
    for i in range(t):
        D = mask(x - js[i] for x in js[i + 1:])
        total += (-1) ** i * des.get(D, 0)
    return total


def fibers_from_des(des: GenDist, n: int | None = None) -> GenDist:
    """Cyclic descent fiber sizes forced by a descent distribution.

    Raises ``CyclicExtensionError`` (with the offending mask) when the
    result cannot come from a cyclic descent extension.
    """
    n = des.n if n is None else n
    if n < 2:
        raise CyclicExtensionError("no cyclic descent extension exists for n < 2")
    if des.track_t:
        raise ValueError("fiber formula takes an untracked descent distribution")
    counts = des.masks()
    top = 1 << (n - 1)
    for D in counts:
        if D >= top:
            raise ValueError(f"descent mask {elements(D)} not inside [{n - 1}]")
    full = full_mask(n)
    fibers = {J: _fiber(J, n, counts) for J in range(1, full + 1)}

    for J, f in fibers.items():
        if f < 0:
            raise CyclicExtensionError(f"negative fiber {f} at {elements(J)}", J)
    if fibers[full] != 0:
        raise CyclicExtensionError(f"full set {elements(full)} has fiber {fibers[full]}", full)
    if sum(fibers.values()) != des.total:
        raise CyclicExtensionError("fibers do not add up to the number of objects")
    marginal = Counter()
    for J, f in fibers.items():
        marginal[J & (top - 1)] += f
    for D in set(marginal) | set(counts):
        if marginal[D] != counts.get(D, 0):
            raise CyclicExtensionError(f"fibers over {elements(D)} do not restrict to Des", D)
    for J, f in fibers.items():
        if fibers[shift_mask(J, 1, n)] != f:
            raise CyclicExtensionError(f"fiber of {elements(J)} is not rotation invariant", J)
    return GenDist(n, False, {(J, None): f for J, f in fibers.items() if f})


# --- invariance ------------------------------------------------------------------


def invariance_witness(A: PermSet) -> tuple | None:
    """First mask ``S`` with a different fiber count from ``1 + S``, or ``None``."""
    counts = cdes_dist(A).masks()
    for S in sorted(counts):
        T = shift_mask(S, 1, A.n)
        if counts[S] != counts.get(T, 0):
            return S, T
    return None


def is_cdes_invariant(A: PermSet) -> bool:
    return invariance_witness(A) is None
