"""Exact Schur expansion of descent distributions and cyclic Schur-positivity certificates.

A set of permutations is Schur-positive when its descent distribution is a
nonnegative integer combination of the descent distributions of ``SYT(lam)``.
The solver works with exact rationals on the ``2^(n-1) x p(n)`` matrix of
those distributions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .classes import PermSet
from .distributions import GenDist, cdes_dist, des_dist, invariance_witness, syt_cdes_dist, syt_des_dist
from .perms import elements, interval_mask
from .tableaux import (
    _fmt_parts,
    format_shape,
    is_hook_partition,
    partitions,
    straight,
    strip_shape,
)


class SchurExpansionError(ValueError):
    """``reason`` is one of ``no-solution``, ``non-integral``, ``negative``."""

    def __init__(self, reason: str, solution=None):
        super().__init__(reason)
        self.reason = reason
        self.solution = solution


class CertificateError(ValueError):
    """``reason`` is ``not-Schur-positive`` or ``not-cDes-invariant``."""

    def __init__(self, reason: str, witness=None, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason
        self.witness = witness


class VerificationMismatch(AssertionError):
    """A certificate failed its own check; this is a bug, not a property of the input."""


def format_partition(lam: Sequence[int]) -> str:
    return _fmt_parts(lam, False)


@lru_cache(maxsize=None)
def syt_des_matrix(n: int) -> tuple:
    """``(parts, M)`` with ``M[D][c]`` the number of SYT of ``parts[c]`` with descent mask ``D``."""
    parts = tuple(partitions(n))
    rows = 1 << max(n - 1, 0)
    M = [[0] * len(parts) for _ in range(rows)]
    for c, lam in enumerate(parts):
        for (D, _), cnt in syt_des_dist(straight(lam)).counts.items():
            M[D][c] = cnt
    return parts, tuple(tuple(r) for r in M)


@lru_cache(maxsize=None)
def _solver(n: int) -> tuple:
    """Pivot rows and the inverse of the pivot submatrix."""
    parts, M = syt_des_matrix(n)
    p = len(parts)
    basis: list[tuple[int, list]] = []  # (lead column, reduced row)
    pivots = []
    for r, row in enumerate(M):
        v = [Fraction(x) for x in row]
        for lead, b in basis:
            if v[lead]:
                f = v[lead] / b[lead]
                v = [x - f * y for x, y in zip(v, b)]
        lead = next((i for i, x in enumerate(v) if x), None)
        if lead is None:
            continue
        basis.append((lead, v))
        pivots.append(r)
        if len(pivots) == p:
            break
    if len(pivots) != p:
        raise VerificationMismatch(f"descent matrix for n={n} lacks full column rank")
    inv = _invert([[Fraction(M[r][c]) for c in range(p)] for r in pivots])
    return tuple(pivots), inv


def _invert(A: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(A)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def schur_expand(A) -> dict:
    """Coefficients ``{partition: m}`` with ``des_dist(A) = sum m * des_dist(SYT(partition))``.

    ``A`` is a ``PermSet`` or an untracked ``GenDist`` of descent masks.
    Raises ``SchurExpansionError`` when no nonnegative integral solution exists.
    """
    d = A if isinstance(A, GenDist) else des_dist(A)
    n = d.n
    counts = d.masks()
    parts, M = syt_des_matrix(n)
    pivots, inv = _solver(n)
    if any(D >= len(M) for D in counts):
        raise SchurExpansionError("no-solution")
    b = [counts.get(D, 0) for D in range(len(M))]
    sol = [sum(row[i] * b[r] for i, r in enumerate(pivots)) for row in inv]
    for D, row in enumerate(M):
        if sum(x * s for x, s in zip(row, sol)) != b[D]:
            raise SchurExpansionError("no-solution")
    coeffs = dict(zip(parts, sol))
    if any(s.denominator != 1 for s in sol):
        raise SchurExpansionError("non-integral", coeffs)
    if any(s < 0 for s in sol):
        raise SchurExpansionError("negative", {k: int(v) for k, v in coeffs.items()})
    return {k: int(v) for k, v in coeffs.items()}


def is_schur_positive(A) -> bool:
    try:
        schur_expand(A)
    except SchurExpansionError:
        return False
    return True


def reconstruct_des(n: int, coeffs: dict) -> GenDist:
    """``sum m_lam * des_dist(SYT(lam))``."""
    out = GenDist(n)
    for lam, m in coeffs.items():
        if m:
            out = out + syt_des_dist(straight(lam)).scaled(m)
    return out


def hook_multiplicity(A: PermSet, k: int) -> int:
    """Number of members with descent set ``[k]``."""
    if not 0 <= k < A.n:
        raise ValueError(f"k must lie in 0..{A.n - 1}")
    return des_dist(A).masks().get(interval_mask(k), 0)


def hook_partition(n: int, k: int) -> tuple:
    return (n - k,) + (1,) * k


def strip_coefficients(m_hooks: Sequence[int]) -> list[int]:
    """``d_k = sum_{i >= k} (-1)^(i-k) m_i`` for the hook multiplicities ``m_i``."""
    n = len(m_hooks)
    out = []
    for k in range(n):
        out.append(sum((-1) ** (i - k) * m_hooks[i] for i in range(k, n)))
    return out


@dataclass
class SchurCertificate:
    n: int
    straight: dict = field(default_factory=dict)  # partition -> m
    cyclic: dict = field(default_factory=dict)  # SkewShape -> m
    status: str = "unverified"

    def cyclic_dist(self) -> GenDist:
        out = GenDist(self.n)
        for shape, m in self.cyclic.items():
            out = out + syt_cdes_dist(shape).scaled(m)
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "straight": {format_partition(lam): m for lam, m in self.straight.items() if m},
            "cyclic": {format_shape(s): m for s, m in self.cyclic.items()},
            "status": self.status,
        }


def csp_certificate(A: PermSet) -> SchurCertificate:
    """Build and verify a cyclic Schur-positivity certificate for ``A``.

    Non-hook straight shapes keep their Schur multiplicity; the hook part is
    rewritten over strips ``1^i (+) (n-i)`` with the alternating-sum
    coefficients.  The result is checked against ``cdes_dist(A)``.
    """
    n = A.n
    if n < 2:
        raise ValueError("cyclic descents need n >= 2")
    try:
        coeffs = schur_expand(A)
    except SchurExpansionError as exc:
        raise CertificateError("not-Schur-positive", exc.reason) from None
    bad = invariance_witness(A)
    if bad is not None:
        S, T = bad
        raise CertificateError("not-cDes-invariant", bad,
                               f"cDes fibers of {elements(S)} and {elements(T)} differ")

    m_hooks = [coeffs[hook_partition(n, k)] for k in range(n)]
    d = strip_coefficients(m_hooks)
    if d[0] != 0 or any(x < 0 for x in d):
        raise VerificationMismatch(f"strip coefficients {d} of a cDes-invariant set")
    cert = SchurCertificate(n, straight={lam: m for lam, m in coeffs.items() if m})
    for lam, m in coeffs.items():
        if m and not is_hook_partition(lam):
            cert.cyclic[straight(lam)] = m
    for i in range(1, n):
        if d[i]:
            cert.cyclic[strip_shape(i, n)] = d[i]

    if cert.cyclic_dist() != cdes_dist(A):
        raise VerificationMismatch(f"certificate does not reproduce cdes_dist for {A!r}")
    cert.status = "verified"
    return cert

