"""Registry binding each verifiable statement to an exhaustive check.

A check takes a parameter dict and returns ``None`` on success or a witness
dict describing the first counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable

from .bijections import (
    arc_perm_to_syt,
    collapsed_piece,
    rotated_pieces,
    v_decomposition,
    weak_splits,
)
from .classes import (
    PermSet,
    arc_permutations,
    arc_permutations_brute,
    cdes_inverse_count_class,
    disjoint_union,
    horizontal_closure,
    inverse_descent_class,
    mask_orbit,
    orbit_class,
    orbit_decomposition,
    v_set,
    vertical_closure,
)
from .distributions import (
    CyclicExtensionError,
    cdes_dist,
    des_dist,
    explicit_cdes_dist,
    fibers_from_des,
    syt_cdes_dist,
    syt_des_dist,
)
from .perms import (
    cdes_set,
    compositions,
    format_composition,
    format_mask,
    format_perm,
    full_mask,
    rotate_positions,
)
from .schur import CertificateError, SchurExpansionError, csp_certificate, schur_expand
from .tableaux import (
    all_strips,
    cdes_near_hook,
    enumerate_syt,
    format_shape,
    format_tableau,
    hook,
    is_hook_partition,
    near_hook_shape,
    partitions,
    straight,
    strip_shape,
)


def _dist_witness(a, b) -> dict | None:
    """First key where two distributions differ."""
    for key in sorted(set(a.counts) | set(b.counts), key=lambda k: (k[0], k[1] or 0)):
        if a.counts.get(key, 0) != b.counts.get(key, 0):
            m, t = key
            w = {"kind": "mask", "mask": format_mask(m), "left": a.counts.get(key, 0), "right": b.counts.get(key, 0)}
            if t is not None:
                w["t"] = t
            return w
    return None


def _cert_witness(A: PermSet) -> dict | None:
    try:
        csp_certificate(A)
    except CertificateError as exc:
        w = {"kind": "mask", "reason": exc.reason}
        if isinstance(exc.witness, tuple):
            w["mask"] = format_mask(exc.witness[0])
            w["shifted"] = format_mask(exc.witness[1])
        else:
            w["detail"] = str(exc.witness)
        return w
    return None


def _sets_witness(n: int, left: PermSet, right: PermSet) -> dict | None:
    if left == right:
        return None
    diff = (left - right) | (right - left)
    return {"kind": "perm", "perm": format_perm(diff.members[0]), "in": "left" if diff.members[0] in left else "right"}


def _vc(n, J):
    return vertical_closure(inverse_descent_class(n - 1, J), n)


def _hc(n, J):
    return horizontal_closure(inverse_descent_class(n - 1, J), n)


# --- cells -------------------------------------------------------------------------


def _j_cells(n: int, J: int | None) -> list[dict]:
    if J is not None:
        if J >> max(n - 2, 0):
            raise ValueError(f"J = {format_mask(J)} is not a subset of [{n - 2}]")
        return [{"n": n, "J": J}]
    return [{"n": n, "J": J} for J in range(1 << (n - 2))]


def _k_cells(n: int, J: int | None) -> list[dict]:
    return [{"n": n, "k": k} for k in range(1, n)]


def _orbit_cells(n: int, J: int | None) -> list[dict]:
    if J is not None:
        return [{"n": n, "J": J}]
    reps = sorted({min(mask_orbit(J, n)) for J in range(1, full_mask(n))})
    return [{"n": n, "J": J} for J in reps]


def _single_cell(n: int, J: int | None) -> list[dict]:
    return [{"n": n}]


def _gamma_k_cells(n: int, J: int | None) -> list[dict]:
    return [{"n": n, "gamma": g, "k": k} for g in compositions(n) for k in range(1, n)]


def _fiber_shapes(n: int):
    yield from all_strips(n)
    for k in range(max(n - 2, 0)):
        if k > 0:  # k = 0 is already a strip
            yield near_hook_shape(n, k)
    for lam in partitions(n):
        yield straight(lam)


def _shape_cells(n: int, J: int | None) -> list[dict]:
    return [{"n": n, "shape": s} for s in _fiber_shapes(n)]


def _hook_strip_cells(n: int, J: int | None) -> list[dict]:
    return [{"n": n, "k": k} for k in range(n)]


# --- checks -------------------------------------------------------------------------


def check_equid(p):
    n, J = p["n"], p["J"]
    return _dist_witness(cdes_dist(_vc(n, J), True), cdes_dist(_hc(n, J), True))


def check_csp_vertical(p):
    return _cert_witness(_vc(p["n"], p["J"]))


def check_csp_horizontal(p):
    return _cert_witness(_hc(p["n"], p["J"]))


def check_cnk(p):
    n, k = p["n"], p["k"]
    A = cdes_inverse_count_class(n, k)
    parts = [_vc(n, J) for J in range(1 << (n - 2)) if bin(J).count("1") == k - 1]
    w = _sets_witness(n, A, disjoint_union(n, parts))
    return w or _cert_witness(A)


def check_orbit(p):
    n, J = p["n"], p["J"]
    A = orbit_class(n, J)
    w = _sets_witness(n, A, disjoint_union(n, (_vc(n, I) for I in orbit_decomposition(n, J))))
    return w or _cert_witness(A)


def check_des_equid(p):
    n, J = p["n"], p["J"]
    V = _vc(n, J)
    w = _dist_witness(des_dist(V), des_dist(_hc(n, J)))
    if w:
        return w
    try:
        schur_expand(V)
    except SchurExpansionError as exc:
        return {"kind": "mask", "reason": exc.reason, "mask": format_mask(J)}
    return None


def check_arc_syt(p):
    n = p["n"]
    A = arc_permutations(n)
    if len(A) != n * 2 ** (n - 2) or A != arc_permutations_brute(n):
        return {"kind": "perm", "reason": "arc enumeration mismatch", "size": len(A)}
    rhs = None
    for k in range(n - 1):
        d = syt_cdes_dist(near_hook_shape(n, k))
        rhs = d if rhs is None else rhs + d
    w = _dist_witness(cdes_dist(A), rhs)
    if w:
        return w
    seen = {}
    for pi in A:
        T = arc_perm_to_syt(pi)
        if cdes_near_hook(T) != cdes_set(pi):
            return {"kind": "perm", "perm": format_perm(pi), "reason": "cDes not preserved", "image": format_tableau(T)}
        if T in seen:
            return {"kind": "perm", "perm": format_perm(pi), "reason": "not injective", "other": format_perm(seen[T])}
        seen[T] = pi
    total = sum(len(enumerate_syt(near_hook_shape(n, k))) for k in range(n - 1))
    if len(seen) != total:
        return {"kind": "shape", "reason": "not surjective", "images": len(seen), "tableaux": total}
    return None


def check_fibers(p):
    shape = p["shape"]
    name = format_shape(shape)
    lam = shape.straight_partition()
    if lam is not None and is_hook_partition(lam):
        try:
            fibers_from_des(syt_des_dist(shape))
        except CyclicExtensionError:
            return None
        return {"kind": "shape", "shape": name, "reason": "hook passed validation"}
    try:
        fib = fibers_from_des(syt_des_dist(shape))
    except CyclicExtensionError as exc:
        return {"kind": "shape", "shape": name, "reason": str(exc)}
    if lam is None:
        w = _dist_witness(fib, explicit_cdes_dist(shape))
        if w:
            w["shape"] = name
            return w
    return None


def check_lemma_v(p):
    g, k = p["gamma"], p["k"]
    n = sum(g)
    V = PermSet(n, (rotate_positions(q, k) for q in v_set(g, k)))
    pieces = v_decomposition(g, k)
    seen = set()
    for q in pieces:
        for x in q:
            if x in seen:
                return {"kind": "perm", "perm": format_perm(x), "reason": "pieces overlap"}
            seen.add(x)
    return _sets_witness(n, V, PermSet(n, (x for q in pieces for x in q)))


def check_simplification(p):
    g, k = p["gamma"], p["k"]
    n = sum(g)
    for a, b in weak_splits(g, k):
        X = disjoint_union(n, rotated_pieces(a, b))
        Y = collapsed_piece(a, b)
        w = _dist_witness(des_dist(X), des_dist(Y))
        if w is None and n >= 2:
            w = _dist_witness(cdes_dist(X), cdes_dist(Y))
        if w:
            w.update(alpha=format_composition(a), beta=format_composition(b))
            return w
    return None


def check_sn_identity(p):
    from .classes import symmetric_group

    n = p["n"]
    cert = csp_certificate(symmetric_group(n))
    want = {}
    for lam in partitions(n):
        if not is_hook_partition(lam):
            want[straight(lam)] = len(enumerate_syt(straight(lam)))
    for i in range(1, n):
        if comb(n - 2, i - 1):
            want[strip_shape(i, n)] = comb(n - 2, i - 1)
    if cert.cyclic != want:
        bad = next(s for s in set(cert.cyclic) | set(want) if cert.cyclic.get(s) != want.get(s))
        return {"kind": "shape", "shape": format_shape(bad), "got": cert.cyclic.get(bad, 0), "want": want.get(bad, 0)}
    return None


def check_hook_strip(p):
    n, k = p["n"], p["k"]
    rhs = syt_des_dist(hook(n - k, k))
    if k:
        rhs = rhs + syt_des_dist(hook(n - k + 1, k - 1))
    w = _dist_witness(syt_des_dist(strip_shape(k, n)), rhs)
    if w:
        w["shape"] = format_shape(strip_shape(k, n))
    return w


@dataclass(frozen=True)
class Claim:
    id: str
    summary: str
    min_n: int
    default_n: tuple
    cells: Callable
    check: Callable
    takes_j: bool = False


CLAIMS = {c.id: c for c in [
    Claim("thm-equid", "cDes and position of n equidistributed on C_n D^-1 and D^-1 C_n",
          3, (3, 8), _j_cells, check_equid, True),
    Claim("thm-csp-vertical", "C_n D^-1_(n-1,J) is cSp (verified certificate)",
          3, (3, 8), _j_cells, check_csp_vertical, True),
    Claim("thm-csp-horizontal", "D^-1_(n-1,J) C_n is cSp (verified certificate)",
          3, (3, 8), _j_cells, check_csp_horizontal, True),
    Claim("cor-cnk", "C_(n,k) is a union of vertical classes and is cSp",
          2, (2, 7), _k_cells, check_cnk),
    Claim("cor-orbit", "inverse cDes orbit classes decompose into vertical classes and are cSp",
          2, (2, 7), _orbit_cells, check_orbit, True),
    Claim("cor-des-equid", "Des equidistributed on C_n D^-1 and D^-1 C_n; C_n D^-1 Schur-positive",
          3, (3, 8), _j_cells, check_des_equid, True),
    Claim("thm-arc-syt", "cDes on arc permutations matches near-hook tableaux, bijectively",
          2, (2, 9), _single_cell, check_arc_syt),
    Claim("lemma-fibers", "fiber formula agrees with explicit maps; validates on non-ribbons, fails on hooks",
          2, (2, 8), _shape_cells, check_fibers),
    Claim("lemma-v", "set decomposition of V_gamma^k c_n^k (1 <= k < n)",
          2, (2, 7), _gamma_k_cells, check_lemma_v),
    Claim("lemma-simpl", "rotated and collapsed shuffle products share Des and cDes distributions (k < n)",
          2, (2, 7), _gamma_k_cells, check_simplification),
    Claim("ex-sn-identity", "S_n certificate: m_lam = |SYT(lam)| on non-hooks, strips C(n-2, i-1)",
          2, (2, 7), _single_cell, check_sn_identity),
    Claim("eq-hook-strip", "Des over SYT(1^k + (n-k)) equals Des over two adjacent hooks",
          1, (1, 9), _hook_strip_cells, check_hook_strip),
]}


def format_params(p: dict) -> dict:
    out = {}
    for key, v in p.items():
        if key == "J":
            out[key] = format_mask(v)
        elif key == "gamma":
            out[key] = format_composition(v)
        elif key == "shape":
            out[key] = format_shape(v)
        else:
            out[key] = v
    return out


@dataclass
class VerificationReport:
    claim: str
    params: dict
    status: str
    witness: dict | None = None
    elapsed: float = 0.0

    def to_json(self) -> dict:
        d = {"claim": self.claim, "params": format_params(self.params), "status": self.status,
             "elapsed": round(self.elapsed, 6)}
        if self.witness is not None:
            d["counterexample"] = self.witness
        return d


def run_cell(claim: Claim, params: dict) -> VerificationReport:
    import time

    t0 = time.perf_counter()
    witness = claim.check(params)
    elapsed = time.perf_counter() - t0
    return VerificationReport(claim.id, params, "pass" if witness is None else "fail", witness, elapsed)

