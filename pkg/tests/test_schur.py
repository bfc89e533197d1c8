import random
from math import comb

import pytest
import sympy

from cycdes.classes import PermSet, cyclic_group, inverse_descent_class, symmetric_group, vertical_closure
from cycdes.distributions import GenDist, cdes_dist, des_dist
from cycdes.perms import parse_perm
from cycdes.schur import (
    CertificateError,
    SchurExpansionError,
    csp_certificate,
    hook_multiplicity,
    hook_partition,
    is_schur_positive,
    reconstruct_des,
    schur_expand,
    strip_coefficients,
    syt_des_matrix,
)
from cycdes.tableaux import des_set_syt, enumerate_syt, is_hook_partition, partitions, straight, strip_shape


def sympy_solve(d: GenDist):
    """Independent exact solve of the descent system with sympy."""
    parts, M = syt_des_matrix(d.n)
    A = sympy.Matrix(M)
    counts = d.masks()
    b = sympy.Matrix([counts.get(D, 0) for D in range(A.rows)])
    xs = sympy.symbols(f"x0:{len(parts)}")
    sol = sympy.linsolve((A, b), *xs)
    if not sol:
        return None
    (vec,) = sol
    return dict(zip(parts, vec))


def test_matrix_counts_are_syt_counts():
    for n in range(1, 7):
        parts, M = syt_des_matrix(n)
        for c, lam in enumerate(parts):
            assert sum(row[c] for row in M) == len(enumerate_syt(straight(lam)))


def test_inverse_descent_class_expansion():
    # D^-1_{n,J} expands with coefficient = #SYT(lam) with descent set J
    for n in range(1, 7):
        for J in range(1 << max(n - 1, 0)):
            want = {lam: sum(1 for T in enumerate_syt(straight(lam)) if des_set_syt(T) == J)
                    for lam in partitions(n)}
            assert schur_expand(inverse_descent_class(n, J)) == want


def test_symmetric_group_expansion():
    for n in range(1, 7):
        got = schur_expand(symmetric_group(n))
        assert got == {lam: len(enumerate_syt(straight(lam))) for lam in partitions(n)}


def test_cyclic_group_expansion():
    for n in range(2, 8):
        got = schur_expand(cyclic_group(n))
        assert {lam for lam, m in got.items() if m} == {(n,), (n - 1, 1)}
        assert got[(n,)] == 1 and got[(n - 1, 1)] == 1


def test_knuth_class():
    K = PermSet(4, [parse_perm("2143"), parse_perm("2413")])
    got = schur_expand(K)
    assert {lam: m for lam, m in got.items() if m} == {(2, 2): 1}
    with pytest.raises(CertificateError) as info:
        csp_certificate(K)
    assert info.value.reason == "not-cDes-invariant"


def test_agrees_with_sympy_on_random_sets():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(2, 5)
        S = list(symmetric_group(n))
        A = PermSet(n, rng.sample(S, rng.randint(1, len(S))))
        sol = sympy_solve(des_dist(A))
        try:
            got = schur_expand(A)
        except SchurExpansionError as exc:
            if exc.reason == "no-solution":
                assert sol is None
            else:
                assert sol is not None
                assert exc.reason in ("non-integral", "negative")
                if exc.reason == "non-integral":
                    assert any(not v.is_integer for v in sol.values())
                else:
                    assert all(v.is_integer for v in sol.values()) and any(v < 0 for v in sol.values())
            continue
        assert sol is not None and {k: int(v) for k, v in sol.items()} == got


def test_failure_reasons():
    with pytest.raises(SchurExpansionError) as info:
        schur_expand(PermSet(3, [(1, 3, 2)]))
    assert info.value.reason in ("negative", "non-integral", "no-solution")
    assert not is_schur_positive(PermSet(3, [(2, 1, 3)]))


def test_reconstruct_round_trip():
    for n in range(2, 7):
        A = vertical_closure(inverse_descent_class(n - 1, 1 if n > 2 else 0), n)
        assert reconstruct_des(n, schur_expand(A)) == des_dist(A)


def test_hook_multiplicity_matches():
    for n in range(2, 7):
        for J in range(1 << (n - 2)):
            A = vertical_closure(inverse_descent_class(n - 1, J), n)
            coeffs = schur_expand(A)
            for k in range(n):
                assert coeffs[hook_partition(n, k)] == hook_multiplicity(A, k)


def test_strip_coefficients():
    assert strip_coefficients([1, 1, 0]) == [0, 1, 0]
    assert strip_coefficients([3, 5, 2]) == [0, 3, 2]


def test_cyclic_group_certificate():
    for n in range(2, 8):
        cert = csp_certificate(cyclic_group(n))
        assert cert.status == "verified"
        assert cert.cyclic == {strip_shape(1, n): 1}


def test_symmetric_group_certificate():
    for n in range(2, 7):
        cert = csp_certificate(symmetric_group(n))
        want = {straight(lam): len(enumerate_syt(straight(lam)))
                for lam in partitions(n) if not is_hook_partition(lam)}
        want.update({strip_shape(i, n): comb(n - 2, i - 1) for i in range(1, n)})
        assert cert.cyclic == want
        assert cert.cyclic_dist() == cdes_dist(symmetric_group(n))
        assert cert.to_json()["status"] == "verified"


def test_certificate_top_strip_nonzero():
    # d_(n-1) = m of the column shape, which is 1 for S_n
    cert = csp_certificate(symmetric_group(4))
    assert cert.cyclic[strip_shape(3, 4)] == 1
