import math

import pytest
from hypothesis import given, strategies as st

from cycdes.perms import elements, full_mask, shift_mask
from cycdes.tableaux import (
    ShapeError,
    SkewShape,
    Tableau,
    all_strips,
    cdes_horizontal_strip,
    cdes_near_hook,
    cdes_strip,
    delta,
    des_set_syt,
    enumerate_syt,
    format_shape,
    format_tableau,
    hook,
    is_hook_partition,
    near_hook_from_rows,
    near_hook_shape,
    parse_shape,
    parse_tableau,
    partitions,
    rotate_near_hook,
    rotate_strip,
    straight,
    strip_shape,
    strip_statistics,
    tableau_from_components,
)


def hook_length_count(lam):
    n = sum(lam)
    conj = [sum(1 for r in lam if r > c) for c in range(lam[0])] if lam else []
    prod = 1
    for r, row in enumerate(lam):
        for c in range(row):
            prod *= (row - c - 1) + (conj[c] - r - 1) + 1
    return math.factorial(n) // prod


def test_skew_tableau_descent_example():
    shape = parse_shape("5,4,2/1,1")
    rows = {0: (1, [1, 3, 4, 8]), 1: (1, [2, 5, 7]), 2: (0, [6, 9])}
    entries = {(r, c0 + i): v for r, (c0, vals) in rows.items() for i, v in enumerate(vals)}
    T = Tableau.from_entries(shape, entries)
    assert elements(des_set_syt(T)) == [1, 4, 5, 8]


def test_strip_rotation_example_vertical():
    T = tableau_from_components([[[1], [2]], [[3, 4]]])
    seen = []
    for j in range(4):
        seen.append(elements(cdes_strip(rotate_strip(T, j))))
    assert seen == [[1, 4], [1, 2], [2, 3], [3, 4]]


def test_strip_rotation_example_horizontal():
    T = tableau_from_components([[[1, 2]], [[3, 4]]])
    seen = []
    for j in range(4):
        U = rotate_strip(T, j)
        assert cdes_strip(U) == cdes_horizontal_strip(U)
        seen.append(elements(cdes_strip(U)))
    assert seen == [[4], [1], [2], [3]]


def test_near_hook_rotation_example():
    T = near_hook_from_rows([1, 2, 5], [1, 3, 4], 6)
    U = rotate_near_hook(T, 4)
    assert U == near_hook_from_rows([1, 3, 6], [1, 2, 5], 4)
    assert delta(U) == 4


def test_hook_length_formula():
    for n in range(1, 9):
        for lam in partitions(n):
            assert len(enumerate_syt(straight(lam))) == hook_length_count(lam)


def test_partitions_count_and_order():
    counts = [1, 1, 2, 3, 5, 7, 11, 15, 22]
    for n, c in enumerate(counts):
        ps = list(partitions(n))
        assert len(ps) == c
        assert ps == sorted(ps, reverse=True)


def test_skew_count():
    # |SYT(lam/mu)| for a sum of shapes is a multinomial times the factors
    s = SkewShape.direct_sum(straight((2, 1)), straight((2,)))
    assert len(enumerate_syt(s)) == math.comb(5, 2) * 2 * 1


def test_shape_parse_format_round_trip():
    for text in ["4,2", "5,4,2/1,1", "(1^2)+(4)", "(3,1^2)+(1)", "(2)+(2)+(1)"]:
        assert format_shape(parse_shape(text)) == text
    assert parse_shape("nh(6,2)") == near_hook_shape(6, 2)


def test_shape_errors():
    with pytest.raises(ShapeError):
        SkewShape.from_partitions((2, 3))
    with pytest.raises(ShapeError):
        near_hook_shape(4, 3)


def test_tableau_validation():
    with pytest.raises(ShapeError):
        Tableau.from_entries(straight((2,)), {(0, 0): 2, (0, 1): 1})


def test_tableau_text_round_trip():
    for shape in [straight((3, 1)), strip_shape(2, 5), near_hook_shape(6, 2)]:
        for T in enumerate_syt(shape):
            assert parse_tableau(format_tableau(T)) == T


def test_shape_predicates():
    assert straight((3, 1)).is_connected_ribbon()
    assert not straight((2, 2)).is_connected_ribbon()
    assert not strip_shape(2, 4).is_connected()
    assert strip_shape(2, 4).is_strip()
    assert is_hook_partition((3, 1, 1)) and not is_hook_partition((2, 2))
    assert hook(3, 2) == straight((3, 1, 1))


def test_strip_enumeration_count():
    # a strip with t components has 2^(#components of size > 1) orientations per composition
    for n in range(2, 8):
        want = sum(2 ** sum(1 for g in c if g > 1) for c in _comps(n) if len(c) >= 2)
        assert sum(1 for _ in all_strips(n)) == want


def _comps(n):
    from cycdes.perms import compositions

    return compositions(n)


def test_strip_fast_path_matches_tableaux():
    for n in range(2, 7):
        for shape in all_strips(n):
            des, cdes = strip_statistics(shape)
            Ts = enumerate_syt(shape)
            assert sorted(des.tolist()) == sorted(des_set_syt(T) for T in Ts)
            assert sorted(cdes.tolist()) == sorted(cdes_strip(T) for T in Ts)


def _check_cyclic_extension(Ts, cdes, rotate, n):
    full = full_mask(n)
    for T in Ts:
        c = cdes(T)
        assert c & (full >> 1) == des_set_syt(T)
        assert c not in (0, full)
        U = rotate(T, 1)
        assert cdes(U) == shift_mask(c, 1, n)
    # rotation is a bijection of order n
    for T in Ts:
        assert rotate(T, n) == T


def test_strip_cyclic_extension_axioms():
    for n in range(2, 7):
        for shape in all_strips(n):
            _check_cyclic_extension(enumerate_syt(shape), cdes_strip, rotate_strip, n)


def test_near_hook_cyclic_extension_axioms():
    for n in range(3, 9):
        for k in range(n - 1):
            Ts = enumerate_syt(near_hook_shape(n, k))
            _check_cyclic_extension(Ts, cdes_near_hook, rotate_near_hook, n)
            assert len({rotate_near_hook(T, 1) for T in Ts}) == len(Ts)


@given(st.integers(3, 8), st.data())
def test_near_hook_rotation_moves_delta(n, data):
    k = data.draw(st.integers(0, n - 2))
    Ts = enumerate_syt(near_hook_shape(n, k))
    T = data.draw(st.sampled_from(Ts))
    j = data.draw(st.integers(0, 3 * n))
    assert delta(rotate_near_hook(T, j)) == (delta(T) + j - 1) % n + 1
    assert cdes_near_hook(rotate_near_hook(T, j)) == shift_mask(cdes_near_hook(T), j, n)


def test_near_hook_counts():
    for n in range(2, 9):
        for k in range(n - 1):
            assert len(enumerate_syt(near_hook_shape(n, k))) == n * math.comb(n - 2, k)



def test_horizontal_strip_rule_agrees_with_general_rule():
    for n in range(2, 7):
        for shape in all_strips(n):
            if all(len({r for r, _ in c}) == 1 for c in shape.components()):
                for T in enumerate_syt(shape):
                    assert cdes_strip(T) == cdes_horizontal_strip(T)
