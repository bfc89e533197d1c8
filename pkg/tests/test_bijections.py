import pytest
from hypothesis import given, strategies as st

from cycdes.bijections import (
    DomainError,
    apply_adjacent,
    arc_perm_to_syt,
    arc_phi,
    arc_psi,
    arc_to_syt,
    circledast,
    collapsed_piece,
    in_unimodal_horizontal_domain,
    in_vertical_singleton_domain,
    multi_shuffle_batch,
    multi_shuffle_phi,
    psi_singleton,
    rotated_pieces,
    staircase_word,
    v_decomposition,
    weak_splits,
    word_f,
    word_f_range,
)
from cycdes.classes import (
    PermSet,
    arc_permutations,
    decode_word,
    disjoint_union,
    horizontal_closure,
    inverse_descent_class,
    left_unimodal,
    shuffle_set,
    v_set,
    vertical_closure,
)
from cycdes.distributions import cdes_dist, des_dist
from cycdes.perms import (
    cdes_set,
    compositions,
    des_set,
    elements,
    identity,
    interval_mask,
    parse_perm,
    position_of_max,
    rotate_positions,
)
from cycdes.tableaux import (
    cdes_near_hook,
    enumerate_syt,
    near_hook_from_rows,
    near_hook_shape,
)

from conftest import comps


def word(s):
    return tuple(int(c) for c in s)


# --- word map ------------------------------------------------------------------


def test_word_f_example():
    assert word_f(word("111221221121")) == word("122221121221")


def test_word_f_ranges_from_singleton_example():
    w = word("1222111221212212")
    w1 = word_f_range(w, 11, 15)
    assert w1 == word("1222111221211212")
    assert word_f_range(w1, 1, 15) == word("1122112221212212")


def test_word_f_is_des_preserving_bijection():
    for n in range(1, 13):
        for a in range(1, n):
            b = n - a
            dom = shuffle_set((a, b))
            image = set()
            for p in dom:
                w = tuple(1 if v <= a else 2 for v in p)
                q = decode_word(word_f(w), (b, a))
                assert des_set(q) == des_set(p)
                image.add(q)
            assert len(image) == len(dom)
            assert PermSet(n, image) == shuffle_set((b, a))


def test_word_f_rejects_other_letters():
    with pytest.raises(DomainError):
        word_f((1, 3))


@given(st.lists(st.sampled_from([1, 2, 3]), max_size=12), st.integers(1, 2))
def test_apply_adjacent_keeps_other_letters(w, j):
    out = apply_adjacent(w, j)
    assert [x for x in out if x not in (j, j + 1)] == [x for x in w if x not in (j, j + 1)]
    assert out.count(j) == w.count(j + 1) and out.count(j + 1) == w.count(j)


# --- multi-shuffle map ------------------------------------------------------------


def test_two_block_example():
    p = (1, 2, 3, 8, 9, 4, 10, 11, 5, 6, 12, 7)
    assert multi_shuffle_phi(p, (7, 5)) == (1, 6, 7, 8, 9, 2, 3, 10, 4, 11, 12, 5)


def test_three_block_example():
    p = (1, 6, 7, 2, 12, 3, 8, 9, 13, 10, 4, 14, 5, 11)
    want = (1, 10, 11, 4, 12, 5, 6, 7, 13, 8, 2, 14, 3, 9)
    assert multi_shuffle_phi(p, (5, 6, 3)) == want
    assert multi_shuffle_phi(p, (5, 6, 3), [1, 2, 1]) == want


def test_staircase():
    assert staircase_word(3) == [1, 2, 1]
    assert staircase_word(4) == [1, 2, 1, 3, 2, 1]


def test_bad_reduced_word():
    p = identity(3)
    with pytest.raises(DomainError):
        multi_shuffle_phi(p, (1, 1, 1), [1, 2])
    with pytest.raises(DomainError):
        multi_shuffle_phi(p, (1, 1, 1), [1, 1, 2])


def test_multi_shuffle_des_preserving_bijection():
    for n in range(1, 9):
        for gamma in compositions(n):
            dom = shuffle_set(gamma)
            arr = dom.as_array()
            out = multi_shuffle_batch(arr, gamma)
            assert out.shape == arr.shape
            rev = tuple(reversed(gamma))
            image = PermSet(n, (tuple(r) for r in out.tolist()))
            assert len(image) == len(dom)
            assert image == shuffle_set(rev)
            assert des_dist(dom) == des_dist(image)
            assert (des_dist(dom).masks() == des_dist(image).masks())
            for p, q in zip(dom, out.tolist()):
                assert des_set(tuple(q)) == des_set(p)


def test_batch_matches_scalar():
    gamma = (2, 3, 2)
    dom = shuffle_set(gamma)
    out = multi_shuffle_batch(dom.as_array(), gamma)
    for p, q in zip(dom, out.tolist()):
        assert multi_shuffle_phi(p, gamma) == tuple(q)


def _reduced_words(t):
    """All reduced words of the longest element of S_t."""
    target = tuple(range(t, 0, -1))
    length = t * (t - 1) // 2
    out = []

    def rec(perm, w):
        if len(w) == length:
            if perm == target:
                out.append(list(w))
            return
        for j in range(1, t):
            if perm[j - 1] < perm[j]:
                q = list(perm)
                q[j - 1], q[j] = q[j], q[j - 1]
                rec(tuple(q), w + [j])

    rec(tuple(range(1, t + 1)), [])
    return out


def test_reduced_word_independence_exploration(record_property):
    """For t = 3 there are two reduced words; record whether they agree.

    Both maps must be Des-preserving bijections; agreement is recorded,
    not asserted.
    """
    words = _reduced_words(3)
    assert sorted(words) == [[1, 2, 1], [2, 1, 2]]
    differing = 0
    total = 0
    for n in range(3, 8):
        for gamma in compositions(n):
            if len(gamma) != 3:
                continue
            arr = shuffle_set(gamma).as_array()
            outs = [multi_shuffle_batch(arr, gamma, w) for w in words]
            for out in outs:
                assert PermSet(n, (tuple(r) for r in out.tolist())) == shuffle_set(tuple(reversed(gamma)))
            differing += int((outs[0] != outs[1]).any(axis=1).sum())
            total += len(arr)
    record_property("reduced_word_differences", f"{differing}/{total}")


# --- the product of shuffles --------------------------------------------------------


def test_circledast_example():
    got = circledast((1, 3, 4, 2), (5, 6, 1, 4, 2, 3), (2, 2, 0), (3, 1, 2))
    assert got == (1, 6, 7, 2, 9, 10, 3, 8, 4, 5)


def test_circledast_decomposes_shuffle_set():
    for gamma in [(2, 2), (1, 2, 1), (3, 1, 1)]:
        n = sum(gamma)
        for k in range(n + 1):
            pieces = []
            for a, b in weak_splits(gamma, k):
                pieces.append(PermSet(n, [circledast(r, s, a, b) for r in shuffle_set(a) for s in shuffle_set(b)]))
            assert disjoint_union(n, pieces) == shuffle_set(gamma)


def test_weak_splits():
    splits = list(weak_splits((2, 1), 1))
    assert splits == [((0, 1), (2, 0)), ((1, 0), (1, 1))]


# --- decomposition lemmas ----------------------------------------------------------


def test_v_decomposition_below_n():
    for n in range(2, 7):
        for gamma in compositions(n):
            for k in range(1, n):
                V = PermSet(n, (rotate_positions(q, k) for q in v_set(gamma, k)))
                assert disjoint_union(n, v_decomposition(gamma, k)) == V


def test_v_decomposition_at_k_equals_n_counterexample():
    # with every beta empty the star on beta_t is vacuous and the i < t terms are extra
    gamma = (2, 1)
    pieces = v_decomposition(gamma, 3)
    V = PermSet(3, (rotate_positions(q, 3) for q in v_set(gamma, 3)))
    union = set().union(*(set(p) for p in pieces))
    assert (2, 1, 3) in union and (2, 1, 3) not in V


def test_simplification_distributions():
    for n in range(2, 7):
        for gamma in compositions(n):
            for k in range(1, n):
                for a, b in weak_splits(gamma, k):
                    X = disjoint_union(n, rotated_pieces(a, b))
                    Y = collapsed_piece(a, b)
                    assert len(X) == len(Y)
                    assert des_dist(X) == des_dist(Y)
                    assert cdes_dist(X) == cdes_dist(Y)


# --- singleton map ----------------------------------------------------------------


def test_psi_example():
    p = parse_perm("13,6,14,15,7,16,1,8,9,10,2,3,4,11,12,5")
    assert in_vertical_singleton_domain(p, 7)
    q = psi_singleton(p, 7)
    assert q == parse_perm("13,6,14,15,7,16,1,2,8,9,3,4,10,11,12,5")
    assert cdes_set(q) == cdes_set(p)


def test_psi_fixes_n_at_end():
    p = (2, 1, 3, 4) + (5,)
    assert psi_singleton(p, 1) == p


def test_psi_bijection():
    for n in range(3, 10):
        for j in range(1, n - 1):
            J = 1 << (j - 1)
            dom = vertical_closure(inverse_descent_class(n - 1, J), n)
            cod = horizontal_closure(inverse_descent_class(n - 1, J), n)
            image = set()
            for p in dom:
                q = psi_singleton(p, j)
                assert cdes_set(q) == cdes_set(p)
                assert position_of_max(q) == position_of_max(p)
                image.add(q)
            assert len(image) == len(dom)
            assert PermSet(n, image) == cod


def test_psi_domain_errors():
    with pytest.raises(DomainError):
        psi_singleton(identity(5), 0)
    with pytest.raises(DomainError):
        psi_singleton((3, 1, 2, 4, 5), 3)


# --- arc maps -----------------------------------------------------------------------


def test_arc_phi_example():
    p = parse_perm("672819435")
    q = arc_phi(p)
    assert q == parse_perm("675849312")
    assert elements(cdes_set(p)) == elements(cdes_set(q)) == [2, 4, 6, 7]
    assert arc_psi(q) == p


def test_arc_psi_intermediate_steps():
    from cycdes.classes import left_unimodal_from_descents

    s = parse_perm("675849312")
    j = position_of_max(s)
    hat = rotate_positions(s, j)
    assert hat == parse_perm("312675849")
    bar = left_unimodal_from_descents(des_set(hat), 9)
    assert bar == parse_perm("435672819")


def test_arc_maps_fix_n_at_end():
    p = (2, 1, 3, 4)
    assert arc_phi(p) == p and arc_psi(p) == p


def test_arc_maps_are_inverse_bijections():
    for n in range(2, 10):
        L = horizontal_closure(left_unimodal(n - 1), n)
        A = arc_permutations(n)
        assert len(L) == len(A)
        image = set()
        for p in L:
            assert in_unimodal_horizontal_domain(p)
            q = arc_phi(p)
            assert cdes_set(q) == cdes_set(p)
            assert position_of_max(q) == position_of_max(p)
            assert arc_psi(q) == p
            image.add(q)
        assert PermSet(n, image) == A


def test_arc_domain_errors():
    with pytest.raises(DomainError):
        arc_psi(parse_perm("125436"))


def test_arc_to_syt_example():
    T = arc_to_syt(parse_perm("215634"))
    assert T == near_hook_from_rows([1, 3, 6], [1, 2, 5], 4)
    assert arc_perm_to_syt(parse_perm("213645")) == T


def test_arc_to_syt_identity():
    for n in range(2, 8):
        T = arc_to_syt(identity(n))
        assert T == near_hook_from_rows(list(range(1, n)), [1], n)


def test_arc_perm_to_syt_bijection():
    for n in range(2, 10):
        targets = set()
        for k in range(n - 1):
            targets.update(enumerate_syt(near_hook_shape(n, k)))
        images = set()
        for p in arc_permutations(n):
            T = arc_perm_to_syt(p)
            assert cdes_near_hook(T) == cdes_set(p)
            images.add(T)
        assert images == targets


@given(comps(min_n=2, max_n=7))
def test_vertical_and_horizontal_agree_on_inverse_intervals(gamma):
    n = sum(gamma) + 1
    k = len(gamma) - 1
    if k >= n - 1:
        return
    A = inverse_descent_class(n - 1, interval_mask(k))
    assert cdes_dist(vertical_closure(A, n), True) == cdes_dist(horizontal_closure(A, n), True)
