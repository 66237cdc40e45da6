import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finring.ring import RingError, cyclic_ring, zero_ring
from finring.subsets import (
    Subset,
    additive_closure,
    classify_subset,
    decompose_element,
    enumerate_ideals,
    enumerate_subgroups,
    induced_ring,
    is_idempotent,
    parse_subset,
    format_subset,
    replay_decomposition,
    subset_product,
    triple_product,
)
from finring.morphisms import find_isomorphism

from _oracles import naive_closure, naive_product, naive_subgroups


def test_closure_examples(rings):
    Z8 = rings["Z8"]
    assert additive_closure(Subset(Z8, 0)).members() == [0]
    assert additive_closure(Subset.of(Z8, [2])).members() == [0, 2, 4, 6]
    H = Subset.of(Z8, [0, 4])
    assert additive_closure(H) == H


def test_product_examples(rings):
    Z4, K = rings["Z4"], rings["K4"]
    assert subset_product(Subset.zero(Z4), Subset.full(Z4)).members() == [0]
    two = Subset.of(Z4, [0, 2])
    assert subset_product(two, two).members() == [0]
    S = Subset.of(K, [0, 2])  # {(0,0), (1,0)}
    full = Subset.full(K)
    assert triple_product(full, S, full) == S


def test_product_parent_mismatch(rings):
    with pytest.raises(RingError) as exc:
        subset_product(Subset.zero(rings["Z4"]), Subset.zero(rings["Z8"]))
    assert exc.value.code == "PARENT_MISMATCH"


def test_classify_examples(rings):
    K = rings["K4"]
    for A in (Subset.full(K), Subset.zero(K), Subset.of(K, [0, 2])):
        c = classify_subset(A)
        assert c.is_ideal and c.is_subring and c.is_additive_subgroup
    c = classify_subset(Subset.of(rings["Z4"], [0, 1]))
    assert not c.is_additive_subgroup and not c.is_ideal


def test_idempotency_examples(rings):
    assert is_idempotent(Subset.full(rings["Z8"]))
    assert not is_idempotent(Subset.full(rings["zero4"]))
    evens = Subset.of(rings["Z8"], [0, 2, 4, 6])
    assert subset_product(evens, evens).members() == [0, 4]
    assert not is_idempotent(evens)
    with pytest.raises(RingError) as exc:
        is_idempotent(Subset.of(rings["Z8"], [0, 3]))
    assert exc.value.code == "NOT_SUBRING"


def test_enumerate_ideals_examples(rings):
    assert [I.members() for I in enumerate_ideals(rings["Z2"])] == [[0], [0, 1]]
    assert [I.members() for I in enumerate_ideals(rings["M2"])] == [[0], list(range(16))]
    assert [I.members() for I in enumerate_ideals(rings["K4"])] == [[0], [0, 1], [0, 2], [0, 1, 2, 3]]
    with pytest.raises(RingError):
        enumerate_ideals(cyclic_ring(17))


def test_subgroups_match_naive_scan(catalog):
    for e in catalog.entries:
        if e.ring.order > 8:
            continue
        got = {frozenset(Subset(e.ring, m).members()) for m in enumerate_subgroups(e.ring)}
        assert got == naive_subgroups(e.ring.add.tolist())


def test_ideals_closed_under_intersection(catalog):
    for e in catalog.entries:
        masks = {I.mask for I in e.ideals}
        assert 1 in masks and e.ring.full_mask() in masks
        for a in masks:
            for b in masks:
                assert a & b in masks
        assert [I.mask for I in e.ideals] == sorted(masks)


def test_induced_ring_examples(rings):
    K, Z4 = rings["K4"], rings["K4"]
    R, emb = induced_ring(Subset.full(K))
    assert R == K and list(emb) == [0, 1, 2, 3]
    R, _ = induced_ring(Subset.of(K, [0, 2]))
    assert find_isomorphism(R, rings["Z2"]) is not None
    R, _ = induced_ring(Subset.of(rings["Z4"], [0, 2]))
    assert R == zero_ring(2)
    with pytest.raises(RingError):
        induced_ring(Subset.of(rings["Z4"], [0, 1]))


def test_decompose_examples(rings):
    Z4 = rings["Z4"]
    assert decompose_element(Subset.full(Z4), 0) == []
    w = decompose_element(Subset.full(Z4), 3)
    assert replay_decomposition(Z4, w) == 3 and w == [(1, 3)]
    assert decompose_element(Subset.of(Z4, [0, 2]), 2) is None


def test_decompose_matches_product(catalog):
    for e in catalog.entries:
        if e.ring.order > 8:
            continue
        R = e.ring
        full = Subset.full(R)
        RR = subset_product(full, full)
        for r in range(R.order):
            w = decompose_element(full, r)
            assert (w is not None) == (r in RR)
            if w is not None:
                assert replay_decomposition(R, w) == r


def test_subset_text_form(rings):
    K = rings["K4"]
    S = parse_subset("subset 2: 0 2", K)
    assert format_subset(S) == "subset 2: 0 2"
    for bad in ("subset 3: 0 2", "subset 2: 2 0", "set 1: 0", "subset 1: 9"):
        with pytest.raises(RingError):
            parse_subset(bad, K)


def _small(catalog):
    return [e.ring for e in catalog.entries if 1 < e.ring.order <= 8]


@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_product_matches_naive(catalog, data):
    R = data.draw(st.sampled_from(_small(catalog)))
    n = R.order
    a = data.draw(st.integers(0, (1 << n) - 1))
    b = data.draw(st.integers(0, (1 << n) - 1))
    A, B = Subset(R, a), Subset(R, b)
    expect = naive_product(R.add.tolist(), R.mul.tolist(), A.members(), B.members())
    assert set(subset_product(A, B).members()) == expect
    assert set(additive_closure(A).members()) == naive_closure(R.add.tolist(), A.members())


@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_product_associative_and_monotone(catalog, data):
    R = data.draw(st.sampled_from(_small(catalog)))
    n = R.order
    a, a2, b, c = (data.draw(st.integers(0, (1 << n) - 1)) for _ in range(4))
    A, B, C = Subset(R, a), Subset(R, b), Subset(R, c)
    assert subset_product(subset_product(A, B), C) == subset_product(A, subset_product(B, C))
    bigger = Subset(R, a | a2)
    assert subset_product(A, B) <= subset_product(bigger, B)


def test_classify_invariants(catalog):
    for e in catalog.entries[:40]:
        R = e.ring
        for m in range(0, 1 << R.order, max(1, (1 << R.order) // 64)):
            c = classify_subset(Subset(R, m))
            assert c.is_ideal == (c.is_left_ideal and c.is_right_ideal and c.is_additive_subgroup)
            assert not c.is_subring or c.is_additive_subgroup
