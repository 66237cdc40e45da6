import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finring.ring import (
    FiniteRing,
    RingError,
    ValidationReport,
    additive_exponent,
    canonical_form,
    cyclic_ring,
    direct_product,
    find_unit,
    format_ring,
    galois_field,
    is_non_degenerate,
    matrix_ring,
    parse_ring,
    relabel,
    replay_violation,
    validate_ring,
    zero_ring,
)

from _oracles import axiom_failures

XOR = [[0, 1], [1, 0]]


def test_z2_is_valid_with_unit():
    R = validate_ring(XOR, [[0, 0], [0, 1]])
    assert isinstance(R, FiniteRing)
    assert R.unit == 1


def test_nonassociative_order_two():
    report = validate_ring(XOR, [[0, 1], [0, 0]])
    assert isinstance(report, ValidationReport) and not report.ok
    assert "MUL_ASSOC_FAIL" in report.codes()
    for code, w in report.violations:
        assert replay_violation(XOR, [[0, 1], [0, 0]], code, w)
    # (1,1,1) breaks associativity here as well; the report gives the first witness in C order
    assert replay_violation(XOR, [[0, 1], [0, 0]], "MUL_ASSOC_FAIL", (1, 1, 1))


def test_zero_ring_order_two():
    R = validate_ring(XOR, [[0, 0], [0, 0]])
    assert isinstance(R, FiniteRing)
    assert R.unit is None


@pytest.mark.parametrize("add, mul", [
    ([[0, 1]], [[0, 1]]),
    ([[0, 1], [1, 0]], [[0, 0, 0], [0, 0, 0]]),
    ([[0, 2], [2, 0]], [[0, 0], [0, 0]]),
    ([[0, -1], [1, 0]], [[0, 0], [0, 0]]),
])
def test_shape_errors(add, mul):
    with pytest.raises(RingError) as exc:
        validate_ring(add, mul)
    assert exc.value.code == "SHAPE"


def test_zero_must_sit_at_index_zero():
    # Z2 with the labels swapped: 1 is the additive identity
    report = validate_ring([[1, 0], [0, 1]], [[1, 1], [1, 0]])
    assert "ZERO_NOT_AT_0" in report.codes()


def test_find_unit(rings):
    assert find_unit(rings["Z4"]) == 1
    assert find_unit(rings["zero4"]) is None
    assert find_unit(rings["M2"]) == 9  # identity matrix digits 1001


def test_additive_exponent(rings):
    assert additive_exponent(rings["Z4"]) == 4
    assert additive_exponent(rings["K4"]) == 2
    Z = direct_product(zero_ring(2), zero_ring(4))
    # direct scan: least m with m.x = 0 for every x
    m = next(m for m in range(1, Z.order + 1)
             if all(Z.scalar(m, x) == 0 for x in range(Z.order)))
    assert additive_exponent(Z) == m == 4
    assert Z.order % additive_exponent(Z) == 0


def test_non_degeneracy(rings):
    assert is_non_degenerate(rings["Z2"]) == (True, None)
    assert is_non_degenerate(rings["zero2"]) == (False, (1, "rR"))
    assert is_non_degenerate(rings["K4"])[0]


def test_direct_product_encoding(rings):
    K = rings["K4"]
    assert K.order == 4 and K.unit == 1 * 2 + 1
    assert direct_product(rings["zero2"], rings["Z2"]).unit is None
    one = zero_ring(1)
    assert direct_product(rings["Z4"], one) == rings["Z4"]


def test_direct_product_unit_iff_both(catalog):
    small = [e.ring for e in catalog.entries if 1 < e.ring.order <= 4]
    for A in small:
        for B in small[:6]:
            P = direct_product(A, B)
            assert isinstance(validate_ring(P.add, P.mul), FiniteRing)
            assert (P.unit is not None) == (A.unit is not None and B.unit is not None)


def test_canonical_form_fixed_point(rings):
    C, _ = canonical_form(rings["K4"])
    C2, perm = canonical_form(C)
    assert C2 == C


def test_canonical_form_all_relabelings_of_k4(rings):
    K = rings["K4"]
    forms = set()
    for p in [(1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1)]:
        forms.add(canonical_form(relabel(K, (0,) + p))[0].key())
    assert len(forms) == 1


def test_canonical_form_separates_z4_and_zero4(rings):
    assert canonical_form(rings["Z4"])[0] != canonical_form(rings["zero4"])[0]


def test_canonical_perm_maps_to_canonical(rings):
    R = rings["Z8"]
    C, perm = canonical_form(R)
    assert relabel(R, perm) == C
    assert perm[0] == 0


def test_canonical_bound():
    with pytest.raises(RingError) as exc:
        canonical_form(cyclic_ring(9))
    assert exc.value.code == "BOUND_EXCEEDED"
    C, _ = canonical_form(cyclic_ring(9), bound=9)
    assert C.order == 9


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_canonical_form_is_isomorphism_invariant(catalog, data):
    entry = data.draw(st.sampled_from([e for e in catalog.entries if e.ring.order <= 8]))
    R = entry.ring
    tail = data.draw(st.permutations(list(range(1, R.order))))
    S = relabel(R, [0] + list(tail))
    assert canonical_form(S)[0] == canonical_form(R)[0]


def test_named_rings_validate():
    for R in (matrix_ring(2, 2), galois_field(2, (1, 1, 0, 0, 1)), cyclic_ring(16), zero_ring(5)):
        assert isinstance(validate_ring(R.add, R.mul), FiniteRing)
    F = galois_field(2, (1, 1, 0, 0, 1))
    # a field: every nonzero element is invertible
    assert all((F.mul[x] == F.unit).any() for x in range(1, 16))


def test_validated_rings_satisfy_axioms_by_oracle(catalog):
    for e in catalog.entries[:30]:
        assert axiom_failures(e.ring.add.tolist(), e.ring.mul.tolist()) == set()


def test_text_round_trip(catalog):
    for e in catalog.entries:
        text = format_ring(e.ring)
        assert parse_ring(text) == e.ring
        assert text.endswith("\n") and "\r" not in text


def test_text_comments_and_errors():
    text = "# Z2\nring 2\nadd\n0 1  # row 0\n1 0\nmul\n0 0\n0 1\n"
    assert parse_ring(text) == cyclic_ring(2)
    with pytest.raises(RingError):
        parse_ring("ring 2\nadd\n0 1\n1 0\nmul\n0 0\n")
    with pytest.raises(RingError) as exc:
        parse_ring("ring 2\nadd\n1 0\n0 1\nmul\n1 1\n1 0\n")
    assert exc.value.code == "ZERO_NOT_AT_0"


def test_tables_are_read_only(rings):
    with pytest.raises(ValueError):
        rings["Z2"].add[0, 0] = 1
    assert np.array_equal(rings["Z2"].neg, [0, 1])
