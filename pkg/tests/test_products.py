import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xifunctions.algebra import AlgebraKind
from xifunctions.domains import Family, in_weight_cone
from xifunctions.products import (
    REFERENCE_EXAMPLES,
    SignedWeightSum,
    check_reference_examples,
    decompose,
    normalize,
    verify_decomposition,
)
from xifunctions.verify import FAMILY_PAIRS

KINDS = list(AlgebraKind)
weights = st.tuples(st.integers(-6, 6), st.integers(-6, 6))


def test_e_plus_example():
    d = decompose("e+", "e+", (5, 3), (1, 1), "C2")
    assert d.target is Family.E_PLUS
    assert sorted(d.terms) == sorted([(1, (6, 4)), (1, (2, 5)), (1, (8, 1)), (1, (4, 2))])
    assert verify_decomposition(d, "e+", "e+", (5, 3), (1, 1), "C2", trials=100) < 1e-10


def test_s_minus_example():
    d = decompose("s-", "s-", (5, 3), (1, 1), "C2")
    assert d.target is Family.S_PLUS
    assert sorted(d.terms) == sorted([(1, (6, 4)), (-1, (2, 4)), (-1, (8, 2)), (1, (4, 2))])


def test_reference_blocks():
    checks = check_reference_examples()
    assert len(checks) == 9
    for c in checks:
        assert c.computed_error < 1e-10
    flagged = [c for c in checks if not c.matches]
    assert len(flagged) == 1
    bad = flagged[0]
    assert (bad.line.left, bad.line.right) == (Family.L_MINUS, Family.L_MINUS)
    assert (-1, (2, 4)) in bad.line.printed.terms
    assert (-1, (6, 1)) in bad.computed.terms
    assert bad.printed_error > 1.0


def test_l_plus_times_l_minus_line():
    d = decompose("l+", "l-", (5, 3), (1, 1), "C2")
    assert d.as_multiset() == REFERENCE_EXAMPLES["l"][2].printed.as_multiset()
    assert verify_decomposition(d, "l+", "l-", (5, 3), (1, 1), "C2") < 1e-10


@pytest.mark.parametrize("kind", KINDS)
def test_trivial_second_factor(kind):
    for left, right in FAMILY_PAIRS:
        d = decompose(left, right, (2, 1), (0, 0), kind)
        if right.is_plus:
            assert d.terms == tuple((1, (2, 1)) for _ in d.terms)
        assert len(d.terms) == (4 if kind is AlgebraKind.C2 else 6)


def test_zero_weights_give_squared_kernel_order():
    for kind, order in (("C2", 4), ("G2", 6)):
        d = decompose("s+", "s+", (0, 0), (0, 0), kind)
        assert abs(complex(d.evaluate(0.3, 0.7)) - order * order) < 1e-12
        assert verify_decomposition(d, "s+", "s+", (0, 0), (0, 0), kind) < 1e-12


def test_mismatched_kernels_rejected():
    with pytest.raises(ValueError):
        decompose("s+", "l-", (1, 1), (1, 1), "C2")


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(KINDS), st.sampled_from(FAMILY_PAIRS), weights, weights)
def test_random_decompositions(kind, pair, lam, lam2):
    left, right = pair
    d = decompose(left, right, lam, lam2, kind)
    assert verify_decomposition(d, left, right, lam, lam2, kind, trials=20) < 1e-10
    assert (d.target.letter, d.target.is_plus) == (left.letter, left.is_plus == right.is_plus)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(KINDS), st.sampled_from(FAMILY_PAIRS), weights, weights)
def test_products_commute(kind, pair, lam, lam2):
    left, right = pair
    a = decompose(left, right, lam, lam2, kind)
    b = decompose(right, left, lam2, lam, kind)
    x, y = np.random.default_rng(0).random((2, 10))
    assert np.max(np.abs(a.evaluate(x, y) - b.evaluate(x, y))) < 1e-10


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(KINDS), st.sampled_from(FAMILY_PAIRS), weights, weights)
def test_normalization_preserves_the_function(kind, pair, lam, lam2):
    left, right = pair
    d = decompose(left, right, lam, lam2, kind)
    n = normalize(d)
    assert all(in_weight_cone(w, kind, n.target) for _, w in n.terms)
    assert len({w for _, w in n.terms}) == len(n.terms)
    x, y = np.random.default_rng(1).random((2, 10))
    assert np.max(np.abs(d.evaluate(x, y) - n.evaluate(x, y))) < 1e-10


def test_text_and_json():
    d = decompose("l-", "l-", (5, 3), (1, 1), "C2")
    assert str(d).startswith("Xi^l+_(6,4)")
    doc = d.to_json()
    assert doc["family"] == "l+"
    assert len(doc["terms"]) == 4
    assert str(SignedWeightSum(AlgebraKind.C2, Family.E_PLUS, ())) == "0"
