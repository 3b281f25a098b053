"""Disperser construction, verification, lifting, and serialization."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapred import (
    Disperser,
    ParseError,
    ValidationError,
    deterministic_disperser,
    disperser_subset_size,
    emit_disperser,
    lift_disperser,
    parse_disperser,
    random_disperser,
    verify_disperser,
)


def test_subset_size_caps_at_universe():
    # 3m/(eps*r) = 30 > m = 4, so the size is capped at the universe.
    assert disperser_subset_size(4, 2, 0.5) == 4
    assert disperser_subset_size(20, 4, 0.5) == 20
    # eps=0.9, r=6: ceil(60/5.4) = 12 < 20.
    assert disperser_subset_size(20, 6, 0.9) == 12


def test_random_disperser_full_sets_when_capped():
    d = random_disperser(4, 3, 2, 0.5, seed=0)
    assert d.ell == 4
    assert all(s == frozenset(range(4)) for s in d.subsets)


def test_random_disperser_deterministic():
    a = random_disperser(20, 8, 6, 0.9, seed=7)
    b = random_disperser(20, 8, 6, 0.9, seed=7)
    assert a == b


def test_regime_flag():
    assert random_disperser(20, 8, 4, 0.5, seed=0).regime_ok  # ln 8 <= 5
    assert not random_disperser(4, 100, 4, 0.5, seed=0).regime_ok


def test_verify_pass_and_fail():
    ok = Disperser(4, 2, 2, 2, 0.5, (frozenset({0, 1}), frozenset({2, 3})))
    assert verify_disperser(ok) is None
    bad = Disperser(4, 2, 2, 2, 0.25, (frozenset({0, 1}), frozenset({0, 1})))
    assert verify_disperser(bad) == (0, 1)


def test_verify_threshold_is_exact():
    # union of size exactly (1-eps)m passes ("at least").
    d = Disperser(4, 2, 2, 2, 0.5, (frozenset({0, 1}), frozenset({0, 1})))
    assert verify_disperser(d) is None


def test_disperser_invariants():
    with pytest.raises(ValidationError):
        Disperser(4, 2, 3, 2, 0.5, (frozenset({0, 1}), frozenset({2, 3})))
    with pytest.raises(ValidationError):
        Disperser(4, 2, 2, 2, 1.5, (frozenset({0, 1}), frozenset({2, 3})))
    with pytest.raises(ValidationError):
        Disperser(4, 2, 2, 2, 0.5, (frozenset({0, 5}), frozenset({2, 3})))


def test_lift_preserves_union_fractions_exactly():
    small = Disperser(4, 2, 3, 2, 0.5, (frozenset({0, 1, 2}), frozenset({1, 2, 3})))
    assert verify_disperser(small) is None
    lifted = lift_disperser(small, 2)
    assert lifted.m == 8 and lifted.ell == 6
    # Spec example: pairing (block, offset) maps {1,2,3} to {1,2,3,5,6,7} 1-indexed.
    assert sorted(lifted.subsets[0]) == [0, 1, 2, 4, 5, 6]
    assert sorted(lifted.subsets[1]) == [1, 2, 3, 5, 6, 7]
    for i in range(2):
        for j in range(i + 1, 2):
            small_union = len(small.subsets[i] | small.subsets[j])
            big_union = len(lifted.subsets[i] | lifted.subsets[j])
            assert big_union == 2 * small_union
    assert verify_disperser(lifted) is None


@given(st.integers(0, 10**9), st.integers(2, 4))
@settings(max_examples=25, deadline=None)
def test_lift_union_scaling_random(seed, blocks):
    d = random_disperser(6, 3, 2, 0.5, seed=seed)
    lifted = lift_disperser(d, blocks)
    union_small = len(d.subsets[0] | d.subsets[1])
    union_big = len(lifted.subsets[0] | lifted.subsets[1])
    assert union_big == blocks * union_small


def test_deterministic_disperser_verified():
    for m, k in ((6, 2), (8, 3), (5, 3)):
        d = deterministic_disperser(m, k, 2, 0.5)
        assert d.m == m and d.k == k
        assert d.verified
        assert verify_disperser(d) is None


def test_deterministic_disperser_k1():
    d = deterministic_disperser(7, 1, 2, 0.5)
    assert verify_disperser(d) is None


def test_deterministic_disperser_reproducible():
    assert deterministic_disperser(8, 3, 2, 0.5) == deterministic_disperser(8, 3, 2, 0.5)


def test_emit_parse_roundtrip():
    d = random_disperser(10, 4, 2, 0.4, seed=3)
    assert parse_disperser(emit_disperser(d)) == d


def test_parse_disperser_errors():
    with pytest.raises(ParseError):
        parse_disperser("nope\n")
    with pytest.raises(ParseError):
        parse_disperser("disp 4 2 2 2 0.5\n1 2\n")  # missing second subset


def test_statistical_regime_no_failures():
    # Claim-4.1 regime at a size where verification is nontrivial (ell < m).
    failures = 0
    for seed in range(200):
        d = random_disperser(20, 8, 6, 0.9, seed=seed)
        assert d.ell == 12
        if verify_disperser(d) is not None:
            failures += 1
    assert failures == 0
    assert math.log(8) <= 20 / 6
