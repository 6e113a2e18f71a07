import pytest
from hypothesis import given, settings, strategies as st

from boolhier.automaton import complement, with_epsilon
from boolhier.ckd import CkdQuery, configuration_bound, decide_ckd, min_level_ckd
from boolhier.errors import BoundsError, BudgetExceeded
from boolhier.harness import random_dfa
from boolhier.results import TRUNCATED, ExceedsCap, Level
from boolhier.word_orders import OrderParams, Semantics, check_chain, oracle_chain_search

seeds = st.integers(min_value=0, max_value=10**6)


def test_a_plus(lang):
    M = lang["a_plus"]
    first = decide_ckd(M, CkdQuery(0, 1, 1))
    assert not first.in_class
    assert first.witness.words == ("a", "ab")
    assert decide_ckd(M, CkdQuery(0, 1, 2)).in_class
    assert oracle_chain_search(M, OrderParams(0, 1), 2, max_word_len=10) is None


def test_even_length(lang):
    M = lang["even"]
    assert decide_ckd(M, k=0, d=2, n=1).in_class
    three = decide_ckd(M, k=0, d=1, n=3)
    assert not three.in_class
    assert [len(w) for w in three.witness.words] == [2, 3, 4, 5]
    assert check_chain(M, three.witness.words, OrderParams(0, 1)) == []


def test_factor_versus_subword(lang):
    M = lang["contains_aa"]
    assert decide_ckd(M, k=1, d=1, n=1).in_class
    for n in range(1, 5):
        assert not decide_ckd(M, k=0, d=1, n=n).in_class


def test_min_level(lang):
    assert min_level_ckd(lang["all_plus"], 0, 1, 4) == Level(1)
    assert min_level_ckd(lang["a_plus"], 0, 1, 4) == Level(2)
    assert min_level_ckd(lang["even"], 0, 1, 4) == ExceedsCap(4)
    with pytest.raises(BoundsError):
        min_level_ckd(lang["a_plus"], cap=0)


def test_empty_and_full_languages(lang):
    for name in ("empty", "all", "all_plus"):
        for k, d in [(0, 1), (2, 3)]:
            assert decide_ckd(lang[name], k=k, d=d, n=1).in_class


def test_budget_refusal(lang):
    with pytest.raises(BudgetExceeded):
        decide_ckd(lang["ab_star"], k=2, d=3, n=3, budget=1000)
    assert configuration_bound(4, 2, CkdQuery(1, 2, 3)) == 4**4 * 2**4 * 2**4


def test_query_validation():
    with pytest.raises(BoundsError):
        CkdQuery(0, 1, 0)
    with pytest.raises(BoundsError):
        CkdQuery(5, 1, 1)
    CkdQuery(5, 1, 1, enforce_caps=False)


def test_stats_are_reported(lang):
    stats = decide_ckd(lang["a_plus"], k=1, d=1, n=2).stats
    assert stats["configurations_explored"] > 0
    assert stats["wall_ms"] >= 0


@settings(max_examples=80, deadline=None)
@given(seeds, st.integers(0, 1), st.integers(1, 2), st.integers(1, 3))
def test_witnesses_replay(seed, k, d, n):
    M = random_dfa(seed, 4)
    decision = decide_ckd(M, k=k, d=d, n=n)
    if not decision.in_class and decision.witness is not TRUNCATED:
        assert check_chain(M, decision.witness.words, OrderParams(k, d)) == []
        assert len(decision.witness.words) == n + 1


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(0, 1), st.integers(1, 2), st.integers(1, 3))
def test_oracle_chain_forces_negative_verdict(seed, k, d, n):
    M = random_dfa(seed, 4)
    if oracle_chain_search(M, OrderParams(k, d), n, 7) is not None:
        assert not decide_ckd(M, k=k, d=d, n=n).in_class


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_monotonicity(seed):
    M = random_dfa(seed, 4)
    got = {(k, d, n): decide_ckd(M, k=k, d=d, n=n).in_class for k in (0, 1) for d in (1, 2, 4) for n in (1, 2, 3)}
    for (k, d, n), inside in got.items():
        if inside:
            assert got.get((k, d, n + 1), True)
            assert got.get((k + 1, d, n), True)
            assert all(got[(k, d2, n)] for d2 in (1, 2, 4) if d2 % d == 0)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 3))
def test_empty_word_is_irrelevant(seed, n):
    M = random_dfa(seed, 4)
    a = decide_ckd(with_epsilon(M, True), k=0, d=1, n=n).in_class
    b = decide_ckd(with_epsilon(M, False), k=0, d=1, n=n).in_class
    assert a == b


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_complement_shift(seed):
    M = random_dfa(seed, 4)
    a, b = min_level_ckd(M, cap=4), min_level_ckd(complement(M), cap=4)
    if isinstance(a, Level) and isinstance(b, Level):
        assert abs(a.n - b.n) <= 1


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 3), st.integers(1, 3))
def test_literal_semantics_exact_for_k_zero(seed, d, n):
    M = random_dfa(seed, 4)
    p = OrderParams(0, d, Semantics.LITERAL)
    decision = decide_ckd(M, k=0, d=d, n=n, semantics=Semantics.LITERAL)
    if oracle_chain_search(M, p, n, 7) is not None:
        assert not decision.in_class
    if not decision.in_class:
        assert check_chain(M, decision.witness.words, p) == []


def test_literal_even_length_is_not_an_upper_set(lang):
    # without the length residue, aa <= aaa, so parity is not preserved
    assert not decide_ckd(lang["even"], k=0, d=2, n=1, semantics="literal").in_class
