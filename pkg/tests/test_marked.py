import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from boolhier.errors import BoundsError, DfaSyntaxError
from boolhier.harness import corpus_entry, load_corpus, random_dfa
from boolhier.marked import (MarkedLetter, check_marked_chain, embeds, expand, f0, format_marked, is_consistent,
                             marked, oracle_longest_marked_chains, oracle_marked_chain_search, random_consistent_word,
                             run_marked, satisfies_alphabet_condition)

L = MarkedLetter


def embeds_by_definition(w, w2, d):
    """Try every set of matched positions in w2; gaps must be blocks closing on their context letter."""
    if len(w2) < len(w):
        return False
    for chosen in itertools.combinations(range(len(w2)), len(w)):
        if any(w2[p] != c for p, c in zip(chosen, w)):
            continue
        ok = True
        bounds = list(chosen) + [len(w2)]
        if chosen and chosen[0] != 0:
            ok = False
        for p, nxt in zip(bounds, bounds[1:]):
            gap = nxt - p - 1
            if gap == 0:
                continue
            context = w2[p]
            if not context.label or w2[nxt - 1] != context or gap % d:
                ok = False
                break
        if not chosen and w2:
            ok = False
        if ok:
            return True
    return False


letters = st.sampled_from([L("a"), L("b"), L("a", "b"), L("b", "ab"), L("a", "a")])
marked_words = st.lists(letters, max_size=4).map(tuple)
moduli = st.integers(1, 3)


def insert_blocks(w, rng, d):
    """A random ->^d successor of w: blocks copied from w's own letters."""
    out = []
    for c in w:
        out.append(c)
        if c.label and rng.random() < 0.6:
            body = [rng.choice(w) for _ in range(rng.randrange(0, 3) * d + d - 1)]
            out.extend(body + [c])
    return tuple(out)


def test_serialization():
    w = marked("a[ba] b[] a[ba]")
    assert w == (L("a", "ba"), L("b"), L("a", "ba"))
    assert format_marked(w) == "a[ba] b[] a[ba]"
    assert marked("a b") == (L("a"), L("b"))
    with pytest.raises(DfaSyntaxError):
        marked("a[b")


def test_expand():
    w = marked("a[ba] b[]")
    assert expand(w, 0) == "ab" == f0(w)
    assert expand(w, 1) == "abab"
    assert expand(w, 2) == "ababab"


def test_run_marked(parity_a):
    run = run_marked(parity_a, 0, marked("a[aa]"))
    assert run.end == 1 and run.trace == (0, 1)
    assert run_marked(parity_a, 0, marked("a[a]")) is None
    assert run_marked(parity_a, 1, marked("a b a b")) is not None
    assert is_consistent(parity_a, marked("b[aa]"))
    assert not is_consistent(parity_a, marked("b[a]"))


@pytest.mark.parametrize("w, w2, d, expected", [
    ("a[ba]", "a[ba] b[] a[ba]", 2, True),
    ("a[]", "a[] b[]", 1, False),
    ("a[ba]", "a[ba] a[ba]", 2, False),
    ("a[ba]", "a[ba] a[ba]", 1, True),
    ("a[b] b[]", "a[b] a[b] b[]", 1, True),
    ("a[b] b[]", "a[b] b[] a[b] b[]", 1, True),
    ("a[b] b[]", "a[b] b[] b[]", 1, False),
])
def test_embeds_examples(w, w2, d, expected):
    assert embeds(marked(w), marked(w2), d) is expected
    assert embeds_by_definition(marked(w), marked(w2), d) is expected


def test_embeds_rejects_bad_modulus():
    with pytest.raises(BoundsError):
        embeds((), (), 0)


@settings(max_examples=300, deadline=None)
@given(marked_words, st.lists(letters, max_size=7).map(tuple), moduli)
def test_embeds_matches_definition(w, w2, d):
    assert embeds(w, w2, d) == embeds_by_definition(w, w2, d)


@settings(max_examples=200, deadline=None)
@given(marked_words, moduli, st.integers(0, 10**6))
def test_generated_successors_embed(w, d, seed):
    rng = random.Random(seed)
    w2 = insert_blocks(w, rng, d)
    w3 = insert_blocks(w2, rng, d)
    assert embeds(w, w, d)
    assert embeds(w, w2, d) and embeds(w2, w3, d)
    assert embeds(w, w3, d)
    assert (len(f0(w2)) - len(f0(w))) % d == 0


@settings(max_examples=300, deadline=None)
@given(marked_words, st.lists(letters, max_size=7).map(tuple), moduli)
def test_embeds_divisibility_and_residues(w, w2, d):
    if embeds(w, w2, 2 * d):
        assert embeds(w, w2, d)
    if embeds(w, w2, d):
        assert (len(f0(w2)) - len(f0(w))) % d == 0


def test_alphabet_condition():
    assert satisfies_alphabet_condition(marked("a[ab] b[] b[ba]"), "ab")
    assert not satisfies_alphabet_condition(marked("a[aa]"), "ab")


def test_pumping_on_corpus():
    rng = random.Random(7)
    for entry in load_corpus():
        M = entry.dfa
        for _ in range(40):
            w = random_consistent_word(M, rng)
            assert is_consistent(M, w)
            for j in (1, 2, 3):
                assert M.run(expand(w, j)) == M.run(expand(w, 0))


def test_oracle_a_plus():
    M = corpus_entry("a_plus").dfa
    chain = oracle_marked_chain_search(M, 1, 1)
    assert chain.memberships == (True, False)
    assert check_marked_chain(M, chain.words, 1) == []
    assert oracle_marked_chain_search(M, 1, 2) is None


def test_oracle_upper_set_and_parity():
    assert oracle_marked_chain_search(corpus_entry("all_plus").dfa, 1, 1) is None
    assert oracle_marked_chain_search(corpus_entry("even_length").dfa, 2, 1) is None


def test_oracle_alphabet_condition():
    M = corpus_entry("ab_star").dfa
    chain = oracle_marked_chain_search(M, 1, 1, alphabet_condition=True, allow_empty_words=True)
    assert check_marked_chain(M, chain.words, 1, True, True) == []
    assert oracle_marked_chain_search(M, 1, 2, alphabet_condition=True, allow_empty_words=True) is None


def test_oracle_answers_all_lengths_at_once():
    M = corpus_entry("even_length").dfa
    chains = oracle_longest_marked_chains(M, 1, 3)
    assert sorted(chains) == [1, 2, 3]
    for n, chain in chains.items():
        assert chain.length == n
        assert check_marked_chain(M, chain.words, 1) == []


def test_oracle_caps():
    with pytest.raises(BoundsError):
        oracle_marked_chain_search(corpus_entry("a_plus").dfa, 1, 1, max_marked_len=20)


def test_check_marked_chain_reports_problems(parity_a):
    assert check_marked_chain(parity_a, [marked("a[a]"), marked("a[a] b")], 1)
    assert check_marked_chain(parity_a, [(), marked("a")], 1)
    assert check_marked_chain(parity_a, [(), marked("a")], 1, allow_empty_words=True) == [
        "word 0 does not embed into word 1 for d=1"]
    assert check_marked_chain(parity_a, [marked("c")], 1)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_random_consistent_words(seed):
    M = random_dfa(seed, 5)
    w = random_consistent_word(M, random.Random(seed))
    assert is_consistent(M, w)
