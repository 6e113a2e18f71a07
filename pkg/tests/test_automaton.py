import json
import re

import pytest
from hypothesis import given, settings, strategies as st

from boolhier.automaton import (AND, Dfa, OR, complement, equivalent, from_regex, load_dfa, minimize, parse_dfa,
                                parse_dfa_json, parse_regex, product, restrict_nonempty, trim, with_epsilon)
from boolhier.errors import AlphabetError, AlphabetMismatch, DfaSyntaxError, ValidationError
from boolhier.harness import random_dfa

from conftest import words_upto

SAMPLE_TEXT = """\
alphabet: ab
states: 3
start: 0
accepting: 1 2
0 a 1
0 b 2
1 a 1
1 b 2
2 a 1
2 b 2
"""

seeds = st.integers(min_value=0, max_value=10**6)


def test_parse_text_format():
    M = parse_dfa(SAMPLE_TEXT)
    assert M.alphabet == ("a", "b")
    assert M.num_states == 3
    assert M.accepting == {1, 2}
    assert M.accepts("ab") and not M.accepts("")


def test_comments_and_order_do_not_matter():
    lines = SAMPLE_TEXT.splitlines()
    shuffled = "\n".join(lines[:4] + list(reversed(lines[4:])) + ["# trailing comment"])
    assert parse_dfa(shuffled) == parse_dfa(SAMPLE_TEXT)


def test_json_form_is_equivalent():
    M = parse_dfa(SAMPLE_TEXT)
    assert parse_dfa_json(M.to_json()) == M
    assert parse_dfa(json.dumps(M.to_json())) == M


def test_load_from_file(tmp_path):
    path = tmp_path / "m.dfa"
    path.write_text(SAMPLE_TEXT)
    assert load_dfa(path) == parse_dfa(SAMPLE_TEXT)


def test_partial_table_is_rejected_unless_asked():
    partial = "alphabet: ab\nstates: 2\nstart: 0\naccepting: 1\n0 a 1\n"
    with pytest.raises(ValidationError):
        parse_dfa(partial)
    M = parse_dfa(partial, complete_with_sink=True)
    assert M.accepts("a") and not M.accepts("b") and not M.accepts("aa")


@pytest.mark.parametrize("text, error", [
    ("alphabet: ab\nstates: 1\nstart: 0\naccepting:\n0 a 0\n0 a 0\n0 b 0\n", ValidationError),
    ("alphabet: ab\nstates: 1\nstart: 0\naccepting:\n0 c 0\n", ValidationError),
    ("alphabet: ab\nstates: 1\nstart: 3\naccepting:\n0 a 0\n0 b 0\n", ValidationError),
    ("alphabet: ab\nstates: x\n", DfaSyntaxError),
    ("alphabet: ab\nstates: 1\nstart: 0\n0 a\n", DfaSyntaxError),
    ("colour: blue\n", DfaSyntaxError),
    ("{not json", DfaSyntaxError),
])
def test_malformed_input(text, error):
    with pytest.raises(error):
        parse_dfa(text)


def test_unknown_letter_in_word():
    with pytest.raises(AlphabetError):
        parse_dfa(SAMPLE_TEXT).accepts("abc")


@pytest.mark.parametrize("regex, states", [
    ("a*", 2),
    ("{}", 1),
    ("∅", 1),
    ("(ab)*", 3),
    ("(a|b)*", 1),
])
def test_regex_state_counts(regex, states):
    assert from_regex(regex, "ab").num_states == states


def test_empty_regex_rejects_everything():
    M = from_regex("{}", "ab")
    assert not M.accepting


@pytest.mark.parametrize("regex", [
    "a*", "(ab)*", "a+", "b*a*", "(a|b)*aa(a|b)*", "((a|b)(a|b))*", "a?b", "(a|())b", "(a|b)*a(a|b)*b(a|b)*",
    "(aab|b)*a+", "ε|ab",
])
def test_regex_matches_python_re(regex):
    M = from_regex(regex, "ab")
    pattern = re.compile(regex.replace("ε", "()").replace("∅", "[^\\s\\S]"))
    for w in words_upto("ab", 7):
        assert M.accepts(w) == bool(pattern.fullmatch(w)), w


@pytest.mark.parametrize("bad", ["(ab", "a|*", "ab)", "a**c"])
def test_regex_syntax_errors(bad):
    with pytest.raises((DfaSyntaxError, AlphabetError)):
        parse_regex(bad, "ab")


def test_regex_letter_outside_alphabet():
    with pytest.raises(AlphabetError):
        from_regex("abc", "ab")


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_minimize_preserves_language(seed):
    M = random_dfa(seed, 5)
    small = minimize(M)
    assert small.num_states <= M.num_states
    for w in words_upto("ab", 2 * M.num_states):
        assert small.accepts(w) == M.accepts(w)
    assert minimize(small) == small


@settings(max_examples=60, deadline=None)
@given(seeds, st.text(alphabet="ab", max_size=6), st.text(alphabet="ab", max_size=6))
def test_run_is_compositional(seed, u, v):
    M = random_dfa(seed, 5)
    assert M.run(u + v) == M.delta_word(M.run(u), v)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_complement_flips_every_word(seed):
    M = random_dfa(seed, 5)
    co = complement(M)
    for w in words_upto("ab", 6):
        assert co.accepts(w) != M.accepts(w)
    assert equivalent(complement(co), M)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_self_product_is_the_language(seed):
    M = random_dfa(seed, 4)
    assert equivalent(product(M, M, AND), minimize(M))
    for w in words_upto("ab", 8):
        assert product(M, M, AND).accepts(w) == M.accepts(w)


@settings(max_examples=30, deadline=None)
@given(seeds, seeds)
def test_product_combiners(s1, s2):
    M1, M2 = random_dfa(s1, 3), random_dfa(s2, 3)
    both, either = product(M1, M2, AND), product(M1, M2, OR)
    for w in words_upto("ab", 5):
        assert both.accepts(w) == (M1.accepts(w) and M2.accepts(w))
        assert either.accepts(w) == (M1.accepts(w) or M2.accepts(w))


def test_product_needs_common_alphabet():
    with pytest.raises(AlphabetMismatch):
        product(from_regex("a*", "ab"), from_regex("a*", "abc"))


def test_equivalent_distinguishes():
    assert equivalent(from_regex("(a|b)*", "ab"), from_regex("(a*b*)*", "ab"))
    assert not equivalent(from_regex("a*", "ab"), from_regex("a+", "ab"))


@settings(max_examples=40, deadline=None)
@given(seeds, st.booleans())
def test_epsilon_toggle_touches_only_the_empty_word(seed, accept_empty):
    M = random_dfa(seed, 5)
    E = with_epsilon(M, accept_empty)
    assert E.accepts("") == accept_empty
    for w in words_upto("ab", 6, min_len=1):
        assert E.accepts(w) == M.accepts(w)
    assert not restrict_nonempty(M).accepts("")


def test_trim_keeps_reachable_part():
    M = Dfa(("a",), ((0,), (1,)), 0, frozenset({1}))
    assert trim(M).num_states == 1
    assert equivalent(trim(M), M)


def test_text_round_trip(lang):
    for M in lang.values():
        assert parse_dfa(M.to_text()) == M


def test_construction_validates():
    with pytest.raises(ValidationError):
        Dfa(("a",), ((1,),), 0, frozenset())
    with pytest.raises(ValidationError):
        Dfa(("a", "a"), ((0, 0),), 0, frozenset())
