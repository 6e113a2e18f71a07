import itertools

import pytest

from boolhier.automaton import Dfa, from_regex


def words_upto(alphabet, max_len, min_len=0):
    for n in range(min_len, max_len + 1):
        for letters in itertools.product(alphabet, repeat=n):
            yield "".join(letters)


@pytest.fixture(scope="session")
def lang():
    """Named test languages over {a, b}, compiled once."""
    regexes = {
        "all": "(a|b)*",
        "all_plus": "(a|b)+",
        "empty": "{}",
        "a_plus": "a+",
        "contains_a": "(a|b)*a(a|b)*",
        "contains_aa": "(a|b)*aa(a|b)*",
        "even": "((a|b)(a|b))*",
        "ab_star": "(ab)*",
        "b_star_a_star": "b*a*",
        "a_then_b": "(a|b)*a(a|b)*b(a|b)*",
    }
    return {name: from_regex(r, "ab") for name, r in regexes.items()}


@pytest.fixture
def parity_a():
    # state 0 = even number of a's, 1 = odd; b loops everywhere
    return Dfa(("a", "b"), ((1, 0), (0, 1)), 0, frozenset({0}))
