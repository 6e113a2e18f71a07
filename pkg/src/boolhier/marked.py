"""Marked words: letters ``[a, u]`` carrying a label word ``u``.

A marked word ``[a_1,u_1]...[a_m,u_m]`` expands to ``f_i(w) = a_1 u_1^i ... a_m u_m^i``;
``f_0`` forgets the labels.  A marked word is consistent with a DFA when each
label loops at the state reached right after its base letter.  Consistent
words can be pumped without changing the state they lead to, which is what
makes the insertion relation ``w ->^d w'`` below a useful chain order.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Iterable, Sequence

from .automaton import Dfa
from .errors import BoundsError, DfaSyntaxError

MAX_MARKED_LEN = 8
MAX_LABEL_LEN = 4


@dataclass(frozen=True, order=True)
class MarkedLetter:
    base: str
    label: str = ""

    def __str__(self):
        return f"{self.base}[{self.label}]"


MarkedWord = tuple  # tuple[MarkedLetter, ...]

_TOKEN = re.compile(r"(\S)\[([^\[\]\s]*)\]")


def marked(text: str) -> MarkedWord:
    """Parse ``"a[ba] b[] a[ba]"``; a bare letter ``b`` is shorthand for ``b[]``."""
    letters = []
    for tok in text.split():
        m = _TOKEN.fullmatch(tok)
        if m:
            letters.append(MarkedLetter(m.group(1), m.group(2)))
        elif len(tok) == 1 and tok not in "[]":
            letters.append(MarkedLetter(tok))
        else:
            raise DfaSyntaxError(f"malformed marked letter {tok!r}")
    return tuple(letters)


def format_marked(w: Iterable[MarkedLetter]) -> str:
    return " ".join(str(c) for c in w)


def expand(w: Sequence[MarkedLetter], i: int) -> str:
    """``f_i(w)``: every base letter followed by its label repeated ``i`` times."""
    return "".join(c.base + c.label * i for c in w)


def f0(w: Sequence[MarkedLetter]) -> str:
    return "".join(c.base for c in w)


@dataclass(frozen=True)
class ConsistencyRun:
    """``trace[i]`` is the state before letter ``i``; ``trace[-1] == end``."""

    trace: tuple[int, ...]

    @property
    def end(self) -> int:
        return self.trace[-1]


def run_marked(M: Dfa, s: int, w: Sequence[MarkedLetter]) -> ConsistencyRun | None:
    """Run ``w`` from ``s``; ``None`` if some label fails to loop where it must."""
    trace = [s]
    for c in w:
        s = M.delta(s, c.base)
        if M.delta_word(s, c.label) != s:
            return None
        trace.append(s)
    return ConsistencyRun(tuple(trace))


def is_consistent(M: Dfa, w: Sequence[MarkedLetter]) -> bool:
    return run_marked(M, M.start, w) is not None


def satisfies_alphabet_condition(w: Sequence[MarkedLetter], alphabet: Iterable[str]) -> bool:
    full = set(alphabet)
    return all(not c.label or set(c.label) == full for c in w)


def embeds(w: Sequence[MarkedLetter], w2: Sequence[MarkedLetter], d: int = 1) -> bool:
    """Decide ``w ->^d w2``: ``w2`` arises from ``w`` by inserting blocks ``z b``.

    Each block directly follows an occurrence of its context letter ``b`` (which
    must carry a nonempty label), ends with a copy of ``b`` and has a length
    divisible by ``d``.  ``reach[i]`` is the set of ``j`` such that ``w[:i]``
    has been matched into ``w2[:j]``, the last matched letter being ``w[i-1]``.
    """
    if d < 1:
        raise BoundsError("d must be >= 1")
    m, m2 = len(w), len(w2)
    if m2 < m or (m2 - m) % d:
        return False
    reach = {0}
    for i in range(m):
        c = w[i]
        nxt = set()
        for j in sorted(reach):
            if j < m2 and w2[j] == c:
                nxt.add(j + 1)
        if c.label:
            stack = list(nxt)
            while stack:
                j = stack.pop()
                for end in range(j + d, m2 + 1, d):
                    if w2[end - 1] == c and end not in nxt:
                        nxt.add(end)
                        stack.append(end)
        if not nxt:
            return False
        reach = nxt
    return m2 in reach


def check_marked_chain(M: Dfa, words: Sequence[Sequence[MarkedLetter]], d: int = 1,
                       alphabet_condition: bool = False, allow_empty_words: bool = False) -> list[str]:
    """Replay a claimed 1-alternating ``->^d`` chain of ``M``-consistent marked words."""
    problems = []
    if len(words) < 2:
        problems.append("a chain needs at least two words")
    for i, w in enumerate(words):
        for c in w:
            if c.base not in M.alphabet or any(x not in M.alphabet for x in c.label):
                problems.append(f"word {i}: letter {c} uses symbols outside the alphabet")
                return problems
        if not w and not allow_empty_words:
            problems.append(f"word {i} is empty")
        if not is_consistent(M, w):
            problems.append(f"word {i} {format_marked(w)!r} is not consistent with the automaton")
        if alphabet_condition and not satisfies_alphabet_condition(w, M.alphabet):
            problems.append(f"word {i} {format_marked(w)!r} violates the alphabet condition")
        if M.accepts(f0(w)) != (i % 2 == 0):
            problems.append(f"word {i}: f0 = {f0(w)!r} has the wrong membership")
    for i in range(len(words) - 1):
        if not embeds(words[i], words[i + 1], d):
            problems.append(f"word {i} does not embed into word {i + 1} for d={d}")
    return problems


@dataclass(frozen=True)
class MarkedChainWitness:
    words: tuple[MarkedWord, ...]
    memberships: tuple[bool, ...]

    @property
    def length(self) -> int:
        return len(self.words) - 1

    def to_json(self) -> list[str]:
        return [format_marked(w) for w in self.words]


def make_marked_witness(M: Dfa, words) -> MarkedChainWitness:
    words = tuple(tuple(w) for w in words)
    return MarkedChainWitness(words, tuple(M.accepts(f0(w)) for w in words))


def parse_marked_witness(items: Sequence[str]) -> list[MarkedWord]:
    return [marked(s) for s in items]


# -- bounded brute-force chain oracle ---------------------------------------


def _label_representatives(M: Dfa, max_label_len: int, full_alphabet: bool) -> list[tuple[str, frozenset]]:
    # Labels with the same loop set (and alphabet) are interchangeable in every
    # chain, so one shortest representative per loop set covers the bounded space.
    reps: dict[frozenset, str] = {}
    full = set(M.alphabet)
    for length in range(1, max_label_len + 1):
        for letters in cartesian(M.alphabet, repeat=length):
            u = "".join(letters)
            if full_alphabet and set(u) != full:
                continue
            loops = frozenset(s for s in M.states if M.delta_word(s, u) == s)
            if loops and loops not in reps:
                reps[loops] = u
    return [(u, loops) for loops, u in reps.items()]


class _MarkedSearch:
    def __init__(self, M: Dfa, d: int, max_len: int, max_label_len: int, alphabet_condition: bool):
        self.M, self.d, self.max_len = M, d, max_len
        reps = _label_representatives(M, max_label_len, alphabet_condition)
        # options[s]: marked letters readable from s, with the state they lead to
        self.options = []
        for s in M.states:
            opts = []
            for a in M.alphabet:
                t = M.delta(s, a)
                opts.append((MarkedLetter(a), t))
                opts.extend((MarkedLetter(a, u), t) for u, loops in reps if t in loops)
            self.options.append(opts)
        self.best: dict[MarkedWord, tuple[int, MarkedWord | None]] = {}

    def loops(self, c: MarkedLetter, t: int) -> bool:
        return self.M.delta_word(t, c.label) == t

    def words(self, state, length):
        if length == 0:
            yield (), state
            return
        for c, t in self.options[state]:
            for rest, end in self.words(t, length - 1):
                yield (c,) + rest, end

    def successors(self, w: MarkedWord):
        """All consistent ``w2 != w`` within the length bound with ``w ->^d w2``."""
        M, d = self.M, self.d
        out = set()

        def go(pos, state, built, room, inserted):
            if pos == len(w):
                if inserted:
                    out.add(built)
                return
            c = w[pos]
            t = M.delta(state, c.base)
            if not self.loops(c, t):
                return
            go(pos + 1, t, built + (c,), room, inserted)
            if not c.label:
                return
            for size in range(d, room + 1, d):
                for z, zs in self.words(t, size - 1):
                    end = M.delta(zs, c.base)
                    if self.loops(c, end):
                        go(pos + 1, end, built + (c,) + z + (c,), room - size, True)

        go(0, self.M.start, (), self.max_len - len(w), False)
        return sorted(out)

    def longest(self, w: MarkedWord) -> tuple[int, MarkedWord | None]:
        """Length of the longest alternating chain starting at ``w`` and its next word."""
        if w in self.best:
            return self.best[w]
        member = self.M.accepts(f0(w))
        result = (0, None)
        for w2 in self.successors(w):
            if self.M.accepts(f0(w2)) != member:
                length = self.longest(w2)[0] + 1
                if length > result[0]:
                    result = (length, w2)
        self.best[w] = result
        return result


def oracle_marked_chain_search(M: Dfa, d: int, n: int, max_marked_len: int = 5, max_label_len: int = 3,
                               alphabet_condition: bool = False,
                               allow_empty_words: bool = False) -> MarkedChainWitness | None:
    """Bounded brute-force search for a 1-alternating ``->^d`` chain of consistent marked words.

    Chain words have at most ``max_marked_len`` letters and labels at most
    ``max_label_len`` letters.  ``None`` does not prove absence of a chain.
    """
    found = oracle_longest_marked_chains(M, d, n, max_marked_len, max_label_len, alphabet_condition,
                                         allow_empty_words)
    return found.get(n)


def oracle_longest_marked_chains(M: Dfa, d: int, cap: int, max_marked_len: int = 5, max_label_len: int = 3,
                                 alphabet_condition: bool = False,
                                 allow_empty_words: bool = False) -> dict[int, MarkedChainWitness]:
    """One bounded search answering every length ``1..cap`` at once.

    Returns a witness for each chain length that was found; prefixes of a
    long chain are chains too, so the keys always form ``1..max``.
    """
    if cap < 1 or d < 1:
        raise BoundsError("need n >= 1 and d >= 1")
    if max_marked_len > MAX_MARKED_LEN or max_label_len > MAX_LABEL_LEN:
        raise BoundsError(f"oracle bounds capped at {MAX_MARKED_LEN} marked letters and labels of {MAX_LABEL_LEN}")
    search = _MarkedSearch(M, d, max_marked_len, max_label_len, alphabet_condition)
    best_root, best_len = None, 0
    # The empty word has no successor, so allowing it never adds a chain.
    for length in range(1, max_marked_len):
        for w, end in search.words(M.start, length):
            if end not in M.accepting:
                continue
            got = search.longest(w)[0]
            if got > best_len:
                best_root, best_len = w, got
                if best_len >= cap:
                    break
        if best_len >= cap:
            break
    if best_root is None:
        return {}
    chain = [best_root]
    while len(chain) <= min(best_len, cap):
        nxt = search.best[chain[-1]][1]
        if nxt is None:
            break
        chain.append(nxt)
    return {i: make_marked_witness(M, chain[: i + 1]) for i in range(1, len(chain))}


# -- random consistent marked words -----------------------------------------


def random_consistent_word(M: Dfa, rng: random.Random, max_len: int = 6, max_label_len: int = 4,
                           tries: int = 30) -> MarkedWord:
    """Random base word; each label is a random walk that happens to return to its state."""
    s = M.start
    letters = []
    for _ in range(rng.randint(0, max_len)):
        a = rng.choice(M.alphabet)
        s = M.delta(s, a)
        label = ""
        if rng.random() < 0.7:
            for _ in range(tries):
                u = "".join(rng.choice(M.alphabet) for _ in range(rng.randint(1, max_label_len)))
                if M.delta_word(s, u) == s:
                    label = u
                    break
        letters.append(MarkedLetter(a, label))
    return tuple(letters)


__all__ = [
    "MarkedLetter",
    "MarkedWord",
    "MarkedChainWitness",
    "ConsistencyRun",
    "marked",
    "format_marked",
    "expand",
    "f0",
    "run_marked",
    "is_consistent",
    "satisfies_alphabet_condition",
    "embeds",
    "check_marked_chain",
    "make_marked_witness",
    "parse_marked_witness",
    "oracle_marked_chain_search",
    "oracle_longest_marked_chains",
    "random_consistent_word",
]
