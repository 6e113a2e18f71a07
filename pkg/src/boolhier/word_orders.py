"""The window/modulus embedding orders on nonempty words and a brute-force chain oracle.

``u <=^d_k v`` holds when ``u == v``, or both words are longer than ``k``,
share their length-``k`` prefix and suffix, and ``u`` embeds monotonically
into ``v`` such that

* every full window ``u[i:i+k+1]`` (``i < |u| - k``) reappears at ``v[f(i):f(i)+k+1]``,
* the last ``k`` letters of ``u`` land on equal letters,
* ``f(i) = i (mod d)``.

Under the default ``LENGTH_CONGRUENT`` semantics the lengths must moreover be
congruent mod ``d``; ``LITERAL`` drops that requirement.  For ``d == 1`` both
semantics coincide with the classical ``<=_k`` (``<=_0`` is the subword order).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .automaton import Dfa
from .errors import AlphabetError, BoundsError

MAX_K = 4
MAX_D = 6
MAX_ORACLE_WORDS = 4096


class Semantics(str, enum.Enum):
    LENGTH_CONGRUENT = "length_congruent"
    LITERAL = "literal"


@dataclass(frozen=True)
class OrderParams:
    k: int = 0
    d: int = 1
    semantics: Semantics = Semantics.LENGTH_CONGRUENT

    def __post_init__(self):
        object.__setattr__(self, "semantics", Semantics(self.semantics))
        if self.k < 0 or self.d < 1:
            raise BoundsError(f"need k >= 0 and d >= 1, got k={self.k}, d={self.d}")

    def check_caps(self, max_k: int = MAX_K, max_d: int = MAX_D) -> "OrderParams":
        if self.k > max_k or self.d > max_d:
            raise BoundsError(f"k={self.k}, d={self.d} exceed caps k<={max_k}, d<={max_d}")
        return self


@dataclass(frozen=True)
class ChainWitness:
    """A chain ``x_0 <= ... <= x_n`` with membership bits; 1-alternating when valid."""

    words: tuple[str, ...]
    memberships: tuple[bool, ...]

    @property
    def length(self) -> int:
        return len(self.words) - 1

    def to_json(self) -> list[str]:
        return list(self.words)


def prefix_k(u: str, k: int) -> str:
    return u[:k]


def suffix_k(u: str, k: int) -> str:
    return u[len(u) - k:] if k else ""


def _embeds(u: str, v: str, k: int, d: int) -> bool:
    # Admissible targets of distinct positions are independent, so the
    # position-pair DP collapses to its frontier: the least feasible j per i.
    nu, nv = len(u), len(v)
    full = nu - k
    j = 0
    for i in range(nu):
        if d > 1:
            j += (i - j) % d
        if i < full:
            window = u[i:i + k + 1]
            last = nv - k - 1
            while j <= last and v[j:j + k + 1] != window:
                j += d
            if j > last:
                return False
        else:
            a = u[i]
            while j < nv and v[j] != a:
                j += d
            if j >= nv:
                return False
        j += 1
    return True


def leq_kd(u: str, v: str, p: OrderParams | None = None, *, k: int | None = None, d: int | None = None,
           semantics: Semantics | str | None = None) -> bool:
    """Decide ``u <=^d_k v``.

    Parameters come either from ``p`` or from the ``k``/``d``/``semantics``
    keywords, which override it.
    """
    p = p or OrderParams()
    k = p.k if k is None else k
    d = p.d if d is None else d
    semantics = Semantics(p.semantics if semantics is None else semantics)
    if u == v:
        return True
    if len(u) <= k or len(v) <= k:
        return False
    if u[:k] != v[:k] or suffix_k(u, k) != suffix_k(v, k):
        return False
    if semantics is Semantics.LENGTH_CONGRUENT and (len(v) - len(u)) % d:
        return False
    return _embeds(u, v, k, d)


def _check_alphabet(M: Dfa, word: str) -> None:
    for a in word:
        if a not in M.alphabet:
            raise AlphabetError(f"letter {a!r} not in alphabet")


def check_chain(M: Dfa, words, p: OrderParams) -> list[str]:
    """Replay a claimed 1-alternating chain against ``M``; return the list of problems found.

    An empty list means the chain is valid: every word is nonempty, adjacent
    words are related by ``<=^d_k`` and membership alternates starting inside
    ``L(M)``.
    """
    words = [str(w) for w in words]
    problems = []
    if len(words) < 2:
        problems.append("a chain needs at least two words")
    for i, w in enumerate(words):
        if not w:
            problems.append(f"word {i} is empty")
            continue
        try:
            _check_alphabet(M, w)
        except AlphabetError as exc:
            problems.append(f"word {i}: {exc}")
            return problems
        if M.accepts(w) != (i % 2 == 0):
            problems.append(f"word {i} {w!r} is {'in' if M.accepts(w) else 'not in'} the language")
    for i in range(len(words) - 1):
        if not leq_kd(words[i], words[i + 1], p):
            problems.append(f"{words[i]!r} <= {words[i + 1]!r} fails for k={p.k}, d={p.d}")
    return problems


def make_witness(M: Dfa, words) -> ChainWitness:
    words = tuple(words)
    return ChainWitness(words, tuple(M.accepts(w) for w in words))


def all_words(alphabet, max_len: int, min_len: int = 1):
    """Words of length ``min_len..max_len`` ordered by length, then lexicographically."""
    for n in range(min_len, max_len + 1):
        for letters in itertools.product(alphabet, repeat=n):
            yield "".join(letters)


@lru_cache(maxsize=32)
def _order_graph(alphabet: tuple[str, ...], max_len: int, p: OrderParams):
    words = list(all_words(alphabet, max_len))
    index = {w: i for i, w in enumerate(words)}
    rel = np.zeros((len(words), len(words)), dtype=bool)
    for y, v in enumerate(words):
        for x in range(y):
            # words are sorted by length, so only shorter (earlier) words can lie strictly below
            u = words[x]
            if len(u) < len(v) and leq_kd(u, v, p):
                rel[x, y] = True
    rel.setflags(write=False)
    return words, index, rel


def oracle_chain_search(M: Dfa, p: OrderParams, n: int, max_word_len: int = 8) -> ChainWitness | None:
    """Bounded search for a 1-alternating chain of length ``n`` in ``(A^+, <=^d_k)``.

    Among chains whose words have at most ``max_word_len`` letters, return one
    of least total length (ties broken by length-lexicographic order of the
    words).  ``None`` only means no chain exists within the bound.
    """
    if n < 1:
        raise BoundsError("chain length n must be >= 1")
    count = sum(len(M.alphabet) ** i for i in range(1, max_word_len + 1))
    if count > MAX_ORACLE_WORDS:
        raise BoundsError(f"{count} words up to length {max_word_len} exceed the oracle cap of {MAX_ORACLE_WORDS}")
    words, _, rel = _order_graph(tuple(M.alphabet), max_word_len, p)
    member = np.fromiter((M.accepts(w) for w in words), dtype=bool, count=len(words))
    lengths = np.fromiter((len(w) for w in words), dtype=float, count=len(words))
    cost = np.where(member, lengths, np.inf)
    back = []
    for step in range(1, n + 1):
        want_member = step % 2 == 0
        candidates = np.where(rel, cost[:, None], np.inf)
        best_prev = candidates.argmin(axis=0)
        best_cost = candidates[best_prev, np.arange(len(words))]
        cost = np.where(member == want_member, best_cost + lengths, np.inf)
        back.append(best_prev)
        if not np.isfinite(cost).any():
            return None
    last = int(cost.argmin())
    chain = [last]
    for pointers in reversed(back):
        chain.append(int(pointers[chain[-1]]))
    return make_witness(M, (words[i] for i in reversed(chain)))
