"""Membership in the Boolean hierarchy over the upper sets of ``(A^+, <=^d_k)``.

``L`` lies in level ``n`` iff no 1-alternating ``<=^d_k`` chain
``w_0 <= ... <= w_n`` exists.  The chain is guessed letter by letter and in
parallel: a step picks ``j`` and appends one letter to ``w_j, ..., w_n``.  Only
the DFA state, the length residue and a ``k``-letter preview of each word are
remembered, so the search space is finite and plain breadth-first search over
it is a complete decision procedure.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from itertools import product as cartesian

from .automaton import Dfa, minimize, restrict_nonempty
from .errors import BoundsError, BudgetExceeded
from .results import TRUNCATED, Decision, ExceedsCap, Level
from .word_orders import OrderParams, Semantics, make_witness

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class CkdQuery:
    k: int = 0
    d: int = 1
    n: int = 1
    semantics: Semantics = Semantics.LENGTH_CONGRUENT
    budget: int = DEFAULT_BUDGET
    enforce_caps: bool = True

    def __post_init__(self):
        object.__setattr__(self, "semantics", Semantics(self.semantics))
        if self.n < 1:
            raise BoundsError("n must be >= 1")
        p = OrderParams(self.k, self.d, self.semantics)
        if self.enforce_caps:
            p.check_caps()

    @property
    def order(self) -> OrderParams:
        return OrderParams(self.k, self.d, self.semantics)


@dataclass(frozen=True)
class CkdConfiguration:
    """One node of the search graph; ``previews[i]`` holds the next ``k`` letters of ``w_i``."""

    states: tuple[int, ...]
    residues: tuple[int, ...]
    previews: tuple[str, ...]
    started: bool


def configuration_bound(num_states: int, alphabet_size: int, q: CkdQuery) -> int:
    m = q.n + 1
    return num_states**m * q.d**m * alphabet_size ** (q.k * m)


def _accepting(M: Dfa, cfg: CkdConfiguration, q: CkdQuery) -> bool:
    if not cfg.started:
        return False
    tail = cfg.previews[0]
    if any(v != tail for v in cfg.previews):
        return False
    if (q.k > 0 or q.semantics is Semantics.LENGTH_CONGRUENT) and len(set(cfg.residues)) != 1:
        return False
    return all((M.delta_word(s, tail) in M.accepting) == (i % 2 == 0) for i, s in enumerate(cfg.states))


def _successors(M: Dfa, cfg: CkdConfiguration, q: CkdQuery):
    n, d, k = q.n, q.d, q.k
    S, R, V = cfg.states, cfg.residues, cfg.previews
    for j in range(n + 1):
        # letters shared by w_i and w_{i+1} (j <= i < n) must sit at congruent
        # positions and be followed by the same k letters
        if any(R[i] != R[j] for i in range(j + 1, n + 1)):
            continue
        if k and any(V[i] != V[j] for i in range(j + 1, n + 1)):
            continue
        letters = [V[j][0]] if k else M.alphabet
        guesses = M.alphabet if k else ("",)
        for a in letters:
            ai = M.letter_index(a)
            states = S[:j] + tuple(M.table[s][ai] for s in S[j:])
            residues = R[:j] + tuple((r + 1) % d for r in R[j:])
            for g in guesses:
                previews = V[:j] + (V[j][1:] + g,) * (n + 1 - j) if k else V
                yield (j, a, g), CkdConfiguration(states, residues, previews, cfg.started or j == 0)


def _rebuild(actions, tail: str, n: int) -> list[str]:
    words = [""] * (n + 1)
    for j, a, _ in actions:
        for i in range(j, n + 1):
            words[i] += a
    return [w + tail for w in words]


def decide_ckd(M: Dfa, q: CkdQuery | None = None, **params) -> Decision:
    """Decide whether ``L(M) & A^+`` belongs to level ``q.n`` of the hierarchy over ``C^d_k``.

    Keyword arguments (``k=``, ``d=``, ``n=``, ``semantics=``, ``budget=``)
    build the query when ``q`` is omitted.  A negative verdict carries a
    :class:`~boolhier.word_orders.ChainWitness` over ``M``'s alphabet, or
    ``TRUNCATED`` when the chain is longer than ``4 |Z| (n+1) d`` letters.

    With ``LITERAL`` semantics and ``k > 0`` the search only explores chains
    whose last ``k`` letters correspond position by position; it stays sound
    but may miss chains that the literal order admits.
    """
    q = q or CkdQuery(**params)
    started_at = time.perf_counter()
    A = minimize(restrict_nonempty(M))
    bound = configuration_bound(A.num_states, len(A.alphabet), q)
    if bound > q.budget:
        raise BudgetExceeded(f"up to {bound} configurations exceed the budget of {q.budget}")

    # Words of length <= k only relate to themselves and cannot alternate, so
    # every chain word is longer than k and all of them open with the same k letters.
    start_states = (A.start,) * (q.n + 1)
    zeros = (0,) * (q.n + 1)
    parent: dict[CkdConfiguration, tuple] = {}
    queue: deque[CkdConfiguration] = deque()
    for p in cartesian(A.alphabet, repeat=q.k):
        cfg = CkdConfiguration(start_states, zeros, ("".join(p),) * (q.n + 1), False)
        parent[cfg] = None
        queue.append(cfg)

    found = None
    while queue and found is None:
        cfg = queue.popleft()
        for action, nxt in _successors(A, cfg, q):
            if nxt in parent:
                continue
            parent[nxt] = (cfg, action)
            if _accepting(A, nxt, q):
                found = nxt
                break
            queue.append(nxt)

    stats = {"configurations_explored": len(parent), "wall_ms": round((time.perf_counter() - started_at) * 1000, 3)}
    if found is None:
        return Decision(True, None, stats)
    actions = []
    node = found
    while parent[node] is not None:
        node, action = parent[node]
        actions.append(action)
    actions.reverse()
    cap = 4 * M.num_states * (q.n + 1) * q.d
    if len(actions) + q.k > cap:
        return Decision(False, TRUNCATED, stats)
    return Decision(False, make_witness(M, _rebuild(actions, found.previews[0], q.n)), stats)


def min_level_ckd(M: Dfa, k: int = 0, d: int = 1, cap: int = 4,
                  semantics: Semantics = Semantics.LENGTH_CONGRUENT, budget: int = DEFAULT_BUDGET,
                  enforce_caps: bool = True):
    """Least ``n <= cap`` with ``L(M) & A^+`` in level ``n``, else :class:`ExceedsCap`."""
    if cap < 1:
        raise BoundsError("cap must be >= 1")
    for n in range(1, cap + 1):
        if decide_ckd(M, CkdQuery(k, d, n, semantics, budget, enforce_caps)).in_class:
            return Level(n)
    return ExceedsCap(cap)


__all__ = ["CkdQuery", "CkdConfiguration", "decide_ckd", "min_level_ckd", "configuration_bound"]
