"""Deciders for the Boolean hierarchies over the existential first-order levels.

All of them reduce to one question about a DFA ``M``: is there a 1-alternating
chain ``w_0 ->^d w_1 ->^d ... ->^d w_n`` of ``M``-consistent marked words?
:func:`decide_marked_chain` answers it by breadth-first search over a finite
configuration graph that writes the chain left to right, all words at once.

Every letter of ``w_n`` is born in some word ``w_b`` and then belongs to
``w_b, ..., w_n``.  A letter born at level ``l >= 1`` sits inside an inserted
block of level ``l``; open blocks form a stack whose levels strictly increase
towards the top.  A configuration records

* the DFA state reached by ``f_0`` of each word's current prefix,
* the open blocks (:class:`BlockFrame`): level, base letter of the context
  letter, length of the block so far mod ``d`` and the states at which the
  context label has to loop.

Labels themselves are never stored.  Only letters used as context letters
need a nonempty label, and one label has to loop at every state where the
context letter or one of its copies occurs; :func:`find_common_loop` checks
that such a label exists (and, at the end, produces it for the witness).
"""

from __future__ import annotations

import math
import time
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from .automaton import Dfa, minimize, trim
from .errors import AlphabetArityError, BoundsError, BudgetExceeded, NotStarFreeError
from .marked import MarkedLetter, make_marked_witness
from .monoid import is_aperiodic
from .results import Decision, ExceedsCap, Family, Level, TauDecision, TauVerdict

DEFAULT_BUDGET = 10**7
LOOP_PRODUCT_BUDGET = 10**7


@dataclass(frozen=True)
class LoopQuery:
    anchors: frozenset[int]
    require_full_alphabet: bool = False

    def __post_init__(self):
        if not self.anchors:
            raise BoundsError("a loop query needs at least one anchor state")


class BlockFrame(NamedTuple):
    """An open insertion block.

    ``anchors`` is a bitmask of the states where the context label must loop;
    ``linked`` says the frame below shares this frame's context label.
    """

    level: int
    context_base: int
    anchors: int
    linked: bool
    length_mod_d: int


class MwConfiguration(NamedTuple):
    states: tuple[int, ...]
    started: bool
    stack: tuple[BlockFrame, ...]


def _bits(states) -> int:
    mask = 0
    for s in states:
        mask |= 1 << s
    return mask


def _members(mask: int) -> list[int]:
    return [s for s in range(mask.bit_length()) if mask >> s & 1]


def find_common_loop(M: Dfa, q: LoopQuery, budget: int = LOOP_PRODUCT_BUDGET) -> str | None:
    """Shortest ``u`` in ``A^+`` with ``delta(t, u) == t`` for every anchor ``t`` (optionally using all letters).

    Breadth-first search in the product of one copy of ``M`` per anchor,
    extended by the set of letters read so far when the alphabet condition is on.
    """
    anchors = tuple(sorted(q.anchors))
    size = M.num_states ** len(anchors) * (2 ** len(M.alphabet) if q.require_full_alphabet else 1)
    if size > budget:
        raise BudgetExceeded(f"loop product of {size} states exceeds the budget of {budget}")
    full = (1 << len(M.alphabet)) - 1 if q.require_full_alphabet else 0
    table = M.table
    parent: dict[tuple, tuple | None] = {}
    queue = deque()
    for ai in range(len(M.alphabet)):
        node = (tuple(table[s][ai] for s in anchors), (1 << ai) & full)
        if node not in parent:
            parent[node] = (None, ai)
            queue.append(node)
    target = (anchors, full)
    while queue:
        node = queue.popleft()
        if node == target:
            letters = []
            while node is not None:
                node, ai = parent[node]
                letters.append(M.alphabet[ai])
            return "".join(reversed(letters))
        states, seen = node
        for ai in range(len(M.alphabet)):
            nxt = (tuple(table[s][ai] for s in states), (seen | 1 << ai) & full)
            if nxt not in parent:
                parent[nxt] = (node, ai)
                queue.append(nxt)
    return None


def simultaneous_loop_exists(M: Dfa, q: LoopQuery, budget: int = LOOP_PRODUCT_BUDGET) -> bool:
    return find_common_loop(M, q, budget) is not None


class _Search:
    def __init__(self, M: Dfa, d: int, n: int, alphabet_condition: bool, allow_empty_words: bool, budget: int):
        self.M, self.d, self.n = M, d, n
        self.full = alphabet_condition
        self.allow_empty = allow_empty_words
        self.budget = budget
        self._loops: dict[int, bool] = {}
        self.push_sets = {b: [()] + [c for r in range(1, n - b + 1) for c in combinations(range(b + 1, n + 1), r)]
                          for b in range(n + 1)}

    def loop_ok(self, mask: int) -> bool:
        hit = self._loops.get(mask)
        if hit is None:
            hit = self._loops[mask] = simultaneous_loop_exists(self.M, LoopQuery(frozenset(_members(mask)), self.full))
        return hit

    def accepting(self, cfg: MwConfiguration) -> bool:
        if cfg.stack or not (cfg.started or self.allow_empty):
            return False
        F = self.M.accepting
        return all((s in F) == (i % 2 == 0) for i, s in enumerate(cfg.states))

    def _with_pushes(self, states, started, stack, low, anchors, first_linked, action):
        for levels in self.push_sets[low]:
            if levels and not self.loop_ok(anchors):
                break
            frames = tuple(BlockFrame(lvl, action[1], anchors, first_linked or i > 0, 0) for i, lvl in enumerate(levels))
            yield action + (levels,), MwConfiguration(states, started, stack + frames)

    def successors(self, cfg: MwConfiguration):
        table, d = self.M.table, self.d
        S, stack = cfg.states, cfg.stack
        top = stack[-1] if stack else None
        born = top.level if top else 0
        # a new letter at the current level, optionally the context of new blocks
        for ai in range(len(self.M.alphabet)):
            states = S[:born] + tuple(table[s][ai] for s in S[born:])
            new_stack = stack
            if top:
                new_stack = stack[:-1] + (BlockFrame(top.level, top.context_base, top.anchors, top.linked,
                                                     (top.length_mod_d + 1) % d),)
            yield from self._with_pushes(states, cfg.started or born == 0, new_stack, born,
                                         _bits(states[born:]), False, ("append", ai))
        # the copy of the context letter that closes the top block
        if top and (top.length_mod_d + 1) % d == 0:
            lvl, ai = top.level, top.context_base
            states = S[:lvl] + tuple(table[s][ai] for s in S[lvl:])
            anchors = top.anchors | _bits(states[lvl:])
            if not self.loop_ok(anchors):
                return
            rest = list(stack[:-1])
            if top.linked:
                i = len(rest) - 1
                while i >= 0:
                    f = rest[i]
                    rest[i] = BlockFrame(f.level, f.context_base, anchors, f.linked, f.length_mod_d)
                    if not f.linked:
                        break
                    i -= 1
            yield from self._with_pushes(states, cfg.started, tuple(rest), lvl, anchors, top.linked, ("close", ai))

    def witness(self, actions):
        """Replay the actions, give each context class a concrete label and spell out the chain."""
        n, M = self.n, self.M
        S = [M.start] * (n + 1)
        letters = []  # (birth, base index, class id or None)
        class_anchors: list[set[int]] = []
        stack = []  # (level, base index, class id)
        for kind, ai, levels in actions:
            if kind == "append":
                born = stack[-1][0] if stack else 0
                cls = None
                if levels:
                    cls = len(class_anchors)
                    class_anchors.append(set())
            else:
                born, _, cls = stack.pop()
            for i in range(born, n + 1):
                S[i] = M.table[S[i]][ai]
            if cls is not None:
                class_anchors[cls].update(S[born:])
            letters.append((born, ai, cls))
            stack.extend((lvl, ai, cls) for lvl in levels)
        labels = [find_common_loop(M, LoopQuery(frozenset(a), self.full)) for a in class_anchors]
        words = []
        for i in range(n + 1):
            words.append(tuple(MarkedLetter(M.alphabet[ai], labels[cls] if cls is not None else "")
                               for born, ai, cls in letters if born <= i))
        return make_marked_witness(M, words)


def decide_marked_chain(M: Dfa, d: int = 1, n: int = 1, alphabet_condition: bool = False,
                        allow_empty_words: bool = False, budget: int = DEFAULT_BUDGET) -> Decision:
    """``NotInClass`` iff a 1-alternating ``->^d`` chain of ``n + 1`` consistent marked words exists.

    Chain words are nonempty unless ``allow_empty_words``; since the empty
    word only embeds into itself this never changes the verdict.  Raises
    :class:`BudgetExceeded` once more than ``budget`` configurations are visited.
    """
    if n < 1 or d < 1:
        raise BoundsError("need n >= 1 and d >= 1")
    started_at = time.perf_counter()
    A = trim(M)
    search = _Search(A, d, n, alphabet_condition, allow_empty_words, budget)
    start = MwConfiguration((A.start,) * (n + 1), False, ())
    parent: dict[MwConfiguration, tuple | None] = {start: None}
    queue = deque([start])
    found = None
    while queue and found is None:
        cfg = queue.popleft()
        for action, nxt in search.successors(cfg):
            if nxt in parent:
                continue
            parent[nxt] = (cfg, action)
            if search.accepting(nxt):
                found = nxt
                break
            if len(parent) > budget:
                raise BudgetExceeded(f"more than {budget} configurations visited")
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
    # the search ran on the trimmed automaton; witnesses are words, valid for M as well
    return Decision(False, search.witness(actions), stats)


def decide_sigmaB1(M: Dfa, n: int, budget: int = DEFAULT_BUDGET) -> Decision:
    """Level ``n`` of the Boolean hierarchy over dot-depth 1/2 (for ``L(M) & A^+``)."""
    return decide_marked_chain(M, 1, n, budget=budget)


def decide_sigmaD1(M: Dfa, d: int, n: int, budget: int = DEFAULT_BUDGET) -> Decision:
    """Level ``n`` of the Boolean hierarchy over existential sentences with mod-``d`` predicates."""
    return decide_marked_chain(M, d, n, budget=budget)


def exact_modulus(M: Dfa) -> int:
    """``(m^m)!`` for the size ``m`` of the minimal automaton: a modulus that always suffices."""
    m = minimize(M).num_states
    return math.factorial(m**m)


def marked_configuration_bound(num_states: int, alphabet_size: int, d: int, n: int) -> int:
    frames = alphabet_size * 2**num_states * 2 * d
    return num_states ** (n + 1) * 2 * (1 + frames) ** n


def decide_sigmaTau1(M: Dfa, n: int, mode: str = "deepening", d_list=(1, 2, 3, 4, 6),
                     budget: int = DEFAULT_BUDGET) -> TauDecision:
    """Level ``n`` of the Boolean hierarchy over existential sentences with arbitrary modular predicates.

    ``mode="exact"`` runs the modulus ``(m^m)!`` that is always sufficient and
    refuses with :class:`BudgetExceeded` when that search space is out of
    reach.  ``mode="deepening"`` tries the moduli of ``d_list`` in order: a
    positive answer at any of them is final, while failing at all of them is
    only ``INCONCLUSIVE``.
    """
    if mode == "exact":
        d = exact_modulus(M)
        bound = marked_configuration_bound(trim(M).num_states, len(M.alphabet), d, n)
        if bound > budget:
            raise BudgetExceeded(f"exact modulus {d} needs up to {bound} configurations (budget {budget})")
        decision = decide_sigmaD1(M, d, n, budget)
        return TauDecision(TauVerdict.IN if decision.in_class else TauVerdict.NOT_IN, d, decision)
    if mode != "deepening":
        raise BoundsError(f"unknown mode {mode!r}")
    if not d_list:
        raise BoundsError("d_list must not be empty")
    exact = None
    decision = None
    for d in d_list:
        decision = decide_sigmaD1(M, d, n, budget)
        if decision.in_class:
            return TauDecision(TauVerdict.IN, d, decision)
        if exact is None:
            exact = exact_modulus(M) if minimize(M).num_states <= 3 else 0
        if exact and d % exact == 0:
            return TauDecision(TauVerdict.NOT_IN, d, decision)
    return TauDecision(TauVerdict.INCONCLUSIVE, d_list[-1], decision)


def decide_sigmaL2_binary(M: Dfa, n: int, budget: int = DEFAULT_BUDGET) -> Decision:
    """Level ``n`` of the Boolean hierarchy over level 3/2 of the Straubing-Therien hierarchy.

    Only for two-letter alphabets and star-free languages (over ``A^*``).
    """
    if len(M.alphabet) != 2:
        raise AlphabetArityError(f"needs a two-letter alphabet, got {len(M.alphabet)} letters")
    if not is_aperiodic(M):
        raise NotStarFreeError("the language is not star-free")
    return decide_marked_chain(M, 1, n, alphabet_condition=True, allow_empty_words=True, budget=budget)


def decide(M: Dfa, family: Family | str, n: int, k: int = 0, d: int = 1, **kwargs):
    """Dispatch on the class family; ``sigmaTau1`` returns a :class:`TauDecision`."""
    from .ckd import CkdQuery, decide_ckd

    family = Family(family)
    if family is Family.CKD:
        return decide_ckd(M, CkdQuery(k, d, n, **kwargs))
    if family is Family.SIGMA_B1:
        return decide_sigmaB1(M, n, **kwargs)
    if family is Family.SIGMA_D1:
        return decide_sigmaD1(M, d, n, **kwargs)
    if family is Family.SIGMA_TAU1:
        return decide_sigmaTau1(M, n, **kwargs)
    return decide_sigmaL2_binary(M, n, **kwargs)


def min_level(M: Dfa, family: Family | str, cap: int = 4, k: int = 0, d: int = 1, **kwargs) -> Level | ExceedsCap:
    """Least ``n <= cap`` whose level contains the language, else :class:`ExceedsCap`."""
    if cap < 1:
        raise BoundsError("cap must be >= 1")
    for n in range(1, cap + 1):
        result = decide(M, family, n, k, d, **kwargs)
        if result.kind == "in":
            return Level(n)
    return ExceedsCap(cap)
