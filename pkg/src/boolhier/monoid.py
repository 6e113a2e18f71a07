"""Transition monoid of a DFA and the aperiodicity (star-freeness) test."""

from __future__ import annotations

from .automaton import Dfa, minimize
from .errors import BudgetExceeded

MAX_MONOID_SIZE = 10**6


def transition_monoid(M: Dfa, max_size: int = MAX_MONOID_SIZE) -> set[tuple[int, ...]]:
    """All state maps ``q -> delta(q, w)``, ``w`` ranging over ``A^*`` (identity included)."""
    generators = [tuple(M.table[q][a] for q in M.states) for a in range(len(M.alphabet))]
    identity = tuple(M.states)
    seen = {identity}
    frontier = [identity]
    while frontier:
        t = frontier.pop()
        for g in generators:
            u = tuple(g[q] for q in t)
            if u not in seen:
                seen.add(u)
                if len(seen) > max_size:
                    raise BudgetExceeded(f"transition monoid has more than {max_size} elements")
                frontier.append(u)
    return seen


def _stabilizes(t: tuple[int, ...]) -> bool:
    # t^i == t^(i+1) for some i; the power sequence is eventually periodic
    # with a period dividing the lcm of cycle lengths, so look for a fixed point
    seen = set()
    power = t
    while power not in seen:
        seen.add(power)
        nxt = tuple(t[q] for q in power)
        if nxt == power:
            return True
        power = nxt
    return False


def is_aperiodic(M: Dfa, max_size: int = MAX_MONOID_SIZE) -> bool:
    """True iff the syntactic monoid of ``L(M)`` has only trivial groups, i.e. ``L(M)`` is star-free."""
    return all(_stabilizes(t) for t in transition_monoid(minimize(M), max_size))
