"""Decide Boolean-hierarchy levels of regular languages given by DFAs.

The deciders search finite configuration graphs for 1-alternating chains; the
brute-force oracles in :mod:`boolhier.word_orders` and :mod:`boolhier.marked`
search the same chains directly and serve as their cross-check.
"""

from .automaton import (Dfa, complement, equivalent, from_regex, load_dfa, minimize, parse_dfa, parse_regex,
                        product, restrict_nonempty, trim)
from .ckd import CkdQuery, decide_ckd, min_level_ckd
from .errors import (AlphabetArityError, AlphabetError, AlphabetMismatch, BoolHierError, BoundsError, BudgetExceeded,
                     DfaSyntaxError, NotStarFreeError, ValidationError)
from .marked import MarkedLetter, check_marked_chain, embeds, expand, marked, oracle_marked_chain_search
from .monoid import is_aperiodic, transition_monoid
from .mw import (LoopQuery, decide, decide_marked_chain, decide_sigmaB1, decide_sigmaD1, decide_sigmaL2_binary,
                 decide_sigmaTau1, min_level, simultaneous_loop_exists)
from .results import TRUNCATED, Decision, ExceedsCap, Family, HierarchyQuery, Level, TauDecision, TauVerdict
from .word_orders import ChainWitness, OrderParams, Semantics, check_chain, leq_kd, oracle_chain_search

__all__ = [
    "Dfa", "complement", "equivalent", "from_regex", "load_dfa", "minimize", "parse_dfa", "parse_regex", "product",
    "restrict_nonempty", "trim", "CkdQuery", "decide_ckd", "min_level_ckd", "AlphabetArityError", "AlphabetError",
    "AlphabetMismatch", "BoolHierError", "BoundsError", "BudgetExceeded", "DfaSyntaxError", "NotStarFreeError",
    "ValidationError", "MarkedLetter", "check_marked_chain", "embeds", "expand", "marked",
    "oracle_marked_chain_search", "is_aperiodic", "transition_monoid", "LoopQuery", "decide", "decide_marked_chain",
    "decide_sigmaB1", "decide_sigmaD1", "decide_sigmaL2_binary", "decide_sigmaTau1", "min_level",
    "simultaneous_loop_exists", "TRUNCATED", "Decision", "ExceedsCap", "Family", "HierarchyQuery", "Level",
    "TauDecision", "TauVerdict", "ChainWitness", "OrderParams", "Semantics", "check_chain", "leq_kd",
    "oracle_chain_search",
]
