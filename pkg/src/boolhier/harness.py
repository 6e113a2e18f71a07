"""Random automata, the named-language corpus and the decider-vs-oracle differential runner."""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from importlib import resources

from .automaton import Dfa, complement, equivalent, from_regex, parse_dfa
from .ckd import CkdQuery, decide_ckd
from .errors import BoolHierError, BoundsError
from .marked import check_marked_chain, oracle_longest_marked_chains, oracle_marked_chain_search
from .monoid import is_aperiodic
from .mw import decide, decide_marked_chain, decide_sigmaTau1, min_level
from .results import TRUNCATED, Decision, ExceedsCap, Family, Level, TauVerdict
from .word_orders import OrderParams, Semantics, check_chain, oracle_chain_search

MAX_RANDOM_STATES = 6
BASES = ("trivial", "computed", "published")


def random_dfa(seed: int, max_states: int = 4, alphabet=("a", "b")) -> Dfa:
    """A DFA with ``1..max_states`` states, uniform transitions and a uniform accepting set."""
    if not 1 <= max_states <= MAX_RANDOM_STATES:
        raise BoundsError(f"max_states must be in 1..{MAX_RANDOM_STATES}")
    alphabet = tuple(alphabet)
    rng = random.Random(seed)
    n = rng.randint(1, max_states)
    table = tuple(tuple(rng.randrange(n) for _ in alphabet) for _ in range(n))
    accepting = frozenset(q for q in range(n) if rng.random() < 0.5)
    return Dfa(alphabet, table, 0, accepting)


def random_aperiodic_dfas(count: int, seed: int = 0, max_states: int = 4, alphabet=("a", "b")):
    """The first ``count`` aperiodic automata among ``random_dfa(seed), random_dfa(seed + 1), ...``."""
    found = []
    s = seed
    while len(found) < count:
        M = random_dfa(s, max_states, alphabet)
        if is_aperiodic(M):
            found.append((s, M))
        s += 1
    return found


# -- corpus -------------------------------------------------------------------

@dataclass(frozen=True)
class Expectation:
    """One expected classification.

    ``n`` set: a single decision (``expect`` is ``"in"``, ``"not_in"`` or
    ``"error:<ExceptionName>"``).  ``n`` unset: ``min_level`` up to ``cap``
    (``expect`` is ``{"level": n}`` or ``"exceeds_cap"``).
    """

    family: Family
    expect: object
    basis: str
    n: int | None = None
    k: int = 0
    d: int = 1
    cap: int = 4
    d_list: tuple[int, ...] = (1, 2, 3, 4, 6)
    oracle: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "d_list", tuple(self.d_list))
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")

    def describe(self) -> str:
        where = f"n={self.n}" if self.n is not None else f"level<= {self.cap}"
        return f"{self.family.value}(k={self.k}, d={self.d}, {where})"


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    regex: str
    alphabet: tuple[str, ...]
    dfa: Dfa
    expectations: tuple[Expectation, ...]


def _corpus_dir():
    return resources.files(__package__) / "corpus"


def load_corpus() -> list[CorpusEntry]:
    base = _corpus_dir()
    manifest = json.loads((base / "manifest.json").read_text())
    entries = []
    for item in manifest["languages"]:
        dfa = parse_dfa((base / item["file"]).read_text())
        expectations = tuple(Expectation(**e) for e in item["expectations"])
        entries.append(CorpusEntry(item["name"], item["regex"], tuple(item["alphabet"]), dfa, expectations))
    return entries


def corpus_entry(name: str) -> CorpusEntry:
    for entry in load_corpus():
        if entry.name == name:
            return entry
    raise KeyError(name)


def _kind(result) -> str:
    if isinstance(result, Level):
        return f"level {result.n}"
    if isinstance(result, ExceedsCap):
        return "exceeds_cap"
    return result.kind


def _expected_kind(expect) -> str:
    if isinstance(expect, dict):
        return f"level {expect['level']}"
    return expect


def run_expectation(M: Dfa, e: Expectation):
    """Evaluate ``e`` with the deciders; exceptions are returned as ``"error:<name>"``."""
    try:
        if e.n is None:
            kwargs = {"d_list": e.d_list} if e.family is Family.SIGMA_TAU1 else {}
            return _kind(min_level(M, e.family, e.cap, e.k, e.d, **kwargs))
        if e.family is Family.SIGMA_TAU1:
            result = decide_sigmaTau1(M, e.n, d_list=e.d_list)
            return f"{result.kind} at d={result.d}" if result.verdict is TauVerdict.IN else result.kind
        return decide(M, e.family, e.n, e.k, e.d).kind
    except BoolHierError as exc:
        return f"error:{type(exc).__name__}"


def _oracle_finds(M: Dfa, family: Family, n: int, k: int, d: int, bounds: dict) -> bool:
    if family is Family.CKD:
        return oracle_chain_search(M, OrderParams(k, d), n, bounds.get("max_word_len", 8)) is not None
    marked_bounds = {key: bounds[key] for key in ("max_marked_len", "max_label_len") if key in bounds}
    if family is Family.SIGMA_L2:
        return oracle_marked_chain_search(M, 1, n, alphabet_condition=True, allow_empty_words=True,
                                          **marked_bounds) is not None
    return oracle_marked_chain_search(M, 1 if family is Family.SIGMA_B1 else d, n, **marked_bounds) is not None


def oracle_agrees(M: Dfa, e: Expectation) -> list[str]:
    """Check a computed expectation against the bounded oracles.

    Negative verdicts need an oracle chain; positive ones need the oracle to
    come back empty within its bounds.
    """
    problems = []
    expect = _expected_kind(e.expect)
    family = e.family
    if expect.startswith("error:"):
        return problems
    if family is Family.SIGMA_TAU1:
        family, d = Family.SIGMA_D1, int(expect.rsplit("=", 1)[1]) if "d=" in expect else e.d
    else:
        d = e.d

    def check(n: int, want_chain: bool):
        if _oracle_finds(M, family, n, e.k, d, e.oracle) != want_chain:
            problems.append(f"oracle {'found no' if want_chain else 'found a'} chain at n={n} for {e.describe()}")

    if e.n is not None:
        check(e.n, expect == "not_in")
    elif expect == "exceeds_cap":
        check(e.cap, True)
    else:
        level = e.expect["level"]
        check(level, False)
        if level > 1:
            check(level - 1, True)
    return problems


def verify_corpus(entries=None, with_oracle: bool = True) -> list[str]:
    """Check stored automata against their regexes and every expectation against the deciders.

    Expectations with basis ``computed`` are also checked against the oracles.
    Returns the list of problems, empty when everything holds.
    """
    problems = []
    for entry in entries if entries is not None else load_corpus():
        if not equivalent(entry.dfa, from_regex(entry.regex, entry.alphabet)):
            problems.append(f"{entry.name}: stored automaton does not match {entry.regex!r}")
        for e in entry.expectations:
            got = run_expectation(entry.dfa, e)
            want = _expected_kind(e.expect)
            if got != want:
                problems.append(f"{entry.name}: {e.describe()} gave {got}, expected {want}")
            if with_oracle and e.basis == "computed":
                problems.extend(f"{entry.name}: {p}" for p in oracle_agrees(entry.dfa, e))
    return problems


# -- differential runs --------------------------------------------------------

@dataclass
class DifferentialConfig:
    seed: int = 0
    samples: int = 500
    max_states: int = 4
    alphabet: tuple[str, ...] = ("a", "b")
    families: tuple[str, ...] = ("ckd", "sigmaB1", "sigmaD1")
    ks: tuple[int, ...] = (0, 1)
    ds: tuple[int, ...] = (1, 2)
    ns: tuple[int, ...] = (1, 2, 3)
    semantics: str = Semantics.LENGTH_CONGRUENT.value
    max_word_len: int = 8
    max_marked_len: int = 5
    max_label_len: int = 3
    check_complement: bool = False
    level_cap: int = 4
    aperiodic_only: bool = False


@dataclass
class DifferentialReport:
    seed: int
    automata_tried: int = 0
    queries: int = 0
    disagreements: list = field(default_factory=list)
    replay_failures: list = field(default_factory=list)
    property_violations: list = field(default_factory=list)
    inconsistencies: list = field(default_factory=list)
    truncated_witnesses: int = 0
    # ckd compares previews of words j..n only; a miss against the oracle would call for widening to j-1
    ckd_consistency_window: str = "j..n"
    counts: dict = field(default_factory=dict)
    wall_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not (self.disagreements or self.replay_failures or self.property_violations)

    def to_json(self) -> dict:
        data = asdict(self)
        data["passed"] = self.passed
        return data


def _record(report: DifferentialReport, key: str):
    report.counts[key] = report.counts.get(key, 0) + 1


class _Sample:
    """All decisions for one automaton, keyed by ``(family, k, d, n)``."""

    def __init__(self, seed: int, M: Dfa, config: DifferentialConfig, report: DifferentialReport):
        self.seed, self.M, self.config, self.report = seed, M, config, report
        self.decisions: dict[tuple, bool] = {}
        self.literal = Semantics(config.semantics) is Semantics.LITERAL

    def problem(self, query, **extra) -> dict:
        family, k, d, n = query
        return {"seed": self.seed, "dfa": self.M.to_text(), "query": {"family": family, "k": k, "d": d, "n": n}, **extra}

    def judge(self, query, decision: Decision, oracle_chain, replay):
        self.report.queries += 1
        self.decisions[query] = decision.in_class
        if oracle_chain is not None and decision.in_class:
            entry = self.problem(query, oracle=oracle_chain.to_json(), decider="in")
            (self.report.inconsistencies if self.literal and query[0] == "ckd" else self.report.disagreements).append(entry)
        _record(self.report, f"{query[0]}:{'oracle_chain' if oracle_chain else 'no_oracle_chain'}:{decision.kind}")
        if decision.in_class:
            return
        if decision.witness is TRUNCATED:
            self.report.truncated_witnesses += 1
            return
        problems = replay(decision.witness)
        if problems:
            self.report.replay_failures.append(self.problem(query, witness=decision.witness.to_json(), problems=problems))

    def run_ckd(self):
        c = self.config
        for k in c.ks:
            for d in c.ds:
                p = OrderParams(k, d, c.semantics)
                for n in c.ns:
                    decision = decide_ckd(self.M, CkdQuery(k, d, n, c.semantics))
                    oracle = oracle_chain_search(self.M, p, n, c.max_word_len)
                    self.judge(("ckd", k, d, n), decision, oracle, lambda w, p=p: check_chain(self.M, w.words, p))

    def run_marked(self, family: str, d: int, alphabet_condition: bool = False):
        c = self.config
        chains = oracle_longest_marked_chains(self.M, d, max(c.ns), c.max_marked_len, c.max_label_len,
                                              alphabet_condition, alphabet_condition)
        for n in c.ns:
            decision = decide_marked_chain(self.M, d, n, alphabet_condition, alphabet_condition)
            self.judge((family, 0, d, n), decision, chains.get(n),
                       lambda w: check_marked_chain(self.M, w.words, d, alphabet_condition, alphabet_condition))

    def violation(self, name: str, detail: str):
        self.report.property_violations.append({"seed": self.seed, "dfa": self.M.to_text(), "property": name,
                                                "detail": detail})

    def check_properties(self):
        got = self.decisions
        c = self.config
        for (family, k, d, n), inside in got.items():
            if not inside:
                continue
            later = got.get((family, k, d, n + 1))
            if later is False:
                self.violation("n-monotonicity", f"{family} k={k} d={d}: in at n={n}, not at n={n + 1}")
            if family == "ckd" and got.get(("ckd", k + 1, d, n)) is False:
                self.violation("k-monotonicity", f"d={d} n={n}: in at k={k}, not at k={k + 1}")
            if family in ("ckd", "sigmaD1"):
                for d2 in c.ds:
                    if d2 != d and d2 % d == 0 and got.get((family, k, d2, n)) is False:
                        self.violation("d-divisibility", f"{family} k={k} n={n}: in at d={d}, not at d={d2}")
            if family == "ckd" and self.literal:
                continue
            if family == "ckd":
                if d == 1 and got.get(("sigmaB1", 0, 1, n)) is False:
                    self.violation("ckd-in-sigmaB1", f"k={k} n={n}")
                if got.get(("sigmaD1", 0, d, n)) is False:
                    self.violation("ckd-in-sigmaD1", f"k={k} d={d} n={n}")
        if self.literal:
            # the literal window order ignores length residues, so it can separate
            # words that the mod-d insertion relation keeps together
            for (family, k, d, n), inside in got.items():
                if family == "ckd" and not inside and d > 1 and got.get(("sigmaD1", 0, d, n)):
                    self.report.inconsistencies.append(self.problem(("ckd", k, d, n), kind="literal-vs-marked"))
        for n in c.ns:
            b1, d1 = got.get(("sigmaB1", 0, 1, n)), got.get(("sigmaD1", 0, 1, n))
            if b1 is not None and d1 is not None and b1 != d1:
                self.violation("sigmaD1(d=1)=sigmaB1", f"n={n}")

    def check_complement(self):
        c = self.config
        co = complement(self.M)
        pairs = [(Family.CKD, 0, 1)] if "ckd" in c.families else []
        if "sigmaB1" in c.families:
            pairs.append((Family.SIGMA_B1, 0, 1))
        for family, k, d in pairs:
            a = min_level(self.M, family, c.level_cap, k, d)
            b = min_level(co, family, c.level_cap, k, d)
            if isinstance(a, Level) and isinstance(b, Level) and abs(a.n - b.n) > 1:
                self.violation("complement-shift", f"{family.value}: level {a.n} vs complement level {b.n}")


def run_differential(config: DifferentialConfig | dict | None = None) -> DifferentialReport:
    """Compare every decider with its bounded oracle on random automata.

    For each sampled automaton and query: an oracle chain must come with a
    negative verdict, every negative verdict's witness must replay, and the
    monotonicity and inclusion properties between the queries must hold.
    Failures are collected in the report; nothing is raised.  Under literal
    semantics disagreements of the window order are filed as inconsistencies.
    """
    if config is None:
        config = DifferentialConfig()
    elif isinstance(config, dict):
        config = DifferentialConfig(**config)
    started = time.perf_counter()
    report = DifferentialReport(config.seed)
    families = set(config.families)
    if config.aperiodic_only:
        samples = random_aperiodic_dfas(config.samples, config.seed, config.max_states, config.alphabet)
    else:
        samples = [(config.seed + i, random_dfa(config.seed + i, config.max_states, config.alphabet))
                   for i in range(config.samples)]
    for seed, M in samples:
        report.automata_tried += 1
        sample = _Sample(seed, M, config, report)
        if "ckd" in families:
            sample.run_ckd()
        if "sigmaB1" in families:
            sample.run_marked("sigmaB1", 1)
        if "sigmaD1" in families:
            for d in config.ds:
                sample.run_marked("sigmaD1", d)
        if "sigmaL2" in families and len(M.alphabet) == 2 and is_aperiodic(M):
            sample.run_marked("sigmaL2", 1, alphabet_condition=True)
        sample.check_properties()
        if config.check_complement:
            sample.check_complement()
    report.wall_seconds = round(time.perf_counter() - started, 3)
    return report

