"""Complete deterministic finite automata.

Everything in the package consumes a :class:`Dfa`: a complete, immutable
transition table over a small alphabet of single-character letters.  This
module also provides the usual plumbing around it: a line-oriented text
format (plus an equivalent JSON form), a tiny regular-expression front end,
minimization, complementation, products and equivalence checking.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import AlphabetError, AlphabetMismatch, DfaSyntaxError, ValidationError

__all__ = [
    "Dfa",
    "parse_dfa",
    "parse_dfa_json",
    "load_dfa",
    "run",
    "accepts",
    "minimize",
    "trim",
    "complement",
    "product",
    "equivalent",
    "restrict_nonempty",
    "with_epsilon",
    "AND",
    "OR",
    "XOR",
    "DIFF",
    "EmptySet",
    "Epsilon",
    "Letter",
    "Concat",
    "Union",
    "Star",
    "parse_regex",
    "from_regex",
]


@dataclass(frozen=True)
class Dfa:
    """A complete DFA ``(A, Z, delta, s0, F)`` with states ``0..num_states-1``.

    ``table[s][i]`` is the successor of state ``s`` on ``alphabet[i]``.
    """

    alphabet: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    start: int
    accepting: frozenset[int]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        alphabet = tuple(self.alphabet)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "table", tuple(tuple(row) for row in self.table))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        if not alphabet:
            raise ValidationError("alphabet must contain at least one letter")
        for a in alphabet:
            if not isinstance(a, str) or len(a) != 1 or a.isspace():
                raise ValidationError(f"alphabet letters must be single non-space characters, got {a!r}")
        if len(set(alphabet)) != len(alphabet):
            raise ValidationError("alphabet letters must be distinct")
        n = len(self.table)
        if n == 0:
            raise ValidationError("automaton needs at least one state")
        if not 0 <= self.start < n:
            raise ValidationError(f"start state {self.start} out of range")
        for s in self.accepting:
            if not 0 <= s < n:
                raise ValidationError(f"accepting state {s} out of range")
        for s, row in enumerate(self.table):
            if len(row) != len(alphabet):
                raise ValidationError(f"state {s} has {len(row)} transitions, expected {len(alphabet)}")
            for t in row:
                if not 0 <= t < n:
                    raise ValidationError(f"transition target {t} of state {s} out of range")
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(alphabet)})

    @property
    def num_states(self) -> int:
        return len(self.table)

    @property
    def states(self) -> range:
        return range(len(self.table))

    def letter_index(self, a: str) -> int:
        try:
            return self._index[a]
        except KeyError:
            raise AlphabetError(f"letter {a!r} is not in the alphabet {''.join(self.alphabet)!r}") from None

    def delta(self, state: int, a: str) -> int:
        return self.table[state][self.letter_index(a)]

    def delta_word(self, state: int, word: Iterable[str]) -> int:
        for a in word:
            state = self.table[state][self.letter_index(a)]
        return state

    def run(self, word: Iterable[str]) -> int:
        return self.delta_word(self.start, word)

    def accepts(self, word: Iterable[str]) -> bool:
        return self.run(word) in self.accepting

    def check_word(self, word: str) -> None:
        for a in word:
            self.letter_index(a)

    def to_text(self) -> str:
        lines = [
            f"alphabet: {''.join(self.alphabet)}",
            f"states: {self.num_states}",
            f"start: {self.start}",
            "accepting: " + " ".join(str(s) for s in sorted(self.accepting)),
        ]
        for s, row in enumerate(self.table):
            for a, t in zip(self.alphabet, row):
                lines.append(f"{s} {a} {t}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "alphabet": "".join(self.alphabet),
            "states": self.num_states,
            "start": self.start,
            "accepting": sorted(self.accepting),
            "transitions": [[s, a, t] for s, row in enumerate(self.table) for a, t in zip(self.alphabet, row)],
        }


def run(M: Dfa, word: str) -> int:
    """Return ``delta(s0, word)``."""
    return M.run(word)


def accepts(M: Dfa, word: str) -> bool:
    return M.accepts(word)


# -- text / JSON format ------------------------------------------------------


def _build(alphabet, num_states, start, accepting, transitions, complete_with_sink=False):
    """Assemble a Dfa from ``(state, letter, target)`` triples, validating as we go."""
    if num_states is None or num_states < 1:
        raise ValidationError("'states' must be a positive integer")
    if start is None:
        raise ValidationError("missing 'start'")
    index = {a: i for i, a in enumerate(alphabet)}
    rows: list[list[int | None]] = [[None] * len(alphabet) for _ in range(num_states)]
    for lineno, s, a, t in transitions:
        if a not in index:
            raise ValidationError(f"line {lineno}: letter {a!r} not in alphabet")
        for q in (s, t):
            if not 0 <= q < num_states:
                raise ValidationError(f"line {lineno}: unknown state {q}")
        if rows[s][index[a]] is not None:
            raise ValidationError(f"line {lineno}: duplicate transition for ({s}, {a})")
        rows[s][index[a]] = t
    missing = [(s, alphabet[i]) for s in range(num_states) for i in range(len(alphabet)) if rows[s][i] is None]
    if missing:
        if not complete_with_sink:
            s, a = missing[0]
            raise ValidationError(f"missing transition for ({s}, {a}); {len(missing)} missing in total")
        sink = num_states
        rows.append([sink] * len(alphabet))
        for s, i in ((s, index[a]) for s, a in missing):
            rows[s][i] = sink
    if not 0 <= start < num_states:
        raise ValidationError(f"unknown start state {start}")
    for q in accepting:
        if not 0 <= q < num_states:
            raise ValidationError(f"unknown accepting state {q}")
    return Dfa(tuple(alphabet), tuple(tuple(r) for r in rows), start, frozenset(accepting))


def _parse_alphabet(raw: str, line=None) -> tuple[str, ...]:
    letters = tuple(raw.replace(",", " ").replace(" ", ""))
    if not letters:
        raise DfaSyntaxError("empty alphabet", line)
    if len(set(letters)) != len(letters):
        raise ValidationError("alphabet letters must be distinct")
    return letters


def _int(tok: str, line) -> int:
    try:
        return int(tok)
    except ValueError:
        raise DfaSyntaxError(f"expected an integer, got {tok!r}", line) from None


def parse_dfa(text: str, complete_with_sink: bool = False) -> Dfa:
    """Parse the line-oriented DFA format (or its JSON equivalent).

    Partial transition tables raise :class:`ValidationError` unless
    ``complete_with_sink`` is set, in which case a fresh rejecting sink absorbs
    every missing transition.
    """
    if text.lstrip().startswith("{"):
        return parse_dfa_json(text, complete_with_sink)
    alphabet = num_states = start = None
    accepting: list[int] = []
    transitions = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" in line:
            key, _, value = line.partition(":")
            key = key.strip().lower()
            value = value.strip()
            if key == "alphabet":
                alphabet = _parse_alphabet(value, lineno)
            elif key == "states":
                num_states = _int(value, lineno)
            elif key == "start":
                start = _int(value, lineno)
            elif key == "accepting":
                accepting = [_int(tok, lineno) for tok in value.split()]
            else:
                raise DfaSyntaxError(f"unknown header {key!r}", lineno)
            continue
        parts = line.split()
        if len(parts) != 3:
            raise DfaSyntaxError(f"expected 'state letter state', got {line!r}", lineno)
        transitions.append((lineno, _int(parts[0], lineno), parts[1], _int(parts[2], lineno)))
    if alphabet is None:
        raise DfaSyntaxError("missing 'alphabet' header")
    if num_states is None:
        raise DfaSyntaxError("missing 'states' header")
    return _build(alphabet, num_states, start, accepting, transitions, complete_with_sink)


def parse_dfa_json(text: str | dict, complete_with_sink: bool = False) -> Dfa:
    try:
        data = json.loads(text) if isinstance(text, str) else text
    except json.JSONDecodeError as exc:
        raise DfaSyntaxError(f"invalid JSON: {exc}") from None
    try:
        alphabet = _parse_alphabet("".join(data["alphabet"]))
        transitions = [(i + 1, int(s), str(a), int(t)) for i, (s, a, t) in enumerate(data["transitions"])]
        return _build(
            alphabet,
            int(data["states"]),
            int(data["start"]),
            [int(q) for q in data.get("accepting", [])],
            transitions,
            complete_with_sink,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DfaSyntaxError(f"malformed JSON automaton: {exc!r}") from None


def load_dfa(path, complete_with_sink: bool = False) -> Dfa:
    with open(path, encoding="utf-8") as fh:
        return parse_dfa(fh.read(), complete_with_sink)


# -- structural operations ---------------------------------------------------


def _reachable(M: Dfa) -> list[int]:
    """States reachable from the start, in breadth-first (alphabet-ordered) discovery order."""
    order = [M.start]
    seen = {M.start}
    queue = deque(order)
    while queue:
        s = queue.popleft()
        for t in M.table[s]:
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    return order


def _renumber(M: Dfa, order: Sequence[int], block_of: Callable[[int], int] | None = None) -> Dfa:
    block_of = block_of or (lambda s: s)
    new_id: dict[int, int] = {}
    reps: list[int] = []
    for s in order:
        b = block_of(s)
        if b not in new_id:
            new_id[b] = len(reps)
            reps.append(s)
    table = tuple(tuple(new_id[block_of(t)] for t in M.table[s]) for s in reps)
    accepting = frozenset(new_id[block_of(s)] for s in order if s in M.accepting)
    return Dfa(M.alphabet, table, new_id[block_of(M.start)], accepting)


def trim(M: Dfa) -> Dfa:
    """Drop unreachable states and renumber in breadth-first order."""
    return _renumber(M, _reachable(M))


def minimize(M: Dfa) -> Dfa:
    """Return the minimal complete DFA for ``L(M)``, numbered canonically.

    Moore-style partition refinement on the reachable part; the canonical
    breadth-first numbering makes equivalent inputs produce identical outputs.
    """
    order = _reachable(M)
    block = {s: int(s in M.accepting) for s in order}
    while True:
        signature = {s: (block[s],) + tuple(block[t] for t in M.table[s]) for s in order}
        ids: dict[tuple, int] = {}
        refined = {s: ids.setdefault(signature[s], len(ids)) for s in order}
        if len(ids) == len(set(block.values())):
            break
        block = refined
    return _renumber(M, order, block.__getitem__)


def complement(M: Dfa) -> Dfa:
    return Dfa(M.alphabet, M.table, M.start, frozenset(M.states) - M.accepting)


def AND(x: bool, y: bool) -> bool:
    return x and y


def OR(x: bool, y: bool) -> bool:
    return x or y


def XOR(x: bool, y: bool) -> bool:
    return x != y


def DIFF(x: bool, y: bool) -> bool:
    return x and not y


def product(M1: Dfa, M2: Dfa, combine: Callable[[bool, bool], bool] = AND) -> Dfa:
    """Reachable product automaton accepting where ``combine(acc1, acc2)`` holds."""
    if M1.alphabet != M2.alphabet:
        if set(M1.alphabet) != set(M2.alphabet):
            raise AlphabetMismatch(f"{''.join(M1.alphabet)!r} vs {''.join(M2.alphabet)!r}")
        perm = [M2.letter_index(a) for a in M1.alphabet]
        M2 = Dfa(M1.alphabet, tuple(tuple(row[i] for i in perm) for row in M2.table), M2.start, M2.accepting)
    start = (M1.start, M2.start)
    ids = {start: 0}
    pairs = [start]
    rows = []
    i = 0
    while i < len(pairs):
        p, q = pairs[i]
        row = []
        for t1, t2 in zip(M1.table[p], M2.table[q]):
            nxt = (t1, t2)
            if nxt not in ids:
                ids[nxt] = len(pairs)
                pairs.append(nxt)
            row.append(ids[nxt])
        rows.append(tuple(row))
        i += 1
    accepting = frozenset(i for i, (p, q) in enumerate(pairs) if combine(p in M1.accepting, q in M2.accepting))
    return Dfa(M1.alphabet, tuple(rows), 0, accepting)


def equivalent(M1: Dfa, M2: Dfa) -> bool:
    """True iff ``L(M1) == L(M2)``."""
    diff = product(M1, M2, XOR)
    return not any(s in diff.accepting for s in _reachable(diff))


def with_epsilon(M: Dfa, accept_empty: bool) -> Dfa:
    """Language of ``M`` on nonempty words, with the empty word's membership set explicitly."""
    if (M.start in M.accepting) == accept_empty:
        return M
    fresh = M.num_states
    table = M.table + (M.table[M.start],)
    accepting = set(M.accepting)
    if accept_empty:
        accepting.add(fresh)
    return trim(Dfa(M.alphabet, table, fresh, frozenset(accepting)))


def restrict_nonempty(M: Dfa) -> Dfa:
    """Intersect with ``A^+``: the empty word is rejected, nothing else changes."""
    return with_epsilon(M, False)


# -- regular expressions -----------------------------------------------------


@dataclass(frozen=True)
class EmptySet:
    pass


@dataclass(frozen=True)
class Epsilon:
    pass


@dataclass(frozen=True)
class Letter:
    a: str


@dataclass(frozen=True)
class Concat:
    left: object
    right: object


@dataclass(frozen=True)
class Union:
    left: object
    right: object


@dataclass(frozen=True)
class Star:
    inner: object


RegexAst = EmptySet | Epsilon | Letter | Concat | Union | Star

_EMPTY_TOKENS = ("{}", "∅")
_EPS_TOKENS = ("()", "ε")


def parse_regex(text: str, alphabet: Iterable[str] | None = None):
    """Parse a regex: letters, ``|``, juxtaposition, ``*``, ``+``, ``?``, parentheses.

    ``{}`` (or ``∅``) denotes the empty language and ``()`` (or ``ε``) the
    empty word.  Whitespace is ignored.
    """
    src = "".join(text.split())
    letters = set(alphabet) if alphabet is not None else None
    pos = 0

    def peek():
        return src[pos] if pos < len(src) else None

    def union():
        nonlocal pos
        node = concat()
        while peek() == "|":
            pos += 1
            node = Union(node, concat())
        return node

    def concat():
        node = None
        while peek() is not None and peek() not in "|)":
            nxt = postfix()
            node = nxt if node is None else Concat(node, nxt)
        return Epsilon() if node is None else node

    def postfix():
        nonlocal pos
        node = atom()
        while peek() in ("*", "+", "?"):
            op = src[pos]
            pos += 1
            if op == "*":
                node = Star(node)
            elif op == "+":
                node = Concat(node, Star(node))
            else:
                node = Union(node, Epsilon())
        return node

    def atom():
        nonlocal pos
        c = peek()
        if src.startswith("{}", pos):
            pos += 2
            return EmptySet()
        if c == "∅":
            pos += 1
            return EmptySet()
        if c == "ε":
            pos += 1
            return Epsilon()
        if c == "(":
            pos += 1
            node = union()
            if peek() != ")":
                raise DfaSyntaxError(f"unbalanced parenthesis at offset {pos} in {text!r}")
            pos += 1
            return node
        if c is None or c in "|)*+?{}":
            raise DfaSyntaxError(f"unexpected {c or 'end of input'!r} at offset {pos} in {text!r}")
        pos += 1
        if letters is not None and c not in letters:
            raise AlphabetError(f"regex letter {c!r} not in alphabet {''.join(sorted(letters))!r}")
        return Letter(c)

    node = union()
    if pos != len(src):
        raise DfaSyntaxError(f"unexpected {src[pos]!r} at offset {pos} in {text!r}")
    return node


class _Nfa:
    def __init__(self):
        self.eps: list[list[int]] = []
        self.moves: list[list[tuple[str, int]]] = []

    def state(self) -> int:
        self.eps.append([])
        self.moves.append([])
        return len(self.eps) - 1

    def build(self, node) -> tuple[int, int]:
        i, f = self.state(), self.state()
        if isinstance(node, EmptySet):
            pass
        elif isinstance(node, Epsilon):
            self.eps[i].append(f)
        elif isinstance(node, Letter):
            self.moves[i].append((node.a, f))
        elif isinstance(node, Concat):
            i1, f1 = self.build(node.left)
            i2, f2 = self.build(node.right)
            self.eps[i].append(i1)
            self.eps[f1].append(i2)
            self.eps[f2].append(f)
        elif isinstance(node, Union):
            for part in (node.left, node.right):
                ip, fp = self.build(part)
                self.eps[i].append(ip)
                self.eps[fp].append(f)
        elif isinstance(node, Star):
            ip, fp = self.build(node.inner)
            self.eps[i] += [ip, f]
            self.eps[fp] += [ip, f]
        else:
            raise TypeError(f"not a regex node: {node!r}")
        return i, f

    def closure(self, states) -> frozenset[int]:
        stack = list(states)
        seen = set(stack)
        while stack:
            for t in self.eps[stack.pop()]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)


def from_regex(r, alphabet: Iterable[str]) -> Dfa:
    """Compile a regex (string or AST) to its minimal complete DFA."""
    alphabet = tuple(alphabet)
    if isinstance(r, str):
        r = parse_regex(r, alphabet)
    nfa = _Nfa()
    init, final = nfa.build(r)
    start = nfa.closure([init])
    ids = {start: 0}
    subsets = [start]
    rows = []
    i = 0
    while i < len(subsets):
        cur = subsets[i]
        row = []
        for a in alphabet:
            nxt = nfa.closure(t for s in cur for b, t in nfa.moves[s] if b == a)
            if nxt not in ids:
                ids[nxt] = len(subsets)
                subsets.append(nxt)
            row.append(ids[nxt])
        rows.append(tuple(row))
        i += 1
    accepting = frozenset(i for i, sub in enumerate(subsets) if final in sub)
    return minimize(Dfa(alphabet, tuple(rows), 0, accepting))
