"""Finite automata: alphabets, NFAs, DFAs, and the constructions between them.

Machines are immutable after construction. DFAs are always total; the loader
completes partial transition tables with a sink state so downstream algorithms
can index the transition function unconditionally.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Union

LETTERS = "abcdefghijklmnopqrstuvwxyz"

MAX_ENUM_LEN = 12


class AutomatonError(ValueError):
    """Malformed machine, foreign symbol, or unreadable machine text."""


@dataclass(frozen=True)
class Alphabet:
    """Ordered, duplicate-free collection of symbols drawn from a-z."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        syms = tuple(self.symbols)
        object.__setattr__(self, "symbols", syms)
        if not syms:
            raise AutomatonError("alphabet must not be empty")
        seen = set()
        for s in syms:
            if len(s) != 1 or not ("a" <= s <= "z"):
                raise AutomatonError(f"bad alphabet symbol {s!r}: expected one letter a-z")
            if s in seen:
                raise AutomatonError(f"duplicate alphabet symbol {s!r}")
            seen.add(s)

    @classmethod
    def first(cls, k: int) -> "Alphabet":
        """The first k letters, a reasonable default for generated machines."""
        if not 1 <= k <= 26:
            raise AutomatonError(f"alphabet size {k} out of range 1..26")
        return cls(tuple(LETTERS[:k]))

    @cached_property
    def _index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.symbols)}

    def index(self, a: str) -> int:
        try:
            return self._index[a]
        except KeyError:
            raise AutomatonError(f"symbol {a!r} outside alphabet {''.join(self.symbols)!r}") from None

    def __contains__(self, a: str) -> bool:
        return a in self._index

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)


def _check_word(word: str, alphabet: Alphabet) -> None:
    for a in word:
        if a not in alphabet:
            raise AutomatonError(f"symbol {a!r} outside alphabet {''.join(alphabet.symbols)!r}")


@dataclass(frozen=True)
class Nfa:
    """Nondeterministic automaton without epsilon moves.

    States are 0..n_states-1; transitions is a set of (state, symbol, state)
    triples; any number of initial states, possibly none.
    """

    n_states: int
    alphabet: Alphabet
    transitions: frozenset[tuple[int, str, int]]
    initials: frozenset[int]
    finals: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        object.__setattr__(self, "initials", frozenset(self.initials))
        object.__setattr__(self, "finals", frozenset(self.finals))
        if self.n_states < 1:
            raise AutomatonError("automaton needs at least one state")
        for group in (self.initials, self.finals):
            for q in group:
                if not 0 <= q < self.n_states:
                    raise AutomatonError(f"state id {q} out of range 0..{self.n_states - 1}")
        for q, a, q2 in self.transitions:
            if not (0 <= q < self.n_states and 0 <= q2 < self.n_states):
                raise AutomatonError(f"transition ({q},{a!r},{q2}) leaves state range")
            if a not in self.alphabet:
                raise AutomatonError(f"transition symbol {a!r} outside alphabet")

    @cached_property
    def moves(self) -> dict[tuple[int, str], tuple[int, ...]]:
        """Adjacency keyed by (state, symbol), targets sorted."""
        table: dict[tuple[int, str], list[int]] = {}
        for q, a, q2 in self.transitions:
            table.setdefault((q, a), []).append(q2)
        return {key: tuple(sorted(ts)) for key, ts in table.items()}

    def step(self, states: Iterable[int], a: str) -> frozenset[int]:
        if a not in self.alphabet:
            raise AutomatonError(f"symbol {a!r} outside alphabet")
        out: set[int] = set()
        for q in states:
            out.update(self.moves.get((q, a), ()))
        return frozenset(out)

    def accepts(self, word: str) -> bool:
        _check_word(word, self.alphabet)
        current: frozenset[int] = frozenset(self.initials)
        for a in word:
            current = self.step(current, a)
            if not current:
                break
        return bool(current & self.finals)


@dataclass(frozen=True)
class Dfa:
    """Complete deterministic automaton.

    delta[q][i] is the successor of state q on the i-th alphabet symbol; every
    row is total by construction.
    """

    n_states: int
    alphabet: Alphabet
    delta: tuple[tuple[int, ...], ...]
    initial: int
    finals: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        object.__setattr__(self, "finals", frozenset(self.finals))
        if self.n_states < 1:
            raise AutomatonError("automaton needs at least one state")
        if len(self.delta) != self.n_states:
            raise AutomatonError(f"delta has {len(self.delta)} rows for {self.n_states} states")
        k = len(self.alphabet)
        for q, row in enumerate(self.delta):
            if len(row) != k:
                raise AutomatonError(f"delta row {q} has {len(row)} entries for {k} symbols")
            for q2 in row:
                if not 0 <= q2 < self.n_states:
                    raise AutomatonError(f"delta target {q2} out of range")
        if not 0 <= self.initial < self.n_states:
            raise AutomatonError(f"initial state {self.initial} out of range")
        for q in self.finals:
            if not 0 <= q < self.n_states:
                raise AutomatonError(f"final state {q} out of range")

    def step(self, q: int, a: str) -> int:
        return self.delta[q][self.alphabet.index(a)]

    def accepts(self, word: str) -> bool:
        _check_word(word, self.alphabet)
        q = self.initial
        for a in word:
            q = self.delta[q][self.alphabet.index(a)]
        return q in self.finals

    def to_nfa(self) -> Nfa:
        triples = frozenset(
            (q, a, self.delta[q][i])
            for q in range(self.n_states)
            for i, a in enumerate(self.alphabet)
        )
        return Nfa(self.n_states, self.alphabet, triples, frozenset({self.initial}), self.finals)


Machine = Union[Nfa, Dfa]


def membership(m: Machine, word: str) -> bool:
    """Does the machine accept the word?"""
    return m.accepts(word)


def complete(n_states: int, alphabet: Alphabet, moves: Mapping[tuple[int, str], int],
             initial: int, finals: Iterable[int]) -> Dfa:
    """Build a total DFA from a possibly partial move map.

    A sink state is appended only if some (state, symbol) pair is missing; an
    already-total table round-trips unchanged.
    """
    for (q, a), q2 in moves.items():
        if not (0 <= q < n_states and 0 <= q2 < n_states):
            raise AutomatonError(f"move ({q},{a!r})->{q2} leaves state range")
        if a not in alphabet:
            raise AutomatonError(f"move symbol {a!r} outside alphabet")
    missing = any(
        (q, a) not in moves for q in range(n_states) for a in alphabet
    )
    total = n_states + 1 if missing else n_states
    sink = n_states if missing else -1
    rows = []
    for q in range(n_states):
        rows.append(tuple(moves.get((q, a), sink) for a in alphabet))
    if missing:
        rows.append(tuple(sink for _ in alphabet))
    return Dfa(total, alphabet, tuple(rows), initial, frozenset(finals))


def determinize(n: Nfa) -> Dfa:
    """Subset construction over reachable macro-states.

    The empty subset, when reachable, acts as the sink, so the result is total.
    Macro-states are numbered in BFS discovery order (symbols in declared
    order), which makes the numbering deterministic.
    """
    start = frozenset(n.initials)
    index: dict[frozenset[int], int] = {start: 0}
    order: list[frozenset[int]] = [start]
    rows: list[tuple[int, ...]] = []
    pos = 0
    while pos < len(order):
        macro = order[pos]
        pos += 1
        row = []
        for a in n.alphabet:
            target = n.step(macro, a)
            t = index.get(target)
            if t is None:
                t = len(order)
                index[target] = t
                order.append(target)
            row.append(t)
        rows.append(tuple(row))
    finals = frozenset(i for i, macro in enumerate(order) if macro & n.finals)
    return Dfa(len(order), n.alphabet, tuple(rows), 0, finals)


def reverse(n: Nfa) -> Nfa:
    """Flip every transition and swap initial and final sets."""
    return Nfa(
        n.n_states,
        n.alphabet,
        frozenset((q2, a, q) for q, a, q2 in n.transitions),
        frozenset(n.finals),
        frozenset(n.initials),
    )


def disjoint_union(a: Nfa, b: Nfa) -> tuple[Nfa, int]:
    """Place two NFAs side by side; returns the combined machine and b's id offset."""
    if a.alphabet != b.alphabet:
        raise AutomatonError("disjoint union needs a shared alphabet")
    off = a.n_states
    triples = set(a.transitions)
    triples.update((q + off, s, q2 + off) for q, s, q2 in b.transitions)
    return (
        Nfa(
            a.n_states + b.n_states,
            a.alphabet,
            frozenset(triples),
            frozenset(a.initials) | frozenset(q + off for q in b.initials),
            frozenset(a.finals) | frozenset(q + off for q in b.finals),
        ),
        off,
    )


def enumerate_language(m: Machine, max_len: int) -> list[str]:
    """All accepted words of length <= max_len, shortest first, lexicographic
    within a length (declared alphabet order). Capped at max_len 12."""
    if max_len < 0:
        raise AutomatonError("max_len must be non-negative")
    if max_len > MAX_ENUM_LEN:
        raise AutomatonError(f"enumeration horizon capped at {MAX_ENUM_LEN}")
    n = m.to_nfa() if isinstance(m, Dfa) else m
    out: list[str] = []
    frontier: list[tuple[str, frozenset[int]]] = [("", frozenset(n.initials))]
    for length in range(max_len + 1):
        for word, states in frontier:
            if states & n.finals:
                out.append(word)
        if length == max_len:
            break
        new_frontier = []
        for word, states in frontier:
            for a in n.alphabet:
                nxt = n.step(states, a)
                if nxt:
                    new_frontier.append((word + a, nxt))
        frontier = new_frontier
    return out


def _parse_ids(parts: list[str], line_no: int) -> list[int]:
    ids = []
    for p in parts:
        try:
            ids.append(int(p))
        except ValueError:
            raise AutomatonError(f"line {line_no}: bad state id {p!r}") from None
    return ids


def read_automaton(text: str) -> Machine:
    """Parse the one-item-per-line machine format.

    Header ``nfa|dfa k=<symbols> n=<count>``, then ``initial:`` and ``final:``
    id lists, then one ``q a q'`` triple per line. DFA bodies may be partial;
    the result is completed with a sink when needed.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    rows = [(i + 1, ln) for i, ln in enumerate(lines) if ln and not ln.startswith("#")]
    if not rows:
        raise AutomatonError("empty automaton text")
    line_no, header = rows[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] not in ("nfa", "dfa"):
        raise AutomatonError(f"line {line_no}: bad header {header!r}")
    kind = parts[0]
    try:
        k = int(parts[1].removeprefix("k="))
        n = int(parts[2].removeprefix("n="))
    except ValueError:
        raise AutomatonError(f"line {line_no}: bad header {header!r}") from None
    alphabet = Alphabet.first(k)
    initials: list[int] = []
    finals: list[int] = []
    seen_initial = seen_final = False
    triples: list[tuple[int, str, int]] = []
    for line_no, ln in rows[1:]:
        if ln.startswith("initial:"):
            initials = _parse_ids(ln[len("initial:"):].split(), line_no)
            seen_initial = True
        elif ln.startswith("final:"):
            finals = _parse_ids(ln[len("final:"):].split(), line_no)
            seen_final = True
        else:
            parts = ln.split()
            if len(parts) != 3:
                raise AutomatonError(f"line {line_no}: expected 'q a q2', got {ln!r}")
            q, q2 = _parse_ids([parts[0], parts[2]], line_no)
            a = parts[1]
            if a not in alphabet:
                raise AutomatonError(f"line {line_no}: symbol {a!r} outside alphabet")
            triples.append((q, a, q2))
    if not (seen_initial and seen_final):
        raise AutomatonError("missing initial: or final: line")
    if any(not 0 <= q < n for q in itertools.chain(initials, finals)):
        raise AutomatonError("initial/final id out of range")
    if kind == "nfa":
        return Nfa(n, alphabet, frozenset(triples), frozenset(initials), frozenset(finals))
    if len(initials) != 1:
        raise AutomatonError("dfa needs exactly one initial state")
    moves: dict[tuple[int, str], int] = {}
    for q, a, q2 in triples:
        if (q, a) in moves:
            raise AutomatonError(f"dfa has two moves for state {q} on {a!r}")
        moves[(q, a)] = q2
    return complete(n, alphabet, moves, initials[0], finals)


def write_automaton(m: Machine) -> str:
    """Render a machine in the text format; inverse of read_automaton."""
    kind = "dfa" if isinstance(m, Dfa) else "nfa"
    lines = [f"{kind} k={len(m.alphabet)} n={m.n_states}"]
    if isinstance(m, Dfa):
        initials = [m.initial]
        triples = [
            (q, i, m.delta[q][i])
            for q in range(m.n_states)
            for i in range(len(m.alphabet))
        ]
    else:
        initials = sorted(m.initials)
        triples = sorted(
            (q, m.alphabet.index(a), q2) for q, a, q2 in m.transitions
        )
    lines.append(" ".join(["initial:"] + [str(q) for q in initials]))
    lines.append(" ".join(["final:"] + [str(q) for q in sorted(m.finals)]))
    for q, i, q2 in triples:
        lines.append(f"{q} {m.alphabet.symbols[i]} {q2}")
    return "\n".join(lines) + "\n"


def load_automaton(path) -> Machine:
    with open(path, "r", encoding="ascii") as fh:
        return read_automaton(fh.read())


def save_automaton(m: Machine, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(write_automaton(m))
