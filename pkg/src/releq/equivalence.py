"""Equivalence deciders for regular languages.

Six worklist algorithms sharing one report shape: hk/hki/hkn/hke compare
automata, am/equiv_uf compare regular expressions through their derivatives.
All use a LIFO worklist and iterate alphabet symbols in declared order, so
iteration counts are reproducible. A decider accepts an optional observer
callback, called as observer(event, payload) with events "pop", "push",
"union" (payload (i, j, name, partition)) and "done" (final history); the
observer must not mutate what it is handed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional

from .automata import Alphabet, Dfa, Nfa
from .regex import Regex, _deriv, _resolve_alphabet, canonicalize, nullable
from .unionfind import Partition

ProductRelation = frozenset


@dataclass(frozen=True)
class EquivalenceReport:
    """Outcome of one decider run.

    iterations counts worklist pops; pairs_visited counts pushes (the initial
    pair included); witness is present iff the languages differ and is always
    membership-verified.
    """

    equivalent: bool
    iterations: int
    pairs_visited: int
    witness: Optional[str] = None


@dataclass
class CheckerState:
    """Worklist, history, and parent links of a running (or finished) check.

    parents maps each pushed pair to (parent pair, symbol), None for the
    initial pair. accepts1/accepts2 decide membership in the two inputs;
    shortest produces a breadth-first distinguishing word independently of the
    parent chain.
    """

    worklist: list = field(default_factory=list)
    history: object = None
    parents: dict = field(default_factory=dict)
    accepts1: Callable[[str], bool] = None
    accepts2: Callable[[str], bool] = None
    shortest: Callable[[], Optional[str]] = None


def witness(cs: CheckerState, bad_pair) -> str:
    """Distinguishing word for a refuted run.

    Walks the parent chain from the offending pair back to the initial pair.
    Checkers that push set identifiers can produce a chain word that fails to
    distinguish (identifiers may name merged states of either machine), so the
    word is verified by membership and replaced by an independent shortest
    witness when needed.
    """
    if bad_pair is None or bad_pair not in cs.parents:
        raise ValueError("witness requested without a refuted pair")
    symbols = []
    cur = bad_pair
    while True:
        link = cs.parents[cur]
        if link is None:
            break
        cur, a = link
        symbols.append(a)
    word = "".join(reversed(symbols))
    if cs.accepts1(word) != cs.accepts2(word):
        return word
    alt = cs.shortest()
    if alt is None:
        raise RuntimeError("refuted run has no distinguishing word")
    return alt


def _noop(event, payload):
    pass


def _widen_dfa(d: Dfa, alphabet: Alphabet) -> Dfa:
    if alphabet == d.alphabet:
        return d
    old = set(d.alphabet.symbols)
    extra = [s for s in alphabet if s not in old]
    if not extra:
        rows = tuple(
            tuple(row[d.alphabet.index(s)] for s in alphabet) for row in d.delta
        )
        return Dfa(d.n_states, alphabet, rows, d.initial, d.finals)
    sink = d.n_states
    rows = [
        tuple(row[d.alphabet.index(s)] if s in old else sink for s in alphabet)
        for row in d.delta
    ]
    rows.append(tuple(sink for _ in alphabet))
    return Dfa(d.n_states + 1, alphabet, tuple(rows), d.initial, d.finals)


def _union_alphabet(a: Alphabet, b: Alphabet) -> Alphabet:
    if a == b:
        return a
    syms = list(a.symbols) + [s for s in b.symbols if s not in set(a.symbols)]
    return Alphabet(tuple(syms))


def _harmonize_dfas(a: Dfa, b: Dfa) -> tuple[Dfa, Dfa]:
    alphabet = _union_alphabet(a.alphabet, b.alphabet)
    return _widen_dfa(a, alphabet), _widen_dfa(b, alphabet)


def _harmonize_nfas(a: Nfa, b: Nfa) -> tuple[Nfa, Nfa]:
    alphabet = _union_alphabet(a.alphabet, b.alphabet)

    def widen(n: Nfa) -> Nfa:
        if n.alphabet == alphabet:
            return n
        return Nfa(n.n_states, alphabet, n.transitions, n.initials, n.finals)

    return widen(a), widen(b)


def _dfa_shortest_witness(a: Dfa, b: Dfa) -> Optional[str]:
    # breadth-first over the product graph; shared alphabet assumed
    start = (a.initial, b.initial)
    seen = {start}
    queue = deque([(start, "")])
    while queue:
        (p, q), word = queue.popleft()
        if (p in a.finals) != (q in b.finals):
            return word
        for i, sym in enumerate(a.alphabet):
            nxt = (a.delta[p][i], b.delta[q][i])
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, word + sym))
    return None


def _nfa_shortest_witness(a: Nfa, b: Nfa) -> Optional[str]:
    # product of the two on-the-fly determinizations
    start = (frozenset(a.initials), frozenset(b.initials))
    seen = {start}
    queue = deque([(start, "")])
    while queue:
        (p, q), word = queue.popleft()
        if bool(p & a.finals) != bool(q & b.finals):
            return word
        for sym in a.alphabet:
            nxt = (a.step(p, sym), b.step(q, sym))
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, word + sym))
    return None


def _regex_shortest_witness(s1: Regex, s2: Regex, alphabet: Alphabet) -> Optional[str]:
    # breadth-first over canonical derivative pairs
    start = (s1, s2)
    seen = {start}
    queue = deque([(start, "")])
    while queue:
        (al, be), word = queue.popleft()
        if nullable(al) != nullable(be):
            return word
        for sym in alphabet:
            nxt = (_deriv(al, sym), _deriv(be, sym))
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, word + sym))
    return None


def _merge_dfas(a: Dfa, b: Dfa) -> tuple[list, list]:
    # b's states are shifted by a.n_states; rows[s][i] steps in the right machine
    off = a.n_states
    rows = list(a.delta) + [tuple(t + off for t in row) for row in b.delta]
    eps = [q in a.finals for q in range(a.n_states)]
    eps += [q in b.finals for q in range(b.n_states)]
    return rows, eps


def hk(a: Dfa, b: Dfa, observer=None) -> EquivalenceReport:
    """Union-find equivalence check: MAKE every state, UNION the initials,
    propagate along transitions, then sweep every set for homogeneity."""
    emit = observer or _noop
    a, b = _harmonize_dfas(a, b)
    rows, eps = _merge_dfas(a, b)
    symbols = a.alphabet.symbols
    part = Partition()
    for s in range(len(rows)):
        part.make(s)
    p0, q0 = a.initial, b.initial + a.n_states
    cs = CheckerState(
        history=part,
        accepts1=a.accepts,
        accepts2=b.accepts,
        shortest=lambda: _dfa_shortest_witness(a, b),
    )
    part.union(p0, q0, q0)
    emit("union", (p0, q0, q0, part))
    start = (p0, q0)
    cs.parents[start] = None
    cs.worklist.append(start)
    emit("push", start)
    pushes = 1
    bad = start if eps[p0] != eps[q0] else None
    iters = 0
    while cs.worklist:
        pair = cs.worklist.pop()
        emit("pop", pair)
        iters += 1
        p, q = pair
        for i, sym in enumerate(symbols):
            p2 = part.find(rows[p][i])
            q2 = part.find(rows[q][i])
            if p2 != q2:
                part.union(p2, q2, q2)
                emit("union", (p2, q2, q2, part))
                nxt = (p2, q2)
                cs.parents.setdefault(nxt, (pair, sym))
                cs.worklist.append(nxt)
                emit("push", nxt)
                pushes += 1
                if bad is None and eps[p2] != eps[q2]:
                    bad = nxt
    emit("done", part)
    for group in part.sets():
        value = eps[group[0]]
        if any(eps[member] != value for member in group[1:]):
            word = witness(cs, bad) if bad is not None else cs.shortest()
            return EquivalenceReport(False, iters, pushes, word)
    return EquivalenceReport(True, iters, pushes)


def hki(a: Dfa, b: Dfa, observer=None) -> EquivalenceReport:
    """hk with refutation at pop: a popped pair with differing finality ends
    the run. Only touched states get sets (FIND creates on miss)."""
    emit = observer or _noop
    a, b = _harmonize_dfas(a, b)
    rows, eps = _merge_dfas(a, b)
    symbols = a.alphabet.symbols
    part = Partition()
    p0, q0 = a.initial, b.initial + a.n_states
    cs = CheckerState(
        history=part,
        accepts1=a.accepts,
        accepts2=b.accepts,
        shortest=lambda: _dfa_shortest_witness(a, b),
    )
    part.make(p0)
    part.make(q0)
    part.union(p0, q0, q0)
    emit("union", (p0, q0, q0, part))
    start = (p0, q0)
    cs.parents[start] = None
    cs.worklist.append(start)
    emit("push", start)
    pushes = 1
    iters = 0
    while cs.worklist:
        pair = cs.worklist.pop()
        emit("pop", pair)
        iters += 1
        p, q = pair
        if eps[p] != eps[q]:
            emit("done", part)
            return EquivalenceReport(False, iters, pushes, witness(cs, pair))
        for i, sym in enumerate(symbols):
            p2 = part.find(rows[p][i], create_on_miss=True)
            q2 = part.find(rows[q][i], create_on_miss=True)
            if p2 != q2:
                part.union(p2, q2, q2)
                emit("union", (p2, q2, q2, part))
                nxt = (p2, q2)
                cs.parents.setdefault(nxt, (pair, sym))
                cs.worklist.append(nxt)
                emit("push", nxt)
                pushes += 1
    emit("done", part)
    return EquivalenceReport(True, iters, pushes)


def hkn(a: Dfa, b: Dfa, observer=None) -> tuple[EquivalenceReport, ProductRelation]:
    """Naive variant: explore every reachable state pair into a history set H,
    then sweep H for finality mismatches. Returns the report and H, which
    equals the product-reachable relation."""
    emit = observer or _noop
    a, b = _harmonize_dfas(a, b)
    symbols = a.alphabet.symbols
    start = (a.initial, b.initial)
    cs = CheckerState(
        accepts1=a.accepts,
        accepts2=b.accepts,
        shortest=lambda: _dfa_shortest_witness(a, b),
    )
    history: dict = {}
    cs.history = history
    in_stack = {start}
    cs.parents[start] = None
    cs.worklist.append(start)
    emit("push", start)
    pushes = 1
    iters = 0
    while cs.worklist:
        pair = cs.worklist.pop()
        emit("pop", pair)
        iters += 1
        in_stack.discard(pair)
        history[pair] = None
        p, q = pair
        for i, sym in enumerate(symbols):
            nxt = (a.delta[p][i], b.delta[q][i])
            if nxt not in history and nxt not in in_stack:
                cs.parents.setdefault(nxt, (pair, sym))
                cs.worklist.append(nxt)
                in_stack.add(nxt)
                emit("push", nxt)
                pushes += 1
    emit("done", history)
    relation = frozenset(history)
    bad = next(
        (pair for pair in history if (pair[0] in a.finals) != (pair[1] in b.finals)),
        None,
    )
    if bad is not None:
        return EquivalenceReport(False, iters, pushes, witness(cs, bad)), relation
    return EquivalenceReport(True, iters, pushes), relation


def hke(a: Nfa, b: Nfa, observer=None) -> EquivalenceReport:
    """hki embedded in the powerset construction: pairs hold interned
    macro-state ids, created lazily, so only the explored corner of the
    powerset ever materializes."""
    emit = observer or _noop
    a, b = _harmonize_nfas(a, b)
    symbols = a.alphabet.symbols
    off = a.n_states
    moves: dict = dict(a.moves)
    for (q, sym), targets in b.moves.items():
        moves[(q + off, sym)] = tuple(t + off for t in targets)
    finals = set(a.finals) | {q + off for q in b.finals}

    macro_eps: list[bool] = []
    macro_members: list[tuple] = []
    macro_id: dict = {}

    def intern(states: frozenset) -> int:
        key = tuple(sorted(states))
        mid = macro_id.get(key)
        if mid is None:
            mid = len(macro_members)
            macro_id[key] = mid
            macro_members.append(key)
            macro_eps.append(any(s in finals for s in key))
        return mid

    step_cache: dict = {}

    def macro_step(mid: int, sym: str) -> int:
        got = step_cache.get((mid, sym))
        if got is None:
            out: set = set()
            for member in macro_members[mid]:
                out.update(moves.get((member, sym), ()))
            got = intern(frozenset(out))
            step_cache[(mid, sym)] = got
        return got

    p0 = intern(frozenset(q + off for q in b.initials))
    q0 = intern(frozenset(a.initials))
    part = Partition()
    cs = CheckerState(
        history=part,
        accepts1=a.accepts,
        accepts2=b.accepts,
        shortest=lambda: _nfa_shortest_witness(a, b),
    )
    part.find(p0, create_on_miss=True)
    part.find(q0, create_on_miss=True)
    if part.find(p0) != part.find(q0):
        part.union(p0, q0, q0)
        emit("union", (p0, q0, q0, part))
    start = (p0, q0)
    cs.parents[start] = None
    cs.worklist.append(start)
    emit("push", start)
    pushes = 1
    iters = 0
    while cs.worklist:
        pair = cs.worklist.pop()
        emit("pop", pair)
        iters += 1
        p, q = pair
        if macro_eps[p] != macro_eps[q]:
            emit("done", part)
            return EquivalenceReport(False, iters, pushes, witness(cs, pair))
        for sym in symbols:
            p2 = part.find(macro_step(p, sym), create_on_miss=True)
            q2 = part.find(macro_step(q, sym), create_on_miss=True)
            if p2 != q2:
                part.union(p2, q2, q2)
                emit("union", (p2, q2, q2, part))
                nxt = (p2, q2)
                cs.parents.setdefault(nxt, (pair, sym))
                cs.worklist.append(nxt)
                emit("push", nxt)
                pushes += 1
    emit("done", part)
    return EquivalenceReport(True, iters, pushes)


def _regex_acceptor(r: Regex, alphabet: Alphabet) -> Callable[[str], bool]:
    def accepts(word: str) -> bool:
        d = canonicalize(r)
        for sym in word:
            d = _deriv(d, sym)
        return nullable(d)

    return accepts


def am(r1: Regex, r2: Regex, alphabet: Optional[Alphabet] = None,
       observer=None) -> EquivalenceReport:
    """Derivative-pair worklist over canonical forms: pop, refute on
    nullability mismatch, record in the history, push unseen derivative
    pairs. Never materializes whole automata."""
    emit = observer or _noop
    alphabet = _resolve_alphabet(alphabet, r1, r2)
    s1 = canonicalize(r1)
    s2 = canonicalize(r2)
    start = (s1, s2)
    cs = CheckerState(
        accepts1=_regex_acceptor(r1, alphabet),
        accepts2=_regex_acceptor(r2, alphabet),
        shortest=lambda: _regex_shortest_witness(s1, s2, alphabet),
    )
    history: set = set()
    cs.history = history
    in_stack = {start}
    cs.parents[start] = None
    cs.worklist.append(start)
    emit("push", start)
    pushes = 1
    iters = 0
    while cs.worklist:
        pair = cs.worklist.pop()
        emit("pop", pair)
        iters += 1
        in_stack.discard(pair)
        al, be = pair
        if nullable(al) != nullable(be):
            emit("done", history)
            return EquivalenceReport(False, iters, pushes, witness(cs, pair))
        history.add(pair)
        for sym in alphabet:
            nxt = (_deriv(al, sym), _deriv(be, sym))
            if nxt not in history and nxt not in in_stack:
                cs.parents.setdefault(nxt, (pair, sym))
                cs.worklist.append(nxt)
                in_stack.add(nxt)
                emit("push", nxt)
                pushes += 1
    emit("done", history)
    return EquivalenceReport(True, iters, pushes)


def equiv_uf(r1: Regex, r2: Regex, alphabet: Optional[Alphabet] = None,
             observer=None) -> EquivalenceReport:
    """am with the pair history replaced by a union-find over side-tagged
    canonical derivatives: a successor pair is skipped once its two sides are
    already in one set, which coarsens the skip test and can only prune."""
    emit = observer or _noop
    alphabet = _resolve_alphabet(alphabet, r1, r2)
    s1 = canonicalize(r1)
    s2 = canonicalize(r2)
    part = Partition()
    cs = CheckerState(
        history=part,
        accepts1=_regex_acceptor(r1, alphabet),
        accepts2=_regex_acceptor(r2, alphabet),
        shortest=lambda: _regex_shortest_witness(s1, s2, alphabet),
    )
    k1, k2 = (1, s1), (2, s2)
    part.make(k1)
    part.make(k2)
    part.union(k1, k2, k2)
    emit("union", (k1, k2, k2, part))
    start = (s1, s2)
    cs.parents[start] = None
    cs.worklist.append(start)
    emit("push", start)
    pushes = 1
    iters = 0
    while cs.worklist:
        pair = cs.worklist.pop()
        emit("pop", pair)
        iters += 1
        al, be = pair
        if nullable(al) != nullable(be):
            emit("done", part)
            return EquivalenceReport(False, iters, pushes, witness(cs, pair))
        for sym in alphabet:
            d1 = _deriv(al, sym)
            d2 = _deriv(be, sym)
            t1 = part.find((1, d1), create_on_miss=True)
            t2 = part.find((2, d2), create_on_miss=True)
            if t1 != t2:
                part.union(t1, t2, t2)
                emit("union", (t1, t2, t2, part))
                nxt = (d1, d2)
                cs.parents.setdefault(nxt, (pair, sym))
                cs.worklist.append(nxt)
                emit("push", nxt)
                pushes += 1
    emit("done", part)
    return EquivalenceReport(True, iters, pushes)
