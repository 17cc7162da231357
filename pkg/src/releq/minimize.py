"""DFA minimization (Hopcroft partition refinement, Brzozowski double
reversal) and the canonical-form isomorphism test used as equivalence oracle."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .automata import AutomatonError, Dfa, Nfa, determinize, reverse


@dataclass(frozen=True)
class StatePartition:
    """Disjoint state blocks covering Q plus each state's block index."""

    blocks: tuple
    block_of: tuple


def _reachable(d: Dfa) -> list[int]:
    seen = {d.initial}
    order = [d.initial]
    pos = 0
    while pos < len(order):
        q = order[pos]
        pos += 1
        for t in d.delta[q]:
            if t not in seen:
                seen.add(t)
                order.append(t)
    return order


def _refine(d: Dfa, states: list[int]) -> list[set]:
    """Hopcroft refinement over a delta-closed state subset.

    Worklist holds block ids whose current content is read at pop; when a
    pending block splits, both halves are queued, otherwise the smaller half
    is (ties to the lower, i.e. older, block id).
    """
    k = len(d.alphabet)
    inv: list[dict[int, list[int]]] = [{} for _ in range(k)]
    for q in states:
        for i in range(k):
            inv[i].setdefault(d.delta[q][i], []).append(q)

    blocks: list[set] = []
    block_of: dict[int, int] = {}
    for group in (
        [q for q in states if q in d.finals],
        [q for q in states if q not in d.finals],
    ):
        if group:
            bid = len(blocks)
            blocks.append(set(group))
            for q in group:
                block_of[q] = bid

    worklist: deque = deque()
    pending = [False] * len(blocks)
    seed = min(range(len(blocks)), key=lambda b: (len(blocks[b]), b))
    worklist.append(seed)
    pending[seed] = True

    while worklist:
        bid = worklist.popleft()
        pending[bid] = False
        splitter = sorted(blocks[bid])
        for i in range(k):
            x: set = set()
            for q in splitter:
                x.update(inv[i].get(q, ()))
            affected: dict[int, list[int]] = {}
            for q in sorted(x):
                affected.setdefault(block_of[q], []).append(q)
            for yid, hits in affected.items():
                if len(hits) == len(blocks[yid]):
                    continue
                part_in = set(hits)
                part_out = blocks[yid] - part_in
                blocks[yid] = part_out
                nid = len(blocks)
                blocks.append(part_in)
                pending.append(False)
                for q in part_in:
                    block_of[q] = nid
                if pending[yid]:
                    worklist.append(nid)
                    pending[nid] = True
                elif len(part_in) < len(part_out):
                    worklist.append(nid)
                    pending[nid] = True
                else:
                    worklist.append(yid)
                    pending[yid] = True
    return blocks


def state_equivalence(d: Dfa) -> StatePartition:
    """Coarsest right-invariant partition of all states; blocks ordered by
    smallest member."""
    blocks = sorted((frozenset(b) for b in _refine(d, list(range(d.n_states)))), key=min)
    block_of = [0] * d.n_states
    for i, block in enumerate(blocks):
        for q in block:
            block_of[q] = i
    return StatePartition(tuple(blocks), tuple(block_of))


def hopcroft_minimize(d: Dfa) -> Dfa:
    """Quotient of the accessible part by state equivalence; minimal, language
    preserved, states renumbered in BFS order from the initial block."""
    reach = _reachable(d)
    blocks = _refine(d, reach)
    block_of: dict[int, int] = {}
    for bid, block in enumerate(blocks):
        for q in block:
            block_of[q] = bid
    reps = {bid: min(block) for bid, block in enumerate(blocks)}
    k = len(d.alphabet)

    renum = {block_of[d.initial]: 0}
    order = [block_of[d.initial]]
    rows: list[tuple[int, ...]] = []
    pos = 0
    while pos < len(order):
        bid = order[pos]
        pos += 1
        rep = reps[bid]
        row = []
        for i in range(k):
            tid = block_of[d.delta[rep][i]]
            t = renum.get(tid)
            if t is None:
                t = len(order)
                renum[tid] = t
                order.append(tid)
            row.append(t)
        rows.append(tuple(row))
    finals = frozenset(
        renum[bid] for bid in order if reps[bid] in d.finals
    )
    return Dfa(len(order), d.alphabet, tuple(rows), 0, finals)


def brzozowski_minimize(n: Nfa) -> Dfa:
    """Double reversal: determinizing the reverse of a deterministic accessible
    machine yields the minimal DFA of the reverse language."""
    once = determinize(reverse(n))
    return determinize(reverse(once.to_nfa()))


def minimal_isomorphic(a: Dfa, b: Dfa) -> bool:
    """Do two minimal DFAs differ only in state numbering?

    Inputs must be minimal (checked by size-preserving re-minimization, which
    also forces accessibility); the unique candidate bijection is grown by
    lockstep traversal from the initials.
    """
    for m in (a, b):
        if hopcroft_minimize(m).n_states != m.n_states:
            raise AutomatonError("input machine is not minimal")
    if a.alphabet != b.alphabet or a.n_states != b.n_states:
        return False
    if len(a.finals) != len(b.finals):
        return False
    mapping = {a.initial: b.initial}
    used = {b.initial}
    queue = [a.initial]
    pos = 0
    while pos < len(queue):
        p = queue[pos]
        pos += 1
        q = mapping[p]
        if (p in a.finals) != (q in b.finals):
            return False
        for i in range(len(a.alphabet)):
            p2 = a.delta[p][i]
            q2 = b.delta[q][i]
            seen = mapping.get(p2)
            if seen is not None:
                if seen != q2:
                    return False
            else:
                if q2 in used:
                    return False
                mapping[p2] = q2
                used.add(q2)
                queue.append(p2)
    return True
