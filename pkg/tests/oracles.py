"""Independent reference implementations the tests check the library against.

Everything here is deliberately naive and shares no code with the package:
a recursive regex matcher (no derivatives), brute-force word enumeration,
product-graph reachability, table-filling state equivalence, and a
list-of-sets partition model.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from releq import Concat, Dfa, Empty, Epsilon, Regex, Star, Symbol, Union


@lru_cache(maxsize=None)
def naive_match(r: Regex, w: str) -> bool:
    """Structural matcher: splits words instead of differentiating."""
    if isinstance(r, Empty):
        return False
    if isinstance(r, Epsilon):
        return w == ""
    if isinstance(r, Symbol):
        return w == r.char
    if isinstance(r, Union):
        return naive_match(r.left, w) or naive_match(r.right, w)
    if isinstance(r, Concat):
        return any(
            naive_match(r.left, w[:i]) and naive_match(r.right, w[i:])
            for i in range(len(w) + 1)
        )
    if isinstance(r, Star):
        if w == "":
            return True
        return any(
            naive_match(r.inner, w[:i]) and naive_match(r, w[i:])
            for i in range(1, len(w) + 1)
        )
    raise TypeError(type(r))


def words_over(symbols, max_len: int):
    """All words up to max_len in length-lexicographic order."""
    out = [""]
    for length in range(1, max_len + 1):
        out.extend("".join(t) for t in itertools.product(sorted(symbols), repeat=length))
    return out


def regex_language(r: Regex, symbols, max_len: int) -> frozenset:
    return frozenset(w for w in words_over(symbols, max_len) if naive_match(r, w))


def bounded_language(r: Regex, max_len: int) -> frozenset:
    """L(r) up to max_len by denotational set construction (no matching)."""
    if isinstance(r, Empty):
        return frozenset()
    if isinstance(r, Epsilon):
        return frozenset({""})
    if isinstance(r, Symbol):
        return frozenset({r.char}) if max_len >= 1 else frozenset()
    if isinstance(r, Union):
        return bounded_language(r.left, max_len) | bounded_language(r.right, max_len)
    if isinstance(r, Concat):
        left = bounded_language(r.left, max_len)
        right = bounded_language(r.right, max_len)
        return frozenset(
            u + v for u in left for v in right if len(u) + len(v) <= max_len
        )
    if isinstance(r, Star):
        inner = bounded_language(r.inner, max_len)
        acc = {""}
        while True:
            grown = acc | {
                u + v for u in acc for v in inner if len(u) + len(v) <= max_len
            }
            if grown == acc:
                return frozenset(acc)
            acc = grown
    raise TypeError(type(r))


def product_reachable(a: Dfa, b: Dfa) -> frozenset:
    """State pairs of the product graph reachable from the initial pair."""
    assert a.alphabet == b.alphabet
    start = (a.initial, b.initial)
    seen = {start}
    frontier = [start]
    while frontier:
        p, q = frontier.pop()
        for i in range(len(a.alphabet)):
            nxt = (a.delta[p][i], b.delta[q][i])
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return frozenset(seen)


def table_filling_blocks(d: Dfa) -> frozenset:
    """Coarsest right-invariant partition of all states by pair marking."""
    n = d.n_states
    k = len(d.alphabet)
    marked = [[False] * n for _ in range(n)]
    for p in range(n):
        for q in range(n):
            if (p in d.finals) != (q in d.finals):
                marked[p][q] = True
    changed = True
    while changed:
        changed = False
        for p in range(n):
            for q in range(n):
                if marked[p][q]:
                    continue
                if any(marked[d.delta[p][i]][d.delta[q][i]] for i in range(k)):
                    marked[p][q] = True
                    changed = True
    blocks = []
    assigned = [False] * n
    for p in range(n):
        if assigned[p]:
            continue
        block = {q for q in range(n) if not marked[p][q]}
        for q in block:
            assigned[q] = True
        blocks.append(frozenset(block))
    return frozenset(blocks)


class NaiveSets:
    """List-of-sets partition model mirroring make/find/union semantics."""

    def __init__(self):
        self.groups: list[set] = []
        self.names: list[object] = []

    def _locate(self, k):
        for idx, g in enumerate(self.groups):
            if k in g:
                return idx
        return None

    def make(self, k):
        assert self._locate(k) is None
        self.groups.append({k})
        self.names.append(k)

    def find(self, k):
        idx = self._locate(k)
        assert idx is not None
        return self.names[idx]

    def union(self, i, j, k):
        gi, gj = self._locate(i), self._locate(j)
        assert gi is not None and gj is not None and gi != gj
        self.groups[gi] |= self.groups[gj]
        self.names[gi] = k
        del self.groups[gj]
        del self.names[gj]

    def same(self, i, j) -> bool:
        return self._locate(i) == self._locate(j)
