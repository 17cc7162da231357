"""Disjoint sets over opaque hashable keys, instrumented with operation counters.

Union by rank with path compression. UNION takes a third argument naming the
merged set: FIND reports that recorded name rather than the internal rank
root, so callers that treat set names as states keep working identifiers.
"""

from __future__ import annotations

from typing import Hashable, NamedTuple


class OpCounts(NamedTuple):
    makes: int
    finds: int
    unions: int
    traversals: int


class Partition:
    """Forest of disjoint sets; keys are arbitrary hashable values."""

    def __init__(self):
        self._parent: dict = {}
        self._rank: dict = {}
        self._name: dict = {}
        self._n_sets = 0
        self._makes = 0
        self._finds = 0
        self._unions = 0
        self._traversals = 0

    def __contains__(self, k: Hashable) -> bool:
        return k in self._parent

    def __len__(self) -> int:
        return len(self._parent)

    @property
    def n_sets(self) -> int:
        return self._n_sets

    def _add(self, k: Hashable) -> None:
        self._parent[k] = k
        self._rank[k] = 0
        self._name[k] = k
        self._n_sets += 1
        self._makes += 1

    def make(self, k: Hashable) -> None:
        """Create the singleton {k}; k becomes its own set name."""
        if k in self._parent:
            raise ValueError(f"key already known: {k!r}")
        self._add(k)

    def _root(self, k: Hashable) -> Hashable:
        # traversals count the parent links followed to locate the root
        root = k
        parent = self._parent
        while parent[root] != root:
            root = parent[root]
            self._traversals += 1
        while parent[k] != root:
            parent[k], k = root, parent[k]
        return root

    def find(self, k: Hashable, create_on_miss: bool = False):
        """Name of k's set, with path compression.

        With create_on_miss, an unknown key becomes a fresh singleton (counted
        as a make) and is returned as its own name.
        """
        self._finds += 1
        if k not in self._parent:
            if not create_on_miss:
                raise KeyError(f"unknown key: {k!r}")
            self._add(k)
            return k
        return self._name[self._root(k)]

    def union(self, i: Hashable, j: Hashable, k: Hashable) -> None:
        """Merge the sets of i and j; the merged set is thereafter named k.

        The internal root is chosen by rank; k is only the reported name and
        should be a member of either set if FIND results are fed back into
        lookups (as the equivalence checkers do).
        """
        self._unions += 1
        try:
            ri = self._root(i)
            rj = self._root(j)
        except KeyError:
            raise KeyError(f"unknown key in union: {i!r}, {j!r}") from None
        if ri == rj:
            raise ValueError(f"already equivalent: {i!r}, {j!r}")
        if self._rank[ri] < self._rank[rj]:
            ri, rj = rj, ri
        self._parent[rj] = ri
        if self._rank[ri] == self._rank[rj]:
            self._rank[ri] += 1
        del self._name[rj]
        self._name[ri] = k
        self._n_sets -= 1

    def sets(self) -> list:
        """Members grouped by set, each group in key-creation order."""
        groups: dict = {}
        for key in self._parent:
            groups.setdefault(self._root(key), []).append(key)
        return list(groups.values())

    def op_count(self) -> OpCounts:
        return OpCounts(self._makes, self._finds, self._unions, self._traversals)
