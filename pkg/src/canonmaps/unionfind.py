"""Disjoint-set forest used to generate equivalence relations."""

from __future__ import annotations

from collections import defaultdict
from typing import Hashable, Iterable

from .finset import sort_key


class UnionFind:
    """Union by size with path compression.

    On equal sizes the lexicographically smaller root wins, so the forest
    shape depends only on the sequence of unions.
    """

    def __init__(self, items: Iterable[Hashable] = ()):
        self.parent: dict = {}
        self.size: dict = {}
        for item in items:
            self.add(item)

    def add(self, item):
        if item not in self.parent:
            self.parent[item] = item
            self.size[item] = 1

    def find(self, item):
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb] or (
            self.size[ra] == self.size[rb] and sort_key(rb) < sort_key(ra)
        ):
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True

    def groups(self) -> list[frozenset]:
        out = defaultdict(set)
        for item in self.parent:
            out[self.find(item)].add(item)
        return [frozenset(g) for g in out.values()]
