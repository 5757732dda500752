"""The powerset lattice: inclusion, inclusion-induced injections, and the
normalized counting measure on subsets."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import EmptyUniverse, NotASubset, UniverseMismatch
from .finset import FinSet, Function


@dataclass(frozen=True)
class Subset:
    universe: FinSet
    members: FinSet

    def __init__(self, universe: FinSet, members: Iterable = ()):
        members = members if isinstance(members, FinSet) else FinSet(members)
        if not members.issubset(universe):
            stray = next(m for m in members if m not in universe)
            raise NotASubset(f"{stray} is not in {universe}")
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "members", members)

    def __len__(self):
        return len(self.members)

    def __str__(self):
        return str(self.members)

    # untracked conveniences for building test fixtures
    def union(self, other: Subset) -> Subset:
        _same_universe(self, other)
        return Subset(self.universe, self.members.members | other.members.members)

    def intersection(self, other: Subset) -> Subset:
        _same_universe(self, other)
        return Subset(self.universe, self.members.members & other.members.members)

    def complement(self) -> Subset:
        return Subset(self.universe, self.universe.members - self.members.members)


def _same_universe(S: Subset, T: Subset):
    if S.universe != T.universe:
        raise UniverseMismatch(f"{S.universe} != {T.universe}")


def top(U: FinSet) -> Subset:
    return Subset(U, U)


def bottom(U: FinSet) -> Subset:
    return Subset(U, ())


def is_subset(S: Subset, T: Subset) -> bool:
    _same_universe(S, T)
    return all(s in T.members for s in S.members)


def canonical_injection(S: Subset, T: Subset) -> Function:
    """The map ``S -> T``, ``s |-> s``, induced by ``S <= T``."""
    if not is_subset(S, T):
        raise NotASubset(f"{S} is not included in {T}")
    return Function(S.members, T.members, {s: s for s in S.members})


def inclusion(A: FinSet, B: FinSet) -> Function:
    """Inclusion-induced injection between bare objects with ``A <= B``."""
    return canonical_injection(Subset(B, A), top(B))


def initial_map(X: FinSet) -> Function:
    """The unique map out of the empty set, from ``{} <= X``."""
    return canonical_injection(bottom(X), top(X))


def laplace_probability(S: Subset) -> Fraction:
    if not len(S.universe):
        raise EmptyUniverse("probability needs a nonempty universe")
    return Fraction(len(S.members), len(S.universe))


def render_subset(S: Subset, name: str = "S", universe_name: str | None = None) -> str:
    return f"subset {name} of {universe_name or S.universe} = {S.members}"

