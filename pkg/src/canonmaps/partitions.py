"""The partition lattice on a finite set.

Distinctions are ordered pairs of elements lying in different blocks, so the
discrete partition on ``n`` points has ``n*n - n`` of them.  Refinement is
inclusion of ditsets: ``refines(sigma, pi)`` means ``sigma`` is refined by
``pi`` (``pi`` is the finer partition).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import (
    EmptyUniverse,
    EnumerationBudgetExceeded,
    InvalidPartition,
    NotARefinement,
    UniverseMismatch,
)
from .finset import (
    ONE,
    POINT,
    Block,
    FinSet,
    Function,
    Tagged,
    compose,
    sort_key,
    sorted_labels,
)
from .unionfind import UnionFind

DEFAULT_PARTITION_BOUND = 6


class Partition:
    """Nonempty, pairwise disjoint blocks whose union is the universe."""

    __slots__ = ("universe", "blocks", "_owner")

    def __init__(self, universe: FinSet, blocks: Iterable[Iterable]):
        blocks = frozenset(frozenset(b) for b in blocks)
        owner = {}
        for b in blocks:
            if not b:
                raise InvalidPartition("blocks must be nonempty")
            for u in b:
                if u not in universe:
                    raise InvalidPartition(f"{u} is not in {universe}")
                if u in owner:
                    raise InvalidPartition(f"{u} lies in two blocks")
                owner[u] = b
        if len(owner) != len(universe):
            missing = next(u for u in universe if u not in owner)
            raise InvalidPartition(f"{missing} is not covered by any block")
        self.universe = universe
        self.blocks = blocks
        self._owner = owner

    def __eq__(self, other):
        return (
            isinstance(other, Partition)
            and self.universe == other.universe
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.universe, self.blocks))

    def __len__(self):
        return len(self.blocks)

    def __repr__(self):
        return f"Partition({self})"

    def __str__(self):
        return "{" + ",".join(
            "{" + ",".join(str(u) for u in blk) + "}" for blk in self.sorted_blocks()
        ) + "}"

    def sorted_blocks(self) -> list[tuple]:
        """Blocks as sorted tuples, ordered by least element."""
        blks = [tuple(sorted_labels(b)) for b in self.blocks]
        return sorted(blks, key=lambda b: sort_key(b[0]))

    def block_of(self, u) -> frozenset:
        return self._owner[u]

    def same_block(self, u, v) -> bool:
        return self._owner[u] is self._owner[v]

    def quotient(self) -> FinSet:
        """The partition as a quotient set, one ``Block`` label per block."""
        return FinSet(Block(b) for b in self.blocks)


@dataclass(frozen=True)
class DitSet:
    universe: FinSet
    dits: frozenset

    def __len__(self):
        return len(self.dits)

    def __contains__(self, pair):
        return pair in self.dits

    def __le__(self, other: DitSet) -> bool:
        return self.dits <= other.dits


def render_partition(p: Partition, name: str = "pi", universe_name: str | None = None) -> str:
    return f"partition {name} on {universe_name or p.universe} = {p}"


def _same_universe(a: Partition, b: Partition):
    if a.universe != b.universe:
        raise UniverseMismatch(f"{a.universe} != {b.universe}")


def discrete(U: FinSet) -> Partition:
    return Partition(U, ([u] for u in U))


def indiscrete(U: FinSet) -> Partition:
    return Partition(U, [U.elements] if len(U) else [])


def ditset(p: Partition) -> DitSet:
    return DitSet(
        p.universe,
        frozenset(
            (u, v) for u in p.universe for v in p.universe if not p.same_block(u, v)
        ),
    )


def refines(sigma: Partition, pi: Partition) -> bool:
    """``sigma`` is refined by ``pi``: every distinction of sigma is one of pi."""
    _same_universe(sigma, pi)
    return ditset(sigma) <= ditset(pi)


def refines_blockwise(sigma: Partition, pi: Partition) -> bool:
    """Same relation as ``refines``, by block containment."""
    _same_universe(sigma, pi)
    return all(any(B <= C for C in sigma.blocks) for B in pi.blocks)


def canonical_surjection(pi: Partition, sigma: Partition) -> Function:
    """Quotient map ``pi -> sigma`` sending each block of the finer ``pi``
    to the unique block of ``sigma`` containing it."""
    if not refines(sigma, pi):
        raise NotARefinement(f"{sigma} is not refined by {pi}")
    return Function(
        pi.quotient(),
        sigma.quotient(),
        {Block(B): Block(sigma.block_of(next(iter(B)))) for B in pi.blocks},
    )


def points_as_blocks(X: FinSet) -> Function:
    """The bijection ``X -> blocks of 1_X``, ``x |-> {x}``."""
    return Function(X, discrete(X).quotient(), {x: Block(frozenset([x])) for x in X})


def quotient_map(p: Partition) -> Function:
    """``X -> X/p``: the refinement-induced map from ``p <= 1_X``."""
    return compose(points_as_blocks(p.universe), canonical_surjection(discrete(p.universe), p))


def terminal_map(X: FinSet) -> Function:
    """``X -> 1`` induced by ``0_X <= 1_X``."""
    to_blob = quotient_map(indiscrete(X))
    collapse = Function(to_blob.cod, ONE, {b: POINT for b in to_blob.cod})
    return compose(to_blob, collapse)


def join(pi: Partition, rho: Partition) -> Partition:
    """Blocks are the nonempty intersections of a pi-block with a rho-block."""
    _same_universe(pi, rho)
    meets = (B & C for B in pi.blocks for C in rho.blocks)
    return Partition(pi.universe, (b for b in meets if b))


def meet(pi: Partition, rho: Partition) -> Partition:
    _same_universe(pi, rho)
    uf = UnionFind(pi.universe)
    for blk in itertools.chain(pi.blocks, rho.blocks):
        first, *rest = sorted_labels(blk)
        for u in rest:
            uf.union(first, u)
    return Partition(pi.universe, uf.groups())


def disjoint_union_partition(pi: Partition, rho: Partition) -> Partition:
    """``pi`` on X and ``rho`` on Y, tagged into one partition on ``X + Y``."""
    universe = FinSet(
        [Tagged("L", x) for x in pi.universe] + [Tagged("R", y) for y in rho.universe]
    )
    blocks = [frozenset(Tagged("L", x) for x in B) for B in pi.blocks]
    blocks += [frozenset(Tagged("R", y) for y in C) for C in rho.blocks]
    return Partition(universe, blocks)


def logical_entropy(p: Partition) -> Fraction:
    n = len(p.universe)
    if not n:
        raise EmptyUniverse("logical entropy needs a nonempty universe")
    return Fraction(len(ditset(p)), n * n)


def coimage(f: Function) -> Partition:
    """The nonempty fibers of ``f`` as a partition of its domain."""
    fibers: dict = {}
    for x, y in f.items():
        fibers.setdefault(y, []).append(x)
    return Partition(f.dom, fibers.values())


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """All restricted growth strings of length n, lexicographically."""
    if n == 0:
        yield ()
        return

    def extend(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(top + 2):
            prefix.append(v)
            yield from extend(prefix, max(top, v))
            prefix.pop()

    yield from extend([0], 0)


def enumerate_partitions(U: FinSet, bound: int = DEFAULT_PARTITION_BOUND) -> Iterator[Partition]:
    """Every partition of ``U`` once, in restricted-growth-string order over
    the sorted elements."""
    if len(U) > bound:
        raise EnumerationBudgetExceeded(len(U), bound)
    elems = U.elements
    for rgs in restricted_growth_strings(len(elems)):
        blocks: dict = {}
        for u, b in zip(elems, rgs):
            blocks.setdefault(b, []).append(u)
        yield Partition(U, blocks.values())
