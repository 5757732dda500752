"""Objects, relations and functions of the category of finite sets.

Elements are labels: plain text tokens supplied by the user, or one of the
compound labels produced by constructions (tagged copies, ordered pairs,
quotient blocks, unordered pairs).  Every label renders to a string and all
orderings are by that rendering, so output is byte-deterministic.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator, Mapping

from .errors import (
    CompositionMismatch,
    EnumerationBudgetExceeded,
    InvalidLabel,
    MalformedRelation,
    NotAFunction,
)

# reserved in plain labels: whitespace, braces, parens, comma, period, "->"
_BAD_LABEL = re.compile(r"[\s{}(),.]|->")

POINT = "•"

DEFAULT_BUDGET = 10**6


def check_label(token: str) -> str:
    if not isinstance(token, str) or not token or _BAD_LABEL.search(token):
        raise InvalidLabel(f"invalid label {token!r}")
    return token


def render(elem) -> str:
    return str(elem)


def sort_key(elem):
    return (str(elem), type(elem).__name__)


def sorted_labels(elems: Iterable) -> list:
    return sorted(elems, key=sort_key)


@dataclass(frozen=True)
class Tagged:
    """A label carried into a disjoint union, rendered ``L.x`` or ``R.y``."""

    tag: str
    base: Hashable

    def __post_init__(self):
        if self.tag not in ("L", "R"):
            raise InvalidLabel(f"tag must be L or R, got {self.tag!r}")

    def __str__(self):
        return f"{self.tag}.{self.base}"


@dataclass(frozen=True)
class Pair:
    """An element of a cartesian product, rendered ``(x,y)``."""

    left: Hashable
    right: Hashable

    def __str__(self):
        return f"({self.left},{self.right})"


@dataclass(frozen=True)
class Block:
    """A block of a partition viewed as a point of the quotient set.

    Rendered as the sorted member names joined with ``+``.
    """

    members: frozenset

    def __str__(self):
        return "+".join(str(m) for m in sorted_labels(self.members))


@dataclass(frozen=True)
class UPair:
    """An unordered pair ``{L.x,R.y}`` of tagged labels."""

    members: frozenset

    def __str__(self):
        return "{" + ",".join(str(m) for m in sorted_labels(self.members)) + "}"


def _validate_elem(elem):
    if isinstance(elem, str):
        check_label(elem)
    elif not isinstance(elem, (Tagged, Pair, Block, UPair)):
        raise InvalidLabel(f"unsupported label {elem!r}")
    return elem


class FinSet:
    """A finite set of distinct labels, kept in canonical (sorted) order.

    Two objects are equal exactly when they have the same labels.
    """

    __slots__ = ("elements", "_members")

    def __init__(self, elements: Iterable = ()):
        elems = list(elements)
        members = frozenset(elems)
        if len(members) != len(elems):
            seen = set()
            dup = next(e for e in elems if e in seen or seen.add(e))
            raise InvalidLabel(f"duplicate label {dup}")
        for e in elems:
            _validate_elem(e)
        self.elements = tuple(sorted_labels(elems))
        self._members = members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, elem):
        return elem in self._members

    def __eq__(self, other):
        return isinstance(other, FinSet) and self._members == other._members

    def __hash__(self):
        return hash(self._members)

    def __repr__(self):
        return f"FinSet({self})"

    def __str__(self):
        return "{" + ",".join(str(e) for e in self.elements) + "}"

    @property
    def members(self) -> frozenset:
        return self._members

    def issubset(self, other: FinSet) -> bool:
        return self._members <= other._members


EMPTY = FinSet()
ONE = FinSet([POINT])


@dataclass(frozen=True)
class RelationProfile:
    transmits_elements: bool
    reflects_elements: bool
    transmits_distinctions: bool
    reflects_distinctions: bool

    @property
    def is_function(self) -> bool:
        return self.transmits_elements and self.reflects_distinctions

    @property
    def is_cofunction(self) -> bool:
        return self.transmits_distinctions and self.reflects_elements


class Relation:
    """A set of ordered pairs between two objects."""

    __slots__ = ("dom", "cod", "pairs")

    def __init__(self, dom: FinSet, cod: FinSet, pairs: Iterable[tuple]):
        pairs = frozenset(tuple(p) for p in pairs)
        for x, y in pairs:
            if x not in dom or y not in cod:
                raise MalformedRelation(f"pair ({x},{y}) lies outside {dom} x {cod}")
        self.dom = dom
        self.cod = cod
        self.pairs = pairs

    def __eq__(self, other):
        return (
            isinstance(other, Relation)
            and self.dom == other.dom
            and self.cod == other.cod
            and self.pairs == other.pairs
        )

    def __hash__(self):
        return hash((self.dom, self.cod, self.pairs))

    def __repr__(self):
        body = ", ".join(f"({x},{y})" for x, y in sorted(self.pairs, key=lambda p: (sort_key(p[0]), sort_key(p[1]))))
        return f"Relation({self.dom} -> {self.cod} {{{body}}})"


def classify_relation(rel: Relation) -> RelationProfile:
    """Evaluate the four element/distinction predicates on ``rel``."""
    pairs = list(rel.pairs)
    firsts = {x for x, _ in pairs}
    seconds = {y for _, y in pairs}
    te = all(x in firsts for x in rel.dom)
    re_ = all(y in seconds for y in rel.cod)
    # transmits distinctions: x != x' implies y != y'
    td = all(not (x != x2 and y == y2) for (x, y), (x2, y2) in itertools.product(pairs, pairs))
    # reflects distinctions: y != y' implies x != x'
    rd = all(not (y != y2 and x == x2) for (x, y), (x2, y2) in itertools.product(pairs, pairs))
    return RelationProfile(te, re_, td, rd)


class Function:
    """A total single-valued assignment ``dom -> cod``."""

    __slots__ = ("dom", "cod", "_map", "_hash")

    def __init__(self, dom: FinSet, cod: FinSet, assignment: Mapping):
        amap = dict(assignment)
        for x in dom:
            if x not in amap:
                raise NotAFunction("transmits elements", x)
        for x, y in amap.items():
            if x not in dom or y not in cod:
                raise MalformedRelation(f"assignment {x}->{y} lies outside {dom} -> {cod}")
        self.dom = dom
        self.cod = cod
        self._map = amap
        self._hash = None

    @classmethod
    def from_callable(cls, dom: FinSet, cod: FinSet, fn: Callable) -> Function:
        return cls(dom, cod, {x: fn(x) for x in dom})

    def __call__(self, x):
        return self._map[x]

    def items(self) -> Iterator[tuple]:
        for x in self.dom:
            yield x, self._map[x]

    def as_dict(self) -> dict:
        return dict(self._map)

    def graph(self) -> Relation:
        return Relation(self.dom, self.cod, self._map.items())

    def __eq__(self, other):
        return (
            isinstance(other, Function)
            and self.dom == other.dom
            and self.cod == other.cod
            and self._map == other._map
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dom, self.cod, frozenset(self._map.items())))
        return self._hash

    def __repr__(self):
        return render_function(self, "Function")

    def image(self) -> FinSet:
        return image(self)

    def coimage(self):
        from .partitions import coimage

        return coimage(self)


def render_function(f: Function, name: str = "f", dom_name: str | None = None, cod_name: str | None = None) -> str:
    """Canonical text form ``f: X -> Y { 1->p, 2->p }``, entries in domain order."""
    body = ", ".join(f"{x}->{y}" for x, y in f.items())
    inner = f" {body} " if body else " "
    return f"{name}: {dom_name or f.dom} -> {cod_name or f.cod} {{{inner}}}"


def as_function(rel: Relation) -> Function:
    prof = classify_relation(rel)
    if not prof.transmits_elements:
        firsts = {x for x, _ in rel.pairs}
        missing = next(x for x in rel.dom if x not in firsts)
        raise NotAFunction("transmits elements", missing)
    if not prof.reflects_distinctions:
        by_x: dict = {}
        for x, y in sorted(rel.pairs, key=lambda p: (sort_key(p[0]), sort_key(p[1]))):
            if x in by_x and by_x[x] != y:
                raise NotAFunction("reflects distinctions", ((x, by_x[x]), (x, y)))
            by_x[x] = y
    return Function(rel.dom, rel.cod, dict(rel.pairs))


def is_injective(f: Function) -> bool:
    return classify_relation(f.graph()).transmits_distinctions


def is_surjective(f: Function) -> bool:
    return classify_relation(f.graph()).reflects_elements


def image(f: Function) -> FinSet:
    return FinSet({y for _, y in f.items()})


def identity(X: FinSet) -> Function:
    return Function(X, X, {x: x for x in X})


def compose(f: Function, g: Function) -> Function:
    """Return ``g . f`` (first ``f``, then ``g``)."""
    if f.cod != g.dom:
        raise CompositionMismatch(f"cannot compose: cod {f.cod} != dom {g.dom}")
    return Function(f.dom, g.cod, {x: g(y) for x, y in f.items()})


def opposite(rel: Relation) -> Relation:
    return Relation(rel.cod, rel.dom, ((y, x) for x, y in rel.pairs))


def is_cofunction(rel: Relation) -> bool:
    return classify_relation(rel).is_cofunction


def count_functions(X: FinSet, Y: FinSet) -> int:
    return len(Y) ** len(X)


def enumerate_functions(X: FinSet, Y: FinSet, budget: int = DEFAULT_BUDGET) -> Iterator[Function]:
    """Every function ``X -> Y``, in lexicographic order of image tuples."""
    n = count_functions(X, Y)
    if n > budget:
        raise EnumerationBudgetExceeded(n, budget)
    xs = X.elements
    for values in itertools.product(Y.elements, repeat=len(xs)):
        yield Function(X, Y, dict(zip(xs, values)))


def probe_object(k: int) -> FinSet:
    return FinSet([f"t{i}" for i in range(k)])


def find_mono_counterexample(h: Function, probe_bound: int, budget: int = DEFAULT_BUDGET):
    """Search probes ``f, g: P -> dom(h)`` with ``|P| <= probe_bound``
    for ``h.f == h.g`` while ``f != g``; return ``(f, g)`` or None.

    A one-point probe already detects every non-injective map.
    """
    if probe_bound < 1:
        raise ValueError("probe_bound must be >= 1")
    sizes = range(1, probe_bound + 1)
    needed = sum(count_functions(probe_object(k), h.dom) ** 2 for k in sizes)
    if needed > budget:
        raise EnumerationBudgetExceeded(needed, budget)
    for k in sizes:
        P = probe_object(k)
        maps = list(enumerate_functions(P, h.dom))
        for f, g in itertools.product(maps, maps):
            if f != g and compose(f, h) == compose(g, h):
                return f, g
    return None


def find_epi_counterexample(h: Function, probe_bound: int, budget: int = DEFAULT_BUDGET):
    """Search probes ``f, g: cod(h) -> Q`` for ``f.h == g.h`` while ``f != g``.

    Two maps into ``Q`` can only differ at a point where their values form a
    distinction of ``Q``, so an epi probe is measured by its number of
    unordered distinctions: ``probe_bound`` admits every ``Q`` with
    ``|Q|(|Q|-1)/2 <= probe_bound``.  Bound 1 admits the two-point probe,
    which already detects every non-surjective map.
    """
    if probe_bound < 1:
        raise ValueError("probe_bound must be >= 1")
    sizes = [k for k in range(1, probe_bound + 2) if k * (k - 1) // 2 <= probe_bound]
    needed = sum(count_functions(h.cod, probe_object(k)) ** 2 for k in sizes)
    if needed > budget:
        raise EnumerationBudgetExceeded(needed, budget)
    for k in sizes:
        Q = probe_object(k)
        maps = list(enumerate_functions(h.cod, Q))
        for f, g in itertools.product(maps, maps):
            if f != g and compose(h, f) == compose(h, g):
                return f, g
    return None


def mono_check(h: Function, probe_bound: int, budget: int = DEFAULT_BUDGET) -> bool:
    return find_mono_counterexample(h, probe_bound, budget) is None


def epi_check(h: Function, probe_bound: int, budget: int = DEFAULT_BUDGET) -> bool:
    return find_epi_counterexample(h, probe_bound, budget) is None
