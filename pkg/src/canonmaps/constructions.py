"""The universal constructions of finite sets and their mediating maps.

Every leg and every mediating map is assembled from the two kinds of
canonical map: a refinement-induced surjection onto a quotient (built with
:func:`partitions.quotient_map` / :func:`partitions.canonical_surjection`)
followed by an inclusion-induced injection (:func:`subsets.inclusion`).
Blocks of a quotient are then renamed by the value they stand for, which is
a bijection read off the data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

from .errors import (
    CodomainMismatch,
    ConeConditionViolated,
    DomainMismatch,
    NotParallel,
    NotARefinement,
)
from .finset import (
    Block,
    FinSet,
    Function,
    Pair,
    Tagged,
    UPair,
    compose,
    image,
    render_function,
)
from .partitions import (
    Partition,
    canonical_surjection,
    coimage,
    disjoint_union_partition,
    join,
    quotient_map,
    refines,
)
from .subsets import Subset, canonical_injection, inclusion, top
from .unionfind import UnionFind

LIMIT_KINDS = frozenset({"product", "equalizer", "pullback", "pointed_product"})
COLIMIT_KINDS = frozenset({"coproduct", "coequalizer", "pushout", "wedge"})


@dataclass(frozen=True, eq=False)
class ConstructionResult:
    """Apex plus named legs of a (co)limit.

    ``diagram`` holds the input maps the construction was built from (empty
    for products and coproducts); ``relation`` is the generated equivalence
    for quotient constructions; ``basepoint`` is set in the pointed category.
    """

    kind: str
    apex: FinSet
    legs: Mapping[str, Function]
    diagram: tuple = ()
    relation: Partition | None = None
    basepoint: Any = None
    parts: Mapping[str, Any] = field(default_factory=dict)

    @property
    def is_limit(self) -> bool:
        return self.kind in LIMIT_KINDS

    def render(self) -> list[str]:
        lines = [f"apex = {self.apex}"]
        if self.basepoint is not None:
            lines.append(f"basepoint = {self.basepoint}")
        lines += [render_function(f, name) for name, f in self.legs.items()]
        return lines


def _rename(q: Function, cod: FinSet, name_of: Callable[[frozenset], Any]) -> Function:
    """Compose a quotient map with the map naming each block by its value."""
    return compose(q, Function(q.cod, cod, {b: name_of(b.members) for b in q.cod}))


def _any(block: frozenset):
    return next(iter(block))


def epi_mono_factorize(f: Function) -> tuple[Function, Function]:
    """``f = inj . surj`` with ``surj: X ->> f(X)`` from ``f^-1 <= 1_X`` and
    ``inj: f(X) >-> Y`` from ``f(X) <= Y``."""
    im = image(f)
    surj = _rename(quotient_map(coimage(f)), im, lambda blk: f(_any(blk)))
    return surj, inclusion(im, f.cod)


def _tag(side: str, X: FinSet) -> Function:
    return Function(X, FinSet(Tagged(side, x) for x in X), {x: Tagged(side, x) for x in X})


def coproduct(X: FinSet, Y: FinSet) -> ConstructionResult:
    tx, ty = _tag("L", X), _tag("R", Y)
    apex = FinSet(list(tx.cod) + list(ty.cod))
    legs = {
        "i_X": compose(tx, inclusion(tx.cod, apex)),
        "i_Y": compose(ty, inclusion(ty.cod, apex)),
    }
    return ConstructionResult("coproduct", apex, legs)


def coproduct_factor(f: Function, g: Function) -> Function:
    """The map ``X + Y -> Z`` out of the partition ``f^-1 + g^-1``."""
    if f.cod != g.cod:
        raise CodomainMismatch(f"{f.cod} != {g.cod}")
    fibers = disjoint_union_partition(coimage(f), coimage(g))

    def value(blk):
        w = _any(blk)
        return f(w.base) if w.tag == "L" else g(w.base)

    reached = FinSet(set(image(f)) | set(image(g)))
    return compose(_rename(quotient_map(fibers), reached, value), inclusion(reached, f.cod))


def _cartesian(X: FinSet, Y: FinSet) -> FinSet:
    return FinSet(Pair(x, y) for x in X for y in Y)


def _projection(apex: FinSet, target: FinSet, coord: Callable) -> Function:
    by_coord: dict = {}
    for w in apex:
        by_coord.setdefault(coord(w), []).append(w)
    part = Partition(apex, by_coord.values())
    return _rename(quotient_map(part), target, lambda blk: coord(_any(blk)))


def product(X: FinSet, Y: FinSet) -> ConstructionResult:
    """``X x Y`` with projections induced by the partitions ``{x} x Y`` and
    ``X x {y}``, both refined by the discrete partition."""
    apex = _cartesian(X, Y)
    legs = {
        "p_X": _projection(apex, X, lambda w: w.left),
        "p_Y": _projection(apex, Y, lambda w: w.right),
    }
    return ConstructionResult("product", apex, legs)


def swapped_product(X: FinSet, Y: FinSet) -> ConstructionResult:
    """``Y x X`` presented as a product of X and Y (legs still named p_X, p_Y)."""
    apex = _cartesian(Y, X)
    legs = {
        "p_X": _projection(apex, X, lambda w: w.right),
        "p_Y": _projection(apex, Y, lambda w: w.left),
    }
    return ConstructionResult("product", apex, legs)


def _upair_side(w: UPair, side: str):
    return next(t.base for t in w.members if t.tag == side)


def boxtimes_candidate(X: FinSet, Y: FinSet) -> ConstructionResult:
    """Product of X and Y built on unordered pairs ``{L.x, R.y}``."""
    apex = FinSet(UPair(frozenset([Tagged("L", x), Tagged("R", y)])) for x in X for y in Y)
    legs = {
        "p_X": _projection(apex, X, lambda w: _upair_side(w, "L")),
        "p_Y": _projection(apex, Y, lambda w: _upair_side(w, "R")),
    }
    return ConstructionResult("product", apex, legs)


def boxtimes_product(X: FinSet, Y: FinSet) -> tuple[FinSet, Function]:
    """Unordered-pair product and its bijection ``{L.x,R.y} |-> (x,y)``."""
    apex = boxtimes_candidate(X, Y).apex
    iso = Function(
        apex,
        _cartesian(X, Y),
        {w: Pair(_upair_side(w, "L"), _upair_side(w, "R")) for w in apex},
    )
    return apex, iso


def product_factor(f: Function, g: Function) -> Function:
    """``[f, g]: Z -> X x Y`` through the join ``f^-1 v g^-1``."""
    if f.dom != g.dom:
        raise DomainMismatch(f"{f.dom} != {g.dom}")
    blocks = join(coimage(f), coimage(g))
    onto = _cartesian(image(f), image(g))
    to_pairs = _rename(quotient_map(blocks), onto, lambda blk: Pair(f(_any(blk)), g(_any(blk))))
    return compose(to_pairs, inclusion(onto, _cartesian(f.cod, g.cod)))


def _check_parallel(f: Function, g: Function):
    if f.dom != g.dom or f.cod != g.cod:
        raise NotParallel(f"{f.dom} -> {f.cod} and {g.dom} -> {g.cod} are not parallel")


def equalizer(f: Function, g: Function) -> ConstructionResult:
    _check_parallel(f, g)
    E = Subset(f.dom, [x for x in f.dom if f(x) == g(x)])
    can = canonical_injection(E, top(f.dom))
    return ConstructionResult("equalizer", E.members, {"can": can}, diagram=(f, g))


def _first_disagreement(a: Function, b: Function):
    return next((x for x in a.dom if a(x) != b(x)), None)


def equalizer_factor(h: Function, f: Function, g: Function) -> Function:
    eq = equalizer(f, g)
    if h.cod != f.dom:
        raise DomainMismatch(f"{h.cod} != {f.dom}")
    bad = _first_disagreement(compose(h, f), compose(h, g))
    if bad is not None:
        raise ConeConditionViolated(f"f.h and g.h differ at {bad}", bad)
    surj, _ = epi_mono_factorize(h)
    return compose(surj, inclusion(surj.cod, eq.apex))


def generated_equivalence(Y: FinSet, seeds) -> Partition:
    """Least equivalence on Y containing every seed pair."""
    uf = UnionFind(Y)
    for a, b in seeds:
        uf.union(a, b)
    return Partition(Y, uf.groups())


def block_name(members: frozenset):
    """Label of a quotient point: a singleton block keeps its member's name."""
    if len(members) == 1:
        return _any(members)
    return Block(members)


def _unname(rel: Partition) -> Function:
    """From the named quotient back to the plain block labels."""
    blocks = rel.quotient()
    return Function(FinSet(block_name(b.members) for b in blocks), blocks,
                    {block_name(b.members): b for b in blocks})


def coequalizer(f: Function, g: Function) -> ConstructionResult:
    _check_parallel(f, g)
    rel = generated_equivalence(f.cod, ((f(x), g(x)) for x in f.dom))
    apex = FinSet(block_name(b) for b in rel.blocks)
    can = _rename(quotient_map(rel), apex, block_name)
    return ConstructionResult("coequalizer", apex, {"can": can}, diagram=(f, g), relation=rel)


def _blocks_to_values(rel: Partition, coarse: Partition, value, target: FinSet) -> Function:
    """``rel``-quotient onto the values of ``coarse`` blocks, then into target."""
    if not refines(coarse, rel):
        raise NotARefinement(f"{coarse} is not refined by {rel}")
    reached = FinSet({value(b) for b in coarse.blocks})
    onto = _rename(canonical_surjection(rel, coarse), reached, value)
    return compose(compose(_unname(rel), onto), inclusion(reached, target))


def coequalizer_factor(h: Function, f: Function, g: Function) -> Function:
    """``h*: Y/~ -> Z`` from ``h^-1 <= ~``."""
    co = coequalizer(f, g)
    if h.dom != f.cod:
        raise DomainMismatch(f"{h.dom} != {f.cod}")
    bad = _first_disagreement(compose(f, h), compose(g, h))
    if bad is not None:
        raise ConeConditionViolated(f"h.f and h.g differ at {bad}", bad)
    return _blocks_to_values(co.relation, coimage(h), lambda blk: h(_any(blk)), h.cod)


def pushout(f: Function, g: Function) -> ConstructionResult:
    """Coequalizer of ``i_X.f`` and ``i_Y.g`` on ``X + Y``."""
    if f.dom != g.dom:
        raise DomainMismatch(f"{f.dom} != {g.dom}")
    cp = coproduct(f.cod, g.cod)
    co = coequalizer(compose(f, cp.legs["i_X"]), compose(g, cp.legs["i_Y"]))
    legs = {
        "can_X": compose(cp.legs["i_X"], co.legs["can"]),
        "can_Y": compose(cp.legs["i_Y"], co.legs["can"]),
    }
    return ConstructionResult(
        "pushout", co.apex, legs, diagram=(f, g), relation=co.relation,
        parts={"coproduct": cp, "coequalizer": co},
    )


def pushout_factor(h: Function, h2: Function, f: Function, g: Function) -> Function:
    """``h*: (X+Y)/~ -> U``.

    The fibers of the copairing ``[h, h2]: X+Y -> U`` are the blocks
    ``h^-1(u) + h2^-1(u)``; the cone condition makes them coarser than ``~``,
    so each block of ``~`` goes to the ``u`` of the fiber containing it.
    """
    po = pushout(f, g)
    if h.dom != f.cod or h2.dom != g.cod:
        raise DomainMismatch("cocone legs must start at the codomains of f and g")
    if h.cod != h2.cod:
        raise CodomainMismatch(f"{h.cod} != {h2.cod}")
    bad = _first_disagreement(compose(f, h), compose(g, h2))
    if bad is not None:
        raise ConeConditionViolated(f"h.f and h2.g differ at {bad}", bad)
    copair = coproduct_factor(h, h2)
    return _blocks_to_values(po.relation, coimage(copair), lambda blk: copair(_any(blk)), h.cod)


def pullback(f: Function, g: Function) -> ConstructionResult:
    """Equalizer of ``f.p_X`` and ``g.p_Y`` inside ``X x Y``."""
    if f.cod != g.cod:
        raise CodomainMismatch(f"{f.cod} != {g.cod}")
    pr = product(f.dom, g.dom)
    eq = equalizer(compose(pr.legs["p_X"], f), compose(pr.legs["p_Y"], g))
    legs = {
        "can_X": compose(eq.legs["can"], pr.legs["p_X"]),
        "can_Y": compose(eq.legs["can"], pr.legs["p_Y"]),
    }
    return ConstructionResult(
        "pullback", eq.apex, legs, diagram=(f, g), parts={"product": pr, "equalizer": eq},
    )


def pullback_factor(h: Function, h2: Function, f: Function, g: Function) -> Function:
    """``h_*: U -> E`` through the join ``h^-1 v h2^-1``.

    The join blocks are named by the pairs ``(h(u), h2(u))``; that set of
    pairs lies inside E, and its inclusion finishes the map.
    """
    pb = pullback(f, g)
    if h.cod != f.dom or h2.cod != g.dom:
        raise CodomainMismatch("cone legs must end at the domains of f and g")
    if h.dom != h2.dom:
        raise DomainMismatch(f"{h.dom} != {h2.dom}")
    bad = _first_disagreement(compose(h, f), compose(h2, g))
    if bad is not None:
        raise ConeConditionViolated(f"f.h and g.h2 differ at {bad}", bad)
    blocks = join(coimage(h), coimage(h2))
    onto = FinSet({Pair(h(_any(b)), h2(_any(b))) for b in blocks.blocks})
    to_pairs = _rename(quotient_map(blocks), onto, lambda blk: Pair(h(_any(blk)), h2(_any(blk))))
    return compose(to_pairs, inclusion(onto, pb.apex))


def factor(construction: ConstructionResult, cone: Mapping[str, Function]) -> Function:
    """Recipe mediating map for ``construction`` and a cone keyed by leg name."""
    kind = construction.kind
    maps = [getattr(cone[name], "underlying", cone[name]) for name in construction.legs]
    if kind == "coproduct":
        return coproduct_factor(*maps)
    if kind in ("product", "pointed_product"):
        return product_factor(*maps)
    if kind == "equalizer":
        return equalizer_factor(maps[0], *construction.diagram)
    if kind == "coequalizer":
        return coequalizer_factor(maps[0], *construction.diagram)
    if kind in ("pushout", "wedge"):
        return pushout_factor(*maps, *construction.diagram)
    if kind == "pullback":
        return pullback_factor(*maps, *construction.diagram)
    raise ValueError(f"no recipe for {kind}")

