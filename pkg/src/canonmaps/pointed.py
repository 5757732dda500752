"""Pointed finite sets: basepoint-preserving maps, the null object, zero
arrows, wedge, pointed product and the canonical wedge-to-product map."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .constructions import (
    ConstructionResult,
    product,
    product_factor,
    pushout,
    pushout_factor,
)
from .errors import BasepointNotInCarrier, CompositionMismatch, NotAPointedMap
from .finset import ONE, POINT, Block, FinSet, Function, Pair, Tagged, compose, identity
from .partitions import terminal_map


@dataclass(frozen=True)
class PointedObj:
    carrier: FinSet
    basepoint: object

    def __post_init__(self):
        if self.basepoint not in self.carrier:
            raise BasepointNotInCarrier(f"{self.basepoint} is not in {self.carrier}")

    def __len__(self):
        return len(self.carrier)

    def __str__(self):
        return f"{self.carrier} base {self.basepoint}"

    def basepoint_map(self) -> Function:
        """The designation ``1 -> X`` picking the basepoint."""
        return Function(ONE, self.carrier, {POINT: self.basepoint})


NULL = PointedObj(ONE, POINT)


def make_pointed(X: FinSet, x0) -> PointedObj:
    return PointedObj(X, x0)


def is_pointed_map(f: Function, dom: PointedObj, cod: PointedObj) -> bool:
    return f.dom == dom.carrier and f.cod == cod.carrier and f(dom.basepoint) == cod.basepoint


@dataclass(frozen=True)
class PointedMap:
    underlying: Function
    dom: PointedObj
    cod: PointedObj

    def __post_init__(self):
        if not is_pointed_map(self.underlying, self.dom, self.cod):
            raise NotAPointedMap(f"{self.underlying!r} does not preserve basepoints")

    def __call__(self, x):
        return self.underlying(x)


def pcompose(f: PointedMap, g: PointedMap) -> PointedMap:
    """``g . f``."""
    if f.cod != g.dom:
        raise CompositionMismatch(f"{f.cod} != {g.dom}")
    return PointedMap(compose(f.underlying, g.underlying), f.dom, g.cod)


def pidentity(X: PointedObj) -> PointedMap:
    return PointedMap(identity(X.carrier), X, X)


def enumerate_pointed_maps(X: PointedObj, Y: PointedObj):
    """Every basepoint-preserving map ``X -> Y``."""
    free = [x for x in X.carrier if x != X.basepoint]
    for values in itertools.product(Y.carrier.elements, repeat=len(free)):
        amap = dict(zip(free, values))
        amap[X.basepoint] = Y.basepoint
        yield PointedMap(Function(X.carrier, Y.carrier, amap), X, Y)


def zero_arrow(X: PointedObj, Y: PointedObj) -> PointedMap:
    """``X -> 1 -> Y``: the terminal map followed by Y's basepoint."""
    return PointedMap(compose(terminal_map(X.carrier), Y.basepoint_map()), X, Y)


def is_zero_arrow(f: PointedMap) -> bool:
    return all(y == f.cod.basepoint for _, y in f.underlying.items())


def wedge_coproduct(X: PointedObj, Y: PointedObj) -> ConstructionResult:
    """Pushout of the two basepoint maps ``1 -> X`` and ``1 -> Y``; the
    block joining the basepoints becomes the new basepoint."""
    po = pushout(X.basepoint_map(), Y.basepoint_map())
    base = Block(frozenset([Tagged("L", X.basepoint), Tagged("R", Y.basepoint)]))
    apex = PointedObj(po.apex, base)
    legs = {
        "can_X": PointedMap(po.legs["can_X"], X, apex),
        "can_Y": PointedMap(po.legs["can_Y"], Y, apex),
    }
    return ConstructionResult(
        "wedge", po.apex, {n: m.underlying for n, m in legs.items()},
        diagram=po.diagram, relation=po.relation, basepoint=base,
        parts={"pushout": po, "pointed_apex": apex, "pointed_legs": legs},
    )


def pointed_product(X: PointedObj, Y: PointedObj) -> ConstructionResult:
    pr = product(X.carrier, Y.carrier)
    base = Pair(X.basepoint, Y.basepoint)
    apex = PointedObj(pr.apex, base)
    legs = {
        "p_X": PointedMap(pr.legs["p_X"], apex, X),
        "p_Y": PointedMap(pr.legs["p_Y"], apex, Y),
    }
    return ConstructionResult(
        "pointed_product", pr.apex, {n: m.underlying for n, m in legs.items()},
        basepoint=base, parts={"pointed_apex": apex, "pointed_legs": legs},
    )


def apex_of(c: ConstructionResult) -> PointedObj:
    return c.parts["pointed_apex"]


def wedge_factor(h: PointedMap, h2: PointedMap) -> PointedMap:
    w = wedge_coproduct(h.dom, h2.dom)
    m = pushout_factor(h.underlying, h2.underlying, *w.diagram)
    return PointedMap(m, apex_of(w), h.cod)


def pointed_product_factor(f: PointedMap, g: PointedMap) -> PointedMap:
    p = pointed_product(f.cod, g.cod)
    return PointedMap(product_factor(f.underlying, g.underlying), f.dom, apex_of(p))


def canonical_wedge_to_product(X: PointedObj, Y: PointedObj) -> PointedMap:
    """The map ``X v Y -> X x Y`` assembled from ``[id, 0]``, ``[0, id]`` and
    the wedge's universal property."""
    to_prod_x = pointed_product_factor(pidentity(X), zero_arrow(X, Y))
    to_prod_y = pointed_product_factor(zero_arrow(Y, X), pidentity(Y))
    return wedge_factor(to_prod_x, to_prod_y)

