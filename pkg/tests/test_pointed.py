import itertools

import pytest

from canonmaps import FinSet, Function
from canonmaps.errors import BasepointNotInCarrier, CompositionMismatch, NotAPointedMap
from canonmaps.finset import POINT, Block, Pair, Tagged, is_injective, is_surjective
from canonmaps.pointed import (
    NULL,
    PointedMap,
    canonical_wedge_to_product,
    enumerate_pointed_maps,
    is_pointed_map,
    is_zero_arrow,
    make_pointed,
    pcompose,
    pidentity,
    pointed_product,
    pointed_product_factor,
    wedge_coproduct,
    wedge_factor,
    zero_arrow,
)
from canonmaps.ump import verify_ump


def pset(prefix, n):
    return make_pointed(FinSet(f"{prefix}{i}" for i in range(n)), f"{prefix}0")


def psets(prefix, max_size):
    return [pset(prefix, n) for n in range(1, max_size + 1)]


X2, Y2 = pset("x", 2), pset("y", 2)


def test_make_pointed():
    assert X2.basepoint == "x0"
    with pytest.raises(BasepointNotInCarrier):
        make_pointed(FinSet("ab"), "c")


def test_basepoint_must_be_preserved():
    f = Function(X2.carrier, Y2.carrier, {"x0": "y1", "x1": "y0"})
    assert not is_pointed_map(f, X2, Y2)
    with pytest.raises(NotAPointedMap):
        PointedMap(f, X2, Y2)
    assert is_pointed_map(pidentity(X2).underlying, X2, X2)


def test_composition_and_identity_stay_pointed():
    for A, B, C in itertools.product(psets("a", 3), psets("b", 3), psets("c", 2)):
        for f in enumerate_pointed_maps(A, B):
            assert pcompose(pidentity(A), f) == f == pcompose(f, pidentity(B))
            for g in enumerate_pointed_maps(B, C):
                h = pcompose(f, g)
                assert is_pointed_map(h.underlying, A, C)


def test_composition_mismatch():
    with pytest.raises(CompositionMismatch):
        pcompose(pidentity(X2), pidentity(Y2))


@pytest.mark.parametrize("n", range(1, 5))
def test_null_object_is_initial_and_terminal(n):
    X = pset("x", n)
    assert len(list(enumerate_pointed_maps(X, NULL))) == 1
    into = list(enumerate_pointed_maps(NULL, X))
    assert len(into) == 1 and into[0].underlying == X.basepoint_map()


class TestZeroArrow:
    def test_example(self):
        z = zero_arrow(X2, Y2)
        assert z.underlying.as_dict() == {"x0": "y0", "x1": "y0"}
        assert is_zero_arrow(z)

    def test_from_null(self):
        assert zero_arrow(NULL, X2).underlying == X2.basepoint_map()

    def test_absorbs_exhaustively(self):
        for A, B, C in itertools.product(psets("a", 3), psets("b", 3), psets("c", 3)):
            z = zero_arrow(A, C)
            for g in enumerate_pointed_maps(B, C):
                assert pcompose(zero_arrow(A, B), g) == z
            for f in enumerate_pointed_maps(A, B):
                assert pcompose(f, zero_arrow(B, C)) == z


class TestWedge:
    def test_example(self):
        w = wedge_coproduct(X2, Y2)
        assert str(w.apex) == "{L.x0+R.y0,L.x1,R.y1}"
        assert w.basepoint == Block(frozenset([Tagged("L", "x0"), Tagged("R", "y0")]))

    def test_size(self):
        for X, Y in itertools.product(psets("x", 4), psets("y", 4)):
            assert len(wedge_coproduct(X, Y).apex) == len(X) + len(Y) - 1

    def test_with_null_object(self):
        w = wedge_coproduct(X2, NULL)
        leg = w.legs["can_X"]
        assert is_injective(leg) and is_surjective(leg)

    def test_pointed_ump(self):
        for X, Y, Z in itertools.product(psets("x", 3), psets("y", 3), psets("z", 2)):
            w = wedge_coproduct(X, Y)
            for h, h2 in itertools.product(enumerate_pointed_maps(X, Z), enumerate_pointed_maps(Y, Z)):
                r = verify_ump(w, [h, h2])
                assert r.mediating_count == 1
                assert r.mediator == wedge_factor(h, h2).underlying

    def test_plain_maps_rejected(self):
        w = wedge_coproduct(X2, Y2)
        from canonmaps.errors import ShapeMismatch

        with pytest.raises(ShapeMismatch):
            verify_ump(w, [pidentity(X2).underlying, zero_arrow(Y2, X2).underlying])


class TestPointedProduct:
    def test_example(self):
        p = pointed_product(X2, Y2)
        assert len(p.apex) == 4 and p.basepoint == Pair("x0", "y0")

    def test_with_null_object(self):
        p = pointed_product(X2, NULL)
        assert is_injective(p.legs["p_X"]) and is_surjective(p.legs["p_X"])

    def test_projections_are_pointed(self):
        p = pointed_product(X2, Y2)
        for leg in p.parts["pointed_legs"].values():
            assert is_pointed_map(leg.underlying, leg.dom, leg.cod)

    def test_pointed_ump(self):
        for X, Y, Z in itertools.product(psets("x", 3), psets("y", 3), psets("z", 2)):
            p = pointed_product(X, Y)
            for f, g in itertools.product(enumerate_pointed_maps(Z, X), enumerate_pointed_maps(Z, Y)):
                r = verify_ump(p, [f, g])
                assert r.mediating_count == 1
                assert r.mediator == pointed_product_factor(f, g).underlying


class TestWedgeToProduct:
    def test_example(self):
        can = canonical_wedge_to_product(X2, Y2)
        base = Block(frozenset([Tagged("L", "x0"), Tagged("R", "y0")]))
        assert can.underlying.as_dict() == {
            base: Pair("x0", "y0"),
            Tagged("L", "x1"): Pair("x1", "y0"),
            Tagged("R", "y1"): Pair("x0", "y1"),
        }

    def test_with_null_object(self):
        can = canonical_wedge_to_product(X2, NULL)
        values = {can(w) for w in can.dom.carrier}
        assert values == {Pair("x0", POINT), Pair("x1", POINT)}

    def test_injective_and_rarely_surjective(self):
        for X, Y in itertools.product(psets("x", 4), psets("y", 4)):
            can = canonical_wedge_to_product(X, Y).underlying
            assert is_injective(can)
            if len(X) >= 2 and len(Y) >= 2:
                assert not is_surjective(can)
