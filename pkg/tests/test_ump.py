import itertools

import pytest

from canonmaps import EMPTY, FinSet, Function, identity
from canonmaps import constructions as uc
from canonmaps.errors import EnumerationBudgetExceeded, NotBothUniversal, ShapeMismatch
from canonmaps.finset import Pair, Tagged, UPair, compose, enumerate_functions
from canonmaps.selftest import CONE_SOURCES, candidate_count, sample_size3_sweep
from canonmaps.ump import unique_iso_between_candidates, verify_ump


def fn(dom, cod, mapping):
    return Function(FinSet(dom), FinSet(cod), mapping)


def test_product_with_point_cone():
    X, Y = FinSet("12"), FinSet("pq")
    r = verify_ump(uc.product(X, Y), {"p_X": fn("z", "12", {"z": "2"}), "p_Y": fn("z", "pq", {"z": "p"})})
    assert r.commutes and r.mediating_count == 1 and r.unique
    assert r.mediator.as_dict() == {"z": Pair("2", "p")}


def test_apex_with_a_missing_pair_fails_for_some_cone():
    X, Y = FinSet("12"), FinSet("pq")
    full = uc.product(X, Y)
    apex = FinSet(w for w in full.apex if w != Pair("2", "q"))
    legs = {n: Function(apex, leg.cod, {w: leg(w) for w in apex}) for n, leg in full.legs.items()}
    broken = uc.ConstructionResult("product", apex, legs)
    Z = FinSet("z")
    counts = [
        verify_ump(broken, {"p_X": f, "p_Y": g}).mediating_count
        for f, g in itertools.product(enumerate_functions(Z, X), enumerate_functions(Z, Y))
    ]
    assert 0 in counts
    bad = verify_ump(broken, {"p_X": fn("z", "12", {"z": "2"}), "p_Y": fn("z", "pq", {"z": "q"})})
    assert bad.witnesses == ("no admissible value at z",)


def test_coproduct_into_a_point():
    c = uc.coproduct(FinSet("12"), FinSet("p"))
    U = FinSet("u")
    r = verify_ump(c, [fn("12", "u", {"1": "u", "2": "u"}), fn("p", "u", {"p": "u"})])
    assert r.mediating_count == 1 and r.mediator.cod == U


def test_surplus_mediators_are_reported():
    # a product candidate with a duplicated point admits two mediators
    X, Y = FinSet("1"), FinSet("p")
    apex = FinSet(["a", "b"])
    legs = {"p_X": fn("ab", "1", {"a": "1", "b": "1"}), "p_Y": fn("ab", "p", {"a": "p", "b": "p"})}
    fat = uc.ConstructionResult("product", apex, legs)
    r = verify_ump(fat, legs)
    assert r.mediating_count == 4 and r.mediator is None and len(r.witnesses) == 3


def test_non_commuting_cone_is_flagged():
    f = fn("12", "pq", {"1": "p", "2": "q"})
    g = fn("12", "pq", {"1": "p", "2": "p"})
    eq = uc.equalizer(f, g)
    r = verify_ump(eq, {"can": identity(FinSet("12"))})
    assert not r.commutes and r.mediating_count == 0


def test_shape_checks():
    c = uc.product(FinSet("1"), FinSet("p"))
    with pytest.raises(ShapeMismatch):
        verify_ump(c, {"p_X": fn("z", "1", {"z": "1"})})
    with pytest.raises(ShapeMismatch):
        verify_ump(c, [fn("z", "1", {"z": "1"}), fn("w", "p", {"w": "p"})])
    with pytest.raises(ShapeMismatch):
        verify_ump(c, [fn("z", "1", {"z": "1"}), fn("z", "pq", {"z": "p"})])


def test_budget():
    c = uc.product(FinSet("abc"), FinSet("pqr"))
    Z = FinSet("12345678")
    cone = [Function(Z, c.legs["p_X"].cod, {z: "a" for z in Z}), Function(Z, c.legs["p_Y"].cod, {z: "p" for z in Z})]
    with pytest.raises(EnumerationBudgetExceeded):
        verify_ump(c, cone)
    assert verify_ump(c, cone, strategy="pruned").mediating_count == 1
    with pytest.raises(EnumerationBudgetExceeded):
        verify_ump(c, cone, budget=10, strategy="pruned")
    with pytest.raises(ValueError):
        verify_ump(c, cone, strategy="guess")


def test_render():
    c = uc.product(FinSet("1"), FinSet("p"))
    r = verify_ump(c, [fn("z", "1", {"z": "1"}), fn("z", "p", {"z": "p"})])
    assert r.render() == "{ commutes: true, mediating_count: 1, mediator: mediator: {z} -> {(1,p)} { z->(1,p) } }"


@pytest.mark.parametrize("kind", sorted(CONE_SOURCES))
def test_recipe_is_the_unique_mediator_up_to_size_two(kind):
    for construction, cone in CONE_SOURCES[kind](2):
        r = verify_ump(construction, cone)
        assert r.commutes and r.mediating_count == 1
        assert r.mediator == uc.factor(construction, cone)


@pytest.mark.parametrize("kind", sorted(CONE_SOURCES))
def test_pruned_search_counts_like_brute_force(kind):
    for construction, cone in CONE_SOURCES[kind](2):
        a = verify_ump(construction, cone)
        b = verify_ump(construction, cone, strategy="pruned")
        assert (a.mediating_count, a.mediator) == (b.mediating_count, b.mediator)


def test_pruned_search_on_non_universal_candidates():
    apex = FinSet(["a", "b", "c"])
    legs = {"p_X": fn("abc", "1", {"a": "1", "b": "1", "c": "1"}), "p_Y": fn("abc", "p", {"a": "p", "b": "p", "c": "p"})}
    fat = uc.ConstructionResult("product", apex, legs)
    for cone in (legs, {"p_X": fn("z", "1", {"z": "1"}), "p_Y": fn("z", "p", {"z": "p"})}):
        a, b = verify_ump(fat, cone), verify_ump(fat, cone, strategy="pruned")
        assert a.mediating_count == b.mediating_count and a.witnesses == b.witnesses


def test_size_three_sample_is_deterministic_and_within_budget():
    cases, spent = sample_size3_sweep()
    again, spent_again = sample_size3_sweep()
    assert spent == spent_again <= 10**6
    assert [(c.kind, str(c.apex)) for c, _ in cases] == [(c.kind, str(c.apex)) for c, _ in again]
    assert spent == sum(candidate_count(c, cone) for c, cone in cases)
    assert {c.kind for c, _ in cases} == set(CONE_SOURCES)


class TestUniqueIso:
    def test_boxtimes_iso(self):
        X, Y = FinSet("12"), FinSet("pq")
        iso = unique_iso_between_candidates(uc.boxtimes_candidate(X, Y), uc.product(X, Y))
        assert iso(UPair(frozenset([Tagged("L", "1"), Tagged("R", "q")]))) == Pair("1", "q")
        assert iso == uc.boxtimes_product(X, Y)[1]

    def test_same_candidate_gives_identity(self):
        c = uc.product(FinSet("12"), FinSet("pq"))
        assert unique_iso_between_candidates(c, c) == identity(c.apex)
        co = uc.coproduct(FinSet("12"), FinSet("pq"))
        assert unique_iso_between_candidates(co, co) == identity(co.apex)

    def test_swap(self):
        X, Y = FinSet("12"), FinSet("pq")
        iso = unique_iso_between_candidates(uc.product(X, Y), uc.swapped_product(X, Y))
        assert all(iso(w) == Pair(w.right, w.left) for w in iso.dom)

    def test_round_trips(self):
        for n, m in itertools.product(range(4), range(4)):
            X, Y = FinSet(f"x{i}" for i in range(n)), FinSet(f"y{i}" for i in range(m))
            a, b = uc.product(X, Y), uc.boxtimes_candidate(X, Y)
            there = unique_iso_between_candidates(a, b)
            back = unique_iso_between_candidates(b, a)
            assert compose(there, back) == identity(a.apex)
            assert compose(back, there) == identity(b.apex)

    def test_non_universal_candidate_rejected(self):
        X, Y = FinSet("1"), FinSet("p")
        apex = FinSet(["a", "b"])
        legs = {"p_X": fn("ab", "1", {"a": "1", "b": "1"}), "p_Y": fn("ab", "p", {"a": "p", "b": "p"})}
        fat = uc.ConstructionResult("product", apex, legs)
        with pytest.raises(NotBothUniversal):
            unique_iso_between_candidates(uc.product(X, Y), fat)

    def test_shapes_must_match(self):
        with pytest.raises(NotBothUniversal):
            unique_iso_between_candidates(uc.product(EMPTY, EMPTY), uc.coproduct(EMPTY, EMPTY))
