import itertools
from fractions import Fraction

import pytest
from hypothesis import given

from canonmaps import EMPTY, ONE, FinSet, identity
from canonmaps.errors import (
    EmptyUniverse,
    EnumerationBudgetExceeded,
    InvalidPartition,
    NotARefinement,
    UniverseMismatch,
)
from canonmaps.finset import POINT, Block, Tagged, compose, enumerate_functions
from canonmaps.partitions import (
    Partition,
    canonical_surjection,
    coimage,
    discrete,
    disjoint_union_partition,
    ditset,
    enumerate_partitions,
    indiscrete,
    join,
    logical_entropy,
    meet,
    quotient_map,
    refines,
    refines_blockwise,
    render_partition,
    restricted_growth_strings,
    terminal_map,
)

from oracles import bell_numbers, ordered_dits, set_partitions
from strategies import partition_pairs, partitions


def U(n):
    return FinSet(f"u{i}" for i in range(n))


def B(*members):
    return Block(frozenset(members))


class TestPartitionValue:
    @pytest.mark.parametrize(
        "blocks",
        [[{"a"}, {"b"}], [{"a", "b"}, {"b", "c"}], [{"a", "b", "c"}, set()], [{"a", "b", "z"}, {"c"}]],
    )
    def test_invalid_blocks(self, U3, blocks):
        with pytest.raises(InvalidPartition):
            Partition(U3, blocks)

    def test_rendering_sorted(self, U3):
        p = Partition(U3, [{"c"}, {"b", "a"}])
        assert str(p) == "{{a,b},{c}}"
        assert render_partition(p, "pi", "U") == "partition pi on U = {{a,b},{c}}"


class TestDitset:
    def test_extremes(self, U3):
        assert len(ditset(discrete(U3))) == 6
        assert len(ditset(indiscrete(U3))) == 0

    def test_example(self, U3, pi_ab_c):
        assert ditset(pi_ab_c).dits == {("a", "c"), ("c", "a"), ("b", "c"), ("c", "b")}

    @given(partitions())
    def test_against_oracle(self, p):
        assert ditset(p).dits == ordered_dits(p.universe, list(p.blocks))


class TestRefines:
    def test_bounds(self):
        for n in range(5):
            for p in enumerate_partitions(U(n)):
                assert refines(indiscrete(U(n)), p) and refines(p, discrete(U(n)))

    def test_examples(self, U3, pi_ab_c):
        assert refines(pi_ab_c, discrete(U3))
        other = Partition(U3, [{"a"}, {"b", "c"}])
        assert not refines(pi_ab_c, other) and not refines(other, pi_ab_c)

    def test_universes_must_agree(self, U3):
        with pytest.raises(UniverseMismatch):
            refines(discrete(U3), discrete(U(3)))

    @pytest.mark.parametrize("n", range(6))
    def test_ditset_and_blockwise_agree(self, n):
        parts = list(enumerate_partitions(U(n)))
        for s, p in itertools.product(parts, parts):
            assert refines(s, p) == refines_blockwise(s, p)

    @pytest.mark.parametrize("n", range(5))
    def test_partial_order(self, n):
        parts = list(enumerate_partitions(U(n)))
        for a in parts:
            assert refines(a, a)
        for a, b in itertools.product(parts, parts):
            if refines(a, b) and refines(b, a):
                assert a == b
        for a, b, c in itertools.product(parts, repeat=3):
            if refines(a, b) and refines(b, c):
                assert refines(a, c)


class TestCanonicalSurjection:
    def test_example(self, U3, pi_ab_c):
        can = canonical_surjection(discrete(U3), pi_ab_c)
        assert can.as_dict() == {B("a"): B("a", "b"), B("b"): B("a", "b"), B("c"): B("c")}

    def test_same_partition_is_identity(self, pi_ab_c):
        assert canonical_surjection(pi_ab_c, pi_ab_c) == identity(pi_ab_c.quotient())

    def test_top_to_bottom_is_terminal(self, U3):
        can = canonical_surjection(discrete(U3), indiscrete(U3))
        assert len(can.cod) == 1 and len(set(can.as_dict().values())) == 1

    def test_not_a_refinement(self, U3, pi_ab_c):
        with pytest.raises(NotARefinement):
            canonical_surjection(pi_ab_c, discrete(U3))

    @pytest.mark.parametrize("n", range(5))
    def test_functorial(self, n):
        parts = list(enumerate_partitions(U(n)))
        for t, s, p in itertools.product(parts, repeat=3):
            if refines(t, s) and refines(s, p):
                assert canonical_surjection(p, t) == compose(canonical_surjection(p, s), canonical_surjection(s, t))


class TestExtremes:
    def test_three_points(self, U3):
        assert str(discrete(U3)) == "{{a},{b},{c}}"
        assert str(indiscrete(U3)) == "{{a,b,c}}"
        assert refines(indiscrete(U3), discrete(U3))

    def test_empty_universe(self):
        assert discrete(EMPTY).blocks == frozenset() == indiscrete(EMPTY).blocks
        assert discrete(EMPTY) == indiscrete(EMPTY)


class TestTerminalMap:
    def test_constant(self, U3):
        t = terminal_map(U3)
        assert t.cod == ONE and set(t.as_dict().values()) == {POINT}

    def test_empty(self):
        t = terminal_map(EMPTY)
        assert t.dom == EMPTY and t.cod == ONE

    @pytest.mark.parametrize("n", range(6))
    def test_unique(self, n):
        assert list(enumerate_functions(U(n), ONE)) == [terminal_map(U(n))]


class TestJoinMeet:
    def test_join_example(self):
        X = FinSet("123")
        a = Partition(X, [{"1", "2"}, {"3"}])
        b = Partition(X, [{"1"}, {"2", "3"}])
        assert join(a, b) == discrete(X)
        assert meet(a, b) == indiscrete(X)

    @given(partitions())
    def test_units_and_idempotence(self, p):
        X = p.universe
        assert join(p, indiscrete(X)) == p
        assert join(p, p) == p
        assert meet(p, discrete(X)) == p
        assert meet(p, p) == p

    @given(partition_pairs())
    def test_ditset_of_join_is_union(self, pair):
        a, b = pair
        assert ditset(join(a, b)).dits == ditset(a).dits | ditset(b).dits

    @pytest.mark.parametrize("n", range(5))
    def test_bounds_exhaustive(self, n):
        parts = list(enumerate_partitions(U(n)))
        for a, b in itertools.product(parts, parts):
            j, m = join(a, b), meet(a, b)
            uppers = [t for t in parts if refines(a, t) and refines(b, t)]
            lowers = [t for t in parts if refines(t, a) and refines(t, b)]
            assert j in uppers and all(refines(j, t) for t in uppers)
            assert m in lowers and all(refines(t, m) for t in lowers)


class TestDisjointUnion:
    def test_example(self, f3):
        rho = coimage(identity(FinSet("pq")))
        got = disjoint_union_partition(coimage(f3), rho)
        want = [{Tagged("L", "1"), Tagged("L", "2")}, {Tagged("L", "3")}, {Tagged("R", "p")}, {Tagged("R", "q")}]
        assert got.blocks == frozenset(frozenset(b) for b in want)
        assert str(got) == "{{L.1,L.2},{L.3},{R.p},{R.q}}"

    def test_empty_left(self, pi_ab_c):
        got = disjoint_union_partition(discrete(EMPTY), pi_ab_c)
        assert str(got) == "{{R.a,R.b},{R.c}}"

    def test_two_indiscretes(self):
        assert len(disjoint_union_partition(indiscrete(FinSet("ab")), indiscrete(FinSet("xy")))) == 2


class TestEntropy:
    def test_table_values(self, U3, pi_ab_c):
        assert logical_entropy(discrete(U3)) == Fraction(2, 3)
        assert logical_entropy(indiscrete(U3)) == 0
        assert logical_entropy(pi_ab_c) == Fraction(4, 9)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_extremes(self, n):
        assert logical_entropy(discrete(U(n))) == Fraction(n - 1, n)
        assert logical_entropy(indiscrete(U(n))) == 0

    def test_empty_universe(self):
        with pytest.raises(EmptyUniverse):
            logical_entropy(discrete(EMPTY))

    @given(partition_pairs())
    def test_bounds_and_monotone(self, pair):
        a, b = pair
        n = len(a.universe)
        if n == 0:
            return
        h = logical_entropy(a)
        assert 0 <= h <= Fraction(n - 1, n)
        assert h == Fraction(len(ordered_dits(a.universe, list(a.blocks))), n * n)
        if refines(a, b):
            assert h <= logical_entropy(b)


class TestEnumeration:
    @pytest.mark.parametrize("n", range(7))
    def test_bell_counts(self, n):
        parts = list(enumerate_partitions(U(n)))
        assert len(parts) == bell_numbers(n)[n]
        assert len(set(parts)) == len(parts)

    @pytest.mark.parametrize("n", range(6))
    def test_same_partitions_as_oracle(self, n):
        got = {p.blocks for p in enumerate_partitions(U(n))}
        want = {frozenset(frozenset(b) for b in part) for part in set_partitions(U(n))}
        assert got == want

    def test_restricted_growth_order(self):
        assert list(restricted_growth_strings(3)) == [
            (0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (0, 1, 2),
        ]
        assert [str(p) for p in enumerate_partitions(FinSet("ab"))] == ["{{a,b}}", "{{a},{b}}"]

    def test_empty_universe(self):
        assert list(enumerate_partitions(EMPTY)) == [discrete(EMPTY)]

    def test_bound(self):
        with pytest.raises(EnumerationBudgetExceeded):
            list(enumerate_partitions(U(7)))


def test_quotient_map_sends_points_to_blocks(pi_ab_c):
    q = quotient_map(pi_ab_c)
    assert q("a") == q("b") == B("a", "b") and q("c") == B("c")
