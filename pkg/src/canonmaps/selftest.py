"""Exhaustive invariant sweeps over all small instances, run by the
``selftest`` CLI command."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import constructions as uc
from . import partitions as pl
from .errors import NotAFunction
from .finset import (
    Block,
    FinSet,
    Function,
    Relation,
    as_function,
    classify_relation,
    compose,
    enumerate_functions,
    epi_check,
    identity,
    is_injective,
    is_surjective,
    mono_check,
)
from .pointed import (
    NULL,
    canonical_wedge_to_product,
    enumerate_pointed_maps,
    make_pointed,
    pointed_product,
    wedge_coproduct,
)
from .ump import unique_iso_between_candidates, verify_ump


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cond: bool, what):
        self.checked += 1
        if not cond:
            self.failures.append(what)


def objects(max_size: int, prefix: str) -> list[FinSet]:
    return [FinSet(f"{prefix}{i}" for i in range(n)) for n in range(max_size + 1)]


def all_functions(X: FinSet, Y: FinSet) -> list[Function]:
    return list(enumerate_functions(X, Y))


def bell_triangle(n: int) -> list[int]:
    """Bell numbers B_0..B_n by the Bell triangle (independent of enumeration)."""
    bells = [1]
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
        bells.append(row[0])
    return bells


def closure_partition(Y: FinSet, seeds) -> pl.Partition:
    """Equivalence generated by ``seeds`` via reflexive-symmetric-transitive
    closure of a boolean relation matrix (no union-find)."""
    elems = list(Y)
    idx = {y: i for i, y in enumerate(elems)}
    n = len(elems)
    rel = [[i == j for j in range(n)] for i in range(n)]
    for a, b in seeds:
        rel[idx[a]][idx[b]] = rel[idx[b]][idx[a]] = True
    for k in range(n):
        for i in range(n):
            if rel[i][k]:
                for j in range(n):
                    if rel[k][j]:
                        rel[i][j] = True
    blocks = {frozenset(elems[j] for j in range(n) if rel[i][j]) for i in range(n)}
    return pl.Partition(Y, blocks)


# --- suites --------------------------------------------------------------


def suite_function_characterization(max_size: int) -> SuiteResult:
    res = SuiteResult("function characterization")
    n = min(max_size, 3)
    for X, Y in itertools.product(objects(n, "x"), objects(n, "y")):
        cells = [(x, y) for x in X for y in Y]
        for mask in range(1 << len(cells)):
            rel = Relation(X, Y, (c for i, c in enumerate(cells) if mask >> i & 1))
            prof = classify_relation(rel)
            try:
                as_function(rel)
                built = True
            except NotAFunction:
                built = False
            res.check(built == (prof.transmits_elements and prof.reflects_distinctions), rel)
    return res


def suite_mono_epi(max_size: int) -> SuiteResult:
    res = SuiteResult("mono/epi equivalence")
    n = min(max_size, 3)
    for X, Y in itertools.product(objects(n, "x"), objects(n, "y")):
        for f in all_functions(X, Y):
            res.check(mono_check(f, 2) == is_injective(f), ("mono", f))
            res.check(epi_check(f, 1) == is_surjective(f), ("epi", f))
    return res


def suite_refinement(max_size: int) -> SuiteResult:
    res = SuiteResult("refinement equivalence")
    for U in objects(min(max_size, 5), "u"):
        parts = list(pl.enumerate_partitions(U))
        dits = {p: pl.ditset(p) for p in parts}
        for s, p in itertools.product(parts, parts):
            res.check((dits[s] <= dits[p]) == pl.refines_blockwise(s, p), (s, p))
    return res


def suite_lattice(max_size: int) -> SuiteResult:
    res = SuiteResult("lattice structure")
    for U in objects(min(max_size, 4), "u"):
        parts = list(pl.enumerate_partitions(U))
        dits = {p: pl.ditset(p).dits for p in parts}

        def leq(a, b):
            return dits[a] <= dits[b]

        for p, r in itertools.product(parts, parts):
            j, m = pl.join(p, r), pl.meet(p, r)
            uppers = [t for t in parts if leq(p, t) and leq(r, t)]
            lowers = [t for t in parts if leq(t, p) and leq(t, r)]
            res.check(j in uppers and all(leq(j, t) for t in uppers), ("join", p, r))
            res.check(m in lowers and all(leq(t, m) for t in lowers), ("meet", p, r))
            res.check(dits[j] == dits[p] | dits[r], ("dit(join)", p, r))
    return res


def suite_entropy(max_size: int) -> SuiteResult:
    from fractions import Fraction

    res = SuiteResult("logical entropy")
    for n in range(1, max(max_size, 1) + 1):
        U = FinSet(f"u{i}" for i in range(n))
        res.check(pl.logical_entropy(pl.discrete(U)) == Fraction(n - 1, n), ("top", n))
        res.check(pl.logical_entropy(pl.indiscrete(U)) == 0, ("bottom", n))
    for U in objects(min(max_size, 4), "u")[1:]:
        parts = list(pl.enumerate_partitions(U))
        for s, p in itertools.product(parts, parts):
            if pl.refines(s, p):
                res.check(pl.logical_entropy(s) <= pl.logical_entropy(p), (s, p))
    return res


def suite_bell(max_size: int) -> SuiteResult:
    res = SuiteResult("partition enumeration")
    n = min(max_size, 5)
    bells = bell_triangle(n)
    for k, U in enumerate(objects(n, "u")):
        parts = list(pl.enumerate_partitions(U))
        res.check(len(parts) == bells[k] and len(set(parts)) == len(parts), k)
    return res


def _cones_product(n) -> Iterator:
    for X, Y, Z in itertools.product(objects(n, "x"), objects(n, "y"), objects(n, "z")):
        c = uc.product(X, Y)
        for f, g in itertools.product(all_functions(Z, X), all_functions(Z, Y)):
            yield c, {"p_X": f, "p_Y": g}


def _cones_coproduct(n) -> Iterator:
    for X, Y, Z in itertools.product(objects(n, "x"), objects(n, "y"), objects(n, "z")):
        c = uc.coproduct(X, Y)
        for f, g in itertools.product(all_functions(X, Z), all_functions(Y, Z)):
            yield c, {"i_X": f, "i_Y": g}


def _cones_equalizer(n) -> Iterator:
    for X, Y, Z in itertools.product(objects(n, "x"), objects(n, "y"), objects(n, "z")):
        fs = all_functions(X, Y)
        for f, g in itertools.product(fs, fs):
            c = uc.equalizer(f, g)
            for h in all_functions(Z, X):
                if compose(h, f) == compose(h, g):
                    yield c, {"can": h}


def _cones_coequalizer(n) -> Iterator:
    for X, Y, Z in itertools.product(objects(n, "x"), objects(n, "y"), objects(n, "z")):
        fs = all_functions(X, Y)
        for f, g in itertools.product(fs, fs):
            c = uc.coequalizer(f, g)
            for h in all_functions(Y, Z):
                if compose(f, h) == compose(g, h):
                    yield c, {"can": h}


def _cones_pushout(n) -> Iterator:
    for Z, X, Y in itertools.product(objects(n, "z"), objects(n, "x"), objects(n, "y")):
        for f, g in itertools.product(all_functions(Z, X), all_functions(Z, Y)):
            c = uc.pushout(f, g)
            for U in objects(n, "u"):
                for h, h2 in itertools.product(all_functions(X, U), all_functions(Y, U)):
                    if compose(f, h) == compose(g, h2):
                        yield c, {"can_X": h, "can_Y": h2}


def _cones_pullback(n) -> Iterator:
    for X, Y, Z in itertools.product(objects(n, "x"), objects(n, "y"), objects(n, "z")):
        for f, g in itertools.product(all_functions(X, Z), all_functions(Y, Z)):
            c = uc.pullback(f, g)
            for U in objects(n, "u"):
                for h, h2 in itertools.product(all_functions(U, X), all_functions(U, Y)):
                    if compose(h, f) == compose(h2, g):
                        yield c, {"can_X": h, "can_Y": h2}


CONE_SOURCES: dict[str, Callable[[int], Iterator]] = {
    "product": _cones_product,
    "coproduct": _cones_coproduct,
    "equalizer": _cones_equalizer,
    "coequalizer": _cones_coequalizer,
    "pushout": _cones_pushout,
    "pullback": _cones_pullback,
}


def check_ump_case(res: SuiteResult, construction, cone, budget=10**6):
    """Recipe commutes, exactly one mediator exists, and it is the recipe."""
    recipe = uc.factor(construction, cone)
    report = verify_ump(construction, cone, budget)
    res.check(
        report.commutes and report.mediating_count == 1 and report.mediator == recipe,
        (construction.kind, cone, report.mediating_count),
    )


def _random_map(rng: random.Random, X: FinSet, Y: FinSet, forced=None) -> Function | None:
    """A uniformly drawn map ``X -> Y`` agreeing with ``forced`` where given;
    ``None`` when some point has no admissible value."""
    forced = forced or {}
    amap = {}
    for x in X:
        choices = forced.get(x, Y.elements)
        if not choices:
            return None
        amap[x] = rng.choice(list(choices))
    return Function(X, Y, amap)


def _sized(rng: random.Random, prefix: str, size: int) -> FinSet:
    return FinSet(f"{prefix}{i}" for i in range(rng.randint(0, size)))


def sampled_cone(kind: str, size: int, rng: random.Random):
    """One commuting cone or cocone for ``kind`` over objects of at most
    ``size`` elements, built directly from the diagram (no factor maps).
    The diagram's own objects have exactly ``size`` elements; the cone's
    vertex is drawn from sizes 0..size."""
    full = [FinSet(f"{p}{i}" for i in range(size)) for p in "xyz"]
    while True:
        X, Y, Z = full
        if kind in ("product", "coproduct"):
            Z = _sized(rng, "z", size)
            if kind == "product":
                c, pair = uc.product(X, Y), (_random_map(rng, Z, X), _random_map(rng, Z, Y))
            else:
                c, pair = uc.coproduct(X, Y), (_random_map(rng, X, Z), _random_map(rng, Y, Z))
            if None in pair:
                continue
            return c, dict(zip(c.legs, pair))
        if kind in ("equalizer", "coequalizer"):
            f, g = _random_map(rng, X, Y), _random_map(rng, X, Y)
            if f is None or g is None:
                continue
            if kind == "equalizer":
                agree = [x for x in X if f(x) == g(x)]
                h = _random_map(rng, Z, X, {z: agree for z in Z})
            else:
                classes = closure_partition(Y, ((f(x), g(x)) for x in X))
                value = _random_map(rng, classes.quotient(), Z)
                h = None if value is None else Function(Y, Z, {y: value(Block(classes.block_of(y))) for y in Y})
            if h is None:
                continue
            cons = uc.equalizer if kind == "equalizer" else uc.coequalizer
            return cons(f, g), {"can": h}
        U = _sized(rng, "u", size)
        if kind == "pushout":
            f, g, h = _random_map(rng, Z, X), _random_map(rng, Z, Y), _random_map(rng, X, U)
            if None in (f, g, h):
                continue
            need = {}
            for z in Z:
                need.setdefault(g(z), set()).add(h(f(z)))
            if any(len(v) > 1 for v in need.values()):
                continue
            h2 = _random_map(rng, Y, U, {y: sorted(v) for y, v in need.items()})
            if h2 is None:
                continue
            return uc.pushout(f, g), {"can_X": h, "can_Y": h2}
        if kind == "pullback":
            f, g, h = _random_map(rng, X, Z), _random_map(rng, Y, Z), _random_map(rng, U, X)
            if None in (f, g, h):
                continue
            h2 = _random_map(rng, U, Y, {u: [y for y in Y if g(y) == f(h(u))] for u in U})
            if h2 is None:
                continue
            return uc.pullback(f, g), {"can_X": h, "can_Y": h2}
        raise ValueError(f"no sampler for {kind!r}")


def candidate_count(construction, cone) -> int:
    """Size of the candidate space ``verify_ump`` enumerates for this cone."""
    leg = next(iter(cone.values()))
    if construction.is_limit:
        return len(construction.apex) ** len(leg.dom)
    return len(leg.cod) ** len(construction.apex)


def sample_size3_sweep(per_kind: int = 500, budget: int = 10**6):
    """Deterministic sample of size-3 cones for the six constructions, kept
    inside ``budget`` enumerated candidates in total."""
    cases, spent = [], 0
    for kind in CONE_SOURCES:
        rng = random.Random(f"ump-{kind}")
        for _ in range(per_kind):
            construction, cone = sampled_cone(kind, 3, rng)
            spent += candidate_count(construction, cone)
            cases.append((construction, cone))
    if spent > budget:
        raise ValueError(f"sample needs {spent} candidates, over the budget of {budget}")
    return cases, spent


def suite_ump(max_size: int) -> SuiteResult:
    res = SuiteResult("UMP uniqueness")
    n = min(max_size, 2)
    for source in CONE_SOURCES.values():
        for construction, cone in source(n):
            check_ump_case(res, construction, cone)
    if max_size >= 3:
        for construction, cone in sample_size3_sweep()[0]:
            check_ump_case(res, construction, cone)
    return res


def suite_coequalizer_oracle(max_size: int) -> SuiteResult:
    res = SuiteResult("coequalizer oracle")
    n = min(max_size, 3)
    for X, Y in itertools.product(objects(n, "x"), objects(n, "y")):
        fs = all_functions(X, Y)
        for f, g in itertools.product(fs, fs):
            got = uc.coequalizer(f, g).relation
            want = closure_partition(Y, ((f(x), g(x)) for x in X))
            res.check(got == want, (f, g))
    return res


def suite_isomorphism(max_size: int) -> SuiteResult:
    res = SuiteResult("candidate isomorphism")
    n = min(max_size, 3)
    for X, Y in itertools.product(objects(n, "x"), objects(n, "y")):
        prod = uc.product(X, Y)
        for other in (uc.boxtimes_candidate(X, Y), uc.swapped_product(X, Y)):
            iso = unique_iso_between_candidates(prod, other)
            back = unique_iso_between_candidates(other, prod)
            res.check(
                is_injective(iso) and is_surjective(iso)
                and compose(iso, back) == identity(prod.apex)
                and compose(back, iso) == identity(other.apex),
                (X, Y),
            )
        _, bx_iso = uc.boxtimes_product(X, Y)
        res.check(unique_iso_between_candidates(uc.boxtimes_candidate(X, Y), prod) == bx_iso, ("boxtimes", X, Y))
    return res


def pointed_objects(max_size: int, prefix: str):
    return [make_pointed(FinSet(f"{prefix}{i}" for i in range(n)), f"{prefix}0") for n in range(1, max_size + 1)]


def suite_pointed(max_size: int) -> SuiteResult:
    res = SuiteResult("pointed sets")
    for X in pointed_objects(min(max_size, 4), "x"):
        res.check(len(list(enumerate_pointed_maps(X, NULL))) == 1, ("terminal", X))
        res.check(len(list(enumerate_pointed_maps(NULL, X))) == 1, ("initial", X))
    n = min(max_size, 3)
    for X, Y in itertools.product(pointed_objects(n, "x"), pointed_objects(n, "y")):
        w = wedge_coproduct(X, Y)
        res.check(len(w.apex) == len(X) + len(Y) - 1, ("wedge size", X, Y))
        can = canonical_wedge_to_product(X, Y)
        prod = pointed_product(X, Y)
        report = verify_ump(w, _wedge_to_product_cocone(X, Y))
        res.check(report.mediating_count == 1 and report.mediator == can.underlying, ("wedge->product", X, Y))
        res.check(can.cod.carrier == prod.apex, ("target", X, Y))
    return res


def _wedge_to_product_cocone(X, Y):
    from .pointed import pidentity, pointed_product_factor, zero_arrow

    return [
        pointed_product_factor(pidentity(X), zero_arrow(X, Y)),
        pointed_product_factor(zero_arrow(Y, X), pidentity(Y)),
    ]


SUITES: list[Callable[[int], SuiteResult]] = [
    suite_function_characterization,
    suite_mono_epi,
    suite_refinement,
    suite_lattice,
    suite_entropy,
    suite_bell,
    suite_ump,
    suite_coequalizer_oracle,
    suite_isomorphism,
    suite_pointed,
]


def run_selftest(max_size: int) -> list[SuiteResult]:
    if not 1 <= max_size <= 5:
        raise ValueError("max_size must be between 1 and 5")
    results = []
    for suite in SUITES:
        start = time.perf_counter()
        res = suite(max_size)
        res.seconds = time.perf_counter() - start
        results.append(res)
    return results
