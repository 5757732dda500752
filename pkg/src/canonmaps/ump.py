"""Exhaustive verification of universal mapping properties."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .constructions import COLIMIT_KINDS, LIMIT_KINDS, ConstructionResult
from .errors import EnumerationBudgetExceeded, NotBothUniversal, ShapeMismatch
from .finset import DEFAULT_BUDGET, Function, compose, identity, render_function

MAX_WITNESSES = 5


@dataclass(frozen=True)
class UmpReport:
    """Outcome of enumerating every candidate mediating map.

    ``commutes`` says whether the supplied cone (or cocone) satisfies the
    diagram's own commuting condition.  ``witnesses`` lists, when no
    mediator exists, the points no candidate value can serve, and when
    several exist, the surplus mediators.
    """

    commutes: bool
    mediating_count: int
    mediator: Function | None = None
    witnesses: tuple = field(default_factory=tuple)

    @property
    def unique(self) -> bool:
        return self.mediating_count == 1

    def render(self, name: str = "mediator") -> str:
        parts = [
            f"commutes: {str(self.commutes).lower()}",
            f"mediating_count: {self.mediating_count}",
        ]
        if self.mediator is not None:
            parts.append(f"mediator: {render_function(self.mediator, name)}")
        if self.witnesses:
            parts.append("witnesses: [" + "; ".join(self.witnesses) + "]")
        return "{ " + ", ".join(parts) + " }"


def _unwrap(m):
    """Accept plain functions or pointed maps; return (function, pointed map or None)."""
    if hasattr(m, "underlying"):
        return m.underlying, m
    return m, None


def _normalize_cone(construction: ConstructionResult, cone) -> dict:
    names = list(construction.legs)
    if isinstance(cone, Mapping):
        if set(cone) != set(names):
            raise ShapeMismatch(f"cone legs {sorted(cone)} do not match {names}")
        return {n: cone[n] for n in names}
    cone = list(cone)
    if len(cone) != len(names):
        raise ShapeMismatch(f"expected {len(names)} cone legs, got {len(cone)}")
    return dict(zip(names, cone))


def _cone_condition(construction: ConstructionResult, maps: dict) -> bool:
    kind, diagram = construction.kind, construction.diagram
    if kind == "equalizer":
        f, g = diagram
        return compose(maps["can"], f) == compose(maps["can"], g)
    if kind == "coequalizer":
        f, g = diagram
        return compose(f, maps["can"]) == compose(g, maps["can"])
    if kind == "pullback":
        f, g = diagram
        return compose(maps["can_X"], f) == compose(maps["can_Y"], g)
    if kind in ("pushout", "wedge"):
        f, g = diagram
        return compose(f, maps["can_X"]) == compose(g, maps["can_Y"])
    return True


def verify_ump(
    construction: ConstructionResult,
    cone: Mapping[str, Function] | Sequence[Function],
    budget: int = DEFAULT_BUDGET,
    strategy: str = "exhaustive",
) -> UmpReport:
    """Count the maps making every triangle commute.

    For a limit the candidates run from the cone's apex to the construction's
    apex and must satisfy ``leg . m == cone_leg``; for a colimit they run the
    other way and must satisfy ``m . leg == cocone_leg``.  In the pointed
    category only basepoint-preserving candidates are enumerated.

    ``strategy="exhaustive"`` tests every candidate function and the budget
    caps the candidate count.  ``strategy="pruned"`` walks the same candidate
    tree depth first, cutting a branch as soon as the point just assigned
    breaks a triangle; every constraint mentions a single point, so the
    count is identical.  Its budget caps the number of tree nodes visited.
    """
    if strategy not in ("exhaustive", "pruned"):
        raise ValueError(f"unknown strategy {strategy!r}")
    kind = construction.kind
    if kind not in LIMIT_KINDS and kind not in COLIMIT_KINDS:
        raise ShapeMismatch(f"unknown construction kind {kind!r}")
    raw = _normalize_cone(construction, cone)
    maps, pointed = {}, {}
    for n, m in raw.items():
        maps[n], pointed[n] = _unwrap(m)
    is_pointed = construction.basepoint is not None
    if is_pointed and any(p is None for p in pointed.values()):
        raise ShapeMismatch("a pointed construction needs a cone of pointed maps")

    legs = construction.legs
    limit = kind in LIMIT_KINDS
    if limit:
        src = {m.dom for m in maps.values()}
        if len(src) > 1:
            raise ShapeMismatch("cone legs must share a domain")
        for n, m in maps.items():
            if m.cod != legs[n].cod:
                raise ShapeMismatch(f"cone leg {n} ends at {m.cod}, expected {legs[n].cod}")
        dom, cod = src.pop(), construction.apex
    else:
        tgt = {m.cod for m in maps.values()}
        if len(tgt) > 1:
            raise ShapeMismatch("cocone legs must share a codomain")
        for n, m in maps.items():
            if m.dom != legs[n].dom:
                raise ShapeMismatch(f"cocone leg {n} starts at {m.dom}, expected {legs[n].dom}")
        dom, cod = construction.apex, tgt.pop()

    fixed = {}
    if is_pointed:
        some = next(iter(pointed.values()))
        if limit:
            fixed[some.dom.basepoint] = construction.basepoint
        else:
            fixed[construction.basepoint] = some.cod.basepoint
    free = [x for x in dom if x not in fixed]
    leg_maps = {n: f.as_dict() for n, f in legs.items()}
    cone_maps = {n: m.as_dict() for n, m in maps.items()}

    if strategy == "exhaustive":
        needed = len(cod) ** len(free)
        if needed > budget:
            raise EnumerationBudgetExceeded(needed, budget)
        found = _exhaustive(limit, dom, cod, free, fixed, legs, leg_maps, cone_maps)
    else:
        found = _pruned(limit, dom, cod, free, fixed, legs, leg_maps, cone_maps, budget)

    mediator = Function(dom, cod, found[0]) if len(found) == 1 else None
    if not found:
        witnesses = tuple(_stuck_points(limit, dom, cod, leg_maps, cone_maps, legs, fixed))
    else:
        witnesses = tuple(
            render_function(Function(dom, cod, c), "also") for c in found[1 : 1 + MAX_WITNESSES]
        )
    return UmpReport(_cone_condition(construction, maps), len(found), mediator, witnesses)


def _exhaustive(limit, dom, cod, free, fixed, legs, leg_maps, cone_maps) -> list[dict]:
    def ok(cand: dict) -> bool:
        if limit:
            return all(
                leg_maps[n][cand[z]] == cone_maps[n][z] for n in leg_maps for z in dom
            )
        return all(
            cand[leg_maps[n][a]] == cone_maps[n][a] for n in leg_maps for a in legs[n].dom
        )

    found = []
    for values in itertools.product(cod.elements, repeat=len(free)):
        cand = dict(fixed)
        cand.update(zip(free, values))
        if ok(cand):
            found.append(cand)
    return found


def _pruned(limit, dom, cod, free, fixed, legs, leg_maps, cone_maps, budget) -> list[dict]:
    # preimages[x] lists (leg, a) with leg(a) == x, for the colimit check
    preimages: dict = {x: [] for x in dom}
    if not limit:
        for n in leg_maps:
            for a in legs[n].dom:
                preimages[leg_maps[n][a]].append((n, a))

    def fits(x, v) -> bool:
        if limit:
            return all(leg_maps[n][v] == cone_maps[n][x] for n in leg_maps)
        return all(cone_maps[n][a] == v for n, a in preimages[x])

    if not all(fits(x, v) for x, v in fixed.items()):
        return []
    found = []
    nodes = 0
    cand = dict(fixed)

    def walk(i):
        nonlocal nodes
        if i == len(free):
            found.append(dict(cand))
            return
        x = free[i]
        for v in cod.elements:
            nodes += 1
            if nodes > budget:
                raise EnumerationBudgetExceeded(nodes, budget)
            if fits(x, v):
                cand[x] = v
                walk(i + 1)
                del cand[x]

    walk(0)
    return found


def _stuck_points(limit, dom, cod, leg_maps, cone_maps, legs, fixed):
    """Points of the candidate domain that no value can serve."""
    out = []
    for x in dom:
        options = [fixed[x]] if x in fixed else list(cod)
        if limit:
            good = [a for a in options if all(leg_maps[n][a] == cone_maps[n][x] for n in leg_maps)]
        else:
            good = [
                z for z in options
                if all(cone_maps[n][a] == z for n in leg_maps for a in legs[n].dom if leg_maps[n][a] == x)
            ]
        if not good:
            out.append(f"no admissible value at {x}")
        if len(out) >= MAX_WITNESSES:
            break
    return out


def unique_iso_between_candidates(
    a: ConstructionResult,
    b: ConstructionResult,
    budget: int = DEFAULT_BUDGET,
    strategy: str = "pruned",
) -> Function:
    """The mediating isomorphism ``a.apex -> b.apex`` between two universal
    candidates for the same diagram, checked to be a two-sided inverse of
    the mediator in the other direction."""
    if a.kind != b.kind or list(a.legs) != list(b.legs):
        raise NotBothUniversal(f"{a.kind} and {b.kind} candidates do not share a shape")
    if a.kind in LIMIT_KINDS:
        forward = verify_ump(b, a.legs, budget, strategy)
        backward = verify_ump(a, b.legs, budget, strategy)
    else:
        forward = verify_ump(a, b.legs, budget, strategy)
        backward = verify_ump(b, a.legs, budget, strategy)
    if not (forward.unique and backward.unique):
        raise NotBothUniversal(
            f"mediator counts {forward.mediating_count} and {backward.mediating_count}, expected 1 and 1"
        )
    there, back = forward.mediator, backward.mediator
    if compose(there, back) != identity(a.apex) or compose(back, there) != identity(b.apex):
        raise NotBothUniversal("mediators are not mutually inverse")
    return there
