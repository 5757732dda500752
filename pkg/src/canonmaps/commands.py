"""Run the ``compute`` commands of a parsed script."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import constructions as uc
from . import partitions as pl
from . import pointed as ps
from . import subsets as sl
from .errors import CanonError
from .finset import (
    DEFAULT_BUDGET,
    Function,
    classify_relation,
    compose,
    find_epi_counterexample,
    find_mono_counterexample,
    image,
    is_cofunction,
    is_injective,
    is_surjective,
    opposite,
    render_function,
    sort_key,
)
from .dsl import UMP_SHAPES, Command, Script
from .ump import unique_iso_between_candidates, verify_ump

FN = ":"
VAL = " ="


@dataclass
class Record:
    """One command's report; the text block and the JSON record are both
    rendered from ``outputs`` and ``diagnostics``."""

    kind: str
    name: str
    line: int
    inputs: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)  # (key, value, separator)
    diagnostics: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.diagnostics

    def fact(self, key: str, value, sep: str = VAL):
        self.outputs.append((key, _text(value), sep))

    def function(self, key: str, f: Function):
        body = render_function(f, key)
        self.outputs.append((key, body[len(key) + 2 :], FN))

    def text(self) -> str:
        lines = [f">> {self.name}"]
        lines += [f"{k}{sep} {v}" for k, v, sep in self.outputs]
        lines += [f"error: {d}" for d in self.diagnostics]
        return "\n".join(lines) + "\n"

    def as_json(self) -> dict:
        return {
            "kind": self.kind,
            "name": self.name,
            "inputs": self.inputs,
            "outputs": {k: v for k, v, _ in self.outputs},
            "diagnostics": list(self.diagnostics),
        }


def _text(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    return str(value)


def _fmt_pairs(pairs) -> str:
    items = sorted(pairs, key=lambda p: (sort_key(p[0]), sort_key(p[1])))
    return "{" + ",".join(f"({a},{b})" for a, b in items) + "}"


def _render_input(env, kind, name) -> str:
    value = env.table(kind)[name]
    if kind == "fn":
        return render_function(value, name, *env.fn_ends[name])
    return str(value)


def execute(script: Script, budget: int = DEFAULT_BUDGET) -> list[Record]:
    """Run every command in order; failures are recorded, not raised."""
    records = []
    for cmd in script.commands():
        rec = Record(cmd.op, cmd.render(), cmd.line)
        try:
            _run(script.env, cmd, rec, cmd.option("budget", budget))
        except CanonError as exc:
            rec.outputs.clear()
            rec.diagnostics.append(f"line {cmd.line}: {type(exc).__name__}: {exc}")
        records.append(rec)
    return records


def render_text(records: list[Record]) -> str:
    return "\n".join(r.text() for r in records)


def render_json(records: list[Record]) -> str:
    return json.dumps([r.as_json() for r in records], indent=2, ensure_ascii=False) + "\n"


def _construction(rec: Record, c: uc.ConstructionResult):
    rec.fact("apex", c.apex)
    if c.basepoint is not None:
        rec.fact("basepoint", c.basepoint)
    for name, leg in c.legs.items():
        rec.function(name, leg)


def _run(env, cmd: Command, rec: Record, budget: int):
    op, args = cmd.op, cmd.args
    if op == "verify-ump":
        _verify(env, cmd, rec, budget)
        return
    from .dsl import SIGNATURES

    kinds = SIGNATURES[op]
    for k, a in zip(kinds, args):
        rec.inputs[a] = _render_input(env, k, a)
    fn = env.functions.get
    part = env.partitions.get
    sub = env.subsets.get
    obj = env.carrier
    a = args

    if op == "classify":
        prof = classify_relation(fn(a[0]).graph())
        for key in ("transmits_elements", "reflects_elements", "transmits_distinctions", "reflects_distinctions"):
            rec.fact(f"{key}({a[0]})", getattr(prof, key))
    elif op == "injective":
        rec.fact(f"injective({a[0]})", is_injective(fn(a[0])))
    elif op == "surjective":
        rec.fact(f"surjective({a[0]})", is_surjective(fn(a[0])))
    elif op == "image":
        rec.fact(f"image({a[0]})", image(fn(a[0])))
    elif op == "coimage":
        rec.fact(f"coimage({a[0]})", pl.coimage(fn(a[0])))
    elif op == "compose":
        rec.function(f"{a[1]}.{a[0]}", compose(fn(a[0]), fn(a[1])))
    elif op == "opposite":
        rel = opposite(fn(a[0]).graph())
        rec.fact(f"op({a[0]})", _fmt_pairs(rel.pairs))
        rec.fact(f"cofunction(op({a[0]}))", is_cofunction(rel))
    elif op in ("mono", "epi"):
        probe = cmd.option("probe", 2 if op == "mono" else 1)
        finder = find_mono_counterexample if op == "mono" else find_epi_counterexample
        found = finder(fn(a[0]), probe, budget)
        rec.fact(f"{op}({a[0]})", found is None)
        if found is not None:
            rec.function("probe_f", found[0])
            rec.function("probe_g", found[1])
    elif op == "subset":
        rec.fact(f"{a[0]} <= {a[1]}", sl.is_subset(sub(a[0]), sub(a[1])))
    elif op == "inclusion":
        rec.function(f"incl({a[0]},{a[1]})", sl.canonical_injection(sub(a[0]), sub(a[1])))
    elif op == "initial":
        rec.function(f"initial({a[0]})", sl.initial_map(obj(a[0])))
    elif op == "probability":
        rec.fact(f"Pr({a[0]})", sl.laplace_probability(sub(a[0])))
    elif op == "ditset":
        d = pl.ditset(part(a[0]))
        rec.fact(f"dit({a[0]})", _fmt_pairs(d.dits))
        rec.fact(f"|dit({a[0]})|", len(d))
    elif op == "refines":
        rec.fact(f"{a[0]} <= {a[1]}", pl.refines(part(a[0]), part(a[1])))
    elif op == "surjection":
        rec.function(f"can({a[0]},{a[1]})", pl.canonical_surjection(part(a[0]), part(a[1])))
    elif op == "discrete":
        rec.fact(f"1_{a[0]}", pl.discrete(obj(a[0])))
    elif op == "indiscrete":
        rec.fact(f"0_{a[0]}", pl.indiscrete(obj(a[0])))
    elif op == "terminal":
        rec.function(f"terminal({a[0]})", pl.terminal_map(obj(a[0])))
    elif op == "join":
        rec.fact(f"{a[0]} v {a[1]}", pl.join(part(a[0]), part(a[1])))
    elif op == "meet":
        rec.fact(f"{a[0]} ^ {a[1]}", pl.meet(part(a[0]), part(a[1])))
    elif op == "disjoint-union":
        rec.fact(f"{a[0]} + {a[1]}", pl.disjoint_union_partition(part(a[0]), part(a[1])))
    elif op == "entropy":
        rec.fact(f"h({a[0]})", pl.logical_entropy(part(a[0])))
    elif op == "partitions":
        parts = list(pl.enumerate_partitions(obj(a[0])))
        rec.fact("count", len(parts))
        for i, p in enumerate(parts):
            rec.fact(f"partition[{i}]", p)
    elif op == "factorize":
        surj, inj = uc.epi_mono_factorize(fn(a[0]))
        rec.function("surj", surj)
        rec.function("inj", inj)
    elif op == "coproduct":
        _construction(rec, uc.coproduct(obj(a[0]), obj(a[1])))
    elif op == "product":
        _construction(rec, uc.product(obj(a[0]), obj(a[1])))
    elif op == "boxtimes":
        apex, iso = uc.boxtimes_product(obj(a[0]), obj(a[1]))
        rec.fact("apex", apex)
        rec.function("iso", iso)
    elif op == "equalizer":
        _construction(rec, uc.equalizer(fn(a[0]), fn(a[1])))
    elif op == "coequalizer":
        _construction(rec, uc.coequalizer(fn(a[0]), fn(a[1])))
    elif op == "pushout":
        _construction(rec, uc.pushout(fn(a[0]), fn(a[1])))
    elif op == "pullback":
        _construction(rec, uc.pullback(fn(a[0]), fn(a[1])))
    elif op == "coproduct-factor":
        rec.function("mediator", uc.coproduct_factor(fn(a[0]), fn(a[1])))
    elif op == "product-factor":
        rec.function("mediator", uc.product_factor(fn(a[0]), fn(a[1])))
    elif op == "equalizer-factor":
        rec.function("mediator", uc.equalizer_factor(fn(a[0]), fn(a[1]), fn(a[2])))
    elif op == "coequalizer-factor":
        rec.function("mediator", uc.coequalizer_factor(fn(a[0]), fn(a[1]), fn(a[2])))
    elif op == "pushout-factor":
        rec.function("mediator", uc.pushout_factor(*(fn(x) for x in a)))
    elif op == "pullback-factor":
        rec.function("mediator", uc.pullback_factor(*(fn(x) for x in a)))
    elif op == "iso-boxtimes":
        X, Y = obj(a[0]), obj(a[1])
        iso = unique_iso_between_candidates(uc.boxtimes_candidate(X, Y), uc.product(X, Y), budget)
        rec.function("iso", iso)
    elif op == "iso-swap":
        X, Y = obj(a[0]), obj(a[1])
        iso = unique_iso_between_candidates(uc.product(X, Y), uc.swapped_product(X, Y), budget)
        rec.function("iso", iso)
    elif op == "zero":
        P, Q = env.objects[a[0]], env.objects[a[1]]
        rec.function("zero", ps.zero_arrow(P, Q).underlying)
    elif op == "wedge":
        _construction(rec, ps.wedge_coproduct(env.objects[a[0]], env.objects[a[1]]))
    elif op == "pprod":
        _construction(rec, ps.pointed_product(env.objects[a[0]], env.objects[a[1]]))
    elif op == "wedge-to-prod":
        m = ps.canonical_wedge_to_product(env.objects[a[0]], env.objects[a[1]])
        rec.function("can", m.underlying)
        rec.fact("injective", is_injective(m.underlying))
        rec.fact("surjective", is_surjective(m.underlying))
    else:  # pragma: no cover - parse_script rejects unknown ops
        raise CanonError(f"unknown command {op}")


def _verify(env, cmd: Command, rec: Record, budget: int):
    kind, *rest = cmd.args
    kinds, n_legs = UMP_SHAPES[kind]
    diag_args = rest[: len(kinds)]
    legs = rest[len(kinds) + 1 :]
    for k, a in zip(kinds, diag_args):
        rec.inputs[a] = _render_input(env, k, a)
    for a in legs:
        rec.inputs[a] = _render_input(env, "fn", a)
    if kind in ("wedge", "pprod"):
        P, Q = (env.objects[a] for a in diag_args)
        c = ps.wedge_coproduct(P, Q) if kind == "wedge" else ps.pointed_product(P, Q)
        cone = [env.pointed(a) for a in legs]
    else:
        if kinds[0] == "obj":
            X, Y = (env.carrier(a) for a in diag_args)
            c = uc.coproduct(X, Y) if kind == "coproduct" else uc.product(X, Y)
        else:
            f, g = (env.functions[a] for a in diag_args)
            c = getattr(uc, kind)(f, g)
        cone = [env.functions[a] for a in legs]
    report = verify_ump(c, cone, budget)
    rec.fact("commutes", report.commutes)
    rec.fact("mediating_count", report.mediating_count)
    if report.mediator is not None:
        rec.function("mediator", report.mediator)
        if report.commutes:
            recipe = uc.factor(c, dict(zip(c.legs, cone)))
            rec.fact("matches_recipe", recipe == report.mediator)
    for i, w in enumerate(report.witnesses):
        rec.fact(f"witness[{i}]", w)
