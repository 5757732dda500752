"""Line-oriented text format for declaring sets, subsets, partitions,
functions and pointed sets, and for issuing ``compute`` commands.

::

    set X = {1,2,3}
    subset S of X = {1,2}
    partition pi on X = {{1,2},{3}}
    fn f : X -> Y { 1->p, 2->p, 3->q }
    pset P = {x0,x1} base x0
    compute coequalizer f g
    compute verify-ump product X Y cone f g --budget 100000

Everything after ``#`` on a line is a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import CanonError
from .finset import FinSet, Function, POINT, check_label, sorted_labels
from .partitions import Partition
from .pointed import PointedMap, PointedObj
from .subsets import Subset


class ScriptError(CanonError):
    """A problem in a script, located by 1-based line and column."""

    def __init__(self, line: int, col: int, message: str):
        self.line = line
        self.col = col
        self.message = message
        super().__init__(f"line {line}, col {col}: {message}")


class DslSyntaxError(ScriptError):
    def __init__(self, line, col, expected, found=None):
        self.expected = expected
        msg = f"expected {expected}" + (f", found {found!r}" if found is not None else "")
        super().__init__(line, col, msg)


class UnknownReference(ScriptError):
    pass


class DuplicateName(ScriptError):
    pass


class InvalidDeclaration(ScriptError):
    """A syntactically fine declaration the library rejects (e.g. a partial map)."""


# --- lexing ---------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>\#.*)
  | (?P<arrow>->)
  | (?P<punct>[{}(),=:])
  | (?P<word>(?:(?!->)[^\s{}(),=:\#])+)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "word", "arrow" or the punctuation character itself
    text: str
    col: int


def tokenize(line: str, lineno: int) -> list[Token]:
    out = []
    pos = 0
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if m is None:
            raise DslSyntaxError(lineno, pos + 1, "a token", line[pos])
        kind = m.lastgroup
        if kind == "comment":
            break
        if kind == "punct":
            if m.group() in "()":
                raise DslSyntaxError(lineno, pos + 1, "a label or name", m.group())
            out.append(Token(m.group(), m.group(), pos + 1))
        elif kind != "ws":
            out.append(Token(kind, m.group(), pos + 1))
        pos = m.end()
    return out


class _Cursor:
    def __init__(self, tokens: list[Token], lineno: int, line: str):
        self.tokens = tokens
        self.i = 0
        self.lineno = lineno
        self.end_col = len(line.rstrip()) + 1

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self, kind: str, expected: str) -> Token:
        tok = self.peek()
        if tok is None:
            raise DslSyntaxError(self.lineno, self.end_col, expected, "end of line")
        if tok.kind != kind:
            raise DslSyntaxError(self.lineno, tok.col, expected, tok.text)
        self.i += 1
        return tok

    def keyword(self, word: str):
        tok = self.next("word", f"'{word}'")
        if tok.text != word:
            raise DslSyntaxError(self.lineno, tok.col, f"'{word}'", tok.text)

    def done(self):
        tok = self.peek()
        if tok is not None:
            raise DslSyntaxError(self.lineno, tok.col, "end of line", tok.text)

    def label(self) -> tuple[str, int]:
        tok = self.next("word", "a label")
        try:
            check_label(tok.text)
        except CanonError:
            raise DslSyntaxError(self.lineno, tok.col, "a label", tok.text) from None
        if tok.text == POINT:
            raise DslSyntaxError(self.lineno, tok.col, "a label (• is reserved)", tok.text)
        return tok.text, tok.col

    def name(self) -> tuple[str, int]:
        tok = self.next("word", "a name")
        return tok.text, tok.col

    def label_set(self) -> list[str]:
        self.next("{", "'{'")
        labels = []
        if self.peek() is not None and self.peek().kind == "}":
            self.i += 1
            return labels
        while True:
            labels.append(self.label()[0])
            tok = self.peek()
            if tok is not None and tok.kind == ",":
                self.i += 1
                continue
            self.next("}", "',' or '}'")
            return labels


# --- statements -----------------------------------------------------------


@dataclass(frozen=True)
class SetDecl:
    name: str
    labels: tuple
    line: int = field(default=0, compare=False)
    col: int = field(default=1, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", _sorted(self.labels))

    def render(self):
        return f"set {self.name} = {_braces(self.labels)}"


@dataclass(frozen=True)
class SubsetDecl:
    name: str
    universe: str
    labels: tuple
    line: int = field(default=0, compare=False)
    col: int = field(default=1, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", _sorted(self.labels))

    def render(self):
        return f"subset {self.name} of {self.universe} = {_braces(self.labels)}"


@dataclass(frozen=True)
class PartitionDecl:
    name: str
    universe: str
    blocks: tuple
    line: int = field(default=0, compare=False)
    col: int = field(default=1, compare=False)

    def __post_init__(self):
        blocks = [_sorted(b) for b in self.blocks]
        object.__setattr__(self, "blocks", tuple(sorted(blocks, key=lambda b: b[:1])))

    def render(self):
        return f"partition {self.name} on {self.universe} = {{{','.join(_braces(b) for b in self.blocks)}}}"


@dataclass(frozen=True)
class FnDecl:
    name: str
    dom: str
    cod: str
    pairs: tuple
    line: int = field(default=0, compare=False)
    col: int = field(default=1, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(sorted(self.pairs)))

    def render(self):
        body = "".join(f" {x}->{y}," for x, y in self.pairs).rstrip(",")
        return f"fn {self.name} : {self.dom} -> {self.cod} {{{body} }}"


@dataclass(frozen=True)
class PsetDecl:
    name: str
    labels: tuple
    base: str
    line: int = field(default=0, compare=False)
    col: int = field(default=1, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", _sorted(self.labels))

    def render(self):
        return f"pset {self.name} = {_braces(self.labels)} base {self.base}"


@dataclass(frozen=True)
class Command:
    op: str
    args: tuple
    options: tuple = ()  # sorted (flag, value) pairs
    line: int = field(default=0, compare=False)
    col: int = field(default=1, compare=False)

    def render(self):
        opts = "".join(f" --{k} {v}" for k, v in self.options)
        return " ".join(("compute", self.op) + self.args) + opts

    def option(self, key: str, default=None):
        return dict(self.options).get(key, default)


def _sorted(labels) -> tuple:
    return tuple(sorted_labels(labels))


def _braces(labels) -> str:
    return "{" + ",".join(labels) + "}"


# --- command signatures ----------------------------------------------------

# argument kinds: "obj" (set or pset), "pset", "subset", "partition", "fn"
SIGNATURES = {
    "classify": ("fn",),
    "injective": ("fn",),
    "surjective": ("fn",),
    "image": ("fn",),
    "coimage": ("fn",),
    "compose": ("fn", "fn"),
    "opposite": ("fn",),
    "mono": ("fn",),
    "epi": ("fn",),
    "subset": ("subset", "subset"),
    "inclusion": ("subset", "subset"),
    "initial": ("obj",),
    "probability": ("subset",),
    "ditset": ("partition",),
    "refines": ("partition", "partition"),
    "surjection": ("partition", "partition"),
    "discrete": ("obj",),
    "indiscrete": ("obj",),
    "terminal": ("obj",),
    "join": ("partition", "partition"),
    "meet": ("partition", "partition"),
    "disjoint-union": ("partition", "partition"),
    "entropy": ("partition",),
    "partitions": ("obj",),
    "factorize": ("fn",),
    "coproduct": ("obj", "obj"),
    "coproduct-factor": ("fn", "fn"),
    "product": ("obj", "obj"),
    "boxtimes": ("obj", "obj"),
    "product-factor": ("fn", "fn"),
    "equalizer": ("fn", "fn"),
    "equalizer-factor": ("fn", "fn", "fn"),
    "coequalizer": ("fn", "fn"),
    "coequalizer-factor": ("fn", "fn", "fn"),
    "pushout": ("fn", "fn"),
    "pushout-factor": ("fn", "fn", "fn", "fn"),
    "pullback": ("fn", "fn"),
    "pullback-factor": ("fn", "fn", "fn", "fn"),
    "iso-boxtimes": ("obj", "obj"),
    "iso-swap": ("obj", "obj"),
    "wedge": ("pset", "pset"),
    "pprod": ("pset", "pset"),
    "zero": ("pset", "pset"),
    "wedge-to-prod": ("pset", "pset"),
}

# verify-ump <kind> <diagram args> cone <legs>
UMP_SHAPES = {
    "product": (("obj", "obj"), 2),
    "coproduct": (("obj", "obj"), 2),
    "equalizer": (("fn", "fn"), 1),
    "coequalizer": (("fn", "fn"), 1),
    "pushout": (("fn", "fn"), 2),
    "pullback": (("fn", "fn"), 2),
    "wedge": (("pset", "pset"), 2),
    "pprod": (("pset", "pset"), 2),
}

OPTIONS = {"budget", "probe"}


# --- environment ------------------------------------------------------------


class Environment:
    """Named bindings built from declarations, in declaration order."""

    def __init__(self):
        self.objects: dict[str, FinSet | PointedObj] = {}
        self.subsets: dict[str, Subset] = {}
        self.partitions: dict[str, Partition] = {}
        self.functions: dict[str, Function] = {}
        self.fn_ends: dict[str, tuple[str, str]] = {}

    def table(self, kind: str) -> dict:
        return {
            "obj": self.objects,
            "pset": self.objects,
            "subset": self.subsets,
            "partition": self.partitions,
            "fn": self.functions,
        }[kind]

    def carrier(self, name: str) -> FinSet:
        obj = self.objects[name]
        return obj.carrier if isinstance(obj, PointedObj) else obj

    def pointed(self, name: str) -> PointedMap:
        dom, cod = self.fn_ends[name]
        return PointedMap(self.functions[name], self.objects[dom], self.objects[cod])

    def resolve(self, kind: str, name: str, line: int, col: int):
        table = self.table(kind)
        if name not in table:
            raise UnknownReference(line, col, f"unknown {_KIND_WORDS[kind]} {name!r}")
        if kind == "pset" and not isinstance(table[name], PointedObj):
            raise UnknownReference(line, col, f"{name!r} is not a pointed set")
        return table[name]


_KIND_WORDS = {"obj": "set", "pset": "pointed set", "subset": "subset", "partition": "partition", "fn": "function"}


def _declare(table: dict, name: str, value, line: int, col: int):
    if name in table:
        raise DuplicateName(line, col, f"{name!r} is already declared")
    table[name] = value


def _wrap(line, col, exc: CanonError) -> InvalidDeclaration:
    return InvalidDeclaration(line, col, f"{type(exc).__name__}: {exc}")


def bind(env: Environment, stmt) -> None:
    """Validate ``stmt`` against ``env`` and add its binding."""
    line, col = stmt.line, stmt.col
    try:
        if isinstance(stmt, SetDecl):
            _declare(env.objects, stmt.name, FinSet(stmt.labels), line, col)
        elif isinstance(stmt, PsetDecl):
            _declare(env.objects, stmt.name, PointedObj(FinSet(stmt.labels), stmt.base), line, col)
        elif isinstance(stmt, SubsetDecl):
            U = env.resolve("obj", stmt.universe, line, col)
            U = U.carrier if isinstance(U, PointedObj) else U
            _declare(env.subsets, stmt.name, Subset(U, stmt.labels), line, col)
        elif isinstance(stmt, PartitionDecl):
            U = env.resolve("obj", stmt.universe, line, col)
            U = U.carrier if isinstance(U, PointedObj) else U
            _declare(env.partitions, stmt.name, Partition(U, stmt.blocks), line, col)
        elif isinstance(stmt, FnDecl):
            env.resolve("obj", stmt.dom, line, col)
            env.resolve("obj", stmt.cod, line, col)
            _bind_fn(env, stmt)
        elif isinstance(stmt, Command):
            _check_command(env, stmt)
    except ScriptError:
        raise
    except CanonError as exc:
        raise _wrap(line, col, exc) from None


def _bind_fn(env: Environment, stmt: FnDecl):
    from .finset import Relation, as_function

    dom, cod = env.carrier(stmt.dom), env.carrier(stmt.cod)
    f = as_function(Relation(dom, cod, stmt.pairs))
    _declare(env.functions, stmt.name, f, stmt.line, stmt.col)
    env.fn_ends[stmt.name] = (stmt.dom, stmt.cod)


def _check_command(env: Environment, cmd: Command):
    line, col = cmd.line, cmd.col
    if cmd.op == "verify-ump":
        args = list(cmd.args)
        if not args or args[0] not in UMP_SHAPES:
            raise DslSyntaxError(line, col, f"a construction kind ({', '.join(UMP_SHAPES)})", args[0] if args else None)
        kinds, n_legs = UMP_SHAPES[args[0]]
        if len(args) != 1 + len(kinds) + 1 + n_legs or args[1 + len(kinds)] != "cone":
            raise DslSyntaxError(line, col, f"verify-ump {args[0]} <{len(kinds)} args> cone <{n_legs} maps>")
        for k, a in zip(kinds, args[1 : 1 + len(kinds)]):
            env.resolve(k, a, line, col)
        for a in args[2 + len(kinds) :]:
            env.resolve("fn", a, line, col)
        return
    if cmd.op not in SIGNATURES:
        raise DslSyntaxError(line, col, "a known command", cmd.op)
    kinds = SIGNATURES[cmd.op]
    if len(cmd.args) != len(kinds):
        raise DslSyntaxError(line, col, f"{len(kinds)} argument(s) for {cmd.op}", " ".join(cmd.args))
    for k, a in zip(kinds, cmd.args):
        env.resolve(k, a, line, col)


# --- parsing ----------------------------------------------------------------


@dataclass
class Script:
    statements: list
    env: Environment

    def render(self) -> str:
        return "".join(s.render() + "\n" for s in self.statements)

    def commands(self) -> list[Command]:
        return [s for s in self.statements if isinstance(s, Command)]


def parse_statement(line: str, lineno: int):
    toks = tokenize(line, lineno)
    if not toks:
        return None
    cur = _Cursor(toks, lineno, line)
    head = cur.next("word", "a statement keyword")
    col = head.col
    kw = head.text
    if kw == "set":
        name, _ = cur.name()
        cur.next("=", "'='")
        labels = cur.label_set()
        cur.done()
        return SetDecl(name, tuple(labels), lineno, col)
    if kw == "subset":
        name, _ = cur.name()
        cur.keyword("of")
        universe, _ = cur.name()
        cur.next("=", "'='")
        labels = cur.label_set()
        cur.done()
        return SubsetDecl(name, universe, tuple(labels), lineno, col)
    if kw == "partition":
        name, _ = cur.name()
        cur.keyword("on")
        universe, _ = cur.name()
        cur.next("=", "'='")
        cur.next("{", "'{'")
        blocks = []
        if cur.peek() is not None and cur.peek().kind == "}":
            cur.i += 1
        else:
            while True:
                blocks.append(tuple(cur.label_set()))
                tok = cur.peek()
                if tok is not None and tok.kind == ",":
                    cur.i += 1
                    continue
                cur.next("}", "',' or '}'")
                break
        cur.done()
        return PartitionDecl(name, universe, tuple(blocks), lineno, col)
    if kw == "fn":
        name, _ = cur.name()
        cur.next(":", "':'")
        dom, _ = cur.name()
        cur.next("arrow", "'->'")
        cod, _ = cur.name()
        cur.next("{", "'{'")
        pairs = []
        if cur.peek() is not None and cur.peek().kind == "}":
            cur.i += 1
        else:
            while True:
                x, _ = cur.label()
                cur.next("arrow", "'->'")
                y, _ = cur.label()
                pairs.append((x, y))
                tok = cur.peek()
                if tok is not None and tok.kind == ",":
                    cur.i += 1
                    continue
                cur.next("}", "',' or '}'")
                break
        cur.done()
        return FnDecl(name, dom, cod, tuple(pairs), lineno, col)
    if kw == "pset":
        name, _ = cur.name()
        cur.next("=", "'='")
        labels = cur.label_set()
        cur.keyword("base")
        base, _ = cur.label()
        cur.done()
        return PsetDecl(name, tuple(labels), base, lineno, col)
    if kw == "compute":
        op, _ = cur.name()
        args, options = [], {}
        while cur.peek() is not None:
            tok = cur.next("word", "an argument")
            if tok.text.startswith("--"):
                key = tok.text[2:]
                if key not in OPTIONS:
                    raise DslSyntaxError(lineno, tok.col, f"an option ({', '.join('--' + o for o in sorted(OPTIONS))})", tok.text)
                val = cur.next("word", f"a value for --{key}")
                if not val.text.isdigit() or int(val.text) < 1:
                    raise DslSyntaxError(lineno, val.col, "a positive integer", val.text)
                options[key] = int(val.text)
            else:
                args.append(tok.text)
        return Command(op, tuple(args), tuple(sorted(options.items())), lineno, col)
    raise DslSyntaxError(lineno, col, "set, subset, partition, fn, pset or compute", kw)


def parse_script(text: str) -> Script:
    """Parse and validate a whole script; the first error aborts."""
    env = Environment()
    statements = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stmt = parse_statement(line, lineno)
        if stmt is None:
            continue
        bind(env, stmt)
        statements.append(stmt)
    return Script(statements, env)


def canonical(text: str) -> str:
    """Canonical form of a script: comments and blank lines dropped, spacing
    normalized, labels sorted."""
    return parse_script(text).render()
