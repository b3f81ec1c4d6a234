"""Text formats: groupoids (.gpd), symmetroids (.smd) and groupoid functions (.fun).

A .gpd file holds either one constructor expression::

    product(pair(2), group(Z2))

built from ``pair(n)``, ``group(Zn|Sn|K4|[[...]])``, ``product(a, b)``,
``union(a, b)``, ``action(group, [[...]])``, ``named(NAME)`` and
``trivial()``, or an explicit listing::

    objects + -
    arrow 1+ : + -> +
    arrow u : + -> -
    unit + = 1+
    compose u 1+ = u

``compose B A = C`` reads B∘A = C.  Compositions with a unit may be omitted,
and units may be omitted when the unit loop composes with itself.  Inverses
are derived.  ``#`` starts a comment.

A .smd file is a groupoid (``base EXPR`` or a listing) followed by::

    cell ID : SRC => TGT [+|-]
    vcompose UPPER LOWER = RESULT
    hcompose LEFT RIGHT = RESULT

A .fun file has one ``LABEL RE [IM]`` line per arrow; absent arrows are 0.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

from .core import (
    UNDEF, FiniteGroup, FiniteGroupoid, SymmetroidsError, action_groupoid,
    direct_product, disjoint_union, group_groupoid, named, named_group,
    pair_groupoid, trivial_groupoid, verify_groupoid_axioms,
)


class DSLError(SymmetroidsError, ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message, self.line, self.col = message, line, col
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(where + message)


# ---------------------------------------------------------------- AST

@dataclass(frozen=True)
class Num:
    value: int
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Sym:
    name: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ListLit:
    items: tuple
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Listing:
    objects: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]
    units: tuple[tuple[str, str], ...] = ()
    compose: tuple[tuple[str, str, str], ...] = ()
    # (statement kind, index) -> (line number, line text), for diagnostics
    where: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def locate(self, kind: str, i: int, token: str) -> tuple[int | None, int | None]:
        if (kind, i) not in self.where:
            return None, None
        ln, text = self.where[kind, i]
        return ln, text.find(token) + 1 if token in text else 1


Expr = Union[Num, Sym, ListLit, Call]
GroupoidSpec = Union[Call, Listing]


# ---------------------------------------------------------------- lexing

_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[(),\[\]]))")


def _strip_comments(text: str) -> list[str]:
    return [ln.split("#", 1)[0].rstrip() for ln in text.splitlines()]


def _lex(text: str, first_line: int = 1):
    out = []
    for ln, line in enumerate(text.splitlines(), start=first_line):
        pos = 0
        line = line.split("#", 1)[0]
        while pos < len(line):
            if line[pos:].strip() == "":
                break
            m = _TOKEN.match(line, pos)
            if not m:
                col = pos + len(line[pos:]) - len(line[pos:].lstrip()) + 1
                raise DSLError(f"unexpected character {line[col - 1]!r}", ln, col)
            kind = m.lastgroup
            col = m.start(kind) + 1
            out.append((kind, m.group(kind), ln, col))
            pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self):
        t = self.peek()
        if t is None:
            last = self.toks[-1] if self.toks else ("", "", 1, 0)
            raise DSLError("unexpected end of input", last[2], last[3] + len(last[1]))
        self.i += 1
        return t

    def expect(self, value):
        t = self.next()
        if t[1] != value:
            raise DSLError(f"expected {value!r}, found {t[1]!r}", t[2], t[3])
        return t

    def expr(self) -> Expr:
        kind, val, ln, col = self.next()
        if kind == "int":
            return Num(int(val), ln, col)
        if val == "[":
            items = []
            if self.peek() and self.peek()[1] == "]":
                self.next()
                return ListLit((), ln, col)
            while True:
                items.append(self.expr())
                t = self.next()
                if t[1] == "]":
                    return ListLit(tuple(items), ln, col)
                if t[1] != ",":
                    raise DSLError(f"expected ',' or ']', found {t[1]!r}", t[2], t[3])
        if kind == "name":
            if self.peek() and self.peek()[1] == "(":
                self.next()
                args = []
                if self.peek() and self.peek()[1] == ")":
                    self.next()
                    return Call(val, (), ln, col)
                while True:
                    args.append(self.expr())
                    t = self.next()
                    if t[1] == ")":
                        return Call(val, tuple(args), ln, col)
                    if t[1] != ",":
                        raise DSLError(f"expected ',' or ')', found {t[1]!r}", t[2], t[3])
            return Sym(val, ln, col)
        raise DSLError(f"unexpected {val!r}", ln, col)


def _parse_expression(text: str, first_line: int = 1) -> Call:
    toks = _lex(text, first_line)
    if not toks:
        raise DSLError("empty specification", first_line, 1)
    p = _Parser(toks)
    e = p.expr()
    if p.peek() is not None:
        t = p.peek()
        raise DSLError(f"trailing input {t[1]!r}", t[2], t[3])
    if not isinstance(e, Call):
        raise DSLError("a groupoid specification must be a constructor call", e.line, e.col)
    return e


def _parse_listing(lines: list[tuple[int, str]]) -> Listing:
    objects: list[str] | None = None
    arrows, units, comp = [], [], []
    where = {}
    for ln, line in lines:
        words = line.split()
        head = words[0]

        def bad(msg, k=0):
            col = line.index(words[k]) + 1 if k < len(words) else len(line) + 1
            raise DSLError(msg, ln, col)

        if head == "objects":
            if objects is not None:
                bad("objects declared twice")
            if len(words) < 2:
                bad("objects needs at least one label", 1)
            objects = words[1:]
        elif head == "arrow":
            if len(words) != 6 or words[2] != ":" or words[4] != "->":
                bad("expected 'arrow LABEL : SRC -> TGT'")
            where["arrow", len(arrows)] = (ln, line)
            arrows.append((words[1], words[3], words[5]))
        elif head == "unit":
            if len(words) != 4 or words[2] != "=":
                bad("expected 'unit OBJECT = ARROW'")
            where["unit", len(units)] = (ln, line)
            units.append((words[1], words[3]))
        elif head == "compose":
            if len(words) != 5 or words[3] != "=":
                bad("expected 'compose B A = C'")
            where["compose", len(comp)] = (ln, line)
            comp.append((words[1], words[2], words[4]))
        else:
            bad(f"unknown statement {head!r}")
    if objects is None:
        raise DSLError("listing has no objects line", lines[0][0] if lines else 1, 1)
    return Listing(tuple(objects), tuple(arrows), tuple(units), tuple(comp), where)


def parse_spec(text: str) -> GroupoidSpec:
    """Parse a .gpd text into a constructor Call or a Listing."""
    raw = _strip_comments(text)
    lines = [(i + 1, ln) for i, ln in enumerate(raw) if ln.strip()]
    if not lines:
        raise DSLError("empty specification", 1, 1)
    if lines[0][1].split()[0] == "objects":
        return _parse_listing(lines)
    return _parse_expression(text)


# ---------------------------------------------------------------- printing

def _print_expr(e: Expr) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Sym):
        return e.name
    if isinstance(e, ListLit):
        return "[" + ", ".join(_print_expr(x) for x in e.items) + "]"
    return f"{e.name}(" + ", ".join(_print_expr(a) for a in e.args) + ")"


def print_spec(spec: GroupoidSpec) -> str:
    """Canonical text; ``parse_spec(print_spec(x)) == x``."""
    if isinstance(spec, Listing):
        out = ["objects " + " ".join(spec.objects)]
        out += [f"arrow {a} : {s} -> {t}" for a, s, t in spec.arrows]
        out += [f"unit {x} = {u}" for x, u in spec.units]
        out += [f"compose {b} {a} = {c}" for b, a, c in spec.compose]
        return "\n".join(out) + "\n"
    return _print_expr(spec) + "\n"


# ---------------------------------------------------------------- building

def _group_from(e: Expr) -> FiniteGroup:
    if isinstance(e, Call) and e.name == "group" and len(e.args) == 1:
        e = e.args[0]
    if isinstance(e, Sym):
        try:
            return named_group(e.name)
        except KeyError as exc:
            raise DSLError(str(exc.args[0]), e.line, e.col) from None
    if isinstance(e, ListLit):
        try:
            return FiniteGroup(_int_table(e))
        except SymmetroidsError as exc:
            raise DSLError(f"invalid group table: {exc}", e.line, e.col) from None
    raise DSLError("expected a group name or multiplication table", e.line, e.col)


def _int_table(e: ListLit) -> list[list[int]]:
    rows = []
    for r in e.items:
        if not isinstance(r, ListLit) or not all(isinstance(x, Num) for x in r.items):
            raise DSLError("expected a table of integers", r.line, r.col)
        rows.append([x.value for x in r.items])
    return rows


def _arity(e: Call, n: int):
    if len(e.args) != n:
        raise DSLError(f"{e.name} takes {n} argument(s), got {len(e.args)}", e.line, e.col)


def _build_call(e: Expr) -> FiniteGroupoid:
    if not isinstance(e, Call):
        raise DSLError("expected a groupoid constructor", e.line, e.col)
    name = e.name
    if name == "pair":
        _arity(e, 1)
        n = e.args[0]
        if not isinstance(n, Num) or n.value < 1:
            raise DSLError("pair(n) needs a positive integer", n.line, n.col)
        return pair_groupoid(n.value)
    if name == "group":
        _arity(e, 1)
        return group_groupoid(_group_from(e.args[0]))
    if name in ("product", "union"):
        _arity(e, 2)
        a, b = (_build_call(x) for x in e.args)
        return direct_product(a, b) if name == "product" else disjoint_union(a, b)
    if name == "action":
        _arity(e, 2)
        grp = _group_from(e.args[0])
        tab = e.args[1]
        if not isinstance(tab, ListLit):
            raise DSLError("action needs a table act[g][x]", tab.line, tab.col)
        try:
            return action_groupoid(grp, np.array(_int_table(tab), dtype=np.int64))
        except (SymmetroidsError, ValueError) as exc:
            raise DSLError(f"invalid action: {exc}", tab.line, tab.col) from None
    if name == "named":
        _arity(e, 1)
        a = e.args[0]
        if not isinstance(a, Sym):
            raise DSLError("named(...) takes a bare name", a.line, a.col)
        try:
            return named(a.name)
        except KeyError as exc:
            raise DSLError(str(exc.args[0]), a.line, a.col) from None
    if name == "trivial":
        _arity(e, 0)
        return trivial_groupoid()
    raise DSLError(f"unknown constructor {name!r}", e.line, e.col)


def _build_listing(spec: Listing) -> FiniteGroupoid:
    objs = list(spec.objects)
    oidx = {o: i for i, o in enumerate(objs)}
    if len(oidx) != len(objs):
        raise DSLError("duplicate object label")
    labels = [a for a, _, _ in spec.arrows]
    aidx = {a: i for i, a in enumerate(labels)}
    if len(aidx) != len(labels):
        raise DSLError("duplicate arrow label")

    def obj(o, kind="", i=0):
        if o not in oidx:
            raise DSLError(f"unknown object {o!r}", *spec.locate(kind, i, o))
        return oidx[o]

    def arr(a, kind="", i=0):
        if a not in aidx:
            raise DSLError(f"unknown arrow {a!r}", *spec.locate(kind, i, a))
        return aidx[a]

    m, n = len(labels), len(objs)
    if m == 0:
        raise DSLError("listing has no arrows")
    src = np.array([obj(s, "arrow", i) for i, (_, s, _) in enumerate(spec.arrows)], dtype=np.int64)
    tgt = np.array([obj(t, "arrow", i) for i, (_, _, t) in enumerate(spec.arrows)], dtype=np.int64)
    comp = np.full((m, m), UNDEF, dtype=np.int64)
    for i, (b, a, c) in enumerate(spec.compose):
        bi, ai, ci = arr(b, "compose", i), arr(a, "compose", i), arr(c, "compose", i)
        if src[bi] != tgt[ai]:
            raise DSLError(f"compose {b} {a}: source of {b} is not the target of {a}",
                           *spec.locate("compose", i, b))
        if comp[bi, ai] != UNDEF and comp[bi, ai] != ci:
            raise DSLError(f"compose {b} {a} given twice with different results",
                           *spec.locate("compose", i, b))
        comp[bi, ai] = ci
    units = np.full(n, UNDEF, dtype=np.int64)
    for i, (o, u) in enumerate(spec.units):
        units[obj(o, "unit", i)] = arr(u, "unit", i)
    for x in range(n):
        if units[x] == UNDEF:
            loops = [a for a in range(m) if src[a] == x and tgt[a] == x]
            if len(loops) > 1:
                loops = [a for a in loops if comp[a, a] == a]
            if len(loops) != 1:
                raise DSLError(f"cannot infer the unit at object {objs[x]!r}; add 'unit {objs[x]} = ...'")
            units[x] = loops[0]
        u = units[x]
        if src[u] != x or tgt[u] != x:
            raise DSLError(f"unit at {objs[x]!r} is not a loop at {objs[x]!r}")
    for a in range(m):
        if comp[units[tgt[a]], a] == UNDEF:
            comp[units[tgt[a]], a] = a
        if comp[a, units[src[a]]] == UNDEF:
            comp[a, units[src[a]]] = a
    missing = [(b, a) for b in range(m) for a in range(m) if src[b] == tgt[a] and comp[b, a] == UNDEF]
    if missing:
        b, a = missing[0]
        raise DSLError(f"composition {labels[b]} after {labels[a]} is not given")
    inv = np.full(m, UNDEF, dtype=np.int64)
    for a in range(m):
        hits = [b for b in range(m) if src[b] == tgt[a] and tgt[b] == src[a]
                and comp[b, a] == units[src[a]] and comp[a, b] == units[tgt[a]]]
        if not hits:
            raise DSLError(f"arrow {labels[a]!r} has no inverse")
        inv[a] = hits[0]
    g = FiniteGroupoid(src, tgt, units, comp, inv, objs, labels)
    rep = verify_groupoid_axioms(g)
    if not rep.ok:
        f = rep.failures()[0] if rep.failures() else rep.checks[0]
        raise DSLError(f"listing violates the groupoid axioms: {f.name} (counterexample {f.counterexample})")
    return g


def build_groupoid(spec: GroupoidSpec) -> FiniteGroupoid:
    if isinstance(spec, Listing):
        return _build_listing(spec)
    return _build_call(spec)


def to_listing(g: FiniteGroupoid) -> Listing:
    """Explicit listing of any groupoid; unit compositions are left implicit."""
    lab, ol = g.arrow_labels, g.object_labels
    for labels in (lab, ol):
        if any(not l or any(ch.isspace() or ch == "#" for ch in l) for l in labels):
            raise ValueError("labels must be non-empty and free of whitespace and '#'")
    unit_set = set(int(u) for u in g.units)
    comp = tuple((lab[b], lab[a], lab[int(g.compose[b, a])])
                 for b in range(g.n_arrows) for a in range(g.n_arrows)
                 if g.compose[b, a] >= 0 and b not in unit_set and a not in unit_set)
    return Listing(tuple(ol),
                   tuple((lab[a], ol[g.source[a]], ol[g.target[a]]) for a in range(g.n_arrows)),
                   tuple((ol[x], lab[int(g.units[x])]) for x in range(g.n_objects)), comp)


def loads_groupoid(text: str) -> FiniteGroupoid:
    return build_groupoid(parse_spec(text))


def load_groupoid(path) -> FiniteGroupoid:
    return loads_groupoid(Path(path).read_text(encoding="utf-8"))


def dumps_groupoid(g: FiniteGroupoid) -> str:
    return print_spec(to_listing(g))


# ---------------------------------------------------------------- symmetroid files

@dataclass(frozen=True)
class SymmetroidSpec:
    base: GroupoidSpec
    cells: tuple[tuple[str, str, str, int], ...]
    vertical: tuple[tuple[str, str, str], ...] = ()
    horizontal: tuple[tuple[str, str, str], ...] = ()
    # (statement kind, index) -> (line number, line text), for diagnostics
    where: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def locate(self, kind: str, i: int, token: str) -> tuple[int | None, int | None]:
        if (kind, i) not in self.where:
            return None, None
        ln, text = self.where[kind, i]
        return ln, text.find(token) + 1 if token in text else 1


def parse_symmetroid(text: str) -> SymmetroidSpec:
    raw = _strip_comments(text)
    base_lines, cells, vert, hor = [], [], [], []
    where: dict = {}
    for i, line in enumerate(raw, start=1):
        words = line.split()
        if not words:
            base_lines.append("")
            continue
        head = words[0]
        if head == "cell":
            if len(words) not in (6, 7) or words[2] != ":" or words[4] != "=>":
                raise DSLError("expected 'cell ID : SRC => TGT [+|-]'", i, 1)
            par = 1
            if len(words) == 7:
                if words[6] not in "+-" or len(words[6]) != 1:
                    raise DSLError(f"parity must be + or -, found {words[6]!r}", i, line.rindex(words[6]) + 1)
                par = 1 if words[6] == "+" else -1
            where["cell", len(cells)] = (i, line)
            cells.append((words[1], words[3], words[5], par))
            base_lines.append("")
        elif head in ("vcompose", "hcompose"):
            if len(words) != 5 or words[3] != "=":
                raise DSLError(f"expected '{head} X Y = Z'", i, 1)
            dest = vert if head == "vcompose" else hor
            where[head, len(dest)] = (i, line)
            dest.append((words[1], words[2], words[4]))
            base_lines.append("")
        elif head == "base":
            base_lines.append(" " * (line.index("base") + 4) + line[line.index("base") + 4:])
        else:
            base_lines.append(line)
    base = parse_spec("\n".join(base_lines))
    return SymmetroidSpec(base, tuple(cells), tuple(vert), tuple(hor), where)


def print_symmetroid(spec: SymmetroidSpec) -> str:
    base = print_spec(spec.base)
    if isinstance(spec.base, Call):
        base = "base " + base
    out = [base.rstrip("\n")]
    out += [f"cell {c} : {s} => {t} {'+' if p > 0 else '-'}" for c, s, t, p in spec.cells]
    out += [f"vcompose {u} {l} = {r}" for u, l, r in spec.vertical]
    out += [f"hcompose {a} {b} = {r}" for a, b, r in spec.horizontal]
    return "\n".join(out) + "\n"


def build_symmetroid(spec: SymmetroidSpec, validate: bool = True, caps=None):
    from .symmetroid import user_symmetroid

    g = build_groupoid(spec.base)
    for i, (cid, s, t, _) in enumerate(spec.cells):
        for lab in (s, t):
            if lab not in g.arrow_labels:
                raise DSLError(f"cell {cid}: unknown arrow {lab!r}", *spec.locate("cell", i, lab))
    ids = {c[0] for c in spec.cells} | {f"1[{l}]" for l in g.arrow_labels}
    for kind, entries in (("vcompose", spec.vertical), ("hcompose", spec.horizontal)):
        for i, entry in enumerate(entries):
            for c in entry:
                if c not in ids:
                    raise DSLError(f"unknown cell {c!r} in composition entry", *spec.locate(kind, i, c))
    return user_symmetroid(g, list(spec.cells),
                           vertical={(u, l): r for u, l, r in spec.vertical},
                           horizontal={(a, b): r for a, b, r in spec.horizontal},
                           validate=validate, caps=caps)


def loads_symmetroid(text: str, validate: bool = True, caps=None):
    return build_symmetroid(parse_symmetroid(text), validate, caps)


def load_symmetroid(path, validate: bool = True, caps=None):
    return loads_symmetroid(Path(path).read_text(encoding="utf-8"), validate, caps)


# ---------------------------------------------------------------- function files

def loads_function(text: str, g: FiniteGroupoid):
    from .algebra import GroupoidFunction

    vals: dict[int, complex | int | float] = {}
    for i, line in enumerate(_strip_comments(text), start=1):
        words = line.split()
        if not words:
            continue
        if len(words) not in (2, 3):
            raise DSLError("expected 'LABEL RE [IM]'", i, 1)
        if words[0] not in g.arrow_labels:
            raise DSLError(f"unknown arrow {words[0]!r}", i, line.index(words[0]) + 1)
        a = g.arrow(words[0])
        if a in vals:
            raise DSLError(f"arrow {words[0]!r} given twice", i, 1)
        nums = []
        for w in words[1:]:
            try:
                nums.append(int(w))
            except ValueError:
                try:
                    nums.append(float(w))
                except ValueError:
                    raise DSLError(f"not a number: {w!r}", i, line.index(w) + 1) from None
        vals[a] = nums[0] if len(nums) == 1 or nums[1] == 0 else complex(nums[0], nums[1])
    coeffs = [vals.get(a, 0) for a in range(g.n_arrows)]
    if any(isinstance(c, complex) for c in coeffs):
        return GroupoidFunction(g, np.array(coeffs, dtype=np.complex128))
    return GroupoidFunction(g, coeffs)


def load_function(path, g: FiniteGroupoid):
    return loads_function(Path(path).read_text(encoding="utf-8"), g)


def dumps_function(f) -> str:
    g = f.groupoid
    out = []
    for a in range(g.n_arrows):
        v = f.values[a]
        if v == 0:
            continue
        if f.exact:
            out.append(f"{g.arrow_labels[a]} {int(v)}")
        else:
            c = complex(v)
            out.append(f"{g.arrow_labels[a]} {c.real!r} {c.imag!r}")
    return "\n".join(out) + ("\n" if out else "")
