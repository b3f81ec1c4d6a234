"""Finite groups and groupoids stored as dense integer tables.

Objects and arrows are the integers ``0..n-1``.  Composition is a full
``n_arrows x n_arrows`` table holding ``compose[b, a] = b∘a`` when
``s(b) == t(a)`` and ``-1`` otherwise.  Labels ride along for printing only.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Sequence

import numpy as np

UNDEF = -1


# ---------------------------------------------------------------- errors

class SymmetroidsError(Exception):
    """Base class for all errors raised by this package."""


class MalformedTableError(SymmetroidsError, ValueError):
    pass


class InvalidActionError(SymmetroidsError, ValueError):
    pass


class CapExceeded(SymmetroidsError, RuntimeError):
    """A configured search or verification cap was hit."""

    def __init__(self, what: str, limit: int, needed: int | None = None):
        self.what = what
        self.limit = limit
        self.needed = needed
        msg = f"{what}: cap {limit} exceeded"
        if needed is not None:
            msg += f" (needed {needed})"
        super().__init__(msg)


# ---------------------------------------------------------------- caps

@dataclass(frozen=True)
class Caps:
    """Resource caps.  Exceeding one is reported, never treated as a pass."""

    triples: int = 10**6          # associativity triples per groupoid
    iso_objects: int = 10         # isomorphism search
    iso_arrows: int = 200
    bisections: int = 10**6       # bisection enumeration
    cells: int = 10**5            # symmetroid closure
    exchange: int = 2 * 10**8     # exchange-identity candidate quadruples
    search_nodes: int = 10**6     # generic backtracking nodes

    def replace(self, **kw) -> "Caps":
        data = {k: getattr(self, k) for k in self.__dataclass_fields__}
        for k, v in kw.items():
            if k not in data:
                raise KeyError(f"unknown cap {k!r}")
            data[k] = int(v)
        return Caps(**data)


DEFAULT_CAPS = Caps()


# ---------------------------------------------------------------- reports

PASS, FAIL, NOT_VERIFIED = "pass", "fail", "not verified"


@dataclass
class Check:
    name: str
    status: str
    counterexample: Any = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS


@dataclass
class Report:
    """Ordered pass/fail record, one entry per law that was checked."""

    title: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, ok: bool, counterexample: Any = None, detail: str = "") -> Check:
        c = Check(name, PASS if ok else FAIL, None if ok else counterexample, detail)
        self.checks.append(c)
        return c

    def skip(self, name: str, detail: str) -> Check:
        c = Check(name, NOT_VERIFIED, None, detail)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.counterexample, c.detail))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def capped(self) -> bool:
        return any(c.status == NOT_VERIFIED for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "status": c.status,
                 "counterexample": _jsonable(c.counterexample), "detail": c.detail}
                for c in self.checks
            ],
        }

    def render(self) -> str:
        lines = [self.title]
        for c in self.checks:
            line = f"  [{c.status}] {c.name}"
            if c.detail:
                line += f": {c.detail}"
            if c.counterexample is not None:
                line += f" (counterexample {c.counterexample})"
            lines.append(line)
        return "\n".join(lines)


def _jsonable(x):
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset, np.ndarray)):
        return [_jsonable(v) for v in x]
    return str(x)


def _frozen(a, dtype=np.int64) -> np.ndarray:
    arr = np.array(a, dtype=dtype, copy=True)
    arr.flags.writeable = False
    return arr


# ---------------------------------------------------------------- groups

class FiniteGroup:
    """A finite group given by its Cayley table, ``table[i, j] = i*j``."""

    def __init__(self, table, labels: Sequence[str] | None = None, *, check: bool = True):
        table = np.asarray(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise MalformedTableError("group table must be a non-empty square array")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise MalformedTableError("group table entry out of range")
        ident = [e for e in range(n) if np.array_equal(table[e], np.arange(n))
                 and np.array_equal(table[:, e], np.arange(n))]
        if not ident:
            raise MalformedTableError("group table has no two-sided identity")
        e = ident[0]
        inv = np.full(n, -1, dtype=np.int64)
        for i in range(n):
            hits = np.nonzero(table[i] == e)[0]
            if len(hits) != 1 or table[hits[0], i] != e:
                raise MalformedTableError(f"element {i} has no two-sided inverse")
            inv[i] = hits[0]
        if check:
            # associativity, vectorized: (ij)k == i(jk)
            left = table[table[:, :, None], np.arange(n)[None, None, :]]
            right = table[np.arange(n)[:, None, None], table[None, :, :]]
            if not np.array_equal(left, right):
                i, j, k = np.argwhere(left != right)[0]
                raise MalformedTableError(f"group table not associative at {(int(i), int(j), int(k))}")
        self.table = _frozen(table)
        self.identity = int(e)
        self.inverse = _frozen(inv)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise MalformedTableError("wrong number of group labels")

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def element(self, label: str) -> int:
        return self.labels.index(label)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"


def group_from_elements(elements: Sequence[Hashable], mul: Callable, labels=None) -> FiniteGroup:
    index = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            try:
                table[i, j] = index[mul(a, b)]
            except KeyError:
                raise MalformedTableError(f"product of {a!r} and {b!r} leaves the element set") from None
    return FiniteGroup(table, labels if labels is not None else [str(x) for x in elements])


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    if n == 2:
        labels = ["e", "s"]
    else:
        labels = ["e"] + ["r" if k == 1 else f"r{k}" for k in range(1, n)]
    return FiniteGroup(table, labels)


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], ["e"])


def symmetric_group(n: int) -> FiniteGroup:
    perms = list(itertools.permutations(range(n)))
    return group_from_elements(perms, lambda p, q: tuple(p[i] for i in q),
                               ["".join(map(str, p)) for p in perms])


def klein_four_group() -> FiniteGroup:
    return direct_product_group(cyclic_group(2), cyclic_group(2))


def direct_product_group(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    n2 = g2.order
    elems = [(a, b) for a in range(g1.order) for b in range(n2)]
    return group_from_elements(
        elems, lambda p, q: (g1.mul(p[0], q[0]), g2.mul(p[1], q[1])),
        [f"({g1.labels[a]},{g2.labels[b]})" for a, b in elems])


def subgroup(g: FiniteGroup, elements: Iterable[int]) -> FiniteGroup:
    """The subgroup on ``elements`` (in the given order); raises if not closed."""
    elems = [int(e) for e in elements]
    return group_from_elements(elems, g.mul, [g.labels[e] for e in elems])


def named_group(name: str) -> FiniteGroup:
    name = name.strip()
    if name in ("1", "trivial", "Z1"):
        return trivial_group()
    if name in ("K4", "V4", "Klein"):
        return klein_four_group()
    if name[:1] == "Z" and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    if name[:1] == "S" and name[1:].isdigit():
        return symmetric_group(int(name[1:]))
    raise KeyError(f"unknown group name {name!r}")


# ---------------------------------------------------------------- groupoids

class FiniteGroupoid:
    """An immutable finite groupoid.

    ``source``, ``target`` and ``inverse`` are arrays over arrows, ``units``
    is an array over objects and ``compose`` the partial composition table.
    Equality is structural (identical tables), never up to isomorphism.
    """

    def __init__(self, source, target, units, compose, inverse,
                 object_labels: Sequence[str] | None = None,
                 arrow_labels: Sequence[str] | None = None):
        src = np.asarray(source, dtype=np.int64)
        tgt = np.asarray(target, dtype=np.int64)
        unit = np.asarray(units, dtype=np.int64)
        comp = np.asarray(compose, dtype=np.int64)
        inv = np.asarray(inverse, dtype=np.int64)
        m, n = len(src), len(unit)
        if n == 0 or m == 0:
            raise MalformedTableError("a groupoid needs at least one object and one arrow")
        if tgt.shape != (m,) or inv.shape != (m,) or comp.shape != (m, m):
            raise MalformedTableError("table shapes are inconsistent")
        for name, arr, hi in (("source", src, n), ("target", tgt, n), ("unit", unit, m),
                              ("inverse", inv, m)):
            if arr.min() < 0 or arr.max() >= hi:
                raise MalformedTableError(f"{name} entry out of range")
        if comp.min() < UNDEF or comp.max() >= m:
            raise MalformedTableError("compose entry out of range")
        self.source = _frozen(src)
        self.target = _frozen(tgt)
        self.units = _frozen(unit)
        self.compose = _frozen(comp)
        self.inverse = _frozen(inv)
        self.object_labels = tuple(object_labels) if object_labels is not None else tuple(str(i) for i in range(n))
        self.arrow_labels = tuple(arrow_labels) if arrow_labels is not None else tuple(str(i) for i in range(m))
        if len(self.object_labels) != n or len(self.arrow_labels) != m:
            raise MalformedTableError("wrong number of labels")
        self._arrow_index = {lab: i for i, lab in enumerate(self.arrow_labels)}
        self._object_index = {lab: i for i, lab in enumerate(self.object_labels)}

    # -- construction helpers
    @classmethod
    def from_law(cls, objects: Sequence[Hashable], arrows: Sequence[Hashable],
                 source: Callable, target: Callable, compose: Callable,
                 unit: Callable, inverse: Callable,
                 object_label: Callable = str, arrow_label: Callable = str) -> "FiniteGroupoid":
        """Tabulate a groupoid given by Python callables on hashable keys."""
        oidx = {o: i for i, o in enumerate(objects)}
        aidx = {a: i for i, a in enumerate(arrows)}
        src = [oidx[source(a)] for a in arrows]
        tgt = [oidx[target(a)] for a in arrows]
        m = len(arrows)
        comp = np.full((m, m), UNDEF, dtype=np.int64)
        by_target: dict[int, list[int]] = {}
        for i, t in enumerate(tgt):
            by_target.setdefault(t, []).append(i)
        for j, b in enumerate(arrows):
            for i in by_target.get(src[j], ()):
                comp[j, i] = aidx[compose(b, arrows[i])]
        return cls(src, tgt, [aidx[unit(o)] for o in objects], comp,
                   [aidx[inverse(a)] for a in arrows],
                   [object_label(o) for o in objects], [arrow_label(a) for a in arrows])

    def relabel(self, object_labels=None, arrow_labels=None) -> "FiniteGroupoid":
        return FiniteGroupoid(self.source, self.target, self.units, self.compose, self.inverse,
                              object_labels if object_labels is not None else self.object_labels,
                              arrow_labels if arrow_labels is not None else self.arrow_labels)

    # -- sizes
    @property
    def n_objects(self) -> int:
        return len(self.units)

    @property
    def n_arrows(self) -> int:
        return len(self.source)

    # -- queries
    def comp(self, b: int, a: int) -> int:
        """``b∘a``; raises ValueError if not composable."""
        c = int(self.compose[b, a])
        if c == UNDEF:
            raise ValueError(f"arrows {self.arrow_labels[b]} and {self.arrow_labels[a]} are not composable")
        return c

    def composable(self, b: int, a: int) -> bool:
        return bool(self.source[b] == self.target[a])

    def is_unit(self, a: int) -> bool:
        return bool(self.units[self.source[a]] == a)

    def arrow(self, label: str) -> int:
        try:
            return self._arrow_index[label]
        except KeyError:
            raise KeyError(f"unknown arrow label {label!r}") from None

    def obj(self, label: str) -> int:
        try:
            return self._object_index[label]
        except KeyError:
            raise KeyError(f"unknown object label {label!r}") from None

    def arrows_from(self, x: int) -> np.ndarray:
        return np.nonzero(self.source == x)[0]

    def arrows_to(self, y: int) -> np.ndarray:
        return np.nonzero(self.target == y)[0]

    def hom(self, y: int, x: int) -> tuple[int, ...]:
        return tuple(int(a) for a in np.nonzero((self.source == x) & (self.target == y))[0])

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteGroupoid):
            return NotImplemented
        return all(np.array_equal(getattr(self, k), getattr(other, k))
                   for k in ("source", "target", "units", "compose", "inverse"))

    def __hash__(self) -> int:
        return hash((self.compose.tobytes(), self.units.tobytes()))

    def __repr__(self) -> str:
        return f"FiniteGroupoid(objects={self.n_objects}, arrows={self.n_arrows})"


# ---------------------------------------------------------------- verification

def verify_groupoid_axioms(g: FiniteGroupoid, caps: Caps | None = None) -> Report:
    """Exhaustive check of the groupoid axioms with first counterexamples."""
    caps = caps or DEFAULT_CAPS
    rep = Report("groupoid axioms")
    s, t, u, C, inv = g.source, g.target, g.units, g.compose, g.inverse
    m = g.n_arrows
    ar = np.arange(m)

    bad = np.nonzero((s[u] != np.arange(g.n_objects)) | (t[u] != np.arange(g.n_objects)))[0]
    coherence_ce = ("unit", int(bad[0])) if len(bad) else None
    if coherence_ce is None:
        defined = C >= 0
        should = s[:, None] == t[None, :]
        bad = np.argwhere(defined != should)
        if len(bad):
            coherence_ce = ("composability", tuple(int(v) for v in bad[0]))
        else:
            bb, aa = np.nonzero(defined)
            cc = C[bb, aa]
            wrong = (s[cc] != s[aa]) | (t[cc] != t[bb])
            if wrong.any():
                k = np.nonzero(wrong)[0][0]
                coherence_ce = ("endpoints", (int(bb[k]), int(aa[k])))
    rep.add("source/target coherence", coherence_ce is None, coherence_ce)
    if coherence_ce is not None:
        rep.skip("units", "skipped after coherence failure")
        rep.skip("inverses", "skipped after coherence failure")
        rep.skip("associativity", "skipped after coherence failure")
        return rep

    right = C[ar, u[s]]
    left = C[u[t], ar]
    bad = np.nonzero((right != ar) | (left != ar))[0]
    rep.add("units", len(bad) == 0, int(bad[0]) if len(bad) else None)

    ok_inv = (s[inv] == t) & (t[inv] == s)
    ok_inv &= np.where(ok_inv, C[inv, ar] == u[s], False)
    ok_inv &= np.where(ok_inv, C[ar, inv] == u[t], False)
    bad = np.nonzero(~ok_inv)[0]
    rep.add("inverses", len(bad) == 0, int(bad[0]) if len(bad) else None)

    out_count = np.bincount(s, minlength=g.n_objects)
    in_count = np.bincount(t, minlength=g.n_objects)
    n_triples = int(np.sum(out_count[t] * in_count[s]))
    if n_triples > caps.triples:
        rep.skip("associativity", f"{n_triples} composable triples exceed cap {caps.triples}")
        return rep
    ce = None
    for b in range(m):
        aa = np.nonzero(t == s[b])[0]
        cs = np.nonzero(s == t[b])[0]
        ba = C[b, aa]
        cb = C[cs, b]
        lhs = C[cb[:, None], aa[None, :]]
        rhs = C[cs[:, None], ba[None, :]]
        if not np.array_equal(lhs, rhs):
            i, j = np.argwhere(lhs != rhs)[0]
            ce = (int(cs[i]), b, int(aa[j]))
            break
    rep.add("associativity", ce is None, ce, f"{n_triples} triples")
    return rep


def verify_group_axioms(g: FiniteGroup) -> Report:
    """Group tables are validated on construction; this re-runs the checks as a report."""
    rep = Report("group axioms")
    n = g.order
    T = g.table
    e = g.identity
    ar = np.arange(n)
    rep.add("identity", bool(np.array_equal(T[e], ar) and np.array_equal(T[:, e], ar)))
    bad = np.nonzero((T[ar, g.inverse] != e) | (T[g.inverse, ar] != e))[0]
    rep.add("inverses", len(bad) == 0, int(bad[0]) if len(bad) else None)
    left = T[T[:, :, None], ar[None, None, :]]
    right = T[ar[:, None, None], T[None, :, :]]
    bad = np.argwhere(left != right)
    rep.add("associativity", len(bad) == 0, tuple(int(v) for v in bad[0]) if len(bad) else None)
    return rep


# ---------------------------------------------------------------- constructors

def pair_groupoid(n: int, labels: Sequence[str] | None = None) -> FiniteGroupoid:
    """The groupoid of pairs: one arrow ``(y,x)`` from x to y for every pair."""
    if n < 1:
        raise ValueError("pair groupoid needs n >= 1")
    labels = list(labels) if labels is not None else [str(i) for i in range(n)]
    if len(labels) != n:
        raise ValueError("wrong number of object labels")
    arrows = [(y, x) for y in range(n) for x in range(n)]
    return FiniteGroupoid.from_law(
        range(n), arrows,
        source=lambda a: a[1], target=lambda a: a[0],
        compose=lambda b, a: (b[0], a[1]),
        unit=lambda x: (x, x), inverse=lambda a: (a[1], a[0]),
        object_label=lambda x: labels[x],
        arrow_label=lambda a: f"({labels[a[0]]},{labels[a[1]]})")


def group_groupoid(group: FiniteGroup, object_label: str = "*") -> FiniteGroupoid:
    n = group.order
    return FiniteGroupoid(np.zeros(n), np.zeros(n), [group.identity], group.table,
                          group.inverse, [object_label], group.labels)


def trivial_groupoid() -> FiniteGroupoid:
    return group_groupoid(trivial_group())


def direct_product(g1: FiniteGroupoid, g2: FiniteGroupoid) -> FiniteGroupoid:
    """Componentwise product; object ``(x1,x2)`` has index ``x1*n2 + x2``."""
    m2, n2 = g2.n_arrows, g2.n_objects
    A1 = np.repeat(np.arange(g1.n_arrows), m2)
    A2 = np.tile(np.arange(m2), g1.n_arrows)
    src = g1.source[A1] * n2 + g2.source[A2]
    tgt = g1.target[A1] * n2 + g2.target[A2]
    c1 = g1.compose[A1[:, None], A1[None, :]]
    c2 = g2.compose[A2[:, None], A2[None, :]]
    comp = np.where((c1 >= 0) & (c2 >= 0), c1 * m2 + c2, UNDEF)
    o1 = np.repeat(np.arange(g1.n_objects), n2)
    o2 = np.tile(np.arange(n2), g1.n_objects)
    units = g1.units[o1] * m2 + g2.units[o2]
    inv = g1.inverse[A1] * m2 + g2.inverse[A2]
    return FiniteGroupoid(
        src, tgt, units, comp, inv,
        [f"({g1.object_labels[a]},{g2.object_labels[b]})" for a, b in zip(o1, o2)],
        [f"({g1.arrow_labels[a]},{g2.arrow_labels[b]})" for a, b in zip(A1, A2)])


def disjoint_union(g1: FiniteGroupoid, g2: FiniteGroupoid) -> FiniteGroupoid:
    n1, m1 = g1.n_objects, g1.n_arrows
    m = m1 + g2.n_arrows
    comp = np.full((m, m), UNDEF, dtype=np.int64)
    comp[:m1, :m1] = g1.compose
    comp[m1:, m1:] = np.where(g2.compose >= 0, g2.compose + m1, UNDEF)
    return FiniteGroupoid(
        np.concatenate([g1.source, g2.source + n1]),
        np.concatenate([g1.target, g2.target + n1]),
        np.concatenate([g1.units, g2.units + m1]), comp,
        np.concatenate([g1.inverse, g2.inverse + m1]),
        [f"{l}.0" for l in g1.object_labels] + [f"{l}.1" for l in g2.object_labels],
        [f"{l}.0" for l in g1.arrow_labels] + [f"{l}.1" for l in g2.arrow_labels])


def action_groupoid(group: FiniteGroup, action, n_objects: int | None = None,
                    object_labels: Sequence[str] | None = None) -> FiniteGroupoid:
    """Action groupoid of a left action; the arrow ``(g·x, g, x)`` has index ``g*n + x``.

    ``action`` is either an array ``act[g, x]`` or a callable ``(g, x) -> y``
    (the callable form needs ``n_objects``).
    """
    if callable(action):
        if n_objects is None:
            raise ValueError("n_objects is required with a callable action")
        act = np.array([[action(g, x) for x in range(n_objects)] for g in range(group.order)],
                       dtype=np.int64)
    else:
        act = np.asarray(action, dtype=np.int64)
    if act.ndim != 2 or act.shape[0] != group.order:
        raise InvalidActionError("action table must have one row per group element")
    n = act.shape[1]
    if n_objects is not None and n != n_objects:
        raise InvalidActionError("action table width differs from n_objects")
    if act.min() < 0 or act.max() >= n:
        raise InvalidActionError("action sends an object out of range")
    e = group.identity
    for x in range(n):
        if act[e, x] != x:
            raise InvalidActionError(f"identity moves object {x}", ) from None
    for h in range(group.order):
        for g_ in range(group.order):
            hg = group.mul(h, g_)
            bad = np.nonzero(act[hg] != act[h][act[g_]])[0]
            if len(bad):
                raise InvalidActionError(
                    f"action not compatible with multiplication at (h={h}, g={g_}, x={int(bad[0])})")
    labels = list(object_labels) if object_labels is not None else [str(i) for i in range(n)]
    arrows = [(g_, x) for g_ in range(group.order) for x in range(n)]
    return FiniteGroupoid.from_law(
        range(n), arrows,
        source=lambda a: a[1], target=lambda a: int(act[a[0], a[1]]),
        compose=lambda b, a: (group.mul(b[0], a[0]), a[1]),
        unit=lambda x: (e, x), inverse=lambda a: (group.inv(a[0]), int(act[a[0], a[1]])),
        object_label=lambda x: labels[x],
        arrow_label=lambda a: f"({labels[act[a[0], a[1]]]};{group.labels[a[0]]};{labels[a[1]]})")


def c2_4() -> FiniteGroupoid:
    """The 8-transition groupoid over two outcomes ``+`` and ``-`` with Z2 isotropy.

    Transitions are triples (target, group element, source):
    ``1± = (±,e,±)``, ``s± = (±,σ,±)``, ``a1 = (+,σ,-)``, ``a2 = (+,e,-)``,
    ``b1 = (-,σ,+)``, ``b2 = (-,e,+)``.  It is isomorphic to ``G(Ω2) x Z2``.
    """
    P, M = 0, 1
    arrows = [(P, 0, P), (P, 1, P), (M, 0, M), (M, 1, M),
              (P, 1, M), (P, 0, M), (M, 1, P), (M, 0, P)]
    names = ["1+", "s+", "1-", "s-", "a1", "a2", "b1", "b2"]
    lab = dict(zip(arrows, names))
    return FiniteGroupoid.from_law(
        [P, M], arrows,
        source=lambda a: a[2], target=lambda a: a[0],
        compose=lambda b, a: (b[0], (b[1] + a[1]) % 2, a[2]),
        unit=lambda x: (x, 0, x), inverse=lambda a: (a[2], a[1], a[0]),
        object_label=lambda x: "+-"[x], arrow_label=lambda a: lab[a])


def swap_base() -> FiniteGroupoid:
    """``G(Ω2) x G(Ω2)`` with factor labels ``a``/``b`` and arrows named like ``(a,1+)``.

    In each factor ``1+``/``1-`` are units, ``a`` is the arrow ``- -> +`` and
    ``ai`` its inverse.
    """
    p = pair_groupoid(2, ["+", "-"])
    names = {"(+,+)": "1+", "(+,-)": "a", "(-,+)": "ai", "(-,-)": "1-"}
    p = p.relabel(arrow_labels=[names[l] for l in p.arrow_labels])
    return direct_product(p, p)


NAMED_GROUPOIDS: dict[str, Callable[[], FiniteGroupoid]] = {
    "C2_4": c2_4,
    "swap_base": swap_base,
    "trivial": trivial_groupoid,
}


def named(name: str) -> FiniteGroupoid:
    try:
        return NAMED_GROUPOIDS[name]()
    except KeyError:
        raise KeyError(f"unknown named groupoid {name!r}; known: {sorted(NAMED_GROUPOIDS)}") from None


# ---------------------------------------------------------------- structure queries

def hom_set(g: FiniteGroupoid, y: int, x: int) -> tuple[int, ...]:
    """Arrows ``x -> y`` in ascending index order."""
    return g.hom(y, x)


def isotropy_arrows(g: FiniteGroupoid, x: int) -> tuple[int, ...]:
    return g.hom(x, x)


def isotropy_group(g: FiniteGroupoid, x: int) -> FiniteGroup:
    """``G_x``; group element ``i`` is the arrow ``isotropy_arrows(g, x)[i]``."""
    loops = isotropy_arrows(g, x)
    return group_from_elements(loops, lambda b, a: int(g.compose[b, a]),
                               [g.arrow_labels[a] for a in loops])


def connected_components(g: FiniteGroupoid) -> list[list[int]]:
    """Blocks of objects joined by arrows, each sorted, ordered by least element."""
    parent = list(range(g.n_objects))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(g.n_arrows):
        rs, rt = find(int(g.source[a])), find(int(g.target[a]))
        if rs != rt:
            parent[max(rs, rt)] = min(rs, rt)
    blocks: dict[int, list[int]] = {}
    for x in range(g.n_objects):
        blocks.setdefault(find(x), []).append(x)
    return sorted(blocks.values())


def is_connected(g: FiniteGroupoid) -> bool:
    return len(connected_components(g)) == 1


def full_subgroupoid(g: FiniteGroupoid, objects: Sequence[int]) -> tuple[FiniteGroupoid, np.ndarray]:
    """Restriction to ``objects``; also returns the new-to-old arrow index map."""
    objects = list(objects)
    oset = set(objects)
    keep = np.array([a for a in range(g.n_arrows)
                     if int(g.source[a]) in oset and int(g.target[a]) in oset], dtype=np.int64)
    onew = {x: i for i, x in enumerate(objects)}
    anew = np.full(g.n_arrows, UNDEF, dtype=np.int64)
    anew[keep] = np.arange(len(keep))
    sub = g.compose[keep[:, None], keep[None, :]]
    comp = np.where(sub >= 0, anew[np.maximum(sub, 0)], UNDEF)
    return (FiniteGroupoid([onew[int(v)] for v in g.source[keep]],
                           [onew[int(v)] for v in g.target[keep]],
                           anew[g.units[objects]], comp, anew[g.inverse[keep]],
                           [g.object_labels[x] for x in objects],
                           [g.arrow_labels[a] for a in keep]),
            keep)
