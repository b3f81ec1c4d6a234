"""Bisections of a symmetroid, flatness, cocycles, inner symmetries and the
factorization of inner symmetries inside the canonical symmetroid."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .bisections import Bisection, enumerate_bisections
from .core import (
    DEFAULT_CAPS, UNDEF, CapExceeded, Caps, FiniteGroup, FiniteGroupoid, Report,
    SymmetroidsError, connected_components,
)
from .morphisms import (
    CONTRAVARIANT, COVARIANT, GroupoidFunctor, identity_functor, verify_functor,
)
from .symmetroid import TwoGroupoid, canonical_symmetroid

HOMOMORPHIC, ANTI, MIXED = "homomorphic", "anti", "mixed"


class UndefinedCompositeError(SymmetroidsError, ValueError):
    pass


class NotFlatError(SymmetroidsError, ValueError):
    pass


class NotInnerError(SymmetroidsError, ValueError):
    pass


# ---------------------------------------------------------------- bisections of S

class SymmetroidBisection:
    """One cell per base arrow, with the induced arrow map a bijection."""

    def __init__(self, symmetroid: TwoGroupoid, cells: Sequence[int]):
        s = symmetroid
        cells = tuple(int(c) for c in cells)
        if len(cells) != s.base.n_arrows:
            raise ValueError("a bisection picks one cell per base arrow")
        if any(s.src[c] != a for a, c in enumerate(cells)):
            raise ValueError("cell over α must have source α")
        if len(set(int(s.tgt[c]) for c in cells)) != len(cells):
            raise ValueError("targets of a symmetroid bisection must be pairwise distinct")
        self.symmetroid = s
        self.cells = cells

    @property
    def phi(self) -> np.ndarray:
        return self.symmetroid.tgt[list(self.cells)]

    @property
    def variance(self) -> str:
        p = set(int(v) for v in self.symmetroid.parity[list(self.cells)])
        return HOMOMORPHIC if p == {1} else ANTI if p == {-1} else MIXED

    def cell_with_target(self, beta: int) -> int:
        return self.cells[int(np.nonzero(self.phi == beta)[0][0])]

    def __eq__(self, other) -> bool:
        return (isinstance(other, SymmetroidBisection) and self.cells == other.cells
                and self.symmetroid is other.symmetroid)

    def __hash__(self) -> int:
        return hash(self.cells)

    def __repr__(self) -> str:
        return f"SymmetroidBisection({[self.symmetroid.labels[c] for c in self.cells]})"


def identity_symmetroid_bisection(s: TwoGroupoid) -> SymmetroidBisection:
    if (s.vunit < 0).any():
        raise ValueError("symmetroid lacks vertical units")
    return SymmetroidBisection(s, s.vunit)


def multiply(b2: SymmetroidBisection, b1: SymmetroidBisection) -> SymmetroidBisection:
    """``(b2·b1)_s(α) = (b2)_s(φ_{b1}(α)) ∘_V (b1)_s(α)``."""
    s = b1.symmetroid
    if b2.symmetroid is not s:
        raise ValueError("bisections of different symmetroids")
    out = []
    for a, c in enumerate(b1.cells):
        v = s.vcompose(b2.cells[int(s.tgt[c])], c)
        if v < 0:
            raise UndefinedCompositeError(f"vertical product undefined over arrow {a}")
        out.append(v)
    return SymmetroidBisection(s, out)


def invert(b: SymmetroidBisection) -> SymmetroidBisection:
    s = b.symmetroid
    out = []
    for a in range(s.base.n_arrows):
        inv = s.vinverse(b.cell_with_target(a))
        if inv < 0:
            raise UndefinedCompositeError(f"no vertical inverse for the cell ending at arrow {a}")
        out.append(inv)
    return SymmetroidBisection(s, out)


# ---------------------------------------------------------------- flatness

@dataclass
class Flatness:
    flat: bool
    variance: str
    counterexample: tuple[int, int] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.flat


def is_flat(b: SymmetroidBisection) -> Flatness:
    """``b(α')∘_H b(α) = b(α'∘α)`` for every composable pair.

    The variance is read off the parities: all +1 is homomorphic, all -1 is
    anti (the horizontal product of -1 cells reverses targets, which is the
    contravariant form of the identity).
    """
    s = b.symmetroid
    g = s.base
    var = b.variance
    bb, aa = np.nonzero(g.compose >= 0)
    for ap, a in zip(bb.tolist(), aa.tolist()):
        h = s.hcompose(b.cells[ap], b.cells[a])
        if h < 0:
            return Flatness(False, var, (ap, a), "horizontal composite undefined")
        if h != b.cells[int(g.compose[ap, a])]:
            return Flatness(False, var, (ap, a), "horizontal composite differs")
    return Flatness(True, var)


def compute_cocycle(b: SymmetroidBisection, alpha_p: int, alpha: int) -> int:
    """``γ(α',α) = b(α'∘α)^{-V} ∘_V (b(α') ∘_H b(α))``, a vertical loop at α'∘α."""
    s = b.symmetroid
    g = s.base
    comp = int(g.compose[alpha_p, alpha])
    if comp < 0:
        raise ValueError("arrows are not composable")
    h = s.hcompose(b.cells[alpha_p], b.cells[alpha])
    if h < 0:
        raise UndefinedCompositeError(
            f"b({g.arrow_labels[alpha_p]}) ∘_H b({g.arrow_labels[alpha]}) is undefined")
    inv = s.vinverse(b.cells[comp])
    if inv < 0:
        raise UndefinedCompositeError("b(α'∘α) has no vertical inverse")
    gam = s.vcompose(inv, h)
    if gam < 0:
        raise UndefinedCompositeError("horizontal composite and b(α'∘α) have different targets")
    assert s.src[gam] == comp and s.tgt[gam] == comp
    return gam


def cocycle_table(b: SymmetroidBisection) -> dict[tuple[int, int], int | None]:
    """γ for every composable pair; None where a composite is undefined."""
    g = b.symmetroid.base
    out = {}
    for ap, a in zip(*np.nonzero(g.compose >= 0)):
        try:
            out[int(ap), int(a)] = compute_cocycle(b, int(ap), int(a))
        except UndefinedCompositeError:
            out[int(ap), int(a)] = None
    return out


def induced_automorphism(b: SymmetroidBisection) -> GroupoidFunctor:
    """``φ_b: α ↦ t(b(α))`` as a verified (anti-)automorphism of the base."""
    fl = is_flat(b)
    if not fl:
        raise NotFlatError(f"bisection is not flat at {fl.counterexample}: {fl.reason}")
    if fl.variance == MIXED:
        raise NotFlatError("mixed variance: no single (anti-)automorphism")
    g = b.symmetroid.base
    phi = b.phi
    obj = g.source[phi[g.units]]
    f = GroupoidFunctor(g, g, obj, phi, COVARIANT if fl.variance == HOMOMORPHIC else CONTRAVARIANT)
    rep = verify_functor(f)
    if not (rep.ok and f.is_bijective()):
        raise NotFlatError(f"induced map is not an automorphism: {rep.failures()}")
    return f


# ---------------------------------------------------------------- 𝒮♭

@dataclass(eq=False)
class FlatBisectionGroup:
    symmetroid: TwoGroupoid
    elements: list[SymmetroidBisection]
    table: np.ndarray
    identity: int
    inverse: np.ndarray
    report: Report
    strategy: str

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i: int) -> SymmetroidBisection:
        return self.elements[i]

    def index(self, b: SymmetroidBisection) -> int:
        return [e.cells for e in self.elements].index(b.cells)

    def variances(self) -> list[str]:
        return [e.variance for e in self.elements]

    def as_group(self) -> FiniteGroup:
        return FiniteGroup(self.table, [f"f{i}" for i in range(len(self))])

    def homomorphic(self) -> list[int]:
        return [i for i, e in enumerate(self.elements) if e.variance == HOMOMORPHIC]


def _canonical_flat_candidates(s: TwoGroupoid, caps: Caps) -> list[SymmetroidBisection]:
    """Lifts ``b^Ad_Φ`` of the bisections Φ of the base, with a parity per component."""
    g = s.base
    inv = g.inverse
    comps = connected_components(g)
    comp_of = np.empty(g.n_objects, dtype=np.int64)
    for i, block in enumerate(comps):
        comp_of[block] = i
    out = []
    parities = [()]
    for _ in comps:
        parities = [p + (e,) for p in parities for e in (1, -1)]
    for Phi in enumerate_bisections(g, caps):
        P = Phi.arrows
        for par in parities:
            cells = []
            for a in range(g.n_arrows):
                x, y = int(g.source[a]), int(g.target[a])
                if par[comp_of[x]] > 0:
                    key = (a, P[y], int(inv[P[x]]), 1)
                else:
                    key = (a, P[x], int(inv[P[y]]), -1)
                cells.append(s.index[key])
            out.append(SymmetroidBisection(s, cells))
    return out


def _search_flat(s: TwoGroupoid, caps: Caps) -> list[SymmetroidBisection]:
    """Backtracking over per-arrow cell choices with flatness pruning."""
    g = s.base
    m = g.n_arrows
    C = g.compose
    order = [int(u) for u in g.units] + [a for a in range(m) if not g.is_unit(a)]
    choice = [-1] * m
    used: set[int] = set()
    found: list[tuple[int, ...]] = []
    nodes = [0]
    composable = [[(ap, a) for ap in range(m) for a in range(m) if C[ap, a] >= 0]]
    pairs_touching: dict[int, list[tuple[int, int]]] = {a: [] for a in range(m)}
    for ap, a in composable[0]:
        c = int(C[ap, a])
        for z in {ap, a, c}:
            pairs_touching[z].append((ap, a))

    def consistent(a):
        for ap, a0 in pairs_touching[a]:
            c = int(C[ap, a0])
            if choice[ap] < 0 or choice[a0] < 0 or choice[c] < 0:
                continue
            if s.hcompose(choice[ap], choice[a0]) != choice[c]:
                return False
        return True

    def rec(k):
        nodes[0] += 1
        if nodes[0] > caps.search_nodes:
            raise CapExceeded("flat bisection search nodes", caps.search_nodes)
        if k == m:
            found.append(tuple(choice))
            return
        a = order[k]
        for c in s.cells_over(a):
            c = int(c)
            t = int(s.tgt[c])
            if t in used:
                continue
            choice[a] = c
            used.add(t)
            if consistent(a):
                rec(k + 1)
            used.discard(t)
            choice[a] = -1

    rec(0)
    return [SymmetroidBisection(s, f) for f in sorted(found)]


def flat_bisection_group(s: TwoGroupoid, caps: Caps | None = None,
                         strategy: str = "auto") -> FlatBisectionGroup:
    """𝒮♭ with its product table; closure under product and inverse is re-checked.

    ``strategy``: "lift" (canonical symmetroids only), "search", or "auto".
    """
    caps = caps or DEFAULT_CAPS
    if strategy == "auto":
        strategy = "lift" if s.kind == "canonical" else "search"
    if strategy == "lift":
        if s.kind != "canonical":
            raise ValueError("the lift strategy needs a canonical symmetroid")
        cands = _canonical_flat_candidates(s, caps)
        elements = sorted((b for b in cands if is_flat(b)), key=lambda b: b.cells)
    elif strategy == "search":
        elements = _search_flat(s, caps)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    rep = Report(f"flat bisection group ({strategy})")
    idx = {b.cells: i for i, b in enumerate(elements)}
    k = len(elements)
    table = np.full((k, k), UNDEF, dtype=np.int64)
    ce = None
    for i, b2 in enumerate(elements):
        for j, b1 in enumerate(elements):
            p = multiply(b2, b1)
            if p.cells in idx:
                table[i, j] = idx[p.cells]
            elif ce is None:
                ce = (i, j)
    rep.add("closed under product", ce is None, ce)
    ident = identity_symmetroid_bisection(s)
    rep.add("identity is flat", ident.cells in idx)
    inverse = np.full(k, UNDEF, dtype=np.int64)
    bad = None
    for i, b in enumerate(elements):
        c = invert(b).cells
        if c in idx:
            inverse[i] = idx[c]
        elif bad is None:
            bad = i
    rep.add("closed under inverse", bad is None, bad)
    bad = None
    for i, b2 in enumerate(elements):
        for j, b1 in enumerate(elements):
            if table[i, j] >= 0 and not np.array_equal(elements[table[i, j]].phi, b2.phi[b1.phi]):
                bad = (i, j)
    rep.add("φ_(b2·b1) = φ_b2 ∘ φ_b1", bad is None, bad)
    bad = None
    for i, b2 in enumerate(elements):
        for j, b1 in enumerate(elements):
            if table[i, j] >= 0:
                pv = elements[table[i, j]].variance
                want = {(HOMOMORPHIC, HOMOMORPHIC): HOMOMORPHIC, (ANTI, ANTI): HOMOMORPHIC,
                        (HOMOMORPHIC, ANTI): ANTI, (ANTI, HOMOMORPHIC): ANTI}.get((b2.variance, b1.variance))
                if want is not None and pv != want:
                    bad = (i, j)
    rep.add("variances multiply", bad is None, bad)
    return FlatBisectionGroup(s, elements, table, idx.get(ident.cells, UNDEF), inverse, rep, strategy)


# ---------------------------------------------------------------- natural transformations

@dataclass(frozen=True, eq=False)
class NaturalTransformation:
    """Components ``Φ(x): F1(x) -> F2(x)``."""

    f1: GroupoidFunctor
    f2: GroupoidFunctor
    components: tuple[int, ...]

    def inverse(self) -> "NaturalTransformation":
        g = self.f1.target
        return NaturalTransformation(self.f2, self.f1, tuple(int(g.inverse[c]) for c in self.components))

    def as_bisection(self) -> Bisection:
        """The graph of Φ, valid when ``F1`` is the identity functor."""
        return Bisection(self.f1.target, self.components)

    def describe(self) -> dict[str, str]:
        g = self.f1.target
        return {self.f1.source.object_labels[x]: g.arrow_labels[c] for x, c in enumerate(self.components)}


def verify_natural_transformation(nt: NaturalTransformation) -> Report:
    g = nt.f1.target
    rep = Report("natural transformation")
    F1, F2, P = nt.f1, nt.f2, nt.components
    bad = [x for x, c in enumerate(P)
           if g.source[c] != F1.obj(x) or g.target[c] != F2.obj(x)]
    rep.add("components Φ(x): F1(x) -> F2(x)", not bad, bad[0] if bad else None)
    if bad:
        return rep
    src = nt.f1.source
    bad = [a for a in range(src.n_arrows)
           if g.compose[P[src.target[a]], F1(a)] != g.compose[F2(a), P[src.source[a]]]]
    rep.add("naturality Φ(y)∘F1(α) = F2(α)∘Φ(x)", not bad, bad[0] if bad else None)
    return rep


def find_natural_transformation(f1: GroupoidFunctor, f2: GroupoidFunctor) -> NaturalTransformation | None:
    """First natural transformation ``F1 => F2`` in lexicographic order, or None."""
    if not (f1.covariant and f2.covariant):
        raise ValueError("natural transformations are only searched between covariant functors")
    if f1.source != f2.source or f1.target != f2.target:
        raise ValueError("functors must share source and target")
    G, H = f1.source, f1.target
    n = G.n_objects
    comp: list[int] = [-1] * n
    arrows_at = [[a for a in range(G.n_arrows) if max(G.source[a], G.target[a]) == x] for x in range(n)]

    def ok(x):
        for a in arrows_at[x]:
            s, t = int(G.source[a]), int(G.target[a])
            if H.compose[comp[t], f1(a)] != H.compose[f2(a), comp[s]]:
                return False
        return True

    def rec(x):
        if x == n:
            return True
        for c in H.hom(f2.obj(x), f1.obj(x)):
            comp[x] = c
            if ok(x) and rec(x + 1):
                return True
        comp[x] = -1
        return False

    if not rec(0):
        return None
    return NaturalTransformation(f1, f2, tuple(comp))


# ---------------------------------------------------------------- inner symmetries

@dataclass(eq=False)
class InnerSymmetryGroup:
    flat: FlatBisectionGroup
    members: list[int]
    transformations: dict[int, NaturalTransformation]
    not_applicable: list[int]
    normal: bool
    report: Report = field(default_factory=lambda: Report("inner symmetries"))

    def __len__(self) -> int:
        return len(self.members)

    def elements(self) -> list[SymmetroidBisection]:
        return [self.flat[i] for i in self.members]


def inner_symmetry_group(s: TwoGroupoid, flat: FlatBisectionGroup | None = None,
                         caps: Caps | None = None) -> InnerSymmetryGroup:
    """Homomorphic flats whose automorphism is naturally isomorphic to the identity.

    Anti-variance flats are listed as not applicable.  Normality in 𝒮♭ is
    computed and stored, not asserted.
    """
    flat = flat or flat_bisection_group(s, caps)
    g = s.base
    ident = identity_functor(g)
    members, na, nts = [], [], {}
    rep = Report("inner symmetries")
    for i, b in enumerate(flat.elements):
        if b.variance != HOMOMORPHIC:
            na.append(i)
            continue
        f = induced_automorphism(b)
        nt = find_natural_transformation(ident, f)
        if nt is not None:
            members.append(i)
            nts[i] = nt
    mset = set(members)
    closed = all(flat.table[i, j] in mset for i in members for j in members) and \
        all(flat.inverse[i] in mset for i in members)
    rep.add("subgroup of 𝒮♭", closed and flat.identity in mset)
    bad = None
    for i, nt in nts.items():
        try:
            nt.as_bisection()
        except ValueError:
            bad = i
    rep.add("graph of Φ is a bisection of the base", bad is None, bad)
    bad = [i for i, nt in nts.items() if not verify_natural_transformation(nt).ok]
    rep.add("transformations are natural", not bad, bad[0] if bad else None)
    normal = all(flat.table[flat.table[k, i], flat.inverse[k]] in mset
                 for k in range(len(flat)) for i in members)
    return InnerSymmetryGroup(flat, members, nts, na, normal, rep)


# ---------------------------------------------------------------- Wigner factorization

@dataclass(eq=False)
class WignerFactorization:
    canonical: TwoGroupoid
    transformation: NaturalTransformation
    b_phi: SymmetroidBisection
    left: SymmetroidBisection
    right: SymmetroidBisection
    report: Report

    def transcript(self) -> list[dict]:
        """Per-arrow record of the product ``b^L·b^R`` against ``b_Φ``."""
        S = self.canonical
        g = S.base
        rows = []
        for a in range(g.n_arrows):
            r = self.right.cells[a]
            l_ = self.left.cells[int(S.tgt[r])]
            rows.append({
                "arrow": g.arrow_labels[a],
                "right": S.labels[r],
                "left": S.labels[l_],
                "product": S.labels[S.vcompose(l_, r)],
                "b_phi": S.labels[self.b_phi.cells[a]],
            })
        return rows


def wigner_embedding(s: TwoGroupoid, b: SymmetroidBisection,
                     transformation: NaturalTransformation | None = None,
                     canonical: TwoGroupoid | None = None) -> WignerFactorization:
    """Realize an inner flat bisection as ``b_Φ = b^L_Φ · b^R_Φ`` in S(G).

    ``(b_Φ)(α) = (α, Φ(y), Φ(x)⁻¹, +)``, ``(b^R_Φ)(α) = (α, 1_y, Φ(x)⁻¹, +)`` and
    ``(b^L_Φ)(β) = (β, Φ(t(β)), 1_(s(β)), +)`` for ``α: x -> y``.
    """
    g = s.base
    if b.symmetroid is not s:
        raise ValueError("bisection belongs to another symmetroid")
    fl = is_flat(b)
    if not fl or fl.variance != HOMOMORPHIC:
        raise NotInnerError("only homomorphic flat bisections can be inner")
    f = induced_automorphism(b)
    ident = identity_functor(g)
    if transformation is None:
        transformation = find_natural_transformation(ident, f)
        if transformation is None:
            raise NotInnerError("induced automorphism is not naturally isomorphic to the identity")
    if not verify_natural_transformation(transformation).ok or \
            transformation.f2 != f or transformation.f1 != ident:
        raise NotInnerError("transformation is not a natural transformation id => φ_b")
    S = canonical if canonical is not None else canonical_symmetroid(g)
    if S.kind != "canonical" or S.base != g:
        raise ValueError("canonical must be the canonical symmetroid of the base")
    P = transformation.components
    inv, units, src, tgt = g.inverse, g.units, g.source, g.target
    cells_phi, cells_r, cells_l = [], [], []
    for a in range(g.n_arrows):
        x, y = int(src[a]), int(tgt[a])
        cells_phi.append(S.index[(a, P[y], int(inv[P[x]]), 1)])
        cells_r.append(S.index[(a, int(units[y]), int(inv[P[x]]), 1)])
        cells_l.append(S.index[(a, P[y], int(units[x]), 1)])
    b_phi = SymmetroidBisection(S, cells_phi)
    right = SymmetroidBisection(S, cells_r)
    left = SymmetroidBisection(S, cells_l)
    rep = Report("Wigner factorization")
    rep.add("b_Φ = b^L_Φ · b^R_Φ", multiply(left, right).cells == b_phi.cells)
    fb = is_flat(b_phi)
    rep.add("b_Φ is flat in S(G)", bool(fb), fb.counterexample)
    rep.add("b_Φ is homomorphic", fb.variance == HOMOMORPHIC)
    rep.add("b_Φ induces the same automorphism", bool(np.array_equal(b_phi.phi, b.phi)))
    return WignerFactorization(S, transformation, b_phi, left, right, rep)
