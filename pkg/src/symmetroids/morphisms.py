"""Functors, normal subgroupoids, quotients and isomorphism search."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import (
    DEFAULT_CAPS, UNDEF, CapExceeded, Caps, FiniteGroup, FiniteGroupoid, MalformedTableError,
    Report, SymmetroidsError, connected_components, direct_product, full_subgroupoid,
    group_groupoid, isotropy_arrows, isotropy_group, pair_groupoid,
)

COVARIANT, CONTRAVARIANT = "covariant", "contravariant"


class NotAFunctorError(SymmetroidsError, ValueError):
    pass


class IllDefinedQuotientError(SymmetroidsError, ValueError):
    pass


class NotNormalError(SymmetroidsError, ValueError):
    pass


# ---------------------------------------------------------------- functors

class GroupoidFunctor:
    def __init__(self, source: FiniteGroupoid, target: FiniteGroupoid, object_map, arrow_map,
                 variance: str = COVARIANT):
        if variance not in (COVARIANT, CONTRAVARIANT):
            raise ValueError(f"variance must be {COVARIANT!r} or {CONTRAVARIANT!r}")
        om = np.array(object_map, dtype=np.int64)
        am = np.array(arrow_map, dtype=np.int64)
        if om.shape != (source.n_objects,) or am.shape != (source.n_arrows,):
            raise MalformedTableError("functor maps must be total on the source groupoid")
        if om.min() < 0 or om.max() >= target.n_objects or am.min() < 0 or am.max() >= target.n_arrows:
            raise MalformedTableError("functor map entry out of range")
        om.flags.writeable = False
        am.flags.writeable = False
        self.source = source
        self.target = target
        self.object_map = om
        self.arrow_map = am
        self.variance = variance

    @property
    def covariant(self) -> bool:
        return self.variance == COVARIANT

    def __call__(self, a: int) -> int:
        return int(self.arrow_map[a])

    def obj(self, x: int) -> int:
        return int(self.object_map[x])

    def is_bijective(self) -> bool:
        return (self.source.n_arrows == self.target.n_arrows
                and len(np.unique(self.arrow_map)) == self.target.n_arrows
                and self.source.n_objects == self.target.n_objects
                and len(np.unique(self.object_map)) == self.target.n_objects)

    def inverse(self) -> "GroupoidFunctor":
        if not self.is_bijective():
            raise ValueError("functor is not bijective")
        om = np.empty_like(self.object_map)
        om[self.object_map] = np.arange(len(om))
        am = np.empty_like(self.arrow_map)
        am[self.arrow_map] = np.arange(len(am))
        return GroupoidFunctor(self.target, self.source, om, am, self.variance)

    def then(self, other: "GroupoidFunctor") -> "GroupoidFunctor":
        """``other ∘ self``; variances multiply."""
        if other.source != self.target:
            raise ValueError("functors are not composable")
        v = COVARIANT if self.covariant == other.covariant else CONTRAVARIANT
        return GroupoidFunctor(self.source, other.target, other.object_map[self.object_map],
                               other.arrow_map[self.arrow_map], v)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupoidFunctor) and self.variance == other.variance
                and self.source == other.source and self.target == other.target
                and np.array_equal(self.object_map, other.object_map)
                and np.array_equal(self.arrow_map, other.arrow_map))

    __hash__ = None

    def describe(self) -> dict[str, str]:
        s, t = self.source, self.target
        return {s.arrow_labels[a]: t.arrow_labels[int(self.arrow_map[a])] for a in range(s.n_arrows)}

    def __repr__(self) -> str:
        return f"GroupoidFunctor({self.variance}, {self.source!r} -> {self.target!r})"


def identity_functor(g: FiniteGroupoid) -> GroupoidFunctor:
    return GroupoidFunctor(g, g, np.arange(g.n_objects), np.arange(g.n_arrows))


def inversion_functor(g: FiniteGroupoid) -> GroupoidFunctor:
    """α ↦ α⁻¹, the canonical anti-automorphism."""
    return GroupoidFunctor(g, g, np.arange(g.n_objects), g.inverse, CONTRAVARIANT)


def verify_functor(f: GroupoidFunctor) -> Report:
    rep = Report(f"{f.variance} functor laws")
    G, H = f.source, f.target
    F0, F = f.object_map, f.arrow_map
    s_img, t_img = (F0[G.source], F0[G.target]) if f.covariant else (F0[G.target], F0[G.source])
    bad = np.nonzero((H.source[F] != s_img) | (H.target[F] != t_img))[0]
    rep.add("endpoints", len(bad) == 0, int(bad[0]) if len(bad) else None)
    bad = np.nonzero(F[G.units] != H.units[F0])[0]
    rep.add("units", len(bad) == 0, int(bad[0]) if len(bad) else None)
    bad = np.nonzero(F[G.inverse] != H.inverse[F])[0]
    rep.add("inverses", len(bad) == 0, int(bad[0]) if len(bad) else None)
    bb, aa = np.nonzero(G.compose >= 0)
    lhs = F[G.compose[bb, aa]]
    rhs = H.compose[F[bb], F[aa]] if f.covariant else H.compose[F[aa], F[bb]]
    bad = np.nonzero(lhs != rhs)[0]
    rep.add("composition", len(bad) == 0,
            (int(bb[bad[0]]), int(aa[bad[0]])) if len(bad) else None)
    return rep


def image_groupoid(f: GroupoidFunctor) -> tuple[FiniteGroupoid, np.ndarray]:
    """The image of an object-injective functor as a groupoid, with its arrows in the target."""
    if len(np.unique(f.object_map)) != f.source.n_objects:
        raise ValueError("image_groupoid needs a functor injective on objects")
    H = f.target
    objs = sorted(set(int(x) for x in f.object_map))
    arrows = np.array(sorted(set(int(a) for a in f.arrow_map)), dtype=np.int64)
    sub, keep = full_subgroupoid(H, objs)
    # keep only image arrows inside the full subgroupoid on the image objects
    pos = {int(a): i for i, a in enumerate(keep)}
    sel = np.array([pos[int(a)] for a in arrows], dtype=np.int64)
    back = np.full(sub.n_arrows, UNDEF, dtype=np.int64)
    back[sel] = np.arange(len(sel))
    c = sub.compose[sel[:, None], sel[None, :]]
    comp = np.where(c >= 0, back[np.maximum(c, 0)], UNDEF)
    if (comp[c >= 0] < 0).any():
        raise ValueError("image is not closed under composition")
    return (FiniteGroupoid(sub.source[sel], sub.target[sel], back[sub.units], comp,
                           back[sub.inverse[sel]], sub.object_labels,
                           [sub.arrow_labels[i] for i in sel]), arrows)


# ---------------------------------------------------------------- normal subgroupoids

def is_normal_subgroupoid(arrows: Iterable[int], g: FiniteGroupoid) -> Report:
    """Wide, totally isotropic, closed under composition, inverse and conjugation."""
    members = sorted(set(int(a) for a in arrows))
    rep = Report("normal subgroupoid")
    mask = np.zeros(g.n_arrows, dtype=bool)
    mask[members] = True
    missing = [int(u) for u in g.units if not mask[u]]
    rep.add("wide (contains all units)", not missing, missing[0] if missing else None)
    loops = [a for a in members if g.source[a] != g.target[a]]
    rep.add("totally isotropic", not loops, loops[0] if loops else None)
    ce = None
    for b in members:
        for a in members:
            c = g.compose[b, a]
            if c >= 0 and not mask[c]:
                ce = (b, a)
                break
        if ce:
            break
    rep.add("closed under composition", ce is None, ce)
    bad = [a for a in members if not mask[g.inverse[a]]]
    rep.add("closed under inverses", not bad, bad[0] if bad else None)
    ce = None
    for n in members:
        if g.source[n] != g.target[n]:
            continue
        for a in np.nonzero(g.source == g.source[n])[0]:
            conj = g.compose[g.compose[a, n], g.inverse[a]]
            if not mask[conj]:
                ce = (int(a), n)
                break
        if ce:
            break
    rep.add("closed under conjugation", ce is None, ce)
    return rep


@dataclass(frozen=True, eq=False)
class NormalSubgroupoid:
    ambient: FiniteGroupoid
    arrows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(sorted(set(int(a) for a in self.arrows))))

    @classmethod
    def validated(cls, arrows: Iterable[int], g: FiniteGroupoid) -> "NormalSubgroupoid":
        arrows = list(arrows)
        rep = is_normal_subgroupoid(arrows, g)
        if not rep.ok:
            bad = rep.failures()[0]
            raise NotNormalError(f"not a normal subgroupoid: {bad.name} fails at {bad.counterexample}")
        return cls(g, tuple(arrows))

    def __contains__(self, a: int) -> bool:
        return int(a) in self.arrows

    def __len__(self) -> int:
        return len(self.arrows)

    def __eq__(self, other) -> bool:
        return (isinstance(other, NormalSubgroupoid) and self.arrows == other.arrows
                and self.ambient == other.ambient)

    __hash__ = None

    def labels(self) -> list[str]:
        return [self.ambient.arrow_labels[a] for a in self.arrows]


def kernel(f: GroupoidFunctor) -> NormalSubgroupoid:
    if not f.covariant:
        raise NotAFunctorError("kernel needs a covariant functor")
    rep = verify_functor(f)
    if not rep.ok:
        raise NotAFunctorError(f"not a functor: {rep.failures()[0].name}")
    H = f.target
    ker = [a for a in range(f.source.n_arrows) if H.is_unit(int(f.arrow_map[a]))]
    return NormalSubgroupoid.validated(ker, f.source)


# ---------------------------------------------------------------- quotients

@dataclass(eq=False)
class QuotientGroupoid:
    groupoid: FiniteGroupoid
    ambient: FiniteGroupoid
    normal: NormalSubgroupoid
    class_map: np.ndarray                 # ambient arrow -> class index
    classes: list[tuple[int, ...]]        # members of each class, ascending
    representatives: np.ndarray           # least member of each class

    def projection(self) -> GroupoidFunctor:
        return GroupoidFunctor(self.ambient, self.groupoid, np.arange(self.ambient.n_objects),
                               self.class_map)

    def class_of(self, a: int) -> int:
        return int(self.class_map[a])


def quotient(g: FiniteGroupoid, n: NormalSubgroupoid) -> QuotientGroupoid:
    """Classes of two-sided N-translation ``β ~ n2∘α∘n1``; composition on representatives."""
    if n.ambient != g:
        raise ValueError("normal subgroupoid belongs to another groupoid")
    rep = is_normal_subgroupoid(n.arrows, g)
    if not rep.ok:
        raise NotNormalError(f"not a normal subgroupoid: {rep.failures()[0].name}")
    C = g.compose
    by_obj: dict[int, list[int]] = {}
    for a in n.arrows:
        by_obj.setdefault(int(g.source[a]), []).append(a)
    cls = np.full(g.n_arrows, UNDEF, dtype=np.int64)
    classes: list[tuple[int, ...]] = []
    for a in range(g.n_arrows):
        if cls[a] >= 0:
            continue
        n1 = np.array(by_obj[int(g.source[a])])
        n2 = np.array(by_obj[int(g.target[a])])
        members = np.unique(C[n2[:, None], C[a, n1][None, :]])
        if (cls[members] >= 0).any():
            raise IllDefinedQuotientError("translation classes overlap")
        cls[members] = len(classes)
        classes.append(tuple(int(m) for m in members))
    k = len(classes)
    reps = np.array([c[0] for c in classes], dtype=np.int64)
    comp = np.full((k, k), UNDEF, dtype=np.int64)
    bb, aa = np.nonzero(C >= 0)
    cb, ca, cc = cls[bb], cls[aa], cls[C[bb, aa]]
    comp[cb, ca] = cc
    if not np.array_equal(comp[cb, ca], cc):
        i = np.nonzero(comp[cb, ca] != cc)[0][0]
        raise IllDefinedQuotientError(
            f"composition not well defined on classes of {int(bb[i])} and {int(aa[i])}")
    q = FiniteGroupoid(g.source[reps], g.target[reps], cls[g.units], comp, cls[g.inverse[reps]],
                       g.object_labels, [f"[{g.arrow_labels[r]}]" for r in reps])
    return QuotientGroupoid(q, g, n, cls, classes, reps)


# ---------------------------------------------------------------- isomorphism search

def _object_signatures(g: FiniteGroupoid) -> list[tuple[int, int, int]]:
    comps = connected_components(g)
    sig = [None] * g.n_objects
    for block in comps:
        arrows = int(np.isin(g.source, block).sum())
        for x in block:
            sig[x] = (len(g.hom(x, x)), len(block), arrows)
    return sig


def _component_of(g: FiniteGroupoid) -> np.ndarray:
    comp = np.empty(g.n_objects, dtype=np.int64)
    for i, block in enumerate(connected_components(g)):
        comp[block] = i
    return comp


def find_isomorphism(g1: FiniteGroupoid, g2: FiniteGroupoid,
                     caps: Caps | None = None) -> GroupoidFunctor | None:
    """Lexicographically first covariant isomorphism ``g1 -> g2``, or None.

    Raises CapExceeded when either groupoid is above the configured size caps,
    so "too large" is never confused with "not isomorphic".
    """
    caps = caps or DEFAULT_CAPS
    for g in (g1, g2):
        if g.n_objects > caps.iso_objects:
            raise CapExceeded("isomorphism search objects", caps.iso_objects, g.n_objects)
        if g.n_arrows > caps.iso_arrows:
            raise CapExceeded("isomorphism search arrows", caps.iso_arrows, g.n_arrows)
    if g1.n_objects != g2.n_objects or g1.n_arrows != g2.n_arrows:
        return None
    sig1, sig2 = _object_signatures(g1), _object_signatures(g2)
    if sorted(sig1) != sorted(sig2):
        return None
    comp1, comp2 = _component_of(g1), _component_of(g2)
    n = g1.n_objects
    obj = [-1] * n
    used = [False] * n
    cmap: dict[int, int] = {}

    def objects(i):
        if i == n:
            yield list(obj)
            return
        for y in range(n):
            if used[y] or sig2[y] != sig1[i]:
                continue
            c1, c2 = int(comp1[i]), int(comp2[y])
            fresh = c1 not in cmap
            if fresh and c2 in cmap.values():
                continue
            if not fresh and cmap[c1] != c2:
                continue
            obj[i], used[y] = y, True
            if fresh:
                cmap[c1] = c2
            yield from objects(i + 1)
            obj[i], used[y] = -1, False
            if fresh:
                del cmap[c1]

    for pi in objects(0):
        amap = _arrow_search(g1, g2, np.array(pi, dtype=np.int64))
        if amap is not None:
            f = GroupoidFunctor(g1, g2, pi, amap)
            assert verify_functor(f).ok and f.is_bijective()
            return f
    return None


def _arrow_search(g1: FiniteGroupoid, g2: FiniteGroupoid, pi: np.ndarray) -> np.ndarray | None:
    m = g1.n_arrows
    s1, t1, C1, i1 = g1.source, g1.target, g1.compose, g1.inverse
    s2, t2, C2, i2 = g2.source, g2.target, g2.compose, g2.inverse

    def assign(fmap, rmap, a, b):
        stack = [(a, b)]
        while stack:
            a, b = stack.pop()
            if fmap[a] >= 0:
                if fmap[a] != b:
                    return False
                continue
            if rmap[b] >= 0 or s2[b] != pi[s1[a]] or t2[b] != pi[t1[a]]:
                return False
            fmap[a], rmap[b] = b, a
            stack.append((int(i1[a]), int(i2[b])))
            done = np.nonzero(fmap >= 0)[0]
            for c in done[s1[done] == t1[a]]:
                stack.append((int(C1[c, a]), int(C2[fmap[c], b])))
            for c in done[t1[done] == s1[a]]:
                stack.append((int(C1[a, c]), int(C2[b, fmap[c]])))
        return True

    fmap = np.full(m, UNDEF, dtype=np.int64)
    rmap = np.full(m, UNDEF, dtype=np.int64)
    for x in range(g1.n_objects):
        if not assign(fmap, rmap, int(g1.units[x]), int(g2.units[pi[x]])):
            return None

    def dfs(fmap, rmap):
        free = np.nonzero(fmap < 0)[0]
        if len(free) == 0:
            return fmap
        a = int(free[0])
        for b in g2.hom(int(pi[t1[a]]), int(pi[s1[a]])):
            if rmap[b] >= 0:
                continue
            f2, r2 = fmap.copy(), rmap.copy()
            if assign(f2, r2, a, b):
                out = dfs(f2, r2)
                if out is not None:
                    return out
        return None

    return dfs(fmap, rmap)


def find_group_isomorphism(h1: FiniteGroup, h2: FiniteGroup,
                           caps: Caps | None = None) -> np.ndarray | None:
    """Element map of the first group isomorphism ``h1 -> h2``, or None."""
    caps = caps or DEFAULT_CAPS
    caps = caps.replace(iso_arrows=max(caps.iso_arrows, h1.order, h2.order))
    f = find_isomorphism(group_groupoid(h1), group_groupoid(h2), caps)
    return None if f is None else f.arrow_map


def groups_isomorphic(h1: FiniteGroup, h2: FiniteGroup) -> bool:
    return find_group_isomorphism(h1, h2) is not None


# ---------------------------------------------------------------- fundamental sequence

@dataclass(eq=False)
class Splitting:
    """Splitting data of one connected component.

    ``transports[x]`` is the chosen arrow from the base object to ``x``
    (lowest index; the unit at the base).  ``decomposition`` is the
    isomorphism ``G(Ω_c) x Γ -> component``.
    """
    objects: list[int]
    base: int
    component: FiniteGroupoid
    arrow_embedding: np.ndarray        # component arrow -> ambient arrow
    transports: dict[int, int]
    gamma: FiniteGroup
    gamma_arrows: tuple[int, ...]
    section: GroupoidFunctor           # G(Ω_c) -> component
    decomposition: GroupoidFunctor     # G(Ω_c) x Γ -> component
    report: Report


@dataclass(eq=False)
class FundamentalSequence:
    groupoid: FiniteGroupoid
    isotropy: NormalSubgroupoid
    projection: GroupoidFunctor        # g -> G(Ω)
    splittings: list[Splitting] = field(default_factory=list)
    report: Report | None = None

    @property
    def connected(self) -> bool:
        return len(self.splittings) == 1

    @property
    def splitting(self) -> Splitting:
        if not self.connected:
            raise ValueError("groupoid is disconnected; use .splittings for per-component data")
        return self.splittings[0]

    @property
    def gamma(self) -> FiniteGroup:
        return self.splitting.gamma


def fundamental_sequence(g: FiniteGroupoid) -> FundamentalSequence:
    """``1 -> G0 -> G -> G(Ω) -> 1`` and its splitting ``G ≅ G(Ω) x Γ`` per component."""
    loops = [a for a in range(g.n_arrows) if g.source[a] == g.target[a]]
    iso = NormalSubgroupoid.validated(loops, g)
    n = g.n_objects
    pair = pair_groupoid(n, g.object_labels)
    proj = GroupoidFunctor(g, pair, np.arange(n), g.target * n + g.source)
    rep = Report("fundamental sequence")
    rep.extend(verify_functor(proj), "projection: ")
    ker = kernel(proj)
    rep.add("kernel of projection is the isotropy subgroupoid", ker.arrows == iso.arrows)
    splittings = [_split_component(g, block) for block in connected_components(g)]
    for i, sp in enumerate(splittings):
        rep.extend(sp.report, f"component {i}: ")
    return FundamentalSequence(g, iso, proj, splittings, rep)


def _split_component(g: FiniteGroupoid, block: list[int]) -> Splitting:
    comp, emb = full_subgroupoid(g, block)
    base = 0
    transports = {}
    for x in range(comp.n_objects):
        transports[x] = int(comp.units[0]) if x == 0 else comp.hom(x, 0)[0]
    gamma = isotropy_group(comp, base)
    gamma_arrows = isotropy_arrows(comp, base)
    k = comp.n_objects
    pair = pair_groupoid(k, comp.object_labels)
    C, inv = comp.compose, comp.inverse

    def conj(y, gam, x):  # t_y ∘ γ ∘ t_x⁻¹
        return int(C[C[transports[y], gam], inv[transports[x]]])

    sec = np.array([conj(a // k, int(comp.units[base]), a % k) for a in range(k * k)])
    section = GroupoidFunctor(pair, comp, np.arange(k), sec)
    prod = direct_product(pair, group_groupoid(gamma))
    r = gamma.order
    dec = np.empty(prod.n_arrows, dtype=np.int64)
    for pa in range(k * k):
        for gi, gam in enumerate(gamma_arrows):
            dec[pa * r + gi] = conj(pa // k, gam, pa % k)
    decomposition = GroupoidFunctor(prod, comp, np.arange(k), dec)
    rep = Report("splitting")
    rep.extend(verify_functor(section), "section: ")
    back = GroupoidFunctor(comp, pair, np.arange(k), comp.target * k + comp.source)
    rep.add("projection ∘ section = id", bool(np.array_equal(back.arrow_map[sec], np.arange(k * k))))
    rep.extend(verify_functor(decomposition), "decomposition: ")
    rep.add("decomposition bijective", decomposition.is_bijective())
    return Splitting([int(x) for x in block], int(block[0]), comp, emb, transports, gamma,
                     gamma_arrows, section, decomposition, rep)
