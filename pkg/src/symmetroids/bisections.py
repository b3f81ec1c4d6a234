"""Bisections, the bisection group and the reconstruction of a groupoid from it."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import (
    DEFAULT_CAPS, CapExceeded, Caps, FiniteGroup, FiniteGroupoid, Report,
    action_groupoid, connected_components, full_subgroupoid, group_from_elements,
    is_connected, subgroup, verify_group_axioms,
)
from .morphisms import (
    GroupoidFunctor, NormalSubgroupoid, QuotientGroupoid, find_isomorphism, kernel,
    quotient, verify_functor,
)


@dataclass(frozen=True, eq=False)
class Bisection:
    """A bisection stored as ``b_s``: one outgoing arrow per object."""

    groupoid: FiniteGroupoid
    arrows: tuple[int, ...]

    def __post_init__(self):
        g = self.groupoid
        arrows = tuple(int(a) for a in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        if len(arrows) != g.n_objects:
            raise ValueError("a bisection picks exactly one arrow per object")
        if any(g.source[a] != x for x, a in enumerate(arrows)):
            raise ValueError("b_s(x) must have source x")
        if len(set(int(g.target[a]) for a in arrows)) != g.n_objects:
            raise ValueError("targets of a bisection must be pairwise distinct")

    @property
    def phi(self) -> np.ndarray:
        """The induced bijection ``x ↦ t(b_s(x))``."""
        return self.groupoid.target[list(self.arrows)]

    def act(self, x: int) -> int:
        return int(self.groupoid.target[self.arrows[x]])

    def b_t(self, y: int) -> int:
        """The arrow of the bisection ending at ``y``."""
        return self.arrows[int(np.nonzero(self.phi == y)[0][0])]

    def subset(self) -> frozenset[int]:
        return frozenset(self.arrows)

    def label(self) -> str:
        return "{" + ",".join(self.groupoid.arrow_labels[a] for a in self.arrows) + "}"

    def __eq__(self, other) -> bool:
        return (isinstance(other, Bisection) and self.arrows == other.arrows
                and self.groupoid == other.groupoid)

    def __hash__(self) -> int:
        return hash(self.arrows)

    def __repr__(self) -> str:
        return f"Bisection{self.label()}"


def identity_bisection(g: FiniteGroupoid) -> Bisection:
    return Bisection(g, tuple(int(u) for u in g.units))


def compose_bisections(b2: Bisection, b1: Bisection) -> Bisection:
    """``(b2∘b1)_s(x) = (b2)_s(φ_{b1}(x)) ∘ (b1)_s(x)``."""
    if b2.groupoid is not b1.groupoid and b2.groupoid != b1.groupoid:
        raise ValueError("bisections of different groupoids")
    C = b1.groupoid.compose
    return Bisection(b1.groupoid, tuple(int(C[b2.arrows[y], a]) for a, y in zip(b1.arrows, b1.phi)))


def invert_bisection(b: Bisection) -> Bisection:
    """``(b⁻¹)_s(x) = (b_t(x))⁻¹``."""
    g = b.groupoid
    return Bisection(g, tuple(int(g.inverse[b.b_t(x)]) for x in range(g.n_objects)))


def bisection_action(b: Bisection, x: int) -> int:
    return b.act(x)


@dataclass(eq=False)
class BisectionGroup:
    groupoid: FiniteGroupoid
    elements: list[Bisection]
    table: np.ndarray
    identity: int
    inverse: np.ndarray
    labels: list[str] = field(default_factory=list)

    def __post_init__(self):
        self._index = {b.arrows: i for i, b in enumerate(self.elements)}
        if not self.labels:
            self.labels = [b.label() for b in self.elements]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> Bisection:
        return self.elements[i]

    def index(self, b: Bisection | Sequence[int]) -> int:
        key = b.arrows if isinstance(b, Bisection) else tuple(int(a) for a in b)
        return self._index[key]

    def mul(self, i: int, j: int) -> int:
        """Index of ``elements[i] ∘ elements[j]``."""
        return int(self.table[i, j])

    def phi_table(self) -> np.ndarray:
        return np.array([b.phi for b in self.elements], dtype=np.int64)

    def as_group(self) -> FiniteGroup:
        return FiniteGroup(self.table, self.labels)

    def relabel(self, labels: Sequence[str]) -> "BisectionGroup":
        return BisectionGroup(self.groupoid, self.elements, self.table, self.identity,
                              self.inverse, list(labels))


def _all_bisection_arrays(g: FiniteGroupoid, caps: Caps) -> list[tuple[int, ...]]:
    n = g.n_objects
    out_arrows = [[int(a) for a in g.arrows_from(x)] for x in range(n)]
    tgt = g.target
    found: list[tuple[int, ...]] = []
    chosen = [0] * n
    used = [False] * n

    def rec(x):
        if x == n:
            found.append(tuple(chosen))
            if len(found) > caps.bisections:
                raise CapExceeded("bisection enumeration", caps.bisections)
            return
        for a in out_arrows[x]:
            y = int(tgt[a])
            if not used[y]:
                used[y] = True
                chosen[x] = a
                rec(x + 1)
                used[y] = False

    rec(0)
    return found


def enumerate_bisections(g: FiniteGroupoid, caps: Caps | None = None) -> BisectionGroup:
    """All bisections, ordered lexicographically by (b_s(0), b_s(1), ...)."""
    caps = caps or DEFAULT_CAPS
    arrays = _all_bisection_arrays(g, caps)
    B = np.array(arrays, dtype=np.int64)            # k x n
    k = len(arrays)
    index = {a: i for i, a in enumerate(arrays)}
    phi = g.target[B]                               # k x n
    C = g.compose
    # (b2∘b1)[x] = C[b2[phi1[x]], b1[x]]
    table = np.empty((k, k), dtype=np.int64)
    for j in range(k):
        prod = C[B[:, phi[j]], B[j][None, :]]
        table[:, j] = [index[tuple(row)] for row in prod.tolist()]
    ident = index[tuple(int(u) for u in g.units)]
    inverse = np.array([int(np.nonzero(table[i] == ident)[0][0]) for i in range(k)], dtype=np.int64)
    elements = [Bisection(g, a) for a in arrays]
    return BisectionGroup(g, elements, table, ident, inverse)


def brute_force_bisections(g: FiniteGroupoid) -> list[frozenset[int]]:
    """Oracle: every arrow subset on which both s and t restrict to bijections."""
    m, n = g.n_arrows, g.n_objects
    if m > 20:
        raise CapExceeded("brute-force subset oracle arrows", 20, m)
    s, t = g.source, g.target
    out = []
    for mask in range(1 << m):
        if bin(mask).count("1") != n:
            continue
        sub = [a for a in range(m) if mask >> a & 1]
        if len(set(int(s[a]) for a in sub)) == n and len(set(int(t[a]) for a in sub)) == n:
            out.append(frozenset(sub))
    return out


def verify_bisection_group(bg: BisectionGroup) -> Report:
    rep = Report("bisection group")
    rep.extend(verify_group_axioms(bg.as_group()), "group: ")
    e = bg.elements[bg.identity]
    rep.add("identity is the unit bisection", e.arrows == tuple(int(u) for u in bg.groupoid.units))
    phi = bg.phi_table()
    bad = None
    for i in range(len(bg)):
        for j in range(len(bg)):
            if not np.array_equal(phi[bg.table[i, j]], phi[i][phi[j]]):
                bad = (i, j)
                break
        if bad:
            break
    rep.add("action law (b2∘b1)·x = b2·(b1·x)", bad is None, bad)
    g = bg.groupoid
    if is_connected(g):
        from math import factorial
        n = g.n_objects
        gamma = len(g.hom(0, 0))
        rep.add("count n!·|Γ|^n", len(bg) == factorial(n) * gamma ** n,
                detail=f"{len(bg)} bisections")
    return rep


# ---------------------------------------------------------------- reconstruction

@dataclass(eq=False)
class Reconstruction:
    groupoid: FiniteGroupoid
    bisections: BisectionGroup
    action_groupoid: FiniteGroupoid      # arrow (b, x) has index b*n + x
    functor: GroupoidFunctor             # A(y;b;x) = b_s(x)
    kernel: NormalSubgroupoid
    quotient: QuotientGroupoid
    induced: GroupoidFunctor             # quotient -> groupoid, [α] ↦ A(α)
    witness: GroupoidFunctor | None      # from the isomorphism search
    report: Report

    def arrow(self, b: int, x: int) -> int:
        return b * self.groupoid.n_objects + x

    def triple(self, a: int) -> tuple[int, int, int]:
        """``(y, b, x)`` for an action-groupoid arrow."""
        n = self.groupoid.n_objects
        b, x = divmod(a, n)
        return (self.bisections[b].act(x), b, x)


def reconstruct(g: FiniteGroupoid, caps: Caps | None = None,
                labels: Sequence[str] | None = None) -> Reconstruction:
    """Rebuild a connected groupoid as (𝒢 x Ω) / ker A.

    ``labels`` optionally names the bisections (used in arrow labels ``(y;b;x)``).
    """
    caps = caps or DEFAULT_CAPS
    if not is_connected(g):
        raise ValueError("reconstruct needs a connected groupoid; use reconstruct_components")
    bg = enumerate_bisections(g, caps)
    if labels is not None:
        bg = bg.relabel(labels)
    n = g.n_objects
    phi = bg.phi_table()
    ag = action_groupoid(bg.as_group(), phi, object_labels=g.object_labels)
    amap = np.array([bg[b].arrows[x] for b in range(len(bg)) for x in range(n)], dtype=np.int64)
    A = GroupoidFunctor(ag, g, np.arange(n), amap)
    rep = Report("reconstruction")
    rep.extend(verify_functor(A), "A: ")
    rep.add("A surjective", len(np.unique(amap)) == g.n_arrows)
    N = kernel(A)
    rep.add("N = {(x;b;x) : b_s(x) = 1_x}",
            all(phi[a // n, a % n] == a % n for a in N.arrows))
    Q = quotient(ag, N)
    fibers = {}
    for a in range(ag.n_arrows):
        fibers.setdefault(int(amap[a]), []).append(a)
    rep.add("classes are the fibers of A",
            sorted(Q.classes) == sorted(tuple(v) for v in fibers.values()))
    induced = GroupoidFunctor(Q.groupoid, g, np.arange(n), amap[Q.representatives])
    ind_rep = verify_functor(induced)
    rep.add("induced map quotient -> G is an isomorphism", ind_rep.ok and induced.is_bijective())
    witness = find_isomorphism(Q.groupoid, g, caps)
    rep.add("quotient ≅ G (isomorphism search)", witness is not None)
    return Reconstruction(g, bg, ag, A, N, Q, induced, witness, rep)


def reconstruct_components(g: FiniteGroupoid, caps: Caps | None = None) -> list[Reconstruction]:
    return [reconstruct(full_subgroupoid(g, block)[0], caps) for block in connected_components(g)]


# ---------------------------------------------------------------- semidirect structure

@dataclass(eq=False)
class SemidirectStructure:
    bisections: BisectionGroup
    kernel: list[int]                 # 𝒢0 as indices into the bisection group
    kernel_group: FiniteGroup
    quotient: FiniteGroup             # ℋ as the group of maps φ_b (element i = quotient_maps[i])
    quotient_maps: list[tuple[int, ...]]
    projection: np.ndarray            # bisection index -> ℋ index
    section: list[int]                # ℋ index -> bisection index
    homomorphic: bool
    conjugation: dict[int, dict[int, int]]   # W^ρ_h(k) on 𝒢0 indices
    report: Report

    def W(self, h: int, k: int) -> int:
        return self.conjugation[h][k]


def _search_homomorphic_section(bg: BisectionGroup, H: FiniteGroup, proj: np.ndarray,
                                caps: Caps) -> list[int] | None:
    fibers = [[int(b) for b in np.nonzero(proj == h)[0]] for h in range(H.order)]
    nodes = [0]

    def extend(sec, h, b):
        stack = [(h, b)]
        while stack:
            h, b = stack.pop()
            if sec[h] >= 0:
                if sec[h] != b:
                    return False
                continue
            sec[h] = b
            for h2 in range(H.order):
                if sec[h2] >= 0:
                    stack.append((H.mul(h, h2), bg.mul(b, sec[h2])))
                    stack.append((H.mul(h2, h), bg.mul(sec[h2], b)))
        return True

    def dfs(sec):
        nodes[0] += 1
        if nodes[0] > caps.search_nodes:
            return None
        free = [h for h in range(H.order) if sec[h] < 0]
        if not free:
            return sec
        h = free[0]
        for b in fibers[h]:
            s2 = list(sec)
            if extend(s2, h, b):
                out = dfs(s2)
                if out is not None:
                    return out
        return None

    start = [-1] * H.order
    extend(start, H.identity, bg.identity)
    return dfs(start)


def semidirect_structure(bg: BisectionGroup, section: Sequence[int] | dict | None = None,
                         caps: Caps | None = None) -> SemidirectStructure:
    """𝒢 ≅ 𝒢0 ⋊ ℋ with 𝒢0 = {b : φ_b = id} and ℋ the group of maps φ_b.

    ``section`` may fix ρ explicitly, as a list or dict from ℋ indices to
    bisection indices; otherwise a homomorphic section is searched for and a
    set-theoretic one is used if none is found.
    """
    caps = caps or DEFAULT_CAPS
    n = bg.groupoid.n_objects
    phi = [tuple(int(v) for v in row) for row in bg.phi_table()]
    ident_map = tuple(range(n))
    G0 = [i for i, p in enumerate(phi) if p == ident_map]
    maps: list[tuple[int, ...]] = [ident_map]
    for p in phi:
        if p not in maps:
            maps.append(p)
    H = group_from_elements(maps, lambda p, q: tuple(p[i] for i in q),
                            ["".join(map(str, m)) for m in maps])
    proj = np.array([maps.index(p) for p in phi], dtype=np.int64)
    rep = Report("semidirect structure")
    G = bg.as_group()
    rep.add("𝒢0 is a normal subgroup",
            all(bg.mul(bg.mul(g_, k), int(bg.inverse[g_])) in G0 for g_ in range(len(bg)) for k in G0))
    proj_hom = all(proj[bg.mul(i, j)] == H.mul(proj[i], proj[j])
                   for i in range(len(bg)) for j in range(len(bg)))
    rep.add("projection 𝒢 -> ℋ is a homomorphism", proj_hom)
    if section is not None:
        if isinstance(section, dict):
            sec = [int(section[h]) for h in range(H.order)]
        else:
            sec = [int(b) for b in section]
        rep.add("section is a lift of ℋ", all(proj[b] == h for h, b in enumerate(sec)))
    else:
        sec = _search_homomorphic_section(bg, H, proj, caps)
        if sec is None:
            sec = [int(np.nonzero(proj == h)[0][0]) for h in range(H.order)]
    homomorphic = all(sec[H.mul(h1, h2)] == bg.mul(sec[h1], sec[h2])
                      for h1 in range(H.order) for h2 in range(H.order))
    conj = {h: {k: bg.mul(bg.mul(sec[h], k), int(bg.inverse[sec[h]])) for k in G0}
            for h in range(H.order)}
    rep.add("W^ρ_h preserves 𝒢0", all(v in G0 for d in conj.values() for v in d.values()))
    if homomorphic:
        # (k1,h1)(k2,h2) = (k1 W_h1(k2), h1 h2) and (k, h) ↦ k∘ρ(h)
        pairs = [(k, h) for k in G0 for h in range(H.order)]
        img = [bg.mul(k, sec[h]) for k, h in pairs]
        bij = sorted(img) == list(range(len(bg)))
        hom = all(img[pairs.index((bg.mul(k1, conj[h1][k2]), H.mul(h1, h2)))]
                  == bg.mul(img[i], img[j])
                  for i, (k1, h1) in enumerate(pairs) for j, (k2, h2) in enumerate(pairs))
        rep.add("(k,h) ↦ k∘ρ(h) is an isomorphism 𝒢0 ⋊ ℋ -> 𝒢", bij and hom)
    else:
        rep.skip("(k,h) ↦ k∘ρ(h) is an isomorphism 𝒢0 ⋊ ℋ -> 𝒢",
                 "no homomorphic section: extension, not verified split")
    K = subgroup(G, G0)
    return SemidirectStructure(bg, G0, K, H, maps, proj, sec, homomorphic, conj, rep)
