"""The ten acceptance criteria, one test each, with a one-line verdict per criterion.

Run directly (``python3 tests/test_acceptance.py``) for the verdict lines alone.
"""
import sys
import time
from functools import wraps
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from conftest import ACCEPTANCE, GOLDEN, swap_cells  # noqa: E402
from symmetroids.algebra import (  # noqa: E402
    GroupoidFunction, associativity_check, characteristic_of_bisection, convolve, involution,
    is_positive_definite, unit_element,
)
from symmetroids.bisections import (  # noqa: E402
    brute_force_bisections, enumerate_bisections, reconstruct, semidirect_structure,
)
from symmetroids.catalog import C2_4_BISECTIONS  # noqa: E402
from symmetroids.cli import format_table  # noqa: E402
from symmetroids.core import (  # noqa: E402
    action_groupoid, c2_4, cyclic_group, direct_product, group_groupoid, hom_set,
    klein_four_group, pair_groupoid, swap_base,
)
from symmetroids.morphisms import (  # noqa: E402
    find_group_isomorphism, find_isomorphism, identity_functor, verify_functor,
)
from symmetroids.symmetroid import (  # noqa: E402
    canonical_little_symmetroid, canonical_symmetroid, reversibility_symmetroid,
    user_symmetroid, verify_canonical_relations, verify_two_groupoid, vertical_orbits,
)
from symmetroids.symmetry import (  # noqa: E402
    find_natural_transformation, flat_bisection_group, identity_symmetroid_bisection,
    induced_automorphism, inner_symmetry_group, is_flat, multiply,
    verify_natural_transformation, wigner_embedding,
)


def corpus():
    z = lambda n: group_groupoid(cyclic_group(n))  # noqa: E731
    return {
        "G(Ω1)": pair_groupoid(1),
        "G(Ω2)": pair_groupoid(2),
        "G(Ω3)": pair_groupoid(3),
        "G(Ω2)xZ2": direct_product(pair_groupoid(2), z(2)),
        "G(Ω2)xZ3": direct_product(pair_groupoid(2), z(3)),
        "Z4 on Ω4": action_groupoid(cyclic_group(4), lambda r, j: (j + r) % 4, 4),
    }


def criterion(number, title, limit=None):
    """Record a PASS/FAIL line for the decorated check; failures still fail the test."""
    def deco(fn):
        @wraps(fn)
        def wrapper(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                detail = fn(*args, **kwargs) or ""
                dt = time.perf_counter() - t0
                if limit is not None:
                    assert dt < limit, f"took {dt:.2f}s, limit {limit}s"
            except BaseException as exc:
                dt = time.perf_counter() - t0
                ACCEPTANCE[number] = f"criterion {number:2d}: FAIL {title} ({dt:.2f}s): {exc}".splitlines()[0]
                raise
            ACCEPTANCE[number] = f"criterion {number:2d}: PASS {title} ({dt:.2f}s) {detail}".rstrip()
        return wrapper
    return deco


def c2_4_names(bg):
    g = bg.groupoid
    return {k: bg.index((g.arrow(p), g.arrow(m))) for k, (p, m) in C2_4_BISECTIONS.items()}


# ---------------------------------------------------------------- 1

# multiplication table of Bis(C2(4)): row b2, column b1 holds b2∘b1
PRODUCTS = {
    "b_e": "b_e b_+ b_- b_g b_1 b_2 b_3 b_4",
    "b_+": "b_+ b_e b_g b_- b_3 b_4 b_1 b_2",
    "b_-": "b_- b_g b_e b_+ b_2 b_1 b_4 b_3",
    "b_g": "b_g b_- b_+ b_e b_4 b_3 b_2 b_1",
    "b_1": "b_1 b_2 b_3 b_4 b_e b_+ b_- b_g",
    "b_2": "b_2 b_1 b_4 b_3 b_- b_g b_e b_+",
    "b_3": "b_3 b_4 b_1 b_2 b_+ b_e b_g b_-",
    "b_4": "b_4 b_3 b_2 b_1 b_g b_- b_+ b_e",
}


@criterion(1, "multiplication table: 8 bisections of C2(4), 64 products", limit=1.0)
def test_criterion_1_table():
    bg = enumerate_bisections(c2_4())
    assert len(bg) == 8
    n = c2_4_names(bg)
    cols = list(PRODUCTS)
    for row, line in PRODUCTS.items():
        for col, want in zip(cols, line.split()):
            got = bg.mul(n[row], n[col])
            assert got == n[want], f"{row}∘{col}: got {bg.labels[got]}, want {want}"
    golden = (GOLDEN / "table1.txt").read_text().splitlines()
    assert format_table(bg, "paper").splitlines()[: len(golden)] == golden
    return "64/64 entries, golden text identical"


# ---------------------------------------------------------------- 2

def _triples(r, n, members):
    g = r.groupoid
    return {(g.object_labels[y], n[b], g.object_labels[x])
            for y, b, x in (r.triple(a) for a in members)}


# classes written as (y; b; x); the (+;·;-) row corrects the listing of the example,
# which pairs b1 with b3 there although b1 and b3 pick different arrows at -
CLASSES = {
    "1+": {("+", "b_-", "+"), ("+", "b_e", "+")},
    "s+": {("+", "b_+", "+"), ("+", "b_g", "+")},
    "1-": {("-", "b_+", "-"), ("-", "b_e", "-")},
    "s-": {("-", "b_-", "-"), ("-", "b_g", "-")},
    "b1": {("-", "b_1", "+"), ("-", "b_3", "+")},
    "b2": {("-", "b_4", "+"), ("-", "b_2", "+")},
    "a1": {("+", "b_1", "-"), ("+", "b_2", "-")},
    "a2": {("+", "b_4", "-"), ("+", "b_3", "-")},
}
LITERAL_ALPHA_CLASSES = [{("+", "b_1", "-"), ("+", "b_3", "-")},
                         {("+", "b_4", "-"), ("+", "b_2", "-")}]


@pytest.fixture(scope="module")
def c24_reconstruction():
    g = c2_4()
    r = reconstruct(g)
    names = {i: k for k, i in c2_4_names(r.bisections).items()}
    return r, names


@criterion(2, "reconstruction of C2(4): N, 8 classes, witness", limit=5.0)
def test_criterion_2_reconstruction(c24_reconstruction):
    r, n = c24_reconstruction
    assert r.report.ok, r.report.render()
    assert _triples(r, n, r.kernel.arrows) == CLASSES["1+"] | CLASSES["1-"]
    q = r.quotient
    assert len(q.classes) == 8 and all(len(c) == 2 for c in q.classes)
    got = {frozenset(_triples(r, n, c)) for c in q.classes}
    assert got == {frozenset(v) for v in CLASSES.values()}
    # the correspondence [class] <-> arrow, checked on the witness and on A itself
    g = r.groupoid
    w = find_isomorphism(q.groupoid, g)
    assert w is not None and verify_functor(w).ok and w.is_bijective()
    for arrow, members in CLASSES.items():
        idx = [r.arrow(next(i for i, k in n.items() if k == b), g.obj(x)) for _, b, x in members]
        cls = {q.class_of(a) for a in idx}
        assert len(cls) == 1
        assert g.arrow_labels[r.induced(cls.pop())] == arrow
    literal = all(frozenset(c) in got for c in LITERAL_ALPHA_CLASSES)
    return ("classes are the fibers of A; literal (+;·;-) listing "
            + ("holds" if literal else "FAILS (b_1, b_3 pick a1, a2 at -), corrected"))


@pytest.mark.xfail(strict=True, reason="the example's (+;·;-) classes pair arrows with different images")
def test_criterion_2_literal_listing(c24_reconstruction):
    r, n = c24_reconstruction
    got = {frozenset(_triples(r, n, c)) for c in r.quotient.classes}
    for cls in LITERAL_ALPHA_CLASSES:
        assert frozenset(cls) in got


# ---------------------------------------------------------------- 3

@criterion(3, "reconstruction theorem on the corpus", limit=60.0)
def test_criterion_3_reconstruction_corpus():
    sizes = []
    for name, g in corpus().items():
        r = reconstruct(g)
        assert r.report.ok, f"{name}: {r.report.render()}"
        assert r.witness is not None and r.induced.is_bijective()
        sizes.append(f"{name}:{len(r.bisections)}")
    return " ".join(sizes)


# ---------------------------------------------------------------- 4

@criterion(4, "semidirect structure of Bis(C2(4))")
def test_criterion_4_semidirect():
    bg = enumerate_bisections(c2_4())
    n = c2_4_names(bg)
    sd = semidirect_structure(bg, {0: n["b_e"], 1: n["b_4"]})
    assert sd.report.ok, sd.report.render()
    assert sd.homomorphic
    assert sorted(sd.kernel) == sorted(n[k] for k in ("b_e", "b_+", "b_-", "b_g"))
    assert find_group_isomorphism(sd.kernel_group, klein_four_group()) is not None
    assert find_group_isomorphism(sd.quotient, cyclic_group(2)) is not None
    sigma = 1
    assert sd.quotient_maps[sigma] == (1, 0)
    W = {k: sd.W(sigma, n[k]) for k in ("b_e", "b_+", "b_-", "b_g")}
    assert W == {"b_e": n["b_e"], "b_+": n["b_-"], "b_-": n["b_+"], "b_g": n["b_g"]}
    return "ρ(σ)=b_4 homomorphic, W swaps b_+/b_-"


# ---------------------------------------------------------------- 5

@criterion(5, "2-groupoid axioms for S0, S, T on G(Ω2), G(Ω3), C2(4)", limit=120.0)
def test_criterion_5_axioms():
    counts = []
    for name, g in (("G(Ω2)", pair_groupoid(2)), ("G(Ω3)", pair_groupoid(3)), ("C2(4)", c2_4())):
        for kind, build in (("S0", canonical_little_symmetroid), ("S", canonical_symmetroid),
                            ("T", reversibility_symmetroid)):
            s = build(g)
            rep = verify_two_groupoid(s)
            assert rep.ok, f"{kind}({name}): {rep.render()}"
            assert all(c.status == "pass" for c in rep.checks)
            counts.append(s.n_cells)
    rel = verify_canonical_relations(pair_groupoid(3))
    assert rel.ok, rel.render()
    return f"9 symmetroids, {sum(counts)} cells, commutation relations on G(Ω3)"


# ---------------------------------------------------------------- 6

@criterion(6, "S0(C2(4)) orbits are G(x,y) ∪ G(y,x)")
def test_criterion_6_orbits():
    g = c2_4()
    orbits = {frozenset(o) for o in vertical_orbits(canonical_little_symmetroid(g))}
    want = set()
    for x in range(g.n_objects):
        for y in range(x, g.n_objects):
            want.add(frozenset(hom_set(g, y, x)) | frozenset(hom_set(g, x, y)))
    assert orbits == want
    return f"{len(orbits)} orbits"


# ---------------------------------------------------------------- 7

# Φ of the swap example: Φ((+,-)) = (α⁻¹, α), Φ((-,+)) = (α, α⁻¹) with α: - -> +
PAPER_PHI = {"(+,-)": "(ai,a)", "(-,+)": "(a,ai)"}


@criterion(7, "swap symmetroid: flat group {b_e, b_σ} and Φ")
def test_criterion_7_swap():
    s = user_symmetroid(swap_base(), swap_cells())
    g = s.base
    fg = flat_bisection_group(s)
    assert fg.report.ok
    e = identity_symmetroid_bisection(s)
    ids = {c[1]: c[0] for c in swap_cells()}
    sigma = [s.index[ids[lab]] if lab in ids else int(s.vunit[a]) for a, lab in enumerate(g.arrow_labels)]
    assert {b.cells for b in fg.elements} == {e.cells, tuple(sigma)}
    b_sigma = fg[fg.index(next(b for b in fg.elements if b.cells == tuple(sigma)))]
    assert multiply(b_sigma, b_sigma) == e
    phi = induced_automorphism(b_sigma)
    nt = find_natural_transformation(phi, identity_functor(g))
    assert nt is not None and verify_natural_transformation(nt).ok
    comps = nt.inverse().describe()
    for x, want in PAPER_PHI.items():
        assert comps[x] == want, f"Φ({x}) = {comps[x]}, want {want}"
    for x in ("(+,+)", "(-,-)"):      # fixed objects: any loop is allowed
        a = g.arrow(comps[x])
        assert g.source[a] == g.target[a] == g.obj(x)
    return f"Φ = {comps}"


# ---------------------------------------------------------------- 8

@criterion(8, "Wigner factorization of every inner flat bisection in the corpus")
def test_criterion_8_wigner():
    symmetroids = [(name, canonical_symmetroid(g)) for name, g in corpus().items()]
    g = c2_4()
    symmetroids += [("S(C2(4))", canonical_symmetroid(g)), ("S0(C2(4))", canonical_little_symmetroid(g)),
                    ("T(C2(4))", reversibility_symmetroid(g)),
                    ("swap", user_symmetroid(swap_base(), swap_cells()))]
    total = 0
    for name, s in symmetroids:
        inner = inner_symmetry_group(s)
        assert inner.report.ok, f"{name}: {inner.report.render()}"
        canon = canonical_symmetroid(s.base) if s.kind != "canonical" else s
        flat_canon = {b.cells for b in flat_bisection_group(canon).elements}
        for i in inner.members:
            b = inner.flat[i]
            w = wigner_embedding(s, b, inner.transformations[i], canon)
            assert w.report.ok, f"{name}#{i}: {w.report.render()}"
            # recompute the product cell by cell
            S = w.canonical
            for a in range(S.base.n_arrows):
                r = w.right.cells[a]
                assert S.vcompose(w.left.cells[int(S.tgt[r])], r) == w.b_phi.cells[a]
            assert is_flat(w.b_phi)
            assert w.b_phi.cells in flat_canon
            total += 1
    return f"{total} inner flat bisections factored"


# ---------------------------------------------------------------- 9

@criterion(9, "algebra: associativity, χ representation, unitarity, PSD")
def test_criterion_9_algebra():
    g = c2_4()
    rep = associativity_check(g)
    assert rep.ok and rep.checks[0].detail == "512 basis triples"
    bg = enumerate_bisections(g)
    chi = [characteristic_of_bisection(b) for b in bg]
    assert all(c.exact for c in chi)
    for i in range(8):
        for j in range(8):
            assert convolve(chi[i], chi[j]) == chi[bg.mul(i, j)]
    u = unit_element(g)
    assert all(convolve(involution(c), c) == u for c in chi)
    z2 = group_groupoid(cyclic_group(2))
    good = is_positive_definite(GroupoidFunction.from_mapping(z2, {"e": 1, "s": -1}), tol=1e-9)
    assert good.ok
    assert np.allclose(good.blocks[0].eigenvalues, [0.0, 2.0], rtol=0, atol=1e-9)
    bad = is_positive_definite(GroupoidFunction.from_mapping(z2, {"e": 1, "s": 2}), tol=1e-9)
    assert not bad.ok and bad.blocks[0].min_eigenvalue < -1e-9
    assert np.allclose(bad.blocks[0].eigenvalues, [-1.0, 3.0], rtol=0, atol=1e-9)
    return "512 triples, 64 pairs, 8 unitaries, Z2 eigenvalues {0,2} and {-1,3}"


# ---------------------------------------------------------------- 10

@criterion(10, "bisection enumeration vs subset oracle (|G| <= 12)", limit=30.0)
def test_criterion_10_oracle():
    checked = []
    for name, g in list(corpus().items()) + [("C2(4)", c2_4())]:
        if g.n_arrows > 12:
            continue
        ours = {b.subset() for b in enumerate_bisections(g)}
        assert ours == set(brute_force_bisections(g)), name
        checked.append(f"{name}:{len(ours)}")
    return " ".join(checked)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
