import itertools

import numpy as np
import pytest

from symmetroids.bisections import (
    Bisection, bisection_action, brute_force_bisections, compose_bisections,
    enumerate_bisections, identity_bisection, invert_bisection, reconstruct,
    reconstruct_components, semidirect_structure, verify_bisection_group,
)
from symmetroids.catalog import C2_4_ORDER, c2_4_bisection_labels
from symmetroids.core import (
    CapExceeded, Caps, cyclic_group, direct_product, disjoint_union, group_groupoid,
    klein_four_group, pair_groupoid, symmetric_group,
)
from symmetroids.morphisms import find_group_isomorphism, find_isomorphism


def test_c2_4_has_eight_named_bisections(c24_bisections):
    assert len(c24_bisections) == 8
    assert sorted(c2_4_bisection_labels(c24_bisections)) == sorted(C2_4_ORDER)
    assert verify_bisection_group(c24_bisections).ok


def test_small_counts():
    assert len(enumerate_bisections(pair_groupoid(1))) == 1
    assert len(enumerate_bisections(pair_groupoid(3))) == 6
    g = direct_product(pair_groupoid(2), group_groupoid(cyclic_group(3)))
    assert len(enumerate_bisections(g)) == 2 * 9


def test_table_entries(c24_bisections, bname):
    bg, n = c24_bisections, bname
    assert bg.mul(n["b_2"], n["b_1"]) == n["b_-"]
    assert bg.mul(n["b_1"], n["b_1"]) == n["b_e"]
    assert all(bg.mul(n["b_e"], i) == i for i in range(8))


def test_inverse(c24, c24_bisections, bname):
    b2 = c24_bisections[bname["b_2"]]
    assert invert_bisection(b2) == c24_bisections[bname["b_3"]]
    e = identity_bisection(c24)
    assert invert_bisection(e) == e
    for b in c24_bisections:
        assert compose_bisections(invert_bisection(b), b) == e
        assert compose_bisections(b, invert_bisection(b)) == e


def test_inverse_of_three_cycle():
    g = pair_groupoid(3)
    psi = [1, 2, 0]
    b = Bisection(g, [g.arrow(f"({psi[x]},{x})") for x in range(3)])
    inv = invert_bisection(b)
    assert list(inv.phi) == [2, 0, 1]
    assert compose_bisections(inv, b) == identity_bisection(g)


def test_action(c24, c24_bisections, bname):
    plus, minus = c24.obj("+"), c24.obj("-")
    assert bisection_action(c24_bisections[bname["b_1"]], plus) == minus
    bp = c24_bisections[bname["b_+"]]
    assert bp.act(plus) == plus and bp.act(minus) == minus
    for b1, b2 in itertools.product(c24_bisections, repeat=2):
        b21 = compose_bisections(b2, b1)
        assert all(b21.act(x) == b2.act(b1.act(x)) for x in (0, 1))


def test_invalid_bisection_rejected(c24):
    with pytest.raises(ValueError):
        Bisection(c24, [c24.arrow("b1"), c24.arrow("s-")])   # both land on -
    with pytest.raises(ValueError):
        Bisection(c24, [c24.arrow("a1"), c24.arrow("1-")])   # a1 does not start at +


def test_bisection_cap():
    with pytest.raises(CapExceeded):
        enumerate_bisections(pair_groupoid(4), Caps(bisections=10))


def test_oracle_agrees_pair3():
    g = pair_groupoid(3)
    ours = {b.subset() for b in enumerate_bisections(g)}
    assert ours == set(brute_force_bisections(g))


def test_disconnected_bisection_group():
    g = disjoint_union(pair_groupoid(2), group_groupoid(cyclic_group(3)))
    bg = enumerate_bisections(g)
    assert len(bg) == 6
    assert verify_bisection_group(bg).ok


class TestReconstruct:
    def test_c2_4(self, c24):
        r = reconstruct(c24)
        assert r.report.ok, r.report.render()
        assert r.action_groupoid.n_arrows == 16
        assert len(r.kernel) == 4 and len(r.quotient.classes) == 8

    def test_pair2(self):
        r = reconstruct(pair_groupoid(2))
        assert r.report.ok
        assert len(r.bisections) == 2
        # only b_e fixes a unit arrow at each object, so N is the units
        assert len(r.kernel) == 2

    def test_group_z2(self):
        r = reconstruct(group_groupoid(cyclic_group(2)))
        assert r.report.ok and len(r.kernel) == 1
        assert find_group_isomorphism(r.bisections.as_group(), cyclic_group(2)) is not None

    def test_disconnected(self):
        g = disjoint_union(pair_groupoid(2), pair_groupoid(3))
        with pytest.raises(ValueError):
            reconstruct(g)
        parts = reconstruct_components(g)
        assert [len(p.bisections) for p in parts] == [2, 6]
        assert all(p.report.ok for p in parts)

    def test_functor_law_on_triples(self, c24):
        r = reconstruct(c24)
        ag = r.action_groupoid
        for a in range(ag.n_arrows):
            y, b, x = r.triple(a)
            assert ag.source[a] == x and ag.target[a] == y
            assert r.functor(a) == r.bisections[b].arrows[x]


class TestSemidirect:
    def test_c2_4_search(self, c24_bisections, bname):
        sd = semidirect_structure(c24_bisections)
        assert sd.report.ok and sd.homomorphic
        assert sorted(sd.kernel) == sorted(bname[k] for k in ("b_e", "b_+", "b_-", "b_g"))
        assert find_group_isomorphism(sd.kernel_group, klein_four_group()) is not None
        assert sd.quotient.order == 2

    def test_pair3_splits(self):
        sd = semidirect_structure(enumerate_bisections(pair_groupoid(3)))
        assert sd.report.ok and len(sd.kernel) == 1 and sd.quotient.order == 6

    def test_non_homomorphic_section_not_verified(self):
        # G(Ω2)xZ4 splits, but a section with ρ(σ)² ≠ b_e cannot certify it
        bg = enumerate_bisections(direct_product(pair_groupoid(2), group_groupoid(cyclic_group(4))))
        sd = semidirect_structure(bg)
        assert sd.homomorphic and sd.report.ok
        sigma = 1
        bad = next(b for b in range(len(bg)) if sd.projection[b] == sigma
                   and bg.mul(b, b) != bg.identity)
        sd2 = semidirect_structure(bg, {0: bg.identity, sigma: bad})
        assert not sd2.homomorphic
        assert sd2.report.capped and not sd2.report.failures()
