import numpy as np
import pytest

from symmetroids.core import c2_4, pair_groupoid, swap_base
from symmetroids.morphisms import identity_functor, inversion_functor
from symmetroids.symmetroid import (
    canonical_little_symmetroid, canonical_symmetroid, reversibility_symmetroid, tau_key,
    trivial_symmetroid,
)
from symmetroids.symmetry import (
    ANTI, HOMOMORPHIC, NaturalTransformation, NotFlatError, NotInnerError,
    SymmetroidBisection, UndefinedCompositeError, cocycle_table, compute_cocycle,
    find_natural_transformation, flat_bisection_group, identity_symmetroid_bisection,
    induced_automorphism, inner_symmetry_group, invert, is_flat, multiply,
    verify_natural_transformation, wigner_embedding,
)


def ad_bisection(S, phi):
    """(b^Ad_Φ)(α) = (α, Φ(y), Φ(x)⁻¹, +) for components Φ(x): x -> ·."""
    g = S.base
    return SymmetroidBisection(S, [S.index[(a, phi[g.target[a]], int(g.inverse[phi[g.source[a]]]), 1)]
                                   for a in range(g.n_arrows)])


def left_bisection(S, phi):
    g = S.base
    return SymmetroidBisection(S, [S.index[(a, phi[g.target[a]], int(g.units[g.source[a]]), 1)]
                                   for a in range(g.n_arrows)])


def swap_phi(g):
    """Φ(x) = (swap(x), x) on G(Ω2)."""
    return [g.arrow(f"({1 - x},{x})") for x in range(2)]


@pytest.fixture(scope="module")
def s_pair2():
    return canonical_symmetroid(pair_groupoid(2))


def test_identity_is_flat_homomorphic(s_pair2):
    fl = is_flat(identity_symmetroid_bisection(s_pair2))
    assert fl and fl.variance == HOMOMORPHIC


def test_trivial_symmetroid_one_flat(c24):
    fg = flat_bisection_group(trivial_symmetroid(c24))
    assert len(fg) == 1 and fg.report.ok


def test_left_translation_by_swap_not_flat(s_pair2):
    g = s_pair2.base
    b = left_bisection(s_pair2, swap_phi(g))
    fl = is_flat(b)
    assert not fl and fl.counterexample is not None
    with pytest.raises(NotFlatError):
        induced_automorphism(b)


def test_left_translation_cocycle_undefined(s_pair2):
    g = s_pair2.base
    b = left_bisection(s_pair2, swap_phi(g))
    with pytest.raises(UndefinedCompositeError):
        compute_cocycle(b, g.arrow("(0,1)"), g.arrow("(1,0)"))


def test_flat_cocycle_trivial(s_pair2):
    g = s_pair2.base
    for b in (identity_symmetroid_bisection(s_pair2), ad_bisection(s_pair2, swap_phi(g))):
        for (ap, a), gam in cocycle_table(b).items():
            assert gam == s_pair2.vunit[g.comp(ap, a)]


def test_nontrivial_cocycle_c2_4(c24):
    S = canonical_symmetroid(c24)
    cells = list(identity_symmetroid_bisection(S).cells)
    sp = c24.arrow("s+")
    cells[sp] = S.index[(sp, sp, sp, 1)]          # s+ ⇒ s+∘s+∘s+ = s+
    b = SymmetroidBisection(S, cells)
    a1, b2 = c24.arrow("a1"), c24.arrow("b2")
    gam = compute_cocycle(b, a1, b2)
    assert S.labels[gam] == "<s+|s+|s+>"
    assert S.src[gam] == S.tgt[gam] == c24.comp(a1, b2)
    assert not is_flat(b)


def test_swap_flat_group(swap):
    fg = flat_bisection_group(swap)
    assert len(fg) == 2 and fg.report.ok
    e = fg.identity
    sigma = 1 - e
    assert fg.table[sigma, sigma] == e
    bs = fg[sigma]
    lab = swap.labels
    used = sorted(lab[c] for c in bs.cells if not lab[c].startswith("1["))
    assert used == ["x_+-", "x_+-'", "x_a+", "x_a+'", "x_a-", "x_a-'", "x_aai", "x_aai'",
                    "x_ai+", "x_ai+'", "x_ai-", "x_ai-'"]


def test_swap_natural_transformation(swap):
    g = swap.base
    fg = flat_bisection_group(swap)
    f = induced_automorphism(fg[1 - fg.identity])
    nt = find_natural_transformation(identity_functor(g), f)
    want = {"(+,+)": "(1+,1+)", "(+,-)": "(ai,a)", "(-,+)": "(a,ai)", "(-,-)": "(1-,1-)"}
    assert nt.describe() == want
    back = find_natural_transformation(f, identity_functor(g))
    assert back.inverse().describe() == want
    assert verify_natural_transformation(back).ok


def test_pair2_flats_and_inner(s_pair2):
    fg = flat_bisection_group(s_pair2)
    assert len(fg) == 4 and fg.report.ok
    assert sorted(fg.variances()) == [ANTI, ANTI, HOMOMORPHIC, HOMOMORPHIC]
    g = s_pair2.base
    ad = ad_bisection(s_pair2, swap_phi(g))
    assert {fg[i].cells for i in fg.homomorphic()} == \
        {identity_symmetroid_bisection(s_pair2).cells, ad.cells}
    inner = inner_symmetry_group(s_pair2, fg)
    assert sorted(inner.members) == sorted(fg.homomorphic())
    assert sorted(inner.not_applicable) == sorted(set(range(4)) - set(fg.homomorphic()))
    assert inner.report.ok and inner.normal


def test_ad_induces_conjugation(s_pair2):
    g = s_pair2.base
    f = induced_automorphism(ad_bisection(s_pair2, swap_phi(g)))
    assert f.covariant
    for a in range(g.n_arrows):
        y, x = int(g.target[a]), int(g.source[a])
        assert g.arrow_labels[f(a)] == f"({1 - y},{1 - x})"


def test_tau_induces_inversion(s_pair2):
    g = s_pair2.base
    bt = SymmetroidBisection(s_pair2, [s_pair2.index[tau_key(g, a)] for a in range(g.n_arrows)])
    fl = is_flat(bt)
    assert fl and fl.variance == ANTI
    assert induced_automorphism(bt) == inversion_functor(g)


def test_identity_natural_transformation(c24):
    nt = find_natural_transformation(identity_functor(c24), identity_functor(c24))
    assert nt.components == tuple(int(u) for u in c24.units)


def test_ad_swap_natural_transformation(s_pair2):
    g = s_pair2.base
    f = induced_automorphism(ad_bisection(s_pair2, swap_phi(g)))
    nt = find_natural_transformation(identity_functor(g), f)
    assert list(nt.components) == swap_phi(g)


def test_lift_and_search_agree():
    for g in (pair_groupoid(2), c2_4()):
        S = canonical_symmetroid(g)
        a = flat_bisection_group(S, strategy="lift")
        b = flat_bisection_group(S, strategy="search")
        assert {x.cells for x in a.elements} == {x.cells for x in b.elements}


def test_lift_needs_canonical(c24):
    with pytest.raises(ValueError):
        flat_bisection_group(canonical_little_symmetroid(c24), strategy="lift")


def test_little_and_reversibility_flats(c24):
    for S in (canonical_little_symmetroid(c24), reversibility_symmetroid(c24)):
        fg = flat_bisection_group(S)
        assert fg.report.ok and fg.identity >= 0


def test_product_and_inverse(s_pair2):
    fg = flat_bisection_group(s_pair2)
    e = identity_symmetroid_bisection(s_pair2)
    for b in fg.elements:
        assert multiply(invert(b), b) == e
        assert multiply(b, e) == b


class TestWigner:
    def test_identity(self, s_pair2):
        w = wigner_embedding(s_pair2, identity_symmetroid_bisection(s_pair2))
        e = identity_symmetroid_bisection(w.canonical)
        assert w.report.ok and w.left == e and w.right == e

    def test_swap(self, swap):
        fg = flat_bisection_group(swap)
        w = wigner_embedding(swap, fg[1 - fg.identity])
        assert w.report.ok, w.report.render()
        rows = w.transcript()
        assert len(rows) == 16 and all(r["product"] == r["b_phi"] for r in rows)

    def test_c2_4_sigma_loops(self, c24):
        S = canonical_symmetroid(c24)
        sigma = (c24.arrow("s+"), c24.arrow("s-"))
        nt = NaturalTransformation(identity_functor(c24), identity_functor(c24), sigma)
        assert verify_natural_transformation(nt).ok
        b = ad_bisection(S, sigma)
        assert b != identity_symmetroid_bisection(S)
        w = wigner_embedding(S, b, transformation=nt, canonical=S)
        assert w.report.ok
        assert w.b_phi == b
        assert np.array_equal(w.b_phi.phi, np.arange(8))

    def test_anti_rejected(self, s_pair2):
        g = s_pair2.base
        bt = SymmetroidBisection(s_pair2, [s_pair2.index[tau_key(g, a)] for a in range(g.n_arrows)])
        with pytest.raises(NotInnerError):
            wigner_embedding(s_pair2, bt)

    def test_wrong_transformation_rejected(self, s_pair2):
        g = s_pair2.base
        b = ad_bisection(s_pair2, swap_phi(g))
        bogus = NaturalTransformation(identity_functor(g), identity_functor(g),
                                      tuple(int(u) for u in g.units))
        with pytest.raises(NotInnerError):
            wigner_embedding(s_pair2, b, transformation=bogus)
