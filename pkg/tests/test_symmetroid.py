import pytest

from symmetroids.core import Caps, pair_groupoid, swap_base
from symmetroids.symmetroid import (
    AxiomViolationError, canonical_little_symmetroid, canonical_symmetroid,
    canonical_target, is_sub_two_groupoid, reversibility_symmetroid, tau_key,
    trivial_symmetroid, user_symmetroid, verify_canonical_relations, verify_two_groupoid,
    vertical_orbits, vertical_unit_key, xi_right_key,
)
from conftest import swap_cells


@pytest.mark.parametrize("build", [canonical_little_symmetroid, canonical_symmetroid,
                                   reversibility_symmetroid])
@pytest.mark.parametrize("n", [2, 3])
def test_canonical_families_pass_on_pairs(build, n):
    rep = verify_two_groupoid(build(pair_groupoid(n)))
    assert rep.ok, rep.render()


def test_pair_s0_is_units_and_inversions():
    g = pair_groupoid(3)
    s0 = canonical_little_symmetroid(g)
    for a in range(g.n_arrows):
        keys = {s0.keys[i] for i in s0.cells_over(a)}
        assert keys == {vertical_unit_key(g, a), tau_key(g, a)}


def test_s0_c2_4_over_alpha1(c24):
    s0 = canonical_little_symmetroid(c24)
    a1, a2 = c24.arrow("a1"), c24.arrow("a2")
    plus = [i for i in s0.cells_over(a1) if s0.parity[i] == 1]
    # four (λ, ρ) pairs of σ-loops; they only reach α1 and α2
    assert len(plus) == 4
    assert {int(s0.tgt[i]) for i in plus} == {a1, a2}
    assert s0.vunit[a1] in plus


def test_canonical_count_pair2():
    g = pair_groupoid(2)
    s = canonical_symmetroid(g)
    for b in range(g.n_arrows):
        cells = s.cells_over(b)
        assert sum(s.parity[i] == 1 for i in cells) == 4
        assert sum(s.parity[i] == -1 for i in cells) == 4


def test_xi_right_target(c24):
    s = canonical_symmetroid(c24)
    # ξ^R_α: β ⇒ β∘α⁻¹ needs s(α) = s(β); realized as (1_{tβ}, α⁻¹, +)
    beta, alpha = c24.arrow("a1"), c24.arrow("a2")
    k = xi_right_key(c24, beta, alpha)
    assert k == (beta, int(c24.units[c24.target[beta]]), int(c24.inverse[alpha]), 1)
    assert k in s.index
    assert c24.arrow_labels[canonical_target(c24, k)] == "s+"
    with pytest.raises(ValueError):
        xi_right_key(c24, beta, c24.arrow("b1"))


def test_reversibility_count(c24):
    t = reversibility_symmetroid(c24)
    assert t.n_cells == 2 * c24.n_arrows
    for a in range(c24.n_arrows):
        tau = t.cell(tau_key(c24, a))
        assert t.tgt[tau] == c24.inverse[a]
        back = t.cell(tau_key(c24, int(c24.inverse[a])))
        assert t.vcompose(back, tau) == t.vunit[a]
    u = c24.units[0]
    assert t.cell(tau_key(c24, int(u))) != t.vunit[u]


def test_inclusions(c24):
    t, s0, s = (reversibility_symmetroid(c24), canonical_little_symmetroid(c24),
                canonical_symmetroid(c24))
    assert is_sub_two_groupoid(t, s0).ok
    assert is_sub_two_groupoid(s0, s).ok
    assert not is_sub_two_groupoid(s, s0).ok


def test_swap_symmetroid_valid(swap):
    assert swap.n_cells == 16 + 12
    rep = verify_two_groupoid(swap)
    assert rep.ok
    assert "quadruples" in rep["exchange identity"].detail


def test_swap_cell_horizontal_products(swap):
    g = swap.base
    for i in range(swap.n_cells):
        for j in range(swap.n_cells):
            k = swap.hcompose(i, j)
            if k >= 0:
                assert swap.src[k] == g.comp(swap.src[i], swap.src[j])


def test_swap_missing_inverse_rejected():
    cells = swap_cells()[:-1]
    with pytest.raises(AxiomViolationError) as err:
        user_symmetroid(swap_base(), cells)
    assert "vertical inverses" in str(err.value)


def test_trivial_symmetroid(c24):
    t = trivial_symmetroid(c24)
    assert t.n_cells == c24.n_arrows and verify_two_groupoid(t).ok


def test_exchange_cap_reported():
    rep = verify_two_groupoid(canonical_symmetroid(pair_groupoid(2)), Caps(exchange=3))
    assert rep["exchange identity"].status == "not verified"


def test_s0_orbits(c24):
    orbits = vertical_orbits(canonical_little_symmetroid(c24))
    lab = c24.arrow_labels
    got = sorted(sorted(lab[a] for a in o) for o in orbits)
    assert got == [["1+", "s+"], ["1-", "s-"], ["a1", "a2", "b1", "b2"]]


def test_canonical_relations_pair3():
    assert verify_canonical_relations(pair_groupoid(3)).ok


def test_canonical_relations_c2_4(c24):
    rep = verify_canonical_relations(c24)
    assert rep.ok, rep.render()
