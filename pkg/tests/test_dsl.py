import numpy as np
import pytest

from symmetroids.algebra import GroupoidFunction
from symmetroids.core import c2_4, direct_product, group_groupoid, cyclic_group, pair_groupoid, swap_base
from symmetroids.dsl import (
    Call, DSLError, Listing, Num, build_groupoid, dumps_function, dumps_groupoid,
    load_groupoid, load_symmetroid, loads_function, loads_groupoid, loads_symmetroid,
    parse_spec, parse_symmetroid, print_spec, print_symmetroid, to_listing,
)
from symmetroids.morphisms import find_isomorphism
from symmetroids.symmetroid import verify_two_groupoid

from conftest import DATA

TINY = """\
# two objects joined by one arrow and its inverse
objects p q
arrow 1p : p -> p
arrow 1q : q -> q
arrow u : p -> q
arrow v : q -> p
compose v u = 1p
compose u v = 1q
"""


def test_parse_product():
    spec = parse_spec("product(pair(2), group(Z2))")
    assert isinstance(spec, Call) and spec.name == "product"
    assert spec.args[0] == Call("pair", (Num(2),))
    g = build_groupoid(spec)
    assert find_isomorphism(g, c2_4()) is not None


def test_shipped_c2_4_has_paper_labels():
    g = load_groupoid(DATA / "c2_4.gpd")
    assert g == c2_4()


def test_shipped_swap_base_listing():
    text = (DATA / "swap_base.gpd").read_text()
    assert isinstance(parse_spec(text), Listing)
    g = loads_groupoid(text)
    assert g.n_arrows == 16 and g.n_objects == 4
    assert find_isomorphism(g, swap_base()) is not None


@pytest.mark.parametrize("name", ["c2_4", "pair2", "trivial", "c2_4_product", "z4_on_4", "swap_base"])
def test_shipped_files_load(name):
    g = load_groupoid(DATA / f"{name}.gpd")
    assert g.n_arrows >= 1


def test_listing_with_implicit_units():
    g = loads_groupoid(TINY)
    assert g == build_groupoid(parse_spec(TINY))
    assert find_isomorphism(g, pair_groupoid(2)) is not None
    assert g.arrow_labels[g.inverse[g.arrow("u")]] == "v"


@pytest.mark.parametrize("g", [c2_4(), pair_groupoid(3), swap_base(),
                               direct_product(pair_groupoid(2), group_groupoid(cyclic_group(3)))])
def test_dump_round_trip(g):
    text = dumps_groupoid(g)
    assert loads_groupoid(text) == g
    assert parse_spec(print_spec(parse_spec(text))) == parse_spec(text)
    assert to_listing(g) == parse_spec(text)


def test_print_round_trip_expression():
    for text in ["product(pair(2), group(Z2))", "union(trivial(), named(C2_4))",
                 "action(group(Z2), [[0, 1], [1, 0]])", "group([[0, 1], [1, 0]])"]:
        spec = parse_spec(text)
        assert parse_spec(print_spec(spec)) == spec


@pytest.mark.parametrize("text,line,col", [
    ("pair(", 1, 6),
    ("pair(2) x", 1, 9),
    ("\n\nfrob(2)", 3, 1),
    ("group(Z7x)", 1, 7),
])
def test_errors_carry_position(text, line, col):
    with pytest.raises(DSLError) as err:
        build_groupoid(parse_spec(text))
    assert (err.value.line, err.value.col) == (line, col)
    assert f"line {line}, col {col}" in str(err.value)


def test_listing_errors_point_at_line():
    bad = TINY.replace("arrow v : q -> p", "arrow v : q -> r")
    with pytest.raises(DSLError) as err:
        loads_groupoid(bad)
    assert err.value.line == 6
    broken = TINY.replace("compose u v = 1q\n", "compose u v = u\n")
    with pytest.raises(DSLError):
        loads_groupoid(broken)


def test_symmetroid_file():
    s = load_symmetroid(DATA / "swap.smd")
    assert s.n_cells == 28 and verify_two_groupoid(s).ok
    spec = parse_symmetroid((DATA / "swap.smd").read_text())
    assert parse_symmetroid(print_symmetroid(spec)) == spec


def test_symmetroid_missing_inverse_rejected():
    text = (DATA / "swap.smd").read_text().replace("cell x_+-' : (1-,1+) => (1+,1-) +\n", "")
    with pytest.raises(Exception) as err:
        loads_symmetroid(text)
    assert "vertical inverses" in str(err.value)


def test_symmetroid_unknown_arrow():
    with pytest.raises(DSLError) as err:
        loads_symmetroid("base pair(2)\ncell x : (0,1) => (9,9) +\n")
    assert (err.value.line, err.value.col) == (2, 19)
    with pytest.raises(DSLError) as err:
        loads_symmetroid("base pair(2)\ncell x : (0,1) => (1,0) -\nvcompose x y = x\n")
    assert (err.value.line, err.value.col) == (3, 12)


def test_function_round_trip(c24):
    f = GroupoidFunction.from_mapping(c24, {"a1": 3, "s-": -1})
    assert loads_function(dumps_function(f), c24) == f
    z = GroupoidFunction(c24, np.arange(8) * (0.5 + 1j))
    assert loads_function(dumps_function(z), c24).allclose(z)


def test_function_errors(c24):
    with pytest.raises(DSLError) as err:
        loads_function("1+ 1\nzz 2\n", c24)
    assert err.value.line == 2
    with pytest.raises(DSLError):
        loads_function("1+ one\n", c24)
    with pytest.raises(DSLError):
        loads_function("1+ 1\n1+ 2\n", c24)
