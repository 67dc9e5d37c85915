from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ellimod.errors import InputError
from ellimod.rootdata import (
    CartanType,
    build_root_datum,
    cartan_determinant,
    cartan_matrix,
    center_class,
    center_of_simply_connected,
    center_order_from_smith,
    cominuscule_vertex,
    parse_cartan_types,
    weyl_group_order,
)

# classical tables: (type, #positive roots, |W|, |Z|)
TABLE = [
    ("A1", 1, 2, 2), ("A2", 3, 6, 3), ("A3", 6, 24, 4), ("A4", 10, 120, 5),
    ("B2", 4, 8, 2), ("B3", 9, 48, 2), ("B4", 16, 384, 2),
    ("C3", 9, 48, 2), ("C4", 16, 384, 2),
    ("D4", 12, 192, 4), ("D5", 20, 1920, 4),
    ("E6", 36, 51840, 3), ("E7", 63, 2903040, 2), ("E8", 120, 696729600, 1),
    ("F4", 24, 1152, 1), ("G2", 6, 12, 1),
]


@pytest.mark.parametrize("name,npos,w,z", TABLE)
def test_classical_tables(name, npos, w, z):
    rd = build_root_datum(parse_cartan_types(name))
    assert len(rd.positive_roots) == npos
    assert weyl_group_order(rd.factors) == w
    assert center_of_simply_connected(rd).order == z
    assert center_order_from_smith(rd) == z == cartan_determinant(rd)


@pytest.mark.parametrize("name,npos,w,z", TABLE)
def test_highest_root_is_highest(name, npos, w, z):
    rd = build_root_datum(parse_cartan_types(name))
    (theta,) = rd.highest_roots
    assert all(all(t >= b for t, b in zip(theta, beta)) for beta in rd.positive_roots)
    assert tuple(rd.marks[0]) == tuple(theta)


def test_conventions():
    assert cartan_matrix(CartanType("G", 2))[1][0] == -3
    assert cartan_matrix(CartanType("B", 3))[1][2] == -2
    assert cartan_matrix(CartanType("F", 4))[1][2] == -2


def test_fundamental_coweights_dual_to_simple_roots():
    rd = build_root_datum(parse_cartan_types("B3xA2"))
    for i, w in enumerate(rd.fundamental_coweights):
        assert rd.simple_pairings(w) == tuple(Fraction(int(i == j)) for j in range(rd.rank))


def test_center_of_product():
    rd = build_root_datum(parse_cartan_types("A1xA2"))
    assert center_of_simply_connected(rd).elementary_divisors == (2, 3)
    rd = build_root_datum(parse_cartan_types("D4"))
    assert center_of_simply_connected(rd).elementary_divisors == (2, 2)


@given(st.sampled_from(["A1", "A3", "B2", "C3", "D4", "D5", "E6", "E7", "A2xB2"]), st.data())
def test_vertex_represents_class(name, data):
    rd = build_root_datum(parse_cartan_types(name))
    divs = center_of_simply_connected(rd).elementary_divisors
    c = tuple(data.draw(st.integers(0, d - 1)) for d in divs)
    a = cominuscule_vertex(rd, c)
    cls = center_class(rd, c)
    # a - class lies in the coroot lattice (integral simple-coroot coordinates)
    assert all((x - y).denominator == 1 for x, y in zip(a, cls))
    # a lies in the closed fundamental alcove
    assert all(p >= 0 for p in rd.simple_pairings(a))
    for f in range(len(rd.factors)):
        assert rd.pair(rd.highest_roots[f], a) <= 1


@pytest.mark.parametrize("bad", ["A0", "B1", "D2", "E9", "Q3", "G3", ""])
def test_bad_types_rejected(bad):
    with pytest.raises(InputError):
        parse_cartan_types(bad)


def test_bad_center_element():
    rd = build_root_datum(parse_cartan_types("A2"))
    with pytest.raises(InputError):
        center_class(rd, (1, 0))
