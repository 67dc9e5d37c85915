import json
from fractions import Fraction
from math import gcd, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellimod.errors import InputError, InvalidDegreeError
from ellimod.group import (
    build_group,
    fundamental_group,
    group_from_dict,
    parse_degree,
    parse_group,
    stable_exists,
)

# classical fundamental groups: preset -> (free rank, torsion order)
PI1 = {
    "GL(3)": (1, 1), "SL(4)": (0, 1), "PGL(5)": (0, 5), "Sp(6)": (0, 1), "PSp(6)": (0, 2),
    "SO(7)": (0, 2), "SO(8)": (0, 2), "SO(10)": (0, 2), "Spin(9)": (0, 1), "PSO(8)": (0, 4),
    "PSO(10)": (0, 4), "E6": (0, 1), "E6ad": (0, 3), "E7ad": (0, 2), "G2": (0, 1), "C*": (1, 1),
    "SO(4)": (0, 2), "SO(3)": (0, 2), "AD(A1xA2)": (0, 6),
}


@pytest.mark.parametrize("name,expected", sorted(PI1.items()))
def test_fundamental_group_table(name, expected):
    pi = fundamental_group(parse_group(name))
    assert (pi.free_rank, prod(pi.torsion)) == expected


@pytest.mark.parametrize("n,k", [(2, 2), (4, 2), (6, 3), (6, 4), (3, 3), (5, 1)])
def test_gl_quotients(n, k):
    # GL(n)/mu_k has pi_1 = Z + Z_gcd(n,k)
    pi = fundamental_group(parse_group(f"GL({n})/Z({k})"))
    assert pi.free_rank == 1
    assert prod(pi.torsion) == gcd(n, k)


def test_pso8_is_klein():
    assert fundamental_group(parse_group("PSO(8)")).torsion == (2, 2)
    assert fundamental_group(parse_group("PSO(10)")).torsion == (4,)


def test_gl_generator():
    pi = fundamental_group(parse_group("GL(3)"))
    (u, c), = pi.generators
    assert u == (Fraction(1, 3),) and c == (1,)


SIMPLE = ["GL(2)", "GL(3)", "SL(2)", "PGL(3)", "C*", "PSp(4)", "SO(5)", "GL(4)/Z(2)"]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(SIMPLE), min_size=1, max_size=3))
def test_pi1_multiplicative(parts):
    whole = fundamental_group(parse_group("x".join(parts)))
    pieces = [fundamental_group(parse_group(p)) for p in parts]
    assert whole.free_rank == sum(p.free_rank for p in pieces)
    assert prod(whole.torsion) == prod(prod(p.torsion) for p in pieces)


def test_raw_group_matches_preset():
    raw = group_from_dict({"central_rank": 1, "factors": "A1", "C_generators": [[1]], "tau": [["1/2"]]})
    assert raw.lambda_h == parse_group("GL(2)").lambda_h
    assert fundamental_group(raw).free_rank == 1


def test_group_file(tmp_path):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"preset": "PGL(3)"}))
    assert fundamental_group(parse_group(str(p))).torsion == (3,)


@pytest.mark.parametrize("spec", ["", "GL(0)", "SL(1)", "Sp(3)", "FOO(2)", "SO(2)", "PSO(7)"])
def test_bad_presets(spec):
    with pytest.raises(InputError):
        parse_group(spec)


def test_bad_tau():
    with pytest.raises(InputError):
        build_group(1, "A1", [(1,)], [(Fraction(1, 3),)])


def test_degrees():
    G = parse_group("GL(4)")
    d = parse_degree(G, "2")
    assert d.u == (Fraction(1, 2),) and d.c == (2,)
    assert parse_degree(G, "u=1/2;c=2") == d
    with pytest.raises(InvalidDegreeError):
        parse_degree(G, "u=1/3;c=1")
    with pytest.raises(InputError):
        parse_degree(parse_group("GL(2)xGL(3)"), "1")
    with pytest.raises(InvalidDegreeError):
        parse_degree(parse_group("SL(2)"), "1")
    H = parse_group("GL(2)xPGL(3)")
    assert parse_degree(H, "1,2").c == (1, 2)


@pytest.mark.parametrize("name,deg,expected", [
    ("GL(3)", "1", True), ("GL(4)", "2", False), ("GL(4)", "3", True), ("SL(2)", "0", False),
    ("PGL(5)", "2", True), ("SO(5)", "1", False), ("C*", "3", True), ("GL(2)xPGL(3)", "1,1", True),
    ("GL(2)xPGL(3)", "0,1", False), ("Sp(4)", "0", False), ("E6ad", "1", False), ("GL(1)", "5", True),
])
def test_stable_exists(name, deg, expected):
    G = parse_group(name)
    assert stable_exists(G, parse_degree(G, deg)).exists_stable is expected


def test_stability_witness():
    G = parse_group("GL(4)")
    rep = stable_exists(G, parse_degree(G, "2"))
    assert "gcd(4,2) = 2" in rep.witness
    assert rep.fixed_space_dim == 1
