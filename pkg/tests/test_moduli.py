import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellimod.errors import InputError
from ellimod.moduli import (
    CoefficientSpace,
    describe_moduli,
    dimension_report,
    hitchin_report,
    levi_for,
    report_json,
)


def test_gl2_degree1_higgs():
    m = describe_moduli("GL(2)", 1, "higgs")
    assert (m.lattice_rank, m.w_c_order, m.complex_dimension) == (1, 1, 2)
    assert m.space is CoefficientSpace.TSTARX and m.is_normalization


def test_gl4_degree2_lattice():
    L = levi_for("GL(4)", 2)
    q = Fraction(1, 4)
    assert L.lambda_sbar_c.basis == ((q, q), (0, Fraction(1, 2)))
    assert L.f_c.elementary_divisors == (2, 2)
    mats = {tuple(map(tuple, m.tolist())) for m in L.w_c.elements}
    assert mats == {((1, 0), (0, 1)), ((1, 0), (-1, -1))}


@pytest.mark.parametrize("alias,space", [
    ("bundles", "X"), ("higgs", "TstarX"), ("T*X", "TstarX"), ("reps", "Cstar2"),
    ("C*2", "Cstar2"), ("connections", "Xsharp"), ("base", "Cline"),
])
def test_space_aliases(alias, space):
    assert CoefficientSpace.parse(alias).value == space


def test_unknown_space():
    with pytest.raises(InputError):
        CoefficientSpace.parse("moon")


def test_dimension_report():
    assert dimension_report("GL(6)", 4) == {"dim_M": 2, "dim_Mm": 4, "dim_base": 2, "dim_fibre": 2}


def test_sl2_hitchin():
    rep = hitchin_report("SL(2)", 0, [[0], ["1+i"]])
    (stratum,) = rep.strata
    assert stratum.representative == ((-1,),) and stratum.fixed_dim == 0
    zero, generic = rep.fibres
    assert zero.centralizer_order == 2 and not zero.generic
    assert zero.fixed_points == ({"element": [["-1"]], "isolated": True, "count": 4},)
    assert generic.generic and generic.fixed_points == ()


def test_point_dimension_checked():
    with pytest.raises(InputError):
        hitchin_report("GL(3)", 0, [[1, 2]])


def test_report_json_stable_and_schema():
    a = report_json("GL(4)", 2, [["1", "2i"]])
    b = report_json("GL(4)", 2, [["1", "2i"]])
    assert a == b
    doc = json.loads(a)
    assert doc["schema"] == "1"
    assert set(doc) == {"schema", "group", "degree", "levi", "spaces", "hitchin"}
    assert set(doc["spaces"]) == {"X", "TstarX", "Cstar2", "Xsharp"}
    assert doc["levi"]["lambda_basis"] == [["1/4", "1/4"], ["0", "1/2"]]
    assert doc["degree"] == {"u": ["1/2"], "c": [2]}


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([("GL(3)", 0), ("SC(B2)", 0), ("GL(4)", 2), ("SC(G2)", 0)]),
       st.data())
def test_centralizer_matches_brute_force(case, data):
    g, d = case
    L = levi_for(g, d)
    r = L.lattice_rank
    ints = st.integers(-2, 2)
    s = [(data.draw(ints), data.draw(ints)) for _ in range(r)]
    rep = hitchin_report(g, d, [s])
    re = np.array([a for a, _ in s])
    im = np.array([b for _, b in s])
    brute = sum(1 for m in L.w_c.elements.astype(int)
                if np.array_equal(m @ re, re) and np.array_equal(m @ im, im))
    assert rep.fibres[0].centralizer_order == brute
    assert rep.fibres[0].generic == (brute == 1)
