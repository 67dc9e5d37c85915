from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ellimod.cpairs import (
    CONSTRUCTION_TOL,
    build_cpair,
    clock_shift,
    commutant_dimension,
    higgs_representative,
    verify_splitting,
)
from ellimod.errors import InputError
from ellimod.moduli import levi_for


def test_su2_pair_exact():
    p = clock_shift(2, 1)
    np.testing.assert_allclose(p.a, np.diag([1j, -1j]), atol=1e-15)
    np.testing.assert_allclose(p.b, [[0, 1], [-1, 0]], atol=1e-15)
    np.testing.assert_allclose(p.commutator(), -np.eye(2), atol=1e-15)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 9), st.integers(-20, 20))
def test_clock_shift_properties(n, k):
    assume(gcd(n, k) == 1)
    p = clock_shift(n, k)
    assert p.commutator_residual() <= CONSTRUCTION_TOL
    assert p.unitarity_residual() <= CONSTRUCTION_TOL
    assert abs(np.linalg.det(p.a) - 1) < 1e-10 and abs(np.linalg.det(p.b) - 1) < 1e-10
    assert commutant_dimension([p.a, p.b]) == 1
    assert p.c_phase == Fraction(k % n, n)


@pytest.mark.parametrize("n,k", [(4, 2), (6, 3), (1, 0)])
def test_reducible_rejected(n, k):
    with pytest.raises(InputError):
        clock_shift(n, k)


def test_commutant_of_scalars_and_diagonals():
    assert commutant_dimension([np.eye(3)]) == 9
    assert commutant_dimension([np.diag([1, 2, 3])]) == 3


@pytest.mark.parametrize("n,d", [(4, 2), (6, 2), (6, 3), (6, 4), (8, 6), (3, 0)])
def test_block_pairs(n, d):
    L = levi_for(f"GL({n})", d)
    p = build_cpair(L)
    assert p.blocks == tuple(t.rank + 1 for t in L.d_c_factors)
    assert p.commutator_residual() <= CONSTRUCTION_TOL
    if L.d_c_factors:
        assert commutant_dimension([p.a, p.b]) == L.lattice_rank == len(p.blocks)


def test_untwisted_blocks_are_isomorphic():
    p = build_cpair(levi_for("GL(4)", 2), twist=False)
    assert commutant_dimension([p.a, p.b]) == 4


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([("GL(3)", 0), ("SC(B2)", 0), ("GL(6)", 2), ("SO(8)", 1)]),
       st.data())
def test_higgs_splitting(case, data):
    L = levi_for(*case)
    q = st.fractions(min_value=-5, max_value=5, max_denominator=7)
    s = [(data.draw(q), data.draw(q)) for _ in range(L.lattice_rank)]
    assert verify_splitting(higgs_representative(L, s)) <= CONSTRUCTION_TOL


def test_splitting_detects_non_normal():
    assert verify_splitting(np.array([[0, 1], [0, 0]])) == 1.0
