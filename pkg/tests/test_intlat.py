from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form

from ellimod.errors import InputError
from ellimod.intlat import (
    Lattice,
    TorusAutomorphism,
    det,
    fixed_point_report,
    hnf,
    integer_left_kernel,
    intersect,
    inverse,
    matmul,
    matrix_from_json,
    matrix_to_json,
    normal_forms,
    quotient_group,
    rank,
    rational_kernel,
    saturate,
    snf,
    solve_left,
)

small = st.integers(-6, 6)


def matrices(rows=(1, 4), cols=(1, 4)):
    return st.integers(*rows).flatmap(
        lambda m: st.integers(*cols).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


def square(n_range=(1, 4)):
    return st.integers(*n_range).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_normal_forms_identities(M):
    nf = normal_forms(M)  # check=True re-verifies U M = H and U M V = S
    S = nf["smith"]
    diag = [S[i][i] for i in range(min(len(S), len(S[0])))]
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(S[i][j] == 0 for i in range(len(S)) for j in range(len(S[0])) if i != j)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_smith_matches_sympy(M):
    S, _, _ = snf(M)
    ours = sorted(abs(S[i][i]) for i in range(min(len(M), len(M[0]))))
    ref = smith_normal_form(sympy.Matrix(M), domain=sympy.ZZ)
    theirs = sorted(abs(int(ref[i, i])) for i in range(min(len(M), len(M[0]))))
    assert ours == theirs


@settings(max_examples=100, deadline=None)
@given(square())
def test_det_rank_against_sympy(M):
    A = sympy.Matrix(M)
    assert det(M) == A.det()
    assert rank(M) == A.rank()


@settings(max_examples=100, deadline=None)
@given(square())
def test_inverse_and_solve(M):
    if det(M) == 0:
        with pytest.raises(InputError):
            inverse(M)
        return
    Mi = inverse(M)
    n = len(M)
    assert matmul(M, Mi) == [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    Y = [[1] * n]
    X = solve_left(M, Y)
    assert matmul(X, M) == [[Fraction(1)] * n]


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_kernels(M):
    n = len(M[0])
    K = rational_kernel(M, n)
    assert len(K) == n - rank(M)
    for v in K:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in M)
    L = integer_left_kernel(M)
    assert len(L) == len(M) - rank(M)
    for x in L:
        assert all(sum(x[i] * M[i][j] for i in range(len(M))) == 0 for j in range(n))


def test_hnf_shape():
    H, U = hnf([[2, 4], [3, 5]])
    assert H == [[1, 1], [0, 2]]
    assert matmul(U, [[2, 4], [3, 5]]) == H


def test_lattice_membership_and_sum():
    L = Lattice.from_generators([[2, 0], [0, 3], [2, 3]])
    assert L.rank == 2
    assert (4, 6) in L and (1, 0) not in L
    M = Lattice.from_generators([[1, 0]], ambient_dim=2)
    assert (L + M).rank == 2 and (1, 3) in L + M


def test_fractional_lattice_and_quotient():
    half = Lattice.from_generators([[Fraction(1, 2), 0], [0, 1]])
    Z2 = Lattice.standard(2)
    assert quotient_group(half, Z2).elementary_divisors == (2,)
    assert saturate(Lattice.from_generators([[2, 2]])).basis == ((1, 1),)


def test_intersection():
    A = Lattice.from_generators([[2, 0], [0, 1]])
    B = Lattice.from_generators([[1, 0], [0, 3]])
    I = intersect(A, B)
    assert quotient_group(Lattice.standard(2), I).order == 6


def test_fixed_points_involution():
    rep = fixed_point_report([[-1]], 2)
    assert rep.isolated and rep.count == 4
    rep = fixed_point_report([[1, 0], [0, -1]], 2)
    assert not rep.isolated and rep.fixed_dim == 2


def test_torus_automorphism_validates():
    with pytest.raises(InputError):
        TorusAutomorphism(((2, 0), (0, 1)))


def test_json_roundtrip():
    M = [[Fraction(1, 2), 3], [0, Fraction(-7, 3)]]
    assert matrix_from_json(matrix_to_json(M)) == M
