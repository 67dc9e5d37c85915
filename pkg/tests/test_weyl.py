import random
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellimod import _kernels
from ellimod.errors import EnumerationRefused, InputError
from ellimod.rootdata import (
    CartanType,
    build_root_datum,
    cartan_matrix,
    center_of_simply_connected,
    parse_cartan_types,
    weyl_group_order,
)
from ellimod.weyl import (
    Alcove,
    FiniteLinearGroup,
    WeylElement,
    _parse_gaussian,
    enumerate_weyl,
    fixed_subspace,
    identify_cartan_type,
    levi_and_wc,
    make_dominant,
    omega_c,
    omegas_mapping_alcove,
    weyl_matrices,
)

SMALL = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "A1xA2", "C3xA1"]


def rd_of(name):
    return build_root_datum(parse_cartan_types(name))


def levi(name, c):
    rd = rd_of(name)
    a, w = omega_c(rd, c)
    return levi_and_wc(rd, 0, w, a, c)


# --- enumeration -----------------------------------------------------------

@pytest.mark.parametrize("name", SMALL + ["F4"])
def test_enumeration_is_the_whole_group(name):
    rd = rd_of(name)
    mats = weyl_matrices(rd)
    assert len(mats) == rd.weyl_order
    assert len({m.tobytes() for m in mats}) == rd.weyl_order
    roots = {tuple(b) for b in rd.positive_roots} | {tuple(-x for x in b) for b in rd.positive_roots}
    # Weyl elements act on h' (coroot coordinates); dually they permute the roots
    C = np.array(rd.cartan)
    R = np.array(sorted(roots))
    for m in mats[:: max(1, len(mats) // 50)]:
        pairings = R @ C @ m  # values <beta, w(.)> on the coroot basis
        imgs = {tuple(row) for row in np.linalg.solve(C.T, pairings.T).T.round().astype(int)}
        assert imgs == roots


def test_e6_order():
    assert sum(1 for _ in enumerate_weyl(rd_of("E6"), words=False)) == 51840


def test_words_reproduce_matrices():
    rd = rd_of("B3")
    for w in enumerate_weyl(rd):
        assert WeylElement.from_word(rd, w.word).matrix == w.matrix


def test_cap_refuses_e8():
    with pytest.raises(EnumerationRefused):
        next(enumerate_weyl(rd_of("E8")))


def test_cap_env(monkeypatch):
    monkeypatch.setenv("ELLIMOD_WEYL_CAP", "10")
    with pytest.raises(EnumerationRefused):
        next(enumerate_weyl(rd_of("A3")))


@pytest.mark.skipif(not _kernels.compiled_available(), reason="extension not built")
@pytest.mark.parametrize("name", ["A3", "B3", "G2", "F4", "C3xA1"])
def test_backends_agree(name):
    rd = rd_of(name)
    C = np.array(rd.cartan, dtype=np.int64)
    tracked = np.eye(rd.rank, dtype=np.int64)
    py = _kernels.weyl_bfs(C, tracked, rd.weyl_order, rd.coxeter_bound, force="python")
    cy = _kernels.weyl_bfs(C, tracked, rd.weyl_order, rd.coxeter_bound, force="cython")
    for a, b in zip(py, cy):
        assert np.array_equal(np.asarray(a), np.asarray(b))


# --- dominance and alcoves -------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_make_dominant(name, data):
    rd = rd_of(name)
    v = [Fraction(data.draw(st.integers(-7, 7)), data.draw(st.integers(1, 4))) for _ in range(rd.rank)]
    vd, w = make_dominant(rd, v)
    assert all(p >= 0 for p in rd.simple_pairings(vd))
    assert w.apply(v) == tuple(vd)


@pytest.mark.parametrize("name", SMALL)
def test_omega_c_is_a_homomorphism(name):
    rd = rd_of(name)
    divs = center_of_simply_connected(rd).elementary_divisors
    elems = list(product(*[range(d) for d in divs]))
    om = {c: omega_c(rd, c)[1] for c in elems}
    assert om[tuple(0 for _ in divs)].is_identity
    for c1, c2 in product(elems, repeat=2):
        s = tuple((x + y) % d for x, y, d in zip(c1, c2, divs))
        assert (om[c1] @ om[c2]).matrix == om[s].matrix


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "D4", "A1xA2"])
def test_omega_c_unique(name):
    rd = rd_of(name)
    for c in product(*[range(d) for d in center_of_simply_connected(rd).elementary_divisors]):
        hits = omegas_mapping_alcove(rd, c)
        assert len(hits) == 1 and hits[0].matrix == omega_c(rd, c)[1].matrix


def test_alcove_vertices():
    rd = rd_of("A2")
    A = Alcove.fundamental(rd)
    third = Fraction(1, 3)
    # coroot coordinates of 0 and the two fundamental coweights
    assert set(A.vertices) == {(0, 0), (2 * third, third), (third, 2 * third)}
    assert A.contains(A.barycenter())


# --- Levi data and W_c ------------------------------------------------------

@pytest.mark.parametrize("name,c,dc,wc,r", [
    ("A3", (2,), "A1xA1", 2, 1),
    ("B3", (1,), "A1", None, None),
    ("C3", (1,), "A1xA1", None, 1),
    ("C4", (1,), "A1xA1", 8, 2),
    ("D4", (1, 1), "A1xA1", 8, None),
    ("E6", (1,), "A2xA2", 12, 2),
])
def test_known_levis(name, c, dc, wc, r):
    L = levi(name, c)
    assert L.d_c_name == dc
    if wc is not None:
        assert L.w_c_order == wc
    if r is not None:
        assert L.lattice_rank == r
    assert L.normalizer_order == L.w_c_order * weyl_group_order(L.d_c_factors)
    assert L.w_c.is_closed()


def test_e7():
    L = levi("E7", (1,))
    assert (L.d_c_name, L.w_c_order, L.lattice_rank) == ("A1xA1xA1", 1152, 4)


def test_fixed_subspace():
    rd = rd_of("A3")
    _, w = omega_c(rd, (2,))
    assert len(fixed_subspace(w)) == 1


# --- Cartan type recognition ----------------------------------------------

ALL_TYPES = ([CartanType("A", n) for n in range(1, 7)] + [CartanType("B", n) for n in range(2, 6)]
             + [CartanType("C", n) for n in range(3, 6)] + [CartanType("D", n) for n in range(4, 7)]
             + [CartanType(x, n) for x, n in (("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2))])


@settings(max_examples=80, deadline=None)
@given(st.lists(st.sampled_from(ALL_TYPES), min_size=1, max_size=3), st.randoms())
def test_identify_permuted(types, rnd):
    from ellimod.rootdata import build_root_datum as brd
    C = brd(types).cartan
    n = len(C)
    perm = list(range(n))
    rnd.shuffle(perm)
    P = [[C[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
    found = identify_cartan_type(P)
    assert sorted(map(str, (t for t, _ in found))) == sorted(map(str, types))
    for t, nodes in found:
        sub = [[P[a][b] for b in nodes] for a in nodes]
        assert sub == cartan_matrix(t)


# --- finite groups ----------------------------------------------------------

def s3():
    rd = rd_of("A2")
    return FiniteLinearGroup(weyl_matrices(rd))


def test_s3_classes_and_generators():
    G = s3()
    assert G.order == 6 and G.is_closed()
    assert sorted(len(c) for c in G.conjugacy_classes()) == [1, 2, 3]
    assert FiniteLinearGroup(G.elements, None)._closure(G.generators) is not None


def test_centralizer_of_vector():
    G = s3()
    assert G.centralizer_of_vector([0, 0]).order == 6
    assert G.centralizer_of_vector([2, 1]).order == 2  # multiple of a fundamental coweight
    assert G.centralizer_of_vector([(1, 1), (Fraction(1, 3), 5)]).order == 1


def test_identity_first_required():
    with pytest.raises(InputError):
        FiniteLinearGroup(np.array([[[-1]], [[1]]]))


@pytest.mark.parametrize("s,val", [
    ("3", (3, 0)), ("3i", (0, 3)), ("-i", (0, -1)), ("1/2-3/4i", (Fraction(1, 2), Fraction(-3, 4))),
    ("i", (0, 1)), ("-2+i", (-2, 1)),
])
def test_parse_gaussian(s, val):
    assert _parse_gaussian(s) == tuple(Fraction(x) for x in val)


@pytest.mark.parametrize("s", ["", "abc", "1.5", "i2"])
def test_parse_gaussian_rejects(s):
    with pytest.raises(InputError):
        _parse_gaussian(s)


def test_random_wc_is_group():
    rng = random.Random(3)
    for name in ("A5", "D5", "B4"):
        rd = rd_of(name)
        divs = center_of_simply_connected(rd).elementary_divisors
        c = tuple(rng.randrange(d) for d in divs)
        L = levi(name, c)
        W = L.w_c
        E = W.elements.astype(np.int64)
        for _ in range(20):
            i, j = rng.randrange(W.order), rng.randrange(W.order)
            assert (E[i] @ E[j]) in W
