"""Weyl groups, the fundamental alcove, omega_c and the groups W_c.

Weyl elements act on column vectors of h' written in simple-coroot
coordinates. The simple reflection ``s_i`` only changes coordinate ``i``:
``(s_i v)_i = v_i - alpha_i(v)``. A word ``(i1, ..., ik)`` stands for the
product ``s_i1 s_i2 ... s_ik``.

The hot loop (breadth-first enumeration of W through the orbit of rho^vee)
lives in :mod:`ellimod._kernels`; everything else here is exact or uses
numpy integer arithmetic on small matrices.
"""
from __future__ import annotations

import os
import re
from math import gcd
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from . import _kernels
from .errors import ConsistencyError, EnumerationRefused, InputError
from .intlat import (
    FiniteAbelianGroup,
    Lattice,
    TorusAutomorphism,
    integer_left_kernel,
    inverse,
    quotient_group,
    rational_kernel,
    saturate,
    solve_left,
)
from .rootdata import (
    CartanType,
    RootDatum,
    _normalize_center_element,
    cominuscule_vertex,
    weyl_group_order,
)

__all__ = [
    "WeylElement",
    "Alcove",
    "LeviDatum",
    "FiniteLinearGroup",
    "simple_reflection",
    "make_dominant",
    "omega_c",
    "fixed_subspace",
    "enumerate_weyl",
    "weyl_cap",
    "identify_cartan_type",
    "levi_and_wc",
    "point_centralizer",
]

DEFAULT_WEYL_CAP = 10 ** 7
# largest group for which conjugacy classes are listed
CLASS_LIMIT = 200_000


def weyl_cap() -> int:
    """Enumeration cap, overridable through ``ELLIMOD_WEYL_CAP``."""
    raw = os.environ.get("ELLIMOD_WEYL_CAP")
    if raw is None:
        return DEFAULT_WEYL_CAP
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"ELLIMOD_WEYL_CAP must be an integer, got {raw!r}") from None


# ---------------------------------------------------------------------------
# Weyl elements

def _mat(M) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in M)


def _matmul(A, B):
    n, k = len(A), len(B[0]) if B else 0
    return tuple(tuple(sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(k))
                 for i in range(n))


def simple_reflection(rd: RootDatum, i: int) -> tuple[tuple[int, ...], ...]:
    r = rd.rank
    return tuple(
        tuple(int(a == b) - (rd.cartan[i][b] if a == i else 0) for b in range(r))
        for a in range(r)
    )


@dataclass(frozen=True)
class WeylElement:
    """An element of W as an integer matrix, optionally with a word."""

    matrix: tuple[tuple[int, ...], ...]
    word: tuple[int, ...] | None = field(default=None, compare=False)

    @classmethod
    def identity(cls, r: int) -> "WeylElement":
        return cls(tuple(tuple(int(i == j) for j in range(r)) for i in range(r)), ())

    @classmethod
    def from_word(cls, rd: RootDatum, word: Sequence[int]) -> "WeylElement":
        M = cls.identity(rd.rank).matrix
        for i in word:
            M = _matmul(M, simple_reflection(rd, i))
        return cls(M, tuple(word))

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def is_identity(self) -> bool:
        return all(self.matrix[i][j] == int(i == j)
                   for i in range(self.rank) for j in range(self.rank))

    def __matmul__(self, other: "WeylElement") -> "WeylElement":
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return WeylElement(_matmul(self.matrix, other.matrix), word)

    def inverse(self) -> "WeylElement":
        inv = _mat(inverse(self.matrix)) if self.rank else ()
        word = tuple(reversed(self.word)) if self.word is not None else None
        return WeylElement(inv, word)

    def apply(self, v) -> tuple:
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.matrix)

    def as_numpy(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64).reshape(self.rank, self.rank)


def make_dominant(rd: RootDatum, v) -> tuple[tuple[Fraction, ...], WeylElement]:
    """Move ``v`` into the closed dominant chamber by simple reflections.

    Always reflects in the lowest-index simple root with negative pairing.
    Returns ``(w v, w)``.
    """
    v = [Fraction(x) for x in v]
    if len(v) != rd.rank:
        raise InputError(f"vector of length {len(v)} for a rank {rd.rank} root datum")
    applied = []
    while True:
        p = rd.simple_pairings(v)
        i = next((k for k, x in enumerate(p) if x < 0), None)
        if i is None:
            break
        v[i] -= p[i]
        applied.append(i)
    return tuple(v), WeylElement.from_word(rd, tuple(reversed(applied)))


# ---------------------------------------------------------------------------
# the fundamental alcove

@dataclass(frozen=True)
class Alcove:
    """The fundamental alcove of a product of simple types.

    It is the product of one simplex per factor. ``factor_vertices[f]`` holds
    the ``rank_f + 1`` vertices of the f-th simplex embedded in h' (zeros
    outside the factor block); ``walls`` lists ``(root, level)`` meaning
    ``<root, v> >= 0`` for level 0 and ``<root, v> <= 1`` for level 1.
    """

    rd: RootDatum
    factor_vertices: tuple[tuple[tuple[Fraction, ...], ...], ...]
    walls: tuple[tuple[tuple[int, ...], int], ...]

    @classmethod
    def fundamental(cls, rd: RootDatum) -> "Alcove":
        r = rd.rank
        fv = []
        for f, ct in enumerate(rd.factors):
            o = rd.offsets[f]
            verts = [tuple(Fraction(0) for _ in range(r))]
            for k in range(ct.rank):
                m = rd.marks[f][k]
                verts.append(tuple(x / m for x in rd.fundamental_coweights[o + k]))
            fv.append(tuple(verts))
        walls = [(rd.simple_roots[i], 0) for i in range(r)]
        walls += [(theta, 1) for theta in rd.highest_roots]
        return cls(rd, tuple(fv), tuple(walls))

    @property
    def vertices(self) -> list[tuple[Fraction, ...]]:
        """All vertices of the product (sums of one vertex per factor)."""
        r = self.rd.rank
        out = []
        for combo in product(*self.factor_vertices):
            out.append(tuple(sum((v[i] for v in combo), Fraction(0)) for i in range(r)))
        return out

    def barycenter(self, weights: Sequence[int] | None = None) -> tuple[Fraction, ...]:
        r = self.rd.rank
        b = [Fraction(0)] * r
        for verts in self.factor_vertices:
            w = list(weights[: len(verts)]) if weights else [1] * len(verts)
            tot = sum(w)
            for wk, v in zip(w, verts):
                for i in range(r):
                    b[i] += Fraction(wk, tot) * v[i]
        return tuple(b)

    def contains(self, v) -> bool:
        return all((self.rd.pair(a, v) >= 0) if lvl == 0 else (self.rd.pair(a, v) <= 1)
                   for a, lvl in self.walls)

    def tight_walls(self, v) -> int:
        return sum(1 for a, lvl in self.walls if self.rd.pair(a, v) == lvl)


def _is_regular(rd: RootDatum, v) -> bool:
    return all(rd.pair(b, v) != 0 for b in rd.positive_roots)


def _vertex_map_holds(rd: RootDatum, w: WeylElement, a_c, alcove: Alcove) -> bool:
    for f, verts in enumerate(alcove.factor_vertices):
        sl = rd.factor_slice(f)
        image = {w.apply(v)[sl] for v in verts}
        target = {tuple(x - y for x, y in zip(v[sl], a_c[sl])) for v in verts}
        if image != target:
            return False
    return True


def omega_c(rd: RootDatum, c) -> tuple[tuple[Fraction, ...], WeylElement]:
    """The vertex a_c and the unique Weyl element with omega_c(A) = A - a_c."""
    a_c = cominuscule_vertex(rd, c)
    alcove = Alcove.fundamental(rd)
    b = alcove.barycenter()
    x = tuple(p - q for p, q in zip(b, a_c))
    if not _is_regular(rd, x):  # defensive; interior points are always regular
        b = alcove.barycenter(weights=range(1, rd.rank + 2))
        x = tuple(p - q for p, q in zip(b, a_c))
        if not _is_regular(rd, x):
            raise ConsistencyError("no regular interior point found for the alcove")
    _, u = make_dominant(rd, x)
    w = u.inverse()
    if not _vertex_map_holds(rd, w, a_c, alcove):
        raise ConsistencyError(f"omega_c for c={c} on {rd.name} fails the vertex check")
    return a_c, w


def omegas_mapping_alcove(rd: RootDatum, c, cap: int | None = None) -> list[WeylElement]:
    """Every w in W with w(A) = A - a_c, found by exhaustive enumeration."""
    a_c = cominuscule_vertex(rd, c)
    alcove = Alcove.fundamental(rd)
    return [w for w in enumerate_weyl(rd, cap) if _vertex_map_holds(rd, w, a_c, alcove)]


# ---------------------------------------------------------------------------
# fixed subspaces

def fixed_subspace(w: WeylElement | Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """A saturated integer basis of ker(w - I) inside the coroot lattice."""
    M = w.matrix if isinstance(w, WeylElement) else w
    n = len(M)
    A = [[M[i][j] - int(i == j) for j in range(n)] for i in range(n)]
    ker = rational_kernel(A, n)
    if not ker:
        return []
    return [tuple(r) for r in saturate(Lattice.from_generators(ker, n)).hnf_rows]


# ---------------------------------------------------------------------------
# enumeration

@lru_cache(maxsize=8)
def _bfs_tree(rd: RootDatum) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(parent, gen, layer starts) of the BFS tree over W."""
    r = rd.rank
    if r == 0:
        return np.array([-1]), np.array([-1]), np.array([0, 1])
    parent, gen, _ = _kernels.weyl_bfs(
        np.array(rd.cartan, dtype=np.int64), np.zeros((r, 0), dtype=np.int64),
        rd.weyl_order, rd.coxeter_bound)
    depth = np.zeros(len(parent), dtype=np.int64)
    for _ in range(len(rd.positive_roots) + 1):
        new = depth.copy()
        new[1:] = depth[parent[1:]] + 1
        if np.array_equal(new, depth):
            break
        depth = new
    starts = np.flatnonzero(np.diff(depth, prepend=-1, append=depth[-1] + 1))
    parent.setflags(write=False)
    gen.setflags(write=False)
    return parent, gen, starts


def _check_cap(rd: RootDatum, cap: int | None):
    cap = weyl_cap() if cap is None else cap
    if rd.weyl_order > cap:
        raise EnumerationRefused(rd.weyl_order, cap)


def _stream_images(rd: RootDatum, tracked: np.ndarray) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(start, W_layer @ tracked)`` layer by layer in BFS order."""
    parent, gen, starts = _bfs_tree(rd)
    C = np.array(rd.cartan, dtype=np.int64).reshape(rd.rank, rd.rank)
    prev = tracked[None].astype(np.int64)
    prev_start = 0
    yield 0, prev
    for a, b in zip(starts[1:-1], starts[2:]):
        imgs = prev[parent[a:b] - prev_start].copy()
        g = gen[a:b]
        for i in range(rd.rank):
            mask = g == i
            if mask.any():
                sel = imgs[mask]
                sel[:, i, :] -= np.einsum("j,njm->nm", C[i], sel)
                imgs[mask] = sel
        yield int(a), imgs
        prev, prev_start = imgs, a


def _word(parent, gen, k: int) -> tuple[int, ...]:
    out = []
    while k > 0:
        out.append(int(gen[k]))
        k = int(parent[k])
    return tuple(out)


def enumerate_weyl(rd: RootDatum, cap: int | None = None, words: bool = True) -> Iterator[WeylElement]:
    """Stream every element of W exactly once, in BFS (length) order.

    Raises EnumerationRefused before doing any work when |W| exceeds ``cap``.
    """
    _check_cap(rd, cap)
    parent, gen, _ = _bfs_tree(rd)
    r = rd.rank
    for start, mats in _stream_images(rd, np.eye(r, dtype=np.int64)):
        for k, M in enumerate(mats):
            w = _word(parent, gen, start + k) if words else None
            yield WeylElement(_mat(M), w)


def weyl_matrices(rd: RootDatum, cap: int | None = None) -> np.ndarray:
    """All of W as an (|W|, r, r) integer array in BFS order."""
    _check_cap(rd, cap)
    r = rd.rank
    return np.concatenate([m for _, m in _stream_images(rd, np.eye(r, dtype=np.int64))])


# ---------------------------------------------------------------------------
# Dynkin diagram classification

def identify_cartan_type(C) -> list[tuple[CartanType, tuple[int, ...]]]:
    """Classify a Cartan matrix into simple factors.

    Returns ``(type, nodes)`` per connected component, with ``nodes`` the
    indices of C listed in Bourbaki order. Components come sorted by their
    smallest index. Ties between symmetric labelings go to smaller indices.
    """
    n = len(C)
    adj = {i: [j for j in range(n) if j != i and C[i][j] != 0] for i in range(n)}
    seen, comps = set(), []
    for s in range(n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return [_classify_component(C, comp, adj) for comp in comps]


def _walk(adj, start, avoid) -> list[int]:
    path, prev, cur = [start], avoid, start
    while True:
        nxt = [y for y in adj[cur] if y != prev]
        if len(nxt) != 1:
            return path
        prev, cur = cur, nxt[0]
        path.append(cur)


def _classify_component(C, comp, adj) -> tuple[CartanType, tuple[int, ...]]:
    k = len(comp)
    if k == 1:
        return CartanType("A", 1), (comp[0],)
    mult = {(i, j): C[i][j] * C[j][i] for i in comp for j in adj[i]}
    if any(m > 3 for m in mult.values()) or any(len(adj[i]) > 3 for i in comp):
        raise InputError("not a finite-type Cartan matrix")
    branch = [i for i in comp if len(adj[i]) == 3]
    ends = [i for i in comp if len(adj[i]) == 1]
    if not branch:
        if len(ends) != 2:
            raise InputError("not a finite-type Cartan matrix")
        path = _walk(adj, min(ends), None)
        heavy = [(a, b) for a, b in zip(path, path[1:]) if mult[(a, b)] > 1]
        if not heavy:
            return CartanType("A", k), tuple(path)
        if len(heavy) > 1:
            raise InputError("not a finite-type Cartan matrix")
        a, b = heavy[0]
        m = mult[(a, b)]
        if m == 3:
            if k != 2:
                raise InputError("not a finite-type Cartan matrix")
            short = a if C[b][a] == -3 else b
            return CartanType("G", 2), (short, b if short == a else a)
        pos = path.index(a)
        if k == 4 and pos == 1:  # F4: long, long => short, short
            if C[a][b] != -2:
                path = path[::-1]
            return CartanType("F", 4), tuple(path)
        if pos == 0:  # double edge at the start: reverse
            path = path[::-1]
        elif pos != k - 2:
            raise InputError("not a finite-type Cartan matrix")
        f, e = path[-2], path[-1]
        if k == 2:
            # rank 2 double edge: B2, long node first
            if C[f][e] != -2:
                path = path[::-1]
            return CartanType("B", 2), tuple(path)
        letter = "B" if C[f][e] == -2 else "C"
        return CartanType(letter, k), tuple(path)
    if len(branch) != 1 or any(m != 1 for m in mult.values()):
        raise InputError("not a finite-type Cartan matrix")
    c = branch[0]
    arms = sorted((_walk(adj, y, c) for y in adj[c]), key=lambda p: (len(p), p[0]))
    lengths = tuple(len(p) for p in arms)
    if lengths[:2] == (1, 1):
        long_arm = arms[2]
        return CartanType("D", k), tuple(long_arm[::-1]) + (c, arms[0][0], arms[1][0])
    if lengths in ((1, 2, 2), (1, 2, 3), (1, 2, 4)):
        leaf, mid, far = arms
        nodes = (mid[1], leaf[0], mid[0], c) + tuple(far)
        return CartanType("E", k), nodes
    raise InputError("not a finite-type Cartan matrix")


def type_a_label(C, nodes: Sequence[int], coweight) -> int:
    """Class in Z_n of a coweight of an A_{n-1} component.

    Uses the pairings ``p_j = alpha_{nodes[j]}(x)`` in the given path order:
    the class of ``x`` is ``sum (j+1) p_j`` times that of the first
    fundamental coweight.
    """
    n = len(nodes) + 1
    total = 0
    for j, i in enumerate(nodes):
        p = sum(Fraction(C[i][t]) * coweight[t] for t in range(len(coweight)))
        if p.denominator != 1:
            raise InputError("vector is not a coweight of the component")
        total += (j + 1) * int(p)
    return total % n


# ---------------------------------------------------------------------------
# finite matrix groups

class FiniteLinearGroup:
    """A finite subgroup of GL(n, Z) listed element by element.

    ``elements[0]`` is the identity. Elements are integer matrices acting on
    column coordinate vectors with respect to a fixed lattice basis. Storage
    uses the narrowest integer dtype that holds the entries; the lookup index
    is built on first use.
    """

    def __init__(self, elements, generators=None):
        E = np.asarray(elements)
        if E.ndim != 3 or E.shape[1] != E.shape[2]:
            raise InputError("expected an array of square matrices")
        if len(E) == 0 or not np.array_equal(E[0], np.eye(E.shape[1], dtype=np.int64)):
            raise InputError("the first element must be the identity")
        big = int(np.abs(E).max()) if E.size else 0
        dtype = np.int8 if big < 128 else np.int64
        self._elements = np.ascontiguousarray(E, dtype=dtype)
        self._elements.setflags(write=False)
        if generators is not None:
            self.__dict__["generators"] = tuple(np.asarray(g, dtype=np.int64) for g in generators)

    @property
    def elements(self) -> np.ndarray:
        return self._elements

    def element(self, k: int) -> np.ndarray:
        return self._elements[k].astype(np.int64)

    @property
    def order(self) -> int:
        return len(self._elements)

    @property
    def dim(self) -> int:
        return self._elements.shape[1]

    def __len__(self):
        return self.order

    def _key(self, m) -> bytes:
        return np.asarray(m).astype(self._elements.dtype).tobytes()

    @cached_property
    def _index(self) -> dict[bytes, int]:
        idx = {m.tobytes(): k for k, m in enumerate(self._elements)}
        if len(idx) != self.order:
            raise InputError("repeated group element")
        return idx

    def index(self, m) -> int:
        return self._index[self._key(m)]

    def __contains__(self, m) -> bool:
        m = np.asarray(m)
        if m.shape != (self.dim, self.dim) or np.abs(m).max(initial=0) > np.iinfo(self._elements.dtype).max:
            return False
        return self._key(m) in self._index

    @cached_property
    def inverses(self) -> np.ndarray:
        E = self._elements.astype(np.int64)
        if self.dim == 0:
            return E
        inv = np.rint(np.linalg.inv(E.astype(float))).astype(np.int64)
        check = np.einsum("nij,njk->nik", E, inv)
        if not (check == np.eye(self.dim, dtype=np.int64)).all():
            raise ConsistencyError("integer inverse check failed")
        return inv

    def is_closed(self) -> bool:
        E = self._elements.astype(np.int64)
        for g in E:
            prods = np.einsum("ij,njk->nik", g, E)
            if any(p not in self for p in prods):
                return False
        return True

    @cached_property
    def generators(self) -> tuple[np.ndarray, ...]:
        """A small generating set found by greedy closure."""
        gens: list[np.ndarray] = []
        reached = {self._elements[0].tobytes()}
        for m in self._elements[1:]:
            m = m.astype(np.int64)
            if m.tobytes() in reached:
                continue
            gens.append(m)
            reached = self._closure(gens)
            if len(reached) == self.order:
                break
        return tuple(gens)

    def _closure(self, gens) -> set[bytes]:
        frontier = [self.element(0)]
        seen = {frontier[0].tobytes()}
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = g @ x
                    key = y.tobytes()
                    if key not in seen:
                        seen.add(key)
                        nxt.append(y)
            frontier = nxt
        return seen

    def conjugacy_classes(self) -> list[list[int]]:
        """Element indices grouped into classes, each list sorted; identity first."""
        if self.order > CLASS_LIMIT:
            raise EnumerationRefused(self.order, CLASS_LIMIT)
        E, Einv = self._elements.astype(np.int64), self.inverses
        label = np.full(self.order, -1, dtype=np.int64)
        classes = []
        for k in range(self.order):
            if label[k] >= 0:
                continue
            conj = np.einsum("nij,jk,nkl->nil", E, E[k], Einv)
            members = sorted({self.index(x) for x in conj})
            label[members] = len(classes)
            classes.append(members)
        return classes

    def centralizer_of_vector(self, v) -> "FiniteLinearGroup":
        """Stabilizer of an exact rational vector (real and imaginary parts)."""
        return FiniteLinearGroup(self._elements[self._fixing_mask(v)])

    def fixing_subgroup(self, v) -> "FiniteLinearGroup":
        return self.centralizer_of_vector(v)

    def _fixing_mask(self, v) -> np.ndarray:
        parts = _gaussian_parts(v, self.dim)
        mask = np.ones(self.order, dtype=bool)
        for part in parts:
            den = 1
            for x in part:
                den = den * x.denominator // gcd(den, x.denominator)
            iv = np.array([int(x * den) for x in part], dtype=object)
            if not any(iv):
                continue
            if max(abs(int(x)) for x in iv) < 2 ** 40:
                imgs = np.einsum("nij,j->ni", self._elements.astype(np.int64), iv.astype(np.int64))
                iv = iv.astype(np.int64)
            else:
                imgs = np.einsum("nij,j->ni", self._elements.astype(object), iv)
            mask &= np.all(imgs == iv, axis=1)
        return mask


def _gaussian_parts(v, dim: int) -> tuple[list[Fraction], list[Fraction]]:
    """Split a Gaussian-rational vector into exact real and imaginary parts.

    Entries may be rationals, ``(re, im)`` pairs or strings ``"a"``/``"a+bi"``.
    """
    if len(v) != dim:
        raise InputError(f"point has {len(v)} coordinates, expected {dim}")
    re, im = [], []
    for x in v:
        if isinstance(x, (tuple, list)):
            if len(x) != 2:
                raise InputError(f"complex coordinate {x!r} must be a (re, im) pair")
            a, b = Fraction(x[0]), Fraction(x[1])
        elif isinstance(x, complex):
            raise InputError("floating complex numbers are not exact; pass (re, im) rationals")
        elif isinstance(x, str):
            a, b = _parse_gaussian(x)
        else:
            a, b = Fraction(x), Fraction(0)
        re.append(a)
        im.append(b)
    return re, im


_GAUSS = re.compile(r"^(?P<re>[+-]?\d+(?:/\d+)?)?(?:(?P<im>[+-]?(?:\d+(?:/\d+)?)?)i)?$")


def _parse_gaussian(s: str) -> tuple[Fraction, Fraction]:
    """Parse ``"a"``, ``"bi"`` or ``"a+bi"`` with rational a, b."""
    t = s.replace(" ", "").replace("j", "i")
    pure = re.fullmatch(r"([+-]?(?:\d+(?:/\d+)?)?)i", t)
    if pure:
        im = pure[1]
        return Fraction(0), Fraction(im + "1" if im in ("", "+", "-") else im)
    m = _GAUSS.match(t)
    if not t or m is None:
        raise InputError(f"cannot parse {s!r} as a Gaussian rational")
    re_part = Fraction(m["re"]) if m["re"] else Fraction(0)
    im = m["im"]
    if im is None:
        return re_part, Fraction(0)
    if im in ("", "+", "-"):
        im += "1"
    return re_part, Fraction(im)


def point_centralizer(group: FiniteLinearGroup, s) -> FiniteLinearGroup:
    """Z_{W_c}(s) for an exact Gaussian-rational point ``s``."""
    return group.centralizer_of_vector(s)


# ---------------------------------------------------------------------------
# Levi data

@dataclass(frozen=True)
class LeviDatum:
    """The package (a_c, omega_c, s_c, Delta_c, D_c, F_c, Lambda_{Sbar_c}, W_c).

    Coordinates on h = Q^z + h' put the z central coordinates first.
    ``s_c_basis`` lists integer vectors of h spanning s_c (central unit
    vectors followed by a saturated basis of h'^{omega_c}); the lattices
    ``lambda_s_c`` and ``lambda_sbar_c`` are written in that basis.
    ``levi_simple`` holds Delta_c's simple roots (as indices into
    ``rd.positive_roots``) grouped by factor in Bourbaki order; ``p_c`` is
    the D_c-coweight (Delta_c simple-coroot coordinates) carrying p(c).
    """

    rd: RootDatum
    central_rank: int
    c: tuple[int, ...]
    a_c: tuple[Fraction, ...]
    omega_c: WeylElement
    fixed_basis: tuple[tuple[int, ...], ...]
    s_c_basis: tuple[tuple[int, ...], ...]
    levi_roots: tuple[int, ...]
    levi_simple: tuple[tuple[int, ...], ...]
    d_c_factors: tuple[CartanType, ...]
    p_c: tuple[Fraction, ...]
    p_c_labels: tuple[int, ...]
    lambda_s_c: Lattice
    lambda_sbar_c: Lattice
    f_c: FiniteAbelianGroup
    restrictions: FiniteLinearGroup = field(repr=False)
    w_c: FiniteLinearGroup = field(repr=False)
    normalizer_order: int = 0
    u: tuple[Fraction, ...] = ()

    @property
    def ell_d(self) -> tuple[tuple[Fraction, ...], tuple[int, ...]]:
        """(u, p(c)) with p(c) given by its Z_n label on each D_c factor."""
        return self.u, self.p_c_labels

    @property
    def lattice_rank(self) -> int:
        return self.lambda_sbar_c.rank

    @property
    def w_c_order(self) -> int:
        return self.w_c.order

    @property
    def w_c_generators(self) -> tuple[TorusAutomorphism, ...]:
        return tuple(TorusAutomorphism(_mat(g)) for g in self.w_c.generators)

    @property
    def d_c_name(self) -> str:
        return "x".join(str(t) for t in self.d_c_factors) or "trivial"


def _levi_simple_system(rd: RootDatum, levi: list[int]) -> list[int]:
    roots = [rd.positive_roots[k] for k in levi]
    sums = set()
    for a in range(len(roots)):
        for b in range(a + 1, len(roots)):
            sums.add(tuple(x + y for x, y in zip(roots[a], roots[b])))
    return [k for k, beta in zip(levi, roots) if beta not in sums]


def _coroot_pair(rd: RootDatum, root, coroot) -> int:
    return int(sum(root[i] * rd.cartan[i][j] * coroot[j]
                   for i in range(rd.rank) for j in range(rd.rank)))


def levi_and_wc(rd: RootDatum, central_rank: int, omega: WeylElement, a_c, c,
                lambda_h: Sequence[Sequence] | None = None,
                cap: int | None = None, u: Sequence | None = None) -> LeviDatum:
    """Assemble the Levi data of omega_c.

    ``lambda_h`` generates the lattice ker(exp) in h = Q^z + h'; it defaults
    to Z^z + Q^vee (the group Z_0 x D).
    """
    r, z = rd.rank, central_rank
    n = z + r
    c = _normalize_center_element(rd, c) if rd.rank else tuple(c)
    a_c = tuple(Fraction(x) for x in a_c)
    if lambda_h is None:
        lambda_h = [[int(i == j) for j in range(n)] for i in range(n)]
    LH = Lattice.from_generators(lambda_h, n)
    if LH.rank != n:
        raise InputError("ker(exp) must have full rank")
    gens_h = [list(b) for b in LH.basis]

    K = fixed_subspace(omega) if r else []
    m = len(K)
    s_basis = [tuple(int(i == j) for j in range(n)) for i in range(z)]
    s_basis += [tuple([0] * z + list(k)) for k in K]

    # Delta_c: roots vanishing on h'^{omega_c}
    pairs_K = [[sum(beta[i] * rd.cartan[i][j] * k[j] for i in range(r) for j in range(r))
                for k in K] for beta in rd.positive_roots]
    levi = [idx for idx, row in enumerate(pairs_K) if all(x == 0 for x in row)]
    simple = _levi_simple_system(rd, levi)
    if m + len(simple) != r:
        raise ConsistencyError(
            f"dim fixed space {m} + rank Delta_c {len(simple)} != rank {r}")
    Cl = [[_coroot_pair(rd, rd.positive_roots[a], rd.positive_coroots[b]) for b in simple]
          for a in simple]
    comps = identify_cartan_type(Cl) if simple else []
    order = [simple[i] for _, nodes in comps for i in nodes]
    d_factors = tuple(t for t, _ in comps)
    levi_simple, o = [], 0
    for t, _ in comps:
        levi_simple.append(tuple(order[o:o + t.rank]))
        o += t.rank

    # h = s_c (+) h_Delta; coordinates via the inverse of the stacked basis
    delta_coroots = [tuple([0] * z + list(rd.positive_coroots[k])) for k in order]
    full = [list(v) for v in s_basis] + [list(v) for v in delta_coroots]
    coords = [list(row) for row in solve_left(full, gens_h)] if n else []
    xs = [row[: z + m] for row in coords]
    ys = [row[z + m:] for row in coords]

    sbar = Lattice.from_generators(xs, z + m) if z + m else Lattice(0, 1, ())
    if ys and ys[0]:
        combos = integer_left_kernel(ys)
    else:
        combos = [[int(i == j) for j in range(n)] for i in range(n)]
    s_gens = [[sum(k[i] * xs[i][j] for i in range(n)) for j in range(z + m)] for k in combos]
    s_lat = Lattice.from_generators(s_gens, z + m) if z + m else Lattice(0, 1, ())
    f_c = quotient_group(sbar, s_lat) if z + m else FiniteAbelianGroup((), ())

    # p(c): the h_Delta component of (0, a_c) in Delta_c coroot coordinates
    target = [Fraction(0)] * z + list(a_c)
    pc = solve_left(full, [target])[0][z + m:] if n else []
    Cfull = [[_coroot_pair(rd, rd.positive_roots[a], rd.positive_coroots[b]) for b in order]
             for a in order]
    labels = []
    o = 0
    for t, _ in comps:
        nodes = list(range(o, o + t.rank))
        if t.letter != "A":
            raise ConsistencyError(f"D_c has a factor of type {t}; expected type A only")
        lab = type_a_label(Cfull, nodes, pc)
        if gcd(lab, t.rank + 1) != 1:
            raise ConsistencyError(f"p(c) does not generate the centre of the {t} factor")
        labels.append(lab)
        o += t.rank

    restr, w_c, n_order = _weyl_group_c(rd, z, omega, K, sbar, cap)
    if n_order != restr.order * weyl_group_order(d_factors):
        raise ConsistencyError("|N_W(s_c)| != |W_c| * |W(Delta_c)|")
    return LeviDatum(
        rd=rd, central_rank=z, c=tuple(c), a_c=a_c, omega_c=omega,
        fixed_basis=tuple(tuple(k) for k in K), s_c_basis=tuple(s_basis),
        levi_roots=tuple(levi), levi_simple=tuple(levi_simple), d_c_factors=d_factors,
        p_c=tuple(pc), p_c_labels=tuple(labels), lambda_s_c=s_lat, lambda_sbar_c=sbar,
        f_c=f_c, restrictions=restr, w_c=w_c, normalizer_order=n_order,
        u=tuple(Fraction(x) for x in (u or [0] * z)),
    )


def _weyl_group_c(rd: RootDatum, z: int, omega: WeylElement, K, sbar: Lattice, cap):
    """W_c = N_W(s_c) / W(Delta_c), as restrictions to s_c and on Lambda_{Sbar_c}."""
    r, m = rd.rank, len(K)
    if m == 0:
        n_order = rd.weyl_order
        R_all = np.zeros((1, 0, 0), dtype=np.int64)
    else:
        _check_cap(rd, cap)
        Kc = np.array(K, dtype=np.int64).T  # r x m
        Om = omega.as_numpy() - np.eye(r, dtype=np.int64)
        rows = _independent_rows(Kc)
        Ksq_inv = np.linalg.inv(Kc[rows].astype(float))
        chunks = []
        trivial = omega.is_identity  # then K = I and N_W(s_c) = W
        for _, imgs in _stream_images(rd, Kc):
            if trivial:
                chunks.append(imgs.astype(np.int8) if np.abs(imgs).max() < 128 else imgs)
                continue
            keep = np.all(np.einsum("ij,njk->nik", Om, imgs) == 0, axis=(1, 2))
            sel = imgs[keep]
            if not len(sel):
                continue
            R = np.rint(np.einsum("ij,njk->nik", Ksq_inv, sel[:, rows, :].astype(float))).astype(np.int64)
            if not np.array_equal(np.einsum("ij,njk->nik", Kc, R), sel):
                raise ConsistencyError("restriction to the fixed space is not integral")
            chunks.append(R.astype(np.int8) if np.abs(R).max() < 128 else R)
        R_all = np.concatenate(chunks)
        n_order = len(R_all)
        if not omega.is_identity:
            flat = R_all.reshape(n_order, -1)
            _, first = np.unique(flat, axis=0, return_index=True)
            R_all = R_all[np.sort(first)]
    generators = None
    if omega.is_identity and m:
        generators = [np.array(simple_reflection(rd, i), dtype=np.int64) for i in range(r)]
    restr = FiniteLinearGroup(R_all, generators)

    # action on Lambda_{Sbar_c}: diag(I_z, R) in s_c coordinates, then change basis
    d = z + m
    if d == 0:
        return restr, FiniteLinearGroup(np.zeros((1, 0, 0), dtype=np.int64)), n_order
    B = [list(b) for b in sbar.basis]  # rows
    Bc = [[B[j][i] for j in range(d)] for i in range(d)]  # columns
    Bc_inv = inverse(Bc)
    D1, A = _cleared(Bc_inv)
    D2, Bn = _cleared(Bc)
    # T = Bc^-1 M Bc = (A M Bn) / (D1 D2); object arithmetic only for large entries
    big = max(int(np.abs(A).max()), int(np.abs(Bn).max()))
    dtype = np.int64 if big < 2 ** 20 else object
    A, Bn = A.astype(dtype), Bn.astype(dtype)
    out = []
    for lo in range(0, restr.order, 65536):
        Rk = restr.elements[lo:lo + 65536]
        M = np.zeros((len(Rk), d, d), dtype=dtype)
        M[:, :z, :z] = np.eye(z, dtype=dtype)
        M[:, z:, z:] = Rk.astype(dtype)
        T = A @ M @ Bn
        if np.any(T % (D1 * D2) != 0):
            raise ConsistencyError("W_c does not preserve Lambda_{Sbar_c}")
        T = (T // (D1 * D2)).astype(np.int64)
        out.append(T.astype(np.int8) if np.abs(T).max() < 128 else T)
    T = np.concatenate(out)
    gens_T = None
    if generators is not None:
        # BFS order puts s_1, ..., s_r right after the identity
        assert all(np.array_equal(restr.element(i + 1), g) for i, g in enumerate(generators))
        gens_T = [T[i + 1] for i in range(len(generators))]
    return restr, FiniteLinearGroup(T, gens_T), n_order


def _cleared(M) -> tuple[int, np.ndarray]:
    D = 1
    for row in M:
        for x in row:
            D = D * Fraction(x).denominator // gcd(D, Fraction(x).denominator)
    return D, np.array([[int(Fraction(x) * D) for x in row] for row in M], dtype=object)


def _independent_rows(M: np.ndarray) -> list[int]:
    rows: list[int] = []
    for i in range(M.shape[0]):
        if np.linalg.matrix_rank(M[rows + [i]].astype(float)) == len(rows) + 1:
            rows.append(i)
        if len(rows) == M.shape[1]:
            break
    return rows
