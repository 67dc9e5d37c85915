"""Exact integer and rational lattice arithmetic.

Everything here works on plain Python ``int`` and :class:`fractions.Fraction`
so that big entries never overflow. Matrices are lists (or tuples) of rows.

Lattices are normalised to a canonical form at construction: the minimal
positive integer ``denominator`` that clears the lattice into ``Z^n``, and the
row Hermite normal form of the cleared basis. Two lattices are equal iff
these agree.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import InputError

__all__ = [
    "FiniteAbelianGroup",
    "Lattice",
    "TorusAutomorphism",
    "FixedPointReport",
    "hnf",
    "snf",
    "normal_forms",
    "intersect",
    "saturate",
    "quotient_group",
    "fixed_point_report",
    "integer_left_kernel",
    "rational_kernel",
    "rank",
    "det",
    "inverse",
    "solve_left",
    "matmul",
    "identity",
    "matrix_to_json",
    "matrix_from_json",
]


# ---------------------------------------------------------------------------
# small exact helpers

def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def _to_fractions(M):
    return [[Fraction(x) for x in row] for row in M]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _rref(M):
    """Reduced row echelon form over Q. Returns (R, pivot_columns)."""
    R = _to_fractions(M)
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        pv = R[r][c]
        R[r] = [x / pv for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(M) -> int:
    if not M or not M[0]:
        return 0
    return len(_rref(M)[1])


def rational_kernel(M, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : M x = 0} over Q (column-vector convention)."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, pivots = _rref(M)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def det(M) -> Fraction:
    n = len(M)
    if n == 0:
        return Fraction(1)
    A = _to_fractions(M)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / A[c][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return d


def inverse(M) -> list[list[Fraction]]:
    n = len(M)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(_to_fractions(M))]
    R, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise InputError("matrix is singular")
    return [row[n:] for row in R]


def solve_left(B, Y) -> list[list[Fraction]]:
    """Solve X @ B == Y for X, where B has full row rank.

    Raises InputError when some row of Y is outside the row space of B.
    """
    k = len(B)
    if k == 0:
        if any(any(x != 0 for x in y) for y in Y):
            raise InputError("vector outside the row space")
        return [[] for _ in Y]
    n = len(B[0])
    # transpose system: B^T x^T = y^T
    BT = [[Fraction(B[i][j]) for i in range(k)] for j in range(n)]
    out = []
    for y in Y:
        aug = [BT[j] + [Fraction(y[j])] for j in range(n)]
        R, pivots = _rref(aug)
        if k in pivots:
            raise InputError("vector outside the row space")
        if len(pivots) != k:
            raise InputError("basis rows are linearly dependent")
        x = [Fraction(0)] * k
        for i, p in enumerate(pivots):
            x[p] = R[i][k]
        out.append(x)
    return out


def _clear(M) -> tuple[int, list[list[int]]]:
    """Least common denominator D of M and the integer matrix D*M."""
    D = 1
    for row in M:
        for x in row:
            D = lcm(D, Fraction(x).denominator)
    return D, [[int(Fraction(x) * D) for x in row] for row in M]


# ---------------------------------------------------------------------------
# normal forms

def hnf(M) -> tuple[list[list[int]], list[list[int]]]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``. ``H`` is in
    echelon form with positive pivots, entries above each pivot reduced into
    ``[0, pivot)``, and zero rows at the bottom.
    """
    A = [[int(x) for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            if A[i][c] == 0:
                continue
            a, b = A[r][c], A[i][c]
            g, x, y = _xgcd(a, b)
            p, q = a // g, b // g
            A[r], A[i] = ([x * s + y * t for s, t in zip(A[r], A[i])],
                          [-q * s + p * t for s, t in zip(A[r], A[i])])
            U[r], U[i] = ([x * s + y * t for s, t in zip(U[r], U[i])],
                          [-q * s + p * t for s, t in zip(U[r], U[i])])
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
            U[r] = [-x for x in U[r]]
        piv = A[r][c]
        for i in range(r):
            f = A[i][c] // piv
            if f:
                A[i] = [s - f * t for s, t in zip(A[i], A[r])]
                U[i] = [s - f * t for s, t in zip(U[i], U[r])]
        r += 1
    return A, U


def snf(M) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form ``(S, U, V)`` with ``U @ M @ V == S``.

    ``S`` is diagonal with non-negative entries d_1 | d_2 | ... ; ``U`` and
    ``V`` are unimodular.
    """
    A = [[int(x) for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(t, m)
                       for j in range(t, n) if A[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            piv = A[t][t]
            clean = True
            for i in range(t + 1, m):
                q = A[i][t] // piv
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[t])]
                if A[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = A[t][j] // piv
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                    for row in V:
                        row[j] -= q * row[t]
                if A[t][j]:
                    clean = False
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % piv), None)
            if bad is None:
                break
            # pull the offending row in; the next pass shrinks the pivot
            i = bad[0]
            A[t] = [a + b for a, b in zip(A[t], A[i])]
            U[t] = [a + b for a, b in zip(U[t], U[i])]
        if t < m and t < n and A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return A, U, V


def normal_forms(M, check: bool = True):
    """Hermite and Smith forms of an integer matrix with their transforms.

    Returns a dict with keys ``hermite``, ``hermite_transform`` (``U_h`` with
    ``U_h @ M == H``), ``smith``, ``smith_left``, ``smith_right`` (``U @ M @ V
    == S``). With ``check`` the identities are re-verified exactly.
    """
    M = [[int(x) for x in row] for row in M]
    H, Uh = hnf(M)
    S, U, V = snf(M)
    if check:
        assert matmul(Uh, M) == H
        assert matmul(matmul(U, M), V) == S
        assert abs(det(Uh)) == 1 and abs(det(U)) == 1 and abs(det(V)) == 1
    return {"hermite": H, "hermite_transform": Uh,
            "smith": S, "smith_left": U, "smith_right": V}


def integer_left_kernel(M) -> list[list[int]]:
    """A saturated basis of {x in Z^m : x @ M == 0} for a rational matrix M."""
    m = len(M)
    if m == 0:
        return []
    _, Mi = _clear(M)
    if not Mi[0]:
        return identity(m)
    H, U = hnf(Mi)
    return [U[i] for i in range(m) if not any(H[i])]


# ---------------------------------------------------------------------------
# lattices

@dataclass(frozen=True)
class FiniteAbelianGroup:
    """A finite abelian group presented as a direct sum of cyclic groups.

    ``elementary_divisors[i]`` is the order of the cyclic summand generated by
    ``generators[i]`` (a representative rational vector modulo the ambient
    lattice). All divisors are > 1.
    """

    elementary_divisors: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.elementary_divisors:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.elementary_divisors

    def __str__(self):
        if self.is_trivial:
            return "1"
        return " x ".join(f"Z{d}" for d in self.elementary_divisors)


@dataclass(frozen=True, eq=True)
class Lattice:
    """A lattice in Q^ambient_dim, kept in canonical cleared-HNF form."""

    ambient_dim: int
    denominator: int
    hnf_rows: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, gens: Sequence[Sequence], ambient_dim: int | None = None):
        gens = [list(g) for g in gens]
        if ambient_dim is None:
            if not gens:
                raise InputError("ambient dimension needed for an empty generator list")
            ambient_dim = len(gens[0])
        if any(len(g) != ambient_dim for g in gens):
            raise InputError("generator of wrong dimension")
        if not gens:
            return cls(ambient_dim, 1, ())
        D, Mi = _clear(gens)
        H, _ = hnf(Mi)
        rows = [r for r in H if any(r)]
        # shrink D to the minimal clearing denominator
        g = 0
        for r in rows:
            for x in r:
                g = gcd(g, x)
        g = gcd(g, D) if g else D
        D //= g
        rows = tuple(tuple(x // g for x in r) for r in rows)
        if g != 1:
            rows = tuple(tuple(r) for r in hnf([list(r) for r in rows])[0] if any(r))
        return cls(ambient_dim, D, rows)

    @classmethod
    def standard(cls, n: int) -> "Lattice":
        return cls(n, 1, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def rank(self) -> int:
        return len(self.hnf_rows)

    @property
    def basis(self) -> tuple[tuple[Fraction, ...], ...]:
        D = self.denominator
        return tuple(tuple(Fraction(x, D) for x in r) for r in self.hnf_rows)

    def __contains__(self, v) -> bool:
        if len(v) != self.ambient_dim:
            return False
        try:
            coords = solve_left(self.basis, [v])[0]
        except InputError:
            return False
        return all(x.denominator == 1 for x in coords)

    def coordinates(self, v) -> tuple[Fraction, ...]:
        """Coordinates of ``v`` in the HNF basis (rational if v is not in L)."""
        return tuple(solve_left(self.basis, [v])[0])

    def __add__(self, other: "Lattice") -> "Lattice":
        _check_dims(self, other)
        return Lattice.from_generators(list(self.basis) + list(other.basis), self.ambient_dim)

    def __str__(self):
        rows = ", ".join("(" + ", ".join(str(x) for x in r) + ")" for r in self.basis)
        return f"Lattice<{rows}>"


def _check_dims(a: Lattice, b: Lattice):
    if a.ambient_dim != b.ambient_dim:
        raise InputError("lattices live in different ambient spaces")


def intersect(L1: Lattice, L2: Lattice) -> Lattice:
    _check_dims(L1, L2)
    if L1.rank == 0 or L2.rank == 0:
        return Lattice.from_generators([], L1.ambient_dim)
    D = lcm(L1.denominator, L2.denominator)
    A = [[x * (D // L1.denominator) for x in r] for r in L1.hnf_rows]
    B = [[x * (D // L2.denominator) for x in r] for r in L2.hnf_rows]
    ker = integer_left_kernel(A + [[-x for x in r] for r in B])
    k = len(A)
    gens = [[Fraction(sum(x[i] * A[i][j] for i in range(k)), D)
             for j in range(L1.ambient_dim)] for x in ker]
    return Lattice.from_generators(gens, L1.ambient_dim)


def saturate(L: Lattice) -> Lattice:
    """(Q-span of L) intersected with Z^n."""
    n = L.ambient_dim
    if L.rank == 0:
        return L
    # integer vectors orthogonal to the complement of span(L)
    comp = rational_kernel([list(r) for r in L.hnf_rows], n)
    if not comp:
        return Lattice.standard(n)
    N = [[comp[j][i] for j in range(len(comp))] for i in range(n)]
    return Lattice.from_generators(integer_left_kernel(N), n)


def quotient_group(L_sup: Lattice, L_sub: Lattice) -> FiniteAbelianGroup:
    """The finite group L_sup / L_sub for L_sub of full rank inside L_sup."""
    _check_dims(L_sup, L_sub)
    if L_sub.rank != L_sup.rank:
        raise InputError("quotient needs sublattice of equal rank")
    if L_sup.rank == 0:
        return FiniteAbelianGroup((), ())
    try:
        X = solve_left(L_sup.basis, L_sub.basis)
    except InputError:
        raise InputError("sublattice is not contained in the superlattice") from None
    if any(x.denominator != 1 for row in X for x in row):
        raise InputError("sublattice is not contained in the superlattice")
    S, _, V = snf([[int(x) for x in row] for row in X])
    Vinv = inverse(V)
    new_basis = matmul(Vinv, [list(b) for b in L_sup.basis])
    divs, gens = [], []
    for i in range(len(S)):
        d = S[i][i]
        if d > 1:
            divs.append(d)
            gens.append(tuple(Fraction(x) for x in new_basis[i]))
    return FiniteAbelianGroup(tuple(divs), tuple(gens))


# ---------------------------------------------------------------------------
# torus automorphisms

@dataclass(frozen=True)
class TorusAutomorphism:
    """An element of GL(r, Z) acting on a lattice (hence on any torus T (x) L)."""

    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix):
            raise InputError("automorphism matrix must be square")
        if n and abs(det(self.matrix)) != 1:
            raise InputError("automorphism matrix must have determinant +-1")

    @property
    def rank(self) -> int:
        return len(self.matrix)


@dataclass(frozen=True)
class FixedPointReport:
    isolated: bool
    count: int | None = None
    fixed_dim: int | None = None


def fixed_point_report(w: TorusAutomorphism | Sequence[Sequence[int]], circle_factors: int) -> FixedPointReport:
    """Fixed locus of ``w`` acting on the real torus (R/Z)^(k*r) = T^k (x) L.

    When ``w - I`` is invertible the fixed points are isolated and there are
    ``|det(w - I)|^k`` of them; otherwise the fixed locus has real dimension
    ``k * dim ker(w - I)`` and ``fixed_dim`` is reported instead.
    """
    M = w.matrix if isinstance(w, TorusAutomorphism) else w
    n = len(M)
    A = [[M[i][j] - int(i == j) for j in range(n)] for i in range(n)]
    d = det(A)
    if d != 0:
        return FixedPointReport(True, count=int(abs(d)) ** circle_factors)
    return FixedPointReport(False, fixed_dim=circle_factors * (n - rank(A)))


# ---------------------------------------------------------------------------
# serialisation

def matrix_to_json(M) -> str:
    return json.dumps([[str(x) for x in row] for row in M])


def matrix_from_json(s: str):
    return [[Fraction(x) for x in row] for row in json.loads(s)]
