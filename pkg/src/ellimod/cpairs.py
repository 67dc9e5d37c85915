"""Numerical c-pairs (clock and shift matrices) and the Higgs splitting check.

Floating point is confined to this module. Tolerances: 1e-12 for
constructions, 1e-8 relative for rank decisions.
"""
from __future__ import annotations

import cmath
import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, pi
from typing import Sequence

import numpy as np

from .errors import ConsistencyError, InputError
from .weyl import LeviDatum, _gaussian_parts

__all__ = [
    "UnitaryPair",
    "HiggsRepresentative",
    "clock_shift",
    "build_cpair",
    "commutant_dimension",
    "higgs_representative",
    "verify_splitting",
    "CONSTRUCTION_TOL",
    "RANK_RTOL",
]

CONSTRUCTION_TOL = 1e-12
RANK_RTOL = 1e-8


@dataclass(frozen=True, eq=False)
class UnitaryPair:
    """Two unitary matrices whose commutator is the scalar e^{2 pi i c_phase}.

    ``blocks`` records the sizes of the diagonal blocks (one per D_c factor);
    a size-0 pair is the torus case.
    """

    a: np.ndarray
    b: np.ndarray
    c_phase: Fraction
    blocks: tuple[int, ...] = ()
    phases: tuple[Fraction, ...] = ()

    @property
    def n(self) -> int:
        return self.a.shape[0]

    @property
    def is_torus_case(self) -> bool:
        return self.n == 0

    def commutator(self) -> np.ndarray:
        a, b = self.a, self.b
        return a @ b @ a.conj().T @ b.conj().T

    def target_commutator(self) -> np.ndarray:
        """Blockwise e^{2 pi i k_j / n_j} identities."""
        diag = []
        for size, ph in zip(self.blocks, self.phases):
            diag += [cmath.exp(2j * pi * ph)] * size
        return np.diag(np.array(diag, dtype=complex)).reshape(self.n, self.n)

    def commutator_residual(self) -> float:
        if self.n == 0:
            return 0.0
        return float(np.abs(self.commutator() - self.target_commutator()).max())

    def unitarity_residual(self) -> float:
        if self.n == 0:
            return 0.0
        eye = np.eye(self.n)
        return float(max(np.abs(self.a @ self.a.conj().T - eye).max(),
                         np.abs(self.b @ self.b.conj().T - eye).max()))

    def to_json(self) -> dict:
        def enc(m):
            return [[[float(x.real), float(x.imag)] for x in row] for row in m]

        return {"n": self.n, "blocks": list(self.blocks),
                "phases": [str(p) for p in self.phases],
                "a": enc(self.a), "b": enc(self.b)}


def _check_n_k(n, k):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2:
        raise InputError(f"n must be an integer >= 2, got {n!r}")
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise InputError(f"k must be an integer, got {k!r}")
    if gcd(n, k) != 1:
        raise InputError(
            f"gcd({n}, {k}) = {gcd(n, k)}: the clock/shift pair would be reducible; "
            "build it from the Levi data with build_cpair instead")


def clock_shift(n: int, k: int) -> UnitaryPair:
    """The SU(n) clock/shift pair with commutator e^{2 pi i k/n} I.

    ``a = lambda * diag(w^j)`` with ``w = e^{2 pi i k/n}`` and ``lambda`` the
    principal n-th root of det(diag(w^j))^{-1}; ``b`` is the cyclic shift
    e_j -> e_{j+1} with one entry negated when n is even.
    """
    _check_n_k(n, k)
    w = cmath.exp(2j * pi * k / n)
    clock = np.array([w ** j for j in range(n)], dtype=complex)
    # det(diag(w^j)) = e^{pi i k (n-1)}; take the principal root of its inverse exactly
    t = Fraction(-k * (n - 1), 2) % 1
    if t > Fraction(1, 2):
        t -= 1
    lam = cmath.exp(2j * pi * float(t) / n)
    a = np.diag(lam * clock)
    b = np.zeros((n, n), dtype=complex)
    for j in range(n):
        b[(j + 1) % n, j] = 1
    b[1, 0] *= (-1) ** (n - 1)
    pair = UnitaryPair(a, b, Fraction(k % n, n), (n,), (Fraction(k % n, n),))
    _verify_su(pair)
    return pair


def _verify_su(pair: UnitaryPair):
    if pair.unitarity_residual() > CONSTRUCTION_TOL:
        raise ConsistencyError("clock/shift matrices are not unitary")
    for m in (pair.a, pair.b):
        if abs(np.linalg.det(m) - 1) > 1e-10:
            raise ConsistencyError("clock/shift matrices are not in SU(n)")
    if pair.commutator_residual() > CONSTRUCTION_TOL:
        raise ConsistencyError("clock/shift commutator misses its target")


def build_cpair(levi: LeviDatum, twist: bool = True) -> UnitaryPair:
    """Block-diagonal c-pair over the type-A factors of D_c.

    Block j is ``clock_shift(n_j, k_j)`` with ``k_j`` the label of p(c) on
    that factor. With ``twist`` each block's clock is multiplied by a distinct
    scalar (a generic element of S_c), which keeps the commutator and makes
    non-isomorphic blocks, so the commutant has dimension = number of blocks.
    """
    sizes, phases, As, Bs = [], [], [], []
    for t, lab in zip(levi.d_c_factors, levi.p_c_labels):
        if t.letter != "A":
            raise ConsistencyError(f"D_c factor {t} is not of type A")
        n = t.rank + 1
        p = clock_shift(n, lab)
        sizes.append(n)
        phases.append(p.c_phase)
        As.append(p.a)
        Bs.append(p.b)
    N = sum(sizes)
    a = np.zeros((N, N), dtype=complex)
    b = np.zeros((N, N), dtype=complex)
    o = 0
    nb = len(sizes)
    # q is prime to every block size, so scale ratios are never roots of unity of those orders
    q = 2 * nb * lcm(1, *sizes) + 1
    for j, (A, B) in enumerate(zip(As, Bs)):
        s = A.shape[0]
        scale = cmath.exp(2j * pi * (j + 1) / q) if twist and nb > 1 else 1
        a[o:o + s, o:o + s] = scale * A
        b[o:o + s, o:o + s] = B
        o += s
    phase = phases[0] if phases and all(p == phases[0] for p in phases) else Fraction(0)
    return UnitaryPair(a, b, phase, tuple(sizes), tuple(phases))


def commutant_dimension(mats: Sequence[np.ndarray]) -> int:
    """dim {X : X m = m X for all m}, via SVD nullity of the stacked system."""
    mats = [np.asarray(m, dtype=complex) for m in mats]
    if not mats:
        raise InputError("need at least one matrix")
    n = mats[0].shape[0]
    if any(m.shape != (n, n) for m in mats):
        raise InputError("commutant needs square matrices of equal size")
    if n == 0:
        return 0
    eye = np.eye(n)
    # row-major vec: vec(X m) = (I kron m^T) vec(X), vec(m X) = (m kron I) vec(X)
    A = np.vstack([np.kron(eye, m.T) - np.kron(m, eye) for m in mats])
    sv = np.linalg.svd(A, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return n * n
    return int(n * n - np.sum(sv > RANK_RTOL * sv[0]))


@dataclass(frozen=True, eq=False)
class HiggsRepresentative:
    """z in s_c (x) C in the adjoint (+) central representation.

    The diagonal holds beta(z) for every root beta (positive then negative),
    ``rank`` zeros for the Cartan part and the central coordinates u(z).
    """

    z: np.ndarray
    s: tuple[tuple[Fraction, Fraction], ...]
    h_vector: tuple[complex, ...]


def higgs_representative(levi: LeviDatum, s: Sequence) -> HiggsRepresentative:
    """Embed the point ``s`` (coordinates in the Lambda_{Sbar_c} basis)."""
    dim = levi.lattice_rank
    re, im = _gaussian_parts(s, dim)
    # s_c coordinates, then h = Q^z + h' coordinates
    B = levi.lambda_sbar_c.basis
    sc = [complex(sum(float(re[i]) * float(B[i][j]) for i in range(dim)),
                  sum(float(im[i]) * float(B[i][j]) for i in range(dim)))
          for j in range(len(levi.s_c_basis))]
    n = levi.central_rank + levi.rd.rank
    h = [sum(sc[j] * levi.s_c_basis[j][t] for j in range(len(sc))) for t in range(n)]
    z, rd = levi.central_rank, levi.rd
    hp = np.array(h[z:], dtype=complex)
    if rd.rank:
        C = np.array(rd.cartan, dtype=float)
        vals = np.array(rd.positive_roots, dtype=float) @ C @ hp
    else:
        vals = np.zeros(0, dtype=complex)
    diag = np.concatenate([vals, -vals, np.zeros(rd.rank), np.array(h[:z], dtype=complex)])
    return HiggsRepresentative(np.diag(diag), tuple(zip(re, im)), tuple(h))


def verify_splitting(z) -> float:
    """||[z, z*]||_inf; accepts a HiggsRepresentative or any square matrix."""
    m = z.z if isinstance(z, HiggsRepresentative) else np.asarray(z, dtype=complex)
    if m.size == 0:
        return 0.0
    bracket = m @ m.conj().T - m.conj().T @ m
    return float(np.linalg.norm(bracket, np.inf))


def pair_to_json(pair: UnitaryPair) -> str:
    return json.dumps(pair.to_json())
