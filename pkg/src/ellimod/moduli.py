"""Quotient descriptions of the moduli spaces and of the Hitchin fibration.

Every space attached to (G, d) is ``(Y (x) Lambda) / W_c`` with
Lambda = Lambda_{Sbar_c} and Y one of the coefficient spaces below. Only the
bundle case (Y = X) is an isomorphism; the Higgs, representation and
connection cases describe normalizations. The elliptic curve stays symbolic.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import InputError
from .group import Degree, GroupDatum, jordan_holder_levi, parse_degree, parse_group
from .intlat import fixed_point_report, rank
from .weyl import FiniteLinearGroup, LeviDatum, _gaussian_parts

__all__ = [
    "CoefficientSpace",
    "ModuliDescription",
    "HitchinReport",
    "describe_moduli",
    "dimension_report",
    "hitchin_report",
    "report_json",
    "levi_for",
]


class CoefficientSpace(Enum):
    X = "X"
    TSTARX = "TstarX"
    CSTAR2 = "Cstar2"
    XSHARP = "Xsharp"
    CLINE = "Cline"

    @property
    def factor(self) -> int:
        """Complex dimension contributed per lattice generator."""
        return {"X": 1, "TstarX": 2, "Cstar2": 2, "Xsharp": 2, "Cline": 1}[self.value]

    @property
    def meaning(self) -> str:
        return {
            "X": "elliptic curve (G-bundles)",
            "TstarX": "X x C (G-Higgs bundles)",
            "Cstar2": "C* x C* (representations of pi_1(X), diagonal W_c action)",
            "Xsharp": "rank 1 local systems (flat connections)",
            "Cline": "C (Hitchin base)",
        }[self.value]

    @classmethod
    def parse(cls, s: "str | CoefficientSpace") -> "CoefficientSpace":
        if isinstance(s, cls):
            return s
        key = str(s).strip().lower().replace("*", "star").replace("-", "").replace("_", "")
        aliases = {
            "x": cls.X, "bundles": cls.X, "bundle": cls.X,
            "tstarx": cls.TSTARX, "higgs": cls.TSTARX,
            "cstar2": cls.CSTAR2, "cstarxcstar": cls.CSTAR2, "representations": cls.CSTAR2,
            "reps": cls.CSTAR2, "betti": cls.CSTAR2,
            "xsharp": cls.XSHARP, "connections": cls.XSHARP, "flat": cls.XSHARP, "derham": cls.XSHARP,
            "cline": cls.CLINE, "base": cls.CLINE, "hitchinbase": cls.CLINE,
        }
        if key not in aliases:
            raise InputError(f"unknown coefficient space {s!r}; use one of X, TstarX, Cstar2, Xsharp, Cline")
        return aliases[key]


@dataclass(frozen=True)
class ModuliDescription:
    space: CoefficientSpace
    lattice_rank: int
    w_c_order: int
    w_c_generators: tuple[tuple[tuple[int, ...], ...], ...]
    complex_dimension: int
    is_point: bool
    is_normalization: bool
    orbifold_note: bool

    def to_json(self) -> dict:
        return {
            "space": self.space.value,
            "coefficients": self.space.meaning,
            "lattice_rank": self.lattice_rank,
            "w_c_order": self.w_c_order,
            "w_c_generators": [[[str(x) for x in row] for row in g] for g in self.w_c_generators],
            "complex_dimension": self.complex_dimension,
            "is_point": self.is_point,
            "is_normalization": self.is_normalization,
            "orbifold_note": self.orbifold_note,
        }


@dataclass(frozen=True)
class Stratum:
    representative: tuple[tuple[int, ...], ...]
    class_size: int
    fixed_dim: int


@dataclass(frozen=True)
class Fibre:
    s: tuple[tuple[Fraction, Fraction], ...]
    centralizer_order: int
    centralizer_generators: tuple[tuple[tuple[int, ...], ...], ...]
    generic: bool
    fixed_points: tuple[dict, ...]


@dataclass(frozen=True)
class HitchinReport:
    base: ModuliDescription
    generic_fibre_dim: int
    strata: tuple[Stratum, ...]
    fibres: tuple[Fibre, ...]

    def to_json(self) -> dict:
        r = self.generic_fibre_dim
        return {
            "base": self.base.to_json(),
            "generic_fibre": {"abelian_variety_dim": r, "description": f"X (x) Z^{r}"},
            "strata": [
                {"representative": [[str(x) for x in row] for row in s.representative],
                 "class_size": s.class_size, "fixed_dim": s.fixed_dim}
                for s in self.strata
            ],
            "fibres": [
                {"s": [[str(a), str(b)] for a, b in f.s],
                 "centralizer_order": f.centralizer_order,
                 "centralizer_generators": [[[str(x) for x in row] for row in g]
                                            for g in f.centralizer_generators],
                 "generic": f.generic,
                 "description": (f"X (x) Z^{r}" if f.generic
                                 else f"(X (x) Z^{r}) / Z(s), |Z(s)| = {f.centralizer_order}"),
                 "fixed_points": list(f.fixed_points)}
                for f in self.fibres
            ],
        }


# ---------------------------------------------------------------------------

def _coerce(G, d) -> tuple[GroupDatum, Degree]:
    if isinstance(G, str):
        G = parse_group(G)
    return G, parse_degree(G, d)


@lru_cache(maxsize=64)
def _levi_cached(G: GroupDatum, d: Degree) -> LeviDatum:
    return jordan_holder_levi(G, d)


def levi_for(G, d) -> LeviDatum:
    """Jordan-Holder Levi data of (G, d), memoised."""
    G, d = _coerce(G, d)
    return _levi_cached(G, d)


def _tuple_matrix(m) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in np.asarray(m))


def describe_moduli(G, d, space="X") -> ModuliDescription:
    space = CoefficientSpace.parse(space)
    L = levi_for(G, d)
    r = L.lattice_rank
    return ModuliDescription(
        space=space,
        lattice_rank=r,
        w_c_order=L.w_c_order,
        w_c_generators=tuple(_tuple_matrix(g) for g in L.w_c.generators),
        complex_dimension=space.factor * r,
        is_point=r == 0,
        is_normalization=space not in (CoefficientSpace.X, CoefficientSpace.CLINE),
        orbifold_note=space is CoefficientSpace.TSTARX,
    )


def dimension_report(G, d) -> dict[str, int]:
    r = levi_for(G, d).lattice_rank
    out = {"dim_M": r, "dim_Mm": 2 * r, "dim_base": r, "dim_fibre": r}
    assert out["dim_Mm"] == 2 * out["dim_M"]
    return out


def fixed_dimension(m) -> int:
    M = np.asarray(m, dtype=np.int64)
    n = M.shape[0]
    if n == 0:
        return 0
    A = (M - np.eye(n, dtype=np.int64)).tolist()
    return n - rank(A)


def strata(group: FiniteLinearGroup) -> tuple[Stratum, ...]:
    out = []
    for cls in group.conjugacy_classes():
        if cls[0] == 0:
            continue
        rep = group.element(cls[0])
        out.append(Stratum(_tuple_matrix(rep), len(cls), fixed_dimension(rep)))
    return tuple(out)


def fibre_at(group: FiniteLinearGroup, s) -> Fibre:
    re, im = _gaussian_parts(s, group.dim)
    Z = group.centralizer_of_vector(list(zip(re, im)))
    pts = []
    for k in range(1, Z.order):
        w = Z.element(k)
        rep = fixed_point_report(_tuple_matrix(w), 2)
        entry = {"element": [[str(x) for x in row] for row in w.tolist()], "isolated": rep.isolated}
        if rep.isolated:
            entry["count"] = rep.count
        else:
            entry["fixed_dim"] = rep.fixed_dim
        pts.append(entry)
    return Fibre(
        s=tuple(zip(re, im)),
        centralizer_order=Z.order,
        centralizer_generators=tuple(_tuple_matrix(g) for g in Z.generators),
        generic=Z.order == 1,
        fixed_points=tuple(pts),
    )


def hitchin_report(G, d, queried_points: Sequence = ()) -> HitchinReport:
    """Base, generic fibre, strata and fibres over the given exact points."""
    L = levi_for(G, d)
    base = describe_moduli(G, d, CoefficientSpace.CLINE)
    W = L.w_c
    return HitchinReport(
        base=base,
        generic_fibre_dim=L.lattice_rank,
        strata=strata(W),
        fibres=tuple(fibre_at(W, s) for s in queried_points),
    )


def report_json(G, d, queried_points: Sequence = (), indent: int | None = 2) -> str:
    """The documented JSON report (schema "1"); byte-stable for fixed inputs."""
    G, d = _coerce(G, d)
    L = levi_for(G, d)
    spaces = {key: describe_moduli(G, d, sp).to_json()
              for key, sp in (("X", CoefficientSpace.X), ("TstarX", CoefficientSpace.TSTARX),
                              ("Cstar2", CoefficientSpace.CSTAR2), ("Xsharp", CoefficientSpace.XSHARP))}
    doc = {
        "schema": "1",
        "group": G.name,
        "degree": d.to_json(),
        "levi": {
            "a_c": [str(x) for x in L.a_c],
            "omega_c_word": [int(i) + 1 for i in (L.omega_c.word or ())],
            "d_c_factors": [str(t) for t in L.d_c_factors],
            "p_c": [int(x) for x in L.p_c_labels],
            "f_c": str(L.f_c),
            "lambda_rank": L.lattice_rank,
            "lambda_basis": [[str(x) for x in row] for row in L.lambda_sbar_c.basis],
        },
        "spaces": spaces,
        "hitchin": hitchin_report(G, d, queried_points).to_json(),
    }
    return json.dumps(doc, indent=indent, sort_keys=False)
