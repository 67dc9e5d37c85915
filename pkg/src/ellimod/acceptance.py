"""The acceptance suite: eleven oracle and property checks.

Each ``criterion_N`` returns a :class:`CriterionResult`; :func:`run_all`
runs them in order. Used by ``ellimod selftest`` and by the test-suite.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial, gcd, lcm
from typing import Callable

import numpy as np

from .cpairs import build_cpair, clock_shift, commutant_dimension, higgs_representative, verify_splitting
from .errors import ConsistencyError, EllimodError
from .group import parse_degree, parse_group, stable_exists
from .intlat import rank as qrank
from .moduli import CoefficientSpace, describe_moduli, dimension_report, hitchin_report, levi_for
from .rootdata import CartanType, build_root_datum, center_of_simply_connected, weyl_group_order
from .weyl import (
    Alcove,
    _vertex_map_holds,
    enumerate_weyl,
    fixed_subspace,
    levi_and_wc,
    omega_c,
)

__all__ = ["CriterionResult", "CRITERIA", "run_all", "small_simple_types"]


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number:>2} [{status}] {self.title}: {self.detail} ({self.seconds:.1f}s)"


def small_simple_types() -> list[CartanType]:
    """Every admissible simple type of rank at most 4."""
    out = [CartanType("A", n) for n in range(1, 5)]
    out += [CartanType("B", n) for n in range(2, 5)]
    out += [CartanType("C", n) for n in range(2, 5)]
    out += [CartanType("D", n) for n in range(3, 5)]
    out += [CartanType("F", 4), CartanType("G", 2)]
    return out


def _centre_elements(rd):
    divs = center_of_simply_connected(rd).elementary_divisors
    return list(product(*[range(d) for d in divs]))


def _gl_range():
    return [(n, d) for n in range(1, 7) for d in range(n)]


# ---------------------------------------------------------------------------

def criterion_1() -> tuple[bool, str]:
    bad = [(n, d) for n, d in _gl_range()
           if describe_moduli(f"GL({n})", d, "X").lattice_rank != gcd(n, d)]
    return not bad, f"{len(_gl_range())} cases (GL(n), 1<=n<=6), mismatches {bad}"


def criterion_2() -> tuple[bool, str]:
    bad = []
    for n, d in _gl_range():
        L = levi_for(f"GL({n})", d)
        # brute force: |N_W(s_c)| counted over all of W(A_{n-1}) equals |W_c| |W(Delta_c)|
        if L.w_c_order != factorial(gcd(n, d)) or L.normalizer_order != L.w_c_order * weyl_group_order(L.d_c_factors):
            bad.append((n, d, L.w_c_order))
    return not bad, f"|W_c| = gcd(n,d)! on {len(_gl_range())} cases, mismatches {bad}"


def criterion_3() -> tuple[bool, str]:
    cases, bad = 0, []
    for n in range(2, 7):
        for d in range(n):
            if gcd(n, d) != 1:
                continue
            cases += 1
            for sp in ("X", "TstarX", "Cstar2", "Xsharp"):
                if not describe_moduli(f"PGL({n})", d, sp).is_point:
                    bad.append((n, d, sp))
    return not bad, f"{cases} (PGL(n), d) pairs x 4 spaces, non-points {bad}"


def criterion_4() -> tuple[bool, str]:
    bad = []
    for ct in small_simple_types():
        rd = build_root_datum([ct])
        c0 = tuple(0 for _ in center_of_simply_connected(rd).elementary_divisors)
        a, w = omega_c(rd, c0)
        L = levi_and_wc(rd, 0, w, a, c0)
        count = sum(1 for _ in enumerate_weyl(rd, words=False))
        if not (w.is_identity and L.w_c_order == weyl_group_order([ct]) == count
                and L.lattice_rank == ct.rank):
            bad.append(str(ct))
    return not bad, f"{len(small_simple_types())} simple types of rank <= 4, failures {bad}"


def criterion_5() -> tuple[bool, str]:
    bad, cases = [], 0
    for ct in small_simple_types():
        rd = build_root_datum([ct])
        alcove = Alcove.fundamental(rd)
        elems = list(enumerate_weyl(rd, words=False))
        for c in _centre_elements(rd):
            cases += 1
            a, w = omega_c(rd, c)
            hits = [e for e in elems if _vertex_map_holds(rd, e, a, alcove)]
            if len(hits) != 1 or hits[0].matrix != w.matrix:
                bad.append((str(ct), c, len(hits)))
    return not bad, f"{cases} (type, c) pairs, unique and matching; failures {bad}"


def _order_mod_z(vec) -> int:
    return lcm(1, *(Fraction(x).denominator for x in vec))


def criterion_6() -> tuple[bool, str]:
    bad, cases = [], 0
    for ct in small_simple_types():
        rd = build_root_datum([ct])
        for c in _centre_elements(rd):
            cases += 1
            a, w = omega_c(rd, c)
            try:
                L = levi_and_wc(rd, 0, w, a, c)
            except ConsistencyError as exc:
                bad.append((str(ct), c, str(exc)))
                continue
            o = 0
            for t in L.d_c_factors:
                comp = L.p_c[o:o + t.rank]
                o += t.rank
                if t.letter != "A" or _order_mod_z(comp) != t.rank + 1:
                    bad.append((str(ct), c, str(t)))
    return not bad, f"{cases} (type, c) pairs: D_c of type A, p(c) generating; failures {bad}"


def _stability_library() -> list[str]:
    groups = [f"GL({n})" for n in range(1, 9)]
    groups += [f"SL({n})" for n in range(2, 9)]
    groups += [f"PGL({n})" for n in range(2, 9)]
    groups += ["GL(2)xPGL(3)", "GL(2)xGL(3)", "SL(2)xPGL(2)", "C*xSL(3)", "PGL(2)xPGL(4)",
               "GL(4)/Z(2)", "GL(6)/Z(3)", "C*xPGL(2)xSL(2)", "GL(2)xGL(2)"]
    return groups


def _degrees(G) -> list[str]:
    ranges = []
    for comp in G.components:
        if comp.kind == "TORUS":
            ranges.append(range(-1, 2))
        elif comp.kind == "SIMPLY":
            ranges.append(range(1))
        elif comp.kind == "GL":
            ranges.append(range(comp.n))
        else:
            c0, c1 = comp.c_slice
            ranges.append(range(lcm(1, *G.center.elementary_divisors[c0:c1])))
    return [",".join(str(x) for x in combo) for combo in product(*ranges)]


def criterion_7() -> tuple[bool, str]:
    cases, exists, bad = 0, 0, []
    for name in _stability_library():
        G = parse_group(name)
        for ds in _degrees(G):
            cases += 1
            try:
                rep = stable_exists(G, parse_degree(G, ds))
            except ConsistencyError as exc:
                bad.append((name, ds, str(exc)))
                continue
            exists += rep.exists_stable
    return not bad, f"{cases} (G, d) cases, {exists} with stable objects; disagreements {bad}"


def criterion_8() -> tuple[bool, str]:
    bad, cases = [], 0
    for n, d in _gl_range():
        cases += 1
        L = levi_for(f"GL({n})", d)
        rep = dimension_report(f"GL({n})", d)
        # 2 dim h^{omega_c} including the central block
        if rep["dim_Mm"] != 2 * L.lattice_rank or rep["dim_Mm"] != 2 * (1 + len(L.fixed_basis)):
            bad.append((f"GL({n})", d))
    for n in range(2, 7):
        for d in range(n):
            cases += 1
            if dimension_report(f"PGL({n})", d)["dim_Mm"] != 2 * levi_for(f"PGL({n})", d).lattice_rank:
                bad.append((f"PGL({n})", d))
    for ct in small_simple_types():
        G = parse_group(f"SC({ct})")
        cases += 1
        L = levi_for(G, ",".join(["0"] * len(G.components)))
        if dimension_report(G, "0")["dim_Mm"] != 2 * L.lattice_rank:
            bad.append((str(ct), 0))
    return not bad, f"dim_Mm = 2 lattice_rank on {cases} cases; failures {bad}"


def _off_strata_point(rng, W, strata_spaces, dim):
    while True:
        re = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(dim)]
        im = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(dim)]
        if not any(_in_span(space, re) and _in_span(space, im) for space in strata_spaces):
            return list(zip(re, im))


def _in_span(basis, v) -> bool:
    if not basis:
        return all(x == 0 for x in v)
    return qrank([list(b) for b in basis] + [list(v)]) == len(basis)


def _fixed_spaces_of_conjugates(W) -> list[list[tuple]]:
    """ker(w - I) for every non-identity w, as rational bases (independent of filtering)."""
    from .intlat import rational_kernel
    spaces = []
    for k in range(1, W.order):
        m = W.element(k)
        A = (m - np.eye(W.dim, dtype=np.int64)).tolist()
        spaces.append([tuple(v) for v in rational_kernel(A, W.dim)])
    return spaces


HITCHIN_LIBRARY = [("SL(2)", "0"), ("GL(2)", "0"), ("GL(3)", "0"), ("GL(4)", "2"), ("SC(B2)", "0"),
                   ("SC(G2)", "0"), ("GL(6)", "3"), ("PGL(2)", "1")]


def criterion_9() -> tuple[bool, str]:
    rng = random.Random(20240611)
    notes, ok = [], True
    for g, d in HITCHIN_LIBRARY:
        L = levi_for(g, d)
        W, r = L.w_c, L.lattice_rank
        spaces = _fixed_spaces_of_conjugates(W)
        pts = [_off_strata_point(rng, W, spaces, r) for _ in range(100)] if r else [[]] * 100
        rep = hitchin_report(g, d, pts + [[0] * r])
        generic = all(f.generic and f.centralizer_order == 1 for f in rep.fibres[:-1])
        zero = rep.fibres[-1].centralizer_order == W.order
        strata_ok = sum(s.class_size for s in rep.strata) == W.order - 1
        ok &= generic and zero and strata_ok and rep.generic_fibre_dim == r
        if not (generic and zero and strata_ok):
            notes.append(f"{g} d={d}")
    sl2 = hitchin_report("SL(2)", "0", [[0]]).fibres[0]
    four = (len(sl2.fixed_points) == 1 and sl2.fixed_points[0]["isolated"]
            and sl2.fixed_points[0]["count"] == 4)
    ok &= four
    return ok, (f"{len(HITCHIN_LIBRARY)} groups x 100 off-strata points, Z(0) = W_c; "
                f"SL(2) fixed points at s=0: {sl2.fixed_points[0].get('count')}; failures {notes}")


def _splitting_library():
    for n, d in _gl_range():
        yield f"GL({n})", str(d)
    for ct in small_simple_types():
        yield f"SC({ct})", "0"


def criterion_10() -> tuple[bool, str]:
    worst_comm, bad = 0.0, []
    cases = 0
    for n in range(2, 9):
        for k in range(1, n):
            if gcd(n, k) != 1:
                continue
            cases += 1
            p = clock_shift(n, k)
            worst_comm = max(worst_comm, p.commutator_residual())
            if p.commutator_residual() > 1e-12 or commutant_dimension([p.a, p.b]) != 1:
                bad.append((n, k))
    rng = random.Random(7)
    worst_split, nreps = 0.0, 0
    for g, d in _splitting_library():
        L = levi_for(g, d)
        for _ in range(5):
            s = [(Fraction(rng.randint(-9, 9), rng.randint(1, 5)), Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
                 for _ in range(L.lattice_rank)]
            worst_split = max(worst_split, verify_splitting(higgs_representative(L, s)))
            nreps += 1
        if g.startswith("GL") and L.d_c_factors:
            P = build_cpair(L)
            if commutant_dimension([P.a, P.b]) != len(P.blocks) or len(P.blocks) != L.lattice_rank:
                bad.append((g, d, "block commutant"))
    ok = not bad and worst_comm <= 1e-12 and worst_split <= 1e-12
    return ok, (f"{cases} clock/shift pairs, max commutator residual {worst_comm:.1e}; "
                f"{nreps} Higgs representatives, max [z,z*] {worst_split:.1e}; failures {bad}")


def criterion_11() -> tuple[bool, str]:
    library = [(f"GL({n})", str(d)) for n, d in _gl_range()]
    library += [(f"PGL({n})", str(d)) for n in range(2, 7) for d in range(n)]
    library += [(f"SC({ct})", "0") for ct in small_simple_types()]
    library += [("SO(5)", "1"), ("PSp(6)", "1"), ("SO(8)", "1"), ("E6ad", "1")]
    bad = []
    for g, d in library:
        ds = {sp: describe_moduli(g, d, sp) for sp in CoefficientSpace}
        core = {(m.lattice_rank, m.w_c_order, m.w_c_generators) for sp, m in ds.items()}
        if len(core) != 1 or ds[CoefficientSpace.TSTARX].complex_dimension != 2 * ds[CoefficientSpace.X].complex_dimension:
            bad.append((g, d))
        if not ds[CoefficientSpace.TSTARX].orbifold_note or ds[CoefficientSpace.X].is_normalization:
            bad.append((g, d, "labels"))
    return not bad, f"{len(library)} (G, d) cases with identical (rank, W_c) data; failures {bad}"


CRITERIA: list[tuple[int, str, Callable[[], tuple[bool, str]]]] = [
    (1, "Atiyah gcd law", criterion_1),
    (2, "symmetric-group law", criterion_2),
    (3, "point moduli for PGL(n)", criterion_3),
    (4, "trivial-degree recovery", criterion_4),
    (5, "alcove identity and uniqueness", criterion_5),
    (6, "type-A Levi classification", criterion_6),
    (7, "stability cross-check", criterion_7),
    (8, "dimension formula", criterion_8),
    (9, "Hitchin generic fibre", criterion_9),
    (10, "c-pair numerics and splitting", criterion_10),
    (11, "coefficient-space coherence", criterion_11),
]


def run_one(number: int) -> CriterionResult:
    num, title, fn = CRITERIA[number - 1]
    t0 = time.perf_counter()
    try:
        passed, detail = fn()
    except EllimodError as exc:
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return CriterionResult(num, title, bool(passed), detail, time.perf_counter() - t0)


def run_all(echo: Callable[[str], None] | None = None) -> list[CriterionResult]:
    out = []
    for num, _, _ in CRITERIA:
        res = run_one(num)
        if echo:
            echo(res.line())
        out.append(res)
    return out
