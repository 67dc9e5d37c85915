"""Connected reductive groups G = Z_0 x_tau D and their degrees.

A group is encoded by the rank ``z`` of its central torus Z_0, the root datum
of the simply connected cover D of [G, G], a subgroup C of the centre of D
(generators in the centre's generator coordinates) and a map tau sending each
C-generator to a torsion point of Q^z / Z^z. Then

    ker(exp) = { (u, v) : v in P^vee, [v] in C, u = tau([v]) mod Z^z }

inside h = Q^z + h', with central coordinates first.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import ConsistencyError, InputError, InvalidDegreeError
from .intlat import integer_left_kernel, inverse, normal_forms
from .rootdata import (
    CartanType,
    RootDatum,
    build_root_datum,
    center_class,
    center_of_simply_connected,
    empty_root_datum,
    parse_cartan_types,
)
from .weyl import (
    LeviDatum,
    fixed_subspace,
    identify_cartan_type,
    levi_and_wc,
    omega_c,
    type_a_label,
)

__all__ = [
    "GroupDatum",
    "Degree",
    "FundamentalGroup",
    "StabilityReport",
    "build_group",
    "parse_group",
    "fundamental_group",
    "validate_degree",
    "parse_degree",
    "jordan_holder_levi",
    "stable_exists",
    "PRESET_NAMES",
]


@dataclass(frozen=True)
class Component:
    """Provenance of one preset factor, used for integer-degree sugar."""

    kind: str  # GL (u = d k / n), TORUS (u = d), CENTER, SIMPLY (d = 0) or RAW
    n: int = 0
    k: int = 1
    c_step: tuple[int, ...] = ()  # c = d * c_step on this component's centre
    z_slice: tuple[int, int] = (0, 0)
    c_slice: tuple[int, int] = (0, 0)


@dataclass(frozen=True)
class GroupDatum:
    central_rank: int
    rd: RootDatum
    c_generators: tuple[tuple[int, ...], ...]
    tau: tuple[tuple[Fraction, ...], ...]
    name: str = ""
    components: tuple[Component, ...] = field(default=(), compare=False, repr=False)

    @property
    def center(self):
        return center_of_simply_connected(self.rd)

    @property
    def lambda_h(self) -> list[list[Fraction]]:
        """Generators of ker(exp) in h = Q^z + h'."""
        z, r = self.central_rank, self.rd.rank
        gens = [[Fraction(int(i == j)) for j in range(z + r)] for i in range(z + r)]
        for g, t in zip(self.c_generators, self.tau):
            gens.append(list(t) + list(center_class(self.rd, g)))
        return gens

    def c_elements(self) -> dict[tuple[int, ...], tuple[Fraction, ...]]:
        """Every element of C with tau of it reduced to [0, 1)^z."""
        divs = self.center.elementary_divisors
        zero = tuple(0 for _ in divs)
        out = {zero: tuple(Fraction(0) for _ in range(self.central_rank))}
        frontier = [zero]
        while frontier:
            nxt = []
            for c in frontier:
                for g, t in zip(self.c_generators, self.tau):
                    e = tuple((a + b) % d for a, b, d in zip(c, g, divs))
                    v = tuple((x + y) % 1 for x, y in zip(out[c], t))
                    if e not in out:
                        out[e] = v
                        nxt.append(e)
                    elif out[e] != v:
                        raise InputError("tau is not a homomorphism on C")
            frontier = nxt
        return out

    def tau_of(self, c) -> tuple[Fraction, ...]:
        c = self.normalize_c(c)
        elems = self.c_elements()
        if c not in elems:
            raise InputError(f"centre element {c} is not in C for {self.name or 'this group'}")
        return elems[c]

    def normalize_c(self, c) -> tuple[int, ...]:
        divs = self.center.elementary_divisors
        c = tuple(c)
        if len(c) != len(divs):
            raise InputError(f"c must have {len(divs)} coordinates (centre {self.center}), got {c}")
        try:
            return tuple(int(x) % d for x, d in zip(c, divs))
        except (TypeError, ValueError):
            raise InputError(f"c must be integers, got {c}") from None


@dataclass(frozen=True)
class Degree:
    u: tuple[Fraction, ...]
    c: tuple[int, ...]

    def to_json(self) -> dict:
        return {"u": [str(x) for x in self.u], "c": [int(x) for x in self.c]}


@dataclass(frozen=True)
class FundamentalGroup:
    free_rank: int
    torsion: tuple[int, ...]
    generators: tuple[tuple[tuple[Fraction, ...], tuple[int, ...]], ...]

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z{d}" for d in self.torsion]
        return " x ".join(parts) or "1"


@dataclass(frozen=True)
class StabilityReport:
    exists_stable: bool
    fixed_space_dim: int
    pattern: tuple[tuple[str, int, int], ...]  # (factor, n, label) per simple factor
    witness: str


# ---------------------------------------------------------------------------
# construction

def _fr(x) -> Fraction:
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {x!r}") from None


def build_group(central_rank: int, factors, c_generators=(), tau=(), name: str = "",
                components=()) -> GroupDatum:
    """Validate raw data and return a GroupDatum.

    ``factors`` is a Cartan type string or list of CartanType; ``tau`` has one
    length-``central_rank`` rational vector per generator.
    """
    if isinstance(central_rank, bool) or not isinstance(central_rank, int) or central_rank < 0:
        raise InputError("central_rank must be a non-negative integer")
    if isinstance(factors, str):
        factors = parse_cartan_types(factors) if factors.strip() else []
    rd = build_root_datum(factors) if factors else empty_root_datum()
    divs = center_of_simply_connected(rd).elementary_divisors
    gens = []
    for g in c_generators:
        g = tuple(g)
        if len(g) != len(divs):
            raise InputError(f"C generator {g} needs {len(divs)} coordinates")
        gens.append(tuple(int(x) % d for x, d in zip(g, divs)))
    tau = [tuple(_fr(x) for x in t) for t in tau]
    if len(tau) != len(gens):
        raise InputError("tau needs exactly one value per C generator")
    if any(len(t) != central_rank for t in tau):
        raise InputError(f"each tau value must have {central_rank} coordinates")
    G = GroupDatum(central_rank, rd, tuple(gens), tuple(tau), name or rd.name, tuple(components))
    _check_tau(G)
    G.c_elements()
    return G


def _relations(G: GroupDatum) -> list[list[int]]:
    """Integer relations b with sum b_i g_i = 0 in the centre."""
    k, r = len(G.c_generators), G.rd.rank
    if k == 0:
        return []
    rows = [list(center_class(G.rd, g)) for g in G.c_generators]
    rows += [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
    if r == 0:
        return [[int(i == j) for j in range(k)] for i in range(k)]
    return [v[:k] for v in integer_left_kernel(rows)]


def _check_tau(G: GroupDatum):
    for b in _relations(G):
        s = [sum(bi * t[j] for bi, t in zip(b, G.tau)) for j in range(G.central_rank)]
        if any(x.denominator != 1 for x in s):
            raise InputError(f"tau is not a homomorphism: relation {b} maps to {s}")


# ---------------------------------------------------------------------------
# presets

PRESET_NAMES = ("GL(n)", "GL(n)/Z(k)", "SL(n)", "PGL(n)", "Sp(2n)", "PSp(2n)", "Spin(m)",
                "SO(m)", "PSO(2n)", "C*", "E6", "E7", "E8", "F4", "G2", "E6ad", "E7ad",
                "SC(<types>)", "AD(<types>)")


def _split_product(s: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "xX" and depth == 0 and cur:
            parts.append(cur)
            cur = ""
            continue
        cur += ch
    parts.append(cur)
    return [p.strip() for p in parts if p.strip()]


def _full_center(types: str):
    factors = parse_cartan_types(types)
    rd = build_root_datum(factors)
    divs = center_of_simply_connected(rd).elementary_divisors
    gens = [tuple(int(i == j) for j in range(len(divs))) for i in range(len(divs))]
    return factors, gens


def _single_preset(s: str) -> dict:
    t = s.replace(" ", "")
    m = re.fullmatch(r"GL\((\d+)\)(?:/Z\((\d+)\))?", t, re.I)
    if m:
        n, k = int(m[1]), int(m[2] or 1)
        if n < 1 or k < 1:
            raise InputError(f"bad preset {s!r}")
        if n == 1:
            return dict(z=1, factors=[], gens=[], tau=[], comp=Component("TORUS"))
        return dict(z=1, factors=[CartanType("A", n - 1)], gens=[(1,)],
                    tau=[(Fraction(k, n),)], comp=Component("GL", n, k, (1,)))
    m = re.fullmatch(r"(SL|PGL)\((\d+)\)", t, re.I)
    if m:
        n = int(m[2])
        if n < 2:
            raise InputError(f"{s}: n must be at least 2")
        full = m[1].upper() == "PGL"
        return dict(z=0, factors=[CartanType("A", n - 1)], gens=[(1,)] if full else [],
                    tau=[()] if full else [], comp=_center_comp(full, (1,)))
    m = re.fullmatch(r"(P?)Sp\((\d+)\)", t, re.I)
    if m:
        n2 = int(m[2])
        if n2 < 2 or n2 % 2:
            raise InputError(f"{s}: Sp needs an even size at least 2")
        n = n2 // 2
        ct = CartanType("A", 1) if n == 1 else CartanType("C", n)
        full = bool(m[1])
        return dict(z=0, factors=[ct], gens=[(1,)] if full else [], tau=[()] if full else [],
                    comp=_center_comp(full, (1,)))
    m = re.fullmatch(r"(Spin|SO|PSO)\((\d+)\)", t, re.I)
    if m:
        kind, N = m[1].upper(), int(m[2])
        return _orthogonal(kind, N, s)
    m = re.fullmatch(r"(SC|AD)\(([A-Ga-g0-9xX]+)\)", t, re.I)
    if m:
        if m[1].upper() == "SC":
            return dict(z=0, factors=parse_cartan_types(m[2]), gens=[], tau=[],
                        comp=Component("SIMPLY"))
        factors, gens = _full_center(m[2])
        return dict(z=0, factors=factors, gens=gens, tau=[()] * len(gens), comp=_full_comp(gens))
    m = re.fullmatch(r"([EFG])(\d)(ad)?", t, re.I)
    if m:
        factors = parse_cartan_types(m[1] + m[2])
        if m[3]:
            factors, gens = _full_center(m[1] + m[2])
            return dict(z=0, factors=factors, gens=gens, tau=[()] * len(gens), comp=_full_comp(gens))
        return dict(z=0, factors=factors, gens=[], tau=[], comp=Component("SIMPLY"))
    if t.upper() in ("C*", "CSTAR", "GM"):
        return dict(z=1, factors=[], gens=[], tau=[], comp=Component("TORUS"))
    raise InputError(f"unknown group preset {s!r}; known: {', '.join(PRESET_NAMES)}")


def _orthogonal(kind: str, N: int, s: str) -> dict:
    if N < 3:
        raise InputError(f"{s}: size must be at least 3")
    if N == 4:
        factors = [CartanType("A", 1), CartanType("A", 1)]
        c_vec = (1, 1)
        full = [(1, 0), (0, 1)]
    elif N == 3:
        factors = [CartanType("A", 1)]
        c_vec = (1,)
        full = [(1,)]
    elif N % 2:
        factors = [CartanType("B", (N - 1) // 2)]
        c_vec = (1,)
        full = [(1,)]
    else:
        n = N // 2
        factors = [CartanType("D", n)]
        if n % 2 == 0:
            c_vec, full = (1, 1), [(1, 0), (0, 1)]
        else:
            c_vec, full = (2,), [(1,)]
    if kind == "SPIN":
        return dict(z=0, factors=factors, gens=[], tau=[], comp=Component("SIMPLY"))
    if kind == "SO":
        return dict(z=0, factors=factors, gens=[c_vec], tau=[()], comp=Component("CENTER", c_step=c_vec))
    if N % 2:
        raise InputError(f"{s}: PSO needs an even size")
    return dict(z=0, factors=factors, gens=full, tau=[()] * len(full), comp=_full_comp(full))


def _center_comp(full: bool, step) -> Component:
    return Component("CENTER", c_step=tuple(step)) if full else Component("SIMPLY")


def _full_comp(gens) -> Component:
    if not gens:
        return Component("SIMPLY")
    if len(gens) == 1:
        return Component("CENTER", c_step=(1,))
    return Component("RAW")


def parse_group(spec: str) -> GroupDatum:
    """A group from a preset expression such as ``"GL(2)xPGL(3)"``.

    A path to a JSON file with keys ``preset`` or ``central_rank``,
    ``factors``, ``C_generators``, ``tau`` is accepted as well.
    """
    if not isinstance(spec, str) or not spec.strip():
        raise InputError("empty group specification")
    spec = spec.strip()
    if spec.endswith(".json"):
        return group_from_file(spec)
    parts = _split_product(spec)
    z, factors, gens_parts, tau_parts, comps = 0, [], [], [], []
    ncenter = 0
    for p in parts:
        d = _single_preset(p)
        fac_rd = build_root_datum(d["factors"]) if d["factors"] else empty_root_datum()
        kc = len(center_of_simply_connected(fac_rd).elementary_divisors)
        comps.append((d, z, ncenter, kc))
        z += d["z"]
        ncenter += kc
        factors += d["factors"]
    gens, tau, components = [], [], []
    for d, z0, c0, kc in comps:
        for g, t in zip(d["gens"], d["tau"]):
            gens.append(tuple([0] * c0) + tuple(g) + tuple([0] * (ncenter - c0 - kc)))
            tau.append(tuple([Fraction(0)] * z0) + tuple(t) + tuple([Fraction(0)] * (z - z0 - d["z"])))
        c = d["comp"]
        components.append(Component(c.kind, c.n, c.k, c.c_step, (z0, z0 + d["z"]), (c0, c0 + kc)))
    return build_group(z, factors, gens, tau, name=spec, components=components)


def group_from_file(path: str) -> GroupDatum:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read group file {path}: {exc}") from None
    return group_from_dict(data)


def group_from_dict(data: dict) -> GroupDatum:
    if "preset" in data:
        return parse_group(str(data["preset"]))
    try:
        return build_group(int(data.get("central_rank", 0)), data.get("factors", ""),
                           data.get("C_generators", []), data.get("tau", []),
                           name=data.get("name", ""))
    except (TypeError, AttributeError) as exc:
        raise InputError(f"malformed group specification: {exc}") from None


# ---------------------------------------------------------------------------
# fundamental group and degrees

def fundamental_group(G: GroupDatum) -> FundamentalGroup:
    """pi_1(G) = ker(exp) / Q^vee, presented through pairs (u, c)."""
    z, k = G.central_rank, len(G.c_generators)
    rels = _relations(G)
    R = []
    for b in rels:
        s = [sum(bi * t[j] for bi, t in zip(b, G.tau)) for j in range(z)]
        R.append([-int(x) for x in s] + list(b))
    n = z + k
    if n == 0:
        return FundamentalGroup(0, (), ())
    if not R:
        R = [[0] * n]
    nf = normal_forms(R)
    S, V = nf["smith"], nf["smith_right"]
    diag = [S[i][i] for i in range(min(len(S), n))]
    rk = sum(1 for d in diag if d != 0)
    Vinv = [[int(x) for x in row] for row in inverse(V)]
    divs = G.center.elementary_divisors
    free_gens, torsion, tors_gens = [], [], []
    for i in range(n):
        d = diag[i] if i < len(diag) else 0
        if d == 1:
            continue
        y = Vinv[i]
        u = tuple(Fraction(y[j]) + sum((y[z + a] * G.tau[a][j] for a in range(k)), Fraction(0))
                  for j in range(z))
        c = tuple(sum(y[z + a] * G.c_generators[a][t] for a in range(k)) % divs[t]
                  for t in range(len(divs)))
        if d == 0:
            free_gens.append((u, c))
        else:
            torsion.append(d)
            tors_gens.append((u, c))
    if len(free_gens) != n - rk:
        raise ConsistencyError("Smith form rank mismatch in the fundamental group")
    return FundamentalGroup(len(free_gens), tuple(torsion), tuple(free_gens + tors_gens))


def validate_degree(G: GroupDatum, u, c) -> Degree:
    u = tuple(_fr(x) for x in u)
    if len(u) != G.central_rank:
        raise InputError(f"u must have {G.central_rank} coordinates, got {len(u)}")
    c = G.normalize_c(c)
    t = G.tau_of(c)
    if any((a - b).denominator != 1 for a, b in zip(u, t)):
        raise InvalidDegreeError(
            f"exp(u) != tau(c): u = {[str(x) for x in u]} but tau(c) = {[str(x) for x in t]} mod Z")
    return Degree(u, c)


def parse_degree(G: GroupDatum, spec) -> Degree:
    """Degree from integer sugar (``"1"``, ``"1,2"`` per component) or raw ``"u=..;c=.."``."""
    if isinstance(spec, Degree):
        return validate_degree(G, spec.u, spec.c)
    if isinstance(spec, int):
        spec = str(spec)
    if isinstance(spec, (tuple, list)) and len(spec) == 2 and not isinstance(spec[0], int):
        return validate_degree(G, spec[0], spec[1])
    s = str(spec).replace(" ", "")
    if "=" in s:
        fields = {}
        for part in s.split(";"):
            if "=" not in part:
                raise InputError(f"bad degree field {part!r}")
            key, val = part.split("=", 1)
            fields[key.lower()] = [v for v in val.split(",") if v != ""]
        if set(fields) - {"u", "c"}:
            raise InputError("raw degree accepts only the fields u and c")
        try:
            c = [int(x) for x in fields.get("c", [])]
        except ValueError:
            raise InputError(f"c must be integers in {spec!r}") from None
        return validate_degree(G, fields.get("u", []), c)
    try:
        ds = [int(x) for x in s.split(",")] if s else []
    except ValueError:
        raise InputError(f"cannot parse degree {spec!r}") from None
    comps = G.components
    if not comps:
        raise InputError("integer degrees need a preset group; use u=...;c=...")
    if len(ds) == 1 and len(comps) > 1:
        raise InputError(f"{G.name} has {len(comps)} components; give one degree per component")
    if len(ds) != len(comps):
        raise InputError(f"expected {len(comps)} comma-separated degrees, got {len(ds)}")
    u = [Fraction(0)] * G.central_rank
    c = [0] * len(G.center.elementary_divisors)
    for d, comp in zip(ds, comps):
        z0, z1 = comp.z_slice
        c0, c1 = comp.c_slice
        if comp.kind == "TORUS":
            u[z0] = Fraction(d)
        elif comp.kind == "SIMPLY":
            if d != 0:
                raise InvalidDegreeError(f"a simply connected factor only has degree 0, got {d}")
        elif comp.kind == "RAW":
            raise InputError(f"a component of {G.name} has a non-cyclic C; use u=...;c=...")
        else:
            if comp.kind == "GL":
                u[z0] = Fraction(d * comp.k, comp.n)
            for t, step in enumerate(comp.c_step):
                c[c0 + t] = d * step
    return validate_degree(G, u, c)


# ---------------------------------------------------------------------------
# Levi data and stability

def jordan_holder_levi(G: GroupDatum, d: Degree, cap: int | None = None) -> LeviDatum:
    """The Levi data of omega_c with s_c enlarged by the central block."""
    d = validate_degree(G, d.u, d.c)
    a_c, w = omega_c(G.rd, d.c)
    return levi_and_wc(G.rd, G.central_rank, w, a_c, d.c, lambda_h=G.lambda_h, cap=cap, u=d.u)


def stable_exists(G: GroupDatum, d: Degree) -> StabilityReport:
    """Decide whether stable objects of degree d exist, by two methods.

    (i) h'^{omega_c} = 0, i.e. the Jordan-Holder Levi is G itself.
    (ii) every simple factor is of type A_{n-1} and the factor's component of
         c generates its centre Z_n, i.e. gcd(n, label) = 1.
    """
    d = validate_degree(G, d.u, d.c)
    _, w = omega_c(G.rd, d.c)
    dim = len(fixed_subspace(w)) if G.rd.rank else 0
    method_i = dim == 0
    pattern, method_ii = [], True
    cls = center_class(G.rd, d.c) if G.rd.rank else ()
    for ct, nodes in identify_cartan_type(G.rd.cartan) if G.rd.rank else []:
        if ct.letter != "A":
            method_ii = False
            pattern.append((str(ct), 0, 0))
            continue
        n = ct.rank + 1
        lab = type_a_label(G.rd.cartan, nodes, cls)
        pattern.append((str(ct), n, lab))
        if gcd(n, lab) != 1:
            method_ii = False
    if method_i != method_ii:
        raise ConsistencyError(
            f"stability methods disagree for {G.name}, c={d.c}: fixed space dim {dim}, "
            f"pattern {pattern}")
    if method_ii:
        witness = "all simple factors of type A with gcd(n, d) = 1" if pattern else "torus"
    else:
        bad = [p for p in pattern if p[1] == 0 or gcd(p[1], p[2]) != 1]
        witness = ", ".join(f"{p[0]}: " + ("not type A" if p[1] == 0 else f"gcd({p[1]},{p[2]}) = {gcd(p[1], p[2])}")
                            for p in bad)
    return StabilityReport(method_i, dim, tuple(pattern), witness)
