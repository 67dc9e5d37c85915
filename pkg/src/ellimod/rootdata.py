"""Root data of products of simple Cartan types.

Conventions
-----------
* Simple roots and nodes follow Bourbaki numbering (1-based in docs, 0-based
  in code).
* ``cartan[i][j] = <alpha_i, alpha_j^vee>``, the simple root ``alpha_i``
  evaluated on the simple coroot ``alpha_j^vee``.
* Vectors of the Cartan algebra h' are stored in the simple-coroot basis, so
  ``alpha_i(v) = (cartan @ v)_i`` and ker(exp) is the coroot lattice Z^r
  under ``exp(v) = e^{2 pi i v}``.
* Roots are stored as integer coefficient vectors in the simple roots.

For G2 the first node is the short root, so the highest root has marks (3, 2).
The centre of the simply connected group is P^vee / Q^vee; its generators are
fixed minuscule fundamental coweights (see :data:`CENTER_GENERATOR_NODES`).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial, lcm

from .errors import InputError
from .intlat import FiniteAbelianGroup, inverse, det, snf

__all__ = [
    "CartanType",
    "RootDatum",
    "FiniteAbelianGroup",
    "parse_cartan_types",
    "cartan_matrix",
    "build_root_datum",
    "center_of_simply_connected",
    "cominuscule_vertex",
    "center_class",
    "weyl_group_order",
    "CENTER_GENERATOR_NODES",
]


@dataclass(frozen=True, order=True)
class CartanType:
    letter: str
    rank: int

    def __post_init__(self):
        letter = self.letter.upper()
        object.__setattr__(self, "letter", letter)
        r = self.rank
        ok = {
            "A": r >= 1, "B": r >= 2, "C": r >= 2, "D": r >= 3,
            "E": r in (6, 7, 8), "F": r == 4, "G": r == 2,
        }.get(letter)
        if ok is None:
            raise InputError(f"unknown Cartan type letter {self.letter!r}")
        if not ok:
            raise InputError(f"rank {r} is not admissible for type {letter}")

    def __str__(self):
        return f"{self.letter}{self.rank}"


def parse_cartan_types(s: str) -> list[CartanType]:
    """Parse strings like ``"A3xD4xE6"`` (case-insensitive)."""
    parts = [p for p in re.split(r"[xX×]", s.strip()) if p]
    if not parts:
        raise InputError(f"no Cartan types in {s!r}")
    out = []
    for p in parts:
        m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", p)
        if not m:
            raise InputError(f"cannot parse Cartan type {p!r}")
        out.append(CartanType(m.group(1), int(m.group(2))))
    return out


def cartan_matrix(ct: CartanType) -> list[list[int]]:
    n = ct.rank
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, cij=-1, cji=-1):
        C[i][j], C[j][i] = cij, cji

    L = ct.letter
    if L in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if L == "B":
            link(n - 2, n - 1, -2, -1)
        elif L == "C":
            link(n - 2, n - 1, -1, -2)
    elif L == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif L == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif L == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif L == "G":
        link(0, 1, -1, -3)
    return C


# Bourbaki nodes (1-based) whose fundamental coweights generate P^vee/Q^vee.
CENTER_GENERATOR_NODES = {
    "A": lambda n: [1],
    "B": lambda n: [1],
    "C": lambda n: [n],
    "D": lambda n: [n - 1, n] if n % 2 == 0 else [n],
    "E": lambda n: {6: [1], 7: [7], 8: []}[n],
    "F": lambda n: [],
    "G": lambda n: [],
}


def weyl_group_order(factors) -> int:
    out = 1
    for ct in factors:
        n = ct.rank
        out *= {
            "A": factorial(n + 1),
            "B": 2 ** n * factorial(n),
            "C": 2 ** n * factorial(n),
            "D": 2 ** (n - 1) * factorial(n),
            "E": {6: 51840, 7: 2903040, 8: 696729600}.get(n, 0),
            "F": 1152,
            "G": 12,
        }[ct.letter]
    return out


@dataclass(frozen=True)
class RootDatum:
    """Exact root-system data for a product of simple types.

    Attributes hold global coordinates: factor ``f`` occupies the coordinate
    block ``offsets[f] : offsets[f] + factors[f].rank``.
    """

    factors: tuple[CartanType, ...]
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    positive_coroots: tuple[tuple[int, ...], ...]
    fundamental_coweights: tuple[tuple[Fraction, ...], ...]
    highest_roots: tuple[tuple[int, ...], ...]
    marks: tuple[tuple[int, ...], ...]
    offsets: tuple[int, ...]
    root_factor: tuple[int, ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def simple_roots(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))

    @property
    def simple_coroots(self) -> tuple[tuple[int, ...], ...]:
        return self.simple_roots

    @property
    def name(self) -> str:
        return "x".join(str(f) for f in self.factors) or "trivial"

    def factor_slice(self, f: int) -> slice:
        return slice(self.offsets[f], self.offsets[f] + self.factors[f].rank)

    def pair(self, root, v) -> Fraction:
        """<root, v> for a root in simple-root coordinates and v in h'."""
        C = self.cartan
        r = self.rank
        return sum((root[i] * C[i][j] * v[j] for i in range(r) if root[i]
                    for j in range(r) if C[i][j]), Fraction(0))

    def simple_pairings(self, v) -> tuple:
        """(alpha_1(v), ..., alpha_r(v))."""
        return tuple(sum(c * x for c, x in zip(row, v)) for row in self.cartan)

    @cached_property
    def coxeter_bound(self) -> int:
        """Largest root height; bounds |<beta, rho^vee>| over all roots."""
        return max((sum(b) for b in self.positive_roots), default=0)

    @cached_property
    def weyl_order(self) -> int:
        return weyl_group_order(self.factors)


def _positive_roots(C):
    """Reflection closure of the simple roots, tracking coroots alongside."""
    r = len(C)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    roots = {s: s for s in simple}  # root -> coroot
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            cob = roots[beta]
            for i in range(r):
                k = sum(beta[j] * C[j][i] for j in range(r))  # <beta, alpha_i^vee>
                if k == 0:
                    continue
                new = list(beta)
                new[i] -= k
                if min(new) < 0 or not any(new):
                    continue
                new = tuple(new)
                if new in roots:
                    continue
                a = sum(C[i][j] * cob[j] for j in range(r))  # alpha_i(beta^vee)
                co = list(cob)
                co[i] -= a
                roots[new] = tuple(co)
                nxt.append(new)
        frontier = nxt
    return roots


def build_root_datum(factors) -> RootDatum:
    """Assemble the root datum of a product of simple Cartan types."""
    if isinstance(factors, str):
        factors = parse_cartan_types(factors)
    factors = tuple(factors)
    if not factors:
        raise InputError("at least one Cartan type is required")
    return _assemble(factors)


def _assemble(factors: tuple[CartanType, ...]) -> RootDatum:
    r = sum(f.rank for f in factors)
    C = [[0] * r for _ in range(r)]
    offsets = []
    off = 0
    pos, copos, coweights, highest, marks, root_factor = [], [], [], [], [], []
    for fi, ct in enumerate(factors):
        offsets.append(off)
        Cf = cartan_matrix(ct)
        n = ct.rank
        for i in range(n):
            for j in range(n):
                C[off + i][off + j] = Cf[i][j]
        rmap = _positive_roots(Cf)
        order = sorted(rmap, key=lambda b: (sum(b), b))
        for b in order:
            pos.append(tuple([0] * off + list(b) + [0] * (r - off - n)))
            cb = rmap[b]
            copos.append(tuple([0] * off + list(cb) + [0] * (r - off - n)))
            root_factor.append(fi)
        theta = order[-1]
        highest.append(tuple([0] * off + list(theta) + [0] * (r - off - n)))
        marks.append(tuple(theta))
        Cinv = inverse(Cf)
        for k in range(n):
            coweights.append(tuple([Fraction(0)] * off + [Cinv[i][k] for i in range(n)]
                                   + [Fraction(0)] * (r - off - n)))
        off += n
    return RootDatum(
        factors=factors,
        cartan=tuple(tuple(row) for row in C),
        positive_roots=tuple(pos),
        positive_coroots=tuple(copos),
        fundamental_coweights=tuple(coweights),
        highest_roots=tuple(highest),
        marks=tuple(marks),
        offsets=tuple(offsets),
        root_factor=tuple(root_factor),
    )


def empty_root_datum() -> RootDatum:
    """The root datum of the trivial group, used for tori."""
    return RootDatum((), (), (), (), (), (), (), (), ())


# ---------------------------------------------------------------------------
# centre of the simply connected group

def _generator_nodes(rd: RootDatum) -> list[tuple[int, int]]:
    """(factor index, global node index) for every centre generator."""
    out = []
    for f, ct in enumerate(rd.factors):
        for node in CENTER_GENERATOR_NODES[ct.letter](ct.rank):
            out.append((f, rd.offsets[f] + node - 1))
    return out


def _class_order(v) -> int:
    return lcm(1, *(Fraction(x).denominator for x in v))


def center_of_simply_connected(rd: RootDatum) -> FiniteAbelianGroup:
    """P^vee / Q^vee with the documented minuscule-coweight generators.

    Element ``c = (c_1, ..., c_k)`` of the returned group means
    ``sum c_i * generators[i]`` modulo the coroot lattice.
    """
    divs, gens = [], []
    for f, node in _generator_nodes(rd):
        w = rd.fundamental_coweights[node]
        divs.append(_class_order(w))
        gens.append(w)
    return FiniteAbelianGroup(tuple(divs), tuple(gens))


def center_order_from_smith(rd: RootDatum) -> int:
    """|P^vee/Q^vee| via the Smith form of the Cartan matrix (independent route)."""
    if rd.rank == 0:
        return 1
    S, _, _ = snf(rd.cartan)
    out = 1
    for i in range(rd.rank):
        out *= S[i][i]
    return out


def _normalize_center_element(rd: RootDatum, c) -> tuple[int, ...]:
    Z = center_of_simply_connected(rd)
    try:
        c = tuple(int(x) for x in c)
    except (TypeError, ValueError):
        raise InputError(f"centre element must be a tuple of integers, got {c!r}") from None
    if len(c) != len(Z.elementary_divisors):
        raise InputError(
            f"centre element {c} has {len(c)} coordinates; the centre of {rd.name} "
            f"({Z}) needs {len(Z.elementary_divisors)}"
        )
    return tuple(x % d for x, d in zip(c, Z.elementary_divisors))


def center_class(rd: RootDatum, c) -> tuple[Fraction, ...]:
    """A coweight representing ``c`` (not reduced to a vertex)."""
    c = _normalize_center_element(rd, c)
    Z = center_of_simply_connected(rd)
    v = [Fraction(0)] * rd.rank
    for k, g in zip(c, Z.generators):
        for i in range(rd.rank):
            v[i] += k * g[i]
    return tuple(v)


def cominuscule_vertex(rd: RootDatum, c) -> tuple[Fraction, ...]:
    """The alcove vertex a_c with exp(a_c) = c.

    Per factor this is the minuscule fundamental coweight in the class of c's
    component (mark 1, so no division is needed), or 0 for a trivial component.
    """
    cls = center_class(rd, c)
    out = [Fraction(0)] * rd.rank
    for f, ct in enumerate(rd.factors):
        sl = rd.factor_slice(f)
        comp = cls[sl]
        if all(x.denominator == 1 for x in comp):
            continue
        for k, m in enumerate(rd.marks[f]):
            if m != 1:
                continue
            w = rd.fundamental_coweights[rd.offsets[f] + k][sl]
            if all((a - b).denominator == 1 for a, b in zip(w, comp)):
                out[sl] = w
                break
        else:  # pragma: no cover - every class has a minuscule representative
            raise InputError(f"no minuscule vertex found for centre class {comp}")
    return tuple(out)


def highest_root_pairing(rd: RootDatum, f: int, v) -> Fraction:
    return rd.pair(rd.highest_roots[f], v)


def cartan_determinant(rd: RootDatum) -> int:
    return int(det(rd.cartan)) if rd.rank else 1
