"""Counting and arranging free stable lattice classes from an ideal factorization.

Everything here is combinatorics on a factorization ``p^mu * prod P_i^e_i``:
the classes of free stable lattices correspond to divisors of that ideal,
the divisor poset is a rectangle graph, and the algebraic p-adic
L-functions attached to the classes vary by twist parity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import prod

from .errors import NotNested, UncertifiedFactorization
from .iwasawa import HeightOnePrimeFactor, Irreducibility, PrimeKind

# Conditions that the combinatorics relies on but that cannot be checked here.
ASSERTED_HYPOTHESES = ("Red", "Dp-dist", "Lambda")


@dataclass(frozen=True)
class IdealFactorization:
    mu: int
    factors: tuple[tuple[HeightOnePrimeFactor, int], ...] = ()

    def __post_init__(self):
        if self.mu < 0:
            raise ValueError("mu must be non-negative")
        object.__setattr__(self, "factors", tuple((f, int(e)) for f, e in self.factors))
        seen = set()
        for f, e in self.factors:
            if f.kind is not PrimeKind.DISTINGUISHED:
                raise ValueError("the prime p is recorded through mu, not as a factor")
            if e < 1:
                raise ValueError("multiplicities must be >= 1")
            if f.poly in seen:
                raise ValueError(f"factor {f.label()} listed twice")
            seen.add(f.poly)

    @property
    def certified(self) -> bool:
        return all(f.irreducibility is not Irreducibility.UNRESOLVED for f, _ in self.factors)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.factors)

    def bounds(self) -> tuple[int, ...]:
        """Per-coordinate upper bounds; the p-coordinate is present only when mu > 0."""
        return ((self.mu,) if self.mu else ()) + self.exponents

    def coordinate_names(self) -> tuple[str, ...]:
        return (("p",) if self.mu else ()) + tuple(f.label() for f, _ in self.factors)

    def to_json(self) -> dict:
        return {
            "mu": self.mu,
            "factors": [{"prime": f.to_json(), "multiplicity": e} for f, e in self.factors],
            "certified": self.certified,
        }

    @classmethod
    def unit(cls) -> "IdealFactorization":
        return cls(0, ())


@dataclass(frozen=True, order=True)
class DivisorTuple:
    """Exponent vector of a divisor: ``a`` at p, ``m`` at the distinguished primes."""

    a: int
    m: tuple[int, ...] = ()

    def coords(self, with_p: bool) -> tuple[int, ...]:
        return ((self.a,) if with_p else ()) + self.m

    @classmethod
    def from_coords(cls, coords, with_p: bool) -> "DivisorTuple":
        coords = tuple(coords)
        if with_p:
            return cls(coords[0], coords[1:])
        return cls(0, coords)

    def label(self, with_p: bool) -> str:
        return "T(" + ",".join(str(c) for c in self.coords(with_p)) + ")"


def _require_certified(fact: IdealFactorization) -> None:
    if not fact.certified:
        bad = [f.label() for f, _ in fact.factors if f.irreducibility is Irreducibility.UNRESOLVED]
        raise UncertifiedFactorization(f"irreducibility unresolved for {', '.join(bad)}")


def count_free(fact: IdealFactorization) -> int:
    _require_certified(fact)
    return (fact.mu + 1) * prod(e + 1 for e in fact.exponents)


def divisor_set(fact: IdealFactorization) -> list[DivisorTuple]:
    """All divisors in lexicographic order; the first labels T_min and the last T_max."""
    _require_certified(fact)
    with_p = fact.mu > 0
    ranges = [range(b + 1) for b in fact.bounds()]
    return [DivisorTuple.from_coords(c, with_p) for c in product(*ranges)]


def quotient_label(t: DivisorTuple, t_prime: DivisorTuple) -> DivisorTuple:
    """Ideal of T(t)/T(t'), for t' <= t componentwise."""
    if len(t.m) != len(t_prime.m):
        raise ValueError("tuples from different factorizations")
    if t.a < t_prime.a or any(x < y for x, y in zip(t.m, t_prime.m)):
        raise NotNested(f"{t} does not contain {t_prime}")
    return DivisorTuple(t.a - t_prime.a, tuple(x - y for x, y in zip(t.m, t_prime.m)))


@dataclass(frozen=True)
class VariationSet:
    """base * {divisors}: the set of algebraic p-adic L-functions up to units."""

    parity: str
    base: str
    multipliers: tuple[DivisorTuple, ...]

    @property
    def cardinality(self) -> int:
        return len(self.multipliers)

    @property
    def is_singleton(self) -> bool:
        return len(self.multipliers) == 1

    def to_json(self, with_p: bool) -> dict:
        return {
            "parity": self.parity,
            "base": self.base,
            "multipliers": [list(t.coords(with_p)) for t in self.multipliers],
            "cardinality": self.cardinality,
        }


def _parity(i_parity) -> str:
    if isinstance(i_parity, int) and not isinstance(i_parity, bool):
        return "odd" if i_parity % 2 else "even"
    if i_parity not in ("odd", "even"):
        raise ValueError("parity must be 'odd', 'even' or an integer twist")
    return i_parity


def variation_set(fact: IdealFactorization, i_parity) -> VariationSet:
    _require_certified(fact)
    parity = _parity(i_parity)
    zero = DivisorTuple(0, (0,) * len(fact.factors))
    if parity == "odd":
        return VariationSet("odd", "L_alg(T_min)", (zero,))
    return VariationSet("even", "L_alg(T_min)", tuple(divisor_set(fact)))


def theorem5_variation(fact: IdealFactorization, pfour_holds: bool) -> VariationSet:
    """The i = 0 variation set; under (pFour) the base is a unit, so the set is D(L_p)."""
    _require_certified(fact)
    base = "unit" if pfour_holds else "L_alg(T_min,(0))"
    return VariationSet("even", base, tuple(divisor_set(fact)))


@dataclass
class LatticeGraph:
    vertices: list[DivisorTuple]
    edges: list[tuple[int, int]]
    labels: dict[DivisorTuple, str]
    with_p: bool = False
    coordinate_names: tuple[str, ...] = field(default_factory=tuple)

    def neighbors(self, i: int) -> list[int]:
        return sorted([b for a, b in self.edges if a == i] + [a for a, b in self.edges if b == i])

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        adj: dict[int, set[int]] = {i: set() for i in range(len(self.vertices))}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = {0}
        stack = [0]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == len(self.vertices)

    def to_dot(self) -> str:
        lines = ["graph lattice_classes {"]
        for i, v in enumerate(self.vertices):
            attrs = [f'label="{v.label(self.with_p)}"']
            if v in self.labels:
                attrs.append("shape=doublecircle")
                attrs.append(f'xlabel="{self.labels[v]}"')
            lines.append(f"  v{i} [{', '.join(attrs)}];")
        for a, b in self.edges:
            lines.append(f"  v{a} -- v{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "coordinates": list(self.coordinate_names),
            "vertices": [list(v.coords(self.with_p)) for v in self.vertices],
            "edges": [list(e) for e in self.edges],
            "labels": {self.labels[v]: list(v.coords(self.with_p)) for v in sorted(self.labels)},
        }


def rectangle_graph(fact: IdealFactorization) -> LatticeGraph:
    """Vertices are divisor tuples; edges join tuples one step apart in one coordinate."""
    verts = divisor_set(fact)
    with_p = fact.mu > 0
    index = {v.coords(with_p): i for i, v in enumerate(verts)}
    edges = []
    for i, v in enumerate(verts):
        c = v.coords(with_p)
        for s in range(len(c)):
            up = c[:s] + (c[s] + 1,) + c[s + 1 :]
            if up in index:
                edges.append((i, index[up]))
    labels = {verts[0]: "T_min"}
    if len(verts) > 1:
        labels[verts[-1]] = "T_max"
    else:
        labels[verts[0]] = "T_min=T_max"
    return LatticeGraph(verts, sorted(edges), labels, with_p, fact.coordinate_names())


def expected_edge_count(bounds) -> int:
    bounds = list(bounds)
    return sum(n * prod(b + 1 for j, b in enumerate(bounds) if j != c) for c, n in enumerate(bounds))


def parse_factor_spec(text: str, p: int | None = None, assume_irreducible: bool = False) -> list[tuple[HeightOnePrimeFactor, int]]:
    """Parse ``"poly:mult,poly:mult"``; linear factors are certified by degree."""
    from . import poly as _poly

    out = []
    if not text.strip():
        return out
    for item in text.split(","):
        if ":" in item:
            ptxt, mtxt = item.rsplit(":", 1)
            mult = int(mtxt)
        else:
            ptxt, mult = item, 1
        coeffs = _poly.parse_poly(ptxt)
        if coeffs[-1] != 1:
            raise ValueError(f"factor {ptxt!r} is not monic")
        deg = len(coeffs) - 1
        if deg < 1:
            raise ValueError(f"factor {ptxt!r} is constant")
        if p is not None:
            n = 1 + max((abs(c).bit_length() for c in coeffs), default=1)
            if any(c % p for c in coeffs[:-1]):
                raise ValueError(f"factor {ptxt!r} is not distinguished at p={p}")
            cert = _poly.single_slope_certificate([c for c in coeffs], p, n)
        else:
            cert = "degree-1" if deg == 1 else None
        if cert is not None:
            irr = Irreducibility.CERTIFIED
        elif assume_irreducible:
            irr = Irreducibility.ASSUMED
        else:
            irr = Irreducibility.UNRESOLVED
        out.append((HeightOnePrimeFactor(PrimeKind.DISTINGUISHED, tuple(coeffs), irr, cert), mult))
    return out
