"""Truncated power series over Z_p modelling the Iwasawa algebra.

An element of Lambda = Z_p[[T]] (with T = gamma' - 1) is stored modulo
(p^N, T^M).  Besides ring arithmetic this module provides evaluation at
arithmetic weights, Weierstrass preparation, orders at height-one primes
and a certified (partial) factorization of distinguished polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from . import poly
from .errors import (
    IndistinguishableFromZero,
    PrecisionMismatch,
    TruncationTooShort,
)
from .padic import PAdicInt, check_odd_prime, vp

DEFAULT_LAMBDA_MAX = 6


def _series_inverse(a: list[int], K: int, m: int) -> list[int]:
    inv0 = pow(a[0], -1, m)
    out = [inv0] + [0] * (K - 1)
    for i in range(1, K):
        s = 0
        for j in range(1, min(i, len(a) - 1) + 1):
            s += a[j] * out[i - j]
        out[i] = (-s * inv0) % m
    return out


@dataclass(frozen=True)
class IwasawaSeries:
    p: int
    N: int
    M: int
    residues: tuple[int, ...]

    def __post_init__(self):
        if self.M < 1:
            raise ValueError("T-truncation M must be >= 1")
        m = self.p**self.N
        res = tuple(c % m for c in self.residues[: self.M])
        res += (0,) * (self.M - len(res))
        object.__setattr__(self, "residues", res)

    @classmethod
    def from_coeffs(cls, p: int, N: int, coeffs, M: int | None = None) -> "IwasawaSeries":
        check_odd_prime(p)
        coeffs = [int(c) for c in coeffs]
        return cls(p, N, M if M is not None else max(len(coeffs), 1), tuple(coeffs))

    @classmethod
    def constant(cls, c: int, p: int, N: int, M: int) -> "IwasawaSeries":
        return cls.from_coeffs(p, N, [c], M)

    @classmethod
    def gen(cls, p: int, N: int, M: int) -> "IwasawaSeries":
        return cls.from_coeffs(p, N, [0, 1], M)

    @property
    def coeffs(self) -> tuple[PAdicInt, ...]:
        return tuple(PAdicInt(self.p, self.N, c) for c in self.residues)

    @property
    def modulus(self) -> int:
        return self.p**self.N

    def _match(self, other: "IwasawaSeries") -> tuple[int, int]:
        if self.p != other.p:
            raise PrecisionMismatch(f"primes differ: {self.p} vs {other.p}")
        return min(self.N, other.N), min(self.M, other.M)

    def __add__(self, other):
        if isinstance(other, int):
            other = IwasawaSeries.constant(other, self.p, self.N, self.M)
        N, M = self._match(other)
        return IwasawaSeries(self.p, N, M, tuple(a + b for a, b in zip(self.residues, other.residues)))

    __radd__ = __add__

    def __neg__(self):
        return IwasawaSeries(self.p, self.N, self.M, tuple(-c for c in self.residues))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, PAdicInt)):
            return self.scalar_mul(other)
        N, M = self._match(other)
        prod = poly.pmul(self.residues[:M], other.residues[:M], self.p**N, length=M)
        return IwasawaSeries(self.p, N, M, tuple(prod))

    def __rmul__(self, other):
        return self.scalar_mul(other)

    def scalar_mul(self, c) -> "IwasawaSeries":
        N = self.N
        if isinstance(c, PAdicInt):
            if c.prime != self.p:
                raise PrecisionMismatch("scalar from a different prime")
            N = min(N, c.precision)
            c = c.residue
        return IwasawaSeries(self.p, N, self.M, tuple(c * a for a in self.residues))

    def __eq__(self, other):
        if not isinstance(other, IwasawaSeries):
            return NotImplemented
        if self.p != other.p:
            return False
        N, M = self._match(other)
        m = self.p**N
        return all((a - b) % m == 0 for a, b in zip(self.residues[:M], other.residues[:M]))

    def __hash__(self):
        return hash((self.p, self.N, self.M, self.residues))

    def is_zero(self) -> bool:
        return not any(self.residues)

    def truncate(self, N: int | None = None, M: int | None = None) -> "IwasawaSeries":
        N = self.N if N is None else min(N, self.N)
        M = self.M if M is None else min(M, self.M)
        return IwasawaSeries(self.p, N, M, self.residues[:M])

    def __repr__(self):
        return f"IwasawaSeries(p={self.p}, N={self.N}, M={self.M}, {list(self.residues)})"

    def to_json(self) -> dict:
        return {"p": self.p, "N": self.N, "M": self.M, "coeffs": [str(c) for c in self.residues]}

    @classmethod
    def from_json(cls, obj: dict) -> "IwasawaSeries":
        return cls.from_coeffs(int(obj["p"]), int(obj["N"]), [int(c) for c in obj["coeffs"]], int(obj["M"]))


def add(f: IwasawaSeries, g: IwasawaSeries) -> IwasawaSeries:
    return f + g


def mul(f: IwasawaSeries, g: IwasawaSeries) -> IwasawaSeries:
    return f * g


def scalar_mul(c, f: IwasawaSeries) -> IwasawaSeries:
    return f.scalar_mul(c)


def weight_node(k: int, p: int, N: int, u: int | None = None) -> PAdicInt:
    """The image u^(k-2) - 1 of T under the weight-k specialization."""
    u = 1 + p if u is None else u
    m = p**N
    return PAdicInt(p, N, pow(u, k - 2, m) - 1)


def evaluate(f: IwasawaSeries, t: PAdicInt) -> PAdicInt:
    """Horner evaluation at t in pZ_p; precision min(N, M*v(t))."""
    if t.prime != f.p:
        raise PrecisionMismatch("evaluation point from a different prime")
    N = min(f.N, t.precision)
    if t.residue % f.p:
        raise ValueError("evaluation point must lie in pZ_p")
    v = vp(t.residue, f.p)
    prec = N if v is None else min(N, f.M * v)
    val = poly.peval(f.residues, t.residue, f.p**N)
    return PAdicInt(f.p, prec, val)


def specialize(f: IwasawaSeries, k: int, u: int | None = None) -> PAdicInt:
    if k < 2:
        raise ValueError("weight must be >= 2")
    return evaluate(f, weight_node(k, f.p, f.N, u))


class PrimeKind(str, Enum):
    PRIME_P = "PrimeP"
    DISTINGUISHED = "Distinguished"


class Irreducibility(str, Enum):
    CERTIFIED = "Certified"
    ASSUMED = "Assumed"
    UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class HeightOnePrimeFactor:
    kind: PrimeKind
    poly: tuple[int, ...] | None = None
    irreducibility: Irreducibility = Irreducibility.CERTIFIED
    certificate: str | None = None

    def __post_init__(self):
        if self.kind is PrimeKind.PRIME_P and self.poly is not None:
            raise ValueError("the prime (p) carries no polynomial")
        if self.kind is PrimeKind.DISTINGUISHED:
            if not self.poly or self.poly[-1] != 1:
                raise ValueError("a distinguished factor needs a monic polynomial")
        if self.irreducibility is Irreducibility.CERTIFIED and self.certificate is None:
            if self.kind is PrimeKind.DISTINGUISHED:
                raise ValueError("certified factor without certificate")

    @classmethod
    def prime_p(cls) -> "HeightOnePrimeFactor":
        return cls(PrimeKind.PRIME_P, None, Irreducibility.CERTIFIED, "prime")

    @property
    def degree(self) -> int:
        return 0 if self.poly is None else len(self.poly) - 1

    def label(self) -> str:
        return "p" if self.kind is PrimeKind.PRIME_P else poly.format_poly(self.poly)

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "poly": None if self.poly is None else [str(c) for c in self.poly],
            "label": self.label(),
            "irreducibility": self.irreducibility.value,
            "certificate": self.certificate,
        }


@dataclass(frozen=True)
class WeierstrassFactorization:
    mu: int
    lam: int
    distinguished: tuple[int, ...]
    unit: IwasawaSeries
    guaranteed_N: int
    dist_precision: int = field(default=0)

    def reconstruct(self) -> IwasawaSeries:
        u = self.unit
        d = IwasawaSeries.from_coeffs(u.p, u.N, self.distinguished, u.M)
        return (d * u).scalar_mul(u.p**self.mu).truncate(N=self.guaranteed_N)


def weierstrass(f: IwasawaSeries) -> WeierstrassFactorization:
    """f = p^mu * D * U with D distinguished of degree lambda and U a unit."""
    p, N, M = f.p, f.N, f.M
    if f.is_zero():
        raise IndistinguishableFromZero("every coefficient vanishes mod p^N")
    mu = min(vp(c, p) for c in f.residues if c)
    n = N - mu
    m = p**n
    g = [(c // p**mu) % m for c in f.residues]
    lam = next(i for i, c in enumerate(g) if c % p)
    if lam >= M:
        raise TruncationTooShort(f"lambda={lam} needs more than {M} terms")
    if lam == 0:
        return WeierstrassFactorization(mu, 0, (1,), IwasawaSeries(p, n, M, tuple(g)).truncate(), N, n)
    # error terms from the finite length creep down lambda places per iteration
    # and gain a factor p each time, so this padding keeps the first M exact
    L = M + lam * (n + 2)
    gp = g + [0] * (L - M)
    low = gp[:lam]
    K = L - lam
    V = gp[lam:]
    v_inv = _series_inverse(V, K, m)
    q = v_inv
    for _ in range(n + 2):
        tq = poly.pmul(q, low, m, length=L)[lam:]
        rhs = [(-c) % m for c in tq]
        rhs[0] = (rhs[0] + 1) % m
        q_new = poly.pmul(v_inv, rhs, m, length=K)
        if q_new == q:
            break
        q = q_new
    qg = poly.pmul(q, gp, m, length=L)
    dist = tuple(qg[:lam]) + (1,)
    unit = _series_inverse(q, M, m)
    return WeierstrassFactorization(mu, lam, dist, IwasawaSeries(p, n, M, tuple(unit)), N, n)


def _divide_out(a: list[int], b: list[int], m: int) -> tuple[int, list[int]]:
    count = 0
    while len(poly.trim(a)) >= len(b):
        q, r = poly.divmod_monic(a, b, m)
        if any(r):
            break
        a = poly.trim(q)
        count += 1
    return count, a


def ord_at(f: IwasawaSeries, P: HeightOnePrimeFactor) -> int:
    """Order of f at a height-one prime: mu for (p), multiplicity in D otherwise."""
    W = weierstrass(f)
    if P.kind is PrimeKind.PRIME_P:
        return W.mu
    if P.degree >= f.M:
        raise TruncationTooShort("prime degree must be below the truncation order")
    m = f.p**W.dist_precision
    count, _ = _divide_out(list(W.distinguished), [c % m for c in P.poly], m)
    return count


def _lift_root(h: list[int], y0: int, p: int, W: int) -> int:
    """Newton iteration for a simple root of h mod p, to precision p^W."""
    m = p**W
    dh = [i * h[i] for i in range(1, len(h))]
    y = y0
    for _ in range(W.bit_length() + 2):
        y = (y - poly.peval(h, y, m) * pow(poly.peval(dh, y, m), -1, m)) % m
    return y


def _roots_mod_p(h: list[int], p: int) -> list[tuple[int, int]]:
    """Nonzero roots of h mod p with multiplicities."""
    hb = poly.trim([c % p for c in h])
    out = []
    for y in range(1, p):
        if poly.peval(hb, y, p):
            continue
        mult = 0
        a = hb
        while len(a) > 1:
            q, r = poly.divmod_monic([c * pow(a[-1], -1, p) % p for c in a], [-y % p, 1], p)
            if any(r):
                break
            a = poly.trim(q)
            mult += 1
        out.append((y, mult))
    return out


def _candidate_roots(D: list[int], p: int, n: int, W: int) -> list[int]:
    """Approximate roots in pZ_p found segment by segment on the Newton polygon."""
    cands = []
    for x0, y0, x1, y1 in poly.newton_segments(D, p, n):
        if (y0 - y1) % (x1 - x0):
            continue
        s = (y0 - y1) // (x1 - x0)
        if s < 1:
            continue
        scaled = [c * p ** (i * s) for i, c in enumerate(D)]
        c = min(vp(x, p) for x in scaled if x)
        h = [x // p**c for x in scaled]
        for y0_, mult in _roots_mod_p(h, p):
            if mult >= p:
                continue
            # a root of multiplicity e is a simple root of the (e-1)-st Hasse derivative
            hd = poly.hasse_derivative(h, mult - 1)
            cands.append(p**s * _lift_root(hd, y0_, p, W))
    return cands


def factor_distinguished(
    D, p: int, n: int, lambda_max: int = DEFAULT_LAMBDA_MAX
) -> list[tuple[HeightOnePrimeFactor, int]]:
    """Split a monic distinguished polynomial over Z/p^n into height-one factors.

    Linear factors come from roots in pZ_p; what is left is certified
    irreducible only through a one-segment Newton polygon criterion.
    """
    m = p**n
    D = poly.trim([c % m for c in D])
    if D[-1] != 1:
        raise ValueError("distinguished polynomial must be monic")
    deg = len(D) - 1
    if deg == 0:
        return []
    if deg > lambda_max:
        return [(HeightOnePrimeFactor(PrimeKind.DISTINGUISHED, tuple(D), Irreducibility.UNRESOLVED), 1)]
    if deg == 1:
        return [(HeightOnePrimeFactor(PrimeKind.DISTINGUISHED, tuple(D), Irreducibility.CERTIFIED, "degree-1"), 1)]
    if D[0] == 0:
        # the constant term vanishes mod p^n, so the Newton polygon (and with
        # it every root valuation) is not determined by the data
        return [(HeightOnePrimeFactor(PrimeKind.DISTINGUISHED, tuple(D), Irreducibility.UNRESOLVED), 1)]
    out: list[tuple[HeightOnePrimeFactor, int]] = []
    W = 3 * n + 10
    rest = D
    for r in _candidate_roots(rest, p, n, W):
        lin = [(-r) % m, 1]
        if any(tuple(lin) == f.poly for f, _ in out):
            continue
        e, rest2 = _divide_out(rest, lin, m)
        if e:
            out.append((HeightOnePrimeFactor(PrimeKind.DISTINGUISHED, tuple(lin), Irreducibility.CERTIFIED, "degree-1"), e))
            rest = rest2
    if len(rest) > 1:
        cert = poly.single_slope_certificate(rest, p, n)
        if cert is not None:
            out.append((HeightOnePrimeFactor(PrimeKind.DISTINGUISHED, tuple(rest), Irreducibility.CERTIFIED, cert), 1))
        else:
            out.append((HeightOnePrimeFactor(PrimeKind.DISTINGUISHED, tuple(rest), Irreducibility.UNRESOLVED), 1))
    return out
