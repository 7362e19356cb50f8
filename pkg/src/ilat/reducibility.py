"""Ideal of reducibility and stable lattices for 2x2 representations over Z_p.

A representation is given by finitely many integral generator matrices mod
p^N.  After conjugating so that a distinguished generator g0 is diagonal,
the ideal of reducibility is generated by the products b(w)c(w') of
off-diagonal entries over group elements w, w'.  The group is approximated
by semigroup words of bounded length.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from enum import Enum

from .errors import (
    EigenvaluesNotDistinctModP,
    EigenvaluesNotRational,
    InfiniteWithinPrecision,
    NonIntegralRepresentation,
    NotAUnit,
    OrdTooSmall,
)
from .padic import check_odd_prime, vp

Matrix = tuple[tuple[int, int], tuple[int, int]]

DEFAULT_WORD_BOUND = 6


def mat_mul(A: Matrix, B: Matrix, m: int | None = None) -> Matrix:
    r = (
        (A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
        (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]),
    )
    if m:
        r = tuple(tuple(x % m for x in row) for row in r)
    return r


def mat_det(A) -> int:
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


def mat_inv_mod(A: Matrix, m: int) -> Matrix:
    di = pow(mat_det(A) % m, -1, m)
    return (
        (A[1][1] * di % m, -A[0][1] * di % m),
        (-A[1][0] * di % m, A[0][0] * di % m),
    )


def mat_inv_exact(A) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    d = Fraction(mat_det(A))
    return ((A[1][1] / d, -A[0][1] / d), (-A[1][0] / d, A[0][0] / d))


def _parse_entry(x, p: int, m: int) -> int:
    if isinstance(x, int):
        return x % m
    q = Fraction(str(x))
    if q.denominator % p == 0:
        raise NonIntegralRepresentation(f"entry {x} is not p-integral")
    return q.numerator * pow(q.denominator, -1, m) % m


@dataclass(frozen=True)
class MatrixRep:
    p: int
    N: int
    generators: tuple[tuple[str, Matrix], ...]
    g0_index: int = 0

    def __post_init__(self):
        check_odd_prime(self.p)
        m = self.p**self.N
        gens = []
        for label, A in self.generators:
            A = tuple(tuple(_parse_entry(x, self.p, m) for x in row) for row in A)
            if mat_det(A) % self.p == 0:
                raise NotAUnit(f"generator {label} is not invertible over Z_p")
            gens.append((str(label), A))
        if not gens:
            raise ValueError("need at least one generator")
        if not 0 <= self.g0_index < len(gens):
            raise ValueError("g0 index out of range")
        object.__setattr__(self, "generators", tuple(gens))

    @property
    def modulus(self) -> int:
        return self.p**self.N

    @property
    def g0(self) -> Matrix:
        return self.generators[self.g0_index][1]

    def labels(self) -> list[str]:
        return [lab for lab, _ in self.generators]

    def conjugate(self, P: Matrix) -> "MatrixRep":
        """The representation in the basis given by the columns of P."""
        m = self.modulus
        Pi = mat_inv_mod(P, m)
        gens = tuple((lab, mat_mul(mat_mul(Pi, A, m), P, m)) for lab, A in self.generators)
        return MatrixRep(self.p, self.N, gens, self.g0_index)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "N": self.N,
            "g0": self.g0_index,
            "generators": [
                {"label": lab, "matrix": [[str(x) for x in row] for row in A]} for lab, A in self.generators
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MatrixRep":
        gens = tuple((g["label"], tuple(tuple(row) for row in g["matrix"])) for g in obj["generators"])
        return cls(int(obj["p"]), int(obj["N"]), gens, int(obj.get("g0", 0)))


def _hensel_root(t: int, d: int, r0: int, p: int, N: int) -> int:
    m = p**N
    r = r0
    for _ in range(N.bit_length() + 2):
        f = (r * r - t * r + d) % m
        df = (2 * r - t) % m
        r = (r - f * pow(df, -1, m)) % m
    return r


def eigenvalues(A: Matrix, p: int, N: int) -> tuple[int, int]:
    """Hensel-lifted roots of the characteristic polynomial, distinct mod p."""
    t = (A[0][0] + A[1][1]) % p
    d = mat_det(A) % p
    roots = [x for x in range(p) if (x * x - t * x + d) % p == 0]
    if not roots:
        raise EigenvaluesNotRational("characteristic polynomial of g0 is irreducible mod p")
    if len(roots) == 1:
        raise EigenvaluesNotDistinctModP("g0 has a repeated eigenvalue mod p")
    T = A[0][0] + A[1][1]
    D = mat_det(A)
    return tuple(_hensel_root(T, D, r, p, N) for r in roots)


def _eigenvector(A: Matrix, lam: int, p: int, m: int) -> tuple[int, int]:
    a, b = A[0]
    c, d = A[1]
    v = (b % m, (lam - a) % m)
    if v[0] % p or v[1] % p:
        return v
    return ((lam - d) % m, c % m)


def diagonalize_g0(rep: MatrixRep) -> tuple[Matrix, MatrixRep]:
    """Change of basis P (columns = eigenvectors of g0) and the conjugated rep."""
    m = rep.modulus
    l1, l2 = eigenvalues(rep.g0, rep.p, rep.N)
    v1 = _eigenvector(rep.g0, l1, rep.p, m)
    v2 = _eigenvector(rep.g0, l2, rep.p, m)
    P = ((v1[0], v2[0]), (v1[1], v2[1]))
    if mat_det(P) % rep.p == 0:
        raise EigenvaluesNotDistinctModP("eigenvectors are dependent mod p")
    return P, rep.conjugate(P)


class Saturation(str, Enum):
    STABLE = "Stable"
    BOUND_HIT = "BoundHit"


@dataclass
class Word:
    label: str
    matrix: Matrix
    length: int


def enumerate_words(rep: MatrixRep, word_bound: int) -> list[list[Word]]:
    """Breadth-first semigroup words, deduplicated as matrices mod p^N; one list per length."""
    m = rep.modulus
    seen = set()
    levels: list[list[Word]] = []
    frontier = []
    for lab, A in rep.generators:
        if A not in seen:
            seen.add(A)
            frontier.append(Word(lab, A, 1))
    levels.append(frontier)
    for length in range(2, word_bound + 1):
        nxt = []
        for w in frontier:
            for lab, A in rep.generators:
                B = mat_mul(w.matrix, A, m)
                if B not in seen:
                    seen.add(B)
                    nxt.append(Word(f"{w.label}*{lab}", B, length))
        if not nxt:
            break
        levels.append(nxt)
        frontier = nxt
    return levels


def _val(x: int, p: int, N: int) -> int | None:
    x %= p**N
    return None if x == 0 else vp(x, p)


@dataclass
class ReducibilityResult:
    ord: int
    witness: tuple[str, str]
    saturation: Saturation
    min_b: int
    min_c: int
    basis: Matrix
    diagonal_rep: MatrixRep
    words: list[Word] = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "ord": self.ord,
            "witness": list(self.witness),
            "saturation": self.saturation.value,
            "min_val_b": self.min_b,
            "min_val_c": self.min_c,
            "count_classes": self.ord + 1,
            "words_examined": len(self.words),
        }


def reducibility_ideal(rep: MatrixRep, word_bound: int = DEFAULT_WORD_BOUND) -> ReducibilityResult:
    """ord_p of the ideal generated by b(w)c(w') over examined words."""
    P, drep = diagonalize_g0(rep)
    p, N = rep.p, rep.N
    levels = enumerate_words(drep, word_bound)
    best_b: tuple[int, str] | None = None
    best_c: tuple[int, str] | None = None
    history = []
    for level in levels:
        for w in level:
            vb = _val(w.matrix[0][1], p, N)
            vc = _val(w.matrix[1][0], p, N)
            if vb is not None and (best_b is None or vb < best_b[0]):
                best_b = (vb, w.label)
            if vc is not None and (best_c is None or vc < best_c[0]):
                best_c = (vc, w.label)
        if best_b is not None and best_c is not None and best_b[0] + best_c[0] < N:
            history.append(best_b[0] + best_c[0])
        else:
            history.append(None)
    if history[-1] is None:
        raise InfiniteWithinPrecision("every examined b(w)c(w') vanishes mod p^N")
    closed = len(levels) < word_bound
    stable = closed or (len(history) >= 2 and history[-2] == history[-1])
    words = [w for lvl in levels for w in lvl]
    return ReducibilityResult(
        best_b[0] + best_c[0],
        (best_b[1], best_c[1]),
        Saturation.STABLE if stable else Saturation.BOUND_HIT,
        best_b[0],
        best_c[0],
        P,
        drep,
        words,
    )


def residual_characters(
    rep: MatrixRep, n: int, word_bound: int = DEFAULT_WORD_BOUND
) -> tuple[dict[str, int], dict[str, int]]:
    """theta_1 = a mod p^n and theta_2 = d mod p^n in the g0-diagonal basis."""
    res = reducibility_ideal(rep, word_bound)
    if n < 1 or n > res.ord:
        raise OrdTooSmall(f"need 1 <= n <= ord = {res.ord}, got {n}")
    if res.saturation is not Saturation.STABLE:
        raise OrdTooSmall("word enumeration did not saturate; raise the word bound")
    m = rep.p**n
    theta1 = {w.label: w.matrix[0][0] % m for w in res.words}
    theta2 = {w.label: w.matrix[1][1] % m for w in res.words}
    return theta1, theta2


@dataclass
class LatticeChain:
    """Nested stable lattices T_n > ... > T_0; column bases in the original coordinates."""

    bases: list[Matrix]
    exponents: list[tuple[int, int]]
    eigenbasis: Matrix
    quotient_type: str
    flipped: bool

    def __len__(self):
        return len(self.bases)

    def to_json(self) -> dict:
        return {
            "length": len(self.bases),
            "quotient_type": self.quotient_type,
            "flipped": self.flipped,
            "bases": [[[str(x) for x in row] for row in B] for B in self.bases],
            "diagonal_exponents": [list(e) for e in self.exponents],
        }


def _basis_from_exponents(P: Matrix, p: int, x: int, y: int) -> Matrix:
    return (
        (P[0][0] * p**x, P[0][1] * p**y),
        (P[1][0] * p**x, P[1][1] * p**y),
    )


def lattice_chain(rep: MatrixRep, word_bound: int = DEFAULT_WORD_BOUND) -> LatticeChain:
    """Representatives T_0 < ... < T_n of the stable lattice classes, n = ord.

    In the diagonal basis span(e1, p^(gamma-j) e2), j = 0..n, is a stable
    chain on whose top quotient G acts by d.  Replacing T_j by p^(n-j) T_(n-j)
    reverses it, so that G acts on T_n/T_0 by a instead.
    """
    res = reducibility_ideal(rep, word_bound)
    if res.saturation is not Saturation.STABLE:
        raise OrdTooSmall("word enumeration did not saturate; raise the word bound")
    n, gamma = res.ord, res.min_c
    first = [(0, gamma - j) for j in range(n + 1)]
    chain = [(first[n - j][0] + n - j, first[n - j][1] + n - j) for j in range(n + 1)]
    shift = min(min(x, y) for x, y in chain)
    chain = [(x - shift, y - shift) for x, y in chain]
    bases = [_basis_from_exponents(res.basis, rep.p, x, y) for x, y in chain]
    return LatticeChain(bases, chain, res.basis, "theta1" if n > 0 else "trivial", n > 0)


def count_classes(rep: MatrixRep, word_bound: int = DEFAULT_WORD_BOUND) -> int:
    return reducibility_ideal(rep, word_bound).ord + 1


def _p_integral(x: Fraction, p: int) -> bool:
    return x.denominator % p != 0


def is_stable(B: Matrix, rep: MatrixRep) -> bool:
    """B^-1 rho(g) B integral for every generator (needs exponents of B below N)."""
    Bi = mat_inv_exact(B)
    for _, A in rep.generators:
        X = mat_mul(mat_mul(Bi, A), B)
        if not all(_p_integral(Fraction(x), rep.p) for row in X for x in row):
            return False
    return True


def quotient_elementary_divisors(outer: Matrix, inner: Matrix, p: int) -> tuple[int, int]:
    """Exponents (d1, d2) with outer/inner = Z/p^d1 + Z/p^d2."""
    X = mat_mul(mat_inv_exact(outer), inner)
    vals = [vp(x.numerator, p) - vp(x.denominator, p) for row in X for x in row if x != 0]
    d1 = min(vals)
    det = Fraction(mat_det(X))
    dt = vp(det.numerator, p) - vp(det.denominator, p)
    return d1, dt - d1


def acts_by_character(outer: Matrix, inner: Matrix, rep: MatrixRep, chars: dict[str, int]) -> bool:
    """G acts on the cyclic quotient outer/inner through the given character values."""
    v = (outer[0][0], outer[1][0])
    Ii = mat_inv_exact(inner)
    for lab, A in rep.generators:
        w = (A[0][0] * v[0] + A[0][1] * v[1] - chars[lab] * v[0], A[1][0] * v[0] + A[1][1] * v[1] - chars[lab] * v[1])
        coords = (Ii[0][0] * w[0] + Ii[0][1] * w[1], Ii[1][0] * w[0] + Ii[1][1] * w[1])
        if not all(_p_integral(Fraction(c), rep.p) for c in coords):
            return False
    return True


def _hnf_lattices(p: int, j_max: int):
    """Column bases ((p^a, x), (0, p^b)) of every L with Z_p^2 >= L >= p^j_max Z_p^2."""
    for a in range(j_max + 1):
        for b in range(j_max + 1):
            for x in range(p**a):
                vx = vp(x, p) if x else a
                if j_max - b + vx >= a:
                    yield ((p**a, x), (0, p**b))


def _in_lattice(w: tuple[int, int], B: Matrix, p: int) -> bool:
    (pa, x), (_, pb) = B
    if w[1] % pb:
        return False
    beta = w[1] // pb
    return (w[0] - beta * x) % pa == 0


def brute_force_classes(rep: MatrixRep, j_max: int = 3) -> int:
    """Homothety classes of stable lattices, by exhaustive search below p^j_max.

    Each class has exactly one representative contained in Z_p^2 but not in
    p Z_p^2; we enumerate those in Hermite form and test stability directly.
    """
    p = rep.p
    if j_max > rep.N:
        raise ValueError("j_max must not exceed the precision N")
    count = 0
    for B in _hnf_lattices(p, j_max):
        (pa, x), (_, pb) = B
        if pa % p == 0 and pb % p == 0 and x % p == 0:
            continue
        cols = [(B[0][0], B[1][0]), (B[0][1], B[1][1])]
        if all(
            _in_lattice((A[0][0] * c[0] + A[0][1] * c[1], A[1][0] * c[0] + A[1][1] * c[1]), B, p)
            for _, A in rep.generators
            for c in cols
        ):
            count += 1
    return count


def planted_rep(p: int, n: int, N: int, rng: random.Random | None = None, extra: int = 1, conjugate: bool = True) -> MatrixRep:
    """A random representation with ideal of reducibility exactly (p^n).

    In the g0-diagonal basis one generator has off-diagonal entries of
    valuation beta and gamma with beta + gamma = n; further generators only
    carry higher valuations.  The whole rep is then conjugated by a random
    element of GL_2(Z_p), which keeps Z_p^2 stable.
    """
    rng = rng or random.Random()
    m = p**N

    def unit():
        while True:
            x = rng.randrange(1, m)
            if x % p:
                return x

    l1 = unit()
    while True:
        l2 = unit()
        if (l1 - l2) % p:
            break
    beta = rng.randint(0, n)
    gamma = n - beta

    def gen(vb, vc):
        while True:
            A = ((rng.randrange(m), p**vb * unit() % m), (p**vc * unit() % m, rng.randrange(m)))
            if mat_det(A) % p:
                return A

    gens = [("g0", ((l1, 0), (0, l2))), ("h1", gen(beta, gamma))]
    for i in range(extra):
        gens.append((f"h{i + 2}", gen(beta + rng.randint(0, 1), gamma + rng.randint(0, 1))))
    rep = MatrixRep(p, N, tuple(gens), 0)
    if conjugate:
        while True:
            Q = ((rng.randrange(m), rng.randrange(m)), (rng.randrange(m), rng.randrange(m)))
            if mat_det(Q) % p:
                break
        rep = rep.conjugate(Q)
    return rep
