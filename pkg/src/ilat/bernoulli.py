"""Bernoulli numbers, irregular pairs and p-adic special values.

Exact Bernoulli numbers use the classical recurrence over ``Fraction``.
Generalized Bernoulli numbers for powers of the Teichmuller character are
p-adic, so they come back as residues; internally they are carried as
``S / p^e`` so that values with p in the denominator survive until a
caller multiplies the pole away.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .errors import DenominatorNotUnit, InsufficientPrecision, RangeError
from .padic import PAdicInt, check_odd_prime, fraction_mod, primes_up_to, teichmuller, vp

_B: list[Fraction] = [Fraction(1)]


def bernoulli(k: int) -> Fraction:
    """B_k with B_1 = -1/2."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > 1 and k % 2:
        return Fraction(0)
    while len(_B) <= k:
        m = len(_B)
        if m > 1 and m % 2:
            _B.append(Fraction(0))
            continue
        s = sum(comb(m + 1, i) * _B[i] for i in range(m) if _B[i])
        _B.append(-s / (m + 1))
    return _B[k]


def bernoulli_polynomial(n: int) -> list[Fraction]:
    """Coefficients of B_n(x), lowest degree first."""
    return [comb(n, n - d) * bernoulli(n - d) for d in range(n + 1)]


def is_irregular_pair(p: int, k: int) -> bool:
    check_odd_prime(p)
    if k % 2 or not 2 <= k <= p - 3:
        raise RangeError(f"k must be even with 2 <= k <= p-3, got (p, k) = ({p}, {k})")
    return bernoulli(k).numerator % p == 0


def _irregular_indices(p: int) -> list[int]:
    # sum_{a<p} a^k = p*B_k mod p^2 for even k with (p-1) not dividing k
    if p < 5:
        return []
    m = p * p
    a = np.arange(1, p, dtype=np.int64)
    a2 = a * a % m
    pw = a2.copy()
    out = []
    for k in range(2, p - 2, 2):
        if int(pw.sum() % m) == 0:
            out.append(k)
        pw = pw * a2 % m
    return out


def _scan_chunk(primes: list[int]) -> list[tuple[int, int]]:
    return [(p, k) for p in primes for k in _irregular_indices(p)]


def scan_irregular_pairs(p_max: int, workers: int = 1) -> list[tuple[int, int]]:
    """All irregular pairs (p, k) with p <= p_max, ascending."""
    if p_max < 3:
        raise ValueError("p_max must be >= 3")
    primes = [p for p in primes_up_to(p_max) if p > 2]
    if workers <= 1:
        return _scan_chunk(primes)
    chunks = [primes[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        parts = list(ex.map(_scan_chunk, chunks))
    return sorted(pair for part in parts for pair in part)


@dataclass(frozen=True)
class OmegaPowerCharacter:
    """chi = omega^j for the Teichmuller character omega mod p."""

    p: int
    j: int

    def __post_init__(self):
        check_odd_prime(self.p)
        object.__setattr__(self, "j", self.j % (self.p - 1))

    @property
    def is_trivial(self) -> bool:
        return self.j == 0

    @property
    def conductor(self) -> int:
        return 1 if self.is_trivial else self.p

    @property
    def parity(self) -> int:
        """chi(-1) as +1 or -1."""
        return -1 if self.j % 2 else 1

    def __call__(self, a: int, N: int) -> PAdicInt:
        if self.is_trivial:
            return PAdicInt(self.p, N, 1)
        if a % self.p == 0:
            return PAdicInt(self.p, N, 0)
        return teichmuller(a, self.p, N) ** self.j


@lru_cache(maxsize=64)
def _omega_table(p: int, j: int, n: int) -> tuple[int, ...]:
    m = p**n
    return tuple(pow(teichmuller(a, p, n).residue, j, m) for a in range(1, p))


@dataclass(frozen=True)
class ScaledValue:
    """A p-adic number S / p^shift with S known modulo p^precision."""

    p: int
    S: int
    shift: int
    precision: int

    @property
    def valuation(self) -> int | None:
        s = self.S % self.p**self.precision
        if s == 0:
            return None
        return vp(s, self.p) - self.shift

    def times_int(self, c: int) -> "ScaledValue":
        e = vp(c, self.p) or 0
        unit = c // self.p**e
        # multiplying by p^e gains e digits of precision in S / p^shift
        return ScaledValue(self.p, self.S * unit, self.shift - e, self.precision).normalized()

    def divided_by_int(self, c: int) -> "ScaledValue":
        e = vp(c, self.p)
        unit = c // self.p**e
        m = self.p**self.precision
        return ScaledValue(self.p, self.S * pow(unit, -1, m), self.shift + e, self.precision)

    def normalized(self) -> "ScaledValue":
        if self.shift < 0:
            k = -self.shift
            return ScaledValue(self.p, self.S * self.p**k, 0, self.precision + k)
        return self

    def to_padic(self, N: int | None = None) -> PAdicInt:
        """Residue of the value, raising if it is not p-integral at this precision."""
        x = self.normalized()
        avail = x.precision - x.shift
        if avail <= 0:
            raise InsufficientPrecision("no digits left after division by p")
        s = x.S % x.p**x.precision
        if x.shift and s % x.p**x.shift:
            raise DenominatorNotUnit("value has p in its denominator")
        n = avail if N is None else min(N, avail)
        return PAdicInt(x.p, n, s // x.p**x.shift)


def scaled_generalized_bernoulli(n: int, chi: OmegaPowerCharacter, W: int) -> ScaledValue:
    """B_{n,chi} as S / p^e with S exact modulo p^(W+e)."""
    p = chi.p
    if n < 1:
        raise ValueError("n must be >= 1")
    if chi.is_trivial:
        b = Fraction(1, 2) if n == 1 else bernoulli(n)
        e = max(0, -(vp_frac(b, p) or 0))
        return ScaledValue(p, fraction_mod(b * p**e, p, W + e), e, W + e)
    if (chi.parity == 1) != (n % 2 == 0):
        return ScaledValue(p, 0, 0, W)
    # B_{n,chi} = sum_i binom(n,i) B_i p^(i-1) sum_a chi(a) a^(n-i)
    coeffs = [comb(n, i) * bernoulli(i) * Fraction(p) ** (i - 1) for i in range(n + 1)]
    e = max(0, max(-(vp_frac(c, p) or 0) for c in coeffs if c))
    prec = W + e
    m = p**prec
    omega = _omega_table(p, chi.j, prec)
    total = 0
    for i, c in enumerate(coeffs):
        if not c:
            continue
        s = sum(w * pow(a, n - i, m) for a, w in enumerate(omega, start=1)) % m
        total += fraction_mod(c * p**e, p, prec) * s
    return ScaledValue(p, total % m, e, prec)


def vp_frac(x: Fraction, p: int) -> int | None:
    if x == 0:
        return None
    return vp(x.numerator, p) - vp(x.denominator, p)


def generalized_bernoulli(n: int, chi: OmegaPowerCharacter, N: int) -> PAdicInt:
    """B_{n,chi} in Z_p at precision N."""
    sv = scaled_generalized_bernoulli(n, chi, N)
    return sv.to_padic(N)


def scaled_lp_value(p: int, m: int, n: int, W: int) -> ScaledValue:
    """L_p(1-n, omega^m) = -(1 - psi(p) p^(n-1)) B_{n,psi} / n with psi = omega^(m-n)."""
    check_odd_prime(p)
    if n < 1:
        raise ValueError("n must be >= 1")
    psi = OmegaPowerCharacter(p, m - n)
    b = scaled_generalized_bernoulli(n, psi, W + (vp(n, p) or 0))
    euler = (1 - p ** (n - 1)) if psi.is_trivial else 1
    return b.times_int(-euler).divided_by_int(n)


def lp_value(p: int, m: int, n: int, N: int) -> PAdicInt:
    """The p-adic L-value L_p(1-n, omega^m) at precision N (m even)."""
    if m % 2:
        raise ValueError("theta = omega^m must be even")
    sv = scaled_lp_value(p, m, n, N)
    try:
        return sv.to_padic(N)
    except DenominatorNotUnit as exc:
        raise InsufficientPrecision(f"L_p(1-{n}, omega^{m}) is not p-integral") from exc
