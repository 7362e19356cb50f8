"""Fixed-precision arithmetic in Z_p.

A :class:`PAdicInt` is a residue modulo p^N.  Values are immutable; binary
operations between different precisions truncate to the smaller one, and
operations that lose digits (logarithms, division by p) return a value of
explicitly smaller precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DenominatorNotUnit,
    InsufficientPrecision,
    NotAUnit,
    PrecisionMismatch,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]


def check_odd_prime(p: int) -> None:
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")


def vp(n: int, p: int) -> int | None:
    """p-adic valuation of an integer; None for zero."""
    if n == 0:
        return None
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_fraction(x: Fraction, p: int) -> int | None:
    if x == 0:
        return None
    return vp(x.numerator, p) - vp(x.denominator, p)


def fraction_mod(x: Fraction, p: int, n: int) -> int:
    """Residue of a p-integral rational modulo p^n."""
    if x.denominator % p == 0:
        raise DenominatorNotUnit(f"{x} is not p-integral for p={p}")
    m = p**n
    return x.numerator * pow(x.denominator, -1, m) % m


@dataclass(frozen=True)
class AtLeast:
    """Valuation marker: the value is zero at the available precision."""

    bound: int

    def __str__(self):
        return f">={self.bound}"


@dataclass(frozen=True)
class PAdicInt:
    prime: int
    precision: int
    residue: int

    def __post_init__(self):
        if self.precision < 0:
            raise ValueError("precision must be non-negative")
        object.__setattr__(self, "residue", self.residue % self.prime**self.precision)

    @classmethod
    def of(cls, value: int, p: int, N: int) -> "PAdicInt":
        check_odd_prime(p)
        return cls(p, N, value)

    @property
    def modulus(self) -> int:
        return self.prime**self.precision

    def _coerce(self, other) -> tuple[int, int, int]:
        if isinstance(other, PAdicInt):
            if other.prime != self.prime:
                raise PrecisionMismatch(f"primes differ: {self.prime} vs {other.prime}")
            n = min(self.precision, other.precision)
            return n, self.residue, other.residue
        if isinstance(other, int):
            return self.precision, self.residue, other
        return NotImplemented

    def _binop(self, other, op):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        n, a, b = c
        return PAdicInt(self.prime, n, op(a, b))

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return PAdicInt(self.prime, self.precision, -self.residue)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PAdicInt(self.prime, self.precision, pow(self.residue, e, self.modulus))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.residue == other % self.modulus
        if isinstance(other, PAdicInt):
            if other.prime != self.prime:
                return False
            m = self.prime ** min(self.precision, other.precision)
            return (self.residue - other.residue) % m == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.prime, self.precision, self.residue))

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"PAdicInt({self.residue} mod {self.prime}^{self.precision})"

    def is_zero(self) -> bool:
        return self.residue == 0

    def is_unit(self) -> bool:
        return self.precision > 0 and self.residue % self.prime != 0

    def inverse(self) -> "PAdicInt":
        if not self.is_unit():
            raise NotAUnit(f"{self!r} is not a unit")
        return PAdicInt(self.prime, self.precision, pow(self.residue, -1, self.modulus))

    def __truediv__(self, other):
        if isinstance(other, int):
            other = PAdicInt(self.prime, self.precision, other)
        return self * other.inverse()

    def with_precision(self, n: int) -> "PAdicInt":
        if n > self.precision:
            raise InsufficientPrecision(f"cannot raise precision {self.precision} to {n}")
        return PAdicInt(self.prime, n, self.residue)

    def divide_by_p_power(self, k: int) -> "PAdicInt":
        """Exact division by p^k; the result carries k fewer digits."""
        if k > self.precision:
            raise InsufficientPrecision("dividing away every known digit")
        if self.residue % self.prime**k:
            raise DenominatorNotUnit(f"{self!r} is not divisible by {self.prime}^{k}")
        return PAdicInt(self.prime, self.precision - k, self.residue // self.prime**k)

    def to_json(self) -> dict:
        return {"p": self.prime, "N": self.precision, "residue": str(self.residue)}

    @classmethod
    def from_json(cls, obj: dict) -> "PAdicInt":
        return cls.of(int(obj["residue"]), int(obj["p"]), int(obj["N"]))


def from_rational(num: int, den: int, p: int, N: int) -> PAdicInt:
    check_odd_prime(p)
    if den % p == 0:
        raise DenominatorNotUnit(f"{p} divides the denominator {den}")
    m = p**N
    return PAdicInt(p, N, num * pow(den, -1, m))


def valuation(x: PAdicInt) -> int | AtLeast:
    if x.residue == 0:
        return AtLeast(x.precision)
    return vp(x.residue, x.prime)


def teichmuller(a: int, p: int, N: int) -> PAdicInt:
    """The (p-1)-st root of unity congruent to a mod p."""
    if a % p == 0:
        raise NotAUnit(f"{p} divides {a}")
    m = p**N
    x = a % m
    while True:
        y = pow(x, p, m)
        if y == x:
            return PAdicInt(p, N, x)
        x = y


def one_unit_part(a: PAdicInt) -> PAdicInt:
    """<a> = a / omega(a), a one-unit."""
    if not a.is_unit():
        raise NotAUnit(f"{a!r} is not a unit")
    return a * teichmuller(a.residue, a.prime, a.precision).inverse()


def _ilog(k: int, p: int) -> int:
    e = 0
    while p ** (e + 1) <= k:
        e += 1
    return e


def log_one_unit(x: int, p: int, n: int) -> int:
    """log_p(x) mod p^n for an integer x = 1 mod p, via the Mercator series."""
    z = x - 1
    if z % p:
        raise NotAUnit("log_p needs a one-unit")
    m = p**n
    if z == 0:
        return 0
    total = 0
    k = 1
    zk = z
    # term z^k/k has valuation >= k - floor(log_p k), increasing in k
    while k - _ilog(k, p) < n:
        e = vp(k, p)
        term = (zk // p**e) * pow(k // p**e, -1, m)
        total += term if k % 2 else -term
        k += 1
        zk *= z
    return total % m


def log_exponent(a: PAdicInt, u: int | None = None) -> PAdicInt:
    """s_a with <a> = u^{s_a}; guaranteed to precision N-1."""
    p, N = a.prime, a.precision
    if u is None:
        u = 1 + p
    if (u - 1 - p) % (p * p):
        raise ValueError("u must be congruent to 1+p mod p^2")
    if N < 2:
        raise InsufficientPrecision("log_exponent needs N >= 2")
    x = one_unit_part(a).residue
    la = log_one_unit(x, p, N)
    lu = log_one_unit(u, p, N)
    # both logs have valuation >= 1 and log(u) has valuation exactly 1
    q = (la // p) * pow(lu // p, -1, p ** (N - 1))
    return PAdicInt(p, N - 1, q)
