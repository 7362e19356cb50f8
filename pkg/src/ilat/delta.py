"""Ramanujan's Delta and its congruence with the weight-12 Eisenstein series mod 691."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import OutOfRange
from .padic import is_prime, vp

EISENSTEIN_PRIME = 691
WEIGHT = 12


def _mul_trunc(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            lim = n - i
            for j, y in enumerate(b[:lim]):
                if y:
                    out[i + j] += x * y
    return out


def euler_function(n: int) -> list[int]:
    """prod (1 - q^m) mod q^n via the pentagonal number theorem."""
    out = [0] * n
    k = 0
    while True:
        hit = False
        for kk in (k, -k) if k else (0,):
            e = kk * (3 * kk - 1) // 2
            if e < n:
                out[e] = -1 if kk % 2 else 1
                hit = True
        if not hit:
            return out
        k += 1


@dataclass(frozen=True)
class QExpansion:
    n_max: int
    tau: tuple[int, ...]  # tau[0] is tau(1)

    def __call__(self, n: int) -> int:
        if not 1 <= n <= self.n_max:
            raise OutOfRange(f"tau({n}) beyond n_max = {self.n_max}")
        return self.tau[n - 1]


def tau_coefficients(n_max: int = 1000) -> QExpansion:
    """Coefficients of q * prod (1 - q^n)^24 up to q^n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    eta = euler_function(n_max)
    # 24 = 16 + 8 by repeated squaring
    e2 = _mul_trunc(eta, eta, n_max)
    e4 = _mul_trunc(e2, e2, n_max)
    e8 = _mul_trunc(e4, e4, n_max)
    e16 = _mul_trunc(e8, e8, n_max)
    e24 = _mul_trunc(e16, e8, n_max)
    return QExpansion(n_max, tuple(e24))


def eisenstein_congruence(l: int, exp: QExpansion) -> bool:
    """tau(l) = 1 + l^11 mod 691."""
    return (exp(l) - 1 - pow(l, WEIGHT - 1, EISENSTEIN_PRIME)) % EISENSTEIN_PRIME == 0


def j_generator_valuation(l: int, exp: QExpansion) -> int | None:
    """691-adic valuation of tau(l) - 1 - l^11, the weight-12 image of a J generator."""
    if l == EISENSTEIN_PRIME:
        raise OutOfRange("l = 691 is the p-generator; use pfour_generator_valuation")
    return vp(exp(l) - 1 - l ** (WEIGHT - 1), EISENSTEIN_PRIME)


def pfour_generator_valuation(exp: QExpansion) -> int | None:
    """691-adic valuation of tau(691) - 1."""
    return vp(exp(EISENSTEIN_PRIME) - 1, EISENSTEIN_PRIME)


@dataclass(frozen=True)
class CongruenceRow:
    l: int
    tau: int
    congruent: bool
    valuation: int | None

    def to_json(self) -> dict:
        return {"l": self.l, "tau": str(self.tau), "congruent": self.congruent, "valuation": self.valuation}


def congruence_table(l_max: int, exp: QExpansion) -> list[CongruenceRow]:
    """Rows for every prime l <= l_max, plus l = 691 when it is in range of the expansion."""
    if l_max > exp.n_max:
        raise OutOfRange(f"l_max = {l_max} exceeds n_max = {exp.n_max}")
    rows = []
    ls = [l for l in range(2, l_max + 1) if is_prime(l)]
    if EISENSTEIN_PRIME <= exp.n_max and EISENSTEIN_PRIME not in ls:
        ls.append(EISENSTEIN_PRIME)
    for l in ls:
        if l == EISENSTEIN_PRIME:
            v = pfour_generator_valuation(exp)
        else:
            v = j_generator_valuation(l, exp)
        rows.append(CongruenceRow(l, exp(l), eisenstein_congruence(l, exp), v))
    return rows
