"""The Kubota-Leopoldt p-adic L-function as an element of the Iwasawa algebra.

The series is pinned down by its values at arithmetic weights k >= 2, where
T = u^(k-2) - 1.  We recover it by Newton interpolation on more nodes than
the T-truncation needs: a node set of size K leaves every coefficient below
T^M correct modulo p^(K - M + 1), so K = N + M - 1 nodes give coefficients
exact modulo p^N.  Weight M + 2 is never used as a node so that it stays
available as an out-of-sample check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bernoulli import OmegaPowerCharacter, ScaledValue, scaled_lp_value
from .errors import EvenCharacter, InsufficientPrecision
from .iwasawa import (
    DEFAULT_LAMBDA_MAX,
    IwasawaSeries,
    factor_distinguished,
    specialize,
    weierstrass,
)
from .lattice_classes import IdealFactorization
from .padic import PAdicInt, check_odd_prime, fraction_mod, vp

DEFAULT_PRECISION_CEILING = 400


def interpolation_target(p: int, j: int, k: int, W: int, u: int | None = None) -> ScaledValue:
    """Value that the weight-k specialization of L_p(omega^j) must take."""
    u = 1 + p if u is None else u
    m = (j + 1) % (p - 1)
    if m == 0:
        # chi = omega^{-1}: (u^k - 1) L_p(1-k, 1), the factor cancelling the pole
        return scaled_lp_value(p, 0, k, W + 1).times_int(u**k - 1)
    return scaled_lp_value(p, m, k, W)


def oracle_value(p: int, j: int, k: int, N: int, u: int | None = None) -> PAdicInt:
    return interpolation_target(p, j, k, N, u).to_padic(N)


def default_weights(M: int, count: int) -> list[int]:
    """Construction weights 2..M+1, then M+3, M+4, ... up to ``count`` nodes."""
    ws = list(range(2, M + 2))
    k = M + 3
    while len(ws) < count:
        ws.append(k)
        k += 1
    return ws


def _newton_loss(nodes: list[int], p: int) -> int:
    worst = 0
    for i in range(len(nodes)):
        for k in range(i + 1):
            s = sum(vp(nodes[k] - nodes[l], p) for l in range(i + 1) if l != k)
            worst = max(worst, s)
    return worst


def interpolate_series(nodes: list[int], values: list[int], p: int, N: int, M: int) -> list[int]:
    """Newton interpolation through (nodes, values); coefficients below T^M mod p^N."""
    K = len(nodes)
    dd = [Fraction(v) for v in values]
    newton = [dd[0]]
    for level in range(1, K):
        dd = [(dd[i + 1] - dd[i]) / (nodes[i + level] - nodes[i]) for i in range(K - level)]
        newton.append(dd[0])
    coeffs = [Fraction(0)] * M
    basis = [Fraction(1)]
    for i, d in enumerate(newton):
        for c in range(min(M, len(basis))):
            coeffs[c] += d * basis[c]
        nxt = [Fraction(0)] * (len(basis) + 1)
        for c, b in enumerate(basis):
            nxt[c + 1] += b
            nxt[c] -= nodes[i] * b
        basis = nxt
    try:
        return [fraction_mod(c, p, N) for c in coeffs]
    except Exception as exc:
        raise InsufficientPrecision("interpolated coefficient is not p-integral") from exc


@dataclass(frozen=True)
class KLSeries:
    chi: OmegaPowerCharacter
    series: IwasawaSeries
    guaranteed_N: int
    construction: str = "InterpolationSolve"
    weights: tuple[int, ...] = ()
    working_precision: int = 0
    u: int = 0

    @property
    def p(self) -> int:
        return self.chi.p

    @property
    def j(self) -> int:
        return self.chi.j

    @property
    def M(self) -> int:
        return self.series.M

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "chi_omega_exp": self.j,
            "series": self.series.to_json(),
            "guaranteed_N": self.guaranteed_N,
            "construction": self.construction,
            "weights": list(self.weights),
            "working_precision": self.working_precision,
            "u": str(self.u),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "KLSeries":
        p = int(obj["p"])
        return cls(
            OmegaPowerCharacter(p, int(obj["chi_omega_exp"])),
            IwasawaSeries.from_json(obj["series"]),
            int(obj["guaranteed_N"]),
            obj["construction"],
            tuple(int(w) for w in obj["weights"]),
            int(obj["working_precision"]),
            int(obj["u"]),
        )


def kl_series(
    p: int,
    j: int,
    N: int,
    M: int,
    weights: list[int] | None = None,
    u: int | None = None,
    ceiling: int = DEFAULT_PRECISION_CEILING,
) -> KLSeries:
    """L_p(omega^j; gamma') modulo (p^N, T^M) for odd j."""
    check_odd_prime(p)
    if j % 2 == 0:
        raise EvenCharacter(f"omega^{j} is even; its series vanishes identically")
    if M < 2 or N < 2:
        raise ValueError("need N >= 2 and M >= 2")
    u = 1 + p if u is None else u
    K = N + M - 1
    weights = list(weights) if weights is not None else default_weights(M, K)
    if len(weights) < K:
        raise ValueError(f"need at least {K} interpolation weights, got {len(weights)}")
    if len(set(weights)) != len(weights) or min(weights) < 2:
        raise ValueError("weights must be distinct and >= 2")
    nodes = [u ** (k - 2) - 1 for k in weights]
    W = N + _newton_loss(nodes, p) + 1
    if W > ceiling:
        raise InsufficientPrecision(f"working precision {W} exceeds the ceiling {ceiling}")
    values = [oracle_value(p, j, k, W, u).residue for k in weights]
    coeffs = interpolate_series(nodes, values, p, N, M)
    series = IwasawaSeries.from_coeffs(p, N, coeffs, M)
    return KLSeries(OmegaPowerCharacter(p, j), series, N, "InterpolationSolve", tuple(weights), W, u)


def iwasawa_invariants(kl: KLSeries) -> tuple[int, int]:
    W = weierstrass(kl.series)
    return W.mu, W.lam


def kl_factorization(kl: KLSeries, lambda_max: int = DEFAULT_LAMBDA_MAX) -> IdealFactorization:
    return factorization_of(kl.series, lambda_max)


def factorization_of(f: IwasawaSeries, lambda_max: int = DEFAULT_LAMBDA_MAX) -> IdealFactorization:
    """p^mu times the height-one factors of the distinguished part of f."""
    W = weierstrass(f)
    factors = factor_distinguished(list(W.distinguished), f.p, W.dist_precision, lambda_max)
    return IdealFactorization(W.mu, tuple(factors))


@dataclass(frozen=True)
class InterpolationRow:
    weight: int
    ok: bool
    lhs: PAdicInt
    rhs: PAdicInt
    precision: int = field(default=0)

    def to_json(self) -> dict:
        return {
            "weight": self.weight,
            "ok": self.ok,
            "lhs": str(self.lhs.residue),
            "rhs": str(self.rhs.residue),
            "precision": self.precision,
        }


def verify_interpolation(kl: KLSeries, weights) -> list[InterpolationRow]:
    """Compare specialize(series, k) against the special-value formula for each k."""
    rows = []
    for k in weights:
        lhs = specialize(kl.series, k, kl.u)
        prec = min(lhs.precision, kl.guaranteed_N)
        rhs = oracle_value(kl.p, kl.j, k, prec, kl.u)
        rows.append(InterpolationRow(k, lhs.with_precision(prec) == rhs, lhs.with_precision(prec), rhs, prec))
    return rows
