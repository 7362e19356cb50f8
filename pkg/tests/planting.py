"""Random inputs with known answers, shared by the unit and acceptance tests."""

import random

from ilat.iwasawa import IwasawaSeries


def polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def planted_series(rng: random.Random, p, N, M, mu, lam, exact_unit=False):
    """f = p^mu * D * U with D distinguished of degree lam and U a unit.

    With ``exact_unit`` the unit is a polynomial short enough that D*U has no
    terms beyond T^(M-1), so D itself is recoverable from the truncation.
    """
    n = N - mu
    m = p**n
    D = [p * rng.randrange(p ** (n - 1)) for _ in range(lam)] + [1]
    ulen = M - lam if exact_unit else M
    U = [rng.randrange(m) for _ in range(ulen)]
    while U[0] % p == 0:
        U[0] = rng.randrange(m)
    g = polymul(D, U)[:M]
    f = IwasawaSeries.from_coeffs(p, N, [p**mu * c for c in g], M)
    return f, D, U
