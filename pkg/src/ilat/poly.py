"""Dense integer polynomials (coefficient lists, lowest degree first).

Used for distinguished polynomials over Z/p^n and for the truncated
series arithmetic in :mod:`ilat.iwasawa`.  Functions take plain lists and
an optional modulus; nothing here knows about p-adic precision bookkeeping.
"""

from __future__ import annotations

import re
from math import comb, gcd

from .padic import vp


def trim(a: list[int]) -> list[int]:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def pmod(a, m: int) -> list[int]:
    return [c % m for c in a]


def padd(a, b, m: int | None = None) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    return pmod(out, m) if m else out


def pmul(a, b, m: int | None = None, length: int | None = None) -> list[int]:
    n = len(a) + len(b) - 1
    if length is not None:
        n = min(n, length)
    out = [0] * n
    for i, x in enumerate(a):
        if x == 0 or i >= n:
            continue
        for j in range(min(len(b), n - i)):
            out[i + j] += x * b[j]
    if m:
        out = [c % m for c in out]
    if length is not None and len(out) < length:
        out += [0] * (length - len(out))
    return out


def peval(a, x: int, m: int | None = None) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
        if m:
            acc %= m
    return acc


def divmod_monic(a, b, m: int | None = None) -> tuple[list[int], list[int]]:
    """Quotient and remainder of a by the monic polynomial b."""
    b = trim(b)
    if b[-1] != 1:
        raise ValueError("divisor must be monic")
    d = len(b) - 1
    r = list(a)
    if len(r) <= d:
        rem = r + [0] * (d - len(r)) if d else [0]
        return [0], pmod(rem, m) if m else rem
    q = [0] * (len(r) - d)
    for i in range(len(r) - 1, d - 1, -1):
        c = r[i] % m if m else r[i]
        q[i - d] = c
        if c:
            for j in range(d + 1):
                r[i - d + j] -= c * b[j]
    rem = r[:d] if d else [0]
    if m:
        q = pmod(q, m)
        rem = pmod(rem, m)
    return q, rem


def hasse_derivative(a, k: int) -> list[int]:
    """k-th Hasse derivative: sum binom(i, k) a_i x^(i-k)."""
    if k >= len(a):
        return [0]
    return [comb(i, k) * a[i] for i in range(k, len(a))]


def from_roots(roots, m: int | None = None) -> list[int]:
    out = [1]
    for r in roots:
        out = pmul(out, [-r, 1], m)
    return out


def newton_polygon(a, p: int, n: int) -> list[tuple[int, int]]:
    """Vertices of the lower convex hull of (i, v_p(a_i)); zero residues mod p^n are dropped."""
    pts = [(i, vp(c, p)) for i, c in enumerate(a) if c % p**n]
    hull: list[tuple[int, int]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it lies strictly below the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_segments(a, p: int, n: int) -> list[tuple[int, int, int, int]]:
    """Segments (x0, y0, x1, y1) of the Newton polygon, left to right."""
    hull = newton_polygon(a, p, n)
    return [(hull[i][0], hull[i][1], hull[i + 1][0], hull[i + 1][1]) for i in range(len(hull) - 1)]


def single_slope_certificate(a, p: int, n: int) -> str | None:
    """Irreducibility certificate for a monic polynomial whose Newton polygon is one
    segment from (0, v) to (d, 0) with gcd(v, d) = 1."""
    segs = newton_segments(a, p, n)
    d = len(trim(a)) - 1
    if len(segs) != 1 or segs[0][0] != 0 or segs[0][2] != d or d < 1:
        return None
    v = segs[0][1]
    if gcd(v, d) != 1:
        return None
    if d == 1:
        return "degree-1"
    return "eisenstein" if v == 1 else "newton-single-slope"


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(T(?:\^(\d+))?)?")


def parse_poly(text: str) -> list[int]:
    """Parse an integer polynomial in T such as ``T^2+3*T-10``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        mt = _TERM.match(s, pos)
        if not mt or mt.end() == pos or (not mt.group(2) and not mt.group(3)):
            raise ValueError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        sign = -1 if mt.group(1) == "-" else 1
        if pos > 0 and not mt.group(1):
            raise ValueError(f"missing operator in {text!r}")
        c = int(mt.group(2)) if mt.group(2) else 1
        if mt.group(3):
            deg = int(mt.group(4)) if mt.group(4) else 1
        else:
            deg = 0
        coeffs[deg] = coeffs.get(deg, 0) + sign * c
        pos = mt.end()
    out = [0] * (max(coeffs) + 1)
    for d, c in coeffs.items():
        out[d] = c
    return trim(out)


def format_poly(a, var: str = "T") -> str:
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        body = str(mag) if (mag != 1 or not mono) else ""
        if body and mono:
            body += "*"
        term = body + mono
        sign = "-" if c < 0 else "+"
        parts.append((sign, term))
    if not parts:
        return "0"
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, term in parts[1:]:
        out += sign + term
    return out
