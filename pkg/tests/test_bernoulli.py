from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from ilat.bernoulli import (
    OmegaPowerCharacter,
    bernoulli,
    bernoulli_polynomial,
    generalized_bernoulli,
    is_irregular_pair,
    lp_value,
    scaled_generalized_bernoulli,
    scan_irregular_pairs,
)
from ilat.errors import DenominatorNotUnit, InsufficientPrecision, RangeError
from ilat.padic import fraction_mod, teichmuller, valuation, vp


def akiyama_tanigawa(n):
    # returns B_0..B_n with B_1 = +1/2
    out = []
    a = []
    for m in range(n + 1):
        a.append(Fraction(1, m + 1))
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    return out


AT = akiyama_tanigawa(60)


def oracle_bernoulli(k):
    return Fraction(-1, 2) if k == 1 else AT[k]


def oracle_poly_value(n, x: Fraction) -> Fraction:
    return sum(comb(n, k) * oracle_bernoulli(k) * x ** (n - k) for k in range(n + 1))


def direct_generalized(n, p, j, W):
    """B_{n,chi} = p^(n-1) sum_a chi(a) B_n(a/p) as (S, e) with value S / p^e."""
    terms = [(a, p ** (n - 1) * oracle_poly_value(n, Fraction(a, p))) for a in range(1, p)]
    e = max(0, max(-(vp(t.numerator, p) - vp(t.denominator, p)) for _, t in terms if t))
    m = p ** (W + e)
    S = 0
    for a, t in terms:
        chi = pow(teichmuller(a, p, W + e).residue, j, m)
        S += chi * fraction_mod(t * p**e, p, W + e)
    return S % m, e


def same_scaled(sv, S, e, W):
    p = sv.p
    return (sv.S * p**e - S * p**sv.shift) % p ** (W + e + sv.shift) == 0


def test_bernoulli_examples():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(12) == Fraction(-691, 2730)
    assert bernoulli(13) == 0


def test_bernoulli_matches_akiyama_tanigawa():
    for k in range(61):
        assert bernoulli(k) == oracle_bernoulli(k)


def test_von_staudt_clausen_denominators():
    for k in range(2, 120, 2):
        d = 1
        for p in range(2, k + 2):
            if all(p % q for q in range(2, p)) and k % (p - 1) == 0:
                d *= p
        assert bernoulli(k).denominator == d


def test_bernoulli_polynomial():
    # B_2(x) = x^2 - x + 1/6
    assert bernoulli_polynomial(2) == [Fraction(1, 6), -1, 1]


def test_irregular_pair_examples():
    assert is_irregular_pair(691, 12)
    assert is_irregular_pair(547, 486)
    assert is_irregular_pair(37, 32)
    assert not is_irregular_pair(7, 4)
    with pytest.raises(RangeError):
        is_irregular_pair(5, 4)
    with pytest.raises(RangeError):
        is_irregular_pair(37, 33)


def test_scan_examples():
    assert scan_irregular_pairs(30) == []
    assert (37, 32) in scan_irregular_pairs(37)
    assert (691, 12) in scan_irregular_pairs(691)


def test_scan_matches_exact_oracle_below_200():
    expected = [(p, k) for p in range(3, 201) if all(p % q for q in range(2, p))
                for k in range(2, p - 2, 2) if bernoulli(k).numerator % p == 0]
    assert scan_irregular_pairs(200) == expected


def test_scan_is_independent_of_worker_count():
    assert scan_irregular_pairs(120, workers=3) == scan_irregular_pairs(120)


def test_generalized_bernoulli_examples():
    p, N = 7, 5
    assert generalized_bernoulli(2, OmegaPowerCharacter(p, 0), N).residue == fraction_mod(Fraction(1, 6), p, N)
    assert generalized_bernoulli(2, OmegaPowerCharacter(p, 3), N).residue == 0
    # B_{2, omega^2} at p = 5 is 4/5, so it has no residue in Z_5
    sv = scaled_generalized_bernoulli(2, OmegaPowerCharacter(5, 2), 4)
    S, e = direct_generalized(2, 5, 2, 4)
    assert same_scaled(sv, S, e, 4)
    assert sv.valuation == -1
    with pytest.raises(DenominatorNotUnit):
        generalized_bernoulli(2, OmegaPowerCharacter(5, 2), 4)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7, 11, 13]), st.integers(min_value=1, max_value=12), st.integers(min_value=0, max_value=20),
       st.integers(min_value=1, max_value=6))
def test_generalized_bernoulli_matches_direct_sum(p, n, j, W):
    chi = OmegaPowerCharacter(p, j)
    sv = scaled_generalized_bernoulli(n, chi, W)
    if chi.is_trivial:
        b = Fraction(1, 2) if n == 1 else oracle_bernoulli(n)
        e = max(0, -(vp(b.numerator, p) - vp(b.denominator, p))) if b else 0
        S = fraction_mod(b * p**e, p, W + e)
    else:
        S, e = direct_generalized(n, p, chi.j, W)
    assert same_scaled(sv, S, e, W)


def test_lp_value_examples():
    assert lp_value(5, 2, 2, 6).residue == fraction_mod(Fraction(1, 3), 5, 6)
    assert lp_value(5, 2, 2, 1).residue == 2
    p = 691
    v = lp_value(p, 12, 12, 4)
    expected = -(1 - Fraction(p) ** 11) * Fraction(-691, 2730) / 12
    assert v.residue == fraction_mod(expected, p, 4)
    assert valuation(v) == 1
    with pytest.raises(ValueError):
        lp_value(5, 1, 2, 3)
    # L_p(s, 1) has a pole at s = 1, so its values near it are not integral
    with pytest.raises(InsufficientPrecision):
        lp_value(5, 0, 4, 3)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([5, 7, 11]), st.integers(min_value=1, max_value=4), st.integers(min_value=1, max_value=12),
       st.integers(min_value=1, max_value=2))
def test_kummer_congruences(p, half_m, n, a):
    # L_p(1-n, omega^m) is continuous in n: n = n' mod (p-1)p^(a-1) gives congruence mod p^a
    m = (2 * half_m) % (p - 1)
    if m == 0:
        m = 2
    n2 = n + (p - 1) * p ** (a - 1)
    x, y = lp_value(p, m, n, a + 2), lp_value(p, m, n2, a + 2)
    assert (x.residue - y.residue) % p**a == 0


def test_omega_character():
    chi = OmegaPowerCharacter(7, 13)
    assert chi.j == 1 and chi.parity == -1 and chi.conductor == 7
    assert OmegaPowerCharacter(7, 6).is_trivial
    assert chi(3, 4) == teichmuller(3, 7, 4)
    assert chi(7, 4) == 0
