from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ilat.errors import DenominatorNotUnit, InsufficientPrecision, NotAUnit, PrecisionMismatch
from ilat.padic import (
    AtLeast,
    PAdicInt,
    fraction_mod,
    from_rational,
    is_prime,
    log_exponent,
    one_unit_part,
    primes_up_to,
    teichmuller,
    valuation,
    vp,
)

PRIMES = [3, 5, 7, 11, 13, 691]
primes = st.sampled_from(PRIMES)
precs = st.integers(min_value=1, max_value=8)


def brute_teichmuller(a, p, N):
    # the unique x = a mod p with x^(p-1) = 1 mod p^N, found by search
    m = p**N
    for t in range(p ** (N - 1)):
        x = (a % p) + p * t
        if pow(x, p - 1, m) == 1:
            return x
    raise AssertionError("no root of unity found")


def test_primes():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(691) and not is_prime(693)


@pytest.mark.parametrize("num,den,p,N,expected", [(0, 1, 5, 3, 0), (7, 1, 5, 2, 7), (1, 3, 5, 1, 2)])
def test_from_rational_examples(num, den, p, N, expected):
    assert from_rational(num, den, p, N).residue == expected


def test_from_rational_rejects_p_in_denominator():
    with pytest.raises(DenominatorNotUnit):
        from_rational(1, 10, 5, 3)
    with pytest.raises(ValueError):
        from_rational(1, 3, 2, 3)


def test_valuation_examples():
    assert valuation(PAdicInt(5, 4, 0)) == AtLeast(4)
    assert valuation(PAdicInt(5, 4, 50)) == 2
    assert valuation(PAdicInt(5, 2, 7)) == 0


def test_teichmuller_examples():
    assert teichmuller(1, 5, 4).residue == 1
    assert teichmuller(4, 5, 4).residue == 5**4 - 1
    assert teichmuller(2, 5, 2).residue == 7
    with pytest.raises(NotAUnit):
        teichmuller(10, 5, 3)


def test_one_unit_part_examples():
    p, N = 5, 2
    assert one_unit_part(teichmuller(2, p, N)).residue == 1
    assert one_unit_part(PAdicInt(p, N, 1 + p)).residue == 1 + p
    # 2(1+p) = 12 and omega(2) = 7 mod 25, so <12> = 12 * 7^-1 = 12 * 18 = 216 = 16
    a = PAdicInt(p, N, 2 * (1 + p))
    assert one_unit_part(a).residue == 16
    assert (one_unit_part(a) * teichmuller(2, p, N)).residue == a.residue


def test_log_exponent_examples():
    p, N = 5, 6
    u = 1 + p
    assert log_exponent(PAdicInt(p, N, u)) == 1
    assert log_exponent(teichmuller(3, p, N)) == 0
    assert log_exponent(PAdicInt(p, N, u * u)) == 2
    with pytest.raises(InsufficientPrecision):
        log_exponent(PAdicInt(p, 1, 2))


@given(st.sampled_from([3, 5, 7, 11, 13]), st.integers(min_value=1, max_value=4), st.integers(min_value=1, max_value=10**6))
def test_teichmuller_matches_search(p, N, a):
    if a % p == 0:
        a += 1
    assert teichmuller(a, p, N).residue == brute_teichmuller(a, p, N)


@given(primes, precs, st.integers(min_value=1))
def test_teichmuller_is_root_of_unity(p, N, a):
    if a % p == 0:
        a += 1
    t = teichmuller(a, p, N)
    assert pow(t.residue, p - 1, p**N) == 1
    assert (t.residue - a) % p == 0


@settings(max_examples=60)
@given(primes, st.integers(min_value=2, max_value=8), st.integers(min_value=-50, max_value=50),
       st.integers(min_value=1, max_value=10**6))
def test_log_exponent_of_power_of_u(p, N, k, w):
    if w % p == 0:
        w += 1
    m = p**N
    a = PAdicInt(p, N, teichmuller(w, p, N).residue * pow(1 + p, k, m))
    assert log_exponent(a) == k


@settings(max_examples=60)
@given(primes, st.integers(min_value=2, max_value=8), st.integers(min_value=1), st.integers(min_value=1))
def test_log_exponent_is_additive(p, N, a, b):
    a = a if a % p else a + 1
    b = b if b % p else b + 1
    x, y = PAdicInt(p, N, a), PAdicInt(p, N, b)
    assert log_exponent(x * y) == log_exponent(x) + log_exponent(y)


@given(primes, precs, st.integers(), st.integers(), st.integers())
def test_ring_axioms(p, N, a, b, c):
    x, y, z = (PAdicInt(p, N, v) for v in (a, b, c))
    assert x + y == y + x
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x - x == 0


@given(primes, precs, st.integers(), st.integers(min_value=1))
def test_from_rational_inverts_multiplication(p, N, num, den):
    if den % p == 0:
        den += 1
    x = from_rational(num, den, p, N)
    assert (x * den) == num
    assert x.residue == fraction_mod(Fraction(num, den), p, N)


@given(primes, precs, st.integers())
def test_inverse(p, N, a):
    x = PAdicInt(p, N, a)
    if x.is_unit():
        assert x * x.inverse() == 1
    else:
        with pytest.raises(NotAUnit):
            x.inverse()


def test_mixed_precision_truncates_and_rejects_other_primes():
    x = PAdicInt(5, 4, 101) + PAdicInt(5, 2, 3)
    assert x.precision == 2 and x.residue == (104 % 25)
    with pytest.raises(PrecisionMismatch):
        PAdicInt(5, 2, 1) + PAdicInt(7, 2, 1)


def test_json_round_trip():
    x = PAdicInt(691, 5, 123456789)
    assert PAdicInt.from_json(x.to_json()) == x
    assert x.to_json()["residue"] == str(x.residue)


def test_vp():
    assert vp(0, 5) is None
    assert vp(-250, 5) == 3
