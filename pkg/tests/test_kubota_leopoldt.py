from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ilat.bernoulli import lp_value
from ilat.errors import EvenCharacter
from ilat.iwasawa import IwasawaSeries, specialize
from ilat.kubota_leopoldt import (
    KLSeries,
    default_weights,
    factorization_of,
    interpolation_target,
    iwasawa_invariants,
    kl_factorization,
    kl_series,
    verify_interpolation,
)
from ilat.padic import fraction_mod, valuation


def test_default_weights_hold_out_m_plus_2():
    assert default_weights(4, 7) == [2, 3, 4, 5, 7, 8, 9]
    for M in range(2, 10):
        assert M + 2 not in default_weights(M, 2 * M + 5)


def test_p5_j1_example():
    kl = kl_series(5, 1, 2, 3)
    assert kl.series.residues[0] % 5 == 2
    assert kl.series.residues[0] == fraction_mod(Fraction(1, 3), 5, 2)
    assert iwasawa_invariants(kl) == (0, 0)
    assert kl_factorization(kl).factors == ()
    rows = verify_interpolation(kl, [2])
    assert rows[0].ok and rows[0].lhs.residue % 5 == 2 and rows[0].rhs.residue % 5 == 2


def test_691_example():
    kl = kl_series(691, 11, 3, 3)
    assert iwasawa_invariants(kl) == (0, 1)
    fact = kl_factorization(kl)
    assert fact.mu == 0 and len(fact.factors) == 1
    (f, e), = fact.factors
    assert f.degree == 1 and e == 1 and f.certificate == "degree-1"
    w12 = specialize(kl.series, 12)
    assert valuation(w12) == 1
    assert w12 == lp_value(691, 12, 12, w12.precision)
    # two different specializations of valuation exactly 1 are only possible with lambda = 1
    assert valuation(specialize(kl.series, 2)) == 1
    assert specialize(kl.series, 2) != w12


def test_even_character_rejected():
    with pytest.raises(EvenCharacter):
        kl_series(5, 2, 3, 3)


def test_synthetic_series_factorizations():
    p = 7
    f = IwasawaSeries.from_coeffs(p, 5, [7, 7], 4)
    fact = factorization_of(f)
    assert fact.mu == 1 and fact.factors == ()
    g = IwasawaSeries.from_coeffs(p, 5, [49, 7], 4)
    fact = factorization_of(g)
    assert fact.mu == 1 and [x.poly for x, _ in fact.factors] == [(7, 1)]


def test_corrupted_series_fails_verification():
    kl = kl_series(5, 1, 3, 3)
    res = list(kl.series.residues)
    res[0] += 1
    bad = replace(kl, series=IwasawaSeries.from_coeffs(5, 3, res, 3))
    rows = verify_interpolation(bad, [2])
    assert not rows[0].ok


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([5, 7, 11, 13]), st.integers(min_value=0, max_value=20), st.integers(min_value=2, max_value=5),
       st.integers(min_value=2, max_value=5))
def test_interpolates_construction_and_held_out_weights(p, half, N, M):
    j = (2 * half + 1) % (p - 1)
    kl = kl_series(p, j, N, M)
    rows = verify_interpolation(kl, list(kl.weights) + [M + 2, M + 7])
    assert all(r.ok for r in rows)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([5, 7, 13]), st.integers(min_value=0, max_value=20), st.integers(min_value=2, max_value=4))
def test_series_does_not_depend_on_the_node_set(p, half, M):
    # the Iwasawa function is unique, so different weights give the same truncation
    j = (2 * half + 1) % (p - 1)
    N = 3
    a = kl_series(p, j, N, M)
    b = kl_series(p, j, N, M, weights=list(range(M + 3, M + 3 + N + M - 1)))
    assert a.series == b.series


def test_omega_minus_one_branch():
    # chi = omega^-1: the target carries the factor (u^k - 1) that cancels the pole
    p = 7
    kl = kl_series(p, p - 2, 3, 3)
    for k in (2, 3, 4):
        t = interpolation_target(p, p - 2, k, 3)
        assert specialize(kl.series, k).with_precision(1) == t.to_padic(1)
    assert all(r.ok for r in verify_interpolation(kl, range(2, 8)))


def test_known_lambda_at_37():
    # 37 is irregular at k = 32, so the omega^31 branch has a zero
    kl = kl_series(37, 31, 3, 3)
    assert iwasawa_invariants(kl) == (0, 1)
    kl = kl_series(37, 1, 3, 3)
    assert iwasawa_invariants(kl) == (0, 0)


def test_json_round_trip():
    kl = kl_series(7, 3, 3, 4)
    assert KLSeries.from_json(kl.to_json()) == kl
