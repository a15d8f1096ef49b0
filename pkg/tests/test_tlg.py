import json
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from tlgorders.baseline import BaselineSpec, exponential
from tlgorders.errors import DomainError
from tlgorders.tlg import (
    TLGParams,
    tlg_cdf,
    tlg_hazard,
    tlg_pdf,
    tlg_quantile,
    tlg_sample,
    tlg_survival,
)

from conftest import BASELINES, mp_tlg

shape = st.floats(0.1, 10.0)


def test_cdf_examples(exp1):
    p = TLGParams(1.0, 1.0, exp1)
    assert tlg_cdf(p, 0.5) == pytest.approx(1 - math.exp(-1), abs=1e-15)
    assert tlg_cdf(p, 0.0) == 0.0
    q = TLGParams(0.5, 0.5, exp1)
    oracle = float(mp_tlg(0.5, 0.5, "exponential", {"rate": 1}, 1.0)[0])
    assert oracle == pytest.approx(0.97878, abs=1e-5)
    assert tlg_cdf(q, 1.0) == pytest.approx(oracle, rel=1e-14)


def test_pdf_examples(exp1):
    p = TLGParams(1.0, 1.0, exp1)
    assert tlg_pdf(p, 0.0) == pytest.approx(2.0, rel=1e-15)
    assert tlg_pdf(p, math.log(2)) == pytest.approx(0.5, rel=1e-14)
    for q in [p, TLGParams(3.0, 0.2, exp1), TLGParams(0.3, 0.3, BaselineSpec("uniform01"))]:
        assert tlg_pdf(q, -1e-3) == 0.0


def test_pdf_limits_at_support_infimum(exp1):
    # theta*alpha < 1 diverges, = 1 is finite, > 1 vanishes
    assert tlg_pdf(TLGParams(0.5, 0.5, exp1), 0.0) == math.inf
    assert tlg_pdf(TLGParams(2.0, 0.5, exp1), 0.0) == pytest.approx(2.0 * 2 ** 1.0)
    assert tlg_pdf(TLGParams(2.0, 2.0, exp1), 0.0) == 0.0


def test_survival_examples(exp1):
    p = TLGParams(1.0, 1.0, exp1)
    assert tlg_survival(p, 0.5) == pytest.approx(math.exp(-1), rel=1e-14)
    assert tlg_survival(p, 0.0) == 1.0
    oracle = 1 - mp_tlg(0.5, 0.5, "exponential", {"rate": 1}, 1.0)[0]
    assert float(oracle) == pytest.approx(0.02122, abs=1e-5)
    assert tlg_survival(TLGParams(0.5, 0.5, exp1), 1.0) == pytest.approx(float(oracle), rel=1e-13)


def test_survival_keeps_precision_in_the_tail(exp1):
    p = TLGParams(1.0, 1.0, exp1)
    # 1 - F = exp(-2x) far below machine epsilon
    assert tlg_survival(p, 30.0) == pytest.approx(math.exp(-60.0), rel=1e-12)


def test_hazard_examples(exp1):
    p = TLGParams(1.0, 1.0, exp1)
    np.testing.assert_allclose(tlg_hazard(p, [0.01, 0.7, 5.0, 40.0]), 2.0, rtol=1e-12)
    comp = TLGParams(1.0, 0.5, exp1)
    h = tlg_hazard(comp, np.linspace(1e-6, 10.0, 400))
    assert np.all(np.isfinite(h)) and np.all(h > 0)
    assert tlg_hazard(p, 500.0) == math.inf


def test_hazard_domain(exp1):
    with pytest.raises(DomainError):
        tlg_hazard(TLGParams(1.0, 1.0, exp1), 0.0)
    with pytest.raises(DomainError):
        tlg_hazard(TLGParams(1.0, 1.0, BaselineSpec("uniform01")), 1.0)


def test_quantile_examples(exp1):
    assert tlg_quantile(TLGParams(1.0, 1.0, exp1), 0.75) == pytest.approx(math.log(2), rel=1e-15)
    assert tlg_quantile(TLGParams(1.0, 1.0, exp1), 0.0) == 0.0
    # y = 1 - sqrt(1 - 0.25^(1/2)) = 1 - sqrt(0.5); x = -ln(1 - y)
    p = TLGParams(2.0, 1.0, exp1)
    x = tlg_quantile(p, 0.25)
    assert x == pytest.approx(-math.log(math.sqrt(0.5)), rel=1e-14)
    assert x == pytest.approx(0.3465736, abs=1e-7)
    assert tlg_cdf(p, x) == pytest.approx(0.25, abs=1e-15)


def test_quantile_domain(exp1):
    with pytest.raises(DomainError):
        tlg_quantile(TLGParams(1.0, 1.0, exp1), 1.5)


def test_invalid_params(exp1):
    for a, t in [(0.0, 1.0), (1.0, -2.0), (math.nan, 1.0), (1.0, math.inf)]:
        with pytest.raises(DomainError):
            TLGParams(a, t, exp1)


def test_sample_contract(exp1):
    p = TLGParams(1.0, 1.0, exp1)
    assert tlg_sample(p, np.random.default_rng(0), 0).size == 0
    a = tlg_sample(p, np.random.default_rng(123), 50)
    b = tlg_sample(p, np.random.default_rng(123), 50)
    assert np.array_equal(a, b)
    with pytest.raises(DomainError):
        tlg_sample(p, np.random.default_rng(0), -1)


def test_sample_distribution(exp1):
    p = TLGParams(1.0, 1.0, exp1)
    draws = tlg_sample(p, np.random.default_rng(99), 100_000)
    res = stats.kstest(draws, lambda x: tlg_cdf(p, x))
    assert res.statistic < 0.01


def test_special_case_identity(exp1):
    p = TLGParams(1.0, 1.0, exp1)
    x = np.linspace(0.0, 12.0, 600)
    np.testing.assert_allclose(tlg_cdf(p, x), -np.expm1(-2 * x), rtol=0, atol=1e-12)


@pytest.mark.parametrize("alpha", [0.3, 1.0, 2.5, 7.0])
def test_topp_leone_special_case(alpha):
    p = TLGParams(alpha, 1.0, BaselineSpec("uniform01"))
    x = np.linspace(0.0, 1.0, 257)
    np.testing.assert_allclose(tlg_cdf(p, x), (x * (2 - x)) ** alpha, rtol=0, atol=1e-12)


@pytest.mark.parametrize("spec", BASELINES, ids=lambda b: b.family)
@pytest.mark.parametrize("alpha, theta", [(0.1, 0.1), (0.1, 10.0), (10.0, 0.1), (3.0, 0.7), (10.0, 10.0)])
def test_against_extended_precision(spec, alpha, theta):
    p = TLGParams(alpha, theta, spec)
    xs = tlg_quantile(p, np.array([0.002, 0.1, 0.5, 0.9, 0.998]))
    for x in xs:
        F, f = mp_tlg(alpha, theta, spec.family, spec.params, x)
        assert tlg_cdf(p, x) == pytest.approx(float(F), rel=1e-11)
        assert tlg_survival(p, x) == pytest.approx(float(1 - F), rel=1e-9)
        assert tlg_pdf(p, x) == pytest.approx(float(f), rel=1e-9)


@settings(max_examples=60, deadline=None)
@given(alpha=shape, theta=shape, which=st.integers(0, len(BASELINES) - 1))
def test_cdf_survival_complement_and_monotone(alpha, theta, which):
    p = TLGParams(alpha, theta, BASELINES[which])
    x = np.asarray(tlg_quantile(p, np.linspace(0.0005, 0.9995, 300)))
    F, S = tlg_cdf(p, x), tlg_survival(p, x)
    assert np.max(np.abs(F + S - 1.0)) <= 1e-12
    assert np.all(np.diff(F) >= 0)


@settings(max_examples=60, deadline=None)
@given(alpha=shape, theta=shape, which=st.integers(0, len(BASELINES) - 1))
def test_quantile_roundtrip(alpha, theta, which):
    spec = BASELINES[which]
    if spec.family == "weibull" and spec.params["shape"] < 1:
        # x itself underflows double precision for the smallest quantiles
        spec = BASELINES[0]
    p = TLGParams(alpha, theta, spec)
    u = np.linspace(0.001, 0.999, 999)
    assert np.max(np.abs(tlg_cdf(p, tlg_quantile(p, u)) - u)) <= 1e-10


def central_difference_check(p):
    x = np.asarray(tlg_quantile(p, np.linspace(0.02, 0.98, 60)))
    h = 1e-5 * x
    # differentiate whichever of F and 1 - F is smaller to avoid cancellation
    F_up, F_dn = tlg_cdf(p, x + h), tlg_cdf(p, x - h)
    S_up, S_dn = tlg_survival(p, x + h), tlg_survival(p, x - h)
    use_s = tlg_cdf(p, x) > 0.5
    fd = np.where(use_s, (S_dn - S_up), (F_up - F_dn)) / (2 * h)
    return fd, tlg_pdf(p, x)


@settings(max_examples=60, deadline=None)
@given(alpha=shape, theta=shape, which=st.integers(0, len(BASELINES) - 1))
def test_pdf_matches_finite_difference(alpha, theta, which):
    p = TLGParams(alpha, theta, BASELINES[which])
    fd, pdf = central_difference_check(p)
    np.testing.assert_allclose(fd, pdf, rtol=1e-6)


def test_json_roundtrip(exp1):
    p = TLGParams(2.0, 0.5, exp1)
    data = json.loads(json.dumps(p.to_dict()))
    assert data == {"alpha": 2.0, "theta": 0.5, "baseline": {"family": "exponential", "params": {"rate": 1.0}}}
    assert TLGParams.from_dict(data) == p
    with pytest.raises(DomainError):
        TLGParams.from_dict({"alpha": 1.0})
