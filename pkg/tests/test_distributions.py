import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import chisq_cdf_oracle, chisq_quantile_oracle, normal_quantile_oracle
from spwn.distributions import (
    RngStream,
    chisq_cdf,
    chisq_quantile,
    chisq_sf,
    normal_quantile,
    regularized_gamma,
    sample_std_normal,
    sample_std_t3,
    stream_id_for,
)
from spwn.errors import DomainError

# Frozen from the erf-bisection and incomplete-gamma oracles in oracles.py.
Z975 = 1.959963984540054
CHI2_95_1 = 3.841458820694124


def test_frozen_values_match_oracles():
    assert normal_quantile_oracle(0.975) == pytest.approx(Z975, abs=1e-12)
    assert chisq_quantile_oracle(0.95, 1) == pytest.approx(CHI2_95_1, abs=1e-9)


def test_normal_quantile_examples():
    assert normal_quantile(0.5) == 0.0
    assert normal_quantile(0.975) == pytest.approx(Z975, abs=1e-9)


@pytest.mark.parametrize("p", [1e-10, 1e-4, 0.01, 0.2, 0.5, 0.8, 0.99, 1 - 1e-6])
def test_normal_quantile_against_oracle(p):
    assert normal_quantile(p) == pytest.approx(normal_quantile_oracle(p), abs=1e-9)


# 1 - p must be close to exact for the comparison to be meaningful.
@given(st.floats(1e-6, 1 - 1e-6))
def test_normal_quantile_symmetry(p):
    assert normal_quantile(p) == pytest.approx(-normal_quantile(1 - p), abs=1e-9)


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5])
def test_normal_quantile_domain(p):
    with pytest.raises(DomainError):
        normal_quantile(p)


def test_chisq_examples():
    for k in (1, 2, 10):
        assert chisq_cdf(0, k) == 0.0
    assert chisq_quantile(0.95, 1) == pytest.approx(CHI2_95_1, abs=1e-6)


@pytest.mark.parametrize("k", [1, 2, 3, 5, 10, 20, 50])
@pytest.mark.parametrize("x", [0.01, 0.5, 1.0, 3.84, 10.0, 30.0, 100.0])
def test_chisq_cdf_against_oracle(x, k):
    assert chisq_cdf(x, k) == pytest.approx(chisq_cdf_oracle(x, k), abs=1e-13)


def test_chisq_sf_deep_tail():
    from scipy.special import gammaincc

    assert chisq_sf(200.0, 5) == pytest.approx(float(gammaincc(2.5, 100.0)), rel=1e-10)
    assert chisq_sf(0.0, 3) == 1.0


@given(st.floats(1e-6, 1 - 1e-6), st.integers(1, 60))
def test_chisq_round_trip(p, k):
    assert chisq_cdf(chisq_quantile(p, k), k) == pytest.approx(p, abs=1e-9)


@given(st.floats(0, 200), st.floats(0, 200), st.integers(1, 30))
def test_chisq_cdf_monotone(x, y, k):
    lo, hi = sorted((x, y))
    assert chisq_cdf(lo, k) <= chisq_cdf(hi, k) + 1e-15


def test_chisq_quantile_monotone():
    ps = np.linspace(0.01, 0.99, 50)
    q = [chisq_quantile(p, 7) for p in ps]
    assert np.all(np.diff(q) > 0)


def test_regularized_gamma_complements():
    for a, x in [(0.5, 0.1), (3.0, 2.0), (3.0, 5.0), (10.0, 30.0)]:
        p, q = regularized_gamma(a, x)
        assert p + q == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("args", [(-1.0, 1), (1.0, 0), (1.0, 2.5)])
def test_chisq_domain(args):
    with pytest.raises(DomainError):
        chisq_cdf(*args)
    with pytest.raises(DomainError):
        chisq_quantile(0.0, 1)


def test_stream_determinism_and_identity():
    a = sample_std_normal(RngStream(7, 3), 1000)
    b = sample_std_normal(RngStream(7, 3), 1000)
    np.testing.assert_array_equal(a, b)
    assert RngStream(7, 3) == RngStream(7, 3)
    assert RngStream(7, 3) != RngStream(7, 4)
    assert len({RngStream(7, 3), RngStream(7, 3)}) == 1


def test_stream_order_independent():
    ids = list(range(20))
    forward = {i: sample_std_normal(RngStream(11, i), 50) for i in ids}
    backward = {i: sample_std_normal(RngStream(11, i), 50) for i in reversed(ids)}
    for i in ids:
        np.testing.assert_array_equal(forward[i], backward[i])


def test_stream_independence():
    n = 100_000
    streams = [sample_std_normal(RngStream(5, stream_id_for(g, r)), n) for g in range(2) for r in range(3)]
    for i in range(len(streams)):
        for j in range(i + 1, len(streams)):
            for lag in (0, 1, 2):
                a, b = streams[i][: n - lag], streams[j][lag:]
                assert abs(np.corrcoef(a, b)[0, 1]) < 4 / np.sqrt(n)


def test_stream_validation():
    with pytest.raises(DomainError):
        RngStream(-1)
    with pytest.raises(DomainError):
        RngStream(0, 2**64)
    with pytest.raises(DomainError):
        stream_id_for(2**32, 0)
    assert stream_id_for(1, 2) == 2**32 + 2


def test_scalar_draws():
    rng = RngStream(3)
    assert np.ndim(sample_std_normal(rng)) == 0
    assert np.ndim(sample_std_t3(rng)) == 0


@pytest.fixture(scope="module")
def normal_draws():
    return sample_std_normal(RngStream(2024, 1), 1_000_000)


@pytest.fixture(scope="module")
def t3_draws():
    return sample_std_t3(RngStream(2024, 2), 1_000_000)


def test_normal_moments(normal_draws):
    assert abs(normal_draws.mean()) < 0.005
    assert abs(normal_draws.var() - 1) < 0.01


def test_t3_moments(t3_draws):
    assert abs(t3_draws.mean()) < 0.01
    assert abs(t3_draws.var() - 1) < 0.05
    assert abs(np.mean(t3_draws <= 0) - 0.5) < 0.002


def test_t3_heavy_tail(t3_draws):
    d = t3_draws - t3_draws.mean()
    kurt = np.mean(d**4) / np.mean(d**2) ** 2
    assert kurt > 9


def test_t3_distribution_shape(t3_draws):
    from scipy import stats

    # Standardized t_3: P(X <= x) = T_3(x * sqrt(3)).
    for x in (-2.0, -0.5, 0.3, 1.0, 2.5):
        emp = np.mean(t3_draws <= x)
        assert emp == pytest.approx(stats.t.cdf(x * np.sqrt(3), 3), abs=0.002)
