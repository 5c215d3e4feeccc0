import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypercauchy import distributions as d
from hypercauchy.errors import DomainError
from hypercauchy.numerics import ks_critical_value, ks_statistic, ks_two_sample
from hypercauchy.sampling import (
    SAMPLER_LAWS,
    RngState,
    SampleBatch,
    draw_batch,
    draw_batch_parallel,
    sample_asym_cauchy,
    sample_cauchy,
    sample_component_exact,
    sample_folded,
    sample_hyper_cauchy,
    sample_stable13,
    sample_symmetrized,
    sample_third_order,
)
from hypercauchy.special import stable13_subordinator_cdf

N = 100_000
CRIT = ks_critical_value(N)
CRIT2 = ks_critical_value(N, m=N)


def test_rng_determinism_and_streams():
    a = RngState(123).uniform_open(5)
    b = RngState(123).uniform_open(5)
    c = RngState(123, stream=1).uniform_open(5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert np.all((a > 0) & (a < 1))


@pytest.mark.parametrize("seed", [-1, 2**64, 1.5, True])
def test_rng_seed_validation(seed):
    with pytest.raises(DomainError):
        RngState(seed)


def test_rng_spawn_is_deterministic():
    kids = RngState(9).spawn(3)
    assert [k.stream for k in kids] == [1, 2, 3]
    assert np.array_equal(kids[0].uniform_open(4), RngState(9, 1).uniform_open(4))


@pytest.mark.parametrize("law,params", [
    ("cauchy", {}), ("hyper", {"n": 3}), ("asym", {"k": 2}), ("asym_m", {"m": 5}), ("third", {}),
    ("stable13", {}), ("component", {"n": 3, "k": 3}), ("folded", {"n": 3, "k": 1}),
    ("symmetrized", {"n": 3, "k": 1}), ("sign_symmetrized", {"n": 3, "k": 1}),
])
def test_every_sampler_bit_identical(law, params):
    a = draw_batch(law, 500, 2024, **params)
    b = draw_batch(law, 500, 2024, **params)
    assert a.values.tobytes() == b.values.tobytes()
    assert a.to_csv() == b.to_csv()
    assert law in SAMPLER_LAWS


def test_scalar_and_array_draws():
    c = d.ComponentSpec(3, 1, 1.0)
    assert isinstance(sample_cauchy(0.0, 1.0, RngState(1)), float)
    assert isinstance(sample_folded(c, RngState(1)), float)
    assert isinstance(sample_symmetrized(c, RngState(1)), float)
    assert isinstance(sample_stable13(1.0, 5), float)  # integer seeds are accepted
    assert sample_hyper_cauchy(d.HyperCauchyParams(2), RngState(1), size=7).shape == (7,)


@pytest.mark.parametrize("size", [0, -3, 2.5])
def test_size_validation(size):
    with pytest.raises(DomainError):
        sample_cauchy(0.0, 1.0, RngState(1), size)


def test_scale_and_method_validation():
    with pytest.raises(DomainError):
        sample_cauchy(0.0, -1.0, RngState(1))
    with pytest.raises(DomainError):
        sample_third_order(0.0, RngState(1))
    with pytest.raises(DomainError):
        sample_stable13(-1.0, RngState(1))
    with pytest.raises(DomainError):
        sample_symmetrized(d.ComponentSpec(3, 1, 1.0), RngState(1), 4, method="mirror")
    with pytest.raises(DomainError):
        draw_batch("nope", 10, 1)


# --- distributional fidelity (one-sample KS, N = 1e5, alpha = 1%) --------------

@pytest.mark.parametrize("n", [2, 4])
def test_ks_hyper_cauchy(n):
    p = d.HyperCauchyParams(n, 1.0)
    x = sample_hyper_cauchy(p, RngState(11), N)
    assert ks_statistic(x, lambda v: d.hyper_cauchy_cdf(v, p)) < CRIT


@pytest.mark.parametrize("k", [1, 2])
def test_ks_asym(k):
    p = d.AsymCauchyParams.from_k(k, 1.0)
    x = sample_asym_cauchy(p, RngState(12), N)
    assert ks_statistic(x, lambda v: d.asym_cauchy_cdf(v, p)) < CRIT


def test_ks_third_order():
    x = sample_third_order(1.0, RngState(13), N)
    assert ks_statistic(x, lambda v: d.asym_cauchy_cdf(v, d.third_order_params(1.0))) < CRIT


def test_ks_stable13():
    x = sample_stable13(1.0, RngState(14), N)
    assert np.all(x > 0)
    assert ks_statistic(x, lambda v: stable13_subordinator_cdf(v, 1.0)) < CRIT


def test_stable13_self_similar():
    # S(2) has the law of 8 S(1)
    a = sample_stable13(2.0, RngState(15), N)
    b = 8.0 * sample_stable13(1.0, RngState(16), N)
    assert ks_two_sample(a, b) < CRIT2


@pytest.mark.parametrize("n,k", [(3, 1), (3, 3), (4, 5)])
def test_ks_component_exact(n, k):
    c = d.ComponentSpec(n, k, 1.0)
    x = sample_component_exact(c, RngState(17), N)
    assert ks_statistic(x, lambda v: d.component_cdf(v, c)) < CRIT


@pytest.mark.parametrize("n,k", [(3, 1), (3, 3)])
def test_folded_positive_and_ks(n, k):
    c = d.ComponentSpec(n, k, 1.0)
    w = sample_folded(c, RngState(18), N)
    assert np.all(w >= 0)
    assert ks_statistic(w, lambda v: d.folded_cdf(v, c)) < CRIT


@pytest.mark.parametrize("n,k", [(3, 1), (3, 3)])
def test_random_sign_symmetrization_reproduces_component(n, k):
    c = d.ComponentSpec(n, k, 1.0)
    z = sample_symmetrized(c, RngState(19), N, method="random_sign")
    assert ks_statistic(z, lambda v: d.component_cdf(v, c)) < CRIT
    assert ks_two_sample(z, sample_component_exact(c, RngState(20), N)) < CRIT2


@pytest.mark.parametrize("n,k", [(3, 1), (3, 3)])
def test_half_difference_is_a_different_law(n, k):
    # (W1 - W2)/2 has characteristic function |phi_W(beta/2)|^2 >= 0, while
    # that of h_k changes sign; the two-sample test separates them easily
    c = d.ComponentSpec(n, k, 1.0)
    z = sample_symmetrized(c, RngState(21), N)
    exact = sample_component_exact(c, RngState(22), N)
    assert ks_two_sample(z, exact) > 5 * CRIT2
    # the half-difference is still symmetric about zero
    assert abs(np.mean(z > 0) - 0.5) < 4 * math.sqrt(0.25 / N)


def test_half_difference_cf_is_nonnegative():
    c = d.ComponentSpec(3, 3, 1.0)
    z = sample_symmetrized(c, RngState(23), N)
    betas = np.linspace(0.5, 4.0, 8)
    emp = np.array([np.mean(np.cos(b * z)) for b in betas])
    target = np.array([np.exp(-b * c.cauchy_scale) * np.cos(b * c.cauchy_location) for b in betas])
    assert np.all(emp > -4 / math.sqrt(N))
    assert np.any(target < -0.05)


def test_hyper_cauchy_positive_fraction_symmetric():
    x = sample_hyper_cauchy(d.HyperCauchyParams(3, 1.0), RngState(24), N)
    assert abs(np.mean(x > 0) - 0.5) < 3 * math.sqrt(0.25 / N)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_asym_positive_fraction(k):
    p = d.AsymCauchyParams.from_k(k, 1.0)
    x = sample_asym_cauchy(p, RngState(25), N)
    q = 0.5 * (1 + (-1) ** k / (2 * k + 1))
    assert abs(np.mean(x > 0) - q) < 3 * math.sqrt(q * (1 - q) / N)


# --- batches -----------------------------------------------------------------------

@given(st.integers(0, 2**64 - 1), st.integers(1, 50))
def test_batch_csv_json_round_trip(seed, size):
    b = draw_batch("hyper", size, seed, n=3, t=0.5)
    for text, parse in ((b.to_csv(), SampleBatch.from_csv), (b.to_json(), SampleBatch.from_json)):
        back = parse(text)
        assert back.values.tobytes() == b.values.tobytes()
        assert (back.seed, back.law_descriptor, back.algorithm) == (seed, b.law_descriptor, "PCG64")


def test_batch_header_and_descriptor():
    b = draw_batch("asym", 3, 7, k=1, t=1.0)
    first, second = b.to_csv().splitlines()[:2]
    assert first == "# law=asym(k=1,t=1.0) seed=7 algorithm=PCG64"
    assert second == "value"
    assert len(b) == b.size == 3


def test_batch_is_read_only_and_validated():
    b = SampleBatch(np.array([1.0, 2.0]), 1, "x")
    with pytest.raises(ValueError):
        b.values[0] = 3.0
    with pytest.raises(DomainError):
        SampleBatch(np.array([]), 1, "x")
    with pytest.raises(DomainError):
        SampleBatch(np.array([1.0, np.inf]), 1, "x")
    with pytest.raises(DomainError):
        SampleBatch.from_csv("value\n1.0\n")
    with pytest.raises(DomainError):
        SampleBatch.from_csv("# law=x seed=1\nnumber\n1.0\n")


def test_parallel_batches_reproducible():
    a = draw_batch_parallel("hyper", 10_001, 5, chunks=4, n=4)
    b = draw_batch_parallel("hyper", 10_001, 5, chunks=4, n=4)
    assert a.size == 10_001
    assert a.values.tobytes() == b.values.tobytes()
    # chunk i comes from stream i + 1
    head = draw_batch("hyper", 2501, 5, stream=1, n=4)
    assert np.array_equal(a.values[:2501], head.values)
    with pytest.raises(DomainError):
        draw_batch_parallel("hyper", 10, 5, chunks=0, n=4)


def test_missing_parameter_is_key_error():
    with pytest.raises(KeyError):
        draw_batch("hyper", 10, 1)
