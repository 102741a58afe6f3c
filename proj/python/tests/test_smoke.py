import math

import numpy as np
import pytest

import entrobound as eb


def test_poisson_curves():
    assert eb.poisson_entropy(1.0) == pytest.approx(1.304842242, abs=1e-9)
    assert eb.poisson_me_bound(1.0) == pytest.approx(1.458959887, abs=1e-9)
    assert eb.poisson_entropy(0.0) == 0.0


def test_quantized_ma():
    assert eb.qma_k_ratio(1.0, 1.0) == pytest.approx(0.923076923, abs=1e-6)
    assert eb.qma_th1_bound(1.0, 1.0) == pytest.approx(1.621671087, abs=1e-6)
    assert eb.qma_th3_bound(1.0, 1.0) == pytest.approx(1.685758684, abs=1e-6)
    assert eb.qma_conditional_entropy(1.0, 1.0, fast=True) == pytest.approx(1.654953857, abs=1e-4)


def test_bounds_and_errors():
    value, s = eb.tdist_bound_1(2.08333333333333, 0.999999999999912)
    assert value == pytest.approx(1.685758684, abs=1e-6)
    assert -1.0 < s[0] < 1.0
    k_value, beta = eb.tdist_bound_k([2.08333333333333, 0.999999999999912])
    assert k_value == pytest.approx(value, abs=1e-6)
    assert len(beta) == 1
    assert eb.gaussian_entropy_rate([2.0, 1.0]) == -math.inf
    with pytest.raises(eb.DomainError):
        eb.tdist_bound_1(1.0, 1.5)
    with pytest.raises(ValueError):
        eb.qma_r0(-1.0, 0.5)


def test_simulation_is_seeded():
    a = eb.simulate_qar(1.0, 0.9, 4.0, 2000, 7)
    b = eb.simulate_qar(1.0, 0.9, 4.0, 2000, 7)
    assert a.dtype == np.int64 and a.shape == (2000,)
    assert np.array_equal(a, b)
    path = eb.simulate_qma(1.0, 0.0, 200_000, 3)
    value, se = eb.empirical_covariance(path, 0)
    assert abs(value - eb.qma_r0(1.0, 0.0)) < 5 * se


def test_tables():
    t = eb.fig1(eb.make_grid(0.0, 1.0, 0.5))
    assert t.columns == ["lambda", "H_poisson", "ME_bound"]
    assert len(t) == 3
    assert t.to_csv().splitlines()[3] == "1,1.30484224,1.45895989"
    cov = eb.bound_cov([1.0])
    assert cov.notes
