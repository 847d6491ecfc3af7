import math

import numpy as np
import pytest

from clusterlife import (
    LN2,
    InfeasibleEnergyError,
    Shannon,
    Srra,
    min_time_for_energy,
    srra_error,
    tx_energy,
)
from clusterlife.energy import min_time_for_energy_vec, tx_energy_vec

# High-precision inverse values (independent 300-step bisection at 50 digits).
INVERSE_ORACLE = [
    (1.0, 2.0, 0.37595947047969740568),
    (2.0, 3.0, 1.0),
    (2.5, 4.0, 1.1621607195203381117),
    (0.3, 0.5, 0.13358270355787149819),
    (5.0, 4.0, 12.36877886930826583),
]


def test_exact_values():
    assert tx_energy(1.0, 1.0) == pytest.approx(1.0, abs=1e-15)
    assert tx_energy(2.0, 1.0) == pytest.approx(3.0, abs=1e-14)
    assert tx_energy(1.0, 0.5) == pytest.approx(1.5, abs=1e-14)


def test_zero_load_costs_nothing():
    assert tx_energy(0.0, 0.5) == 0.0
    assert srra_error(0.0, 0.5) == 0.0


def test_srra_mode_is_linear_and_time_free():
    mode = Srra(c=0.9)
    assert tx_energy(3.0, 0.1, mode) == pytest.approx(2.7)
    assert tx_energy(3.0, 100.0, mode) == pytest.approx(2.7)
    assert Srra().c == pytest.approx(LN2)
    with pytest.raises(ValueError):
        Srra(c=0.0)


def test_input_validation():
    with pytest.raises(ValueError):
        tx_energy(-1.0, 1.0)
    with pytest.raises(ValueError):
        tx_energy(1.0, 0.0)
    with pytest.raises(ValueError):
        min_time_for_energy(0.0, 1.0)


def test_overflow_returns_inf():
    assert tx_energy(1000.0, 1e-6) == math.inf


def test_monotone_decreasing_and_convex_in_time():
    rng = np.random.default_rng(1)
    h = rng.uniform(0.1, 8.0, size=2000)
    x = rng.uniform(0.05, 5.0, size=2000)
    dx = 1e-3
    f0 = tx_energy_vec(h, x)
    f1 = tx_energy_vec(h, x + dx)
    assert np.all(f1 < f0)
    # midpoint convexity on random bracket pairs
    x2 = x + rng.uniform(0.1, 2.0, size=x.size)
    mid = 0.5 * (x + x2)
    assert np.all(
        tx_energy_vec(h, mid) <= 0.5 * (tx_energy_vec(h, x) + tx_energy_vec(h, x2)) + 1e-12
    )


def test_blow_up_and_asymptote():
    h = 2.0
    assert tx_energy(h, 1e-3) > 1e100
    assert abs(tx_energy(h, 1e6) - h * LN2) < 1e-5 * h
    assert srra_error(h, 1e6) < 1e-5 * h
    assert srra_error(h, 0.5) > 0  # the exact curve sits above the asymptote


@pytest.mark.parametrize("h,e,t_star", INVERSE_ORACLE)
def test_inverse_oracle(h, e, t_star):
    t = min_time_for_energy(h, e)
    assert t == pytest.approx(t_star, rel=1e-10)
    assert tx_energy(h, t) == pytest.approx(e, rel=1e-10)


def test_inverse_roundtrip_random():
    rng = np.random.default_rng(7)
    for _ in range(300):
        h = float(rng.uniform(0.05, 10.0))
        x = float(rng.uniform(0.01, 20.0))
        e = tx_energy(h, x)
        assert min_time_for_energy(h, e) == pytest.approx(x, rel=1e-8)


def test_inverse_infeasible_at_or_below_asymptote():
    with pytest.raises(InfeasibleEnergyError):
        min_time_for_energy(2.0, 2.0 * LN2)
    with pytest.raises(InfeasibleEnergyError):
        min_time_for_energy(2.0, 0.5)


def test_vectorized_inverse_matches_scalar():
    rng = np.random.default_rng(11)
    h = rng.uniform(0.05, 10.0, size=500)
    # budgets from slightly above the asymptote to astronomically large
    factor = np.exp(rng.uniform(np.log(1.0 + 1e-6), np.log(1e6), size=500))
    e = h * LN2 * factor
    t_vec = min_time_for_energy_vec(h, e)
    for i in range(0, 500, 7):
        assert t_vec[i] == pytest.approx(min_time_for_energy(float(h[i]), float(e[i])), rel=1e-10)
    # full-batch roundtrip
    assert np.allclose(tx_energy_vec(h, t_vec), e, rtol=1e-8)


def test_vectorized_inverse_zero_load_and_infeasible():
    t = min_time_for_energy_vec(np.array([0.0, 1.0]), np.array([5.0, 2.0]))
    assert t[0] == 0.0
    assert t[1] == pytest.approx(0.37595947047969740568, rel=1e-10)
    with pytest.raises(InfeasibleEnergyError):
        min_time_for_energy_vec(np.array([1.0]), np.array([0.5]))


def test_mode_types():
    assert isinstance(Shannon(), Shannon)
    assert Shannon() == Shannon()
    assert Srra(c=1.0) != Srra(c=2.0)
