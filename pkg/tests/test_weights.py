"""Closed-form constants against independent oracles."""

import math

import numpy as np
import pytest

from wisolab.weights import (
    WeightParams,
    beta_fn,
    c_rad,
    gamma_fn,
    kappa,
    l1_threshold,
    mu_half_ball,
)


def test_gamma_against_known_values():
    # Gamma(1/2) = sqrt(pi), Gamma(n+1) = n!
    assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-13)
    for n in range(1, 12):
        assert gamma_fn(n + 1.0) == pytest.approx(math.factorial(n), rel=1e-12)
    # duplication formula at a non-special point
    x = 1.37
    dup = gamma_fn(2 * x)
    rhs = gamma_fn(x) * gamma_fn(x + 0.5) * 2 ** (2 * x - 1) / math.sqrt(math.pi)
    assert dup == pytest.approx(rhs, rel=1e-12)


def test_beta_symmetry_and_identity():
    assert beta_fn(2.0, 3.0) == pytest.approx(1.0 / 12.0, rel=1e-13)
    assert beta_fn(0.7, 1.9) == pytest.approx(beta_fn(1.9, 0.7), rel=1e-13)


def test_kappa_closed_forms():
    # [DERIVED] int_0^pi sin(t) dt = 2 and half-sphere x_3-moment = pi
    assert kappa(2, 1.0) == pytest.approx(2.0, abs=1e-12)
    assert kappa(3, 1.0) == pytest.approx(math.pi, abs=1e-12)


def test_kappa_matches_direct_angular_quadrature():
    # oracle: high-order quadrature of sin^alpha over (0, pi)
    for alpha in (0.5, 1.0, 2.5):
        t = np.linspace(0.0, math.pi, 200_001)
        oracle = np.trapezoid(np.sin(t) ** alpha, t)
        # the trapezoid oracle itself is limited to ~3e-8 by the endpoint
        # singularity of sin^0.5
        assert kappa(2, alpha) == pytest.approx(oracle, rel=2e-7)


def test_params_validation():
    with pytest.raises(ValueError):
        WeightParams(N=1, k=1.0, l=0.0, alpha=1.0)
    with pytest.raises(ValueError):
        WeightParams(N=2, k=1.0, l=0.0, alpha=0.0)
    with pytest.raises(ValueError):
        WeightParams(N=2, k=1.0, l=-4.0, alpha=1.0)


def test_derived_exponents():
    p = WeightParams(N=2, k=2.0, l=0.5, alpha=1.0)
    assert p.m == 3.5
    assert p.volume_exponent == 3.5
    assert p.perimeter_exponent == 4.0


def test_half_ball_measure_scaling():
    p = WeightParams(N=3, k=1.0, l=0.5, alpha=2.0)
    d = p.volume_exponent
    assert mu_half_ball(p, 2.0) / mu_half_ball(p, 1.0) == pytest.approx(
        2.0**d, rel=1e-13
    )


def test_c_rad_reference_values():
    # [DERIVED] d = 3, kappa = 2: 3^{2/3} * 2^{1/3} ... with k=1,l=0 -> 3
    assert c_rad(WeightParams(N=2, k=1.0, l=0.0, alpha=1.0)) == pytest.approx(
        3.0, abs=1e-12
    )
    # [DERIVED] k=2, l=0: 3^{3/3} * 2^{-1/3} = 3 / 2^{1/3} = 2*(3/2)^{4/3}/2^... check
    val = c_rad(WeightParams(N=2, k=2.0, l=0.0, alpha=1.0))
    assert val == pytest.approx(2.0 * (1.5) ** (4.0 / 3.0), rel=1e-12)


def test_c_rad_is_half_ball_quotient():
    # the constant must equal perimeter/measure^s of the unit half-ball
    p = WeightParams(N=2, k=1.7, l=0.3, alpha=0.8)
    mu = mu_half_ball(p, 1.0)
    per = kappa(p.N, p.alpha)  # unit half-sphere with |x| = 1
    assert c_rad(p) == pytest.approx(
        per / mu ** (p.perimeter_exponent / p.volume_exponent), rel=1e-13
    )


def test_regime_flags():
    assert WeightParams(N=2, k=1.0, l=0.0, alpha=1.0).regime().k_ge_l_plus_1
    assert not WeightParams(N=2, k=1.0, l=0.0, alpha=1.0).regime().strict
    assert not WeightParams(N=2, k=0.5, l=0.0, alpha=1.0).regime().k_ge_l_plus_1


def test_l1_threshold_formula():
    # [DERIVED] direct evaluation of the rational expression
    k, N, alpha = 1.0, 2, 1.0
    a = k + N + alpha - 1.0
    expected = a**3 / (a * a - (N + alpha - 1.0) ** 2 / (N + alpha)) - N - alpha
    assert l1_threshold(k, N, alpha) == pytest.approx(expected, rel=1e-13)
