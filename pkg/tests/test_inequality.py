"""Inequality verification sweeps, energy drop, Poincare constant."""

import json
import math

import numpy as np
import pytest

from wisolab.geometry import StarProfile, random_profile
from wisolab.inequality import (
    VerificationReport,
    poincare_constant,
    quotient_R,
    verify_gauss_identity,
    verify_hardy_littlewood,
    verify_isoperimetric,
    verify_polya_szego,
)
from wisolab.meshing import GAMMA_PLUS, half_disk_mesh
from wisolab.rearrange import MeshFunction
from wisolab.weights import WeightParams, c_rad


def half_ball(N, R=1.0, n=65):
    tmax = math.pi if N == 2 else 0.5 * math.pi
    theta = np.linspace(0.0, tmax, n)
    return StarProfile(N=N, theta=theta, rho=np.full(n, float(R)))


def test_quotient_equals_constant_on_half_balls():
    p = WeightParams(N=2, k=1.0, l=0.0, alpha=1.0)
    for R in (0.5, 1.0, 2.0):
        assert quotient_R(half_ball(2, R), p) == pytest.approx(c_rad(p), abs=1e-10)


def test_quotient_exceeds_constant_on_perturbations():
    p = WeightParams(N=2, k=1.0, l=0.0, alpha=1.0)
    target = c_rad(p)
    for seed in range(20):
        prof = random_profile(seed, amplitude=0.2)
        assert quotient_R(prof, p) > target + 1e-6


def test_verification_report_sweep():
    p = WeightParams(N=2, k=1.0, l=0.0, alpha=1.0)
    rep = verify_isoperimetric(p, sample_count=30, seed=4)
    assert rep.passed()
    assert rep.min_slack >= -1e-9
    assert not rep.exploratory
    assert rep.case_count == 33  # 30 random + 3 half-balls
    payload = json.loads(rep.to_json())
    assert payload["verdict"] == "pass"


def test_exploratory_flag_below_threshold():
    p = WeightParams(N=2, k=0.5, l=0.0, alpha=1.0)  # k < l + 1
    rep = verify_isoperimetric(p, sample_count=5, seed=1)
    assert rep.exploratory


def test_report_determinism():
    p = WeightParams(N=2, k=2.0, l=0.0, alpha=1.0)
    a = verify_isoperimetric(p, sample_count=10, seed=99).to_json()
    b = verify_isoperimetric(p, sample_count=10, seed=99).to_json()
    assert a == b


def test_gauss_identity():
    # equality on half-balls, strict slack on perturbations
    for R in (0.5, 1.0, 2.0):
        lhs, rhs, slack = verify_gauss_identity(half_ball(2, R), 0.0, 1.0)
        assert abs(slack) < 1e-9 * max(1.0, lhs)
    for seed in range(10):
        _, _, slack = verify_gauss_identity(random_profile(seed, amplitude=0.2), 0.0, 1.0)
        assert slack > 1e-6


def test_hardy_littlewood():
    for l, lp in ((1.0, 0.0), (0.0, -1.0)):
        # equality on half-balls
        _, _, slack = verify_hardy_littlewood(half_ball(2), l, lp, 1.0)
        assert abs(slack) < 1e-9
        for seed in range(10):
            _, _, s = verify_hardy_littlewood(random_profile(seed), l, lp, 1.0)
            assert s >= -1e-9
    with pytest.raises(ValueError):
        verify_hardy_littlewood(half_ball(2), 0.0, 1.0, 1.0)  # l <= l'


def test_polya_szego_gap_nonnegative():
    mesh = half_disk_mesh(0.04)
    p = WeightParams(N=2, k=1.0, l=0.0, alpha=1.0)
    u = MeshFunction.from_callable(
        mesh, lambda x, y: np.maximum(1.0 - np.hypot(x, y), 0.0)
    )
    e, e_star, gap = verify_polya_szego(u, p)
    assert e > 0.0 and e_star > 0.0
    assert gap >= -1e-9  # symmetric input: gap is pure discretization error
    # asymmetric input: strictly positive energy drop
    v_vals = np.maximum(1.0 - 2.0 * np.hypot(mesh.nodes[:, 0] - 0.3,
                                             mesh.nodes[:, 1] - 0.3), 0.0)
    v_vals[mesh.boundary_nodes(GAMMA_PLUS)] = 0.0
    _, _, gap2 = verify_polya_szego(MeshFunction(mesh, v_vals), p)
    assert gap2 > 0.01


def test_polya_szego_requires_zero_trace():
    mesh = half_disk_mesh(0.1)
    p = WeightParams(N=2, k=1.0, l=0.0, alpha=1.0)
    with pytest.raises(ValueError):
        verify_polya_szego(MeshFunction(mesh, np.ones(mesh.node_count)), p)


def test_poincare_reference_value():
    # [PAPER-adjacent closed form] d = 3, R* = 1 -> 1/pi^2
    p = WeightParams(N=2, k=0.0, l=0.0, alpha=1.0)  # m = 0, d = 3
    c = poincare_constant(p, 1.0)
    assert c == pytest.approx(1.0 / math.pi**2, rel=1e-8)


def test_poincare_scales_with_radius_squared():
    p = WeightParams(N=2, k=1.0, l=0.5, alpha=1.5)
    c1 = poincare_constant(p, 1.0, intervals=4000)
    c2 = poincare_constant(p, 2.0, intervals=4000)
    assert c2 / c1 == pytest.approx(4.0, rel=1e-6)


def test_report_validation():
    with pytest.raises(ValueError):
        VerificationReport(params={}, tolerance=1e-9, per_case=[])
