"""Distribution function, decreasing rearrangement, symmetrization."""

import math

import numpy as np
import pytest

from wisolab.meshing import half_disk_mesh
from wisolab.rearrange import (
    DecreasingProfile,
    MeshFunction,
    decreasing_rearrangement,
    distribution,
    lp_norm,
    lp_norm_radial,
    schwarz_symmetrization,
)
from wisolab.weights import WeightParams, mu_half_ball


@pytest.fixture(scope="module")
def mesh():
    return half_disk_mesh(0.04)


def cone(mesh):
    return MeshFunction.from_callable(
        mesh, lambda x, y: np.maximum(1.0 - np.hypot(x, y), 0.0)
    )


def test_distribution_monotone_and_endpoints(mesh):
    u = cone(mesh)
    ts = np.linspace(0.0, 1.0, 11)
    vals = [distribution(u, float(t), 0.0, 1.0) for t in ts]
    assert all(a >= b for a, b in zip(vals, vals[1:]))
    total = float(np.sum(mesh.weight_measures(0.0, 1.0)))
    # {u > 0} is everything except the zero-measure boundary ring
    assert vals[0] == pytest.approx(total, rel=1e-10)
    assert vals[-1] == 0.0


def test_distribution_closed_form(mesh):
    # [DERIVED] for u = 1 - r with mu_{0,1}: mu({u > t}) = 2(1-t)^3/3
    u = cone(mesh)
    for t in (0.2, 0.5, 0.8):
        expected = 2.0 * (1.0 - t) ** 3 / 3.0
        assert distribution(u, t, 0.0, 1.0) == pytest.approx(expected, rel=2e-3)


def test_rearranged_cone_closed_form(mesh):
    # [DERIVED] u*(s) = 1 - (3s/2)^{1/3} for u = 1 - r under mu_{0,1}
    u = cone(mesh)
    prof = decreasing_rearrangement(u, 0.0, 1.0)
    s = np.linspace(0.005, 0.99, 200) * prof.total_measure
    exact = 1.0 - (1.5 * s) ** (1.0 / 3.0)
    assert np.max(np.abs(prof(s) - exact)) < 5e-3


def test_rearrangement_preserves_norms(mesh):
    u = cone(mesh)
    prof = decreasing_rearrangement(u, 0.0, 1.0)
    s_edges = prof.breakpoints
    plateau = prof.values
    for p in (1.0, 2.0):
        # integral of the step function equals the plateau-weighted sum
        star = float(np.dot(np.abs(plateau) ** p, np.diff(s_edges)))
        orig = lp_norm(u, p, 0.0, 1.0) ** p
        assert star == pytest.approx(orig, rel=5e-3)


def test_profile_is_nonincreasing_and_right_limits():
    prof = DecreasingProfile(
        breakpoints=np.array([0.0, 1.0, 3.0]),
        values=np.array([2.0, 1.0]),
        total_measure=3.0,
    )
    s = np.linspace(0.0, 3.0, 50)
    v = prof(s)
    assert np.all(np.diff(v) <= 1e-14)
    assert prof(3.0) == 0.0  # vanishes at the far end of its support
    with pytest.raises(ValueError):
        DecreasingProfile(
            breakpoints=np.array([0.0, 1.0, 3.0]),
            values=np.array([1.0, 2.0]),  # increasing
            total_measure=3.0,
        )


def test_schwarz_symmetrization_radius(mesh):
    u = cone(mesh)
    U = schwarz_symmetrization(u, 0.0, 1.0)
    total = float(np.sum(mesh.weight_measures(0.0, 1.0)))
    p = WeightParams(N=2, k=0.0, l=0.0, alpha=1.0)
    expected = (total / mu_half_ball(p, 1.0)) ** (1.0 / 3.0)
    assert U.r_star == pytest.approx(expected, rel=1e-12)
    # radial representative of the cone is the cone itself, up to O(h);
    # r = 0 is excluded: the peak value is an element average, low by O(h)
    r = np.linspace(0.05, 0.95, 40)
    assert np.max(np.abs(U(r) - (1.0 - r))) < 5e-3


def test_radial_lp_norm_matches_mesh_norm(mesh):
    u = cone(mesh)
    U = schwarz_symmetrization(u, 0.0, 1.0)
    for p in (1.0, 2.0):
        assert lp_norm_radial(U, p) == pytest.approx(
            lp_norm(u, p, 0.0, 1.0), rel=5e-3
        )


def test_flat_function_stays_flat(mesh):
    u = MeshFunction(mesh, np.full(mesh.node_count, 2.5))
    prof = decreasing_rearrangement(u, 0.0, 1.0)
    s = np.linspace(0.0, 0.999 * prof.total_measure, 20)
    assert np.allclose(prof(s), 2.5, atol=1e-12)
