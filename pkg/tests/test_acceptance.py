"""Acceptance suite: one criterion per test, one printed pass/fail line.

Run with `pytest -v -s tests/test_acceptance.py` to see the lines as the
criteria execute; each test also asserts, so the suite gates CI.
"""

import json
import math
import time

import numpy as np
import pytest

from wisolab.cli import run as cli_run
from wisolab.geometry import StarProfile, measure, perimeter, random_profile
from wisolab.inequality import (
    poincare_constant,
    verify_gauss_identity,
    verify_hardy_littlewood,
    verify_isoperimetric,
    verify_polya_szego,
)
from wisolab.meshing import GAMMA_PLUS, half_disk_mesh
from wisolab.pde import EllipticProblem, assemble_and_solve, verify_comparison
from wisolab.quadrature import QuadratureSpec, composite_gl
from wisolab.rearrange import (
    MeshFunction,
    decreasing_rearrangement,
    lp_norm,
)
from wisolab.weights import WeightParams, c_rad, kappa


def _line(criterion: str, ok: bool, detail: str) -> None:
    print(f"[acceptance] {criterion}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{criterion}: {detail}"


def half_ball(N, R=1.0, n=65):
    tmax = math.pi if N == 2 else 0.5 * math.pi
    theta = np.linspace(0.0, tmax, n)
    return StarProfile(N=N, theta=theta, rho=np.full(n, float(R)))


def test_criterion_1_closed_form_constants():
    t0 = time.perf_counter()
    spec = QuadratureSpec(panels=64, nodes_per_panel=12, grading_exponent=4.0)
    # independent angular quadrature of the half-sphere weight
    quad2 = composite_gl(lambda t: np.sin(t), 0.0, math.pi, spec)
    quad3 = 2.0 * math.pi * composite_gl(
        lambda t: np.cos(t) * np.sin(t), 0.0, 0.5 * math.pi, spec
    )
    err_k2 = abs(kappa(2, 1.0) - 2.0) + abs(kappa(2, 1.0) - quad2)
    err_k3 = abs(kappa(3, 1.0) - math.pi) + abs(kappa(3, 1.0) - quad3)
    err_c1 = abs(c_rad(WeightParams(N=2, k=1.0, l=0.0, alpha=1.0)) - 3.0)
    err_c2 = abs(
        c_rad(WeightParams(N=2, k=2.0, l=0.0, alpha=1.0))
        - 2.0 * 1.5 ** (4.0 / 3.0)
    )
    elapsed = time.perf_counter() - t0
    ok = err_k2 < 1e-10 and err_k3 < 1e-10 and err_c1 < 1e-10 and err_c2 < 1e-9
    ok = ok and elapsed < 1.0
    _line(
        "criterion 1 (closed-form constants)",
        ok,
        f"kappa errs {err_k2:.1e}/{err_k3:.1e}, c_rad errs {err_c1:.1e}/"
        f"{err_c2:.1e}, {elapsed:.2f}s",
    )


def test_criterion_2_isoperimetric_sweep():
    t0 = time.perf_counter()
    min_random = math.inf
    max_half_ball = 0.0
    for N in (2, 3):
        for k, l, alpha in ((1.0, 0.0, 1.0), (2.0, 0.0, 1.0),
                            (0.5, -0.5, 0.5), (3.0, 1.0, 2.0)):
            p = WeightParams(N=N, k=k, l=l, alpha=alpha)
            rep = verify_isoperimetric(p, sample_count=200, seed=2024)
            for cid, _, _, slack in rep.per_case:
                if cid.startswith("half-ball"):
                    max_half_ball = max(max_half_ball, abs(slack))
                else:
                    min_random = min(min_random, slack)
    elapsed = time.perf_counter() - t0
    ok = min_random >= -1e-9 and max_half_ball <= 1e-8 and elapsed < 30.0
    _line(
        "criterion 2 (sharp inequality sweep)",
        ok,
        f"min random slack {min_random:.2e}, max half-ball |slack| "
        f"{max_half_ball:.2e}, {elapsed:.1f}s",
    )


def test_criterion_3_gauss_identity():
    t0 = time.perf_counter()
    worst_eq = 0.0
    min_pert = math.inf
    for R in (0.5, 1.0, 2.0):
        lhs, _, slack = verify_gauss_identity(half_ball(2, R), 0.0, 1.0)
        worst_eq = max(worst_eq, abs(slack) / max(1.0, lhs))
    for seed in range(50):
        prof = random_profile(seed, amplitude=0.2)
        _, _, slack = verify_gauss_identity(prof, 0.0, 1.0)
        min_pert = min(min_pert, slack)
    elapsed = time.perf_counter() - t0
    ok = worst_eq < 1e-9 and min_pert > 1e-6 and elapsed < 5.0
    _line(
        "criterion 3 (divergence identity)",
        ok,
        f"half-ball eq err {worst_eq:.1e}, min perturbation slack "
        f"{min_pert:.2e}, {elapsed:.1f}s",
    )


def test_criterion_4_hardy_littlewood():
    worst_eq = 0.0
    min_slack = math.inf
    for l, lp in ((1.0, 0.0), (0.0, -1.0)):
        _, _, s = verify_hardy_littlewood(half_ball(2), l, lp, 1.0)
        worst_eq = max(worst_eq, abs(s))
        ss = np.random.SeedSequence(77)
        for child in ss.generate_state(100):
            prof = random_profile(int(child))
            _, _, s = verify_hardy_littlewood(prof, l, lp, 1.0)
            min_slack = min(min_slack, s)
    ok = worst_eq < 1e-9 and min_slack >= -1e-9
    _line(
        "criterion 4 (ratio lemma)",
        ok,
        f"half-ball eq err {worst_eq:.1e}, min slack {min_slack:.2e}",
    )


def test_criterion_5_rearrangement_engine():
    errors = {}
    for h in (0.04, 0.02, 0.01):
        mesh = half_disk_mesh(h)
        u = MeshFunction.from_callable(
            mesh, lambda x, y: np.maximum(1.0 - np.hypot(x, y), 0.0)
        )
        prof = decreasing_rearrangement(u, 0.0, 1.0)
        # evaluation grid excludes the extreme tails, where the plateau
        # resolution is a single sub-element
        s = np.linspace(0.005, 0.995, 400) * prof.total_measure
        exact = 1.0 - (1.5 * s) ** (1.0 / 3.0)
        errors[h] = float(np.max(np.abs(prof(s) - exact)))
    order = math.log(errors[0.04] / errors[0.01]) / math.log(4.0)

    mesh = half_disk_mesh(0.01)
    u = MeshFunction.from_callable(
        mesh, lambda x, y: np.maximum(1.0 - np.hypot(x, y), 0.0)
    )
    prof = decreasing_rearrangement(u, 0.0, 1.0)
    norm_err = 0.0
    for p in (1.0, 2.0):
        star = float(
            np.dot(np.abs(prof.values) ** p, np.diff(prof.breakpoints))
        ) ** (1.0 / p)
        orig = lp_norm(u, p, 0.0, 1.0)
        norm_err = max(norm_err, abs(star - orig) / orig)
    ok = errors[0.01] <= 2e-3 and order >= 1.0 and norm_err <= 5e-3
    _line(
        "criterion 5 (rearrangement engine)",
        ok,
        f"Linf {errors[0.01]:.2e} at h=0.01, order {order:.2f}, "
        f"norm rel err {norm_err:.1e}",
    )


def _corpus(mesh):
    """Ten admissible functions vanishing on the curved boundary."""
    x, y = mesh.nodes[:, 0], mesh.nodes[:, 1]
    r2 = x * x + y * y
    cut = np.maximum(1.0 - r2, 0.0)
    fns = [
        np.maximum(1.0 - np.sqrt(r2), 0.0),
        cut,
        cut**2,
        cut * np.exp(-2.0 * r2),
        cut * (1.0 + 0.5 * x),
        cut * (1.0 + 0.8 * y),
        np.maximum(1.0 - 2.0 * np.hypot(x - 0.3, y - 0.3), 0.0),
        np.maximum(1.0 - 3.0 * np.hypot(x + 0.4, y - 0.2), 0.0),
        cut * np.abs(np.sin(3.0 * np.arctan2(y, x + 1e-30)) + 1.2),
        cut * (0.3 + np.cos(2.0 * x) ** 2),
    ]
    out = []
    fixed = mesh.boundary_nodes(GAMMA_PLUS)
    for vals in fns:
        v = np.asarray(vals, dtype=float).copy()
        v[fixed] = 0.0
        out.append(MeshFunction(mesh, v))
    return out


def test_criterion_6_polya_szego():
    p = WeightParams(N=2, k=1.0, l=0.0, alpha=1.0)
    # measure the discretization constant C on the symmetric cone
    sym_gaps = {}
    for h in (0.04, 0.02):
        mesh = half_disk_mesh(h)
        u = MeshFunction.from_callable(
            mesh, lambda x, y: np.maximum(1.0 - np.hypot(x, y), 0.0)
        )
        _, _, gap = verify_polya_szego(u, p)
        sym_gaps[h] = gap
    order = math.log(abs(sym_gaps[0.04]) / abs(sym_gaps[0.02])) / math.log(2.0)
    C = max(10.0 * max(abs(g) / h for h, g in sym_gaps.items()), 1e-6)

    h = 0.02
    mesh = half_disk_mesh(h)
    min_gap = math.inf
    for u in _corpus(mesh):
        _, _, gap = verify_polya_szego(u, p)
        min_gap = min(min_gap, gap)
    ok = min_gap >= -C * h and order >= 1.0
    _line(
        "criterion 6 (symmetrization energy drop)",
        ok,
        f"min corpus gap {min_gap:.2e} vs -C*h = {-C * h:.2e}, symmetric "
        f"gap order {order:.2f}",
    )


def test_criterion_7_poincare_constant():
    p = WeightParams(N=2, k=0.0, l=0.0, alpha=1.0)  # d = N + m + alpha = 3
    c1 = poincare_constant(p, 1.0, intervals=10_000)
    rel = abs(c1 * math.pi**2 - 1.0)
    c2 = poincare_constant(p, 2.0, intervals=10_000)
    scaling_err = abs(c2 / c1 - 4.0) / 4.0
    ok = rel <= 1e-6 and scaling_err <= 1e-6
    _line(
        "criterion 7 (sharp Poincare constant)",
        ok,
        f"rel err vs 1/pi^2 {rel:.1e}, R*^2-scaling err {scaling_err:.1e}",
    )


def test_criterion_8_pde_benchmark():
    t0 = time.perf_counter()
    p = WeightParams(N=2, k=0.0, l=0.0, alpha=1.0)
    h = 0.01
    mesh = half_disk_mesh(h)
    prob = EllipticProblem(mesh=mesh, params=p, rhs=np.ones(mesh.node_count))
    u = assemble_and_solve(prob)
    r = np.linalg.norm(mesh.nodes, axis=1)
    sym_err = float(np.max(np.abs(u.values - (1.0 - r * r) / 6.0)))

    slacks = {}
    grad_ok = True
    for hc in (0.04, 0.02):
        mesh_c = half_disk_mesh(hc)
        prob_c = EllipticProblem(
            mesh=mesh_c, params=p, rhs=1.0 + mesh_c.nodes[:, 0]
        )
        rep = verify_comparison(prob_c)
        slacks[hc] = rep["max_pointwise_slack"]
        for q in ("0.5", "1.0", "2.0"):
            grad_ok &= rep["gradient_q_table"][q]["slack"] >= -hc
    elapsed = time.perf_counter() - t0
    ok = (
        sym_err <= 5.0 * h * h
        and slacks[0.04] <= 0.04
        and slacks[0.02] < slacks[0.04]
        and grad_ok
        and elapsed < 60.0
    )
    _line(
        "criterion 8 (degenerate PDE benchmark)",
        ok,
        f"Linf {sym_err:.2e} vs 5h^2 = {5 * h * h:.1e}, comparison slack "
        f"{slacks[0.04]:.1e}->{slacks[0.02]:.1e}, gradients ok={grad_ok}, "
        f"{elapsed:.1f}s",
    )


def test_criterion_9_cli_determinism(capsys):
    argv = ["verify-isoperimetric", "--N", "2", "--alpha", "1", "--k", "1",
            "--l", "0", "--samples", "25", "--seed", "7"]
    rc1 = cli_run(argv)
    out1 = capsys.readouterr().out
    rc2 = cli_run(argv)
    out2 = capsys.readouterr().out
    payload = json.loads(out1)
    ok = rc1 == rc2 == 0 and out1 == out2 and payload["verdict"] == "pass"
    with capsys.disabled():
        _line(
            "criterion 9 (CLI determinism)",
            ok,
            f"exit {rc1}, byte-identical={out1 == out2}",
        )
