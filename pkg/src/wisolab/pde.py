"""Finite element solver for the degenerate mixed boundary-value problem
and the explicit radial solution of the symmetrized problem.

The equation is -div(A grad u) = |x|^m x_2^alpha f with A comparable to
the vanishing weight |x|^m x_2^alpha, Dirichlet data on the curved
boundary and the natural condition on {x_2 = 0}.  P1 elements; the weight
is integrated with subdivided rules on elements touching the axis, where
one-point rules would destroy convergence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from scipy.interpolate import CubicSpline

from .meshing import GAMMA_PLUS, TriMesh, parse_mesh, weight_density
from .rearrange import (
    DecreasingProfile,
    MeshFunction,
    _barycentric,
    decreasing_rearrangement,
    schwarz_symmetrization,
)
from .weights import WeightParams, kappa, mu_half_ball

__all__ = [
    "EllipticProblem",
    "RadialSolution",
    "assemble_and_solve",
    "symmetrized_solution",
    "verify_comparison",
    "load_problem",
    "RHS_CATALOG",
]

# built-in right-hand sides addressable by name in problem files
RHS_CATALOG = {
    "one": lambda x, y: np.ones_like(x),
    "one_plus_x1": lambda x, y: 1.0 + x,
    "cone": lambda x, y: np.maximum(1.0 - np.hypot(x, y), 0.0),
    "gaussian": lambda x, y: np.exp(-4.0 * (x**2 + y**2)),
}


@dataclass
class EllipticProblem:
    """Data of the degenerate problem on a planar half-space mesh.

    `matrix_field` holds the dimensionless per-element symmetric matrices
    B_e; the full coefficient is A(x) = |x|^m x_2^alpha B_e, so the
    ellipticity sandwich holds iff the eigenvalues of every B_e lie in
    [1, Lambda].  None means B_e = I (Lambda = 1).
    """

    mesh: TriMesh
    params: WeightParams
    rhs: np.ndarray
    matrix_field: np.ndarray | None = None
    Lambda: float = field(init=False)

    def __post_init__(self) -> None:
        self.rhs = np.asarray(self.rhs, dtype=float)
        if self.rhs.shape != (self.mesh.node_count,):
            raise ValueError("rhs must be one nodal value per mesh node")
        if self.matrix_field is None:
            self.Lambda = 1.0
            return
        B = np.asarray(self.matrix_field, dtype=float)
        if B.shape != (self.mesh.element_count, 2, 2):
            raise ValueError("matrix_field must have shape (elements, 2, 2)")
        if not np.allclose(B, np.swapaxes(B, 1, 2), atol=1e-12):
            raise ValueError("matrix_field must be symmetric")
        eigs = np.linalg.eigvalsh(B)
        if np.min(eigs) < 1.0 - 1e-10:
            raise ValueError(
                "ellipticity violated: matrix_field eigenvalue below 1"
            )
        self.matrix_field = B
        self.Lambda = float(np.max(eigs))


def assemble_and_solve(prob: EllipticProblem) -> MeshFunction:
    """Discrete weak solution with Dirichlet rows eliminated on the curved
    boundary; the flat boundary is left natural."""
    mesh = prob.mesh
    m, alpha = prob.params.m, prob.params.alpha
    wm = mesh.weight_measures(m, alpha)
    grads = mesh.grads()
    n = mesh.node_count

    if prob.matrix_field is None:
        # stiffness entry: grad_i . grad_j times the element weight mass
        local = np.einsum("eid,ejd,e->eij", grads, grads, wm)
    else:
        local = np.einsum("eid,edc,ejc,e->eij", grads, prob.matrix_field, grads, wm)

    rows = np.repeat(mesh.tris, 3, axis=1).ravel()
    cols = np.tile(mesh.tris, (1, 3)).ravel()
    K = sp.coo_matrix((local.ravel(), (rows, cols)), shape=(n, n)).tocsr()

    # load vector: integral of f_h * phi_i against the weight
    b = np.zeros(n)
    f_elem = prob.rhs[mesh.tris]
    for ids, pts, w in mesh.weight_quadrature():
        lam = _barycentric(mesh.verts()[ids], pts)
        f_q = np.einsum("eqi,ei->eq", lam, f_elem[ids])
        dens = weight_density(pts, m, alpha)
        contrib = np.einsum("eq,eqi->ei", w * dens * f_q, lam)
        np.add.at(b, mesh.tris[ids].ravel(), contrib.ravel())

    fixed = mesh.boundary_nodes(GAMMA_PLUS)
    free = np.setdiff1d(np.arange(n), fixed)
    K_ff = K[free][:, free].tocsc()
    u = np.zeros(n)
    u[free] = spla.spsolve(K_ff, b[free])

    residual = np.linalg.norm(K_ff @ u[free] - b[free])
    scale = np.linalg.norm(b[free])
    if scale > 0.0 and residual > 1e-10 * scale:
        raise RuntimeError(f"linear solve residual too large: {residual / scale:.3e}")
    return MeshFunction(mesh, u)


@dataclass
class RadialSolution:
    """Explicit non-increasing radial solution w of the symmetrized
    problem, sampled on a grid over [0, r_star] with w(r_star) = 0."""

    r_star: float
    r_grid: np.ndarray
    w_values: np.ndarray
    params: WeightParams
    _spline: CubicSpline = field(init=False, repr=False, compare=False)
    _cumF: CubicSpline = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if np.any(np.diff(self.w_values) > 1e-10 * max(1.0, self.w_values[0])):
            raise ValueError("radial solution must be non-increasing")
        if abs(self.w_values[-1]) > 1e-12 * max(1.0, self.w_values[0]):
            raise ValueError("radial solution must vanish at r_star")
        object.__setattr__(self, "_spline", CubicSpline(self.r_grid, self.w_values))

    def __call__(self, r):
        r_arr = np.clip(np.asarray(r, dtype=float), 0.0, self.r_star)
        return self._spline(r_arr)

    def derivative(self, r):
        r_arr = np.clip(np.asarray(r, dtype=float), 0.0, self.r_star)
        return self._spline(r_arr, 1)


def _gl_nodes(lo: np.ndarray, hi: np.ndarray, order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    half = 0.5 * (hi - lo)[:, None]
    return (lo[:, None] + half + half * x[None, :]), half * w[None, :]


def symmetrized_solution(
    f_star: DecreasingProfile,
    p: WeightParams,
    r_star: float,
    grid_size: int = 2000,
    gl_order: int = 6,
) -> RadialSolution:
    """Radial solution of the symmetrized problem by nested quadrature:
    w(r) = int_r^{r*} rho^{1-d} (int_0^rho f*(sigma) sigma^{d-1} dsigma) drho,
    with d = N + m + alpha and f* reparametrized from measure to radius.
    """
    d = p.N + p.m + p.alpha
    if not d > 0.0:
        raise ValueError(f"need N + m + alpha > 0, got {d}")
    mu1 = kappa(p.N, p.alpha) / d

    def f_rad(sigma):
        return f_star(mu1 * np.asarray(sigma) ** d)

    # grid: uniform radii merged with the radii of the profile breakpoints,
    # so the integrand is smooth on every subinterval
    s_nodes, _ = f_star.interp_nodes()
    r_nodes = (np.asarray(s_nodes) / mu1) ** (1.0 / d)
    edges = np.unique(
        np.concatenate([np.linspace(0.0, r_star, grid_size + 1),
                        r_nodes[(r_nodes > 0) & (r_nodes < r_star)]])
    )
    lo, hi = edges[:-1], edges[1:]

    # inner integral F(rho) = int_0^rho f* sigma^{d-1}, cumulative at edges
    sig, wts = _gl_nodes(lo, hi, gl_order)
    inner = np.sum(wts * f_rad(sig) * sig ** (d - 1.0), axis=1)
    F_edges = np.concatenate([[0.0], np.cumsum(inner)])
    F = CubicSpline(edges, F_edges)

    # outer integral of rho^{1-d} F(rho), accumulated from r_star downward
    rho, wts = _gl_nodes(lo, hi, gl_order)
    with np.errstate(divide="ignore"):
        outer_vals = np.where(rho > 0.0, rho ** (1.0 - d), 0.0) * F(rho)
    outer = np.sum(wts * outer_vals, axis=1)
    W_edges = np.concatenate([[0.0], np.cumsum(outer)])
    w_vals = W_edges[-1] - W_edges
    w_vals[-1] = 0.0
    sol = RadialSolution(r_star=r_star, r_grid=edges, w_values=w_vals, params=p)
    object.__setattr__(sol, "_cumF", F)
    return sol


def radial_gradient_integral(sol: RadialSolution, q: float) -> float:
    """Integral of |grad w|^q against the weight over the half-ball,
    using w'(r) = -r^{1-d} F(r) analytically."""
    p = sol.params
    d = p.N + p.m + p.alpha
    edges = sol.r_grid
    rho, wts = _gl_nodes(edges[:-1], edges[1:], 6)
    with np.errstate(divide="ignore"):
        wprime = np.where(rho > 0.0, rho ** (1.0 - d), 0.0) * sol._cumF(rho)
    vals = np.abs(wprime) ** q * rho ** (d - 1.0)
    return kappa(p.N, p.alpha) * float(np.sum(wts * vals))


def mesh_gradient_integral(u: MeshFunction, q: float, m: float, alpha: float) -> float:
    g = np.linalg.norm(u.element_gradients(), axis=1)
    return float(np.dot(g**q, u.mesh.weight_measures(m, alpha)))


def verify_comparison(prob: EllipticProblem, radial_points: int = 400) -> dict:
    """Talenti-style comparison: the symmetrization of the solution is
    dominated pointwise by the explicit radial solution of the
    symmetrized problem, and gradient integrals do not increase.

    Returns a report dict with the maximal pointwise slack and the
    gradient table for q in {0.5, 1, 2}.
    """
    p = prob.params
    m, alpha = p.m, p.alpha
    u = assemble_and_solve(prob)
    U = schwarz_symmetrization(u, m, alpha)
    total = float(np.sum(prob.mesh.weight_measures(m, alpha)))
    d = 2.0 + m + alpha
    mu1 = mu_half_ball(WeightParams(N=2, k=0.0, l=m, alpha=alpha), 1.0)
    r_star = (total / mu1) ** (1.0 / d)
    f_mesh = MeshFunction(prob.mesh, prob.rhs)
    f_star = decreasing_rearrangement(f_mesh, m, alpha)
    w = symmetrized_solution(f_star, WeightParams(N=2, k=p.k, l=p.l, alpha=alpha), r_star)

    r = np.linspace(0.0, r_star, radial_points)
    slack = np.max(U(r) - w(r))
    grad_table = {}
    for q in (0.5, 1.0, 2.0):
        lhs = mesh_gradient_integral(u, q, m, alpha)
        rhs = radial_gradient_integral(w, q)
        grad_table[str(q)] = {"u": lhs, "w": rhs, "slack": rhs - lhs}
    return {
        "r_star": r_star,
        "max_pointwise_slack": float(slack),
        "gradient_q_table": grad_table,
        "mesh_h": prob.mesh.mesh_size(),
        "solution": u,
        "symmetrized": U,
        "radial": w,
    }


def comparison_report_json(report: dict, tolerance: float) -> str:
    """Serializable subset of a comparison report with a verdict."""
    grad_ok = all(
        v["slack"] >= -tolerance for v in report["gradient_q_table"].values()
    )
    verdict = "pass" if report["max_pointwise_slack"] <= tolerance and grad_ok else "fail"
    payload = {
        "r_star": report["r_star"],
        "max_pointwise_slack": report["max_pointwise_slack"],
        "gradient_q_table": report["gradient_q_table"],
        "mesh_h": report["mesh_h"],
        "verdict": verdict,
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def save_solution_csv(u: MeshFunction, path) -> None:
    with open(path, "w") as fh:
        fh.write("node_id,x1,x2,u\n")
        for i, ((x, y), v) in enumerate(zip(u.mesh.nodes, u.values)):
            fh.write(f"{i},{float(x)!r},{float(y)!r},{float(v)!r}\n")


def load_problem(path) -> EllipticProblem:
    """Problem file: the mesh interchange sections plus PARAMS (N k l alpha),
    MATRIX (`iso LAMBDA` or per-element `e b11 b12 b22`), RHS (`expr NAME`
    or nodal `i value` lines)."""
    with open(path) as fh:
        lines = fh.read().splitlines()
    mesh_lines, section = [], None
    params = None
    matrix_spec: list = []
    rhs_spec: list = []
    for ln_no, raw in enumerate(lines, start=1):
        ln = raw.strip()
        if not ln or ln.startswith("#"):
            continue
        if ln in ("NODES", "ELEMENTS", "BOUNDARY"):
            section = "mesh"
            mesh_lines.append(ln)
            continue
        if ln in ("PARAMS", "MATRIX", "RHS"):
            section = ln
            continue
        if section == "mesh":
            mesh_lines.append(ln)
        elif section == "PARAMS":
            parts = ln.split()
            try:
                params = WeightParams(
                    N=int(parts[0]), k=float(parts[1]), l=float(parts[2]),
                    alpha=float(parts[3]),
                )
            except (IndexError, ValueError) as exc:
                raise ValueError(f"{path}:{ln_no}: bad PARAMS line") from exc
        elif section == "MATRIX":
            matrix_spec.append((ln_no, ln))
        elif section == "RHS":
            rhs_spec.append((ln_no, ln))
        else:
            raise ValueError(f"{path}:{ln_no}: data before any section header")
    mesh = parse_mesh(mesh_lines, name=str(path))
    if params is None:
        raise ValueError(f"{path}: missing PARAMS section")
    if params.N != 2:
        raise ValueError(f"{path}: the finite element solver is planar (N = 2)")

    matrix_field = None
    if matrix_spec:
        first = matrix_spec[0][1].split()
        if first[0] == "iso":
            lam = float(first[1])
            if lam != 1.0:
                matrix_field = np.tile(
                    np.diag([1.0, lam]), (mesh.element_count, 1, 1)
                )
        else:
            matrix_field = np.tile(np.eye(2), (mesh.element_count, 1, 1))
            for ln_no, ln in matrix_spec:
                parts = ln.split()
                try:
                    e = int(parts[0])
                    b11, b12, b22 = (float(v) for v in parts[1:4])
                except (IndexError, ValueError) as exc:
                    raise ValueError(f"{path}:{ln_no}: bad MATRIX line") from exc
                matrix_field[e] = [[b11, b12], [b12, b22]]

    if not rhs_spec:
        raise ValueError(f"{path}: missing RHS section")
    first = rhs_spec[0][1].split()
    if first[0] == "expr":
        name = first[1]
        if name not in RHS_CATALOG:
            raise ValueError(f"{path}: unknown rhs expression {name!r}")
        fn = RHS_CATALOG[name]
        rhs = fn(mesh.nodes[:, 0], mesh.nodes[:, 1])
    else:
        rhs = np.zeros(mesh.node_count)
        for ln_no, ln in rhs_spec:
            parts = ln.split()
            try:
                rhs[int(parts[0])] = float(parts[1])
            except (IndexError, ValueError) as exc:
                raise ValueError(f"{path}:{ln_no}: bad RHS line") from exc
    return EllipticProblem(mesh=mesh, params=params, rhs=rhs, matrix_field=matrix_field)
