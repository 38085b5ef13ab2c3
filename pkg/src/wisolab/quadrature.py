"""One-dimensional composite Gauss-Legendre quadrature and triangle rules.

The angular integrands of the star-profile functionals behave like
sin(theta)^alpha near the endpoints, so the composite rule supports
grading of the panel edges toward both ends of the interval.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["QuadratureSpec", "panel_nodes", "composite_gl", "tri_rule_points"]


@dataclass(frozen=True)
class QuadratureSpec:
    """Composite Gauss-Legendre rule: `panels` graded panels of
    `nodes_per_panel` points each; `grading_exponent` >= 1 clusters the
    panel edges toward both endpoints of the interval."""

    panels: int = 96
    nodes_per_panel: int = 12
    grading_exponent: float = 4.0

    def __post_init__(self) -> None:
        if self.panels < 1:
            raise ValueError("panels must be >= 1")
        if self.nodes_per_panel < 2:
            raise ValueError("nodes_per_panel must be >= 2")
        if self.grading_exponent < 1.0:
            raise ValueError("grading_exponent must be >= 1")


def _graded_edges(a: float, b: float, panels: int, grading: float) -> np.ndarray:
    u = np.linspace(0.0, 1.0, panels + 1)
    # symmetric graded map; reduces to the identity for grading = 1
    g = u**grading / (u**grading + (1.0 - u) ** grading)
    return a + (b - a) * g


def panel_nodes(
    a: float,
    b: float,
    spec: QuadratureSpec,
    extra_breakpoints: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the composite rule on [a, b].

    `extra_breakpoints` (e.g. spline knots) are merged into the graded
    panel edges so that piecewise-smooth integrands are integrated at the
    full Gauss order.
    """
    edges = _graded_edges(a, b, spec.panels, spec.grading_exponent)
    if extra_breakpoints is not None:
        bp = np.asarray(extra_breakpoints, dtype=float)
        bp = bp[(bp > a) & (bp < b)]
        edges = np.unique(np.concatenate([edges, bp]))
    x, w = np.polynomial.legendre.leggauss(spec.nodes_per_panel)
    lo = edges[:-1, None]
    hi = edges[1:, None]
    half = 0.5 * (hi - lo)
    nodes = (lo + half + half * x[None, :]).ravel()
    weights = (half * w[None, :]).ravel()
    return nodes, weights


def composite_gl(f, a: float, b: float, spec: QuadratureSpec, extra=None) -> float:
    """Integrate a vectorized callable over [a, b] with the composite rule."""
    x, w = panel_nodes(a, b, spec, extra)
    return float(np.dot(w, f(x)))


# degree-5 rule with 7 points on the reference triangle, barycentric form
_TRI7_BARY = np.array(
    [
        [1 / 3, 1 / 3, 1 / 3],
        [0.797426985353087, 0.101286507323456, 0.101286507323456],
        [0.101286507323456, 0.797426985353087, 0.101286507323456],
        [0.101286507323456, 0.101286507323456, 0.797426985353087],
        [0.059715871789770, 0.470142064105115, 0.470142064105115],
        [0.470142064105115, 0.059715871789770, 0.470142064105115],
        [0.470142064105115, 0.470142064105115, 0.059715871789770],
    ]
)
_TRI7_W = np.array(
    [
        0.225,
        0.125939180544827,
        0.125939180544827,
        0.125939180544827,
        0.132394152788506,
        0.132394152788506,
        0.132394152788506,
    ]
)


def _subdivide_bary(bary: np.ndarray, w: np.ndarray, levels: int):
    """Refine a barycentric rule by uniform 4-way triangle subdivision."""
    if levels == 0:
        return bary, w
    # children of the reference triangle in barycentric coordinates
    corners = [
        np.array([[1, 0, 0], [0.5, 0.5, 0], [0.5, 0, 0.5]], dtype=float),
        np.array([[0.5, 0.5, 0], [0, 1, 0], [0, 0.5, 0.5]], dtype=float),
        np.array([[0.5, 0, 0.5], [0, 0.5, 0.5], [0, 0, 1]], dtype=float),
        np.array([[0.5, 0.5, 0], [0, 0.5, 0.5], [0.5, 0, 0.5]], dtype=float),
    ]
    bs, ws = [], []
    for c in corners:
        bs.append(bary @ c)
        ws.append(0.25 * w)
    return _subdivide_bary(np.vstack(bs), np.concatenate(ws), levels - 1)


_TRI_RULES = {lvl: _subdivide_bary(_TRI7_BARY, _TRI7_W, lvl) for lvl in range(5)}

_CHILD_CORNERS = [
    np.array([[1, 0, 0], [0.5, 0.5, 0], [0.5, 0, 0.5]]),
    np.array([[0.5, 0.5, 0], [0, 1, 0], [0, 0.5, 0.5]]),
    np.array([[0.5, 0, 0.5], [0, 0.5, 0.5], [0, 0, 1]]),
    np.array([[0.5, 0.5, 0], [0, 0.5, 0.5], [0.5, 0, 0.5]]),
]


def subtriangle_corners(levels: int) -> np.ndarray:
    """Barycentric corners of the 4^levels sub-triangles of uniform
    refinement, shape (4^levels, 3, 3)."""
    corners = np.eye(3)[None, :, :]
    for _ in range(levels):
        corners = np.concatenate(
            [np.einsum("tij,jk->tik", corners, c) for c in _CHILD_CORNERS]
        )
    return corners


def tri_rule_points(verts: np.ndarray, level: int = 0):
    """Quadrature points/weights for triangles.

    Parameters
    ----------
    verts : array, shape (E, 3, 2)
        Vertex coordinates per triangle.
    level : int
        Uniform subdivision level; level s yields 7 * 4^s points, used for
        elements where the weight is not smooth (touching {x_N = 0} or the
        origin).

    Returns
    -------
    points : array, shape (E, Q, 2)
    weights : array, shape (E, Q)
        Weights include the triangle areas.
    """
    bary, w = _TRI_RULES[level]
    pts = np.einsum("qj,ejd->eqd", bary, verts)
    v0, v1, v2 = verts[:, 0], verts[:, 1], verts[:, 2]
    area = 0.5 * np.abs(
        (v1[:, 0] - v0[:, 0]) * (v2[:, 1] - v0[:, 1])
        - (v2[:, 0] - v0[:, 0]) * (v1[:, 1] - v0[:, 1])
    )
    return pts, area[:, None] * w[None, :]
