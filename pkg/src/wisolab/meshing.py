"""Conforming triangle meshes of planar half-space domains.

Meshes split their boundary into `gamma_plus` (edges in the open half-
plane, where Dirichlet data lives) and `gamma_zero` (edges on {x_2 = 0},
where the degenerate weight vanishes and the natural condition applies).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .quadrature import tri_rule_points

__all__ = ["TriMesh", "half_disk_mesh", "save_mesh", "load_mesh"]

GAMMA_PLUS = "gamma_plus"
GAMMA_ZERO = "gamma_zero"


@dataclass
class TriMesh:
    """Triangulation: node coordinates, element connectivity, tagged
    boundary edges."""

    nodes: np.ndarray  # (n, 2)
    tris: np.ndarray  # (e, 3) int
    boundary: list  # [(n1, n2, tag)]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        self.nodes = np.asarray(self.nodes, dtype=float)
        self.tris = np.asarray(self.tris, dtype=np.int64)
        if self.nodes.ndim != 2 or self.nodes.shape[1] != 2:
            raise ValueError("nodes must be an (n, 2) array")
        if self.tris.ndim != 2 or self.tris.shape[1] != 3:
            raise ValueError("tris must be an (e, 3) array")
        if np.any(self.areas() <= 0.0):
            raise ValueError("mesh contains degenerate or inverted elements")
        for _, _, tag in self.boundary:
            if tag not in (GAMMA_PLUS, GAMMA_ZERO):
                raise ValueError(f"unknown boundary tag {tag!r}")

    @property
    def node_count(self) -> int:
        return self.nodes.shape[0]

    @property
    def element_count(self) -> int:
        return self.tris.shape[0]

    def verts(self) -> np.ndarray:
        """Vertex coordinates per element, shape (e, 3, 2)."""
        return self.nodes[self.tris]

    def areas(self) -> np.ndarray:
        if "areas" not in self._cache:
            v = self.nodes[self.tris]
            d1 = v[:, 1] - v[:, 0]
            d2 = v[:, 2] - v[:, 0]
            self._cache["areas"] = 0.5 * (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])
        return self._cache["areas"]

    def grads(self) -> np.ndarray:
        """Gradients of the P1 basis functions, shape (e, 3, 2)."""
        if "grads" not in self._cache:
            v = self.nodes[self.tris]
            g = np.empty((self.element_count, 3, 2))
            a2 = 2.0 * self.areas()
            for i in range(3):
                pj = v[:, (i + 1) % 3]
                pk = v[:, (i + 2) % 3]
                # grad of barycentric i is the rotated opposite edge / (2A)
                g[:, i, 0] = (pj[:, 1] - pk[:, 1]) / a2
                g[:, i, 1] = (pk[:, 0] - pj[:, 0]) / a2
            self._cache["grads"] = g
        return self._cache["grads"]

    def mesh_size(self) -> float:
        v = self.nodes[self.tris]
        e = np.linalg.norm(np.roll(v, -1, axis=1) - v, axis=2)
        return float(e.max())

    def boundary_nodes(self, tag: str) -> np.ndarray:
        ids = set()
        for n1, n2, t in self.boundary:
            if t == tag:
                ids.add(n1)
                ids.add(n2)
        return np.array(sorted(ids), dtype=np.int64)

    def quad_level(self) -> np.ndarray:
        """Subdivision level per element for weight quadrature: refine
        where the density |x|^l x_2^alpha loses smoothness (elements
        touching the axis {x_2 = 0} or the origin)."""
        if "qlevel" not in self._cache:
            v = self.nodes[self.tris]
            h = np.sqrt(np.abs(self.areas()))
            touch_axis = np.min(v[:, :, 1], axis=1) < 1e-12 * np.maximum(h, 1.0)
            touch_origin = np.min(np.linalg.norm(v, axis=2), axis=1) < 1e-12
            lvl = np.zeros(self.element_count, dtype=int)
            lvl[touch_axis] = 2
            lvl[touch_origin | (touch_axis & touch_origin)] = 3
            self._cache["qlevel"] = lvl
        return self._cache["qlevel"]

    def weight_quadrature(self):
        """Quadrature points and weights per element, grouped by
        subdivision level.  Yields (element_ids, points, weights)."""
        lvl = self.quad_level()
        verts = self.verts()
        for s in np.unique(lvl):
            ids = np.nonzero(lvl == s)[0]
            pts, w = tri_rule_points(verts[ids], level=int(s))
            yield ids, pts, w

    def weight_measures(self, l: float, alpha: float) -> np.ndarray:
        """Per-element integrals of the density |x|^l x_2^alpha."""
        key = ("wm", l, alpha)
        if key not in self._cache:
            out = np.zeros(self.element_count)
            for ids, pts, w in self.weight_quadrature():
                dens = weight_density(pts, l, alpha)
                out[ids] = np.sum(w * dens, axis=1)
            self._cache[key] = out
        return self._cache[key]


def weight_density(pts: np.ndarray, l: float, alpha: float) -> np.ndarray:
    """Density |x|^l * x_2^alpha evaluated at points (..., 2)."""
    r = np.linalg.norm(pts, axis=-1)
    y = np.clip(pts[..., 1], 0.0, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        rad = np.where(r > 0.0, r, 1.0) ** l if l != 0.0 else np.ones_like(r)
        rad = np.where(r > 0.0, rad, 0.0 if l > 0.0 else rad)
        ax = y**alpha
    return rad * ax


def half_disk_mesh(h: float, R: float = 1.0, grading: float = 1.0) -> TriMesh:
    """Structured polar triangulation of the half-disc {|x| < R, x_2 > 0}.

    `grading` > 1 clusters the radial rings toward the origin (useful when
    the volume weight blows up there, i.e. negative radial exponents).
    """
    if not h > 0.0:
        raise ValueError("mesh size h must be > 0")
    n_r = max(2, round(R / h))
    n_t = max(4, round(math.pi * R / h))
    radii = R * (np.arange(1, n_r + 1) / n_r) ** grading
    angles = np.linspace(0.0, math.pi, n_t + 1)

    nodes = [(0.0, 0.0)]
    index = {}
    for i, r in enumerate(radii):
        for j, t in enumerate(angles):
            index[(i, j)] = len(nodes)
            nodes.append((r * math.cos(t), r * math.sin(t)))
    nodes = np.array(nodes)
    # snap the axis rays exactly onto {x_2 = 0}
    nodes[np.abs(nodes[:, 1]) < 1e-14, 1] = 0.0

    tris = []
    for j in range(n_t):  # fan around the center node
        tris.append((0, index[(0, j)], index[(0, j + 1)]))
    for i in range(n_r - 1):
        for j in range(n_t):
            a, b = index[(i, j)], index[(i, j + 1)]
            c, d = index[(i + 1, j)], index[(i + 1, j + 1)]
            tris.append((a, d, b))
            tris.append((a, c, d))
    tris = np.array(tris, dtype=np.int64)

    boundary = []
    for j in range(n_t):  # outer arc
        boundary.append((index[(n_r - 1, j)], index[(n_r - 1, j + 1)], GAMMA_PLUS))
    prev0, prevpi = 0, 0
    for i in range(n_r):  # the two rays on the axis
        boundary.append((prev0, index[(i, 0)], GAMMA_ZERO))
        boundary.append((prevpi, index[(i, n_t)], GAMMA_ZERO))
        prev0, prevpi = index[(i, 0)], index[(i, n_t)]
    return TriMesh(nodes=nodes, tris=tris, boundary=boundary)


def save_mesh(mesh: TriMesh, path) -> None:
    """Text interchange format with NODES / ELEMENTS / BOUNDARY sections."""
    with open(path, "w") as fh:
        fh.write("NODES\n")
        for i, (x, y) in enumerate(mesh.nodes):
            fh.write(f"{i} {float(x)!r} {float(y)!r}\n")
        fh.write("ELEMENTS\n")
        for i, (a, b, c) in enumerate(mesh.tris):
            fh.write(f"{i} {a} {b} {c}\n")
        fh.write("BOUNDARY\n")
        for a, b, tag in mesh.boundary:
            fh.write(f"{a} {b} {tag}\n")


def load_mesh(path) -> TriMesh:
    with open(path) as fh:
        lines = fh.read().splitlines()
    return parse_mesh(lines, name=str(path))


def parse_mesh(lines, name: str = "<mesh>") -> TriMesh:
    section = None
    nodes, tris, boundary = {}, {}, []
    for ln_no, raw in enumerate(lines, start=1):
        ln = raw.strip()
        if not ln or ln.startswith("#"):
            continue
        if ln in ("NODES", "ELEMENTS", "BOUNDARY"):
            section = ln
            continue
        parts = ln.split()
        try:
            if section == "NODES":
                nodes[int(parts[0])] = (float(parts[1]), float(parts[2]))
            elif section == "ELEMENTS":
                tris[int(parts[0])] = tuple(int(v) for v in parts[1:4])
            elif section == "BOUNDARY":
                boundary.append((int(parts[0]), int(parts[1]), parts[2]))
            else:
                raise ValueError("data before any section header")
        except (IndexError, ValueError) as exc:
            raise ValueError(f"{name}:{ln_no}: malformed line: {raw!r}") from exc
    if not nodes or not tris:
        raise ValueError(f"{name}: missing NODES or ELEMENTS section")
    node_arr = np.array([nodes[i] for i in sorted(nodes)])
    tri_arr = np.array([tris[i] for i in sorted(tris)], dtype=np.int64)
    return TriMesh(nodes=node_arr, tris=tri_arr, boundary=boundary)
