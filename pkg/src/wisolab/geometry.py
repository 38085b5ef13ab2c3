"""Bounded axisymmetric star-shaped subsets of the upper half-space.

A set is described by a positive radial profile rho over the polar angle:
for N = 2 the angle runs over (0, pi) measured from the positive x_1 axis,
for N >= 3 it runs over (0, pi/2) measured from the x_N axis and the set
is rotationally symmetric about that axis.  Weighted volume, weighted
perimeter and the symmetrized radius reduce to one-dimensional integrals
in the angle.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .quadrature import QuadratureSpec, panel_nodes
from .weights import WeightParams, gamma_fn, kappa, mu_half_ball

__all__ = [
    "StarProfile",
    "measure",
    "perimeter",
    "symmetrized_radius",
    "scale",
    "random_profile",
    "save_profile",
    "load_profile",
]


def _theta_max(N: int) -> float:
    return math.pi if N == 2 else 0.5 * math.pi


def _sphere_factor(N: int) -> float:
    """Surface measure of S^{N-2} (the revolution factor); 1 for N = 2."""
    if N == 2:
        return 1.0
    half = 0.5 * (N - 1)
    return 2.0 * math.pi**half / gamma_fn(half)


@dataclass(frozen=True)
class StarProfile:
    """Radial profile of a star-shaped set, interpolated by a cubic spline."""

    N: int
    theta: np.ndarray
    rho: np.ndarray
    interpolation: str = "cubic"
    _spline: CubicSpline = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        theta = np.asarray(self.theta, dtype=float)
        rho = np.asarray(self.rho, dtype=float)
        if self.N < 2:
            raise ValueError(f"dimension must be >= 2, got {self.N}")
        if theta.ndim != 1 or theta.size < 4:
            raise ValueError("theta grid must be 1-D with at least 4 points")
        if np.any(np.diff(theta) <= 0.0):
            raise ValueError("theta grid must be strictly increasing")
        tmax = _theta_max(self.N)
        if abs(theta[0]) > 1e-12 or abs(theta[-1] - tmax) > 1e-12:
            raise ValueError(
                f"theta must cover the full interval [0, {tmax}] for N={self.N}"
            )
        if rho.shape != theta.shape:
            raise ValueError("rho and theta must have equal shapes")
        if np.any(rho <= 0.0):
            raise ValueError("profile rho must be strictly positive")
        if self.interpolation != "cubic":
            raise ValueError(f"unknown interpolation rule {self.interpolation!r}")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "_spline", CubicSpline(theta, rho))

    @property
    def theta_span(self) -> tuple[float, float]:
        return 0.0, _theta_max(self.N)

    def rho_at(self, t: np.ndarray) -> np.ndarray:
        return self._spline(t)

    def drho_at(self, t: np.ndarray) -> np.ndarray:
        return self._spline(t, 1)


def _angular_weight(s: StarProfile, t: np.ndarray, alpha: float) -> np.ndarray:
    """Angular part of the density x_N^alpha times the sphere area element."""
    if s.N == 2:
        return np.sin(t) ** alpha
    return np.cos(t) ** alpha * np.sin(t) ** (s.N - 2)


def measure(s: StarProfile, l: float, alpha: float, q: QuadratureSpec | None = None) -> float:
    """Weighted volume of the set: integral of |x|^l x_N^alpha.

    The radial integral is closed-form per angle (r^{l+alpha+N-1} integrates
    to rho^{l+alpha+N}/(l+alpha+N)), so only the angle is quadratured.
    """
    d = l + alpha + s.N
    if not d > 0.0:
        raise ValueError(f"need l + alpha + N > 0, got {d}")
    q = q or QuadratureSpec()
    a, b = s.theta_span
    x, w = panel_nodes(a, b, q, extra_breakpoints=s.theta)
    vals = _angular_weight(s, x, alpha) * s.rho_at(x) ** d / d
    return _sphere_factor(s.N) * float(np.dot(w, vals))


def perimeter(s: StarProfile, k: float, alpha: float, q: QuadratureSpec | None = None) -> float:
    """Weighted perimeter: integral of |x|^k x_N^alpha over the curved
    boundary r = rho(theta).  The flat part on {x_N = 0} carries zero
    weight for alpha > 0 and is omitted."""
    q = q or QuadratureSpec()
    a, b = s.theta_span
    x, w = panel_nodes(a, b, q, extra_breakpoints=s.theta)
    rho = s.rho_at(x)
    drho = s.drho_at(x)
    arc = np.sqrt(rho * rho + drho * drho)
    vals = _angular_weight(s, x, alpha) * rho ** (k + alpha + s.N - 2.0) * arc
    return _sphere_factor(s.N) * float(np.dot(w, vals))


def symmetrized_radius(
    s: StarProfile, l: float, alpha: float, q: QuadratureSpec | None = None
) -> float:
    """Radius R* of the half-ball with the same weighted volume."""
    mu = measure(s, l, alpha, q)
    if not mu > 0.0:
        raise ValueError("profile has non-positive weighted volume")
    p = WeightParams(N=s.N, k=0.0, l=l, alpha=alpha)
    return (mu / mu_half_ball(p, 1.0)) ** (1.0 / (l + alpha + s.N))


def scale(s: StarProfile, t: float) -> StarProfile:
    """Dilate the set by factor t > 0 (profile rho -> t * rho)."""
    if not t > 0.0:
        raise ValueError(f"scale factor must be > 0, got {t}")
    return StarProfile(N=s.N, theta=s.theta.copy(), rho=t * s.rho)


def random_profile(
    seed,
    mode_count: int = 4,
    amplitude: float = 0.3,
    base: float = 1.0,
    N: int = 2,
    grid_size: int = 257,
) -> StarProfile:
    """Seeded random star profile rho = base * (1 + sum_j c_j cos(j pi t/tmax)).

    The coefficients are normalized so that sum |c_j| = amplitude, which
    bounds the relative deviation from the half-ball by `amplitude` and
    keeps rho positive for amplitude < 1.  Equal seeds give identical
    profiles.
    """
    if not 0.0 <= amplitude < 1.0:
        raise ValueError(f"amplitude must lie in [0, 1), got {amplitude}")
    if mode_count < 1:
        raise ValueError("mode_count must be >= 1")
    tmax = _theta_max(N)
    theta = np.linspace(0.0, tmax, grid_size)
    rng = np.random.default_rng(seed)
    raw = rng.uniform(-1.0, 1.0, mode_count)
    total = np.sum(np.abs(raw))
    coeffs = amplitude * raw / total if total > 0.0 else np.zeros(mode_count)
    pert = np.zeros_like(theta)
    for j, c in enumerate(coeffs, start=1):
        pert += c * np.cos(j * math.pi * theta / tmax)
    return StarProfile(N=N, theta=theta, rho=base * (1.0 + pert))


def save_profile(s: StarProfile, path) -> None:
    """Write a profile as plain text: header `N theta_count`, then one
    `theta rho` pair per line."""
    with open(path, "w") as fh:
        fh.write(f"{s.N} {s.theta.size}\n")
        for t, r in zip(s.theta, s.rho):
            fh.write(f"{float(t)!r} {float(r)!r}\n")


def load_profile(path) -> StarProfile:
    with open(path) as fh:
        text = fh.read()
    return _parse_profile(text, name=str(path))


def _parse_profile(text: str, name: str = "<profile>") -> StarProfile:
    lines = [ln.strip() for ln in io.StringIO(text)]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError(f"{name}: empty profile file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"{name}:1: expected header 'N theta_count'")
    N, count = int(head[0]), int(head[1])
    if len(lines) - 1 != count:
        raise ValueError(
            f"{name}: header declares {count} rows, found {len(lines) - 1}"
        )
    data = np.array([[float(v) for v in ln.split()] for ln in lines[1:]])
    if data.shape[1] != 2:
        raise ValueError(f"{name}: rows must be 'theta rho' pairs")
    return StarProfile(N=N, theta=data[:, 0], rho=data[:, 1])
