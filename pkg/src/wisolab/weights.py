"""Parameter bookkeeping and closed-form constants for the weighted
half-space isoperimetric problem.

The volume density is |x|^l * x_N^alpha and the surface density is
|x|^k * x_N^alpha on the upper half-space {x_N > 0}.  Everything in this
module is a pure function of the exponents (N, k, l, alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "WeightParams",
    "RegimeFlags",
    "gamma_fn",
    "beta_fn",
    "kappa",
    "mu_half_ball",
    "c_rad",
    "l1_threshold",
]


# Lanczos coefficients (g = 7, n = 9), relative error below 1e-13 on the
# positive real axis.
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_fn(x: float) -> float:
    """Gamma function for positive real argument (Lanczos approximation).

    Parameters
    ----------
    x : float
        Argument, must be > 0.

    Returns
    -------
    float
        Gamma(x), relative error below 1e-12 on [0.5, 50].
    """
    if not x > 0.0:
        raise ValueError(f"gamma_fn requires x > 0, got {x}")
    if x < 0.5:
        # reflection would be needed for the singular strip; recurse upward
        return gamma_fn(x + 1.0) / x
    z = x - 1.0
    a = _LANCZOS_COEFFS[0]
    for i in range(1, len(_LANCZOS_COEFFS)):
        a += _LANCZOS_COEFFS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * a


def beta_fn(a: float, b: float) -> float:
    """Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b), a, b > 0."""
    if not (a > 0.0 and b > 0.0):
        raise ValueError(f"beta_fn requires a, b > 0, got a={a}, b={b}")
    # work in log space to postpone overflow for large arguments
    return math.exp(
        math.log(gamma_fn(a)) + math.log(gamma_fn(b)) - math.log(gamma_fn(a + b))
    )


def kappa(N: int, alpha: float) -> float:
    """Weighted surface measure of the unit upper half-sphere.

    kappa(N, alpha) = integral of x_N^alpha over the spherical part of the
    boundary of the unit half-ball, equal to
    B((N-1)/2, (alpha+1)/2) * pi^{(N-1)/2} / Gamma((N-1)/2).
    """
    if N < 2:
        raise ValueError(f"kappa requires N >= 2, got {N}")
    if not alpha > 0.0:
        raise ValueError(f"kappa requires alpha > 0, got {alpha}")
    half = 0.5 * (N - 1)
    return beta_fn(half, 0.5 * (alpha + 1.0)) * math.pi**half / gamma_fn(half)


@dataclass(frozen=True)
class WeightParams:
    """Exponent tuple (N, k, l, alpha) of the weighted problem.

    `m = 2k - l` is the derived exponent of the Dirichlet-energy weight;
    it is always recomputed from k and l.
    """

    N: int
    k: float
    l: float
    alpha: float

    def __post_init__(self) -> None:
        if self.N < 2:
            raise ValueError(f"dimension N must be >= 2, got {self.N}")
        if not self.alpha > 0.0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if not self.l + self.N + self.alpha > 0.0:
            raise ValueError(
                f"need l + N + alpha > 0, got {self.l + self.N + self.alpha}"
            )

    @property
    def m(self) -> float:
        return 2.0 * self.k - self.l

    @property
    def volume_exponent(self) -> float:
        """Scaling exponent of the weighted volume: l + alpha + N."""
        return self.l + self.alpha + self.N

    @property
    def perimeter_exponent(self) -> float:
        """Scaling exponent of the weighted perimeter: k + alpha + N - 1."""
        return self.k + self.alpha + self.N - 1.0

    def regime(self) -> "RegimeFlags":
        try:
            l1 = l1_threshold(self.k, self.N, self.alpha)
        except ValueError:
            l1 = None
        return RegimeFlags(
            k_ge_l_plus_1=self.k >= self.l + 1.0,
            strict=self.k > self.l + 1.0,
            l1_value=l1,
        )


@dataclass(frozen=True)
class RegimeFlags:
    """Which side of the k = l + 1 threshold the parameters sit on."""

    k_ge_l_plus_1: bool
    strict: bool
    l1_value: float | None = field(default=None)


def mu_half_ball(p: WeightParams, R: float) -> float:
    """Weighted volume of the half-ball of radius R:
    kappa(N, alpha) * R^{l+alpha+N} / (l+alpha+N)."""
    if not R > 0.0:
        raise ValueError(f"radius must be > 0, got {R}")
    d = p.volume_exponent
    return kappa(p.N, p.alpha) * R**d / d


def c_rad(p: WeightParams) -> float:
    """Isoperimetric quotient of the unit half-ball.

    Equals (l+alpha+N)^{(k+N+alpha-1)/(l+N+alpha)}
    * kappa(N, alpha)^{(l-k+1)/(l+N+alpha)}; this is the sharp constant
    of the inequality when k >= l + 1.
    """
    d = p.volume_exponent
    return d ** (p.perimeter_exponent / d) * kappa(p.N, p.alpha) ** (
        (p.l - p.k + 1.0) / d
    )


def l1_threshold(k: float, N: int, alpha: float) -> float:
    """Threshold l1(k, N, alpha) below which the companion regimes apply.

    l1 = (k+N+alpha-1)^3 / [(k+N+alpha-1)^2 - (N+alpha-1)^2/(N+alpha)]
         - N - alpha.
    """
    if N < 2:
        raise ValueError(f"l1_threshold requires N >= 2, got {N}")
    if not alpha > 0.0:
        raise ValueError(f"l1_threshold requires alpha > 0, got {alpha}")
    a = k + N + alpha - 1.0
    denom = a * a - (N + alpha - 1.0) ** 2 / (N + alpha)
    if abs(denom) < 1e-14 * max(1.0, a * a):
        raise ValueError("singular denominator in l1_threshold")
    return a**3 / denom - N - alpha
