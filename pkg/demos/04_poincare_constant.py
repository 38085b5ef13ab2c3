"""Sharp constant of the weighted Poincare inequality.

The symmetrized problem reduces to a radial Sturm-Liouville eigenvalue
problem with weight r^{d-1}, d = N + m + alpha.  For d = 3 the first
eigenfunction is sin(pi r)/r and the constant is exactly 1/pi^2, which
makes a clean convergence benchmark; the script also shows the R*^2
scaling law.
"""

import math

from wisolab import WeightParams, poincare_constant


def main():
    p = WeightParams(N=2, k=0.0, l=0.0, alpha=1.0)  # m = 0 -> d = 3
    print("d = 3 benchmark (exact constant 1/pi^2):")
    for n in (100, 1000, 10_000):
        c = poincare_constant(p, 1.0, intervals=n)
        print(f"  intervals = {n:>6}: C = {c:.12f}"
              f"  rel err = {abs(c * math.pi**2 - 1.0):.2e}")

    print("\nscaling with the half-ball radius (C proportional to R*^2):")
    c1 = poincare_constant(p, 1.0)
    for r in (0.5, 2.0, 3.0):
        c = poincare_constant(p, r)
        print(f"  R* = {r}: C/C(1) = {c / c1:.10f}  (exact {r * r})")

    print("\nother exponent tuples:")
    for N, k, l, alpha in ((2, 1.0, 0.0, 1.0), (3, 2.0, 1.0, 2.0)):
        q = WeightParams(N=N, k=k, l=l, alpha=alpha)
        d = N + q.m + alpha
        print(f"  (N,k,l,alpha)=({N},{k},{l},{alpha})  d = {d:g}"
              f"  C = {poincare_constant(q, 1.0):.10f}")


if __name__ == "__main__":
    main()
