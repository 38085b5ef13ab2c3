"""Closed-form constants of the weighted half-space problem.

Walks through the geometric constants for a few exponent tuples: the
weighted half-sphere measure kappa, the half-ball volume, the sharp
quotient constant, and which side of the k = l + 1 threshold each tuple
sits on.
"""

from wisolab import WeightParams, c_rad, kappa, l1_threshold, mu_half_ball

CASES = [
    (2, 1.0, 0.0, 1.0),
    (2, 2.0, 0.0, 1.0),
    (2, 0.5, -0.5, 0.5),
    (3, 3.0, 1.0, 2.0),
]


def main():
    print(f"{'(N,k,l,alpha)':<22}{'kappa':>10}{'mu(B1+)':>10}"
          f"{'c_rad':>10}{'l1':>10}  regime")
    for N, k, l, alpha in CASES:
        p = WeightParams(N=N, k=k, l=l, alpha=alpha)
        reg = p.regime()
        tag = "k >= l+1 (proved)" if reg.k_ge_l_plus_1 else "exploratory"
        print(f"{str((N, k, l, alpha)):<22}"
              f"{kappa(N, alpha):>10.5f}{mu_half_ball(p, 1.0):>10.5f}"
              f"{c_rad(p):>10.5f}{l1_threshold(k, N, alpha):>10.5f}  {tag}")

    print()
    print("Reference identities: kappa(2,1) = 2, kappa(3,1) = pi, and for")
    print("(N,k,l,alpha) = (2,1,0,1) the half-ball quotient c_rad equals 3.")


if __name__ == "__main__":
    main()
