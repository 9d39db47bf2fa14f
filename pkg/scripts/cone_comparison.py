"""Rays and inequality counts of K_n, psi(K_n), Xi-tilde and Xi for a range of n."""

import argparse
import time

from clustercones import cones, gvec


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--max-n", type=int, default=5)
    args = p.parse_args()
    print(f"{'n':>2} {'rows K':>7} {'rows Xi~':>9} {'rays Xi~':>9} {'rays Xi':>8} {'psi(K)=Xi~':>11} {'psi(K)=Xi':>10} {'sec':>6}")
    for n in range(2, args.max_n + 1):
        t0 = time.perf_counter()
        K, Xt = cones.gt_cone(n), cones.xi_cone(n, "GmodU", True)
        Xi = cones.embed(cones.xi_cone(n, "GmodU"), gvec.all_coords(n))
        image = cones.psi_image_of_gt(n)
        eq_t = cones.cone_equal(image, Xt)
        eq_x = cones.cone_equal(image, Xi)
        print(f"{n:>2} {len(K.rows):>7} {len(Xt.rows):>9} {len(cones.rays(Xt)):>9} {len(cones.rays(Xi)):>8} "
              f"{str(eq_t):>11} {str(eq_x):>10} {time.perf_counter() - t0:6.2f}")


if __name__ == "__main__":
    main()
