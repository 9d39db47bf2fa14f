"""Print the lattice points of a weight slice of Xi, one per line."""

import argparse

from clustercones import cones


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--lambda", dest="lam", default="3,1")
    args = p.parse_args()
    w = cones.Weight.parse(args.lam)
    s = cones.weight_slice(args.n, w)
    pts = cones.lattice_points(s)
    print("  ".join(f"x{i}{j}" for i, j in s.cone.order))
    for pt in pts:
        print("  ".join(f"{x:3d}" for x in pt))
    print(f"{len(pts)} points, Weyl dimension {cones.weyl_dim(args.n, w)}")


if __name__ == "__main__":
    main()
