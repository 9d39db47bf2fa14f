"""Compare slice lattice-point counts with the Weyl dimension formula."""

import argparse
import time

from clustercones import cones


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--top", type=int, default=4, help="largest lambda_1")
    args = p.parse_args()
    t0 = time.perf_counter()
    bad = 0
    for lam in cones.dominant_weights(args.n, args.top):
        count = len(cones.lattice_points(cones.weight_slice(args.n, lam)))
        dim = cones.weyl_dim(args.n, lam)
        bad += count != dim
        print(f"{','.join(map(str, lam)):>12}  points {count:5d}  weyl {dim:5d}  {'ok' if count == dim else 'MISMATCH'}")
    print(f"{bad} mismatches, {time.perf_counter() - t0:.2f}s")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
