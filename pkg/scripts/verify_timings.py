"""Run every verification suite for n = 2..5 and print per-check timings."""

import argparse

from clustercones.cli import RunConfig, cmd_verify


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--max-n", type=int, default=5)
    args = p.parse_args()
    failed = False
    for n in range(2, args.max_n + 1):
        status, rep = cmd_verify(RunConfig("verify", n, {"suite": "all"}), timings=True)
        failed |= status != 0
        for c in rep["checks"]:
            print(f"n={n} {c['suite']:>8} {c['seconds']:7.3f}s {'ok  ' if c['passed'] else 'FAIL'} {c['claim']}")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
