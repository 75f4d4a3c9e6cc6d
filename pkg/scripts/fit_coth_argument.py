"""Fit the constant c in coth(c w / a) that makes the spectral route match the time route."""

import argparse
import math

from rindler_kit import detector as det
from rindler_kit.numerics import DEFAULT_CONFIG


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=float, nargs="+", default=list(det.FIT_ACCELERATIONS))
    args = ap.parse_args()
    for k in det.DEFAULT_CATALOG:
        per_a = [det.fit_coth_argument(k, (a,), DEFAULT_CONFIG) for a in args.a]
        cells = "  ".join(f"a={a:g}: {c:.12f}" for a, c in zip(args.a, per_a))
        print(f"{det.kernel_label(k):22s} {cells}")
    print(f"pi = {math.pi:.12f}; printed constant = {det.PRINTED_COTH_ARGUMENT:g}")


if __name__ == "__main__":
    main()
