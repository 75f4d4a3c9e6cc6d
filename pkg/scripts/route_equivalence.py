"""Print the four absorbed-power routes side by side for the analytic kernels."""

import argparse

from rindler_kit import detector as det
from rindler_kit.numerics import DEFAULT_CONFIG
from rindler_kit.report import route_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    ap.add_argument("--kernel", action="append", help="kernel spec; defaults to the two analytic families")
    args = ap.parse_args()
    kernels = [det.parse_kernel(s) for s in args.kernel] if args.kernel else [det.DEFAULT_CATALOG[0], det.DEFAULT_CATALOG[2]]
    print(f"{'kernel':22s} {'a':>5s} {'time':>20s} {'series':>20s} {'spectral':>20s} {'general':>20s} {'spread':>9s}")
    for k in kernels:
        for a in args.a:
            row = route_table(k, a, DEFAULT_CONFIG)
            vals = [r.value for r in row.values()]
            spread = (max(vals) - min(vals)) / abs(vals[0])
            print(f"{det.kernel_label(k):22s} {a:5.2f} " + " ".join(f"{v:20.15f}" for v in vals) + f" {spread:9.1e}")


if __name__ == "__main__":
    main()
