"""Packet-smeared Bogolyubov sums from KG inner products against each analytic beta variant."""

import argparse
import time

from rindler_kit import modes
from rindler_kit.spacetime import WorldlineParams


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--center", type=float, default=1.0)
    ap.add_argument("--width", type=float, nargs="+", default=[0.2, 0.1])
    ap.add_argument("--a", type=float, default=1.0)
    args = ap.parse_args()
    p = WorldlineParams(args.a)
    for w in args.width:
        t0 = time.perf_counter()
        s = modes.packet_bogolyubov_sums(modes.WavePacket(args.center, w), p)
        dt = time.perf_counter() - t0
        print(f"width {w:g}: sum|alpha|^2 - sum|beta|^2 = {s.fock_norm:.12f}  ({dt:.1f} s)")
        print(f"  numeric sum|beta|^2         {s.beta_sq:.12e}")
        for name, v in s.beta_sq_analytic.items():
            print(f"  analytic [{name:8s}]         {v:.12e}  ratio {s.beta_sq / v:.10f}")
        print(f"  smeared Planck occupation   {s.beta_sq_thermal_template:.12e}")


if __name__ == "__main__":
    main()
