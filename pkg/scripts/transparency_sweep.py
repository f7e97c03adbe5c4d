#!/usr/bin/env python3
"""Sweep the transmission of the antisymmetric signed pair toward zero width.

For each strength/energy combination the script tabulates T(eps) over a
geometric width schedule, fits the decay exponent from the last two
samples, and reports the extrapolated zero-width limit.  The observed
behavior is a quadratic collapse T ~ eps^2 rather than transparency; the
table makes the power law visible directly.

Usage:
    python3 scripts/transparency_sweep.py --strengths 0.5,1,2 --energies 0.5,1,2
"""

import argparse
import math
import sys

from deltalab import EpsilonSchedule, accelerated_limit
from deltalab.qm1d import delta_prime_pair, scattering


def parse_floats(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--strengths", default="0.5,1,2",
                    help="comma-separated pair strengths c")
    ap.add_argument("--energies", default="0.5,1,2",
                    help="comma-separated scattering energies")
    ap.add_argument("--eps0", type=float, default=0.2, help="largest width")
    ap.add_argument("--ratio", type=float, default=0.5, help="width ratio per step")
    ap.add_argument("--steps", type=int, default=6, help="number of widths")
    args = ap.parse_args(argv)

    widths = EpsilonSchedule(args.eps0, args.ratio, args.steps).widths()
    print("c,energy," + ",".join(f"T(eps={e:g})" for e in widths)
          + ",decay_exponent,extrapolated_limit")
    for c in parse_floats(args.strengths):
        for energy in parse_floats(args.energies):
            samples = []
            for eps in widths:
                res = scattering(delta_prime_pair(c, eps), energy)
                samples.append((eps, res.transmission))
            t_last, t_prev = samples[-1][1], samples[-2][1]
            if t_last > 0.0 and t_prev > 0.0:
                exponent = math.log(t_prev / t_last) / math.log(
                    samples[-2][0] / samples[-1][0]
                )
            else:
                exponent = float("nan")
            est = accelerated_limit(samples)
            limit = est.value if not est.diverged else float("nan")
            row = [f"{c:g}", f"{energy:g}"]
            row += [f"{t:.6e}" for _, t in samples]
            row += [f"{exponent:.3f}", f"{limit:.6e}"]
            print(",".join(row))
    return 0


if __name__ == "__main__":
    sys.exit(main())
