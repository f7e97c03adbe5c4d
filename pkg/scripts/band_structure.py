#!/usr/bin/env python3
"""Band structure of the periodic narrow-well lattice.

Scans the Bloch half-trace over an energy range at a fixed well width,
classifies each energy as allowed or forbidden, lists the detected band
edges, and (optionally) reports the deviation from the zero-width point
law cos(k a) - (g / k) sin(k a).

Usage:
    python3 scripts/band_structure.py --g 1 --a 3.141592653589793 --eps 1e-3
"""

import argparse
import math
import sys

import numpy as np

from deltalab.qm1d import band_structure


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--g", type=float, default=1.0, help="well strength")
    ap.add_argument("--a", type=float, default=math.pi, help="lattice period")
    ap.add_argument("--eps", type=float, default=1e-3, help="well half-width")
    ap.add_argument("--emin", type=float, default=0.02)
    ap.add_argument("--emax", type=float, default=4.0)
    ap.add_argument("--n", type=int, default=200, help="number of energies")
    ap.add_argument("--point-law", action="store_true",
                    help="add the zero-width half-trace and the deviation")
    args = ap.parse_args(argv)

    energies = np.linspace(args.emin, args.emax, args.n)
    points = band_structure(args.g, args.a, energies, args.eps)

    header = "energy,bloch_rhs,allowed"
    if args.point_law:
        header += ",point_law,deviation"
    print(header)
    worst = 0.0
    for pt in points:
        row = f"{pt.energy:.6f},{pt.bloch_rhs:.10f},{str(pt.allowed).lower()}"
        if args.point_law:
            k = math.sqrt(2.0 * pt.energy)
            law = math.cos(k * args.a) - (args.g / k) * math.sin(k * args.a)
            dev = abs(pt.bloch_rhs - law)
            worst = max(worst, dev)
            row += f",{law:.10f},{dev:.3e}"
        print(row)

    edges = [
        0.5 * (points[i].energy + points[i + 1].energy)
        for i in range(len(points) - 1)
        if points[i].allowed != points[i + 1].allowed
    ]
    print(f"# band edges near: {', '.join(f'{e:.4f}' for e in edges) or 'none'}",
          file=sys.stderr)
    if args.point_law:
        print(f"# max deviation from point law: {worst:.3e}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
