#!/usr/bin/env python3
"""Trace the spectrum of every self-adjoint extension for one coupling.

Prints E_n(nu) as nu walks the extension circle, the Friedrichs ladder
it interpolates, and where each level crosses a pole of the boundary
equation. The sweep stays inside the open interval; the +-pi/2 endpoint
row is appended from the closed-form ladder.

    python3 scripts/spectral_flow.py --g1 0 --g2 1 --levels 4 --points 13
"""

import argparse
import math
import sys

from calogero.params import reduce
from calogero.spectral import extension_for, spectrum


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--g1", type=float, default=0.0)
    ap.add_argument("--g2", type=float, default=1.0)
    ap.add_argument("--levels", type=int, default=4)
    ap.add_argument("--points", type=int, default=13)
    args = ap.parse_args()

    rp = reduce(args.g1, args.g2)
    if rp.kappa >= 1.0:
        print(f"kappa = {rp.kappa:.6g} >= 1: single extension, nothing to sweep", file=sys.stderr)
        ladder = spectrum(rp, extension_for(rp), args.levels)
        for n, e in enumerate(ladder.energies):
            print(f"  E_{n} = {e:.12g}")
        return 0

    ups2 = rp.energy_scale()
    print(f"g1 = {args.g1:g}  g2 = {args.g2:g}   kappa = {rp.kappa:.6g}  ups^2 = {ups2:.6g}")
    print(f"Friedrichs ladder E_n = 2 ups^2 (2n+1+kappa); poles of the flow at the same points")
    print()

    head = "      nu  " + "".join(f"{'E_' + str(n):>16}" for n in range(args.levels))
    print(head)
    eps = 1e-3  # stay off the endpoint, extension_for snaps only within 1e-6
    for i in range(args.points):
        nu = -0.5 * math.pi + eps + (math.pi - 2 * eps) * i / (args.points - 1)
        levels = spectrum(rp, extension_for(rp, nu=nu), args.levels).energies
        print(f"{nu:+9.4f}  " + "".join(f"{e:16.8f}" for e in levels))

    friedrichs = spectrum(rp, extension_for(rp, friedrichs=True), args.levels).energies
    print(f"{'+-pi/2':>9}  " + "".join(f"{e:16.8f}" for e in friedrichs) + "   (closed form)")

    print()
    print("each column climbs one rung of the ladder as nu wraps around;")
    print("scaled pole positions e = 2(2n+1+kappa):",
          " ".join(f"{2 * (2 * n + 1 + rp.kappa):g}" for n in range(args.levels + 1)))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
