#!/usr/bin/env python3
"""Race the transcendental-equation spectra against the shooting solver.

For a grid of (kappa, nu) families this computes the first few levels
twice, from the boundary equation and from direct ODE shooting, and
prints the worst relative gap per family with timings. The two routes
share no code beyond parameter reduction, so agreement at 1e-3 or
better is a real cross-check, not an identity.

    python3 scripts/oracle_vs_formula.py --levels 5
"""

import argparse
import time

from calogero.params import reduce
from calogero.oracle import shoot_spectrum
from calogero.spectral import extension_for, spectrum


CASES = [
    # (g1, g2, nu or None); None means the ladder extension
    (0.75, 1.0, None),   # kappa = 1, unique
    (3.75, 1.0, None),   # kappa = 2, unique
    (0.0, 1.0, 1.0),     # kappa = 1/2 family, generic nu
    (0.0, 1.0, -1.0),
    (0.0, 1.0, 0.0),     # nu = 0 has its own closed form
    (0.0, 4.0, 0.7),     # same kappa, stiffer trap
    (-0.25, 1.0, 1.0),   # kappa = 0, digamma branch
    (-0.25, 1.0, -1.0),
    (0.3125, 1.0, 0.5),  # kappa = 3/4
]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--levels", type=int, default=5)
    args = ap.parse_args()

    print(f"{'g1':>7} {'g2':>5} {'nu':>6} {'kappa':>6}   {'worst rel gap':>13}   {'t_eq':>7} {'t_shoot':>8}")
    worst_overall = 0.0
    for g1, g2, nu in CASES:
        rp = reduce(g1, g2)
        ext = extension_for(rp, nu=nu) if nu is not None else extension_for(rp)

        t0 = time.perf_counter()
        eq = spectrum(rp, ext, args.levels).energies
        t1 = time.perf_counter()
        shot = shoot_spectrum(rp, ext, args.levels).energies
        t2 = time.perf_counter()

        gap = max(abs(a - b) / abs(b) for a, b in zip(shot, eq))
        worst_overall = max(worst_overall, gap)
        nu_txt = "---" if nu is None else f"{nu:+.2f}"
        print(f"{g1:7.4f} {g2:5.1f} {nu_txt:>6} {rp.kappa:6.3f}   {gap:13.3e}   {t1 - t0:6.3f}s {t2 - t1:7.3f}s")

    print(f"\nworst gap over {len(CASES)} families x {args.levels} levels: {worst_overall:.3e}")
    return 0 if worst_overall <= 1e-3 else 1


if __name__ == "__main__":
    raise SystemExit(main())
