"""Closed form vs quadrature vs Monte Carlo over a grid of parameters.

    python scripts/triple_agreement.py [--games 1000000] [--seed 0]
"""

import argparse

import numpy as np

from hockeypythag.pythagorean import pythag_from_params
from hockeypythag.simulation import SimConfig, mc_win_fraction, quadrature_win_prob


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--games", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'a_gs':>5} {'a_ga':>5} {'gamma':>5} {'closed':>9} {'quad-cf':>10} {'mc':>9} {'z':>6}")
    worst = 0.0
    k = 0
    for a in np.linspace(2, 6, 5):
        for b in np.linspace(2, 6, 5):
            for g in (1.5, 2.1, 3.0):
                cf = pythag_from_params(a, b, g)
                q = quadrature_win_prob(a, b, g)
                p, se = mc_win_fraction(SimConfig(a, b, g, n_games=args.games, seed=args.seed + k))
                z = (p - cf) / se
                worst = max(worst, abs(z))
                print(f"{a:5.1f} {b:5.1f} {g:5.1f} {cf:9.6f} {q - cf:10.2e} {p:9.6f} {z:6.2f}")
                k += 1
    print(f"max |z| = {worst:.2f} over {k} points")


if __name__ == "__main__":
    main()
