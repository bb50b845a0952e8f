"""Infer the MUB measurement from trine statistics and compare with the ideal range.

Runs the pipeline on the stored three-row table, then on freshly simulated
data at the same shot count, and prints the deviations.
"""
import argparse
from dataclasses import dataclass

import numpy as np

from ddinfer.completeness import gen_trine
from ddinfer.data import IDEAL_Q, IDEAL_T, REFERENCE_Q, REFERENCE_T, TRINE_MUB_TABLE
from ddinfer.mvee import ddi_spherical
from ddinfer.qubit import mub_povm, povm_range, range_invert, simulate_counts


@dataclass
class Config:
    shots: int = 8192
    seed: int = 7
    povm_tol: float = 0.02


def summarize(label, Q, t):
    print(f"{label}")
    print("  Q =\n" + "\n".join("    " + " ".join(f"{x:+.4f}" for x in row) for row in Q))
    print("  t = " + " ".join(f"{x:.4f}" for x in t))


def run(cfg: Config):
    E = ddi_spherical(TRINE_MUB_TABLE)
    summarize("range inferred from the stored table", E.Q, E.t)
    print(f"  max |Q - reference| = {np.abs(E.Q - REFERENCE_Q).max():.4f}"
          f"   max |t - reference| = {np.abs(E.t - REFERENCE_T).max():.4f}")
    P = range_invert(E, tol=cfg.povm_tol)
    print("  canonical effects (a, b):")
    for e in P.effects:
        print(f"    {e.a:.4f}  [{', '.join(f'{x:+.4f}' for x in e.b)}]")
    R = povm_range(P)
    print(f"  distance to the ideal MUB range: "
          f"{max(np.abs(R.Q - IDEAL_Q).max(), np.abs(R.t - IDEAL_T).max()):.4f}")

    _, freqs = simulate_counts(mub_povm(), gen_trine(), cfg.shots, cfg.seed)
    E = ddi_spherical(freqs)
    summarize(f"\nrange inferred from {cfg.shots} simulated shots (seed {cfg.seed})", E.Q, E.t)
    print(f"  distance to the ideal MUB range: "
          f"{max(np.abs(E.Q - IDEAL_Q).max(), np.abs(E.t - IDEAL_T).max()):.4f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--shots", type=int, default=Config.shots)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--povm-tol", type=float, default=Config.povm_tol)
    a = ap.parse_args()
    run(Config(a.shots, a.seed, a.povm_tol))
