"""Survey of observational versus informational completeness.

Prints verdicts for the Platonic solids, regular polygons on their plane and
shrunken tetrahedra.  A second table shows how the tetrahedron performs as a
probe for measurements whose Bloch parts span one, two or three dimensions.
"""
import argparse
from dataclasses import dataclass

import numpy as np

from ddinfer.completeness import (PLATONIC, XZ_PLANE, gen_platonic, gen_regular_polygon,
                                  gen_regular_simplex, is_informationally_complete,
                                  is_observationally_complete, is_oc_for_support, perturb_set)
from ddinfer.mvee import ddi_spherical
from ddinfer.qubit import born_table, gauge_equivalent, random_povm, range_invert


@dataclass
class Config:
    seed: int = 0
    povms_per_size: int = 100
    factors: tuple = (1.0, 0.99, 0.95, 0.9, 0.8, 0.7)


def run(cfg: Config):
    print(f"{'set':<26}{'IC':>6}{'OC':>6}")
    for name in PLATONIC:
        S = gen_platonic(name)
        print(f"{name:<26}{bool(is_informationally_complete(S))!s:>6}"
              f"{bool(is_observationally_complete(S))!s:>6}")
    for f in cfg.factors:
        S = perturb_set(gen_regular_simplex(), 0, f)
        print(f"{'tetrahedron, r0 x ' + str(f):<26}{bool(is_informationally_complete(S))!s:>6}"
              f"{bool(is_observationally_complete(S))!s:>6}")
    for n in range(3, 8):
        S = gen_regular_polygon(n)
        print(f"{f'{n}-gon (on its plane)':<26}{bool(is_informationally_complete(S))!s:>6}"
              f"{bool(is_oc_for_support(S, XZ_PLANE))!s:>6}")

    print("\ntetrahedron probe, exact statistics, reconstruction at 1e-6")
    print(f"{'outcomes':>9}{'Bloch rank':>12}{'recovered':>12}")
    rng = np.random.default_rng(cfg.seed)
    S = gen_regular_simplex()
    for n in range(2, 7):
        by_rank = {}
        for _ in range(cfg.povms_per_size):
            P = random_povm(rng, n)
            r = int(np.linalg.matrix_rank(P.B, tol=1e-9))
            try:
                ok = gauge_equivalent(range_invert(ddi_spherical(born_table(P, S))), P, tol=1e-6)
            except ValueError:
                ok = False
            hit, tot = by_rank.get(r, (0, 0))
            by_rank[r] = (hit + ok, tot + 1)
        for r, (hit, tot) in sorted(by_rank.items()):
            print(f"{n:>9}{r:>12}{f'{hit}/{tot}':>12}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--povms-per-size", type=int, default=Config.povms_per_size)
    a = ap.parse_args()
    run(Config(a.seed, a.povms_per_size))
