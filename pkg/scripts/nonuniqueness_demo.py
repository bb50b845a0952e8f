"""Ellipse versus triangle inference on a regular polygon.

The enclosing ellipse of a regular polygon is its circumcircle, while the
smallest enclosing triangle can have several optima.  Optionally draws both.
"""
import argparse
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ddinfer.mvee import mvee_full
from ddinfer.simplex2d import min_area_enclosing_triangle, nonuniqueness_witness


@dataclass
class Config:
    sides: int = 6
    svg: Optional[str] = None


def polygon(k):
    ang = 2 * np.pi * np.arange(k) / k
    return np.column_stack([np.cos(ang), np.sin(ang)])


def draw(path, X, E, triangles):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 5))
    ax.fill(X[:, 0], X[:, 1], color="0.85", label="polygon")
    w, U = np.linalg.eigh(np.linalg.inv(E.A))
    ang = np.linspace(0, 2 * np.pi, 300)
    pts = (U @ (np.sqrt(w)[:, None] * np.stack([np.cos(ang), np.sin(ang)]))).T + E.c
    ax.plot(pts[:, 0], pts[:, 1], "k--", label="enclosing ellipse")
    for k, T in enumerate(triangles):
        V = np.vstack([T.vertices, T.vertices[:1]])
        ax.plot(V[:, 0], V[:, 1], "-", label=f"optimal triangle {k + 1}")
    ax.set_aspect("equal")
    ax.legend(loc="upper right", fontsize="small")
    fig.savefig(path, format="svg")
    plt.close(fig)


def run(cfg: Config):
    X = polygon(cfg.sides)
    E = mvee_full(X)
    print(f"regular {cfg.sides}-gon")
    print(f"  ellipse: center {np.round(E.c, 12)}, shape eigenvalues {np.linalg.eigvalsh(E.A)}")
    sol = min_area_enclosing_triangle(X)
    print(f"  smallest enclosing triangle area {sol.area:.12f}")
    pair = nonuniqueness_witness(X)
    if pair is None:
        print("  the optimal triangle is unique")
        triangles = [sol.triangle]
    else:
        triangles = list(pair)
        for k, T in enumerate(pair, 1):
            print(f"  optimum {k}: area {T.area:.12f}, vertices {np.round(T.vertices, 6).tolist()}")
    if cfg.svg:
        draw(cfg.svg, X, E, triangles)
        print(f"  picture written to {cfg.svg}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sides", type=int, default=Config.sides)
    ap.add_argument("--svg")
    a = ap.parse_args()
    run(Config(a.sides, a.svg))
