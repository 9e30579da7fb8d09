"""Counting resonances in growing discs, on both sides of the balanced
transition.

For the two-lead circle the counting rate W is half the frequency spread
of the secular determinant: 2 pi (the full metric length) for every
c < 1, dropping to pi the moment c = 1 makes a vertex balanced, so half
of the resonances escape to infinity in the collapse limit.  A small
random family shows the same dichotomy through the extreme coefficients
of the determinant."""

import math

import numpy as np

from qgraph.circle import build_graph, det_poly
from qgraph.constraint import assemble
from qgraph.graph import MetricGraph, classify_weyl
from qgraph.rootfind import count_in_disc, weyl_coefficient

RADII = (5.0, 10.0, 15.0, 20.0)


def count_table(c):
    poly = det_poly(c)
    W = weyl_coefficient(poly)
    print("c = %g: W = %.15g  (volume %.15g)" % (
        c, W, classify_weyl(build_graph(c)).volume))
    print("    R      count    (2/pi) W R")
    for R in RADII:
        pred = 2.0 / math.pi * W * R
        n = count_in_disc(poly, R).count
        print("    %4.1f   %5d    %8.2f" % (R, n, pred))


def random_family_summary(n_graphs=12, seed=3):
    rng = np.random.default_rng(seed)
    print("random graphs (edges, leads, balanced vertices -> rate ratio):")
    made = 0
    while made < n_graphs:
        nv = int(rng.integers(2, 5))
        ne = int(rng.integers(1, 4))
        edges = []
        for _ in range(ne):
            u, v = sorted(rng.choice(nv, size=2, replace=False))
            edges.append((int(u), int(v), float(rng.uniform(0.5, 2.0))))
        leads = [int(v) for v in rng.integers(0, nv, size=int(rng.integers(0, 4)))]
        used = {v for e in edges for v in e[:2]} | set(leads)
        if len(used) < nv:
            continue
        g = MetricGraph(nv, edges, leads=leads)
        made += 1
        cls = classify_weyl(g)
        det = assemble(g).determinant()
        a_minus, a_plus = det.extreme_coefficients()
        W = weyl_coefficient(det)
        print("    E=%d L=%d balanced=%-10s a-=%3d a+=%3d  W/vol = %.3f"
              % (len(g.edges), len(g.leads),
                 str(list(cls.balanced_vertices)), a_minus, a_plus,
                 W / cls.volume))


def main():
    for c in (0.0, 0.9, 1.0):
        count_table(c)
        print()
    print("the drop from W = 2 pi to W = pi at c = 1 is the balanced-vertex")
    print("effect: a+ vanishes and the top frequency retreats.\n")
    random_family_summary()


if __name__ == "__main__":
    main()
