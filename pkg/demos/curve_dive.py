"""Resonance curves k_n(c) of the two-lead circle.

The determinant factors through an even and an odd component, and each
integer n seeds one curve per matching parity.  Odd curves stay in a
bounded strip and touch the real axis at rational c; even curves touch
twice and then dive: -Im k grows without bound as c -> 1, but only
logarithmically in 1/(1-c), so the tracer follows them to within rounding
distance of the endpoint before giving up."""

import math

from qgraph import circle
from qgraph.rootfind import strip_bound

GRID = [j / 400 for j in range(400)]


def describe(parity, n):
    curve = circle.trace_curve(parity, n, GRID)
    print("%s curve, n = %d:" % (parity, n))
    print("    samples: %d, last c = %.17g, diverged: %s"
          % (len(curve.samples), curve.last_c, curve.diverged))
    if curve.crossings:
        print("    real-axis touches:")
        for cr in curve.crossings:
            print("        c = %-20.12g k = %g" % (cr.c, cr.k))
    else:
        print("    no real-axis touches")

    deepest = max(-k.imag for _, k in curve.samples)
    print("    deepest point: -Im k = %.6f" % deepest)
    return curve


def main():
    for n in (3, 7):
        curve = describe("odd", n)
        c_deep, k_deep = max(curve.samples, key=lambda s: -s[1].imag)
        K = strip_bound(circle.f_odd_poly(c_deep))
        print("    certified strip height at the deepest c (%.4f): %.6f\n"
              % (c_deep, K))

    curve = describe("even", 4)
    # show the tail of the dive: depth vs distance to c = 1
    print("    dive tail (gap to c = 1 vs depth):")
    shown = set()
    for c, k in curve.samples:
        gap = 1.0 - c
        decade = math.floor(math.log10(gap)) if gap > 0 else -99
        if decade not in shown and gap < 0.1:
            shown.add(decade)
            print("        gap %.1e   -Im k = %.4f" % (gap, -k.imag))
    print("    depth grows like log(1/gap): slow enough that the curve")
    print("    never visibly leaves the frame of a plot over c in [0, 1).")


if __name__ == "__main__":
    main()
