"""Resonances of the circle with two leads, swept over the surgery
parameter c.  Prints the secular determinant, the located resonances in a
window near the origin, and (at c = 0) the closed-form positions they
should land on."""

import math

from qgraph import circle
from qgraph.rootfind import count_in_disc, find_roots, weyl_coefficient

WINDOW = (-3.5, 3.5, -1.0, 0.1)


def show_determinant(c):
    poly = circle.det_poly(c)
    print("det A(k, %g), term per line (exponent vector : coefficient):" % c)
    for line in poly.dump().split("\n"):
        print("   ", line)
    lo, hi = poly.sigma_range()
    print("    frequency range [%.6f, %.6f], counting rate W = %.6f"
          % (lo, hi, weyl_coefficient(poly)))


def show_roots(c):
    roots = find_roots(circle.det_poly(c), WINDOW)
    print("resonances in [%g, %g] x [%g, %g]:" % WINDOW)
    for r in sorted(roots, key=lambda r: (r.k.real, r.k.imag)):
        print("    k = %+.12f %+.12fi   mult %d   |det| = %.2e"
              % (r.k.real, r.k.imag, r.multiplicity, r.residual))
    return roots


def main():
    for c in (0.0, 0.5, 1.0):
        print("=" * 60)
        print("c = %g  (arc lengths %.6f and %.6f)" % (
            c, (1 - c) * math.pi, (1 + c) * math.pi))
        show_determinant(c)
        roots = show_roots(c)

        if c == 0.0:
            # symmetric point: everything is known in closed form
            depth = math.log(3.0) / math.pi
            print("closed forms: integers n (embedded eigenvalues) and")
            print("n - i log(3)/pi = n - %.12fi (true resonances)" % depth)
            worst = 0.0
            for r in roots:
                n = round(r.k.real)
                target = complex(n, 0.0 if abs(r.k.imag) < depth / 2 else -depth)
                worst = max(worst, abs(r.k - target))
            print("largest deviation from closed form: %.2e" % worst)

        n55 = count_in_disc(circle.det_poly(c), 5.5)
        print("count in |k| <= 5.5: %d (origin zero: %s)"
              % (n55.count, n55.origin_zero))
    print("=" * 60)


if __name__ == "__main__":
    main()
