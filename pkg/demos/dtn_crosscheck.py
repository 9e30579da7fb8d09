"""Dirichlet-to-Neumann cross-check of the secular determinant.

The vertex-reduced route computes the DtN matrix Lambda(k) from hyperbolic
edge blocks and compares delta(k) * det Lambda(k) against det A(k) from the
full constraint matrix; a second identity checks d/dk of the log on both
routes.  Both are independent of the assembly code path, so agreement at
random upper-half-plane points is a real consistency certificate.  Lambda
has poles at the Dirichlet spectrum of the internal edges, visible here as
a blow-up of the condition number as k approaches an edge eigenvalue."""

import numpy as np

from qgraph.circle import build_graph
from qgraph.constraint import assemble
from qgraph.dtn import lambda_matrix, verify_derivative_identity, \
    verify_det_identity
from qgraph.errors import PoleError
from qgraph.graph import MetricGraph


def residual_table(graph, label, n_samples=8, seed=11):
    poly = assemble(graph).determinant()
    rng = np.random.default_rng(seed)
    print("%s:" % label)
    print("    k sample                det identity    derivative identity")
    for _ in range(n_samples):
        k = complex(rng.uniform(-5, 5), rng.uniform(0.3, 2.0))
        r_det = verify_det_identity(graph, k, poly)
        r_der = verify_derivative_identity(graph, k)
        print("    %+.3f %+.3fi        %.3e       %.3e"
              % (k.real, k.imag, r_det, r_der))


def pole_approach(graph):
    # the first Dirichlet eigenvalue of a length-pi edge sits at k = 1
    print("approach to the edge eigenvalue at k = 1 (pole of Lambda):")
    for eps in (0.5, 0.1, 0.01, 0.001):
        k = 1.0 + 1j * eps
        lam = lambda_matrix(graph, k)
        cond = np.linalg.cond(lam)
        print("    k = 1 + %gi   cond(Lambda) = %.3e" % (eps, cond))
    try:
        lambda_matrix(graph, 1.0)
    except PoleError as exc:
        print("    at k = 1 exactly: PoleError (%s)" % exc)
    except ValueError as exc:
        print("    at k = 1 exactly: rejected, %s" % exc)


def main():
    residual_table(build_graph(0.3), "two-lead circle, c = 0.3")
    print()
    star = MetricGraph(4, [(0, 1, 0.8), (0, 2, 1.1), (0, 3, 1.7)],
                       leads=[1, 2, 3])
    residual_table(star, "three-spoke star with a lead at each tip")
    print()
    pole_approach(build_graph(0.0))


if __name__ == "__main__":
    main()
