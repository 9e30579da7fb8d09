"""Vertex-condition matrix of a graph with outgoing waves on its leads.

On each internal edge e of length rho, oriented tail -> head, the solution at
energy k^2 is written a_e * e^{ikx} + b_e * e^{-ikx} with x measured from the
tail; on each lead the outgoing wave is g_l * e^{ikx}; each vertex carries one
value z_v.  Continuity of the function at both endpoints and at every lead
base, plus a balance of derivatives at each vertex (the common factor ik is
divided out of the balance rows), gives a square homogeneous system

    A(k) nu = 0,   nu = (all z_v, all a_e, all b_e, all g_l).

Nontrivial solutions exist exactly where det A(k) = 0, and det A expands as an
exponential polynomial whose exponent vectors live in {-1, 0, 1}^edges over
the edge-length table: every matrix entry is a single monomial e^{+-ik rho}
or a constant.

Row and column orders are fixed once and for all (columns: vertex values by
vertex id, tail coefficients by edge id, head coefficients by edge id, lead
amplitudes by lead id; rows: per vertex its continuity rows with edge
endpoints first, then its leads, finally all balance rows by vertex id), so
det A has one well-defined sign.
"""

import numpy as np

from .errors import CapacityError
from .exppoly import ExpPolynomial
from .graph import validate

CAPACITY = 32  # exact expansion is refused above this matrix size


class ConstraintMatrix:
    """Square matrix of monomial entries, stored column-by-column.

    Each entry is (row, coef, delta) where delta is the exponent-vector shift
    of the monomial coef * e^{ik (delta . lengths)}; delta is None for
    constant entries.
    """

    def __init__(self, n, lengths, columns, row_labels, col_labels,
                 orientations=()):
        self.n = n
        self.lengths = tuple(lengths)
        self.columns = columns
        self.row_labels = tuple(row_labels)
        self.col_labels = tuple(col_labels)
        # effective (tail, head) per edge for this assembly; the tail endpoint
        # is the edge's coordinate origin
        self.orientations = tuple(orientations)

    def entry_terms(self):
        """{(row, col): (coef, delta)} over nonzero entries, delta None = constant."""
        out = {}
        for c, col in enumerate(self.columns):
            for r, coef, delta in col:
                out[(r, c)] = (coef, delta)
        return out

    def eval_matrix(self, k):
        """Dense complex matrix A(k)."""
        m = np.zeros((self.n, self.n), dtype=complex)
        for c, col in enumerate(self.columns):
            for r, coef, delta in col:
                if delta is None:
                    m[r, c] = coef
                else:
                    sigma = sum(d * L for d, L in zip(delta, self.lengths))
                    m[r, c] = coef * np.exp(1j * sigma * k)
        return m

    def determinant(self):
        """Exact expansion of det A as an ExpPolynomial.

        Column-by-column dynamic program over subsets of used rows: the state
        after j columns maps a row bitmask of popcount j to the accumulated
        polynomial.  Placing row r on the next column multiplies the sign by
        (-1)^(number of already-used rows above r).  All coefficient
        arithmetic is integer, so the result is exact.
        """
        return self.submatrix_determinant(range(self.n), range(self.n))

    def submatrix_determinant(self, rows, cols):
        rows = list(rows)
        cols = list(cols)
        assert len(rows) == len(cols), "submatrix must be square"
        n = len(rows)
        if n > CAPACITY:
            raise CapacityError("matrix size %d exceeds capacity %d" % (n, CAPACITY))
        m = len(self.lengths)
        zero_vec = (0,) * m
        if n == 0:
            return ExpPolynomial.constant(self.lengths, 1)
        rowpos = {r: i for i, r in enumerate(rows)}
        states = {0: {zero_vec: 1}}
        for c in cols:
            support = [(rowpos[r], coef, delta) for r, coef, delta in self.columns[c]
                       if r in rowpos]
            new = {}
            for mask, terms in states.items():
                for i, coef, delta in support:
                    bit = 1 << i
                    if mask & bit:
                        continue
                    sign = -1 if ((mask >> (i + 1)).bit_count() & 1) else 1
                    sc = sign * coef
                    target = new.setdefault(mask | bit, {})
                    if delta is None:
                        for vec, a in terms.items():
                            target[vec] = target.get(vec, 0) + sc * a
                    else:
                        for vec, a in terms.items():
                            nv = tuple(x + y for x, y in zip(vec, delta))
                            target[nv] = target.get(nv, 0) + sc * a
            states = new
            if not states:
                break
        full = (1 << n) - 1
        return ExpPolynomial(self.lengths, states.get(full, {}))


def _unit(m, e, s):
    v = [0] * m
    v[e] = s
    return tuple(v)


def assemble(graph, flip_edges=()):
    """Build the vertex-condition matrix of a validated graph.

    flip_edges: edge ids whose stored orientation is reversed for this
    assembly.  Flipping changes individual entries (and negates the
    determinant) but not the zero set.
    """
    rep = validate(graph)
    if not rep.ok:
        raise ValueError("graph fails validation: " + "; ".join(rep.violations))
    flip = set(flip_edges)
    nv = graph.n_vertices
    ne = len(graph.edges)
    nl = len(graph.leads)
    m = ne  # length-table size
    lengths = graph.lengths

    # effective orientation after flips
    oriented = []
    for i, e in enumerate(graph.edges):
        if i in flip:
            oriented.append((e.head, e.tail))
        else:
            oriented.append((e.tail, e.head))

    col_of_vertex = {v: v for v in range(nv)}
    col_of_tail = {e: nv + e for e in range(ne)}
    col_of_head = {e: nv + ne + e for e in range(ne)}
    col_of_lead = {l: nv + 2 * ne + l for l in range(nl)}
    col_labels = ([("vertex", v) for v in range(nv)]
                  + [("tail", e) for e in range(ne)]
                  + [("head", e) for e in range(ne)]
                  + [("lead", l) for l in range(nl)])

    n = nv + 2 * ne + nl
    columns = [[] for _ in range(n)]
    row_labels = []

    def put(row, col, coef, delta=None):
        columns[col].append((row, coef, delta))

    row = 0
    # continuity rows, grouped per vertex
    for v in range(nv):
        for e, (tail, head) in enumerate(oriented):
            if tail == v:
                # value at the tail endpoint: a + b = z_v
                put(row, col_of_tail[e], 1)
                put(row, col_of_head[e], 1)
                put(row, col_of_vertex[v], -1)
                row_labels.append(("continuity_tail", e, v))
                row += 1
            if head == v:
                # value at the head endpoint: a e^{ik rho} + b e^{-ik rho} = z_v
                put(row, col_of_tail[e], 1, _unit(m, e, +1))
                put(row, col_of_head[e], 1, _unit(m, e, -1))
                put(row, col_of_vertex[v], -1)
                row_labels.append(("continuity_head", e, v))
                row += 1
        for l, lead in enumerate(graph.leads):
            if lead.vertex == v:
                put(row, col_of_lead[l], 1)
                put(row, col_of_vertex[v], -1)
                row_labels.append(("continuity_lead", l, v))
                row += 1
    # derivative balance rows (ik divided out), one per vertex
    for v in range(nv):
        for e, (tail, head) in enumerate(oriented):
            if tail == v:
                put(row, col_of_tail[e], 1)
                put(row, col_of_head[e], -1)
            if head == v:
                put(row, col_of_tail[e], -1, _unit(m, e, +1))
                put(row, col_of_head[e], 1, _unit(m, e, -1))
        for l, lead in enumerate(graph.leads):
            if lead.vertex == v:
                put(row, col_of_lead[l], 1)
        row_labels.append(("kirchhoff", v))
        row += 1
    assert row == n

    for col in columns:
        col.sort()
    return ConstraintMatrix(n, lengths, columns, row_labels, col_labels,
                            orientations=oriented)


def leading_block_determinant(graph, v):
    """Determinant of the vertex block at v with all incident edges re-aimed
    into v.

    Rows: the lead continuity rows at v, the head continuity rows of edges
    incident to v, and the balance row of v.  Columns: the lead amplitudes at
    v, the tail coefficients of the incident edges, and the vertex value.
    Closed form: (q - p) * e^{ik * sum of incident edge lengths}, which is why
    a balanced vertex (q = p) suppresses the top exponential order of det A.
    """
    flips = [e for e, edge in enumerate(graph.edges) if edge.tail == v]
    mat = assemble(graph, flip_edges=flips)
    incident = [e for e, edge in enumerate(graph.edges)
                if edge.tail == v or edge.head == v]
    leads_at = [l for l, lead in enumerate(graph.leads) if lead.vertex == v]
    rows = []
    for l in leads_at:
        rows.append(mat.row_labels.index(("continuity_lead", l, v)))
    for e in incident:
        rows.append(mat.row_labels.index(("continuity_head", e, v)))
    rows.append(mat.row_labels.index(("kirchhoff", v)))
    cols = []
    for l in leads_at:
        cols.append(mat.col_labels.index(("lead", l)))
    for e in incident:
        cols.append(mat.col_labels.index(("tail", e)))
    cols.append(mat.col_labels.index(("vertex", v)))
    return mat.submatrix_determinant(rows, cols)
