"""Group actions on data, stabilizers, equivalence search, and morphisms.

The change-of-basis group acts by conjugation on the endomorphism blocks and
by translation on I and J; the framed variant adds a basis change of the
framing space.  Equivalence of two data is decided by linearizing the
intertwining equations and scanning the solution space for an invertible
representative, with "inconclusive" as an honest third outcome.
"""

from __future__ import annotations

import random
from math import comb

from .adhm import AdhmDatum, AdhmError, random_datum
from .linalg import Matrix, solve_affine


class SymmetryError(Exception):
    pass


class GroupElement:
    """An invertible basis change of V, optionally paired with one of W."""

    def __init__(self, g, h=None):
        if not g.is_invertible():
            raise SymmetryError("the V-component is singular")
        if h is not None and not h.is_invertible():
            raise SymmetryError("the W-component is singular")
        self.g = g
        self.h = h

    @property
    def framed(self):
        return self.h is not None

    def inverse(self):
        return GroupElement(self.g.inverse(),
                            self.h.inverse() if self.h is not None else None)

    def compose(self, other):
        h = None
        if self.h is not None or other.h is not None:
            if self.h is None or other.h is None:
                raise SymmetryError("cannot compose framed with unframed")
            h = self.h * other.h
        return GroupElement(self.g * other.g, h)

    def __repr__(self):
        return "GroupElement(c=%d%s)" % (self.g.nrows,
                                         ", framed" if self.framed else "")


def act(element, datum):
    """The (framed) basis-change action on a datum."""
    g = element.g
    if g.nrows != datum.c:
        raise SymmetryError("group element size %d does not match c = %d"
                            % (g.nrows, datum.c))
    g_inv = g.inverse()
    conj = lambda fam: [g * m * g_inv for m in fam]
    if element.h is None:
        I_new = [g * m for m in datum.I]
        J_new = [m * g_inv for m in datum.J]
    else:
        h = element.h
        if h.nrows != datum.r:
            raise SymmetryError("framing element size %d does not match "
                                "r = %d" % (h.nrows, datum.r))
        h_inv = h.inverse()
        I_new = [g * m * h_inv for m in datum.I]
        J_new = [h * m * g_inv for m in datum.J]
    return AdhmDatum(datum.field, datum.c, datum.r, datum.d,
                     conj(datum.A), conj(datum.B), I_new, J_new,
                     conj(datum.Aprime), conj(datum.Bprime))


def _mat_unknown_rows(c):
    """Index helper: entry (i, j) of the unknown matrix -> column i*c + j."""
    return lambda i, j: i * c + j


def stabilizer_dimension(datum):
    """Dimension and basis of the isotropy directions at the identity.

    Solves the homogeneous system in D = g - id: D commutes with every
    endomorphism block, kills every I column from the left, and is killed by
    every J row from the right.  Zero means the stabilizer is trivial.
    """
    c, r = datum.c, datum.r
    field = datum.field
    idx = _mat_unknown_rows(c)
    rows = []

    def add_commutator(M):
        # (D M - M D)[i][j] = sum_t D[i,t] M[t,j] - M[i,t] D[t,j]
        for i in range(c):
            for j in range(c):
                row = [field.zero] * (c * c)
                for t in range(c):
                    row[idx(i, t)] = row[idx(i, t)] + M[t, j]
                    row[idx(t, j)] = row[idx(t, j)] - M[i, t]
                rows.append(row)

    for fam in (datum.A, datum.B, datum.Aprime, datum.Bprime):
        for M in fam:
            add_commutator(M)
    for I_k in datum.I:
        # (D I_k)[i][s] = sum_t D[i,t] I_k[t,s]
        for i in range(c):
            for s in range(r):
                row = [field.zero] * (c * c)
                for t in range(c):
                    row[idx(i, t)] = row[idx(i, t)] + I_k[t, s]
                rows.append(row)
    for J_k in datum.J:
        # (J_k D)[s][j] = sum_t J_k[s,t] D[t,j]
        for s in range(r):
            for j in range(c):
                row = [field.zero] * (c * c)
                for t in range(c):
                    row[idx(t, j)] = row[idx(t, j)] + J_k[s, t]
                rows.append(row)
    system = Matrix(field, rows)
    kern = system.kernel_basis()
    basis = [Matrix(field, [[v[idx(i, j)] for j in range(c)]
                            for i in range(c)]) for v in kern]
    return len(basis), basis


def _intertwine_rows_g(datum1, datum2, field):
    """Rows of the homogeneous system g X1 = X2 g on the g unknowns."""
    c = datum1.c
    idx = _mat_unknown_rows(c)
    rows = []
    fams = [(datum1.A, datum2.A), (datum1.B, datum2.B),
            (datum1.Aprime, datum2.Aprime), (datum1.Bprime, datum2.Bprime)]
    for fam1, fam2 in fams:
        for M1, M2 in zip(fam1, fam2):
            for i in range(c):
                for j in range(c):
                    row = [field.zero] * (c * c)
                    for t in range(c):
                        row[idx(i, t)] = row[idx(i, t)] + M1[t, j]
                        row[idx(t, j)] = row[idx(t, j)] - M2[i, t]
                    rows.append(row)
    return rows


def find_equivalence(datum1, datum2, framed=False, trials=64, seed=0):
    """Search for a basis change carrying the first datum to the second.

    Returns (status, element) with status in {"found", "none",
    "inconclusive"}.  "none" is a proof: the linearized system has no
    solution at all (or an invariant rules the orbits apart); "inconclusive"
    means solutions exist but no invertible one surfaced within the trials.
    """
    from .stability import costable_fixpoint, stabilizing_subspace_global

    if (datum1.c, datum1.r, datum1.d) != (datum2.c, datum2.r, datum2.d):
        raise SymmetryError("data have different shapes")
    field = datum1.field
    c, r = datum1.c, datum1.r
    if (stabilizing_subspace_global(datum1).dim
            != stabilizing_subspace_global(datum2).dim):
        return "none", None
    if costable_fixpoint(datum1).dim != costable_fixpoint(datum2).dim:
        return "none", None

    rng = random.Random(seed)
    idx = _mat_unknown_rows(c)

    if not framed:
        rows = _intertwine_rows_g(datum1, datum2, field)
        rhs = [field.zero] * len(rows)
        # g I1 = I2 and J2 g = J1 are inhomogeneous in g
        for I1, I2 in zip(datum1.I, datum2.I):
            for i in range(c):
                for s in range(r):
                    row = [field.zero] * (c * c)
                    for t in range(c):
                        row[idx(i, t)] = row[idx(i, t)] + I1[t, s]
                    rows.append(row)
                    rhs.append(I2[i, s])
        for J1, J2 in zip(datum1.J, datum2.J):
            for s in range(r):
                for j in range(c):
                    row = [field.zero] * (c * c)
                    for t in range(c):
                        row[idx(t, j)] = row[idx(t, j)] + J2[s, t]
                    rows.append(row)
                    rhs.append(J1[s, j])
        solved = solve_affine(Matrix(field, rows), rhs)
        if solved is None:
            return "none", None
        particular, kernel = solved

        def candidates():
            yield particular
            for _ in range(trials):
                v = list(particular)
                for b in kernel:
                    coef = field.random(rng, -5, 5)
                    v = [x + coef * y for x, y in zip(v, b)]
                yield v

        for v in candidates():
            g = Matrix(field, [[v[idx(i, j)] for j in range(c)]
                               for i in range(c)])
            if g.is_invertible():
                el = GroupElement(g)
                if act(el, datum1) == datum2:
                    return "found", el
        if not kernel and not Matrix(
                field, [[particular[idx(i, j)] for j in range(c)]
                        for i in range(c)]).is_invertible():
            return "none", None
        return "inconclusive", None

    # framed: homogeneous in (g, h) jointly
    ng, nh = c * c, r * r
    hidx = lambda s, t: ng + s * r + t
    rows = [row + [field.zero] * nh
            for row in _intertwine_rows_g(datum1, datum2, field)]
    for I1, I2 in zip(datum1.I, datum2.I):
        # g I1 - I2 h = 0
        for i in range(c):
            for s in range(r):
                row = [field.zero] * (ng + nh)
                for t in range(c):
                    row[idx(i, t)] = row[idx(i, t)] + I1[t, s]
                for t in range(r):
                    row[hidx(t, s)] = row[hidx(t, s)] - I2[i, t]
                rows.append(row)
    for J1, J2 in zip(datum1.J, datum2.J):
        # h J1 - J2 g = 0
        for s in range(r):
            for j in range(c):
                row = [field.zero] * (ng + nh)
                for t in range(r):
                    row[hidx(s, t)] = row[hidx(s, t)] + J1[t, j]
                for t in range(c):
                    row[idx(t, j)] = row[idx(t, j)] - J2[s, t]
                rows.append(row)
    kernel = Matrix(field, rows).kernel_basis()
    if not kernel:
        return "none", None
    for _ in range(trials):
        v = [field.zero] * (ng + nh)
        for b in kernel:
            coef = field.random(rng, -5, 5)
            v = [x + coef * y for x, y in zip(v, b)]
        g = Matrix(field, [[v[idx(i, j)] for j in range(c)] for i in range(c)])
        h = Matrix(field, [[v[hidx(s, t)] for t in range(r)] for s in range(r)])
        if g.is_invertible() and h.is_invertible():
            el = GroupElement(g, h)
            if act(el, datum1) == datum2:
                return "found", el
    return "inconclusive", None


class MorphismSpace:
    """Basis of intertwining pairs (f on V, g on W) between two data."""

    def __init__(self, dimension, basis):
        self.dimension = dimension
        self.basis = basis

    def __repr__(self):
        return "MorphismSpace(dim %d)" % self.dimension


def hom_space(datum1, datum2):
    """All pairs (f, g), not necessarily invertible, intertwining the data."""
    if datum1.d != datum2.d:
        raise SymmetryError("data have different d")
    field = datum1.field
    c1, c2 = datum1.c, datum2.c
    r1, r2 = datum1.r, datum2.r
    nf, ng = c2 * c1, r2 * r1
    fidx = lambda i, j: i * c1 + j          # f: c2 x c1
    gidx = lambda s, t: nf + s * r1 + t     # g: r2 x r1
    rows = []
    fams = [(datum1.A, datum2.A), (datum1.B, datum2.B),
            (datum1.Aprime, datum2.Aprime), (datum1.Bprime, datum2.Bprime)]
    for fam1, fam2 in fams:
        for M1, M2 in zip(fam1, fam2):
            # f M1 - M2 f = 0, a c2 x c1 matrix of conditions
            for i in range(c2):
                for j in range(c1):
                    row = [field.zero] * (nf + ng)
                    for t in range(c1):
                        row[fidx(i, t)] = row[fidx(i, t)] + M1[t, j]
                    for t in range(c2):
                        row[fidx(t, j)] = row[fidx(t, j)] - M2[i, t]
                    rows.append(row)
    for I1, I2 in zip(datum1.I, datum2.I):
        # f I1 - I2 g = 0, c2 x r1
        for i in range(c2):
            for s in range(r1):
                row = [field.zero] * (nf + ng)
                for t in range(c1):
                    row[fidx(i, t)] = row[fidx(i, t)] + I1[t, s]
                for t in range(r2):
                    row[gidx(t, s)] = row[gidx(t, s)] - I2[i, t]
                rows.append(row)
    for J1, J2 in zip(datum1.J, datum2.J):
        # g J1 - J2 f = 0, r2 x c1
        for s in range(r2):
            for j in range(c1):
                row = [field.zero] * (nf + ng)
                for t in range(r1):
                    row[gidx(s, t)] = row[gidx(s, t)] + J1[t, j]
                for t in range(c2):
                    row[fidx(t, j)] = row[fidx(t, j)] - J2[s, t]
                rows.append(row)
    kernel = Matrix(field, rows).kernel_basis()
    basis = []
    for v in kernel:
        f = Matrix(field, [[v[fidx(i, j)] for j in range(c1)]
                           for i in range(c2)])
        g = Matrix(field, [[v[gidx(s, t)] for t in range(r1)]
                           for s in range(r2)])
        basis.append((f, g))
    return MorphismSpace(len(basis), basis)


def moduli_dimension_certificate(r, d, trials=20, seed=0, field=None):
    """Jacobian full-rank certificate for the c = 1 solution space.

    Each trial draws a random c = 1 solution with independent I components
    and checks that the Jacobian of the coordinate equations in the (I, J)
    unknowns has maximal rank.  The reported dimension subtracts the number
    of equations and the one-dimensional symmetry group from the ambient
    (I, J) parameter count.
    """
    from .fields import QQ

    if field is None:
        field = QQ
    if r <= d:
        return {"empty": True, "r": r, "d": d,
                "reason": "independent I components need r > d"}
    n_eq = comb(d + 2, 2)
    ambient = 2 * (d + 1) * (1 + r)
    expected = 2 * (d + 1) * r - d * (d - 1) // 2
    rng = random.Random(seed)
    full = 0
    for t in range(trials):
        X = random_datum(1, r, d, mode="pn_solution_c1",
                         seed=rng.randrange(10 ** 9), field=field)
        jac = _ij_jacobian(X)
        if jac.rank() == n_eq:
            full += 1
    dim = ambient - n_eq - 1
    if dim != expected:
        raise SymmetryError("dimension bookkeeping broke: %d vs %d"
                            % (dim, expected))
    return {"empty": False, "r": r, "d": d, "trials": trials,
            "full_rank_trials": full, "jacobian_rows": n_eq,
            "dim": dim}


def _ij_jacobian(datum):
    """Jacobian of the c = 1 coordinate equations in the I and J entries.

    Unknown layout: I_0..I_d (r entries each) then J_0..J_d.  The equation
    for the pair (k, m), k <= m, is I_k.J_m + I_m.J_k (the k = m case is
    2 I_k.J_k, which scales the same row).
    """
    if datum.c != 1:
        raise SymmetryError("the Jacobian certificate needs c = 1")
    field = datum.field
    r, d = datum.r, datum.d
    ncols = 2 * (d + 1) * r
    I_off = lambda k, t: k * r + t
    J_off = lambda k, t: (d + 1) * r + k * r + t
    rows = []
    for k in range(d + 1):
        for m in range(k, d + 1):
            row = [field.zero] * ncols
            for t in range(r):
                row[I_off(k, t)] = row[I_off(k, t)] + datum.J[m][t, 0]
                row[I_off(m, t)] = row[I_off(m, t)] + datum.J[k][t, 0]
                row[J_off(k, t)] = row[J_off(k, t)] + datum.I[m][0, t]
                row[J_off(m, t)] = row[J_off(m, t)] + datum.I[k][0, t]
            rows.append(row)
    return Matrix(field, rows)
