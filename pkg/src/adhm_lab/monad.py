"""The three-term complex attached to a datum, and its pointwise behavior.

The two maps are matrices of linear forms: the tall map stacks (A' + x, B' +
y, J) and the wide map is (-B - y, A + x, I), with the identity blocks
carrying x and y.  Their product vanishes modulo the scheme's ideal exactly
when the datum solves the quadratic equation, which is checked rather than
assumed.
"""

from __future__ import annotations

from itertools import combinations

from .adhm import AdhmError
from .linalg import Matrix
from .poly import Poly
from .variety import ideal_variety_dimension


class MonadError(Exception):
    pass


class MonadRep:
    """Polynomial matrices of the complex O(-1)^c -> O^(2c+r) -> O(1)^c."""

    def __init__(self, datum):
        self.datum = datum
        self.c = datum.c
        self.r = datum.r
        self.a = 2 * datum.c + datum.r
        self.field = datum.field
        self.nvars = datum.nvars
        self.alpha = self._build_alpha()
        self.beta = self._build_beta()
        self.block_tags = {"alpha": ("Aprime + x", "Bprime + y", "J"),
                           "beta": ("-B - y", "A + x", "I")}

    def _linear_entry(self, fam, i, j, extra_var=None, extra_sign=1, negate=False):
        f = self.field
        nv = self.nvars
        coeffs = {}
        for k in range(self.datum.d + 1):
            v = fam[k][i, j]
            if negate:
                v = -v
            if v != f.zero:
                mono = [0] * nv
                mono[k] = 1
                coeffs[tuple(mono)] = v
        if extra_var is not None:
            mono = [0] * nv
            mono[extra_var] = 1
            prev = coeffs.get(tuple(mono), f.zero)
            coeffs[tuple(mono)] = prev + f(extra_sign)
        return Poly(f, nv, coeffs)

    def _build_alpha(self):
        c, r = self.c, self.r
        x_idx, y_idx = self.nvars - 2, self.nvars - 1
        rows = []
        for i in range(c):
            rows.append([self._linear_entry(self.datum.Aprime, i, j,
                                            extra_var=x_idx if i == j else None)
                         for j in range(c)])
        for i in range(c):
            rows.append([self._linear_entry(self.datum.Bprime, i, j,
                                            extra_var=y_idx if i == j else None)
                         for j in range(c)])
        for t in range(r):
            rows.append([self._linear_entry(self.datum.J, t, j)
                         for j in range(c)])
        return rows

    def _build_beta(self):
        c, r = self.c, self.r
        x_idx, y_idx = self.nvars - 2, self.nvars - 1
        rows = []
        for i in range(c):
            row = []
            for j in range(c):
                row.append(self._linear_entry(
                    self.datum.B, i, j, negate=True,
                    extra_var=y_idx if i == j else None, extra_sign=-1))
            for j in range(c):
                row.append(self._linear_entry(
                    self.datum.A, i, j,
                    extra_var=x_idx if i == j else None))
            for t in range(r):
                row.append(self._linear_entry(self.datum.I, i, t))
            rows.append(row)
        return rows

    def beta_alpha(self):
        """The c x c product matrix of quadratic forms."""
        c = self.c
        out = []
        for i in range(c):
            row = []
            for j in range(c):
                acc = Poly.zero(self.field, self.nvars)
                for t in range(self.a):
                    acc = acc + self.beta[i][t] * self.alpha[t][j]
                row.append(acc)
            out.append(row)
        return out

    def fiber_maps(self, point):
        pd = self.datum.evaluate(point)
        return fiber_alpha(pd), fiber_beta(pd)

    def to_json(self, var_names):
        return {"alpha": [[p.render(var_names) for p in row]
                          for row in self.alpha],
                "beta": [[p.render(var_names) for p in row]
                         for row in self.beta],
                "blocks": self.block_tags}

    def __repr__(self):
        return "MonadRep(c=%d, r=%d)" % (self.c, self.r)


def build_monad(datum):
    return MonadRep(datum)


def verify_complex(monad, variety):
    """Whether the composed map vanishes modulo the scheme's ideal."""
    if variety.d != monad.datum.d:
        raise MonadError("scheme and datum dimensions disagree")
    return all(variety.contains_in_degree(e)
               for row in monad.beta_alpha() for e in row)


def fiber_alpha(pd):
    """The (2c+r) x c evaluated tall map at a point datum."""
    field = pd.A.field
    c = pd.c
    x_id = Matrix.identity(field, c).scale(pd.point.x)
    y_id = Matrix.identity(field, c).scale(pd.point.y)
    return (pd.Aprime + x_id).stack(pd.Bprime + y_id).stack(pd.J)


def fiber_beta(pd):
    """The c x (2c+r) evaluated wide map at a point datum."""
    field = pd.A.field
    c = pd.c
    x_id = Matrix.identity(field, c).scale(pd.point.x)
    y_id = Matrix.identity(field, c).scale(pd.point.y)
    return (-(pd.B + y_id)).hstack(pd.A + x_id).hstack(pd.I)


def fiber_cohomology_dim(monad, point):
    """Kernel-over-image dimension of the fiber sequence at one point."""
    a_p, b_p = monad.fiber_maps(point)
    if not (b_p * a_p).is_zero():
        raise MonadError("fiber composition is nonzero at %r: the datum does "
                         "not solve the equation there" % point)
    ker = monad.a - b_p.rank()
    return ker - a_p.rank()


def poly_det(entries, field, nvars):
    """Determinant of a small square matrix of polynomials (Laplace)."""
    size = len(entries)
    if size == 0:
        return Poly.constant(field, nvars, field.one)
    if size == 1:
        return entries[0][0]
    acc = Poly.zero(field, nvars)
    for j in range(size):
        if entries[0][j].is_zero():
            continue
        minor = [[row[t] for t in range(size) if t != j]
                 for row in entries[1:]]
        term = entries[0][j] * poly_det(minor, field, nvars)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def maximal_minors(entries, field, nvars):
    """All c x c minors of a c x m (or m x c) polynomial matrix."""
    nrows = len(entries)
    ncols = len(entries[0])
    minors = []
    if nrows <= ncols:
        for cols in combinations(range(ncols), nrows):
            sub = [[row[j] for j in cols] for row in entries]
            minors.append(poly_det(sub, field, nvars))
    else:
        for rows in combinations(range(nrows), ncols):
            sub = [entries[i] for i in rows]
            minors.append(poly_det(sub, field, nvars))
    return [m for m in minors if not m.is_zero()]


class DegenerationInfo:
    """Where the tall map drops rank, and the codimension of that locus."""

    def __init__(self, locus_dim, variety_dim, codim, certifying_degree,
                 witnesses, nondegenerate, conclusive):
        self.locus_dim = locus_dim          # count or "empty" or None
        self.variety_dim = variety_dim
        self.codim = codim                  # count or "empty" or None
        self.certifying_degree = certifying_degree
        self.witnesses = witnesses
        self.nondegenerate = nondegenerate
        self.conclusive = conclusive

    def to_json(self):
        return {"locus_dim": self.locus_dim,
                "variety_dim": self.variety_dim,
                "codim": self.codim,
                "certifying_degree": self.certifying_degree,
                "witnesses": [p.to_json() for p in self.witnesses],
                "nondegenerate": self.nondegenerate,
                "conclusive": self.conclusive}

    def __repr__(self):
        return "DegenerationInfo(codim=%r, nondegenerate=%r)" % (
            self.codim, self.nondegenerate)


def degeneration_info(monad, variety, degree_bound=8, samples=20, seed=0,
                      points=None):
    """Codimension data for the locus where the tall map loses injectivity."""
    from .fields import DEFAULT_PRIME, PrimeField, QQ

    field = monad.field
    minors = maximal_minors(monad.alpha, field, monad.nvars)
    gens = list(variety.generators) + minors
    locus_dim, locus_ok = ideal_variety_dimension(
        gens, monad.nvars, degree_bound, field)
    ydim, y_ok = ideal_variety_dimension(
        variety.generators, monad.nvars, degree_bound, field)

    witnesses = []
    if points is None and samples > 0:
        try:
            sample_field = field if isinstance(field, PrimeField) \
                else PrimeField(DEFAULT_PRIME)
            sample_variety = variety if sample_field == variety.field \
                else variety.map_field(sample_field)
            points = sample_variety.sample_points(samples, seed)
        except Exception:
            points = []
    sampled_datum = monad.datum
    locus_points = list(points or [])
    if locus_dim not in ("empty", None) and samples > 0:
        # aim sampling at the rank-drop locus itself; a uniform draw from
        # the scheme almost never lands on a positive-codimension subset
        from .variety import sample_projective_zeros
        sample_field = field if isinstance(field, PrimeField) \
            else PrimeField(DEFAULT_PRIME)
        locus_gens = [g.map_field(sample_field) for g in gens]
        locus_points.extend(sample_projective_zeros(
            locus_gens, monad.nvars, min(samples, 5), seed + 1, sample_field))
    for p in locus_points:
        if p.field != sampled_datum.field:
            sampled = build_monad(sampled_datum.map_field(p.field))
        else:
            sampled = monad
        a_p, _ = sampled.fiber_maps(p)
        if a_p.rank() < monad.c:
            witnesses.append(p)

    certifying_degree = None
    if locus_dim == "empty" and locus_ok:
        # record the first degree where the ideal fills the whole graded piece
        from math import comb
        from .poly import graded_ideal_dim
        for D in range(1, degree_bound + 1):
            if graded_ideal_dim(gens, monad.nvars, D, field) == comb(
                    D + monad.nvars - 1, monad.nvars - 1):
                certifying_degree = D
                break

    codim = None
    conclusive = locus_ok and y_ok
    if locus_dim == "empty":
        codim = "empty"
        nondegenerate = True
    elif conclusive:
        codim = ydim - locus_dim
        nondegenerate = codim >= 2
    else:
        nondegenerate = None
    if witnesses and codim == "empty":
        raise MonadError("internal contradiction: certified empty locus "
                         "but sampled witnesses exist")
    return DegenerationInfo(locus_dim, ydim, codim, certifying_degree,
                            witnesses, nondegenerate, conclusive)


def restrict_to_line(monad):
    """Canonical forms on the marked line, with fiber framings at two points.

    Returns a dict with the restricted matrices, a structural check flag,
    and for each of the two reference points of the line an embedding of the
    framing space into the fiber kernel.
    """
    from .variety import PointOnY

    field = monad.field
    nv = monad.nvars
    zero_z = {k: field.zero for k in range(monad.datum.d + 1)}
    alpha_l = [[p.substitute(zero_z) for p in row] for row in monad.alpha]
    beta_l = [[p.substitute(zero_z) for p in row] for row in monad.beta]

    c, r = monad.c, monad.r
    x_var = Poly.variable(field, nv, nv - 2)
    y_var = Poly.variable(field, nv, nv - 1)
    zero = Poly.zero(field, nv)
    expected_alpha = ([[x_var if i == j else zero for j in range(c)]
                       for i in range(c)]
                      + [[y_var if i == j else zero for j in range(c)]
                         for i in range(c)]
                      + [[zero] * c for _ in range(r)])
    expected_beta = [[(-y_var if i == j else zero) for j in range(c)]
                     + [(x_var if i == j else zero) for j in range(c)]
                     + [zero] * r for i in range(c)]
    canonical = alpha_l == expected_alpha and beta_l == expected_beta
    if not canonical:
        raise MonadError("restriction to the line is not in canonical form; "
                         "the input matrices are corrupted")

    framing = []
    n = monad.datum.n
    emb = ([[field.zero] * r for _ in range(2 * c)]
           + [[field.one if i == j else field.zero for j in range(r)]
              for i in range(r)])
    for (xv, yv) in ((field.one, field.zero), (field.zero, field.one)):
        point = PointOnY.line_point(field, n, xv, yv)
        dim = fiber_cohomology_dim(monad, point)
        framing.append({"point": point, "fiber_dim": dim,
                        "embedding": Matrix(field, emb)})
    return {"alpha": alpha_l, "beta": beta_l, "canonical": canonical,
            "framing": framing}
