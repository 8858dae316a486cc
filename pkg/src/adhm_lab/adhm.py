"""ADHM data: matrix families, the quadratic residual, and solution tests.

A datum holds two families Y = (A, B, I) and Y' = (A', B', J), each block a
matrix for every coordinate z_k (k = 0..d).  The residual of the quadratic
equation is a c x c matrix of degree-2 forms in z0..zd, x, y; the datum
solves the equation on a scheme when every entry lies in the scheme's ideal.
"""

from __future__ import annotations

import random

from .fields import QQ, FieldError
from .linalg import Matrix
from .poly import Poly
from .variety import VarietySpec, variable_names


class AdhmError(Exception):
    pass


class AdhmDatum:
    """The matrix family (A_k, B_k, A'_k, B'_k, I_k, J_k), k = 0..d."""

    def __init__(self, field, c, r, d, A, B, I, J, Aprime=None, Bprime=None):
        if c < 1 or r < 1 or d < 0:
            raise AdhmError("need c >= 1, r >= 1, d >= 0")
        self.field = field
        self.c = c
        self.r = r
        self.d = d
        self.A = list(A)
        self.B = list(B)
        self.Aprime = list(Aprime) if Aprime is not None else [m for m in self.A]
        self.Bprime = list(Bprime) if Bprime is not None else [m for m in self.B]
        self.I = list(I)
        self.J = list(J)
        self._validate()

    def _validate(self):
        for name, fam, shape in (("A", self.A, (self.c, self.c)),
                                 ("B", self.B, (self.c, self.c)),
                                 ("Aprime", self.Aprime, (self.c, self.c)),
                                 ("Bprime", self.Bprime, (self.c, self.c)),
                                 ("I", self.I, (self.c, self.r)),
                                 ("J", self.J, (self.r, self.c))):
            if len(fam) != self.d + 1:
                raise AdhmError("%s: expected %d component matrices, got %d"
                                % (name, self.d + 1, len(fam)))
            for k, m in enumerate(fam):
                if (m.nrows, m.ncols) != shape:
                    raise AdhmError("%s[%d]: expected %dx%d, got %dx%d"
                                    % (name, k, shape[0], shape[1],
                                       m.nrows, m.ncols))
                if m.field != self.field:
                    raise AdhmError("%s[%d]: wrong coefficient field" % (name, k))

    @property
    def n(self):
        return self.d + 2

    @property
    def nvars(self):
        return self.d + 3

    def primes_match(self):
        return (all(a == ap for a, ap in zip(self.A, self.Aprime))
                and all(b == bp for b, bp in zip(self.B, self.Bprime)))

    def mu_residual(self):
        """The c x c matrix of degree-2 forms measuring equation failure."""
        nv = self.nvars
        f = self.field
        c = self.c

        def zmono(k, m=None):
            e = [0] * nv
            e[k] += 1
            if m is not None:
                e[m] += 1
            return tuple(e)

        x_idx, y_idx = nv - 2, nv - 1
        entries = [[Poly.zero(f, nv) for _ in range(c)] for _ in range(c)]
        for k in range(self.d + 1):
            for m in range(self.d + 1):
                quad = (self.A[k] * self.Bprime[m] - self.B[k] * self.Aprime[m]
                        + self.I[k] * self.J[m])
                mono = zmono(k, m)
                for i in range(c):
                    for j in range(c):
                        v = quad[i, j]
                        if v != f.zero:
                            entries[i][j] = entries[i][j] + Poly(f, nv, {mono: v})
            dB = self.Bprime[k] - self.B[k]
            dA = self.A[k] - self.Aprime[k]
            for i in range(c):
                for j in range(c):
                    if dB[i, j] != f.zero:
                        entries[i][j] = entries[i][j] + Poly(
                            f, nv, {zmono(k, x_idx): dB[i, j]})
                    if dA[i, j] != f.zero:
                        entries[i][j] = entries[i][j] + Poly(
                            f, nv, {zmono(k, y_idx): dA[i, j]})
        return entries

    def is_adhm_solution(self, variety):
        if variety.d != self.d:
            raise AdhmError("datum has d = %d but the scheme sits in P^%d"
                            % (self.d, variety.n))
        return all(variety.contains_in_degree(e)
                   for row in self.mu_residual() for e in row)

    def pn_coordinate_equations(self):
        """Labeled residual matrices of the coordinate form of the equation.

        Requires A' = A and B' = B; all residuals vanish exactly when the
        datum solves the equation on the ambient projective space.
        """
        mismatches = []
        for k in range(self.d + 1):
            if self.A[k] != self.Aprime[k]:
                mismatches.append("A[%d] != Aprime[%d]" % (k, k))
            if self.B[k] != self.Bprime[k]:
                mismatches.append("B[%d] != Bprime[%d]" % (k, k))
        if mismatches:
            raise AdhmError("coordinate equations need matching primed blocks: "
                            + ", ".join(mismatches))
        out = []
        for k in range(self.d + 1):
            res = (self.A[k] * self.B[k] - self.B[k] * self.A[k]
                   + self.I[k] * self.J[k])
            out.append(("[A_%d,B_%d] + I_%d*J_%d" % (k, k, k, k), res))
        for k in range(self.d + 1):
            for m in range(k + 1, self.d + 1):
                res = (self.A[k] * self.B[m] - self.B[m] * self.A[k]
                       + self.B[k] * self.A[m] - self.A[m] * self.B[k]
                       + self.I[k] * self.J[m] + self.I[m] * self.J[k])
                out.append(("[A_%d,B_%d] + [B_%d,A_%d] + I_%d*J_%d + I_%d*J_%d"
                            % (k, m, k, m, k, m, m, k), res))
        return out

    def on_pn_solutions_forces_prime_equality(self, check_solution=True):
        """Checkable assertion: ambient-space solutions have A = A', B = B'."""
        if check_solution:
            ambient = VarietySpec.projective_space(self.n, self.field)
            if not self.is_adhm_solution(ambient):
                raise AdhmError("datum is not a solution on the ambient space")
        return self.primes_match()

    def evaluate(self, point):
        """Evaluation at a point, using its literal coordinates."""
        if point.n != self.n:
            raise AdhmError("point lives in P^%d, datum needs P^%d"
                            % (point.n, self.n))
        field = point.field
        datum = self if field == self.field else self.map_field(field)

        def comb(fam, nrows, ncols):
            out = Matrix.zeros(field, nrows, ncols)
            for k in range(self.d + 1):
                zk = point.z(k)
                if zk != field.zero:
                    out = out + fam[k].scale(zk)
            return out

        return PointDatum(
            point=point,
            A=comb(datum.A, self.c, self.c),
            B=comb(datum.B, self.c, self.c),
            Aprime=comb(datum.Aprime, self.c, self.c),
            Bprime=comb(datum.Bprime, self.c, self.c),
            I=comb(datum.I, self.c, self.r),
            J=comb(datum.J, self.r, self.c))

    def map_field(self, field):
        if field == self.field:
            return self
        conv = lambda fam: [m.map_field(field) for m in fam]
        return AdhmDatum(field, self.c, self.r, self.d,
                         conv(self.A), conv(self.B), conv(self.I), conv(self.J),
                         conv(self.Aprime), conv(self.Bprime))

    def __eq__(self, other):
        return (isinstance(other, AdhmDatum)
                and (self.c, self.r, self.d) == (other.c, other.r, other.d)
                and self.A == other.A and self.B == other.B
                and self.Aprime == other.Aprime and self.Bprime == other.Bprime
                and self.I == other.I and self.J == other.J)

    def to_json(self):
        rend = self.field.render

        def fam(ms):
            return [[[rend(m[i, j]) for j in range(m.ncols)]
                     for i in range(m.nrows)] for m in ms]

        obj = {"c": self.c, "r": self.r, "d": self.d,
               "A": fam(self.A), "B": fam(self.B)}
        if not self.primes_match():
            obj["Aprime"] = fam(self.Aprime)
            obj["Bprime"] = fam(self.Bprime)
        obj["I"] = fam(self.I)
        obj["J"] = fam(self.J)
        return obj

    @classmethod
    def from_json(cls, obj, field=QQ):
        if not isinstance(obj, dict):
            raise AdhmError("datum document must be a JSON object")
        for key in ("c", "r", "d"):
            if key not in obj:
                raise AdhmError("datum document: missing key %r" % key)
            if not isinstance(obj[key], int):
                raise AdhmError("datum document: %r must be an integer" % key)
        c, r, d = obj["c"], obj["r"], obj["d"]

        def fam(key, nrows, ncols, fallback=None):
            if key not in obj:
                if fallback is not None:
                    return [Matrix(field, m.a) for m in fallback]
                raise AdhmError("datum document: missing key %r" % key)
            raw = obj[key]
            if not isinstance(raw, list) or len(raw) != d + 1:
                raise AdhmError("%s: expected a list of %d matrices" % (key, d + 1))
            out = []
            for k, mat in enumerate(raw):
                if not isinstance(mat, list) or len(mat) != nrows:
                    raise AdhmError("%s[%d]: expected %d rows" % (key, k, nrows))
                rows = []
                for i, row in enumerate(mat):
                    if not isinstance(row, list) or len(row) != ncols:
                        raise AdhmError("%s[%d][%d]: expected %d entries"
                                        % (key, k, i, ncols))
                    ent = []
                    for j, v in enumerate(row):
                        if not isinstance(v, (int, str)):
                            raise AdhmError("%s[%d][%d][%d]: expected an integer "
                                            "or a 'p/q' string" % (key, k, i, j))
                        try:
                            ent.append(field(v))
                        except (FieldError, ValueError, ZeroDivisionError) as exc:
                            raise AdhmError("%s[%d][%d][%d]: %s"
                                            % (key, k, i, j, exc)) from None
                    rows.append(ent)
                out.append(Matrix(field, rows))
            return out

        A = fam("A", c, c)
        B = fam("B", c, c)
        Aprime = fam("Aprime", c, c, fallback=A)
        Bprime = fam("Bprime", c, c, fallback=B)
        I = fam("I", c, r)
        J = fam("J", r, c)
        return cls(field, c, r, d, A, B, I, J, Aprime, Bprime)

    def __repr__(self):
        return "AdhmDatum(c=%d, r=%d, d=%d)" % (self.c, self.r, self.d)


class PointDatum:
    """Evaluated blocks at one point; a literal representative, not a class.

    Every predicate consumed downstream is invariant under rescaling the
    point's homogeneous coordinates.
    """

    __slots__ = ("point", "A", "B", "Aprime", "Bprime", "I", "J")

    def __init__(self, point, A, B, Aprime, Bprime, I, J):
        self.point = point
        self.A = A
        self.B = B
        self.Aprime = Aprime
        self.Bprime = Bprime
        self.I = I
        self.J = J

    @property
    def c(self):
        return self.A.nrows

    @property
    def r(self):
        return self.I.ncols

    def __repr__(self):
        return "PointDatum(c=%d, r=%d at %r)" % (self.c, self.r, self.point)


def random_datum(c, r, d, mode="generic", seed=0, field=QQ, lo=-3, hi=3):
    """Random datum; mode 'pn_solution_c1' solves the c = 1 equations.

    The solution mode draws random A_k, B_k and linearly independent I_k,
    then solves the linear conditions on the J_k; it needs c = 1 and r > d.
    """
    rng = random.Random(seed)

    def rand_mat(nrows, ncols):
        return Matrix(field, [[field.random(rng, lo, hi) for _ in range(ncols)]
                              for _ in range(nrows)])

    if mode == "generic":
        return AdhmDatum(field, c, r, d,
                         A=[rand_mat(c, c) for _ in range(d + 1)],
                         B=[rand_mat(c, c) for _ in range(d + 1)],
                         I=[rand_mat(c, r) for _ in range(d + 1)],
                         J=[rand_mat(r, c) for _ in range(d + 1)],
                         Aprime=[rand_mat(c, c) for _ in range(d + 1)],
                         Bprime=[rand_mat(c, c) for _ in range(d + 1)])
    if mode != "pn_solution_c1":
        raise AdhmError("unknown mode %r" % mode)
    if c != 1:
        raise AdhmError("solution mode only supports c = 1")
    if r <= d:
        raise AdhmError("no solutions with linearly independent I_k exist "
                        "for r = %d <= d = %d (the space is empty)" % (r, d))
    A = [rand_mat(1, 1) for _ in range(d + 1)]
    B = [rand_mat(1, 1) for _ in range(d + 1)]
    for _ in range(100):
        I = [rand_mat(1, r) for _ in range(d + 1)]
        stacked = Matrix(field, [m.row(0) for m in I])
        if stacked.rank() == d + 1:
            break
    else:
        raise AdhmError("failed to draw independent I components")
    # unknowns: entries of J_0..J_d (each r x 1), conditions I_k J_m + I_m J_k = 0
    nunk = (d + 1) * r
    rows = []
    for k in range(d + 1):
        for m in range(k, d + 1):
            row = [field.zero] * nunk
            for t in range(r):
                row[m * r + t] = row[m * r + t] + I[k][0, t]
                row[k * r + t] = row[k * r + t] + I[m][0, t]
            rows.append(row)
    system = Matrix(field, rows)
    kern = system.kernel_basis()
    vec = [field.zero] * nunk
    for b in kern:
        coef = field.random(rng, lo, hi)
        vec = [v + coef * x for v, x in zip(vec, b)]
    J = [Matrix(field, [[vec[k * r + t]] for t in range(r)])
         for k in range(d + 1)]
    return AdhmDatum(field, 1, r, d, A, B, I, J)
