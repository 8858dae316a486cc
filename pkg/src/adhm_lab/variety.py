"""Projective base schemes cut out by homogeneous forms, with a marked line.

The ambient space is P^n with coordinates z0..zd, x, y where d = n - 2, and
the marked line is z0 = ... = zd = 0.  Every generator is required to vanish
on that line, and no generator may be linear, so the z's stay independent on
the scheme.  Point sampling works over a prime field by substituting random
values into all but one variable and scanning the remaining univariate
condition for roots.
"""

from __future__ import annotations

from math import comb

from .fields import QQ, PrimeField
from .poly import (Poly, PolyError, graded_ideal_dim, monomials, parse_poly)


class VarietyError(Exception):
    pass


def variable_names(n):
    """Coordinate names on P^n: z0..zd then x, y (d = n - 2)."""
    if n < 2:
        raise VarietyError("ambient dimension must be at least 2, got %d" % n)
    return ["z%d" % k for k in range(n - 1)] + ["x", "y"]


class VarietySpec:
    """A subscheme of P^n given by homogeneous ideal generators."""

    def __init__(self, n, generators=(), field=QQ):
        self.n = n
        self.d = n - 2
        self.field = field
        self.var_names = variable_names(n)
        self.nvars = n + 1
        self.generators = list(generators)
        problems = self.validate()
        if problems:
            raise VarietyError("; ".join(problems))

    def validate(self):
        """Check the standing hypotheses; returns a list of violations."""
        problems = []
        zero_z = {k: self.field.zero for k in range(self.d + 1)}
        for i, g in enumerate(self.generators):
            label = "generator %d (%s)" % (i, g.render(self.var_names))
            if g.nvars != self.nvars:
                problems.append("%s: wrong number of variables" % label)
                continue
            if g.is_zero():
                problems.append("%s: zero generator" % label)
                continue
            if not g.is_homogeneous():
                problems.append("%s: not homogeneous" % label)
                continue
            if g.degree() == 1:
                problems.append("%s: linear generator (the coordinate forms "
                                "z_k must stay independent on the scheme)" % label)
            if not g.substitute(zero_z).is_zero():
                problems.append("%s: does not vanish on the line "
                                "z0 = ... = zd = 0" % label)
        return problems

    def is_projective_space(self):
        return not self.generators

    def contains_in_degree(self, f):
        """Graded ideal membership of a homogeneous polynomial."""
        if f.is_zero():
            return True
        if not f.is_homogeneous():
            raise VarietyError("membership test requires a homogeneous form")
        if not self.generators:
            return False
        d = f.degree()
        base = graded_ideal_dim(self.generators, self.nvars, d, self.field)
        ext = graded_ideal_dim(self.generators + [f], self.nvars, d, self.field)
        return ext == base

    def contains_point(self, point):
        zero = point.field.zero
        gens = self.generators
        if point.field != self.field:
            gens = [g.map_field(point.field) for g in gens]
        return all(g.evaluate(point.coords) == zero for g in gens)

    def dimension_estimate(self, degree_bound=8):
        """Dimension read from Hilbert-function growth up to degree_bound.

        Returns {"dim": count or "empty", "conclusive": bool,
                 "degree_bound": degree_bound}.
        """
        dim, conclusive = ideal_variety_dimension(
            self.generators, self.nvars, degree_bound, self.field)
        return {"dim": dim, "conclusive": conclusive,
                "degree_bound": degree_bound}

    def sample_points(self, count, seed, field=None):
        """Seeded random points on the scheme over a prime field.

        When count >= 2 the result includes at least one point on the marked
        line and, when the search finds one, at least one point off it.
        """
        import random

        if field is None:
            field = self.field
        if not isinstance(field, PrimeField):
            if self.is_projective_space():
                rng = random.Random(seed)
                pts = []
                for _ in range(count):
                    coords = [field.random(rng) for _ in range(self.nvars)]
                    if all(c == field.zero for c in coords):
                        coords[-1] = field.one
                    pts.append(PointOnY(field, coords))
                if count >= 2:
                    pts[0] = PointOnY.line_point(field, self.n, field.one,
                                                 field.zero)
                return pts
            raise VarietyError("point sampling needs a prime field "
                               "(or the ambient projective space)")
        rng = random.Random(seed)
        gens = [g.map_field(field) for g in self.generators]
        pts = []
        seen = set()
        want_on_line = count >= 2
        budget = 10000 * count
        trials = 0
        while len(pts) < count and trials < budget:
            trials += 1
            p = self._sample_one(gens, field, rng)
            if p is None:
                continue
            key = p.canonical_key()
            if key in seen:
                continue
            seen.add(key)
            pts.append(p)
        if want_on_line and not any(p.on_line() for p in pts):
            line_pt = PointOnY.line_point(field, self.n,
                                       field(1 + rng.randrange(field.p - 1)),
                                       field.one)
            pts[-1] = line_pt
        if want_on_line and all(p.on_line() for p in pts):
            off = None
            for _ in range(budget):
                cand = self._sample_one(gens, field, rng)
                if cand is not None and not cand.on_line():
                    off = cand
                    break
            if off is not None:
                pts[0] = off
        if len(pts) < count:
            raise VarietyError(
                "point sampling exhausted after %d trials: found %d of %d"
                % (trials, len(pts), count))
        return pts

    def _sample_one(self, gens, field, rng):
        return random_projective_zero(gens, self.nvars, field, rng)

    def map_field(self, field):
        return VarietySpec(self.n, [g.map_field(field) for g in self.generators],
                           field)

    @classmethod
    def projective_space(cls, n, field=QQ):
        return cls(n, [], field)

    @classmethod
    def from_json(cls, obj, field=QQ):
        if not isinstance(obj, dict):
            raise VarietyError("variety document must be a JSON object")
        if "n" not in obj:
            raise VarietyError("variety document: missing key 'n'")
        n = obj["n"]
        if not isinstance(n, int) or n < 2:
            raise VarietyError("variety document: 'n' must be an integer >= 2")
        names = variable_names(n)
        raw_gens = obj.get("generators", [])
        if not isinstance(raw_gens, list):
            raise VarietyError("variety document: 'generators' must be a list")
        gens = []
        for i, text in enumerate(raw_gens):
            if not isinstance(text, str):
                raise VarietyError("generators[%d]: expected a string" % i)
            try:
                gens.append(parse_poly(text, names, field))
            except PolyError as exc:
                raise VarietyError("generators[%d]: %s" % (i, exc)) from None
        return cls(n, gens, field)

    def to_json(self):
        return {"n": self.n,
                "generators": [g.render(self.var_names) for g in self.generators]}

    def __repr__(self):
        if not self.generators:
            return "VarietySpec(P^%d)" % self.n
        return "VarietySpec(P^%d, %d generators)" % (self.n, len(self.generators))


class PointOnY:
    """Homogeneous coordinates of a point, stored as a literal representative."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = [field(c) for c in coords]
        if all(c == field.zero for c in self.coords):
            raise VarietyError("point has all coordinates zero")

    @classmethod
    def line_point(cls, field, n, x_val, y_val):
        coords = [field.zero] * (n - 1) + [field(x_val), field(y_val)]
        return cls(field, coords)

    @property
    def n(self):
        return len(self.coords) - 1

    def z(self, k):
        return self.coords[k]

    @property
    def x(self):
        return self.coords[-2]

    @property
    def y(self):
        return self.coords[-1]

    def on_line(self):
        zero = self.field.zero
        return all(c == zero for c in self.coords[:-2])

    def scaled(self, factor):
        return PointOnY(self.field, [factor * c for c in self.coords])

    def canonical_key(self):
        """Scale so the first nonzero coordinate is 1; hashable."""
        zero = self.field.zero
        lead = next(c for c in self.coords if c != zero)
        return tuple(repr(c / lead) for c in self.coords)

    def to_json(self):
        return [self.field.render(c) for c in self.coords]

    def __repr__(self):
        return "(" + ":".join(str(self.field.render(c)) for c in self.coords) + ")"


def random_projective_zero(gens, nvars, field, rng, zero_bias=0.0):
    """One random common zero of the forms over F_p, or None for this trial.

    Fixes random values for all but one randomly chosen coordinate, reduces
    every generator to a univariate condition, and scans the gcd for roots.
    A positive zero_bias pins each fixed coordinate to zero with that
    probability, which is what lets trials land on loci that force several
    coordinates to vanish simultaneously.
    """
    p = field.p
    free = rng.randrange(nvars)
    values = {i: field(0 if rng.random() < zero_bias else rng.randrange(p))
              for i in range(nvars) if i != free}
    unis = []
    for g in gens:
        sub = g.substitute(values)
        coeffs = _univariate_coeffs(sub, free, p)
        if coeffs is None:
            return None
        if any(coeffs):
            unis.append(coeffs)
    if not unis:
        root = rng.randrange(p)
    else:
        h = unis[0]
        for u in unis[1:]:
            h = _upoly_gcd(h, u, p)
        roots = _upoly_roots(h, p, rng)
        if not roots:
            return None
        root = roots[rng.randrange(len(roots))]
    coords = [field(values[i].v) if i != free else field(root)
              for i in range(nvars)]
    if all(c.v == 0 for c in coords):
        return None
    pt = PointOnY(field, coords)
    zero = field.zero
    if not all(g.evaluate(pt.coords) == zero for g in gens):
        return None
    return pt


def sample_projective_zeros(gens, nvars, count, seed, field, max_trials=None):
    """Up to ``count`` distinct random common zeros of the forms over F_p."""
    import random

    rng = random.Random(seed)
    if max_trials is None:
        max_trials = 2000 * max(1, count)
    pts = []
    seen = set()
    for _ in range(max_trials):
        if len(pts) >= count:
            break
        pt = random_projective_zero(gens, nvars, field, rng, zero_bias=0.4)
        if pt is None:
            continue
        key = pt.canonical_key()
        if key in seen:
            continue
        seen.add(key)
        pts.append(pt)
    return pts


def _univariate_coeffs(poly, var_index, p):
    """Coefficient list (ascending) of a poly involving only one variable."""
    coeffs = {}
    for mono, c in poly.coeffs.items():
        if any(e and i != var_index for i, e in enumerate(mono)):
            return None
        e = mono[var_index]
        coeffs[e] = (coeffs.get(e, 0) + c.v) % p
    if not coeffs:
        return [0]
    out = [0] * (max(coeffs) + 1)
    for e, v in coeffs.items():
        out[e] = v
    return out


def _upoly_trim(f, p):
    f = [c % p for c in f]
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return f


def _upoly_mod(f, g, p):
    """Remainder of f by g; both ascending coefficient lists mod p."""
    f = _upoly_trim(list(f), p)
    g = _upoly_trim(g, p)
    dg = len(g) - 1
    if dg == 0:
        return [0]
    inv = pow(g[-1], -1, p)
    while len(f) - 1 >= dg and any(f):
        shift = len(f) - 1 - dg
        factor = f[-1] * inv % p
        for i in range(dg + 1):
            f[shift + i] = (f[shift + i] - factor * g[i]) % p
        f = _upoly_trim(f, p)
    return f


def _upoly_gcd(f, g, p):
    f, g = _upoly_trim(f, p), _upoly_trim(g, p)
    while any(g):
        f, g = g, _upoly_mod(f, g, p)
    if any(f):
        inv = pow(f[-1], -1, p)
        f = [c * inv % p for c in f]
    return f


def _upoly_mulmod(a, b, m, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _upoly_mod(out, m, p)


def _upoly_powmod(base, e, m, p):
    result = [1]
    base = _upoly_mod(base, m, p)
    while e:
        if e & 1:
            result = _upoly_mulmod(result, base, m, p)
        base = _upoly_mulmod(base, base, m, p)
        e >>= 1
    return result


def _upoly_roots(f, p, rng):
    """All roots in F_p of a univariate polynomial (ascending coefficients)."""
    f = _upoly_trim(f, p)
    if not any(f):
        raise VarietyError("root scan of the zero polynomial")
    if len(f) == 1:
        return []
    # x^p - x splits into distinct linear factors; gcd keeps the F_p roots
    xp = _upoly_powmod([0, 1], p, f, p)
    xp_minus_x = list(xp) + [0] * max(0, 2 - len(xp))
    xp_minus_x[1] = (xp_minus_x[1] - 1) % p
    g = _upoly_gcd(f, xp_minus_x, p)
    return sorted(_split_linear(g, p, rng))


def _split_linear(g, p, rng):
    g = _upoly_trim(g, p)
    deg = len(g) - 1
    if deg <= 0:
        return []
    if deg == 1:
        return [(-g[0]) * pow(g[1], -1, p) % p]
    roots = []
    if g[0] == 0:
        roots.append(0)
        g = _upoly_trim(g[1:], p)
        return roots + _split_linear(g, p, rng)
    half = (p - 1) // 2
    for _ in range(200):
        a = rng.randrange(p)
        t = _upoly_powmod([a, 1], half, g, p)
        t = list(t) + [0] * max(0, 1 - len(t))
        t[0] = (t[0] - 1) % p
        h = _upoly_gcd(g, t, p)
        dh = len(_upoly_trim(h, p)) - 1
        if 0 < dh < deg:
            other = _upoly_quotient(g, h, p)
            return roots + _split_linear(h, p, rng) + _split_linear(other, p, rng)
    raise VarietyError("equal-degree splitting failed to converge")


def _upoly_quotient(f, g, p):
    f = _upoly_trim(list(f), p)
    g = _upoly_trim(g, p)
    dg = len(g) - 1
    inv = pow(g[-1], -1, p)
    q = [0] * max(1, len(f) - dg)
    while len(f) - 1 >= dg and any(f):
        shift = len(f) - 1 - dg
        factor = f[-1] * inv % p
        q[shift] = factor
        for i in range(dg + 1):
            f[shift + i] = (f[shift + i] - factor * g[i]) % p
        f = _upoly_trim(f, p)
    return q


def ideal_variety_dimension(generators, nvars, degree_bound, field):
    """Projective dimension of the zero scheme from Hilbert-function growth.

    Returns (dim or "empty", conclusive flag).  Dimension is the degree of
    polynomial growth of h(D) = C(D+n, n) - (ideal dimension in degree D),
    detected by successive differences stabilizing over the tail.
    """
    n = nvars - 1
    start = max([g.degree() for g in generators], default=0)
    if degree_bound < start + 2:
        return None, False
    values = [comb(D + n, n) - graded_ideal_dim(generators, nvars, D, field)
              for D in range(degree_bound + 1)]
    # difference down, always judging by the last three values so transient
    # behavior just past the generator degrees cannot spoil the detection
    level = values[start:]
    for depth in range(n + 2):
        if len(level) < 3:
            return None, False
        if level[-1] == level[-2] == level[-3] == 0:
            return ("empty", True) if depth == 0 else (depth - 1, True)
        level = [b - a for a, b in zip(level, level[1:])]
    return None, False
