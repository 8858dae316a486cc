"""Homogeneous multivariate polynomials with graded-lex monomial bases.

Polynomials are sparse dicts from exponent tuples to field elements.  Every
graded computation (ideal dimensions in a fixed degree, matrices of maps
between graded pieces) goes through the deterministic monomial ordering
produced by :func:`monomials`, so column indices are reproducible.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from functools import lru_cache

from .fields import FieldError, QQ
from .linalg import Matrix, rank


class PolyError(Exception):
    pass


@lru_cache(maxsize=None)
def monomials(nvars, degree):
    """All exponent tuples of total degree ``degree``, graded-lex descending."""
    if degree < 0:
        return ()
    if nvars == 0:
        return ((),) if degree == 0 else ()
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, nvars)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars, degree):
    """Map exponent tuple -> position in the degree ``degree`` basis."""
    return {m: i for i, m in enumerate(monomials(nvars, degree))}


class Poly:
    """A polynomial over an exact field, keyed by exponent tuples."""

    __slots__ = ("field", "nvars", "coeffs")

    def __init__(self, field, nvars, coeffs=None):
        self.field = field
        self.nvars = nvars
        self.coeffs = {}
        if coeffs:
            zero = field.zero
            for mono, c in coeffs.items():
                c = field(c)
                if c != zero:
                    self.coeffs[tuple(mono)] = c

    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars)

    @classmethod
    def constant(cls, field, nvars, value):
        return cls(field, nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, field, nvars, index):
        mono = [0] * nvars
        mono[index] = 1
        return cls(field, nvars, {tuple(mono): field.one})

    def is_zero(self):
        return not self.coeffs

    def is_homogeneous(self):
        degs = {sum(m) for m in self.coeffs}
        return len(degs) <= 1

    def degree(self):
        """Total degree; the zero polynomial reports -1."""
        if not self.coeffs:
            return -1
        return max(sum(m) for m in self.coeffs)

    def _check(self, other):
        if self.nvars != other.nvars or self.field != other.field:
            raise PolyError("mixed polynomial rings")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.field, self.nvars, other)
        self._check(other)
        out = dict(self.coeffs)
        zero = self.field.zero
        for mono, c in other.coeffs.items():
            s = out.get(mono, zero) + c
            if s == zero:
                out.pop(mono, None)
            else:
                out[mono] = s
        return Poly(self.field, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, self.nvars,
                    {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.field, self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            s = self.field(other)
            return Poly(self.field, self.nvars,
                        {m: c * s for m, c in self.coeffs.items()})
        self._check(other)
        zero = self.field.zero
        out = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(mono, zero) + c1 * c2
                if s == zero:
                    out.pop(mono, None)
                else:
                    out[mono] = s
        return Poly(self.field, self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise PolyError("negative exponent")
        result = Poly.constant(self.field, self.nvars, self.field.one)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.nvars == other.nvars
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.coeffs.items())))

    def evaluate(self, point):
        """Value at a tuple of field elements."""
        if len(point) != self.nvars:
            raise PolyError("wrong number of coordinates")
        total = self.field.zero
        for mono, c in self.coeffs.items():
            term = c
            for x, e in zip(point, mono):
                for _ in range(e):
                    term = term * x
            total = total + term
        return total

    def substitute(self, values):
        """Partial substitution: values is a dict index -> field element."""
        out = Poly.zero(self.field, self.nvars)
        for mono, c in self.coeffs.items():
            term_c = c
            new_mono = list(mono)
            for idx, val in values.items():
                e = mono[idx]
                if e:
                    for _ in range(e):
                        term_c = term_c * val
                    new_mono[idx] = 0
            out = out + Poly(self.field, self.nvars, {tuple(new_mono): term_c})
        return out

    def coefficient_vector(self, degree):
        """Coefficients against the graded-lex basis of the given degree."""
        basis = monomials(self.nvars, degree)
        idx = monomial_index(self.nvars, degree)
        vec = [self.field.zero] * len(basis)
        for mono, c in self.coeffs.items():
            if sum(mono) != degree:
                raise PolyError("polynomial not homogeneous of degree %d" % degree)
            vec[idx[mono]] = c
        return vec

    def map_field(self, field):
        return Poly(field, self.nvars,
                    {m: field(c) for m, c in self.coeffs.items()})

    def render(self, var_names):
        if not self.coeffs:
            return "0"
        terms = []
        for mono in sorted(self.coeffs, key=lambda m: (sum(m), m), reverse=True):
            c = self.coeffs[mono]
            factors = []
            for name, e in zip(var_names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append("%s^%d" % (name, e))
            body = "*".join(factors)
            cr = str(self.field.render(c))
            if not body:
                terms.append(cr)
            elif cr == "1":
                terms.append(body)
            elif cr == "-1":
                terms.append("-" + body)
            else:
                terms.append("%s*%s" % (cr, body))
        text = terms[0]
        for t in terms[1:]:
            text += " - " + t[1:] if t.startswith("-") else " + " + t
        return text

    def __repr__(self):
        return "Poly(%d vars, %d terms)" % (self.nvars, len(self.coeffs))


def parse_poly(text, var_names, field):
    """Parse an expression over the given variables into a ``Poly``.

    Supports + - * ^ and parentheses; coefficients are integers or
    rationals written as p/q.
    """
    nvars = len(var_names)
    var_index = {name: i for i, name in enumerate(var_names)}
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise PolyError("cannot parse %r: %s" % (text, exc)) from None

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Div):
                num, den = walk(node.left), walk(node.right)
                if num.degree() > 0 or den.degree() != 0:
                    raise PolyError("division is only allowed between constants")
                dc = den.coeffs.get((0,) * nvars, field.zero)
                nc = num.coeffs.get((0,) * nvars, field.zero)
                return Poly.constant(field, nvars, nc / dc)
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Pow):
                if right.degree() != 0:
                    raise PolyError("exponent must be a constant")
                e = right.coeffs.get((0,) * nvars, field.zero)
                ei = _as_int(e)
                if ei is None or ei < 0:
                    raise PolyError("exponent must be a nonnegative integer")
                return left ** ei
            raise PolyError("unsupported operator in %r" % text)
        if isinstance(node, ast.UnaryOp):
            if isinstance(node.op, ast.USub):
                return -walk(node.operand)
            if isinstance(node.op, ast.UAdd):
                return walk(node.operand)
            raise PolyError("unsupported unary operator in %r" % text)
        if isinstance(node, ast.Name):
            if node.id not in var_index:
                raise PolyError("unknown variable %r (allowed: %s)"
                                % (node.id, ", ".join(var_names)))
            return Poly.variable(field, nvars, var_index[node.id])
        if isinstance(node, ast.Constant):
            if isinstance(node.value, int):
                return Poly.constant(field, nvars, node.value)
            raise PolyError("unsupported literal %r" % (node.value,))
        raise PolyError("unsupported syntax in %r" % text)

    return walk(tree)


def _as_int(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else None
    v = getattr(x, "v", None)
    return v


def graded_ideal_dim(generators, nvars, degree, field):
    """Dimension of the degree piece of the ideal the generators span."""
    rows = []
    for g in generators:
        gd = g.degree()
        if gd < 0 or gd > degree:
            continue
        for mono in monomials(nvars, degree - gd):
            shifted = Poly(field, nvars, {mono: field.one}) * g
            rows.append(shifted.coefficient_vector(degree))
    if not rows:
        return 0
    return rank(Matrix(field, rows))


def graded_piece_codim(generators, nvars, degree, field):
    """Dimension of the quotient ring in the given degree."""
    return len(monomials(nvars, degree)) - graded_ideal_dim(
        generators, nvars, degree, field)


def contains_in_degree(poly, generators, field):
    """Whether a homogeneous polynomial lies in the span of same-degree
    monomial multiples of the generators."""
    if poly.is_zero():
        return True
    if not poly.is_homogeneous():
        raise PolyError("membership test requires a homogeneous polynomial")
    d = poly.degree()
    base = graded_ideal_dim(generators, poly.nvars, d, field)
    extended = graded_ideal_dim(list(generators) + [poly], poly.nvars, d, field)
    return extended == base


def poly_matrix_graded_map(entries, src_degree, nvars, field):
    """Matrix of a map (free module) given by a matrix of homogeneous polys.

    ``entries`` is a list of lists of ``Poly``, all homogeneous of one
    degree e (zero entries allowed).  The result maps
    field^{ncols} (x) S_{src_degree} -> field^{nrows} (x) S_{src_degree+e},
    with basis ordering (block row, monomial) against graded-lex monomials.
    """
    nrows = len(entries)
    ncols = len(entries[0]) if nrows else 0
    e = -1
    for row in entries:
        for p in row:
            if not p.is_zero():
                if not p.is_homogeneous():
                    raise PolyError("map entries must be homogeneous")
                if e < 0:
                    e = p.degree()
                elif p.degree() != e:
                    raise PolyError("map entries must share one degree")
    if e < 0:
        e = 0
    src = monomials(nvars, src_degree)
    dst = monomials(nvars, src_degree + e)
    dst_idx = monomial_index(nvars, src_degree + e)
    zero = field.zero
    out = [[zero] * (ncols * len(src)) for _ in range(nrows * len(dst))]
    for bi in range(nrows):
        for bj in range(ncols):
            p = entries[bi][bj]
            if p.is_zero():
                continue
            for sj, mono in enumerate(src):
                col = bj * len(src) + sj
                for pm, c in p.coeffs.items():
                    target = tuple(a + b for a, b in zip(pm, mono))
                    out[bi * len(dst) + dst_idx[target]][col] = \
                        out[bi * len(dst) + dst_idx[target]][col] + c
    return Matrix(field, out)
