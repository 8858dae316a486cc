"""Dense exact linear algebra over the coefficient fields.

Ranks over the rationals go through integer elimination on a
denominator-cleared copy with per-row gcd normalization, after a cheap
modular pre-pass that settles the frequent full-rank case outright; kernel
and solve computations use ordinary reduced row echelon form with exact
field division.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .fields import QQ, FpElement, PrimeField, RationalField


class Matrix:
    """Immutable-by-convention dense matrix over an exact field."""

    __slots__ = ("field", "nrows", "ncols", "a")

    def __init__(self, field, rows):
        self.field = field
        self.a = [[field(x) for x in row] for row in rows]
        self.nrows = len(self.a)
        self.ncols = len(self.a[0]) if self.a else 0
        for row in self.a:
            if len(row) != self.ncols:
                raise ValueError("ragged rows in matrix")

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, field, cols, nrows=None):
        if not cols:
            return cls.zeros(field, nrows or 0, 0)
        nrows = len(cols[0])
        return cls(field, [[cols[j][i] for j in range(len(cols))] for i in range(nrows)])

    def __getitem__(self, ij):
        return self.a[ij[0]][ij[1]]

    def row(self, i):
        return list(self.a[i])

    def column(self, j):
        return [self.a[i][j] for i in range(self.nrows)]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self):
        return Matrix(self.field, [self.column(j) for j in range(self.ncols)])

    def __add__(self, other):
        self._check_shape(other)
        return Matrix(self.field, [[a + b for a, b in zip(ra, rb)]
                                   for ra, rb in zip(self.a, other.a)])

    def __sub__(self, other):
        self._check_shape(other)
        return Matrix(self.field, [[a - b for a, b in zip(ra, rb)]
                                   for ra, rb in zip(self.a, other.a)])

    def __neg__(self):
        return Matrix(self.field, [[-x for x in row] for row in self.a])

    def scale(self, s):
        s = self.field(s)
        return Matrix(self.field, [[s * x for x in row] for row in self.a])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch in matrix product")
            z = self.field.zero
            out = []
            bt = other.transpose().a
            for ra in self.a:
                out.append([sum((x * y for x, y in zip(ra, rb)), z) for rb in bt])
            return Matrix(self.field, out)
        return self.scale(other)

    def apply(self, vec):
        z = self.field.zero
        return [sum((x * v for x, v in zip(row, vec)), z) for row in self.a]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.a == other.a)

    def __hash__(self):
        return hash(tuple(tuple(row) for row in self.a))

    def is_zero(self):
        z = self.field.zero
        return all(x == z for row in self.a for x in row)

    def _check_shape(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch")

    def map_field(self, field):
        return Matrix(field, [[field(x) for x in row] for row in self.a])

    def stack(self, other):
        if self.ncols != other.ncols:
            raise ValueError("shape mismatch in vertical stack")
        return Matrix(self.field, self.a + other.a)

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ValueError("shape mismatch in horizontal stack")
        return Matrix(self.field, [ra + rb for ra, rb in zip(self.a, other.a)])

    def rank(self):
        return rank(self)

    def kernel_basis(self):
        return kernel_basis(self)

    def is_invertible(self):
        return self.nrows == self.ncols and rank(self) == self.nrows

    def inverse(self):
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = [row + ident_row for row, ident_row in
               zip([list(r) for r in self.a], Matrix.identity(self.field, n).a)]
        piv = _rref_in_place(self.field, aug)
        if len(piv) != n:
            raise ValueError("matrix is singular")
        return Matrix(self.field, [row[n:] for row in aug])

    def __repr__(self):
        return "Matrix(%s, %dx%d)" % (self.field, self.nrows, self.ncols)


def _rref_in_place(field, rows):
    """Reduce ``rows`` to reduced row echelon form; returns pivot columns."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    zero = field.zero
    piv_cols = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c] != zero:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != zero:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
        if r == nrows:
            break
    return piv_cols


def _integer_rows(m):
    """Clear denominators row by row; only valid over QQ."""
    out = []
    for row in m.a:
        lcm = 1
        for x in row:
            d = x.denominator
            lcm = lcm // gcd(lcm, d) * d
        out.append([int(x * lcm) for x in row])
    return out


_RANK_PRIME = 2**31 - 1


def _mod_rank(rows, p):
    """Rank of an integer matrix reduced mod p (machine arithmetic)."""
    rows = [[x % p for x in row] for row in rows]
    rows = [row for row in rows if any(row)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], -1, p)
        rr = [x * inv % p for x in rows[r]]
        rows[r] = rr
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rr)]
        r += 1
        if r == len(rows):
            break
    return r


def _int_rank(rows):
    """Exact elimination rank of an integer matrix, gcd-normalized rows."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c] and (pr is None
                               or abs(rows[i][c]) < abs(rows[pr][c])):
                pr = i
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rr = rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                g = gcd(pv, f)
                a, b = pv // g, f // g
                new = [a * x - b * y for x, y in zip(rows[i], rr)]
                gg = 0
                for x in new:
                    gg = gcd(gg, x)
                    if gg == 1:
                        break
                rows[i] = new if gg <= 1 else [x // gg for x in new]
        r += 1
        if r == len(rows):
            break
    return r


def rank(m):
    """Exact rank over the matrix's field."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if isinstance(m.field, RationalField):
        rows = _integer_rows(m)
        # the modular rank is a lower bound; when it already reaches the
        # smaller dimension the exact rank is settled without big integers
        guess = _mod_rank(rows, _RANK_PRIME)
        if guess == min(m.nrows, m.ncols):
            return guess
        return _int_rank(rows)
    rows = [list(r) for r in m.a]
    return len(_rref_in_place(m.field, rows))


def kernel_basis(m):
    """Basis of the right null space, as a list of column vectors."""
    field = m.field
    if m.ncols == 0:
        return []
    if m.nrows == 0:
        return [ [field.one if i == j else field.zero for i in range(m.ncols)]
                 for j in range(m.ncols) ]
    rows = [list(r) for r in m.a]
    piv = _rref_in_place(field, rows)
    piv_set = set(piv)
    free = [c for c in range(m.ncols) if c not in piv_set]
    basis = []
    for fc in free:
        v = [field.zero] * m.ncols
        v[fc] = field.one
        for r, pc in enumerate(piv):
            v[pc] = -rows[r][fc]
        basis.append(v)
    return basis


def solve_affine(m, rhs):
    """All solutions of m x = rhs: (particular, kernel basis) or None."""
    field = m.field
    aug = [list(row) + [field(b)] for row, b in zip(m.a, rhs)]
    piv = _rref_in_place(field, aug)
    if m.ncols in piv:
        return None  # inconsistent: pivot in the rhs column
    x = [field.zero] * m.ncols
    for r, pc in enumerate(piv):
        x[pc] = aug[r][m.ncols]
    return x, kernel_basis(m)


class Subspace:
    """A subspace of field^n held as a reduced-echelon basis (canonical)."""

    __slots__ = ("field", "ambient_dim", "basis")

    def __init__(self, field, ambient_dim, vectors=()):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = []
        for v in vectors:
            self.add(v)

    @property
    def dim(self):
        return len(self.basis)

    def is_full(self):
        return self.dim == self.ambient_dim

    def is_zero(self):
        return self.dim == 0

    def _reduce(self, v):
        v = [self.field(x) for x in v]
        zero = self.field.zero
        for b in self.basis:
            lead = next(i for i, x in enumerate(b) if x != zero)
            if v[lead] != zero:
                f = v[lead]
                v = [x - f * y for x, y in zip(v, b)]
        return v

    def add(self, v):
        """Add a vector to the span; returns True if the dimension grew."""
        v = self._reduce(v)
        zero = self.field.zero
        lead = next((i for i, x in enumerate(v) if x != zero), None)
        if lead is None:
            return False
        inv = v[lead]
        v = [x / inv for x in v]
        for i, b in enumerate(self.basis):
            if b[lead] != zero:
                f = b[lead]
                self.basis[i] = [x - f * y for x, y in zip(b, v)]
        self.basis.append(v)
        self.basis.sort(key=lambda b: next(i for i, x in enumerate(b)
                                           if x != self.field.zero))
        return True

    def contains(self, v):
        zero = self.field.zero
        return all(x == zero for x in self._reduce(v))

    def contains_subspace(self, other):
        return all(self.contains(b) for b in other.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def copy(self):
        s = Subspace(self.field, self.ambient_dim)
        s.basis = [list(b) for b in self.basis]
        return s

    def annihilator_matrix(self):
        """Rows span the functionals vanishing on this subspace."""
        if not self.basis:
            return Matrix.identity(self.field, self.ambient_dim)
        b = Matrix(self.field, self.basis)  # dim x n
        ker = kernel_basis(b)  # vectors in field^n killed by every basis row
        if not ker:
            return Matrix.zeros(self.field, 0, self.ambient_dim)
        return Matrix(self.field, ker)

    def __repr__(self):
        return "Subspace(dim %d of %d)" % (self.dim, self.ambient_dim)


def random_invertible(field, n, rng, lo=-5, hi=5):
    for _ in range(1000):
        m = Matrix(field, [[field.random(rng, lo, hi) for _ in range(n)]
                           for _ in range(n)])
        if m.is_invertible():
            return m
    raise RuntimeError("failed to draw an invertible matrix")
