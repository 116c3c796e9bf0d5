"""Exact rational linear algebra.

Dense matrices over Fraction and subspaces kept in reduced row echelon
form.  RREF bases are the canonical representatives everywhere: two
subspaces are equal iff their stored bases are identical, so no
basis-dependence leaks into callers and every computation is
deterministic.  Intended scale is a few hundred dimensions, dense and
unoptimized on purpose.
"""

from fractions import Fraction

from .errors import BadProjector, DimensionMismatch, NotASubspace

# The scalar type: arbitrary-precision rationals, numerator/denominator
# always in lowest terms.  Fraction already guarantees that.
Scalar = Fraction


def to_scalar(x):
    """Coerce int, str ("p/q") or Fraction to Scalar."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError("cannot interpret %r as a rational scalar" % (x,))


def scalar_str(x):
    """Canonical string form, "p/q" or plain "p" when q == 1."""
    return str(Fraction(x))


class DenseMatrix:
    """Immutable-by-convention dense matrix over Fraction."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols=None):
        self.rows = [[to_scalar(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            for row in self.rows:
                if len(row) != self.ncols:
                    raise DimensionMismatch("ragged matrix rows")
        else:
            self.ncols = 0 if ncols is None else ncols

    @classmethod
    def zero(cls, nrows, ncols):
        return cls([[Fraction(0)] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def identity(cls, n):
        return cls([[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def from_columns(cls, columns, nrows=None):
        if not columns:
            return cls.zero(nrows or 0, 0)
        nrows = len(columns[0])
        return cls([[columns[j][i] for j in range(len(columns))] for i in range(nrows)])

    def column(self, j):
        return [row[j] for row in self.rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def entry(self, i, j):
        return self.rows[i][j]

    def transpose(self):
        return DenseMatrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
                           ncols=self.nrows)

    def __eq__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self.rows == other.rows

    def __add__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch("matrix addition shape mismatch")
        return DenseMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
                           ncols=self.ncols)

    def __sub__(self, other):
        return self + other.scale(Fraction(-1))

    def __neg__(self):
        return self.scale(Fraction(-1))

    def scale(self, c):
        c = to_scalar(c)
        return DenseMatrix([[c * x for x in row] for row in self.rows], ncols=self.ncols)

    def __mul__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionMismatch("matrix product shape mismatch: %dx%d by %dx%d"
                                    % (self.nrows, self.ncols, other.nrows, other.ncols))
        out = []
        bt = other.transpose().rows
        for row in self.rows:
            out.append([sum(a * b for a, b in zip(row, col)) for col in bt])
        return DenseMatrix(out, ncols=other.ncols)

    def apply(self, vec):
        """Matrix times column vector (a plain list)."""
        if len(vec) != self.ncols:
            raise DimensionMismatch("vector length %d, expected %d" % (len(vec), self.ncols))
        vec = [to_scalar(x) for x in vec]
        return [sum(a * b for a, b in zip(row, vec)) for row in self.rows]

    def is_zero(self):
        return all(x == 0 for row in self.rows for x in row)

    def rref(self):
        """Return (rref matrix, pivot column list)."""
        rows = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            pr = None
            for i in range(r, self.nrows):
                if rows[i][c] != 0:
                    pr = i
                    break
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            inv = Fraction(1) / rows[r][c]
            rows[r] = [x * inv for x in rows[r]]
            for i in range(self.nrows):
                if i != r and rows[i][c] != 0:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return DenseMatrix(rows, ncols=self.ncols), pivots

    def rank(self):
        return len(self.rref()[1])

    def kernel_basis(self):
        """Basis of the right kernel, canonical with respect to RREF."""
        red, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        for fc in free:
            v = [Fraction(0)] * self.ncols
            v[fc] = Fraction(1)
            for r, pc in enumerate(pivots):
                v[pc] = -red.rows[r][fc]
            basis.append(v)
        return basis

    def solve(self, b):
        """One solution of self * x = b, or None if inconsistent."""
        if len(b) != self.nrows:
            raise DimensionMismatch("rhs length %d, expected %d" % (len(b), self.nrows))
        aug = DenseMatrix([list(row) + [to_scalar(x)] for row, x in zip(self.rows, b)]
                          if self.nrows else [], ncols=self.ncols + 1)
        red, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        x = [Fraction(0)] * self.ncols
        for r, pc in enumerate(pivots):
            x[pc] = red.rows[r][self.ncols]
        return x

    def inverse(self):
        if self.nrows != self.ncols:
            raise DimensionMismatch("only square matrices invert")
        n = self.nrows
        aug = DenseMatrix([list(self.rows[i]) + [Fraction(1 if i == j else 0) for j in range(n)]
                           for i in range(n)], ncols=2 * n)
        red, pivots = aug.rref()
        if pivots != list(range(n)):
            raise DimensionMismatch("matrix is singular")
        return DenseMatrix([row[n:] for row in red.rows], ncols=n)

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise DimensionMismatch("hstack row mismatch")
        return DenseMatrix([r1 + r2 for r1, r2 in zip(self.rows, other.rows)],
                           ncols=self.ncols + other.ncols)

    def __repr__(self):
        return "DenseMatrix(%r)" % ([[str(x) for x in row] for row in self.rows],)


class Subspace:
    """A linear subspace of Q^n, stored as the RREF basis of its span.

    The stored basis is canonical: subspaces are equal iff the stored rows
    coincide.  Construction from any spanning set reduces to that form.
    """

    __slots__ = ("ambient_dim", "basis", "_pivots")

    def __init__(self, ambient_dim, vectors=()):
        self.ambient_dim = ambient_dim
        mat = DenseMatrix([[to_scalar(x) for x in v] for v in vectors], ncols=ambient_dim)
        if mat.ncols != ambient_dim:
            raise DimensionMismatch("vectors of length %d in ambient of dim %d"
                                    % (mat.ncols, ambient_dim))
        red, pivots = mat.rref()
        self.basis = [red.rows[r] for r in range(len(pivots))]
        self._pivots = pivots

    @classmethod
    def zero(cls, ambient_dim):
        return cls(ambient_dim, [])

    @classmethod
    def full(cls, ambient_dim):
        return cls(ambient_dim, DenseMatrix.identity(ambient_dim).rows)

    @property
    def dim(self):
        return len(self.basis)

    @property
    def pivots(self):
        """Pivot columns of the stored RREF basis."""
        return list(self._pivots)

    def reduce(self, vec):
        """Normal form of vec modulo the subspace (zero iff contained)."""
        if len(vec) != self.ambient_dim:
            raise DimensionMismatch("vector length %d in ambient of dim %d"
                                    % (len(vec), self.ambient_dim))
        v = [to_scalar(x) for x in vec]
        for row, pc in zip(self.basis, self._pivots):
            if v[pc] != 0:
                f = v[pc]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, vec):
        return all(x == 0 for x in self.reduce(vec))

    def contains_subspace(self, other):
        self._check_ambient(other)
        return all(self.contains(v) for v in other.basis)

    def coords(self, vec):
        """Coordinates of vec in the stored basis, or None if outside."""
        if not self.contains(vec):
            return None
        # pivot columns of an RREF basis read coordinates off directly
        return [to_scalar(vec[pc]) for pc in self._pivots]

    def sum_with(self, other):
        self._check_ambient(other)
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def intersection(self, other):
        self._check_ambient(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim)
        a = DenseMatrix(self.basis, ncols=self.ambient_dim).transpose()
        b = DenseMatrix(other.basis, ncols=self.ambient_dim).transpose()
        stacked = a.hstack(b.scale(Fraction(-1)))
        vectors = []
        for k in stacked.kernel_basis():
            alpha = k[: self.dim]
            vectors.append([sum(alpha[j] * self.basis[j][i] for j in range(self.dim))
                            for i in range(self.ambient_dim)])
        return Subspace(self.ambient_dim, vectors)

    def basis_matrix(self):
        """Basis vectors as columns of a matrix (ambient_dim x dim)."""
        return DenseMatrix(self.basis, ncols=self.ambient_dim).transpose()

    def _check_ambient(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient dims differ: %d vs %d"
                                    % (self.ambient_dim, other.ambient_dim))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __repr__(self):
        return "Subspace(dim=%d of Q^%d)" % (self.dim, self.ambient_dim)


def kernel_image(m):
    """Kernel and image of a matrix, both as canonical subspaces.

    The kernel lives in Q^ncols, the image in Q^nrows, and
    dim ker + dim im == ncols.
    """
    ker = Subspace(m.ncols, m.kernel_basis())
    im = Subspace(m.nrows, [m.column(j) for j in range(m.ncols)])
    return ker, im


def subspace_equal(a, b):
    """Exact subspace equality; raises DimensionMismatch on different ambients."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("cannot compare subspaces of Q^%d and Q^%d"
                                % (a.ambient_dim, b.ambient_dim))
    return a.basis == b.basis


def complement(w, inside, averager=None):
    """A complement c with w + c = inside and w intersect c = 0.

    Without an averager the complement extends w's echelon basis by basis
    vectors of `inside` (deterministic).  With an averager, which must be an
    idempotent matrix on the ambient space fixing w pointwise and mapping
    `inside` onto w, the complement is ker(averager) intersected with
    `inside`; if the averager commutes with a group action the result is
    invariant under that action.
    """
    if w.ambient_dim != inside.ambient_dim:
        raise DimensionMismatch("subspace ambients differ")
    if not inside.contains_subspace(w):
        raise NotASubspace("first argument is not contained in the second")
    if averager is None:
        chosen = list(w.basis)
        current = Subspace(w.ambient_dim, chosen)
        added = []
        for v in inside.basis:
            if not current.contains(v):
                added.append(v)
                chosen.append(v)
                current = Subspace(w.ambient_dim, chosen)
        return Subspace(w.ambient_dim, added)

    if averager.nrows != w.ambient_dim or averager.ncols != w.ambient_dim:
        raise DimensionMismatch("averager must be square on the ambient space")
    for v in inside.basis:
        av = averager.apply(v)
        if averager.apply(av) != av:
            raise BadProjector("averager is not idempotent on the given space")
        if not w.contains(av):
            raise BadProjector("averager does not map the space into the subspace")
    for v in w.basis:
        if averager.apply(v) != v:
            raise BadProjector("averager does not fix the subspace pointwise")
    ker = Subspace(w.ambient_dim, averager.kernel_basis())
    c = ker.intersection(inside)
    if c.dim + w.dim != inside.dim or c.intersection(w).dim != 0:
        raise BadProjector("averager kernel does not complement the subspace")
    return c


def projection_matrix(onto, along):
    """The projector with image `onto` and kernel `along`.

    Requires onto + along to be the full ambient space (direct sum).
    """
    if onto.ambient_dim != along.ambient_dim:
        raise DimensionMismatch("subspace ambients differ")
    n = onto.ambient_dim
    if onto.dim + along.dim != n or onto.intersection(along).dim != 0:
        raise NotASubspace("subspaces do not decompose the ambient space")
    cols = [list(v) for v in onto.basis] + [list(v) for v in along.basis]
    basis_change = DenseMatrix.from_columns(cols, nrows=n)
    inv = basis_change.inverse()
    # keep the 'onto' coordinates, kill the rest, map back
    keep = DenseMatrix([[Fraction(1 if i == j and i < onto.dim else 0) for j in range(n)]
                        for i in range(n)], ncols=n)
    return basis_change * keep * inv
