"""Graded Lie algebras with a differential, over exact rationals.

A finite-dimensional graded vector space carries a degree +1 differential
(one matrix per degree) and a bracket given by sparse structure constants.
Only one block per unordered degree pair is stored; the mirror block is
derived from the antisymmetry sign, which removes a whole class of
inconsistent inputs.  Diagonal blocks (p, p) are stored as given so the
axiom checker can actually catch antisymmetry violations there.

Axiom conventions, for x of degree |x|:
    [x, y] = (-1)^(|x||y|+1) [y, x]
    d[x, y] = [dx, y] + (-1)^|x| [x, dy]
    (-1)^(|x||z|) [x,[y,z]] + (-1)^(|y||x|) [y,[z,x]] + (-1)^(|z||y|) [z,[x,y]] = 0
"""

from fractions import Fraction

from .errors import DimensionMismatch, InvalidSplitting, InvariantViolation, NotAnAutomorphism
from .linalg import DenseMatrix, Subspace, complement, projection_matrix, to_scalar


class GradedVectorSpace:
    """Finite-dimensional graded vector space; degrees not stored have dim 0."""

    def __init__(self, dims, labels=None):
        self.dims = {int(n): int(d) for n, d in dims.items() if int(d) != 0}
        for n, d in self.dims.items():
            if d < 0:
                raise DimensionMismatch("negative dimension %d in degree %d" % (d, n))
        self.labels = {}
        if labels:
            for n, names in labels.items():
                n = int(n)
                if self.dim(n) != len(names):
                    raise DimensionMismatch("degree %d has %d labels for dim %d"
                                            % (n, len(names), self.dim(n)))
                self.labels[n] = list(names)

    def dim(self, n):
        return self.dims.get(n, 0)

    def degrees(self):
        return sorted(self.dims)

    def total_dim(self):
        return sum(self.dims.values())

    def label(self, n, i):
        if n in self.labels:
            return self.labels[n][i]
        return "e%d_%d" % (n, i)


def _antisym_sign(p, q):
    return Fraction(-1) ** (p * q + 1)


class DgLieAlgebra:
    """Structure-constant model of a graded Lie algebra with differential.

    differential: {degree i: matrix of shape dim(i+1) x dim(i)}
    bracket entries: iterable of (p, q, i, j, k, value) meaning
    [e_i^p, e_j^q] has coefficient value on e_k^(p+q).  Entries with p > q
    are folded into the (q, p) block via the antisymmetry sign.  Instances
    are immutable by convention; derived tables are cached.
    """

    def __init__(self, space, differential=None, bracket_entries=()):
        self.space = space
        self.differential = {}
        for n, mat in (differential or {}).items():
            n = int(n)
            if not isinstance(mat, DenseMatrix):
                mat = DenseMatrix(mat, ncols=space.dim(n))
            if mat.nrows != space.dim(n + 1) or mat.ncols != space.dim(n):
                raise DimensionMismatch(
                    "differential at degree %d has shape %dx%d, expected %dx%d"
                    % (n, mat.nrows, mat.ncols, space.dim(n + 1), space.dim(n)))
            if not mat.is_zero():
                self.differential[n] = mat
        self.blocks = {}
        for p, q, i, j, k, value in bracket_entries:
            p, q, i, j, k = int(p), int(q), int(i), int(j), int(k)
            value = to_scalar(value)
            if p > q:
                p, q, i, j = q, p, j, i
                value = value * _antisym_sign(p, q)
            if not (0 <= i < space.dim(p) and 0 <= j < space.dim(q)
                    and 0 <= k < space.dim(p + q)):
                raise ValueError("bracket entry (%d,%d,%d,%d,%d) out of range"
                                 % (p, q, i, j, k))
            block = self.blocks.setdefault((p, q), {})
            if (i, j, k) in block:
                raise ValueError("duplicate structure constant at (%d,%d,%d,%d,%d)"
                                 % (p, q, i, j, k))
            if value != 0:
                block[(i, j, k)] = value
        self._tables = {}

    def d_matrix(self, n):
        if n in self.differential:
            return self.differential[n]
        return DenseMatrix.zero(self.space.dim(n + 1), self.space.dim(n))

    def block(self, p, q):
        """Structure constants for [L^p, L^q], derived if p > q."""
        if p <= q:
            return self.blocks.get((p, q), {})
        sign = _antisym_sign(q, p)
        return {(i, j, k): sign * v
                for (j, i, k), v in self.blocks.get((q, p), {}).items()}

    def stored_blocks(self):
        return dict(self.blocks)

    def pair_table(self, p, q):
        """The (p, q) block as {(i, j): {k: value}}; cached."""
        key = (p, q)
        if key not in self._tables:
            table = {}
            for (i, j, k), v in self.block(p, q).items():
                table.setdefault((i, j), {})[k] = v
            self._tables[key] = table
        return self._tables[key]

    def bracket_basis(self, p, i, q, j):
        """[e_i^p, e_j^q] as a coefficient vector in L^(p+q)."""
        out = [Fraction(0)] * self.space.dim(p + q)
        for k, v in self.pair_table(p, q).get((i, j), {}).items():
            out[k] += v
        return out

    def bracket_vectors(self, p, x, q, y):
        """Bracket of coefficient vectors x in L^p and y in L^q."""
        if len(x) != self.space.dim(p) or len(y) != self.space.dim(q):
            raise DimensionMismatch("bracket operand length mismatch")
        out = [Fraction(0)] * self.space.dim(p + q)
        for (i, j), kv in self.pair_table(p, q).items():
            c = x[i] * y[j]
            if c != 0:
                for k, v in kv.items():
                    out[k] += v * c
        return out

    def bracket_is_zero_block(self, p, q):
        return not self.block(p, q)


class AxiomCheck:
    def __init__(self, name, ok, witness=None):
        self.name = name
        self.ok = ok
        self.witness = witness

    def to_dict(self):
        d = {"axiom": self.name, "ok": self.ok}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


class AxiomReport:
    def __init__(self, checks):
        self.checks = checks

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {"ok": self.ok, "checks": [c.to_dict() for c in self.checks]}


def check_dgla_axioms(l):
    """Verify d^2 = 0, antisymmetry, the Leibniz rule and graded Jacobi.

    Returns an AxiomReport; each failed axiom carries a witnessing basis
    tuple.  All four identities are evaluated on sparse structure-constant
    tables, so the cost scales with the number of nonzero constants rather
    than with dim^3.  Antisymmetry only needs checking on diagonal blocks
    because off-diagonal mirrors are derived, never stored.
    """
    sp = l.space
    degs = sp.degrees()
    checks = []

    dcols = {}
    for n, mat in l.differential.items():
        dcols[n] = [{i: mat.rows[i][j] for i in range(mat.nrows) if mat.rows[i][j] != 0}
                    for j in range(mat.ncols)]

    def dcol(n, j):
        return dcols[n][j] if n in dcols else {}

    witness = None
    for n in sorted(dcols):
        for j, col in enumerate(dcols[n]):
            acc = {}
            for a, v in col.items():
                for t, u in dcol(n + 1, a).items():
                    acc[t] = acc.get(t, Fraction(0)) + v * u
            if any(x != 0 for x in acc.values()):
                witness = "d(d(%s)) != 0" % sp.label(n, j)
                break
        if witness:
            break
    checks.append(AxiomCheck("d_squared", witness is None, witness))

    witness = None
    for (p, q), block in sorted(l.stored_blocks().items()):
        if p != q:
            continue
        sign = _antisym_sign(p, p)
        keys = set(block) | {(j, i, k) for (i, j, k) in block}
        for (i, j, k) in sorted(keys):
            if block.get((j, i, k), Fraction(0)) != sign * block.get((i, j, k), Fraction(0)):
                witness = "[%s, %s] vs [%s, %s] on %s" % (
                    sp.label(p, j), sp.label(p, i), sp.label(p, i), sp.label(p, j),
                    sp.label(2 * p, k))
                break
        if witness:
            break
    checks.append(AxiomCheck("antisymmetry", witness is None, witness))

    witness = None
    for p in degs:
        if witness:
            break
        for q in degs:
            if witness:
                break
            if p not in dcols and q not in dcols and (p + q) not in dcols:
                continue
            tpq = l.pair_table(p, q)
            tp1 = l.pair_table(p + 1, q)
            tq1 = l.pair_table(p, q + 1)
            if not tpq and not tp1 and not tq1:
                continue
            sign = Fraction(-1) ** p
            for i in range(sp.dim(p)):
                if witness:
                    break
                di = dcol(p, i)
                for j in range(sp.dim(q)):
                    acc = {}
                    for k, v in tpq.get((i, j), {}).items():
                        for t, u in dcol(p + q, k).items():
                            acc[t] = acc.get(t, Fraction(0)) + v * u
                    for a, u in di.items():
                        for t, w in tp1.get((a, j), {}).items():
                            acc[t] = acc.get(t, Fraction(0)) - u * w
                    for b, u in dcol(q, j).items():
                        for t, w in tq1.get((i, b), {}).items():
                            acc[t] = acc.get(t, Fraction(0)) - sign * u * w
                    if any(x != 0 for x in acc.values()):
                        witness = "d[%s, %s] != [d%s, %s] + (-1)^%d [%s, d%s]" % (
                            sp.label(p, i), sp.label(q, j), sp.label(p, i),
                            sp.label(q, j), p % 2, sp.label(p, i), sp.label(q, j))
                        break
    checks.append(AxiomCheck("leibniz", witness is None, witness))

    bysec_cache = {}

    def bysec(p, q):
        # outer-bracket table indexed by the inner (second) argument
        if (p, q) not in bysec_cache:
            out = {}
            for (i, m), kv in l.pair_table(p, q).items():
                out.setdefault(m, []).append((i, kv))
            bysec_cache[(p, q)] = out
        return bysec_cache[(p, q)]

    witness = None
    for p in degs:
        if witness:
            break
        for q in degs:
            if witness:
                break
            for r in degs:
                if witness:
                    break
                work1 = l.pair_table(q, r) and l.pair_table(p, q + r)
                work2 = l.pair_table(r, p) and l.pair_table(q, r + p)
                work3 = l.pair_table(p, q) and l.pair_table(r, p + q)
                if not (work1 or work2 or work3):
                    continue
                acc = {}

                def add(key, t, val):
                    row = acc.setdefault(key, {})
                    row[t] = row.get(t, Fraction(0)) + val

                if work1:
                    s1 = Fraction(-1) ** (p * r)
                    outer = bysec(p, q + r)
                    for (j, k), kv in l.pair_table(q, r).items():
                        for m, v in kv.items():
                            for i, tv in outer.get(m, ()):
                                for t, u in tv.items():
                                    add((i, j, k), t, s1 * v * u)
                if work2:
                    s2 = Fraction(-1) ** (q * p)
                    outer = bysec(q, r + p)
                    for (k, i), kv in l.pair_table(r, p).items():
                        for m, v in kv.items():
                            for j, tv in outer.get(m, ()):
                                for t, u in tv.items():
                                    add((i, j, k), t, s2 * v * u)
                if work3:
                    s3 = Fraction(-1) ** (r * q)
                    outer = bysec(r, p + q)
                    for (i, j), kv in l.pair_table(p, q).items():
                        for m, v in kv.items():
                            for k, tv in outer.get(m, ()):
                                for t, u in tv.items():
                                    add((i, j, k), t, s3 * v * u)
                for key in sorted(acc):
                    if any(x != 0 for x in acc[key].values()):
                        i, j, k = key
                        witness = "jacobiator(%s, %s, %s) != 0" % (
                            sp.label(p, i), sp.label(q, j), sp.label(r, k))
                        break
    checks.append(AxiomCheck("jacobi", witness is None, witness))

    return AxiomReport(checks)


class CohomologyReport:
    def __init__(self, dims, representatives):
        self.dims = dims
        self.representatives = representatives

    def dim(self, n):
        return self.dims.get(n, 0)

    def euler_characteristic(self):
        return sum((-1) ** n * d for n, d in self.dims.items())

    def to_dict(self):
        return {
            "dims": {str(n): self.dims[n] for n in sorted(self.dims)},
            "euler_characteristic": self.euler_characteristic(),
        }


def _require_complex(l):
    for n in l.space.degrees():
        if not (l.d_matrix(n + 1) * l.d_matrix(n)).is_zero():
            raise InvariantViolation("differential does not square to zero at degree %d" % n)


def cohomology(l):
    """Cohomology dimensions and canonical representative cycles per degree."""
    _require_complex(l)
    dims = {}
    reps = {}
    for n in l.space.degrees():
        z = Subspace(l.space.dim(n), l.d_matrix(n).kernel_basis())
        dm = l.d_matrix(n - 1)
        b = Subspace(l.space.dim(n), [dm.column(j) for j in range(dm.ncols)])
        h = complement(b, z)
        dims[n] = h.dim
        reps[n] = [list(v) for v in h.basis]
    return CohomologyReport(dims, reps)


class GroupAction:
    """A finite group acting degreewise on a graded space.

    generators: list of {degree: matrix}; degrees missing from a generator
    act as the identity.  relations are informational; the real certificate
    is closure enumeration, which must produce exactly group_order elements.
    """

    def __init__(self, group_order, generators, relations=None):
        self.group_order = int(group_order)
        if self.group_order < 1:
            raise InvariantViolation("group order must be positive")
        self.generators = []
        for gen in generators:
            self.generators.append({int(n): (m if isinstance(m, DenseMatrix) else DenseMatrix(m))
                                    for n, m in gen.items()})
        self.relations = list(relations or [])
        self._elements_cache = {}

    def generator_matrix(self, gen, degree, dim):
        m = gen.get(degree)
        if m is None:
            return DenseMatrix.identity(dim)
        if m.nrows != dim or m.ncols != dim:
            raise DimensionMismatch("generator at degree %d has shape %dx%d, expected %d"
                                    % (degree, m.nrows, m.ncols, dim))
        return m

    def elements(self, space):
        """All group elements as {degree: matrix}, by closure enumeration."""
        key = tuple(sorted(space.dims.items()))
        if key in self._elements_cache:
            return self._elements_cache[key]
        degs = space.degrees()

        def freeze(elem):
            return tuple(tuple(tuple(row) for row in elem[n].rows) for n in degs)

        identity = {n: DenseMatrix.identity(space.dim(n)) for n in degs}
        gens = [{n: self.generator_matrix(g, n, space.dim(n)) for n in degs}
                for g in self.generators]
        seen = {freeze(identity): identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for elem in frontier:
                for g in gens:
                    prod = {n: g[n] * elem[n] for n in degs}
                    k = freeze(prod)
                    if k not in seen:
                        if len(seen) >= self.group_order:
                            raise InvariantViolation(
                                "group closure exceeds declared order %d" % self.group_order)
                        seen[k] = prod
                        nxt.append(prod)
            frontier = nxt
        if len(seen) != self.group_order:
            raise InvariantViolation("group closure has %d elements, declared %d"
                                     % (len(seen), self.group_order))
        elements = [seen[k] for k in sorted(seen)]
        self._elements_cache[key] = elements
        return elements

    def validate_on(self, l):
        """Check each generator is an automorphism of l (commutes with d and bracket)."""
        sp = l.space
        for gi, gen in enumerate(self.generators):
            mats = {n: self.generator_matrix(gen, n, sp.dim(n)) for n in sp.degrees()}
            for n in sp.degrees():
                if sp.dim(n) and mats[n].rank() != sp.dim(n):
                    raise NotAnAutomorphism("generator %d is singular at degree %d" % (gi, n))
            for n in sp.degrees():
                lhs = l.d_matrix(n) * mats[n]
                rho_next = mats.get(n + 1, DenseMatrix.identity(sp.dim(n + 1)))
                rhs = rho_next * l.d_matrix(n)
                if lhs != rhs:
                    raise NotAnAutomorphism(
                        "generator %d does not commute with d at degree %d" % (gi, n))
            for p in sp.degrees():
                for q in sp.degrees():
                    if l.bracket_is_zero_block(p, q):
                        continue
                    rho_t = mats.get(p + q)
                    if rho_t is None:
                        rho_t = DenseMatrix.identity(sp.dim(p + q))
                    for i in range(sp.dim(p)):
                        gi_vec = mats[p].column(i)
                        for j in range(sp.dim(q)):
                            lhs = rho_t.apply(l.bracket_basis(p, i, q, j))
                            rhs = l.bracket_vectors(p, gi_vec, q, mats[q].column(j))
                            if lhs != rhs:
                                raise NotAnAutomorphism(
                                    "generator %d breaks the bracket on (%s, %s)"
                                    % (gi, sp.label(p, i), sp.label(q, j)))


def reynolds_project(l, action, degree):
    """The averaging projector (1/|G|) sum_g rho_g at the given degree."""
    dim = l.space.dim(degree)
    total = DenseMatrix.zero(dim, dim)
    elements = action.elements(l.space)
    for elem in elements:
        total = total + elem.get(degree, DenseMatrix.identity(dim))
    return total.scale(Fraction(1, len(elements)))


class Splitting:
    """Per-degree decomposition L^n = B^n + H^n + K^n.

    B is the boundary space, H a chosen complement of B inside the cycles,
    K a chosen complement of the cycles; d maps K^n isomorphically onto
    B^(n+1).
    """

    def __init__(self, boundary, harmonic, horizontal):
        self.boundary = dict(boundary)
        self.harmonic = dict(harmonic)
        self.horizontal = dict(horizontal)
        self._decomp_cache = {}

    def degrees(self):
        return sorted(set(self.boundary) | set(self.harmonic) | set(self.horizontal))

    def B(self, n):
        return self.boundary.get(n)

    def H(self, n):
        return self.harmonic.get(n)

    def K(self, n):
        return self.horizontal.get(n)

    def _part(self, store, n, dim):
        sub = store.get(n)
        return sub if sub is not None else Subspace.zero(dim)

    def validate(self, l, action=None):
        sp = l.space
        for n in sp.degrees():
            dim = sp.dim(n)
            b = self._part(self.boundary, n, dim)
            h = self._part(self.harmonic, n, dim)
            k = self._part(self.horizontal, n, dim)
            if b.ambient_dim != dim or h.ambient_dim != dim or k.ambient_dim != dim:
                raise InvalidSplitting("ambient dimension mismatch at degree %d" % n)
            if b.dim + h.dim + k.dim != dim:
                raise InvalidSplitting("parts at degree %d do not fill L^%d" % (n, n))
            if b.sum_with(h).sum_with(k).dim != dim:
                raise InvalidSplitting("parts at degree %d are not independent" % n)
            d = l.d_matrix(n)
            for v in b.basis:
                if any(x != 0 for x in d.apply(v)):
                    raise InvalidSplitting("boundary part at degree %d is not closed" % n)
            for v in h.basis:
                if any(x != 0 for x in d.apply(v)):
                    raise InvalidSplitting("harmonic part at degree %d is not closed" % n)
            img = Subspace(sp.dim(n + 1), [d.apply(v) for v in k.basis])
            if img.dim != k.dim:
                raise InvalidSplitting("d is not injective on K at degree %d" % n)
            bnext = self._part(self.boundary, n + 1, sp.dim(n + 1))
            if img.basis != bnext.basis:
                raise InvalidSplitting("d(K^%d) is not B^%d" % (n, n + 1))
        if action is not None:
            for elem in action.elements(l.space):
                for n in sp.degrees():
                    rho = elem.get(n, DenseMatrix.identity(sp.dim(n)))
                    for store, tag in ((self.boundary, "B"), (self.harmonic, "H"),
                                       (self.horizontal, "K")):
                        sub = self._part(store, n, sp.dim(n))
                        for v in sub.basis:
                            if not sub.contains(rho.apply(v)):
                                raise InvalidSplitting(
                                    "%s^%d is not invariant under the action" % (tag, n))

    def harmonic_projector(self, l, n):
        """Projector L^n -> L^n onto H along B + K."""
        dim = l.space.dim(n)
        h = self._part(self.harmonic, n, dim)
        rest = self._part(self.boundary, n, dim).sum_with(self._part(self.horizontal, n, dim))
        return projection_matrix(h, rest)

    def harmonic_coords_matrix(self, l, n):
        """Matrix sending v in L^n to its coordinates in the stored H basis."""
        if ("hc", n) not in self._decomp_cache:
            dim = l.space.dim(n)
            h = self._part(self.harmonic, n, dim)
            b = self._part(self.boundary, n, dim)
            k = self._part(self.horizontal, n, dim)
            cols = ([list(v) for v in h.basis] + [list(v) for v in b.basis]
                    + [list(v) for v in k.basis])
            change = DenseMatrix.from_columns(cols, nrows=dim)
            if change.ncols != dim:
                raise InvalidSplitting("splitting at degree %d does not span" % n)
            inv = change.inverse() if dim else DenseMatrix.zero(0, 0)
            self._decomp_cache[("hc", n)] = DenseMatrix(inv.rows[:h.dim], ncols=dim)
        return self._decomp_cache[("hc", n)]


def build_splitting(l, action=None):
    """Choose a splitting of l, equivariantly when an action is supplied.

    Order of operations per degree: compute cycles and boundaries, then a
    complement of B in Z, then a complement of Z in L.  With an action the
    complements come from group-averaged projectors, so H and K are
    invariant under every group element.
    """
    _require_complex(l)
    if action is not None:
        action.validate_on(l)
        elements = action.elements(l.space)
    boundary, harmonic, horizontal = {}, {}, {}
    sp = l.space
    for n in sp.degrees():
        dim = sp.dim(n)
        z = Subspace(dim, l.d_matrix(n).kernel_basis())
        dm = l.d_matrix(n - 1)
        b = Subspace(dim, [dm.column(j) for j in range(dm.ncols)])
        if not z.contains_subspace(b):
            raise InvariantViolation("boundaries are not cycles at degree %d" % n)
        h0 = complement(b, z)
        k0 = complement(z, Subspace.full(dim))
        if action is None:
            h, k = h0, k0
        else:
            h = complement(b, z, averager=_averaged_projector(b, h0.sum_with(k0), elements, n, dim))
            k = complement(z, Subspace.full(dim),
                           averager=_averaged_projector(z, k0, elements, n, dim))
        boundary[n] = b
        harmonic[n] = h
        horizontal[n] = k
    return Splitting(boundary, harmonic, horizontal)


def _averaged_projector(target, along, elements, degree, dim):
    if dim == 0:
        return DenseMatrix.zero(0, 0)
    p0 = projection_matrix(target, along)
    total = DenseMatrix.zero(dim, dim)
    for elem in elements:
        rho = elem.get(degree, DenseMatrix.identity(dim))
        total = total + rho * p0 * rho.inverse()
    return total.scale(Fraction(1, len(elements)))
