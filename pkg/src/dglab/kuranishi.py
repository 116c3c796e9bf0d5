"""Deformation machinery over truncated polynomial rings.

The ring is Q[x_1..x_m] modulo all monomials of total degree > N, with one
variable per harmonic basis vector of H^1.  Monomials are ordered by
(total degree, exponent tuple), which fixes every basis and report.

delta is the partial inverse of d cut out by a splitting; phi_inverse runs
the fixed-point iteration y <- x - (1/2) delta [y, y], which gains one
m-adic order per step and therefore stabilizes within N iterations.
"""

import math
from fractions import Fraction

from .dgla import GradedVectorSpace
from .errors import (DimensionMismatch, InvalidSplitting, InvariantViolation, NoAction)
from .linalg import DenseMatrix, Subspace, projection_matrix, scalar_str, to_scalar


def _exponents(nvars, max_total):
    if nvars == 0:
        yield ()
        return
    for e0 in range(max_total + 1):
        for rest in _exponents(nvars - 1, max_total - e0):
            yield (e0,) + rest


class TruncatedRing:
    """Q[x_1..x_m] / m^(N+1), optionally with a finite group acting on the
    variable span."""

    def __init__(self, num_vars, order, names=None, action=None):
        if order < 1:
            raise InvariantViolation("truncation order must be >= 1")
        if names is None:
            names = ["x%d" % (i + 1) for i in range(num_vars)]
        if len(names) != num_vars:
            raise DimensionMismatch("%d names for %d variables" % (len(names), num_vars))
        self.names = list(names)
        self.order = order
        self.action = action
        self._monomials = sorted(_exponents(num_vars, order), key=lambda e: (sum(e), e))
        self._index = {e: i for i, e in enumerate(self._monomials)}

    @property
    def num_vars(self):
        return len(self.names)

    def compatible(self, other):
        return self.names == other.names and self.order == other.order

    def monomials(self, degree=None):
        if degree is None:
            return list(self._monomials)
        return [e for e in self._monomials if sum(e) == degree]

    def monomial_index(self, exps):
        return self._index[exps]

    def zero(self):
        return TruncatedPolynomial(self, {})

    def constant(self, c):
        return TruncatedPolynomial(self, {(0,) * self.num_vars: to_scalar(c)})

    def one(self):
        return self.constant(1)

    def variable(self, i):
        exps = [0] * self.num_vars
        exps[i] = 1
        return TruncatedPolynomial(self, {tuple(exps): Fraction(1)})

    def from_coefficients(self, vec):
        """Polynomial from a coefficient vector over the monomial order."""
        if len(vec) != len(self._monomials):
            raise DimensionMismatch("coefficient vector does not match monomial count")
        return TruncatedPolynomial(self, {e: to_scalar(c)
                                          for e, c in zip(self._monomials, vec)})

    def group_elements(self):
        """Variable-span matrices of the ring's action; NoAction without one."""
        if self.action is None:
            raise NoAction("ring carries no group action")
        span = GradedVectorSpace({1: self.num_vars})
        mats = []
        for elem in self.action.elements(span):
            mats.append(elem.get(1, DenseMatrix.identity(self.num_vars)))
        return mats


class TruncatedPolynomial:
    """Element of a TruncatedRing; coefficients keyed by exponent tuple."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = {}
        for exps, c in coeffs.items():
            c = to_scalar(c)
            if c != 0 and sum(exps) <= ring.order:
                self.coeffs[tuple(exps)] = c

    def _check(self, other):
        if not self.ring.compatible(other.ring):
            raise DimensionMismatch("polynomials from incompatible rings")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return TruncatedPolynomial(self.ring, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = to_scalar(c)
        return TruncatedPolynomial(self.ring, {e: c * v for e, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, TruncatedPolynomial):
            return self.scale(other)
        self._check(other)
        order = self.ring.order
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if sum(e) <= order:
                    out[e] = out.get(e, Fraction(0)) + c1 * c2
        return TruncatedPolynomial(self.ring, out)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, TruncatedPolynomial):
            return NotImplemented
        return self.ring.compatible(other.ring) and self.coeffs == other.coeffs

    def is_zero(self):
        return not self.coeffs

    def constant_term(self):
        return self.coeffs.get((0,) * self.ring.num_vars, Fraction(0))

    def degree_part(self, degree):
        return TruncatedPolynomial(self.ring, {e: c for e, c in self.coeffs.items()
                                               if sum(e) == degree})

    def coefficient_vector(self):
        vec = [Fraction(0)] * len(self.ring.monomials())
        for e, c in self.coeffs.items():
            vec[self.ring.monomial_index(e)] = c
        return vec

    def substitute(self, assignments, target_ring=None):
        """Evaluate at x_i = assignments[i]; all assignments share one ring."""
        if len(assignments) != self.ring.num_vars:
            raise DimensionMismatch("need one assignment per variable")
        if target_ring is None:
            if not assignments:
                raise DimensionMismatch("target ring required with no variables")
            target_ring = assignments[0].ring
        powers = [[target_ring.one()] for _ in assignments]
        result = target_ring.zero()
        for exps, c in sorted(self.coeffs.items()):
            term = target_ring.constant(c)
            for i, e in enumerate(exps):
                while len(powers[i]) <= e:
                    powers[i].append(powers[i][-1] * assignments[i])
                term = term * powers[i][e]
            result = result + term
        return result

    def substitute_linear(self, matrix):
        """x_i -> sum_j matrix[i][j] x_j, staying in the same ring."""
        n = self.ring.num_vars
        if matrix.nrows != n or matrix.ncols != n:
            raise DimensionMismatch("linear substitution matrix must be %dx%d" % (n, n))
        images = []
        for i in range(n):
            images.append(TruncatedPolynomial(
                self.ring,
                {tuple(1 if t == j else 0 for t in range(n)): matrix.entry(i, j)
                 for j in range(n)}))
        return self.substitute(images, target_ring=self.ring)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for exps, c in sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            vars_part = "*".join(
                self.ring.names[i] if e == 1 else "%s^%d" % (self.ring.names[i], e)
                for i, e in enumerate(exps) if e)
            if not vars_part:
                parts.append(scalar_str(c))
            elif c == 1:
                parts.append(vars_part)
            elif c == -1:
                parts.append("-" + vars_part)
            else:
                parts.append("%s*%s" % (scalar_str(c), vars_part))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return "TruncatedPolynomial(%s)" % self


class TruncatedPolynomialMap:
    """A tuple of ring elements with zero constant term, one per target
    basis vector."""

    def __init__(self, ring, components, target_labels=None):
        self.ring = ring
        self.components = list(components)
        for comp in self.components:
            if comp.constant_term() != 0:
                raise InvariantViolation("map component has a constant term")
        self.target_labels = list(target_labels) if target_labels else None

    @property
    def target_dim(self):
        return len(self.components)

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def degree_part(self, degree):
        return TruncatedPolynomialMap(self.ring,
                                      [c.degree_part(degree) for c in self.components],
                                      self.target_labels)

    def to_dict(self):
        return {"variables": list(self.ring.names), "order": self.ring.order,
                "components": [str(c) for c in self.components]}


class MCElement:
    """Degree-1 vector with polynomial coefficients in the maximal ideal."""

    def __init__(self, ring, coefficients):
        self.ring = ring
        self.coefficients = list(coefficients)
        for c in self.coefficients:
            if c.constant_term() != 0:
                raise InvariantViolation("Maurer-Cartan coefficients must vanish at 0")


class GaugeElement:
    """Degree-0 vector with polynomial coefficients in the maximal ideal,
    so its exponential is a finite sum."""

    def __init__(self, ring, coefficients):
        self.ring = ring
        self.coefficients = list(coefficients)
        for c in self.coefficients:
            if c.constant_term() != 0:
                raise InvariantViolation("gauge coefficients must vanish at 0")


def zero_vector(ring, dim):
    return [ring.zero() for _ in range(dim)]


def bracket_poly(l, p, xs, q, ys, ring):
    """Bracket of L^p- and L^q-valued polynomial vectors."""
    out = zero_vector(ring, l.space.dim(p + q))
    for (i, j), kv in l.pair_table(p, q).items():
        prod = xs[i] * ys[j]
        if not prod.is_zero():
            for k, v in kv.items():
                out[k] = out[k] + prod.scale(v)
    return out


def matrix_apply_poly(mat, xs, ring):
    out = zero_vector(ring, mat.nrows)
    for a in range(mat.nrows):
        acc = ring.zero()
        for i in range(mat.ncols):
            c = mat.entry(a, i)
            if c != 0:
                acc = acc + xs[i].scale(c)
        out[a] = acc
    return out


def _delta_matrix(l, s, n):
    """delta: L^n -> L^(n-1) determined by the splitting."""
    sp = l.space
    dim_n, dim_prev = sp.dim(n), sp.dim(n - 1)
    k_prev = s.K(n - 1) if s.K(n - 1) is not None else Subspace.zero(dim_prev)
    if dim_n == 0 or dim_prev == 0 or k_prev.dim == 0:
        return DenseMatrix.zero(dim_prev, dim_n)
    b_n = s.B(n) if s.B(n) is not None else Subspace.zero(dim_n)
    h_n = s.H(n) if s.H(n) is not None else Subspace.zero(dim_n)
    k_n = s.K(n) if s.K(n) is not None else Subspace.zero(dim_n)
    proj_b = projection_matrix(b_n, h_n.sum_with(k_n))
    d_prev = l.d_matrix(n - 1)
    images = DenseMatrix.from_columns([d_prev.apply(v) for v in k_prev.basis], nrows=dim_n)
    alphas = []
    for t in range(dim_n):
        alpha = images.solve(proj_b.column(t))
        if alpha is None:
            raise InvalidSplitting("boundary projection misses d(K) at degree %d" % n)
        alphas.append(alpha)
    k_cols = DenseMatrix.from_columns([list(v) for v in k_prev.basis], nrows=dim_prev)
    return k_cols * DenseMatrix.from_columns(alphas, nrows=k_prev.dim)


def _splitting_projector(s, n, dim, part):
    """Projector onto one part of the splitting at degree n."""
    b = s.B(n) if s.B(n) is not None else Subspace.zero(dim)
    h = s.H(n) if s.H(n) is not None else Subspace.zero(dim)
    k = s.K(n) if s.K(n) is not None else Subspace.zero(dim)
    if part == "K":
        return projection_matrix(k, b.sum_with(h))
    if part == "B":
        return projection_matrix(b, h.sum_with(k))
    raise ValueError(part)


def delta_operator(l, s):
    """All delta matrices keyed by source degree, with the defining
    identities delta d = proj_K and d delta = proj_B checked exactly."""
    s.validate(l)
    sp = l.space
    degs = sp.degrees()
    out = {}
    for n in range(min(degs), max(degs) + 2) if degs else ():
        delta = _delta_matrix(l, s, n)
        if sp.dim(n):
            out[n] = delta
        if delta * l.d_matrix(n - 1) != _splitting_projector(s, n - 1, sp.dim(n - 1), "K"):
            raise InvalidSplitting("delta d is not the K-projection at degree %d" % (n - 1))
        if l.d_matrix(n - 1) * delta != _splitting_projector(s, n, sp.dim(n), "B"):
            raise InvalidSplitting("d delta is not the B-projection at degree %d" % n)
    return out


def _phi_inverse_core(l, s, xs, ring):
    delta2 = _delta_matrix(l, s, 2)
    ys = list(xs)
    for _ in range(ring.order + 1):
        yy = bracket_poly(l, 1, ys, 1, ys, ring)
        correction = matrix_apply_poly(delta2, yy, ring)
        nxt = [x - c.scale(Fraction(1, 2)) for x, c in zip(xs, correction)]
        if nxt == ys:
            return ys
        ys = nxt
    raise InvariantViolation("fixed-point iteration did not stabilize")


def phi_inverse(l, s, x, order=None):
    """Invert phi(y) = y + (1/2) delta [y, y] on an MC-shaped vector."""
    coeffs = x.coefficients if isinstance(x, MCElement) else list(x)
    if len(coeffs) != l.space.dim(1):
        raise DimensionMismatch("expected a vector over L^1")
    ring = coeffs[0].ring if coeffs else None
    if ring is None:
        return x
    if order is not None and order != ring.order:
        ring2 = TruncatedRing(ring.num_vars, order, names=ring.names, action=ring.action)
        coeffs = [TruncatedPolynomial(ring2, c.coeffs) for c in coeffs]
        ring = ring2
    ys = _phi_inverse_core(l, s, coeffs, ring)
    if isinstance(x, MCElement):
        return MCElement(ring, ys)
    return ys


def phi_apply(l, s, x):
    """phi(x) = x + (1/2) delta [x, x] on an L^1-valued polynomial vector."""
    coeffs = x.coefficients if isinstance(x, MCElement) else list(x)
    ring = coeffs[0].ring
    delta2 = _delta_matrix(l, s, 2)
    corr = matrix_apply_poly(delta2, bracket_poly(l, 1, coeffs, 1, coeffs, ring), ring)
    out = [a + c.scale(Fraction(1, 2)) for a, c in zip(coeffs, corr)]
    return MCElement(ring, out) if isinstance(x, MCElement) else out


def generic_point(l, s, ring):
    """The universal L^1 vector sum_i x_i h_i over the harmonic basis."""
    h1 = s.H(1)
    dim1 = l.space.dim(1)
    xs = zero_vector(ring, dim1)
    for i, h in enumerate(h1.basis):
        xi = ring.variable(i)
        xs = [acc + xi.scale(c) for acc, c in zip(xs, h)]
    return xs


def kuranishi_series(l, s, order):
    """Components of kappa(x) = H([phi^(-1) x, phi^(-1) x]) in the H^2 basis,
    exact modulo m^(order+1)."""
    if order < 2:
        raise InvariantViolation("kuranishi series needs order >= 2")
    s.validate(l)
    m = s.H(1).dim if s.H(1) is not None else 0
    ring = TruncatedRing(m, order)
    xs = generic_point(l, s, ring)
    ys = _phi_inverse_core(l, s, xs, ring)
    yy = bracket_poly(l, 1, ys, 1, ys, ring)
    hc = s.harmonic_coords_matrix(l, 2)
    comps = matrix_apply_poly(hc, yy, ring)
    h2 = s.H(2)
    labels = ["h2_%d" % j for j in range(h2.dim if h2 is not None else 0)]
    return TruncatedPolynomialMap(ring, comps, target_labels=labels)


def quadratic_part(l, s):
    """kappa_2: the harmonic image of [x, x], a purely quadratic map."""
    s.validate(l)
    m = s.H(1).dim if s.H(1) is not None else 0
    ring = TruncatedRing(m, 2)
    xs = generic_point(l, s, ring)
    xx = bracket_poly(l, 1, xs, 1, xs, ring)
    comps = matrix_apply_poly(s.harmonic_coords_matrix(l, 2), xx, ring)
    h2 = s.H(2)
    labels = ["h2_%d" % j for j in range(h2.dim if h2 is not None else 0)]
    return TruncatedPolynomialMap(ring, comps, target_labels=labels)


def ideal_row_span(ring, polys):
    """Span of {p * monomial} over the monomial coordinates of the ring."""
    vectors = []
    for p in polys:
        for exps in ring.monomials():
            prod = p * TruncatedPolynomial(ring, {exps: Fraction(1)})
            if not prod.is_zero():
                vectors.append(prod.coefficient_vector())
    return Subspace(len(ring.monomials()), vectors)


class QuadraticityReport:
    def __init__(self, order, equal, witness, full_dim, quadratic_dim):
        self.order = order
        self.equal = equal
        self.witness = witness
        self.full_dim = full_dim
        self.quadratic_dim = quadratic_dim

    @property
    def verdict(self):
        return "EqualAtOrder(%d)" % self.order if self.equal else "NotEqualAtOrder(%d)" % self.order

    def to_dict(self):
        d = {"verdict": self.verdict, "ideal_dim": self.full_dim,
             "quadratic_ideal_dim": self.quadratic_dim}
        if self.witness is not None:
            d["witness"] = str(self.witness)
        return d


def check_quadraticity(l, s, order):
    """Compare the ideal of kappa with the ideal of kappa_2 inside
    R/m^(order+1); equality is decided by linear span comparison."""
    if order < 3:
        raise InvariantViolation("quadraticity test needs order >= 3")
    kappa = kuranishi_series(l, s, order)
    ring = kappa.ring
    quad = [c.degree_part(2) for c in kappa.components]
    span_full = ideal_row_span(ring, kappa.components)
    span_quad = ideal_row_span(ring, quad)
    if span_full == span_quad:
        return QuadraticityReport(order, True, None, span_full.dim, span_quad.dim)
    witness = None
    for vec in span_full.basis:
        if not span_quad.contains(vec):
            witness = ring.from_coefficients(vec)
            break
    if witness is None:
        for vec in span_quad.basis:
            if not span_full.contains(vec):
                witness = ring.from_coefficients(vec)
                break
    return QuadraticityReport(order, False, witness, span_full.dim, span_quad.dim)


def mc_residual(l, x):
    """dx + (1/2)[x, x] as an L^2-valued polynomial vector."""
    coeffs = x.coefficients if isinstance(x, MCElement) else list(x)
    if len(coeffs) != l.space.dim(1):
        raise DimensionMismatch("expected a vector over L^1")
    ring = coeffs[0].ring if coeffs else None
    if ring is None:
        return []
    dx = matrix_apply_poly(l.d_matrix(1), coeffs, ring)
    xx = bracket_poly(l, 1, coeffs, 1, coeffs, ring)
    return [a + b.scale(Fraction(1, 2)) for a, b in zip(dx, xx)]


def verify_mc(l, x):
    return all(c.is_zero() for c in mc_residual(l, x))


def gauge_act(l, g, x):
    """e^g * x = x + sum_n ad_g^n([g, x] - dg) / (n+1)!, a finite sum
    because g has no constant term."""
    ring = x.ring
    if not g.ring.compatible(ring):
        raise DimensionMismatch("gauge and MC elements from incompatible rings")
    gs, xs = list(g.coefficients), list(x.coefficients)
    if len(gs) != l.space.dim(0) or len(xs) != l.space.dim(1):
        raise DimensionMismatch("gauge element over L^0, MC element over L^1")
    dg = matrix_apply_poly(l.d_matrix(0), gs, ring)
    term = [a - b for a, b in zip(bracket_poly(l, 0, gs, 1, xs, ring), dg)]
    out = [a + t for a, t in zip(xs, term)]
    for n in range(1, ring.order + 1):
        term = bracket_poly(l, 0, gs, 1, term, ring)
        if all(t.is_zero() for t in term):
            break
        f = Fraction(1, math.factorial(n + 1))
        out = [a + t.scale(f) for a, t in zip(out, term)]
    return MCElement(ring, out)


def invariant_truncation(ring, ideal_gens):
    """Basis of the invariants of R/(ideal + m^(N+1)), degree by degree.

    The ideal span is reduced over the monomial coordinates; each
    non-pivot (complement) monomial is Reynolds-averaged over the ring's
    group and reduced modulo the ideal span, and the resulting classes are
    echelonized within each degree.
    """
    mats = ring.group_elements()
    if isinstance(ideal_gens, TruncatedPolynomialMap):
        gens = ideal_gens.components
    else:
        gens = list(ideal_gens)
    span = ideal_row_span(ring, gens)
    monomials = ring.monomials()
    pivots = set(span.pivots)
    averaged = {}
    for idx, exps in enumerate(monomials):
        if idx in pivots:
            continue
        mono = TruncatedPolynomial(ring, {exps: Fraction(1)})
        acc = ring.zero()
        for m in mats:
            acc = acc + mono.substitute_linear(m)
        avg = acc.scale(Fraction(1, len(mats)))
        reduced = span.reduce(avg.coefficient_vector())
        if any(c != 0 for c in reduced):
            averaged.setdefault(sum(exps), []).append(reduced)
    out = []
    for degree in sorted(averaged):
        for vec in Subspace(len(monomials), averaged[degree]).basis:
            out.append(ring.from_coefficients(vec))
    return out
