import random
from fractions import Fraction

import pytest
import sympy

from dglab.errors import BadProjector, DimensionMismatch, NotASubspace
from dglab.linalg import (
    DenseMatrix,
    Subspace,
    complement,
    kernel_image,
    projection_matrix,
    subspace_equal,
)


def rand_matrix(rng, nrows, ncols, den=4, num=6):
    return DenseMatrix([[Fraction(rng.randint(-num, num), rng.randint(1, den))
                         for _ in range(ncols)] for _ in range(nrows)], ncols=ncols)


def test_kernel_image_dims_against_sympy():
    # independent row-reduction oracle: sympy's exact nullspace/columnspace
    rng = random.Random(21)
    for _ in range(30):
        m = rand_matrix(rng, 3, 5)
        ker, im = kernel_image(m)
        sm = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row]
                           for row in m.rows])
        assert ker.dim == len(sm.nullspace())
        assert im.dim == sm.rank()
        assert ker.dim + im.dim == m.ncols
        for v in ker.basis:
            assert all(x == 0 for x in m.apply(v))
        for j in range(m.ncols):
            assert im.contains(m.column(j))


def test_kernel_image_zero_matrix():
    m = DenseMatrix.zero(3, 4)
    ker, im = kernel_image(m)
    assert ker.dim == 4
    assert im.dim == 0


def test_rref_is_idempotent_and_canonical():
    rng = random.Random(5)
    for _ in range(20):
        m = rand_matrix(rng, 4, 4)
        red, pivots = m.rref()
        red2, pivots2 = red.rref()
        assert red == red2 and pivots == pivots2


def test_subspace_equality_is_basis_independent():
    rng = random.Random(7)
    for _ in range(20):
        vecs = [[Fraction(rng.randint(-5, 5)) for _ in range(4)] for _ in range(2)]
        a = Subspace(4, vecs)
        # same span, scrambled spanning set
        mixed = [[2 * x + y for x, y in zip(vecs[0], vecs[1])],
                 [-1 * x for x in vecs[0]],
                 vecs[1]]
        b = Subspace(4, mixed)
        assert subspace_equal(a, b)


def test_subspace_equal_raises_on_ambient_mismatch():
    with pytest.raises(DimensionMismatch):
        subspace_equal(Subspace.zero(3), Subspace.zero(4))


def test_complement_direct_sum_property():
    rng = random.Random(11)
    for _ in range(25):
        inside_vecs = [[Fraction(rng.randint(-4, 4)) for _ in range(5)] for _ in range(4)]
        inside = Subspace(5, inside_vecs)
        w = Subspace(5, inside.basis[: max(0, inside.dim - 2)])
        c = complement(w, inside)
        assert w.dim + c.dim == inside.dim
        assert w.intersection(c).dim == 0
        assert subspace_equal(w.sum_with(c), inside)


def test_complement_rejects_non_subspace():
    w = Subspace(3, [[1, 0, 0]])
    inside = Subspace(3, [[0, 1, 0], [0, 0, 1]])
    with pytest.raises(NotASubspace):
        complement(w, inside)


def test_complement_with_swap_averager():
    # diagonal of the plane, swap-group averager: complement must be the
    # antidiagonal, i.e. invariant under the swap itself
    w = Subspace(2, [[1, 1]])
    inside = Subspace.full(2)
    half = Fraction(1, 2)
    averager = DenseMatrix([[half, half], [half, half]])
    c = complement(w, inside, averager=averager)
    assert c.dim == 1
    swap = DenseMatrix([[0, 1], [1, 0]])
    for v in c.basis:
        assert c.contains(swap.apply(v))
    assert subspace_equal(c, Subspace(2, [[1, -1]]))


def test_complement_rejects_bad_projector():
    w = Subspace(2, [[1, 1]])
    inside = Subspace.full(2)
    not_idempotent = DenseMatrix([[1, 1], [1, 1]])
    with pytest.raises(BadProjector):
        complement(w, inside, averager=not_idempotent)
    # idempotent but does not fix w
    wrong_image = DenseMatrix([[1, 0], [0, 0]])
    with pytest.raises(BadProjector):
        complement(w, inside, averager=wrong_image)


def test_projection_matrix_properties():
    onto = Subspace(3, [[1, 0, 0], [0, 1, 1]])
    along = Subspace(3, [[0, 0, 1]])
    p = projection_matrix(onto, along)
    assert (p * p) == p
    for v in onto.basis:
        assert p.apply(v) == [Fraction(x) for x in v]
    for v in along.basis:
        assert all(x == 0 for x in p.apply(v))


def test_solve_and_inverse():
    rng = random.Random(3)
    for _ in range(15):
        m = rand_matrix(rng, 3, 3)
        if m.rank() < 3:
            continue
        inv = m.inverse()
        assert (m * inv) == DenseMatrix.identity(3)
        b = [Fraction(rng.randint(-5, 5)) for _ in range(3)]
        x = m.solve(b)
        assert m.apply(x) == b


def test_solve_inconsistent_returns_none():
    m = DenseMatrix([[1, 0], [1, 0]])
    assert m.solve([Fraction(1), Fraction(2)]) is None


def test_intersection_and_coords():
    a = Subspace(3, [[1, 0, 0], [0, 1, 0]])
    b = Subspace(3, [[0, 1, 0], [0, 0, 1]])
    inter = a.intersection(b)
    assert subspace_equal(inter, Subspace(3, [[0, 1, 0]]))
    assert a.coords([Fraction(2), Fraction(-3), Fraction(0)]) == [Fraction(2), Fraction(-3)]
    assert a.coords([0, 0, 1]) is None
