import random
from fractions import Fraction

import pytest
from sympy import Matrix

from dglab.dgla import (DgLieAlgebra, GradedVectorSpace, GroupAction, Splitting,
                        build_splitting, check_dgla_axioms, cohomology, reynolds_project)
from dglab.errors import InvalidSplitting, InvariantViolation, NotAnAutomorphism
from dglab.linalg import DenseMatrix, Subspace

from oracles import check_axioms, mutate
from raws import HEIS, NONFORMAL, TWO_TO_ONE, build_raw


def test_heisenberg_axioms_pass():
    report = check_dgla_axioms(build_raw(HEIS))
    assert report.ok
    assert [c.name for c in report.checks] == ["d_squared", "antisymmetry", "leibniz", "jacobi"]
    assert all(c.witness is None for c in report.checks)


def test_nonformal_axioms_pass():
    assert check_dgla_axioms(build_raw(NONFORMAL)).ok


def test_broken_d_squared():
    data = {"dims": {0: 1, 1: 1, 2: 1}, "diff": {0: [[1]], 1: [[1]]}, "entries": []}
    report = check_dgla_axioms(build_raw(data))
    assert not report.check("d_squared").ok
    assert report.check("d_squared").witness is not None
    assert report.check("antisymmetry").ok and report.check("jacobi").ok


def test_broken_antisymmetry():
    data = {"dims": {1: 2, 2: 1}, "diff": {}, "entries": [[1, 1, 0, 1, 0, 1]]}
    report = check_dgla_axioms(build_raw(data))
    assert not report.check("antisymmetry").ok
    assert report.check("d_squared").ok
    assert report.check("leibniz").ok
    assert report.check("jacobi").ok


def test_broken_leibniz():
    # d(a) = u while [x, a] = a and [x, u] = 0 forces d[x,a] != [x, da]
    data = {"dims": {0: 1, 1: 1, 2: 1}, "diff": {1: [[1]]},
            "entries": [[0, 1, 0, 0, 0, 1]]}
    report = check_dgla_axioms(build_raw(data))
    assert not report.check("leibniz").ok
    assert report.check("d_squared").ok
    assert report.check("antisymmetry").ok
    assert report.check("jacobi").ok


def test_broken_jacobi():
    entries = [
        [0, 0, 0, 1, 2, 1], [0, 0, 1, 0, 2, -1],   # [x,y] = z
        [0, 0, 1, 2, 0, 1], [0, 0, 2, 1, 0, -1],   # [y,z] = x
        [0, 0, 2, 0, 0, 1], [0, 0, 0, 2, 0, -1],   # [z,x] = x
    ]
    report = check_dgla_axioms(build_raw({"dims": {0: 3}, "diff": {}, "entries": entries}))
    assert report.check("antisymmetry").ok
    assert not report.check("jacobi").ok
    assert "jacobiator" in report.check("jacobi").witness


def test_duplicate_structure_constant_rejected():
    data = dict(HEIS, entries=HEIS["entries"] + [[1, 1, 1, 0, 0, 1]])
    with pytest.raises(ValueError):
        build_raw(data)


def test_mirror_blocks_derived():
    l = build_raw(HEIS)
    # degree-1 self-bracket is symmetric: [b, a] = [a, b]
    assert l.bracket_basis(1, 1, 1, 0) == [Fraction(1)]
    mixed = {"dims": {0: 1, 1: 1}, "diff": {}, "entries": [[0, 1, 0, 0, 0, 1]]}
    lm = build_raw(mixed)
    assert lm.bracket_basis(0, 0, 1, 0) == [Fraction(1)]
    assert lm.bracket_basis(1, 0, 0, 0) == [Fraction(-1)]


def test_checker_matches_dense_oracle_on_mutants():
    rng = random.Random(20260821)
    for data in (HEIS, NONFORMAL):
        base = check_axioms(data["dims"], data["diff"], data["entries"])
        assert base["ok"]
        for _ in range(40):
            diff, entries = mutate(rng, data["dims"], data["diff"], data["entries"])
            mutant = build_raw({"dims": data["dims"], "diff": diff, "entries": entries})
            report = check_dgla_axioms(mutant)
            expected = check_axioms(data["dims"], diff, entries)
            for name in ("d_squared", "antisymmetry", "leibniz", "jacobi"):
                assert report.check(name).ok == expected[name], (name, diff, entries)
            assert report.ok == expected["ok"]


def test_cohomology_nonformal():
    rep = cohomology(build_raw(NONFORMAL))
    assert rep.dims == {1: 2, 2: 1}
    assert rep.euler_characteristic() == -1
    assert rep.representatives[2] == [[0, 1]]
    assert rep.representatives[1] == [[1, 0, 0], [0, 1, 0]]


def test_cohomology_dims_match_sympy_on_random_complexes():
    rng = random.Random(7)
    for _ in range(10):
        d0 = [[rng.randint(-4, 4) for _ in range(4)] for _ in range(3)]
        left = Matrix(d0).T.nullspace()
        rows = []
        for _ in range(2):
            row = Matrix([[0, 0, 0]])
            for v in left:
                row += rng.randint(-3, 3) * v.T
            rows.append(row)
        d1_sym = Matrix.vstack(*rows)
        d1 = [[Fraction(int(x.p), int(x.q)) for x in d1_sym.row(i)] for i in range(2)]
        space = GradedVectorSpace({0: 4, 1: 3, 2: 2})
        l = DgLieAlgebra(space, {0: DenseMatrix(d0, ncols=4), 1: DenseMatrix(d1, ncols=3)})
        rep = cohomology(l)
        r0, r1 = Matrix(d0).rank(), d1_sym.rank()
        assert rep.dim(0) == 4 - r0
        assert rep.dim(1) == 3 - r1 - r0
        assert rep.dim(2) == 2 - r1
        assert rep.euler_characteristic() == 4 - 3 + 2


SWAP = {"group_order": 2, "generators": [{1: [[0, 1], [1, 0]]}]}


def test_group_action_closure():
    action = GroupAction(2, SWAP["generators"])
    l = build_raw(HEIS)
    elems = action.elements(l.space)
    assert len(elems) == 2
    action.validate_on(l)


def test_group_action_wrong_order():
    action = GroupAction(3, SWAP["generators"])
    with pytest.raises(InvariantViolation):
        action.elements(build_raw(HEIS).space)


def test_group_action_not_automorphism():
    # swap with c -> -c sends [a,b] to -c but [b,a] = c
    action = GroupAction(2, [{1: [[0, 1], [1, 0]], 2: [[-1]]}])
    with pytest.raises(NotAnAutomorphism):
        action.validate_on(build_raw(HEIS))


def test_group_action_singular_generator():
    action = GroupAction(1, [{1: [[1, 0], [0, 0]]}])
    with pytest.raises(NotAnAutomorphism):
        action.validate_on(build_raw(HEIS))


def test_group_action_breaks_differential():
    # exchanging a closed and a non-closed generator cannot commute with d
    action = GroupAction(2, [{1: [[0, 0, 1], [0, 1, 0], [1, 0, 0]]}])
    with pytest.raises(NotAnAutomorphism):
        action.validate_on(build_raw(NONFORMAL))


def test_build_splitting_nonformal():
    l = build_raw(NONFORMAL)
    s = build_splitting(l)
    s.validate(l)
    assert s.H(1).basis == [[1, 0, 0], [0, 1, 0]]
    assert s.K(1).basis == [[0, 0, 1]]
    assert s.B(2).basis == [[1, 0]]
    assert s.H(2).basis == [[0, 1]]
    assert s.K(2).dim == 0


def test_splitting_validate_rejects_swapped_parts():
    l = build_raw(NONFORMAL)
    s = build_splitting(l)
    bad = Splitting(s.boundary, {1: s.K(1), 2: s.H(2)}, {1: s.H(1), 2: s.K(2)})
    with pytest.raises(InvalidSplitting):
        bad.validate(l)


def test_splitting_harmonic_projector():
    l = build_raw(NONFORMAL)
    s = build_splitting(l)
    p = s.harmonic_projector(l, 1)
    assert p * p == p
    assert p.apply([2, 3, 5]) == [2, 3, 0]
    coords = s.harmonic_coords_matrix(l, 1)
    assert coords.apply([1, 2, 7]) == [1, 2]


def test_equivariant_splitting_picks_invariant_complement():
    l = build_raw(TWO_TO_ONE)
    action = GroupAction(2, [{1: [[0, 1], [1, 0]]}])
    s_plain = build_splitting(l)
    assert s_plain.K(1).basis == [[1, 0]]
    s = build_splitting(l, action)
    s.validate(l, action)
    assert s.H(1).basis == [[1, -1]]
    assert s.K(1).basis == [[1, 1]]


def test_reynolds_project_swap():
    l = build_raw(TWO_TO_ONE)
    action = GroupAction(2, [{1: [[0, 1], [1, 0]]}])
    p = reynolds_project(l, action, 1)
    assert p == DenseMatrix([[Fraction(1, 2), Fraction(1, 2)],
                             [Fraction(1, 2), Fraction(1, 2)]])


def test_splitting_deterministic():
    l1 = build_raw(NONFORMAL)
    l2 = build_raw(NONFORMAL)
    s1, s2 = build_splitting(l1), build_splitting(l2)
    for n in (1, 2):
        assert s1.H(n) == s2.H(n)
        assert s1.K(n) == s2.K(n)
        assert s1.B(n) == s2.B(n)
