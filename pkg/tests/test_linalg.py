import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from weylcalc import linalg


def matrices(max_rows=5, max_cols=5, entries=st.integers(-6, 6)):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_certificate_and_divisibility(a):
    res = linalg.smith_normal_form(a, transforms=True)
    d = res.diagonal_matrix()
    assert linalg.matmul(linalg.matmul(res.left, a), res.right) == d
    nonzero = [x for x in res.diagonal if x]
    assert all(x > 0 for x in nonzero)
    assert all(b % a_ == 0 for a_, b in zip(nonzero, nonzero[1:]))
    assert abs(linalg.determinant(res.left)) == 1
    assert abs(linalg.determinant(res.right)) == 1


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_snf_matches_sympy(a):
    ours = [x for x in linalg.smith_normal_form(a).diagonal if x]
    theirs = [abs(int(x)) for x in invariant_factors(Matrix(a), domain=ZZ) if x != 0]
    assert ours == theirs


@settings(max_examples=150, deadline=None)
@given(matrices(max_rows=4, max_cols=6))
def test_sparse_kernel_matches_snf_kernel(a):
    k = linalg.integer_kernel(a)
    assert k == linalg.integer_kernel_snf(a)
    for v in k:
        assert linalg.matvec(a, v) == [0] * len(a)
    assert len(k) == len(a[0]) - linalg.rational_rank(a)


@settings(max_examples=150, deadline=None)
@given(matrices(max_rows=7, max_cols=5))
def test_cokernel_routes_agree(a):
    dim = len(a[0])
    assert linalg.lattice_cokernel(a, dim) == linalg.lattice_cokernel_snf(a, dim)
    sparse = [{j: x for j, x in enumerate(row) if x} for row in a]
    assert linalg.lattice_cokernel(sparse, dim) == linalg.lattice_cokernel_snf(a, dim)


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=4, max_cols=4), st.randoms(use_true_random=False))
def test_hnf_is_canonical(a, rnd):
    # a unimodular change of generators leaves the HNF unchanged
    rows = [list(r) for r in a]
    for _ in range(6):
        i, j = rnd.randrange(len(rows)), rnd.randrange(len(rows))
        if i != j:
            q = rnd.randint(-3, 3)
            rows[i] = [x + q * y for x, y in zip(rows[i], rows[j])]
    rnd.shuffle(rows)
    assert linalg.hermite_normal_form(rows) == linalg.hermite_normal_form(a)


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=4, max_cols=4))
def test_determinant_matches_sympy(a):
    n = min(len(a), len(a[0]))
    sq = [row[:n] for row in a[:n]]
    assert linalg.determinant(sq) == Matrix(sq).det()


def test_rational_inverse_and_solve():
    a = [[2, -1], [-1, 2]]
    inv = linalg.rational_inverse(a)
    assert inv == [[Fraction(2, 3), Fraction(1, 3)], [Fraction(1, 3), Fraction(2, 3)]]
    assert linalg.rational_solve(a, [1, 0]) == [Fraction(2, 3), Fraction(1, 3)]
    assert linalg.rational_solve([[1, 1], [2, 2]], [1, 3]) is None
    with pytest.raises(linalg.SingularMatrixError):
        linalg.rational_inverse([[1, 2], [2, 4]])


def test_known_cokernels():
    assert linalg.lattice_cokernel([[2, 0], [0, 3]], 2) == (0, [6])
    assert linalg.lattice_cokernel([[2, 4]], 2) == (1, [2])
    assert linalg.lattice_cokernel([], 3) == (3, [])


def test_rank_mod_p_lower_bound():
    rng = random.Random(7)
    for _ in range(50):
        a = [[rng.randint(-5, 5) for _ in range(6)] for _ in range(4)]
        assert linalg.rank_mod_p(a) == linalg.rational_rank(a)
    assert linalg.rank_mod_p([[3, 6]], p=3) == 0


def test_solve_in_lattice():
    assert linalg.solve_in_lattice([[1, 1, 0], [0, 1, 1]], [2, 5, 3]) == [2, 3]
    assert linalg.solve_in_lattice([[2, 0]], [1, 0]) is None
