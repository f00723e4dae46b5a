import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from chowforge.exactpoly import RingSpec
from chowforge.groebner import krull_dim
from chowforge.matdet import (PolyMatrix, adjugate, block_embed, det, det_bareiss, det_cofactor,
                              determinantal_ideal, generic_matrix, parse_matrix, sparse_solve)
from chowforge.selfcheck import check_det_agreement

R = RingSpec(["x", "y"])
x, y = R.gens("x", "y")

entries = st.sampled_from([0, 1, -1, 2, "x", "y", "x+y", "x*y - 1", "y^2"])


@st.composite
def matrices(draw, size):
    rows = [[R.parse(str(draw(entries))) for _ in range(size)] for _ in range(size)]
    return PolyMatrix.from_rows(R, rows)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5).flatmap(matrices))
def test_bareiss_matches_cofactor(M):
    assert det_bareiss(M) == det_cofactor(M)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3).flatmap(lambda k: st.tuples(matrices(k), matrices(k))))
def test_det_multiplicative(AB):
    A, B = AB
    assert det(A @ B) == det(A) * det(B)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4).flatmap(matrices))
def test_adjugate(M):
    d = det(M)
    assert M @ adjugate(M) == PolyMatrix.identity(R, M.rows).scale(d)


def test_generic_dets_agree_to_five():
    assert check_det_agreement(max_size=5).verdict == "pass"


def test_generic_2x2():
    M = generic_matrix(2, 2)
    a, b, c, d = (M[0, 0], M[0, 1], M[1, 0], M[1, 1])
    assert det(M) == a * d - b * c


def test_block_embed():
    M = parse_matrix(R, "[[x, y], [1, x]]")
    E = block_embed(M, 4)
    assert E.shape == (4, 4)
    assert det(E) == det(M)
    assert E[3, 3] == R.one() and E[0, 3].is_zero()


def test_determinantal_dimension():
    # rank <= 1 locus of 2x3 matrices has dimension 4
    assert krull_dim(determinantal_ideal(2, 3, 1)) == 4
    # 2x2 determinant hypersurface
    assert krull_dim(determinantal_ideal(2, 2, 1)) == 3


def test_sparse_solve():
    cols = [{0: 1, 1: 1}, {1: 1}]
    assert sparse_solve(cols, {0: 2, 1: 5}) == {0: 2, 1: 3}
    assert sparse_solve([{0: 1}], {1: 1}) is None


def test_nonsquare_rejected():
    M = generic_matrix(2, 3)
    with pytest.raises(ValueError):
        det(M)
