from math import comb

import pytest
from hypothesis import given
import hypothesis.strategies as st

from chowforge import simplicialcat as sc
from chowforge.simplicialcat import (codegeneracy, coface, compose, compose_morphisms, dhat,
                                     identity, parse_operator)


@given(st.integers(2, 5).flatmap(lambda r: st.tuples(st.just(r), st.integers(0, r), st.integers(0, r))))
def test_coface_identity(rij):
    # delta^j delta^i = delta^i delta^(j-1) for i < j
    r, i, j = rij
    if i >= j:
        i, j = j, i + 1
    if j > r:
        return
    lhs = compose_morphisms(coface(r, j), coface(r - 1, i))
    rhs = compose_morphisms(coface(r, i), coface(r - 1, j - 1))
    assert lhs == rhs


@given(st.integers(1, 5).flatmap(lambda r: st.tuples(st.just(r), st.integers(0, r - 1))))
def test_codegeneracy_splits_coface(rj):
    r, j = rj
    # sigma^j delta^j = sigma^j delta^(j+1) = id
    for k in (j, j + 1):
        assert compose_morphisms(codegeneracy(r, j), coface(r, k)) == identity((r - 1,))


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_boundary_squares_to_zero(r):
    assert len(compose(dhat(r + 1), dhat(r))) == 0


@pytest.mark.parametrize("l", range(5))
def test_ez_aw_diag(l):
    for a in range(l + 1):
        if l >= 1:  # the boundary of the 0-simplex is empty
            assert sc.check_ez1(a, l - a).verdict == "pass"
        assert sc.check_aw(a, l - a).verdict == "pass"
    if l >= 1:
        assert sc.check_diag_cx(l).verdict == "pass"


@pytest.mark.parametrize("a,b", [(0, 0), (1, 1), (2, 1), (2, 2)])
def test_shuffle_term_count(a, b):
    assert len(sc.ez_psi(a, b)) == comb(a + b, a)


@pytest.mark.parametrize("l", range(4))
def test_htpy_route(l):
    out = sc.check_htpy(l)
    assert out.verdict == "pass"
    if l == 0:
        assert out.witness["route"] == "candidate"
    else:
        # the interpolation candidate does not satisfy the identity past degree 0
        assert out.witness["route"] == "degreewise"
        assert out.witness["solution"] == "integral"


def test_wrong_P_fails():
    P, _ = sc.solve_P(2)
    broken = dict(P)
    broken[3] = broken[3] + broken[3]
    assert sc.htpy_identity(2, P)
    assert not sc.htpy_identity(2, broken)


def test_parse_operator():
    assert len(parse_operator("compose(dhat(2), dhat(1))")) == 0
    with pytest.raises(ValueError):
        parse_operator("dhat(2) junk")


def test_verify_all_identities():
    results = sc.verify_ez_aw_identities(3)
    assert results and all(r.holds for r in results)
