import pytest

from chowforge import cherncycles as cc
from chowforge.groebner import Ideal


@pytest.mark.parametrize("n,p", [(2, 1), (3, 1), (3, 2)])
def test_intersection(n, p):
    assert cc.check_intersection(n, p).verdict == "pass"


@pytest.mark.parametrize("n,p", [(2, 1), (3, 1), (3, 2)])
def test_membership_battery(n, p):
    assert cc.check_tricky(n, p).verdict == "pass"
    assert cc.check_saturations(n, p).verdict == "pass"
    assert cc.check_bottom_row_expansion(n, p).verdict == "pass"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_detM(n):
    assert cc.check_detM(n).verdict == "pass"


def test_negative_control():
    # u.x^p alone is not in Afrak_p; the check records a nonzero normal form
    out = cc.check_negative_control(2, 1)
    assert out.verdict == "pass"
    assert out.witness["normal_form"] != "0"


@pytest.mark.parametrize("n,p", [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3)])
def test_coherent_family(n, p):
    for check in (cc.check_codim, cc.check_identity_avoidance, cc.check_stabilization,
                  cc.check_gl_invariance):
        assert check(n, p).verdict == "pass", check.__name__


def test_sigma_boundary_cases():
    assert cc.ideal_Sigma(2, 0).is_unit()
    assert cc.ideal_Sigma(2, 3).is_unit()
    assert not cc.ideal_Afrak(2, 1).is_unit()
    with pytest.raises(ValueError):
        cc.ideal_Sigma(2, 4)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_L_relations(r):
    for j in range(r + 1):
        assert cc.check_rels1(2, r, j).verdict == "pass"
    for j in range(r if r >= 2 else 0):
        assert cc.check_rels2(2, r, j).verdict == "pass"
    assert cc.check_stabL(2, r).verdict == "pass"


def test_rels2_needs_r2():
    with pytest.raises(ValueError):
        cc.check_rels2(2, 1, 0)


@pytest.mark.parametrize("kind", ["C", "theta"])
@pytest.mark.parametrize("r,j", [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)])
def test_special_cycles(kind, r, j):
    assert cc.check_special(kind, 2, r, j).verdict == "pass"


@pytest.mark.parametrize("r,p", [(1, 1), (1, 2), (2, 1)])
def test_codim_dominance(r, p):
    out = cc.check_codim_dominance(2, r, p, seed=0)
    assert out.verdict == "pass"
    assert cc.check_unit_avoidance(2, r, p).verdict == "pass"


def test_whitney():
    assert cc.check_whitney(2, 1, 1).verdict == "pass"


def test_gl_jacobian():
    out = cc.check_gl_jacobian(2, 2, 1)
    assert out.verdict == "pass"
    assert out.witness["det"] == "z1^5"


def test_sl_jacobian_displayed_product_does_not_match():
    # the computed determinant is z^3 * prod M^2, not the displayed form
    out = cc.check_sl_jacobian(2, 1, 1)
    assert out.verdict == "fail"
    assert out.witness["computed_form"] == {"z_exp": 3, "M_power": 2, "sign": 1}


def test_unit_ideal_not_a_cycle():
    R = cc.matrix_ring(2)
    assert Ideal(R, [R.one()]).is_unit()
