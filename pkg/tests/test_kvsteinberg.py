import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from chowforge import kvsteinberg as kv
from chowforge.exactpoly import RingSpec
from chowforge.matdet import PolyMatrix, det, var_name
from chowforge.kvsteinberg import (H, UnipotentQuadruple, WordEvaluator, compare_tuples, face,
                                   group_face, kv_ring, rho, simplex_names)


def test_quadruple_pattern_enforced():
    R = RingSpec(["a"])
    L = PolyMatrix.from_rows(R, [[1, 0], ["a", 1]])
    U = PolyMatrix.from_rows(R, [[1, "a"], [0, 1]])
    UnipotentQuadruple((L, U, L, U))
    with pytest.raises(ValueError):
        UnipotentQuadruple((U, L, U, L))
    with pytest.raises(ValueError):
        UnipotentQuadruple((L, U, L))


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_quadruple_inverse(vals):
    R = RingSpec(["a"])
    a, b, c, d = vals
    L1 = PolyMatrix.from_rows(R, [[1, 0], [a, 1]])
    U1 = PolyMatrix.from_rows(R, [[1, b], [0, 1]])
    L2 = PolyMatrix.from_rows(R, [[1, 0], [c, 1]])
    U2 = PolyMatrix.from_rows(R, [[1, d], [0, 1]])
    q = UnipotentQuadruple((L1, U1, L2, U2))
    for F, G in zip(q.factors, q.inverse_factors()):
        assert F @ G == PolyMatrix.identity(R, 2)
    assert det(kv.mu(q)) == R.one()


@pytest.mark.parametrize("n,m", [(2, 1), (2, 3), (3, 1)])
def test_mu_det(n, m):
    assert kv.check_mu_det(n, m).verdict == "pass"


def test_contracting_homotopy():
    assert kv.check_h_at_zero(2).verdict == "pass"
    assert kv.check_h_identity_quads(2).verdict == "pass"
    assert kv.check_h_det(2).verdict == "pass"
    assert kv.check_h_stabilization(2).verdict == "pass"


def test_mu3_fibers_have_dimension_9():
    out = kv.check_mu_fibers(2, 3, seed=0, samples=3)
    assert out.verdict == "pass"
    assert kv.default_m(2) == 3


def test_seeded_points_in_sl2():
    pts = kv.seeded_sl2_points(5, 4)
    assert len(pts) == 4
    for (a, b), (c, d) in pts:
        assert a * d - b * c == 1


def test_group_face():
    w = [("A",), ("B",), ("C",)]
    assert group_face(w, 0) == [("B",), ("C",)]
    assert group_face(w, 3) == [("A",), ("B",)]
    assert group_face(w, 1) == [("A", "B"), ("C",)]
    with pytest.raises(ValueError):
        group_face(w, 4)


def _sk1_ring():
    n = 2
    ts, ss = simplex_names("z", 2), simplex_names("s", 1)
    extra = [var_name(p, i, j) for p in ("a", "b") for i in (1, 2) for j in (1, 2)]
    return kv_ring(n, (0, 1), "formal", 3, extra + ts + ss, [ts, ss])


def test_face_check_catches_a_wrong_expectation():
    R = _sk1_ring()
    a = PolyMatrix(R, 2, 2, [R.var(var_name("a", i, j)) for i in (1, 2) for j in (1, 2)])
    b = PolyMatrix(R, 2, 2, [R.var(var_name("b", i, j)) for i in (1, 2) for j in (1, 2)])
    z0, z1, z2 = (R.var(v) for v in simplex_names("z", 2))
    g = [(a, H(0, z0 * z1 * z2), H(1, z0 * z1)), (b, H(1, z0 * z2 + z1 * z2))]
    rs = rho(R, "s", 1)
    ev = WordEvaluator(R, 2, "formal", 3)
    assert compare_tuples(ev, face(g, 0, R, 2, "z", "s"), [(b, H(1, rs))]) == []
    # swapping a and b on the zeroth face must be detected
    assert compare_tuples(ev, face(g, 0, R, 2, "z", "s"), [(a, H(1, rs))]) == [1]
    assert compare_tuples(ev, face(g, 1, R, 2, "z", "s"), [(b @ a, H(1, rs))]) == [1]


@pytest.mark.parametrize("mode", ["formal", "expanded"])
def test_sk1(mode):
    assert kv.sk1_g(2, mode).verdict == "pass"
    assert kv.sk1_F(2, mode).verdict == "pass"


def test_lambda():
    assert kv.check_lambda_restr(2, 2).verdict == "pass"
    assert kv.check_lambda_identity_boundary(2, 2).verdict == "pass"


@pytest.mark.parametrize("mode", ["formal", "expanded"])
@pytest.mark.parametrize("inputs", ["generic", "honest"])
def test_b2_items(mode, inputs):
    assert kv.b2_item_ii(2, 1, mode, inputs).verdict == "pass"
    assert kv.b2_item_ii(2, 2, mode, inputs).verdict == "pass"
    assert kv.b2_item_iii(2, 2, mode, inputs).verdict == "pass"
    assert kv.b2_item_iv(2, 2, mode, inputs).verdict == "pass"


def test_b2_iii_printed_form_fails_past_r1():
    assert kv.b2_item_iii(2, 1, variant="printed").verdict == "pass"
    out = kv.b2_item_iii(2, 2, variant="printed")
    assert out.verdict == "fail"
    corrected = kv.b2_item_iii(2, 2)
    assert corrected.witness["printed_failing_faces"] == {3: [1]}


def test_b2_iii_formal_r3():
    out = kv.b2_item_iii(2, 3)
    assert out.verdict == "pass"
    assert out.witness["printed_failing_faces"] == {4: [1, 2]}


@pytest.mark.parametrize("spec", ["generic", "one", "inverse"])
def test_comm(spec):
    assert kv.check_comm(spec).verdict == "pass"


def test_palpha():
    assert kv.check_palpha_det().verdict == "pass"
    out = kv.check_palpha_unit()
    assert out.verdict == "pass"
    assert out.witness == {"unit": True, "control_no_inverse_unit": False, "control_alpha0_unit": False}


@pytest.mark.parametrize("k", range(1, 8))
def test_gamma_items(k):
    assert getattr(kv, f"gamma_item{k}")().verdict == "pass"


def test_gamma_item5_literal_claim_is_false():
    w = kv.gamma_item5().witness
    assert w["empty_interior"] and not w["empty_literal"]
    assert w["literal_counterexample_verified"]


def test_printed_variants_recorded_as_failing():
    w4 = kv.gamma_item4().witness
    assert w4["T=0"] and w4["T=1"]
    # with the s0^2 leading term neither specialization holds
    assert not w4["printed_T=0"] and not w4["printed_T=1"]
    assert not kv.gamma_item2().witness["printed_y1sq_matches"]
    assert not kv.gamma_item6().witness["alternative_s0sq_slice"]
