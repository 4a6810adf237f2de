import itertools

import pytest

from expmat import linalg
from expmat.birat import (ProjMap, Witness, action_vars, birational_step, conjugation_step,
                          inverse_pair_ok, projectively_equal, sigma_gl2, sigma_quadratic,
                          sigma_reduce, sigma_scaling, verify_chain, verify_equivariance,
                          verify_step)
from expmat.errors import SingularMatrix, WrongCharacteristic, ZeroScalar
from expmat.families import a12, a21, j3, upper2
from expmat.field import Scalar, gf
from expmat.matrix import PolyMatrix, action_of
from expmat.oracle import all_ppolys
from expmat.poly import MPoly
from expmat.ppoly import PPoly, apply_gl

F2, F3, F5 = gf(2), gf(3), gf(5)


def pp(ctx, *cs):
    return PPoly(ctx, cs)


def xs(ctx, n):
    return MPoly.gens(ctx, action_vars(n))[:n]


def test_identity_equivariance():
    for a in (upper2(pp(F3, 1, 2)), a21(pp(F2, 1), pp(F2, 0, 1)), PolyMatrix.identity(F5, 3)):
        assert verify_equivariance(ProjMap.identity(a.ctx, a.n), a, a).ok


def test_scaling_example():
    x0, x1 = xs(F5, 2)
    s = sigma_scaling(Scalar(F5, 2), 1, 2)
    assert s == ProjMap(F5, 2, [x0, x1.scale(2)])
    assert sigma_scaling(1, 1, 2, F5).is_identity()
    back = sigma_scaling(Scalar(F5, 2).inverse(), 1, 2)
    assert s.compose(back).is_identity()
    with pytest.raises(ZeroScalar):
        sigma_scaling(0, 1, 2, F5)


def test_scaling_is_equivariant_for_scalar_multiples():
    # alpha = lam * beta: sigma(x0 : x1) = (x0 : lam x1) intertwines A(alpha) and A(beta)
    beta = pp(F5, 1, 3)
    for lam in range(1, 5):
        alpha = beta.scale(lam)
        s = sigma_scaling(lam, 1, 2, F5)
        assert verify_equivariance(s, upper2(alpha), upper2(beta)).ok


def test_sigma_reduce_examples():
    fwd, inv = sigma_reduce(PPoly.zero(F2), "i")
    assert fwd.is_identity() and inv.is_identity()
    fwd, inv = sigma_reduce(pp(F2, 0, 1), "i")
    x0, x1, x2 = xs(F2, 3)
    assert fwd == ProjMap(F2, 3, [x0 * x2 - x1 * x1, x1 * x2, x2 * x2])
    assert verify_equivariance(fwd, a21(pp(F2, 1), pp(F2, 0, 1)), a21(pp(F2, 1), PPoly.zero(F2))).ok
    assert inverse_pair_ok(fwd, inv)


def test_sigma_reduce_each_case_is_equivariant():
    for ctx in (F2, F3):
        polys = [a for a in all_ppolys(ctx, 1) if a]
        for lam, a1, a2 in itertools.product(polys, repeat=3):
            for case in ("i", "iii"):
                fwd, inv = sigma_reduce(lam, case)
                if case == "i":
                    b = a21(a1, a2 - lam.compose(a1))
                else:
                    b = a21(a1 - lam.compose(a2), a2)
                assert verify_equivariance(fwd, a21(a1, a2), b).ok
                assert inverse_pair_ok(fwd, inv)


def test_sigma_gl2_forms():
    assert sigma_gl2([[1, 0], [0, 1]], F2).is_identity()
    x0, x1, x2 = xs(F2, 3)
    # row vector times 1 (+) transpose(Q)
    assert sigma_gl2([[1, 1], [0, 1]], F2) == ProjMap(F2, 3, [x0, x1 + x2, x2])
    with pytest.raises(SingularMatrix):
        sigma_gl2([[1, 1], [1, 1]], F2)


def test_sigma_gl2_equivariance_gf2():
    polys = list(all_ppolys(F2, 2))
    elems = [0, 1]
    qs = [[[a, b], [c, d]] for a, b, c, d in itertools.product(elems, repeat=4)
          if (a * d - b * c) % 2]
    for b1, b2 in itertools.product(polys, repeat=2):
        for q in qs:
            al = apply_gl([b1, b2], q)  # (a1 a2) = (b1 b2) Q
            s = sigma_gl2(q, F2)
            assert verify_equivariance(s, a12(*al), a12(b1, b2)).ok


def test_sigma_quadratic_points_and_inverse():
    fwd, inv = sigma_quadratic(F3)
    assert projectively_equal_points(fwd.at([1, 0, 1]), [1, 0, 1], F3)
    assert projectively_equal_points(fwd.at([0, 1, 1]), [1, 1, 1], F3)
    assert inverse_pair_ok(fwd, inv)
    with pytest.raises(WrongCharacteristic):
        sigma_quadratic(F2)


def projectively_equal_points(u, v, ctx):
    return all(ctx.mul(u[i], v[j]) == ctx.mul(u[j], v[i]) for i in range(3) for j in range(3))


def test_sigma_quadratic_equivariance():
    fwd, _ = sigma_quadratic(F3)
    assert verify_equivariance(fwd, j3(pp(F3, 1), pp(F3, 0, 1)), a21(pp(F3, 1), pp(F3, 0, 1))).ok
    for a1 in (pp(F3, 2), pp(F3, 1, 1), pp(F3, 0, 2)):
        for a2 in all_ppolys(F3, 1):
            assert verify_equivariance(fwd, j3(a1, a2), a21(a1, a2)).ok


def test_wrong_map_is_rejected():
    a = upper2(pp(F3, 1))
    b = upper2(pp(F3, 0, 1))
    rep = verify_equivariance(ProjMap.identity(F3, 2), a, b)
    assert not rep.ok and rep.residual is not None


def test_projective_equality_up_to_scalar_and_factor():
    x0, x1, x2 = xs(F3, 3)
    f = ProjMap(F3, 3, [x0, x1, x2])
    g = ProjMap(F3, 3, [(x0 * x2).scale(2), (x1 * x2).scale(2), (x2 * x2).scale(2)])
    assert projectively_equal(f, g)[0]
    assert not projectively_equal(f, ProjMap(F3, 3, [x1, x0, x2]))[0]


def test_json_round_trip_of_maps():
    fwd, _ = sigma_reduce(pp(F3, 2, 1), "iii")
    assert ProjMap.from_json(F3, fwd.to_json()) == fwd


def test_steps_and_chains():
    f = F3
    a = upper2(pp(f, 2))
    p = [[0, 1], [1, 0]]
    lower = PolyMatrix(f, [[1, 0], [[0, 2], 1]])
    s1 = conjugation_step(a, p)
    assert s1.target == lower
    assert verify_step(s1)[0]
    s2 = conjugation_step(lower, p)
    s3 = birational_step(a, upper2(pp(f, 1)), sigma_scaling(2, 1, 2, f), sigma_scaling(2, 1, 2, f))
    assert verify_step(s3)[0]
    w = Witness(a, a).then(s1).then(s2).then(s3)
    assert verify_chain(w).ok
    assert verify_chain(w.reversed()).ok
    # transitivity by concatenation of verified links
    assert verify_chain(w.concat(w.reversed())).ok
    bad = Witness(a, a).then(s2)
    rep = verify_chain(bad)
    assert not rep.ok and rep.failures[0]["step"] == 0


def test_tampered_steps_fail():
    f = F3
    a = upper2(pp(f, 1))
    b = upper2(pp(f, 2))
    s = birational_step(a, b, ProjMap.identity(f, 2), ProjMap.identity(f, 2))
    ok, why = verify_step(s)
    assert not ok and "equivariance" in why
    s = birational_step(a, b, sigma_scaling(2, 1, 2, f), ProjMap.identity(f, 2))
    ok, why = verify_step(s)
    assert not ok and "inverse" in why
    step = conjugation_step(a, linalg.identity(f, 2))
    step.p = [[f.one, f.one], [f.one, f.one]]
    assert not verify_step(step)[0]


def test_action_of_a21():
    # component i is sum_j a_ij x_j, i.e. the row vector times transpose(A)
    a1, a2 = pp(F2, 1, 1), pp(F2, 0, 1)
    act = action_of(a21(a1, a2))
    x0, x1, x2, _ = MPoly.gens(F2, action_vars(3))
    m1, m2 = (a.to_poly().to_mpoly(action_vars(3)) for a in (a1, a2))
    assert act.components == (x0 + m2 * x2, x1 + m1 * x2, x2)
