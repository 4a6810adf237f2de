import random
from fractions import Fraction

import pytest

from expmat.birat import ProjMap, action_vars, inverse_pair_ok, verify_equivariance
from expmat.errors import BadDerivationShape, WrongCharacteristic
from expmat.field import gf, rationals
from expmat.lnd import LinDerivation, derive, flow, sigma_slice
from expmat.matrix import NilMatrix, PolyMatrix, exp_nilpotent
from expmat.poly import LocElem, MPoly, Poly

Q = rationals()
H = Fraction(1, 2)


def gens(n):
    return MPoly.gens(Q, action_vars(n))


def chain_derivation(n):
    """x0 d/dx1 + x1 d/dx2 + ... (the full lower shift)."""
    return LinDerivation.from_matrix(Q, [[1 if j == i - 1 else 0 for j in range(n)] for i in range(n)])


def random_derivation(rng, n):
    mat = [[0] * n for _ in range(n)]
    mat[1][0] = 1
    for i in range(2, n):
        for j in range(i):
            mat[i][j] = Fraction(rng.randint(-2, 2))
    return LinDerivation.from_matrix(Q, mat)


def lower_standard(n):
    ents = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    ents[1][0] = [0, 1]
    return PolyMatrix(Q, ents)


def test_derive_examples():
    d = chain_derivation(3)
    x0, x1, x2, _ = gens(3)
    assert derive(d, x0).is_zero()
    assert derive(d, x1 * x1) == (x0 * x1).scale(2)
    assert derive(d, LocElem(x1, 1, 0)) == LocElem(x0, 1, 0)
    assert derive(d, LocElem(x1, 1, 0)) == 1


def test_flow_examples():
    d = chain_derivation(2)
    x0, x1, T = gens(2)
    assert flow(d, x0, Poly.T(Q)) == x0
    assert flow(d, x1, Poly.T(Q)) == x1 + T * x0


def test_flow_group_law_symbolic():
    rng = random.Random(5)
    for n in range(2, 6):
        for d in (chain_derivation(n), random_derivation(rng, n)):
            vars2 = action_vars(n) + ("T'",)
            g = MPoly.gens(Q, vars2)
            T, Tp = g[n], g[n + 1]
            for i in range(n):
                xi = g[i]
                lhs = flow(d, xi, T + Tp)
                inner = [flow(d, g[j], Tp) for j in range(n)]
                rhs = flow(d, xi, T).substitute(inner + [T, Tp])
                assert lhs == rhs


def test_flow_is_ring_homomorphism():
    rng = random.Random(9)
    d = random_derivation(rng, 4)
    xs = gens(4)
    T = Poly.T(Q)
    for _ in range(30):
        f = sum((xs[rng.randrange(4)] * xs[rng.randrange(4)]).scale(rng.randint(-3, 3))
                for _ in range(3))
        g = xs[rng.randrange(4)] + rng.randint(-2, 2)
        assert flow(d, f * g, T) == flow(d, f, T) * flow(d, g, T)
        assert flow(d, f + g, T) == flow(d, f, T) + flow(d, g, T)


def test_bad_shapes():
    with pytest.raises(BadDerivationShape):
        LinDerivation.from_matrix(Q, [[0, 0], [2, 0]])  # D(x1) != x0
    with pytest.raises(BadDerivationShape):
        LinDerivation.from_matrix(Q, [[0, 0, 0], [1, 0, 0], [0, 0, 1]])
    with pytest.raises(WrongCharacteristic):
        LinDerivation.from_matrix(gf(3), [[0, 0], [1, 0]])


def test_sigma_n2_is_identity():
    fwd, inv = sigma_slice(chain_derivation(2))
    assert fwd.is_identity() and inv.is_identity()


def test_sigma_n3_components():
    fwd, inv = sigma_slice(chain_derivation(3))
    x0, x1, x2, _ = gens(3)
    want = ProjMap(Q, 3, [x0 * x0, x0 * x1, x0 * x2 - (x1 * x1).scale(H)])
    assert fwd == want


def test_sigma_straightens_the_action():
    rng = random.Random(17)
    for n in range(2, 6):
        for d in (chain_derivation(n), random_derivation(rng, n)):
            a = exp_nilpotent(NilMatrix(Q, d.matrix))
            fwd, inv = sigma_slice(d)
            assert verify_equivariance(fwd, a, lower_standard(n)).ok
            assert inverse_pair_ok(fwd, inv)
