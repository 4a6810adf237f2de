import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_nilpotent
from expmat import linalg
from expmat.errors import NonConstantDeterminant, NotExponential, NotNilpotent
from expmat.field import gf, rationals
from expmat.matrix import (NilMatrix, PolyMatrix, action_of, as_exponential,
                           bivariate_verdict, coproduct_verdict, det_normalize, exp_nilpotent,
                           is_exponential, jordan_partition, log_exponential, nilpotent_jordan,
                           upper_shift_block)
from expmat.poly import MPoly, Poly

Q = rationals()
F2, F3 = gf(2), gf(3)
H = Fraction(1, 2)


def shift(n):
    return NilMatrix(Q, [[1 if j == i + 1 else 0 for j in range(n)] for i in range(n)])


def test_upper_block_is_exponential():
    chk = is_exponential(PolyMatrix(Q, [[1, [0, 1]], [0, 1]]))
    assert chk.valid and chk.bivariate_ok and chk.coproduct_ok


def test_square_entry_fails_over_q_with_residual():
    chk = is_exponential(PolyMatrix(Q, [[1, [0, 0, 1]], [0, 1]]))
    rep = chk.report()
    assert not chk.valid
    assert rep["condition"] == "group-law"
    assert rep["entry"] == [1, 2]
    assert rep["residual"] == "2*T*T'"


def test_square_entry_passes_over_gf2():
    assert is_exponential(PolyMatrix(F2, [[1, [0, 0, 1]], [0, 1]])).valid


@pytest.mark.parametrize("ctx", [Q, F2, F3, gf(2, 2)], ids=repr)
def test_identity_is_exponential(ctx):
    for n in range(1, 5):
        assert is_exponential(PolyMatrix.identity(ctx, n)).valid


def test_bad_constant_term():
    chk = is_exponential(PolyMatrix(Q, [[2, 0], [0, 1]]))
    assert not chk.valid and chk.condition == "identity-at-zero"
    with pytest.raises(NotExponential):
        as_exponential(PolyMatrix(Q, [[1, [0, 0, 1]], [0, 1]]))


def test_exp_examples():
    assert exp_nilpotent(NilMatrix(Q, [[0, 0], [0, 0]])) == PolyMatrix.identity(Q, 2)
    assert exp_nilpotent(shift(2)) == PolyMatrix(Q, [[1, [0, 1]], [0, 1]])
    assert exp_nilpotent(shift(3)) == PolyMatrix(Q, [[1, [0, 1], [0, 0, H]], [0, 1, [0, 1]], [0, 0, 1]])


def test_log_examples():
    assert log_exponential(PolyMatrix.identity(Q, 3)).is_zero()
    assert log_exponential(PolyMatrix(Q, [[1, [0, 1]], [0, 1]])) == shift(2)
    m = PolyMatrix(Q, [[1, [0, 1], [0, 0, H]], [0, 1, [0, 1]], [0, 0, 1]])
    assert log_exponential(m) == shift(3)


def test_not_nilpotent():
    with pytest.raises(NotNilpotent):
        NilMatrix(Q, [[1, 0], [0, 0]])


def test_exp_matches_sympy_series(rng):
    for _ in range(20):
        n = rng.randint(2, 5)
        nil = random_nilpotent(rng, n)
        N = sympy.Matrix(n, n, lambda i, j: sympy.Rational(nil.entries[i][j].numerator,
                                                           nil.entries[i][j].denominator))
        t = sympy.Symbol("t")
        want = sympy.zeros(n, n)
        for k in range(n):
            want += (t ** k / sympy.factorial(k)) * N ** k
        got = exp_nilpotent(nil)
        for i in range(n):
            for j in range(n):
                cs = got[i, j].coeffs
                expr = sum(sympy.Rational(c.numerator, c.denominator) * t ** k for k, c in enumerate(cs))
                assert sympy.expand(expr - want[i, j]) == 0


def test_round_trip_and_det(rng):
    for _ in range(60):
        nil = random_nilpotent(rng, rng.randint(1, 5))
        a = exp_nilpotent(nil)
        assert is_exponential(a).valid
        assert a.det() == Poly.one(Q)
        assert log_exponential(a) == nil


def test_jordan_examples():
    p, j = nilpotent_jordan(NilMatrix(Q, [[0, 0], [1, 0]]))
    assert p == linalg.identity(Q, 2)
    p, j = nilpotent_jordan(shift(2))
    assert p == [[0, 1], [1, 0]]
    assert j == NilMatrix(Q, [[0, 0], [1, 0]])
    # a single 2-block placed on coordinates 0 and 2 of a 3x3
    stray = NilMatrix(Q, [[0, 0, 1], [0, 0, 0], [0, 0, 0]])
    assert jordan_partition(stray) == [2, 1]
    p, j = nilpotent_jordan(stray)
    assert j == NilMatrix(Q, [[0, 0, 0], [1, 0, 0], [0, 0, 0]])


def test_jordan_against_rank_oracle_and_sympy(rng):
    for _ in range(40):
        n = rng.randint(1, 5)
        nil = random_nilpotent(rng, n)
        p, j = nilpotent_jordan(nil)
        assert linalg.mat_mul(Q, linalg.mat_mul(Q, p, nil.entries), linalg.inverse(Q, p)) == j.entries
        sizes = []
        i = 0
        while i < n:
            k = 1
            while i + k < n and j.entries[i + k][i + k - 1] == 1:
                k += 1
            sizes.append(k)
            i += k
        assert sizes == jordan_partition(nil)
        assert sizes == sorted(sizes, reverse=True)
        # sympy's Jordan form gives the same block sizes
        S = sympy.Matrix(n, n, lambda a, b: sympy.Rational(nil.entries[a][b].numerator,
                                                           nil.entries[a][b].denominator))
        _, J = S.jordan_form()
        ones = [J[k, k + 1] for k in range(n - 1)]
        blocks, run = [], 1
        for o in ones:
            if o == 1:
                run += 1
            else:
                blocks.append(run)
                run = 1
        blocks.append(run)
        assert sorted(blocks, reverse=True) == sizes


def test_det_normalize():
    a = PolyMatrix(Q, [[1, [0, 1]], [0, 1]])
    assert det_normalize(a) == a
    assert det_normalize(PolyMatrix(Q, [[2, 0], [0, 2]])) == PolyMatrix(Q, [[H, 0], [0, H]])
    with pytest.raises(NonConstantDeterminant):
        det_normalize(PolyMatrix(Q, [[[0, 1], 0], [0, 1]]))


def test_action_examples():
    assert action_of(PolyMatrix.identity(Q, 3)).is_identity()
    act = action_of(upper_shift_block(Q, 2))
    x0, x1, T = MPoly.gens(Q, act.vars)
    assert act.components == (x0 + T * x1, x1)


def test_action_group_law(rng):
    for _ in range(15):
        a = exp_nilpotent(random_nilpotent(rng, rng.randint(2, 4)))
        act = action_of(a)
        n = a.n
        vars2 = act.vars + ("T'",)
        gens = MPoly.gens(Q, vars2)
        xs, T, Tp = gens[:n], gens[n], gens[n + 1]
        comps = [c.rename(vars2) for c in act.components]
        inner = [c.substitute(xs + [Tp, Tp]) for c in comps]
        lhs = [c.substitute(inner + [T, Tp]) for c in comps]
        rhs = [c.substitute(xs + [T + Tp, Tp]) for c in comps]
        assert lhs == rhs


def corpus():
    """Valid and invalid matrices over several fields."""
    out = []
    rng = random.Random(11)
    for _ in range(30):
        out.append(exp_nilpotent(random_nilpotent(rng, rng.randint(2, 4))))
    for ctx in (Q, F2, F3):
        for e in ([0, 1], [0, 0, 1], [0, 0, 0, 1], [0, 1, 1], [1, 1], [0, 0, 0, 0, 0, 0, 0, 0, 0, 1]):
            out.append(PolyMatrix(ctx, [[1, e], [0, 1]]))
            out.append(PolyMatrix(ctx, [[1, e, 0], [0, 1, e], [0, 0, 1]]))
    out.append(PolyMatrix(F3, [[1, [0, 1], [0, 0, 2]], [0, 1, [0, 1]], [0, 0, 1]]))
    out.append(PolyMatrix(Q, [[[1, 1], 0], [0, 1]]))
    return out


def test_two_routes_agree_on_corpus():
    for m in corpus():
        assert bivariate_verdict(m) == coproduct_verdict(m)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.lists(st.integers(0, 2), min_size=1, max_size=4), min_size=4, max_size=4))
def test_two_routes_agree_random_2x2_gf3(ents):
    m = PolyMatrix(F3, [ents[:2], ents[2:]])
    assert bivariate_verdict(m) == coproduct_verdict(m)
