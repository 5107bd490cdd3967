"""Constant R-matrices, braid/Hecke relations, q-antisymmetrizers."""

import itertools
import math
import random

from qgelfand.scalars import (Scalar, SCALARS, UFIELD, qnum, ONE,
                              Q, QINV, Q_MINUS_QINV)
from qgelfand.tmatrix import TMatrix, lift
from qgelfand.rmatrix import (build_rmatrix_set, r0, check_yang_baxter,
                              crossing_scalar, predicted_crossing_scalar,
                              f_series, f_series_residual, f1_closed_form_check,
                              antisymmetrizer, antisymmetrizer_r0_check,
                              pq_action_check, reduced_word_independence,
                              perm_compose, perm_inverse, perm_length,
                              perm_sign, reduced_word, q_perm)


def flat(n, a, b):
    return (a - 1) * n + (b - 1)


# ---------------------------------------------------------------------------
# entries and algebraic relations of the constant operators
# ---------------------------------------------------------------------------

def test_r_matrix_entries_n2():
    rset = build_rmatrix_set(2)
    r = rset.R
    assert r[flat(2, 1, 1), flat(2, 1, 1)] == Q
    assert r[flat(2, 2, 2), flat(2, 2, 2)] == Q
    assert r[flat(2, 1, 2), flat(2, 1, 2)] == ONE
    assert r[flat(2, 1, 2), flat(2, 2, 1)] == Q_MINUS_QINV
    assert r[flat(2, 2, 1), flat(2, 1, 2)] == SCALARS.zero
    rt = rset.Rtilde
    assert rt[flat(2, 1, 1), flat(2, 1, 1)] == QINV
    assert rt[flat(2, 2, 1), flat(2, 1, 2)] == -Q_MINUS_QINV
    assert rt[flat(2, 1, 2), flat(2, 2, 1)] == SCALARS.zero


def test_rtilde_is_inverse_transform():
    # R~ = R^-1 with q -> q^-1 entrywise: equivalently R R|_{q->q^-1}... the
    # robust statement is P R P = (R~ with q -> q^-1), checked entrywise
    for n in (2, 3):
        rset = build_rmatrix_set(n)
        got = rset.P * rset.R * rset.P
        expect = rset.Rtilde.map_entries(lambda s: s.subs_qinv())
        assert got == expect


def test_hecke_relation():
    # PR satisfies (PR - q)(PR + q^-1) = 0
    for n in (2, 3):
        rset = build_rmatrix_set(n)
        pr = rset.P * rset.R
        eye = TMatrix.identity(SCALARS, n * n)
        prod = (pr - eye.scaled(Q)) * (pr + eye.scaled(QINV))
        assert not prod


def test_flip_and_q_flip_squares():
    for n in (2, 3):
        rset = build_rmatrix_set(n)
        eye = TMatrix.identity(SCALARS, n * n)
        assert rset.P * rset.P == eye
        assert rset.Pq * rset.Pq == eye


def test_d_trace_is_quantum_dimension():
    for n in range(1, 5):
        d = build_rmatrix_set(n).D
        assert d.trace() == qnum(n)
        assert d[0, 0] == Scalar.q_power(n - 1)
        assert d[n - 1, n - 1] == Scalar.q_power(1 - n)


def test_r0_specialisations():
    # R - x R~ at x=1 is (q - q^-1) P, at x=q^2 it is (1-q^2) A^(2)
    for n in (2, 3):
        rset = build_rmatrix_set(n)
        u = UFIELD
        at_one = r0(n, u.one, rset)
        expect = lift(rset.P, u).scaled(u.from_coeff(Q_MINUS_QINV))
        assert at_one == expect
        assert antisymmetrizer_r0_check(n)


def test_q_operator_is_partial_transpose_of_flip():
    for n in (2, 3):
        rset = build_rmatrix_set(n)
        assert rset.Q == rset.P.partial_transpose(1)
        assert rset.Q * rset.Q == rset.Q.scaled(Scalar.from_int(n))


# ---------------------------------------------------------------------------
# Yang-Baxter, crossing, f-series
# ---------------------------------------------------------------------------

def test_yang_baxter_n2():
    v = check_yang_baxter(2)
    assert v, v.witness


def test_crossing_n1_n2():
    for n in (1, 2):
        res = crossing_scalar(n)
        assert res.proportional, res.proportional.witness
        assert res.matches_predicted, res.matches_predicted.witness


def test_crossing_predicted_scalar_at_n1():
    # for n=1 both sides are scalars and c(x) = (q - qx)(1-x)(1-q^2 x)
    # / ((q - q^-1 x)(1-q^2 x)(1-x)) = q(1-x)/(q - q^-1 x)
    x = UFIELD.gen
    got = predicted_crossing_scalar(1, x)
    qf = UFIELD.from_coeff
    expect = qf(Q) * (UFIELD.one - x) / (qf(Q) - qf(QINV) * x)
    assert got == expect


def test_f_series_residual_and_f1():
    for n in (2, 3):
        fs = f_series(n, 6)
        assert f_series_residual(fs), f_series_residual(fs).witness
        assert f1_closed_form_check(n)
    f1 = f_series(2, 1).coeffs[1]
    assert f1 == (Scalar.q_power(2) - ONE) / (Scalar.q_power(2) + ONE)


# ---------------------------------------------------------------------------
# symmetric group machinery
# ---------------------------------------------------------------------------

def test_perm_helpers_random():
    rng = random.Random(30)
    for _ in range(60):
        k = rng.randint(1, 6)
        p = list(range(1, k + 1))
        rng.shuffle(p)
        p = tuple(p)
        inv = perm_inverse(p)
        assert perm_compose(p, inv) == tuple(range(1, k + 1))
        # length counts inversions and matches the reduced word
        inversions = sum(1 for i in range(k) for j in range(i + 1, k)
                         if p[i] > p[j])
        assert perm_length(p) == inversions == len(reduced_word(p))
        assert perm_sign(p) == (-1) ** inversions
        # rebuild from the word: s_a swaps positions a, a+1 acting on the left
        q = tuple(range(1, k + 1))
        for a in reduced_word(p):
            s = tuple(a + 1 if x == a else a if x == a + 1 else x
                      for x in range(1, k + 1))
            q = perm_compose(q, s)
        assert q == p


def test_q_perm_word_independence_longest_element():
    # the two standard words for the longest element of S_3
    rset = build_rmatrix_set(2)
    w0 = (3, 2, 1)
    op1 = q_perm(w0, 2, rset, word=(1, 2, 1))
    op2 = q_perm(w0, 2, rset, word=(2, 1, 2))
    assert op1 == op2


def test_reduced_word_independence_s3():
    assert reduced_word_independence(3, 2)


def test_pq_action_formula():
    for k, n in ((2, 2), (2, 3), (3, 3)):
        assert pq_action_check(k, n)


def test_antisymmetrizer_ranks():
    for n in (2, 3):
        for k in range(1, n + 1):
            a = antisymmetrizer(k, n)
            assert a.rank() == math.comb(n, k), (k, n)
    # vanishing beyond the exterior power
    assert not antisymmetrizer(3, 2)


def test_antisymmetrizer_quasi_idempotent():
    # A^(2) P_q = -A^(2) = P_q A^(2): top-degree antisymmetry
    rset = build_rmatrix_set(2)
    a2 = antisymmetrizer(2, 2, rset)
    assert a2 * rset.Pq == -a2
    assert rset.Pq * a2 == -a2
