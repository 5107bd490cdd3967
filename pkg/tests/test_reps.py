"""Evaluation modules: defining relations, weights, highest weight vectors."""

import pytest

from qgelfand.scalars import Scalar, SCALARS, UFIELD, ONE, QINV, Q, Q_MINUS_QINV
from qgelfand.tmatrix import TMatrix, lift
from qgelfand.reps import (Representation, WeightError, NotEigenvectorError,
                           vector_rep, trivial_rep, tensor_product,
                           tensor_power, evaluated_L, verify_defining_relations,
                           weight_subspace, highest_weight_vector,
                           scalar_on_vector, lift_vector)


def all_pass(rows):
    bad = [(name, v.witness) for name, v in rows if not v]
    assert not bad, bad


# ---------------------------------------------------------------------------
# the vector representation
# ---------------------------------------------------------------------------

def test_vector_rep_generator_images():
    rep = vector_rep(3)
    assert rep.op("+", 1, 1) == TMatrix.diag(SCALARS, [QINV, ONE, ONE])
    assert rep.op("-", 1, 1) == TMatrix.diag(SCALARS, [Q, ONE, ONE])
    assert rep.op("+", 1, 2) == TMatrix.unit(SCALARS, 3, 1, 2,
                                             coeff=-Q_MINUS_QINV)
    assert rep.op("-", 2, 1) == TMatrix.unit(SCALARS, 3, 2, 1,
                                             coeff=Q_MINUS_QINV)
    # triangularity of the blocks themselves
    assert not rep.op("+", 3, 1)
    assert not rep.op("-", 1, 3)


def test_defining_relations_small():
    for rep in (vector_rep(1), vector_rep(2), vector_rep(3),
                tensor_power(vector_rep(2), 2)):
        all_pass(verify_defining_relations(rep))


def test_weights():
    assert vector_rep(3).weights() == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert trivial_rep(2).weights() == ((0, 0),)
    vv = tensor_power(vector_rep(2), 2)
    assert vv.weights() == ((2, 0), (1, 1), (1, 1), (0, 2))
    assert weight_subspace(vv, (1, 1)) == (1, 2)


def test_tensor_product_structure():
    a, b = vector_rep(2), vector_rep(2)
    ab = tensor_product(a, b)
    assert ab.n == 2 and ab.d == 4
    assert ab.label == "vector(2)(x)vector(2)"
    assert tensor_power(vector_rep(3), 2).d == 9
    assert tensor_power(vector_rep(2), 0).d == 1


# ---------------------------------------------------------------------------
# highest weight vectors
# ---------------------------------------------------------------------------

def test_highest_weight_vector_vector_rep():
    rep = vector_rep(2)
    v = highest_weight_vector(rep, (1, 0))
    assert v.e == [ONE, SCALARS.zero]


def test_highest_weight_vector_antisymmetric_golden():
    # the (1,1) vector in C^2 (x) C^2 is e_1(x)e_2 - q^-1 e_2(x)e_1
    vv = tensor_power(vector_rep(2), 2)
    v = highest_weight_vector(vv, (1, 1))
    assert v.e == [SCALARS.zero, ONE, -QINV, SCALARS.zero]
    w = highest_weight_vector(vv, (2, 0))
    assert w.e == [ONE, SCALARS.zero, SCALARS.zero, SCALARS.zero]


def test_highest_weight_vector_killed_by_raisers():
    rep = tensor_power(vector_rep(3), 2)
    v = highest_weight_vector(rep, (1, 1, 0))
    for i in range(1, 4):
        for j in range(i + 1, 4):
            assert not rep.op("+", i, j) * v


def test_weight_errors():
    rep = tensor_power(vector_rep(2), 2)
    with pytest.raises(WeightError, match="not dominant"):
        highest_weight_vector(rep, (0, 1))
    with pytest.raises(WeightError, match="does not occur"):
        highest_weight_vector(rep, (3, 0))
    with pytest.raises(WeightError, match="length"):
        highest_weight_vector(rep, (1, 0, 0))


def test_scalar_on_vector():
    rep = vector_rep(2)
    d = TMatrix.diag(SCALARS, [Q, Q])
    v = highest_weight_vector(rep, (1, 0))
    assert scalar_on_vector(d, v) == Q
    skew = TMatrix.unit(SCALARS, 2, 2, 1)
    with pytest.raises(NotEigenvectorError):
        scalar_on_vector(skew + d, TMatrix.column(SCALARS, [ONE, ONE]))


# ---------------------------------------------------------------------------
# evaluated operators
# ---------------------------------------------------------------------------

def test_evaluated_l():
    rep = vector_rep(2)
    u = UFIELD.gen
    lp_u = evaluated_L(rep, "+", u)
    lm_u = evaluated_L(rep, "-", u)
    assert lp_u == lift(rep.Lp, UFIELD) - lift(rep.Lm, UFIELD).scaled(u)
    assert lm_u == lift(rep.Lm, UFIELD) - lift(rep.Lp, UFIELD).scaled(
        u.inverse())
    with pytest.raises(ValueError):
        evaluated_L(rep, "x", u)


def test_lift_vector():
    rep = vector_rep(2)
    v = highest_weight_vector(rep, (1, 0))
    lv = lift_vector(v, UFIELD)
    assert lv.field is UFIELD and lv.e[0] == UFIELD.one
