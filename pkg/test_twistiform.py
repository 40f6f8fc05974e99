"""Tests de las operaciones k-twistiformes"""

import pytest

from models.errors import BadOperatorLength
from services.hopf import F, product_F
from services.insertion import acyclic_twists
from services.twistiform import (
    associativity_relations,
    mirrored_op_words,
    mirrored_stability_check,
    op_words,
    split_relations,
    twistiform_op,
    twistiform_relations_check,
)


def test_words_for_single_letters():
    assert op_words("l", (1,), (1,)) == [(1, 2)]
    assert op_words("r", (1,), (1,)) == [(2, 1)]
    assert op_words("m", (1,), (1,)) == [(1, 2), (2, 1)]
    assert mirrored_op_words("l", (1,), (1, 2)) == [(2, 3, 1)]


def test_relation_counts():
    assert len(split_relations(1)) == 1
    assert len(split_relations(2)) == 6
    assert len(associativity_relations(2)) == 9


def test_dendriform_split_recovers_the_product():
    x, y = F((2, 1)), F((1, 2))
    suma = twistiform_op("l", x, y, 1) + twistiform_op("r", x, y, 1)
    assert suma == product_F(x, y)
    assert twistiform_op("m", x, y, 1) == product_F(x, y)


def test_operator_length_is_checked():
    with pytest.raises(BadOperatorLength):
        twistiform_op("lm", F((1,)), F((1,)), 1)
    with pytest.raises(BadOperatorLength):
        twistiform_op("x", F((1,)), F((1,)), 1)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_relations_hold(k):
    assert twistiform_relations_check(k, 2)


def test_operations_vanish_on_short_words():
    x, y = F((1,)), F((1,))
    for m, l, r in split_relations(3):
        for op in (m, l, r):
            assert twistiform_op(op, x, y, 3).is_zero()
    assert twistiform_op("mm", x, y, 2) == product_F(x, y)
    assert not product_F(x, y).is_zero()


@pytest.mark.parametrize("k,n,m", [(1, 1, 2), (1, 2, 2), (2, 1, 3), (2, 2, 2)])
def test_mirrored_operators_stabilize_twists(k, n, m):
    assert mirrored_stability_check(acyclic_twists(k, n), acyclic_twists(k, m))
