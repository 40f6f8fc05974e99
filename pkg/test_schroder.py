"""Tests de particiones ordenadas, hypertwists y el álgebra OrdPart"""

import pytest

from models.errors import BudgetExceeded, InvariantViolation, ParseError
from services.insertion import insert_permutation
from services.orientations import UNSET, recoil_scheme
from services.permutations import all_permutations
from services.schroder import (
    MAX_PARTITION_SIZE,
    O,
    OrderedPartition,
    all_ordered_partitions,
    coproduct_O,
    coproduct_is_coassociative,
    elbow_profile,
    enumerate_hypertwists,
    face_projections,
    face_triangle_commutes,
    format_partition,
    hyper_coproduct,
    hyper_fiber,
    hyper_product,
    hypertwist_congruence_classes,
    hypertwist_count,
    hypertwist_fibers,
    inclusion_chain_holds,
    insert_ordered_partition,
    parse_partition,
    partition_convolution,
    partition_weak_order,
    product_O,
    restriction_matches_flip_lattice,
    schroder_is_quotient,
    schroder_lattice,
    schroder_number,
)


def test_parse_and_format():
    particion = parse_partition("3|51|24")
    assert particion.blocks == ((3,), (1, 5), (2, 4))
    assert format_partition(particion) == "3|15|24"
    assert str(OrderedPartition.from_permutation((2, 1))) == "2|1"
    assert parse_partition("").n == 0


@pytest.mark.parametrize("texto", ["1|1", "1||2", "1a|2", "1|3"])
def test_parse_rejects_bad_partitions(texto):
    with pytest.raises(ParseError):
        parse_partition(texto)


def test_ordered_partitions_and_weak_order():
    assert len(all_ordered_partitions(3)) == 13
    reticulo = partition_weak_order(3)
    assert len(reticulo) == 13
    assert reticulo.is_lattice()
    with pytest.raises(BudgetExceeded):
        all_ordered_partitions(MAX_PARTITION_SIZE + 1)


@pytest.mark.parametrize("n,esperado", [(0, 1), (1, 1), (2, 3), (4, 75), (5, 541)])
def test_ordered_partitions_are_fubini_numbers(n, esperado):
    particiones = all_ordered_partitions(n)
    assert len(particiones) == len(set(particiones)) == esperado
    assert all(sorted(v for b in p.blocks for v in b) == list(range(1, n + 1)) for p in particiones)


def test_hypertwists_k1_n3():
    hypertwists = enumerate_hypertwists(1, 3)
    assert len(hypertwists) == 11
    assert elbow_profile(hypertwists) == {0: 1, 1: 5, 2: 5}


def test_hypertwists_k1_n4_follow_dissections():
    hypertwists = enumerate_hypertwists(1, 4)
    assert len(hypertwists) == 45
    assert elbow_profile(hypertwists) == {e: schroder_number(4, e) for e in range(4)}


def test_schroder_number():
    assert [schroder_number(3, e) for e in range(3)] == [1, 5, 5]
    assert schroder_number(3, 3) == 0
    assert schroder_number(3, -1) == 0


@pytest.mark.parametrize("k,n", [(1, 3), (2, 3)])
def test_insertion_is_onto_acyclic_hypertwists(k, n):
    assert set(hypertwist_fibers(k, n)) == set(enumerate_hypertwists(k, n))
    assert hypertwist_count(k, n) == len(hypertwist_fibers(k, n))


@pytest.mark.parametrize("k,n", [(1, 3), (2, 3)])
def test_congruence_classes_are_fibers(k, n):
    clases = {frozenset(c) for c in hypertwist_congruence_classes(k, n)}
    fibras = {frozenset(f) for f in hypertwist_fibers(k, n).values()}
    assert clases == fibras


def test_fiber_of_3_15_24():
    H = insert_ordered_partition(2, parse_partition("3|15|24"))
    assert {format_partition(lam) for lam in hyper_fiber(H)} == {"3|1|5|24", "3|15|24", "3|5|1|24"}


def test_schroder_lattice():
    reticulo = schroder_lattice(1, 3)
    assert len(reticulo) == 11
    assert reticulo.is_lattice()
    assert schroder_is_quotient(1, 3)
    assert restriction_matches_flip_lattice(1, 3)


@pytest.mark.parametrize("k", [1, 2])
def test_face_triangle_commutes(k):
    assert face_triangle_commutes(k, 3)


def test_face_projections_of_permutations_and_blocks():
    for tau in all_permutations(3):
        H, theta = face_projections(2, OrderedPartition.from_permutation(tau))
        assert H.twist == insert_permutation(2, tau)
        assert theta == recoil_scheme(2, tau)
    _, theta = face_projections(2, parse_partition("123"))
    assert set(theta.values) == {UNSET}


def test_merge_requires_contact():
    H = insert_ordered_partition(1, parse_partition("1|2|3"))
    with pytest.raises(InvariantViolation):
        H.merge((1,), (1,))


def test_ordpart_product_and_convolution():
    x, y = parse_partition("1|2"), parse_partition("2|13")
    producto = product_O(O(x), O(y))
    assert len(producto) == 13
    assert producto.is_boolean()
    convolucion = partition_convolution(x, y)
    assert len(convolucion) == 10
    assert all(len(mu.blocks) == 4 for mu in convolucion)


def test_ordpart_coproduct():
    delta = coproduct_O(O(parse_partition("2|13")))
    assert len(delta) == 3
    assert delta.coefficient((parse_partition("1"), parse_partition("12"))) == 1
    assert coproduct_is_coassociative(3)


def test_hypertwist_product():
    H = insert_ordered_partition(1, parse_partition("1"))
    assert len(hyper_product(H, H)) == 3


def test_hypertwist_coproduct():
    H = insert_ordered_partition(1, parse_partition("1"))
    vacio = insert_ordered_partition(1, parse_partition("∅"))
    delta = hyper_coproduct(H)
    assert len(delta) == 2
    assert delta.coefficient((vacio, H)) == 1
    assert delta.coefficient((H, vacio)) == 1


def test_hypertwist_algebra_inclusions():
    assert inclusion_chain_holds(1, 3)
