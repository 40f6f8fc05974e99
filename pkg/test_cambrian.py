"""Tests de twists cambrianos, tuplas y gemelos"""

from math import comb, factorial

import pytest

from models.errors import SizeMismatch
from services.cambrian import (
    all_signatures,
    alternating_signature,
    cambrian_brick_vectors,
    cambrian_congruence_classes,
    cambrian_count,
    cambrian_coproduct,
    cambrian_fibers,
    cambrian_insert,
    cambrian_lattice,
    cambrian_product,
    cambrian_table,
    canopy_commutes,
    equal_canopy_cyclic_union,
    is_valid_tuple,
    opposite,
    signature_counts,
    tuple_classes,
    tuple_count,
    tuple_cone_characterizes_insertion,
    tuple_fiber,
    tuple_flip_lattice,
    tuple_flips,
    tuple_insert,
    twin_pairs,
    twin_signatures,
)
from services.congruence import as_sets, is_weak_interval
from services.hopf import P_expand, product_F
from services.insertion import empty_twist, fiber, insert_permutation
from services.lattice import increasing_flip_lattice, psi_isomorphism, weak_order_lattice
from services.permutations import SignedPermutation, all_permutations


def test_signature_helpers():
    assert alternating_signature(5) == "+-+-+"
    assert alternating_signature(4, "-") == "-+-+"
    assert opposite("+--") == "-++"
    assert len(all_signatures(3)) == 8
    assert twin_signatures(3) == ("---", "+++")
    assert twin_signatures(4, alternating=True) == ("-+-+", "+-+-")


@pytest.mark.parametrize(
    "k,firma,esperado",
    [(2, "----", 22), (2, "+-++", 24), (2, "+-+-", 24), (2, "+-+-+", 114)],
)
def test_cambrian_counts(k, firma, esperado):
    assert cambrian_count(k, firma) == esperado


def test_alternating_count_k2_n6():
    # coincide con el número de clases de la congruencia cambriana
    assert cambrian_count(2, alternating_signature(6)) == 602
    assert len(cambrian_congruence_classes(2, alternating_signature(6))) == 602


def test_every_signature_gives_catalan_for_k1():
    assert {cambrian_count(1, firma) for firma in all_signatures(4)} == {14}


@pytest.mark.parametrize("k", [1, 2])
def test_alternating_count_at_n_2k_plus_1(k):
    n = 2 * k + 1
    assert cambrian_count(k, alternating_signature(n)) == factorial(n) - factorial(n - 2)


@pytest.mark.parametrize("firma", ["+-+-", "++--", "-+--"])
def test_cambrian_fibers_are_congruence_classes(firma):
    for k in (1, 2):
        fibras = cambrian_fibers(k, firma)
        assert as_sets(fibras.values()) == as_sets(cambrian_congruence_classes(k, firma))
        assert all(is_weak_interval(f) for f in fibras.values())
        for T, f in fibras.items():
            assert sorted(f) == fiber(T)


@pytest.mark.parametrize("k", [1, 2])
def test_cambrian_canopy_commutes(k):
    assert all(canopy_commutes(k, firma) for firma in all_signatures(4))


def test_cambrian_lattice():
    cociente, mapa = cambrian_lattice(2, "+-+-")
    assert len(cociente) == 24
    assert cociente.is_lattice()
    assert len(set(mapa.values())) == 24


@pytest.mark.parametrize("firma", ["+-+-", "+-++", "-++-", "++--"])
def test_cambrian_flip_order_is_the_quotient(firma):
    mapa = psi_isomorphism(2, 4, signature=firma)
    assert len(set(mapa.values())) == cambrian_count(2, firma)


def test_flips_between_far_pipes_are_not_covers():
    reticulo = increasing_flip_lattice(2, 4, signature="+-++")
    assert len(reticulo) == 24
    assert len(reticulo.hasse_edges()) == len(weak_order_lattice(4).hasse_edges())
    T = insert_permutation(2, (3, 1, 4, 2), "+-++")
    T2 = insert_permutation(2, (3, 2, 4, 1), "+-++")
    assert T2.mask in {mascara for mascara, _ in T.neighbor_masks()}
    assert not reticulo.leq(T, T2)
    assert not reticulo.leq(T2, T)


def test_cambrian_insert_uses_one_sign_vector():
    tau = SignedPermutation((2, 1, 3), ("+-+",))
    assert cambrian_insert(1, tau) == insert_permutation(1, (2, 1, 3), "+-+")
    with pytest.raises(SizeMismatch):
        cambrian_insert(1, SignedPermutation((2, 1, 3), ("+-+", "---")))


def test_cambrian_product_is_a_union_of_fibers():
    for T in cambrian_fibers(1, "+-"):
        for T2 in cambrian_fibers(1, "-"):
            producto = cambrian_product(T, T2)
            expansion = sorted(sigma for S in producto.keys() for sigma in fiber(S))
            assert expansion == sorted(product_F(P_expand(T), P_expand(T2)).keys())


def test_cambrian_coproduct_has_trivial_cuts():
    for T in cambrian_fibers(2, "+-+"):
        delta = cambrian_coproduct(T)
        assert delta.coefficient((empty_twist(2), T)) == 1
        assert delta.coefficient((T, empty_twist(2))) == 1
        assert delta.is_boolean()


@pytest.mark.parametrize("n,esperado", [(2, 2), (3, 6), (4, 22), (5, 92), (6, 422)])
def test_twin_pairs_are_baxter(n, esperado):
    assert twin_pairs(1, n) == esperado


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_alternating_twin_pairs_are_central_binomials(n):
    assert twin_pairs(1, n, alternating=True) == comb(2 * (n - 1), n - 1)


def test_twin_pairs_k2_n4():
    assert twin_pairs(2, 4) == 24


def test_tuple_fibers_are_the_classes():
    firmas = twin_signatures(4)
    clases = tuple_classes(1, firmas)
    for clase in clases:
        tupla = tuple_insert(1, SignedPermutation(clase[0], firmas))
        assert is_valid_tuple(tupla)
        assert sorted(tuple_fiber(tupla)) == list(clase)


def test_tuple_cones_characterize_insertion():
    assert tuple_cone_characterizes_insertion(1, twin_signatures(3))
    assert tuple_cone_characterizes_insertion(1, ("+-+", "-+-", "---"))


def test_tuple_flips_stay_in_the_image():
    firmas = twin_signatures(4)
    imagen = {tuple_insert(1, SignedPermutation(tau, firmas)) for tau in all_permutations(4)}
    for tupla in imagen:
        for vecina in tuple_flips(tupla):
            assert is_valid_tuple(vecina)
            assert vecina in imagen


def test_twist_with_itself_has_acyclic_union():
    T = insert_permutation(1, (2, 1, 3))
    assert not equal_canopy_cyclic_union(T, T)


def test_cambrian_table():
    tabla = cambrian_table(1, 4)
    assert tabla[(1, 4)] == 14
    assert tabla[(1, 1)] == 1


def test_signature_counts_cover_every_signature():
    conteos = signature_counts(2, 4)
    assert len(conteos) == 16
    assert conteos["----"] == 22
    assert conteos["+-+-"] == 24
    assert conteos["++++"] == conteos["----"]


def test_cambrian_brick_vectors_are_distinct():
    vectores = cambrian_brick_vectors(1, "+-+-")
    assert len(vectores) == 14
    assert len(set(vectores.values())) == 14
    assert all(len(v) == 4 for v in vectores.values())


def test_tuple_flip_lattice_of_twins():
    reticulo = tuple_flip_lattice(1, twin_signatures(4))
    assert len(reticulo) == tuple_count(1, twin_signatures(4)) == 22
    assert reticulo.is_lattice()


def test_equal_canopy_with_cyclic_union():
    T = insert_permutation(2, (2, 4, 1, 3), "----")
    T2 = insert_permutation(2, (2, 1, 4, 3), "++++")
    assert equal_canopy_cyclic_union(T, T2)
    assert not equal_canopy_cyclic_union(insert_permutation(2, (4, 2, 1, 3), "++++"), T)


@pytest.mark.parametrize("k,esperado", [(1, 0), (2, 4)])
def test_equal_canopy_cyclic_pairs_appear_from_k2(k, esperado):
    pares = [
        (T, T2)
        for T in cambrian_fibers(k, "----")
        for T2 in cambrian_fibers(k, "++++")
        if equal_canopy_cyclic_union(T, T2)
    ]
    assert len(pares) == esperado
