"""Tests de formas, twists, grafos de contacto, flips y diagonales"""

from math import comb

import pytest

from models.errors import BadEndpoint, BoundaryElbow, NotAnElbow, OutOfShape
from services.insertion import insert_permutation
from services.lattice import enumerate_twists
from services.shape import build_shape, classical_shape
from services.twist import (
    build_twist,
    greedy_twist,
    is_k_triangulation,
    relevant_chords,
    twist_to_diagonals,
)


@pytest.mark.parametrize("k,n", [(0, 3), (1, 4), (2, 3), (3, 2)])
def test_classical_box_count(k, n):
    forma = classical_shape(k, n)
    assert len(forma) == forma.expected_box_count()
    assert len(forma.boundary) == n + 2 * k


def test_zero_twist_is_the_diagonal():
    T = build_twist(0, 3, [])
    assert T.elbows == []
    assert len(T.crosses) == 3
    assert sorted(T.shape.boundary) == [(1, 1), (2, 2), (3, 3)]
    assert T.contact_arcs() == []
    assert T.is_acyclic


def test_single_pipe_zigzag():
    T = build_twist(1, 1, [])
    assert T.pipe_bends(1) == (1, 2)


@pytest.mark.parametrize("k,n", [(1, 4), (2, 4), (2, 5)])
def test_twist_invariants(k, n):
    for T in enumerate_twists(k, n):
        assert len(T.elbows) == k * (n - 1)
        assert len(T.crosses) == comb(n, 2)
        assert len(T.contact_graph().arcs) == k * (n - 1)
        for p in range(1, n + 1):
            assert T.pipe_bends(p) == (k, k + 1)
            assert sum(T.pipe_crossings(p)) == n - 1


def test_contact_closure_admits_inserted_permutation():
    T = insert_permutation(2, (3, 1, 5, 4, 2))
    assert T.is_acyclic
    assert (3, 1, 5, 4, 2) in T.contact_graph().closure.linear_extensions()


def test_flip_is_an_involution():
    for T in enumerate_twists(2, 4):
        for caja, vecino, _ in T.flip_neighbors():
            assert vecino == T.flip(caja)
            assert vecino.flip(T.flip_target(caja)) == T
            assert len(set(T.elbows) ^ set(vecino.elbows)) == 2


def test_flip_errors():
    T = greedy_twist(classical_shape(1, 3))
    with pytest.raises(NotAnElbow):
        T.flip(T.crosses[0])
    with pytest.raises(BoundaryElbow):
        T.flip(sorted(T.shape.boundary)[0])
    with pytest.raises(OutOfShape):
        T.flip((40, 40))


def test_build_twist_errors():
    with pytest.raises(OutOfShape):
        build_twist(1, 2, [(9, 9)])
    with pytest.raises(BadEndpoint):
        build_twist(0, 2, [(2, 1)])


def test_triangulations_of_the_pentagon():
    for T in enumerate_twists(1, 3):
        cuerdas = twist_to_diagonals(T, with_irrelevant=True)
        assert is_k_triangulation(cuerdas, 1, 5)
        assert len(relevant_chords(1, 5, cuerdas)) == 2


def test_zero_twist_has_no_relevant_chords():
    T = build_twist(0, 4, [])
    assert relevant_chords(0, 4, twist_to_diagonals(T)) == []


@pytest.mark.parametrize("k,n", [(1, 4), (2, 4)])
def test_multitriangulations(k, n):
    for T in enumerate_twists(k, n):
        assert is_k_triangulation(twist_to_diagonals(T, with_irrelevant=True), k, n + 2 * k)


def test_positive_signature_reflects_the_shape():
    negativa = build_shape(1, "---")
    positiva = build_shape(1, "+++")
    assert len(positiva) == len(negativa)
    assert {(c, r) for r, c in negativa.boxes} == set(positiva.boxes)


def test_close_pipes_of_acyclic_twists_are_comparable():
    for T in enumerate_twists(2, 4):
        cercanos = [(p, q) for p in range(1, 5) for q in range(p + 1, min(p + 2, 4) + 1)]
        if T.is_acyclic:
            assert all(T.is_comparable(p, q) for p, q in cercanos)
        else:
            assert not any(T.is_comparable(p, q) for p, q in cercanos)
