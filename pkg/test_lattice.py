"""Tests de enumeración de twists, conteo de Hankel y retículos de flips"""

import pytest

from models.errors import BudgetExceeded, CyclicInput
from services.congruence import congruence_classes
from services.lattice import (
    FiniteLattice,
    all_twists_flip_order,
    check_quotient_meet_join,
    cyclic_only_comparable_pairs,
    enumerate_twists,
    extremal_sublattice,
    hankel_count,
    increasing_flip_lattice,
    psi_isomorphism,
    quotient_lattice,
    weak_order_lattice,
)


@pytest.mark.parametrize(
    "k,n,esperado",
    [(1, 4, 14), (1, 5, 42), (2, 4, 84), (2, 5, 594), (3, 4, 330)],
)
def test_twist_counts_match_hankel(k, n, esperado):
    assert hankel_count(k, n) == esperado
    assert len(enumerate_twists(k, n)) == esperado


def test_enumeration_respects_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_twists(2, 5, budget=10)


def test_tamari_lattice():
    tamari = increasing_flip_lattice(1, 3)
    assert len(tamari) == 5
    assert len(tamari.hasse_edges()) == 5
    assert tamari.is_lattice()


def test_flip_lattice_k2_n4():
    reticulo = increasing_flip_lattice(2, 4)
    assert len(reticulo) == 22
    assert reticulo.is_lattice()
    mapa = psi_isomorphism(2, 4)
    assert set(mapa.values()) == set(reticulo.elements)


def test_large_k_gives_the_weak_order():
    reticulo = increasing_flip_lattice(2, 3)
    assert len(reticulo) == 6
    assert len(reticulo.hasse_edges()) == len(weak_order_lattice(3).hasse_edges())
    psi_isomorphism(2, 3)


def test_weak_order_lattice():
    debil = weak_order_lattice(3)
    assert debil.bottom() == (1, 2, 3)
    assert debil.top() == (3, 2, 1)
    assert debil.join((2, 1, 3), (1, 3, 2)) == (3, 2, 1)
    assert debil.meet((2, 3, 1), (3, 1, 2)) == (1, 2, 3)
    assert debil.is_lattice()


def test_quotient_by_sylvester_classes():
    clases = congruence_classes(1, 4)
    cociente = quotient_lattice(clases, 4)
    assert len(cociente) == 14
    assert cociente.is_lattice()
    assert check_quotient_meet_join(congruence_classes(1, 3), 3)


@pytest.mark.parametrize("which", ["min", "max"])
def test_class_extrema_form_sublattices(which):
    sub = extremal_sublattice(congruence_classes(2, 4), which)
    assert len(sub) == 22
    assert sub.is_lattice()


def test_non_lattice_and_cycles():
    v = FiniteLattice(["a", "b", "c"], [("a", "c"), ("b", "c")])
    assert not v.is_lattice()
    with pytest.raises(CyclicInput):
        FiniteLattice([1, 2], [(1, 2), (2, 1)])


def test_no_cyclic_only_pairs_for_triangulations():
    assert cyclic_only_comparable_pairs(1, 4) == []


@pytest.mark.parametrize("n,esperado", [(3, 0), (4, 1), (5, 28)])
def test_cyclic_only_pair_counts(n, esperado):
    assert len(cyclic_only_comparable_pairs(2, n)) == esperado


def test_cyclic_only_pairs_are_acyclic_and_comparable():
    todos = all_twists_flip_order(2, 4)
    acyclicos = increasing_flip_lattice(2, 4)
    pares = cyclic_only_comparable_pairs(2, 4)
    assert pares
    for a, b in pares:
        assert a.is_acyclic and b.is_acyclic
        assert todos.leq(a, b)
        assert not acyclicos.leq(a, b)
