"""Tests de FQSym, el álgebra de twists (bases P, Q, E, H) y la subálgebra de recoils"""

from collections import Counter
from itertools import product

import pytest

from models.errors import InvariantViolation, MixedBasis
from services.hopf import (
    E_H_bases,
    E_basis,
    F,
    F_to_P,
    G,
    H_basis,
    P,
    Q,
    Q_coproduct,
    Q_product,
    coproduct_F,
    coproduct_G,
    coproduct_P,
    coproduct_P_via_F,
    count_indecomposables,
    expand_P,
    gf_identity_holds,
    indecomposables_from_acyclic,
    interval_bounds,
    is_E_indecomposable,
    min_fiber_has_prefix,
    pairing,
    product_F,
    product_G,
    product_P,
    product_P_sum,
    recoil_sum,
    recoil_sum_in_P,
    tensor_multiply,
)
from services.insertion import acyclic_twists, fiber, insert_permutation
from services.lattice import increasing_flip_lattice
from services.orientations import enumerate_acyclic_orientations


def test_fqsym_product_and_coproduct():
    producto = product_F(F((1, 2)), F((2, 3, 1)))
    assert len(producto) == 10
    assert producto.is_boolean()
    assert F((1, 2, 4, 5, 3)).keys()[0] in producto.keys()
    assert len(coproduct_F(F((1, 2)))) == 3
    assert coproduct_F(F((2, 1))).coefficient(((1,), (1,))) == 1


def test_dual_basis_operations():
    assert len(product_G(G((1, 2)), G((2, 3, 1)))) == 10
    delta = coproduct_G(G((3, 1, 2)))
    assert delta.coefficient(((1, 2), (1,))) == 1


def test_mixed_bases_are_rejected():
    with pytest.raises(MixedBasis):
        product_F(F((1,)), G((1,)))
    with pytest.raises(MixedBasis):
        F((1,)) + G((1,))


def test_formal_sum_arithmetic():
    x = F((1, 2)) + F((2, 1)) + F((1, 2))
    assert x.coefficient((1, 2)) == 2
    assert (x - x).is_zero()
    assert x.size_of_terms() == 3
    assert F((2, 1)).to_text() == "F[21]"


def test_fqsym_compatibility():
    a = F((2, 1))
    b = F((1,))
    izquierda = coproduct_F(product_F(a, b))
    derecha = tensor_multiply(coproduct_F(a), coproduct_F(b), product_F)
    assert izquierda == derecha


@pytest.mark.parametrize("k", [1, 2])
def test_p_product_is_an_interval(k):
    for T in acyclic_twists(k, 2):
        for T2 in acyclic_twists(k, 2):
            assert expand_P(product_P(T, T2)) == product_F(expand_P(P(T)), expand_P(P(T2)))


def test_p_product_example_size():
    T = insert_permutation(2, (1, 2))
    assert len(product_P(T, T)) == len(F_to_P(product_F(F((1, 2)), F((1, 2))), 2))


def test_coproduct_of_31542():
    T = insert_permutation(2, (3, 1, 5, 4, 2))
    delta = coproduct_P(T)
    assert len(delta) == 9
    assert delta.is_boolean()
    assert delta == coproduct_P_via_F(T)


@pytest.mark.parametrize("k,n", [(1, 4), (2, 4)])
def test_coproduct_by_cuts_matches_fqsym(k, n):
    for T in acyclic_twists(k, n):
        assert coproduct_P(T) == coproduct_P_via_F(T)


def test_f_to_p_rejects_partial_fibers():
    with pytest.raises(InvariantViolation):
        F_to_P(F((3, 1, 5, 4, 2)), 2)


def test_q_basis_is_dual_to_p():
    twists = acyclic_twists(2, 4)
    for T in twists:
        for T2 in twists:
            assert pairing(P(T), Q(T2)) == (1 if T == T2 else 0)


def test_q_operations():
    T = insert_permutation(1, (1,))
    assert len(Q_product(T, T)) == 2
    delta = Q_coproduct(insert_permutation(1, (2, 1)))
    assert len(delta) == 3


@pytest.mark.parametrize(
    "k,n,esperado",
    [(1, 5, 14), (2, 4, 11), (2, 5, 47), (3, 5, 65)],
)
def test_indecomposable_counts(k, n, esperado):
    assert count_indecomposables(k, n) == esperado


def test_indecomposability_criteria_agree():
    for T in acyclic_twists(2, 4):
        assert is_E_indecomposable(T) == (not min_fiber_has_prefix(T))


def test_generating_function_identity():
    acyclicos = [1, 1, 2, 6, 22, 92]
    indescomponibles = indecomposables_from_acyclic(acyclicos)
    assert indescomponibles == [1, 1, 3, 11, 47]
    assert gf_identity_holds(indescomponibles, acyclicos)
    assert not gf_identity_holds([1, 1, 3, 12, 47], acyclicos)


def test_multiplicative_bases():
    reticulo = increasing_flip_lattice(2, 3)
    minimo, maximo = reticulo.bottom(), reticulo.top()
    assert len(E_basis(minimo)) == len(reticulo)
    assert E_basis(maximo) == P(maximo)
    assert len(H_basis(maximo)) == len(reticulo)
    assert H_basis(minimo) == P(minimo)


def test_change_of_basis_table():
    tabla = E_H_bases(2, 3)
    assert set(tabla) == set(increasing_flip_lattice(2, 3).elements)
    for T, (E, H) in tabla.items():
        assert E == E_basis(T)
        assert H == H_basis(T)
        assert E.coefficient(T) == H.coefficient(T) == 1


@pytest.mark.parametrize("k", [1, 2])
def test_recoil_sums_live_in_the_twist_algebra(k):
    twists = acyclic_twists(k, 4)
    for theta in enumerate_acyclic_orientations(k, 4):
        assert expand_P(recoil_sum_in_P(theta, twists)) == recoil_sum(theta)


def _psi2(*taus):
    return [insert_permutation(2, tau) for tau in taus]


def test_p_product_example_k2():
    T, T2 = _psi2((1, 4, 2, 3), (2, 1))
    assert fiber(T) == [(1, 4, 2, 3), (4, 1, 2, 3)]
    producto = product_P(T, T2)
    assert len(producto) == 8
    assert producto.is_boolean()
    expansion = expand_P(producto)
    assert len(expansion) == 30
    assert expansion == product_F(F((1, 4, 2, 3), (4, 1, 2, 3)), F((2, 1)))


def test_q_product_example_k2():
    T, T2 = _psi2((1, 2), (2, 1))
    esperado = Q(
        *_psi2((1, 2, 4, 3), (1, 3, 4, 2), (1, 4, 3, 2), (2, 3, 4, 1), (2, 4, 3, 1), (3, 4, 2, 1))
    )
    assert len(esperado) == 6
    assert Q_product(T, T2) == esperado


def test_q_coproduct_of_31542():
    delta = Q_coproduct(insert_permutation(2, (3, 1, 5, 4, 2)))
    cortes = [
        ((), (3, 1, 5, 4, 2)),
        ((1,), (2, 4, 3, 1)),
        ((1, 2), (1, 3, 2)),
        ((3, 1, 2), (2, 1)),
        ((3, 1, 4, 2), (1,)),
        ((3, 1, 5, 4, 2), ()),
    ]
    assert len(delta) == 6
    for izquierda, derecha in cortes:
        assert delta.coefficient(tuple(_psi2(izquierda, derecha))) == 1


@pytest.mark.parametrize("k", [1, 2])
def test_e_basis_is_multiplicative(k):
    for n, m in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1)]:
        for T in acyclic_twists(k, n):
            for T2 in acyclic_twists(k, m):
                abajo, _ = interval_bounds(T, T2)
                assert product_P_sum(E_basis(T), E_basis(T2)) == E_basis(abajo)


def _tamanos(total):
    return [t for t in product(range(1, total), repeat=3) if sum(t) <= total]


def test_p_product_is_associative():
    for a, b, c in _tamanos(6):
        for T, T2, T3 in product(acyclic_twists(2, a), acyclic_twists(2, b), acyclic_twists(2, c)):
            izquierda = product_P_sum(product_P(T, T2), P(T3))
            derecha = product_P_sum(P(T), product_P(T2, T3))
            assert izquierda == derecha


def _iterated_coproduct(T, lado):
    resultado = Counter()
    for (a, b), coef in coproduct_P(T).items():
        partido = a if lado == "izquierda" else b
        for (x, y), coef2 in coproduct_P(partido).items():
            clave = (x, y, b) if lado == "izquierda" else (a, x, y)
            resultado[clave] += coef * coef2
    return resultado


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_p_coproduct_is_coassociative(n):
    for T in acyclic_twists(2, n):
        assert _iterated_coproduct(T, "izquierda") == _iterated_coproduct(T, "derecha")


def test_p_coproduct_is_coassociative_in_size_6():
    for T in _psi2((3, 1, 5, 4, 2, 6), (6, 1, 4, 2, 5, 3), (2, 6, 4, 1, 3, 5)):
        assert _iterated_coproduct(T, "izquierda") == _iterated_coproduct(T, "derecha")


def _delta(x):
    resultado = None
    for S, coef in x.items():
        termino = coef * coproduct_P(S)
        resultado = termino if resultado is None else resultado + termino
    return resultado


@pytest.mark.parametrize("k", [1, 2])
def test_p_product_and_coproduct_are_compatible(k):
    for n, m in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)]:
        for T in acyclic_twists(k, n):
            for T2 in acyclic_twists(k, m):
                izquierda = _delta(product_P(T, T2))
                derecha = tensor_multiply(coproduct_P(T), coproduct_P(T2), product_P_sum)
                assert izquierda == derecha


def test_generating_function_identity_through_degree_7():
    acyclicos = [1, 1, 2, 6, 22, 92, 420, 2042]
    indescomponibles = indecomposables_from_acyclic(acyclicos)
    assert indescomponibles == [1, 1, 3, 11, 47, 219, 1085]
    assert gf_identity_holds(indescomponibles, acyclicos)
    assert len(acyclic_twists(2, 6)) == 420
    assert count_indecomposables(2, 6) == 219
