"""Tests de vértices, conos, 1-esqueleto y normales de facetas"""

from fractions import Fraction

import pytest

from models.errors import CyclicInput
from services.geometry import (
    brick_vector,
    cone_contains,
    cones,
    containing_cones,
    direction_u,
    facet_normal_count,
    facet_normal_series_count,
    in_brick_polytope,
    is_proper_k_connected,
    loday_translation,
    permutahedron_vertex,
    skeleton_orientation_check,
    vector_sum,
    zonotope_vertex,
    zonotope_weight,
)
from services.insertion import acyclic_twists, insert_permutation
from services.lattice import enumerate_twists
from services.orientations import enumerate_acyclic_orientations, recoil_scheme
from services.permutations import all_permutations


def test_permutahedron_vertex():
    assert permutahedron_vertex(1, (1, 2, 3)) == (-1, 0, 1)
    assert permutahedron_vertex(2, (3, 1, 2)) == (0, 2, -2)
    assert direction_u(4) == (3, 1, -1, -3)


def test_zonotope_weights():
    assert zonotope_weight(1, 2, 2, 4) == 4
    assert zonotope_weight(1, 3, 2, 4) == 2
    assert zonotope_weight(1, 4, 2, 4) == 0


@pytest.mark.parametrize("k,n", [(1, 3), (1, 4), (2, 4), (2, 5)])
def test_zonotope_vertices_are_centered(k, n):
    for theta in enumerate_acyclic_orientations(k, n):
        assert vector_sum(zonotope_vertex(k, theta)) == 0


@pytest.mark.parametrize("k,n", [(1, 4), (2, 4)])
def test_brick_vectors_lie_on_a_hyperplane(k, n):
    sumas = {vector_sum(brick_vector(T)) for T in acyclic_twists(k, n)}
    assert sumas == {Fraction(0)}


def test_loday_vertices_are_a_translation_of_brick_vectors():
    assert loday_translation(acyclic_twists(1, 4)) is not None


@pytest.mark.parametrize("k,n", [(1, 3), (1, 4), (2, 4)])
def test_skeleton_increases_along_u(k, n):
    assert skeleton_orientation_check(k, n)


@pytest.mark.parametrize("k", [1, 2])
def test_fan_characterizes_the_surjections(k):
    twists = acyclic_twists(k, 4)
    orientaciones = enumerate_acyclic_orientations(k, 4)
    for tau in all_permutations(4):
        assert containing_cones(tau, twists) == [insert_permutation(k, tau)]
        assert containing_cones(tau, orientaciones) == [recoil_scheme(k, tau)]


def test_cones_reject_cyclic_twists():
    ciclico = next(T for T in enumerate_twists(2, 4) if not T.is_acyclic)
    with pytest.raises(CyclicInput):
        cones(ciclico)


def test_braid_cone_of_a_permutation():
    cono = cones((2, 3, 1))
    assert cono.facet_count() == 2
    assert cono.braid_contains_point((1, -1, 0))
    assert not cono.braid_contains_point((-1, 0, 1))


@pytest.mark.parametrize(
    "k,n,esperado",
    [(1, 3, 5), (1, 4, 9), (2, 3, 6), (3, 4, 14)],
)
def test_facet_normal_counts(k, n, esperado):
    assert facet_normal_count(k, n) == esperado


@pytest.mark.parametrize("k", [1, 2, 3])
def test_facet_normals_match_generating_function(k):
    for n in range(1, 9):
        assert facet_normal_count(k, n) == facet_normal_series_count(k, n)


def test_proper_k_connected():
    assert is_proper_k_connected((1, 0, 1, 0), 2)
    assert not is_proper_k_connected((1, 0, 0, 1), 2)
    assert not is_proper_k_connected((1, 1, 1), 1)


def test_brick_polytope_membership():
    vertices = [brick_vector(T) for T in acyclic_twists(2, 4)]
    assert in_brick_polytope((0, 0, 0, 0), vertices, 2)
    assert not in_brick_polytope((100, -100, 0, 0), vertices, 2)


@pytest.mark.parametrize("k", [1, 2])
def test_cones_are_nested(k):
    for tau in all_permutations(4):
        T = insert_permutation(k, tau)
        assert cone_contains(cones(T), cones(tau))
        assert cone_contains(cones(recoil_scheme(k, tau)), cones(T))
