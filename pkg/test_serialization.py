"""Tests del JSON canónico"""

import json

import pytest

from models.errors import InvariantViolation, ParseError
from services.hopf import F, coproduct_F, coproduct_P, product_F
from services.insertion import acyclic_twists, empty_twist, insert_permutation
from services.lattice import increasing_flip_lattice
from services.orientations import enumerate_acyclic_orientations
from services.schroder import O, coproduct_O, parse_partition
from services.serialization import (
    dumps_formal_sum,
    dumps_lattice,
    dumps_orientation,
    dumps_twist,
    loads_formal_sum,
    loads_lattice,
    loads_orientation,
    loads_twist,
)


def test_empty_twist_json():
    assert dumps_twist(empty_twist(2)) == '{"elbows":[],"k":2,"n":0}'


def test_twist_json_is_canonical():
    texto = dumps_twist(insert_permutation(1, (2, 1)))
    datos = json.loads(texto)
    assert list(datos) == sorted(datos)
    assert " " not in texto
    assert "signature" not in datos


@pytest.mark.parametrize("k,n", [(1, 4), (2, 4)])
def test_twists_survive_json(k, n):
    for T in acyclic_twists(k, n):
        assert loads_twist(dumps_twist(T)) == T


def test_cambrian_twist_keeps_its_signature():
    T = insert_permutation(1, (2, 1, 3), "+-+")
    assert json.loads(dumps_twist(T))["signature"] == "+-+"
    assert loads_twist(dumps_twist(T)) == T


@pytest.mark.parametrize(
    "texto",
    ['{"k": 1', '{"k": 1}', '{"k": -1, "n": 2}', '{"k": 1, "n": 2, "signature": "+x"}'],
)
def test_bad_twist_json_is_a_parse_error(texto):
    with pytest.raises(ParseError):
        loads_twist(texto)


def test_parse_error_names_the_field():
    with pytest.raises(ParseError) as info:
        loads_twist('{"k": 1}')
    assert info.value.field == "n"


def test_elbow_outside_shape_is_rejected():
    with pytest.raises(InvariantViolation):
        loads_twist('{"k": 1, "n": 2, "elbows": [[9, 9]]}')
    with pytest.raises(InvariantViolation):
        loads_twist('{"k": 1, "n": 2, "signature": "+", "elbows": []}')


def test_orientations_survive_json():
    for theta in enumerate_acyclic_orientations(2, 4):
        assert loads_orientation(dumps_orientation(theta)) == theta
    with pytest.raises(InvariantViolation):
        loads_orientation('{"k": 2, "n": 4, "arcs": [[1, 4]]}')
    with pytest.raises(ParseError):
        loads_orientation('{"k": 2, "n": 4, "arcs": [[1, 1]]}')


def test_lattice_json():
    texto = dumps_lattice("tamari", increasing_flip_lattice(1, 3))
    datos = json.loads(texto)
    assert datos["name"] == "tamari"
    assert len(datos["elements"]) == 5
    reticulo = loads_lattice(texto)
    assert len(reticulo) == 5
    assert len(reticulo.hasse_edges()) == 5
    assert reticulo.is_lattice()


def test_lattice_covers_must_be_in_range():
    with pytest.raises(InvariantViolation):
        loads_lattice('{"name": "x", "elements": ["a"], "covers": [[0, 3]]}')


def test_formal_sums_survive_json():
    for suma in (
        product_F(F((1, 2)), F((2, 1))),
        coproduct_F(F((2, 3, 1))),
        coproduct_P(insert_permutation(2, (3, 1, 5, 4, 2))),
        coproduct_O(O(parse_partition("2|13"))),
    ):
        assert loads_formal_sum(dumps_formal_sum(suma)) == suma


def test_formal_sum_json_checks_arity():
    with pytest.raises(ParseError):
        loads_formal_sum('{"family": "F⊗F", "terms": [{"key": ["1"], "coefficient": 1}]}')
    with pytest.raises(ParseError):
        loads_formal_sum('{"family": "F", "terms": [{"key": ["1"], "coefficient": 0}]}')
    with pytest.raises(ParseError):
        loads_formal_sum('{"family": "F", "terms": [{"key": ["22"], "coefficient": 1}]}')
