"""JSON canónico para twists, orientaciones, retículos y sumas formales"""

import json
from typing import Hashable, List, Type, TypeVar

from pydantic import BaseModel, ValidationError

from models.errors import InvariantViolation, ParseError, TwistLabError
from models.schemas import (
    FormalSumRecord,
    LatticeRecord,
    OrientationRecord,
    TermRecord,
    TwistRecord,
)
from services.hopf import FormalSum, render_key
from services.lattice import FiniteLattice
from services.orientations import Orientation
from services.permutations import format_permutation, parse_permutation
from services.schroder import OrderedPartition, parse_partition
from services.shape import build_shape
from services.twist import Twist

Record = TypeVar("Record", bound=BaseModel)


def _canonical(record: BaseModel) -> str:
    return json.dumps(
        record.model_dump(exclude_none=True),
        sort_keys=True,
        separators=(",", ":"),
        ensure_ascii=False,
    )


def _load(texto: str, modelo: Type[Record]) -> Record:
    """
    Raises:
        ParseError: JSON mal formado o que no cumple el esquema
    """
    try:
        datos = json.loads(texto)
    except json.JSONDecodeError as e:
        raise ParseError(f"JSON inválido: {e.msg}", line=e.lineno) from e
    try:
        return modelo.model_validate(datos)
    except ValidationError as e:
        error = e.errors()[0]
        campo = ".".join(str(parte) for parte in error["loc"])
        raise ParseError(error["msg"], field=campo or None) from e


# --- Twists -----------------------------------------------------------------


def twist_record(T: Twist) -> TwistRecord:
    firma = T.signature if "+" in T.signature else None
    return TwistRecord(
        k=T.k, n=T.n, signature=firma, elbows=[[r, c] for r, c in T.elbows]
    )


def twist_from_record(record: TwistRecord) -> Twist:
    """
    Raises:
        InvariantViolation: un codo está fuera de la forma o el relleno no es un twist
    """
    firma = record.signature if record.signature is not None else "-" * record.n
    if len(firma) != record.n:
        raise InvariantViolation(f"La firma {firma!r} no tiene longitud {record.n}")
    forma = build_shape(record.k, firma)
    mascara = 0
    for r, c in record.elbows:
        caja = (r, c)
        if caja not in forma.index or caja in forma.boundary:
            raise InvariantViolation(f"El codo {caja} no es una casilla interior de la forma")
        mascara |= 1 << forma.index[caja]
    try:
        return Twist(forma, mascara)
    except TwistLabError as e:
        raise InvariantViolation(f"El relleno no es un twist: {e}") from e


def dumps_twist(T: Twist) -> str:
    return _canonical(twist_record(T))


def loads_twist(texto: str) -> Twist:
    return twist_from_record(_load(texto, TwistRecord))


# --- Orientaciones ----------------------------------------------------------


def dumps_orientation(theta: Orientation) -> str:
    record = OrientationRecord(
        k=theta.k, n=theta.n, arcs=[[i, j] for i, j in theta.arcs()]
    )
    return _canonical(record)


def loads_orientation(texto: str) -> Orientation:
    record = _load(texto, OrientationRecord)
    for i, j in record.arcs:
        if not (1 <= i <= record.n and 1 <= j <= record.n) or abs(i - j) > record.k:
            raise InvariantViolation(f"El arco ({i}, {j}) no es una arista de G^{record.k}({record.n})")
    return Orientation.from_arcs(record.k, record.n, [tuple(a) for a in record.arcs])


# --- Retículos ----------------------------------------------------------------


def lattice_record(nombre: str, reticulo: FiniteLattice) -> LatticeRecord:
    elementos = sorted(reticulo.elements, key=reticulo.sort_key) if reticulo.sort_key else list(reticulo.elements)
    posicion = {x: i for i, x in enumerate(elementos)}
    coberturas = sorted([posicion[a], posicion[b]] for a, b in reticulo.hasse_edges())
    return LatticeRecord(
        name=nombre, elements=[render_key(x) for x in elementos], covers=coberturas
    )


def dumps_lattice(nombre: str, reticulo: FiniteLattice) -> str:
    return _canonical(lattice_record(nombre, reticulo))


def loads_lattice(texto: str) -> FiniteLattice:
    """Retículo sobre las etiquetas de texto de sus elementos"""
    record = _load(texto, LatticeRecord)
    total = len(record.elements)
    for a, b in record.covers:
        if not (0 <= a < total and 0 <= b < total):
            raise InvariantViolation(f"Cobertura fuera de rango: [{a}, {b}]")
    return FiniteLattice(
        record.elements,
        [(record.elements[a], record.elements[b]) for a, b in record.covers],
        sort_key=record.elements.index,
    )


# --- Sumas formales -------------------------------------------------------------


def _component(clave: Hashable):
    if isinstance(clave, Twist):
        return twist_record(clave)
    if isinstance(clave, OrderedPartition):
        return str(clave)
    return format_permutation(clave)


def _parse_component(familia: str, parte):
    if isinstance(parte, TwistRecord):
        return twist_from_record(parte)
    if familia == "O":
        return parse_partition(parte)
    try:
        return parse_permutation(parte)
    except ValueError as e:
        raise ParseError(str(e), field="key") from e


def dumps_formal_sum(x: FormalSum) -> str:
    tensorial = "⊗" in x.family
    terminos = []
    for clave, coef in x.items():
        partes = clave if tensorial else (clave,)
        terminos.append(TermRecord(key=[_component(p) for p in partes], coefficient=coef))
    return _canonical(FormalSumRecord(family=x.family, k=x.k, terms=terminos))


def loads_formal_sum(texto: str) -> FormalSum:
    record = _load(texto, FormalSumRecord)
    familias: List[str] = record.family.split("⊗")
    suma = FormalSum(record.family, k=record.k)
    for termino in record.terms:
        if len(termino.key) != len(familias):
            raise ParseError("Número de factores distinto del de la familia", field="key")
        partes = tuple(_parse_component(f, p) for f, p in zip(familias, termino.key))
        suma.add_term(partes if len(partes) > 1 else partes[0], termino.coefficient)
    return suma
