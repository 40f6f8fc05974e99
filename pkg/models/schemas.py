from typing import List, Optional, Union

from pydantic import BaseModel, Field, field_validator


class TwistRecord(BaseModel):
    """Modelo de datos para un twist: codos interiores ordenados"""

    k: int = Field(..., ge=0)
    n: int = Field(..., ge=0)
    signature: Optional[str] = Field(None, description="Firma cambriana sobre '+-'")
    elbows: List[List[int]] = Field(default_factory=list)

    @field_validator("signature")
    @classmethod
    def validar_firma(cls, v: Optional[str]) -> Optional[str]:
        if v is not None and any(c not in "+-" for c in v):
            raise ValueError(f"Firma inválida: {v!r}")
        return v

    @field_validator("elbows")
    @classmethod
    def validar_codos(cls, v: List[List[int]]) -> List[List[int]]:
        for codo in v:
            if len(codo) != 2:
                raise ValueError(f"Cada codo es un par [fila, columna]: {codo}")
        return sorted(v)


class OrientationRecord(BaseModel):
    """Orientación (total o parcial) de G^k(n) como lista de arcos"""

    k: int = Field(..., ge=0)
    n: int = Field(..., ge=0)
    arcs: List[List[int]] = Field(default_factory=list)

    @field_validator("arcs")
    @classmethod
    def validar_arcos(cls, v: List[List[int]]) -> List[List[int]]:
        for arco in v:
            if len(arco) != 2 or arco[0] == arco[1]:
                raise ValueError(f"Arco inválido: {arco}")
        return sorted(v)


class LatticeRecord(BaseModel):
    """Orden finito: elementos en orden canónico y coberturas por índice"""

    name: str
    elements: List[str]
    covers: List[List[int]] = Field(default_factory=list)


class TermRecord(BaseModel):
    """
    Término de una suma formal; la clave tiene un componente por factor
    tensorial (texto para permutaciones y particiones, TwistRecord para twists)
    """

    key: List[Union[TwistRecord, str]]
    coefficient: int

    @field_validator("coefficient")
    @classmethod
    def validar_coeficiente(cls, v: int) -> int:
        if v == 0:
            raise ValueError("Los coeficientes nulos no se guardan")
        return v


class FormalSumRecord(BaseModel):
    family: str = Field(..., min_length=1)
    k: Optional[int] = None
    terms: List[TermRecord] = Field(default_factory=list)


class CheckResult(BaseModel):
    """Resultado de un invariante dentro de una suite de `check`"""

    suite: str
    name: str
    passed: bool
    counterexample: Optional[str] = None


class CountRow(BaseModel):
    kind: str
    k: int = Field(..., ge=0)
    n: int = Field(..., ge=0)
    signature: Optional[str] = None
    value: int = Field(..., ge=0)
