"""Job que tabula conteos como DataFrames de pandas"""

from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterable, List, Optional, Tuple

import pandas as pd

from config.settings import AppConfig, CountKind
from models.schemas import CountRow
from services.cambrian import alternating_signature, cambrian_count, twin_pairs
from services.geometry import facet_normal_count
from services.hopf import count_indecomposables
from services.insertion import acyclic_twists
from services.lattice import enumerate_twists, hankel_count
from services.orientations import enumerate_acyclic_orientations
from services.schroder import hypertwist_count
from utils.reporter import Reporter

Cell = Tuple[str, int, int, Optional[str], bool, int]

# nombre -> (familia, valores de k, valores de n, firmas alternadas)
TABLES: Dict[str, Tuple[CountKind, Tuple[int, ...], Tuple[int, ...], bool]] = {
    "twists": (CountKind.TWISTS, (1, 2, 3), (1, 2, 3, 4, 5, 6), False),
    "acyclic": (CountKind.ACYCLIC, (1, 2, 3), (1, 2, 3, 4, 5, 6), False),
    "orientations": (CountKind.ORIENTATIONS, (1, 2, 3), (1, 2, 3, 4, 5, 6, 7, 8), False),
    "indecomposable": (CountKind.INDECOMPOSABLE, (1, 2, 3), (1, 2, 3, 4, 5, 6), False),
    "twins": (CountKind.TWINS, (1, 2), (2, 3, 4, 5, 6), False),
    "twins-alternating": (CountKind.TWINS, (1, 2), (2, 3, 4, 5, 6), True),
    "cambrian": (CountKind.CAMBRIAN, (1, 2), (2, 3, 4, 5, 6), False),
    "hypertwists": (CountKind.HYPERTWISTS, (1, 2), (1, 2, 3, 4), False),
    "facets": (CountKind.FACETS, (1, 2, 3), (1, 2, 3, 4, 5, 6, 7, 8), False),
}


def count_value(
    kind: CountKind,
    k: int,
    n: int,
    budget: int,
    signature: Optional[str] = None,
    alternating: bool = False,
) -> int:
    """
    Conteo de una familia para (k, n)

    Raises:
        BudgetExceeded: la enumeración supera el presupuesto
    """
    kind = CountKind(kind)
    if kind == CountKind.TWISTS:
        return len(enumerate_twists(k, n, budget=budget))
    if kind == CountKind.ACYCLIC:
        return len(acyclic_twists(k, n, budget))
    if kind == CountKind.ORIENTATIONS:
        return len(enumerate_acyclic_orientations(k, n))
    if kind == CountKind.INDECOMPOSABLE:
        return count_indecomposables(k, n, budget)
    if kind == CountKind.TWINS:
        return twin_pairs(k, n, alternating)
    if kind == CountKind.CAMBRIAN:
        return cambrian_count(k, signature or alternating_signature(n))
    if kind == CountKind.HYPERTWISTS:
        return hypertwist_count(k, n)
    return facet_normal_count(k, n)


def _count_cell(cell: Cell) -> Tuple[int, int, int]:
    kind, k, n, signature, alternating, budget = cell
    return k, n, count_value(CountKind(kind), k, n, budget, signature, alternating)


class CountTableJob:
    """Job que calcula tablas de conteos (filas k, columnas n)"""

    def __init__(self, config: AppConfig, reporter: Optional[Reporter] = None):
        self.config = config
        self.reporter = reporter or Reporter(config)

    def procesar_tabla(
        self,
        kind: CountKind,
        ks: Iterable[int],
        ns: Iterable[int],
        signature: Optional[str] = None,
        alternating: bool = False,
    ) -> pd.DataFrame:
        """
        Calcula una tabla de conteos

        Args:
            kind: familia a contar
            ks: valores de k (filas)
            ns: valores de n (columnas)
            signature: firma fija para la familia cambriana
            alternating: gemelos con firmas alternadas

        Returns:
            DataFrame indexado por k con una columna por n
        """
        celdas: List[Cell] = [
            (CountKind(kind).value, k, n, signature, alternating, self.config.budget)
            for k in ks
            for n in ns
        ]
        self.reporter.inicio(f"Tabulando {CountKind(kind).value}: {len(celdas)} celdas con {self.config.jobs} procesos")

        if self.config.jobs > 1:
            with ProcessPoolExecutor(max_workers=self.config.jobs) as pool:
                resultados = list(pool.map(_count_cell, celdas))
        else:
            resultados = [_count_cell(c) for c in celdas]

        filas = [
            CountRow(kind=CountKind(kind).value, k=k, n=n, signature=signature, value=v).model_dump()
            for k, n, v in resultados
        ]
        tabla = pd.DataFrame(filas).pivot(index="k", columns="n", values="value")
        self.reporter.conteo(f"Tabla {CountKind(kind).value} lista ({tabla.shape[0]}x{tabla.shape[1]})")
        return tabla

    def procesar_tabla_nombrada(self, nombre: str) -> pd.DataFrame:
        kind, ks, ns, alternada = TABLES[nombre]
        return self.procesar_tabla(kind, ks, ns, alternating=alternada)

    def hankel_table(self, ks: Iterable[int], ns: Iterable[int]) -> pd.DataFrame:
        """Determinantes de Hankel de números de Catalan"""
        filas = [(k, n, hankel_count(k, n)) for k in ks for n in ns]
        return pd.DataFrame(filas, columns=["k", "n", "value"]).pivot(
            index="k", columns="n", values="value"
        )
