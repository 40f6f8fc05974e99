"""Twists: rellenos de una forma con cruces y codos, rastreo de pipes y flips"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from models.errors import (
    BadEndpoint,
    BoundaryElbow,
    DoubleCrossing,
    InvariantViolation,
    NotAnElbow,
    OutOfShape,
)
from services.permutations import Poset
from services.shape import (
    INTERIOR,
    WALL,
    Box,
    Chord,
    GridShape,
    box_to_chord,
    build_shape,
    chord_length,
    chords_cross,
    irrelevant_chords,
)

ELBOW = "elbow"
CROSS = "cross"


@dataclass(frozen=True)
class Trace:
    """Resultado del rastreo de pipes de un relleno"""

    north: Tuple[int, ...]  # pipe que sale por el norte de cada casilla (0 si ninguno)
    east: Tuple[int, ...]
    arcs: Tuple[Tuple[int, int, int], ...]  # (casilla, pipe SE, pipe WN) por codo interior
    crossing: Dict[Tuple[int, int], int]  # par de pipes -> casilla del cruce


def trace_pipes(shape: GridShape, mascara: int) -> Trace:
    """
    Rastrea los n pipes de un relleno

    Args:
        shape: forma
        mascara: bits de los codos interiores (índices de shape.boxes)

    Returns:
        Trace con salidas, arcos de contacto y casillas de cruce

    Raises:
        DoubleCrossing: dos pipes se cruzan dos veces
        BadEndpoint: un pipe sale por el borde o por otra salida
    """
    codos = mascara | shape.boundary_mask
    total = len(shape.boxes)
    north = [0] * total
    east = [0] * total
    salidas = [0] * (shape.n + 1)
    arcos = []
    cruces: Dict[Tuple[int, int], int] = {}
    for idx, (sur, entra_sur, oeste, entra_oeste, norte, este) in enumerate(shape.plan):
        s = north[sur] if sur >= 0 else entra_sur
        w = east[oeste] if oeste >= 0 else entra_oeste
        if codos >> idx & 1:
            north[idx] = w
            east[idx] = s
            if not (shape.boundary_mask >> idx & 1):
                if not s or not w:
                    raise BadEndpoint(
                        f"El codo {shape.boxes[idx]} no recibe dos pipes"
                    )
                arcos.append((idx, s, w))
        else:
            if not s or not w:
                raise BadEndpoint(f"El cruce {shape.boxes[idx]} no recibe dos pipes")
            par = (s, w) if s < w else (w, s)
            if par in cruces:
                raise DoubleCrossing(
                    f"Los pipes {par[0]} y {par[1]} se cruzan dos veces "
                    f"({shape.boxes[cruces[par]]} y {shape.boxes[idx]})"
                )
            cruces[par] = idx
            north[idx] = s
            east[idx] = w
        for lado, pipe in ((norte, north[idx]), (este, east[idx])):
            if lado == INTERIOR:
                continue
            if lado == WALL:
                if pipe:
                    raise BadEndpoint(
                        f"El pipe {pipe} sale de la forma en {shape.boxes[idx]}"
                    )
            else:
                salidas[lado] = pipe
    for p in range(1, shape.n + 1):
        if salidas[p] != p:
            raise BadEndpoint(f"La salida {p} recibe el pipe {salidas[p]}")
    return Trace(tuple(north), tuple(east), tuple(arcos), cruces)


class ContactGraph:
    """Multigrafo de contacto: un arco del pipe SE al pipe WN por codo interior"""

    def __init__(self, n: int, arcs: Iterable[Tuple[int, int]]):
        self.n = n
        self.arcs: List[Tuple[int, int]] = sorted(arcs)
        self.graph = nx.MultiDiGraph()
        self.graph.add_nodes_from(range(1, n + 1))
        self.graph.add_edges_from(self.arcs)
        self.is_acyclic = nx.is_directed_acyclic_graph(self.graph)
        self.closure: Optional[Poset] = (
            Poset(n, self.arcs) if self.is_acyclic else None
        )

    def __repr__(self) -> str:
        return f"ContactGraph(n={self.n}, arcs={self.arcs})"


class Twist:
    """
    Relleno reducido de una forma (clásica o cambriana)

    La igualdad y el hash dependen solo de la forma y del conjunto de codos
    interiores; las etiquetas viajan con el objeto pero no cuentan.
    """

    __slots__ = ("shape", "mask", "labels", "_trace", "_contact")

    def __init__(
        self,
        shape: GridShape,
        mask: int,
        labels: Optional[Sequence[int]] = None,
        validate: bool = True,
    ):
        self.shape = shape
        self.mask = mask
        self.labels: Tuple[int, ...] = (
            tuple(labels) if labels is not None else tuple(range(1, shape.n + 1))
        )
        self._trace: Optional[Trace] = None
        self._contact: Optional[ContactGraph] = None
        if len(self.labels) != shape.n:
            raise InvariantViolation("Número de etiquetas distinto de n")
        if mask & ~shape.interior_mask:
            raise OutOfShape("La máscara marca casillas que no son interiores")
        if validate:
            self.trace

    # --- propiedades básicas ---

    @property
    def k(self) -> int:
        return self.shape.k

    @property
    def n(self) -> int:
        return self.shape.n

    @property
    def signature(self) -> str:
        return self.shape.signature

    @property
    def trace(self) -> Trace:
        if self._trace is None:
            self._trace = trace_pipes(self.shape, self.mask)
        return self._trace

    @property
    def elbows(self) -> List[Box]:
        """Codos interiores en orden (fila, columna)"""
        return self.shape.boxes_of(self.mask)

    @property
    def crosses(self) -> List[Box]:
        return self.shape.boxes_of(self.shape.interior_mask & ~self.mask)

    def tile(self, caja: Box) -> str:
        if caja not in self.shape:
            raise OutOfShape(f"La casilla {caja} no está en la forma")
        idx = self.shape.index[caja]
        return ELBOW if (self.mask | self.shape.boundary_mask) >> idx & 1 else CROSS

    def key(self) -> Tuple[int, str, int]:
        return (self.k, self.signature, self.mask)

    def __eq__(self, otro) -> bool:
        return isinstance(otro, Twist) and self.key() == otro.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __lt__(self, otro: "Twist") -> bool:
        return sorted(self.elbows) < sorted(otro.elbows)

    def __repr__(self) -> str:
        return f"Twist(k={self.k}, signature={self.signature!r}, elbows={self.elbows})"

    def relabel(self, labels: Sequence[int]) -> "Twist":
        nuevo = Twist(self.shape, self.mask, labels, validate=False)
        nuevo._trace = self._trace
        return nuevo

    # --- grafo de contacto ---

    def contact_arcs(self, labelled: bool = False) -> List[Tuple[int, int]]:
        """Arcos (SE -> WN) por codo interior, en posiciones 1..n o etiquetas"""
        arcos = [(s, w) for _, s, w in self.trace.arcs]
        if labelled:
            return [(self.labels[s - 1], self.labels[w - 1]) for s, w in arcos]
        return arcos

    def contact_graph(self) -> ContactGraph:
        if self._contact is None:
            self._contact = ContactGraph(self.n, self.contact_arcs())
        return self._contact

    @property
    def is_acyclic(self) -> bool:
        return self.contact_graph().is_acyclic

    # --- flips ---

    def elbow_pipes(self, caja: Box) -> Tuple[int, int]:
        """(pipe SE, pipe WN) de un codo interior"""
        if caja not in self.shape:
            raise OutOfShape(f"La casilla {caja} no está en la forma")
        idx = self.shape.index[caja]
        if self.shape.boundary_mask >> idx & 1:
            raise BoundaryElbow(f"El codo {caja} es de borde")
        if not self.mask >> idx & 1:
            raise NotAnElbow(f"La casilla {caja} es un cruce")
        for i, s, w in self.trace.arcs:
            if i == idx:
                return s, w
        raise InvariantViolation(f"Codo {caja} sin arco de contacto")

    def flip(self, caja: Box) -> "Twist":
        """
        Intercambia un codo interior con el único cruce de sus dos pipes

        Returns:
            Nuevo twist (difiere en exactamente dos casillas)
        """
        s, w = self.elbow_pipes(caja)
        cruce = self.trace.crossing[(min(s, w), max(s, w))]
        idx = self.shape.index[caja]
        return Twist(
            self.shape, self.mask ^ (1 << idx) ^ (1 << cruce), self.labels, validate=False
        )

    def flip_neighbors(self) -> List[Tuple[Box, "Twist", bool]]:
        """Todos los flips: (codo, twist resultante, es_creciente)"""
        vecinos = []
        for idx, s, w in self.trace.arcs:
            cruce = self.trace.crossing[(min(s, w), max(s, w))]
            nuevo = Twist(
                self.shape,
                self.mask ^ (1 << idx) ^ (1 << cruce),
                self.labels,
                validate=False,
            )
            vecinos.append((self.shape.boxes[idx], nuevo, s < w))
        return vecinos

    def neighbor_masks(self) -> List[Tuple[int, bool]]:
        """Máscaras vecinas por flip (versión ligera para enumeraciones)"""
        resultado = []
        cruces = self.trace.crossing
        for idx, s, w in self.trace.arcs:
            cruce = cruces[(s, w) if s < w else (w, s)]
            resultado.append((self.mask ^ (1 << idx) ^ (1 << cruce), s < w))
        return resultado

    def flip_target(self, caja: Box) -> Box:
        """Casilla del cruce que se convierte en codo al flipear `caja`"""
        s, w = self.elbow_pipes(caja)
        return self.shape.boxes[self.trace.crossing[(min(s, w), max(s, w))]]

    # --- pipes ---

    def pipe_paths(self) -> Dict[int, List[Box]]:
        """Casillas recorridas por cada pipe, de la entrada a la salida"""
        forma = self.shape
        caminos: Dict[int, List[Box]] = {}
        for p in range(1, self.n + 1):
            caminos[p] = [
                forma.boxes[i]
                for i in range(len(forma.boxes))
                if self.trace.north[i] == p or self.trace.east[i] == p
            ]
        return caminos

    def pipe_bends(self, p: int) -> Tuple[int, int]:
        """(codos SE, codos WN) del pipe p, contando los de borde"""
        forma = self.shape
        codos = self.mask | forma.boundary_mask
        se = wn = 0
        for i in range(len(forma.boxes)):
            if not codos >> i & 1:
                continue
            if self.trace.east[i] == p:
                se += 1
            elif self.trace.north[i] == p:
                wn += 1
        return se, wn

    def pipe_crossings(self, p: int) -> Tuple[int, int]:
        """(cruces horizontales, cruces verticales) del pipe p"""
        horizontales = verticales = 0
        for (a, b), idx in self.trace.crossing.items():
            if p not in (a, b):
                continue
            if self.trace.east[idx] == p:
                horizontales += 1
            else:
                verticales += 1
        return horizontales, verticales

    def is_comparable(self, p: int, q: int) -> bool:
        cierre = self.contact_graph().closure
        return cierre is not None and cierre.comparable(p, q)


def build_twist(
    k: int,
    n: int,
    interior_elbows: Iterable[Box],
    signature: Optional[str] = None,
    labels: Optional[Sequence[int]] = None,
) -> Twist:
    """
    Construye y valida un twist a partir de sus codos interiores

    Args:
        k: parámetro
        n: número de pipes
        interior_elbows: casillas (fila, columna) de los codos interiores
        signature: firma cambriana (por defecto "-"*n)

    Raises:
        OutOfShape, DoubleCrossing, BadEndpoint
    """
    firma = signature if signature is not None else "-" * n
    if len(firma) != n:
        raise InvariantViolation(f"La firma {firma!r} no tiene longitud {n}")
    forma = build_shape(k, firma)
    mascara = 0
    for caja in interior_elbows:
        caja = tuple(caja)
        if caja not in forma:
            raise OutOfShape(f"La casilla {caja} no está en la forma")
        if caja in forma.boundary:
            continue
        mascara |= 1 << forma.index[caja]
    return Twist(forma, mascara, labels)


def greedy_twist(shape: GridShape) -> Twist:
    """
    Twist que cruza siempre que los dos pipes no se han cruzado aún

    Es la subpalabra reducida lexicográfica del producto de Demazure, que es
    siempre un twist válido de la forma.
    """
    total = len(shape.boxes)
    north = [0] * total
    east = [0] * total
    cruzados = set()
    mascara = 0
    for idx, (sur, entra_sur, oeste, entra_oeste, _, _) in enumerate(shape.plan):
        s = north[sur] if sur >= 0 else entra_sur
        w = east[oeste] if oeste >= 0 else entra_oeste
        par = (min(s, w), max(s, w))
        if shape.boundary_mask >> idx & 1 or par in cruzados:
            if not shape.boundary_mask >> idx & 1:
                mascara |= 1 << idx
            north[idx], east[idx] = w, s
        else:
            cruzados.add(par)
            north[idx], east[idx] = s, w
    return Twist(shape, mascara)


# --- Diagonales -------------------------------------------------------------


def twist_to_diagonals(T: Twist, with_irrelevant: bool = False) -> FrozenSet[Chord]:
    """
    Cuerdas del (n+2k)-ágono asociadas a los codos de un twist clásico

    El codo (r, c) va a la cuerda [c, r+k]; los codos de borde dan cuerdas de
    longitud cíclica k. Con with_irrelevant se agregan todas las cuerdas de
    longitud <= k y se obtiene la k-triangulación completa.
    """
    if not T.shape.is_classical:
        raise ValueError("Las diagonales solo están definidas para formas clásicas")
    cajas = T.elbows + sorted(T.shape.boundary)
    cuerdas = {box_to_chord(T.k, caja) for caja in cajas}
    if with_irrelevant:
        cuerdas.update(irrelevant_chords(T.k, T.n + 2 * T.k))
    return frozenset(cuerdas)


def relevant_chords(k: int, m: int, cuerdas: Iterable[Chord]) -> List[Chord]:
    return sorted(c for c in cuerdas if chord_length(m, c) > k)


def is_crossing_free(cuerdas: Iterable[Chord], k: int) -> bool:
    """Ninguna familia de k+1 cuerdas se cruza dos a dos"""
    lista = list(cuerdas)
    for grupo in combinations(lista, k + 1):
        if all(chords_cross(a, b) for a, b in combinations(grupo, 2)):
            return False
    return True


def is_k_triangulation(cuerdas: Iterable[Chord], k: int, m: int) -> bool:
    """Maximal (k+1)-libre de cruces: k(2m-2k-1) cuerdas en total"""
    conjunto = set(cuerdas)
    return len(conjunto) == k * (2 * m - 2 * k - 1) and is_crossing_free(
        relevant_chords(k, m, conjunto), k
    )


