"""Formas (clásicas y cambrianas) donde viven los twists"""

from functools import lru_cache
from typing import Dict, FrozenSet, List, Tuple

from models.errors import BadSignature

Box = Tuple[int, int]

# Código de borde para los lados norte/este de una casilla
INTERIOR = -1  # la casilla vecina está en la forma
WALL = 0  # borde sin salida


class GridShape:
    """
    Forma de una familia de twists, construida con los cuatro caminos de borde

    Casillas (fila, columna): la fila r ocupa y en [r-1, r] (de abajo a arriba)
    y la columna c ocupa x en [c-1, c]. La firma "-"*n da la forma clásica
    {(r, c) : 1 <= c <= r <= n + min(c, k)}.
    """

    def __init__(self, k: int, signature: str):
        if k < 0:
            raise ValueError(f"k debe ser no negativo: {k}")
        if any(s not in "+-" for s in signature):
            raise BadSignature(f"Firma inválida: {signature!r}")
        self.k = k
        self.signature = signature
        self.n = n = len(signature)
        positivos = signature.count("+")
        negativos = n - positivos

        bottom: Dict[int, int] = {}
        top: Dict[int, int] = {}
        self.entry_west: Dict[Box, int] = {}
        self.entry_south: Dict[Box, int] = {}
        self.exit_north: Dict[Box, int] = {}
        self.exit_east: Dict[Box, int] = {}
        self.entry_point: Dict[int, Tuple[float, float]] = {}
        self.exit_point: Dict[int, Tuple[float, float]] = {}
        esquinas = set()

        # Camino de entrada: de (P, 0) a (0, M)
        x, y = positivos, 0
        for p, s in enumerate(signature, start=1):
            if s == "-":
                self.entry_west[(y + 1, x + 1)] = p
                self.entry_point[p] = (x, y + 0.5)
                y += 1
            else:
                bottom[x] = y
                self.entry_south[(y + 1, x)] = p
                self.entry_point[p] = (x - 0.5, y)
                x -= 1

        # Acordeón (NE)^{P+k} de (0, M) a (P+k, n+k)
        x, y = 0, negativos
        for _ in range(positivos + k):
            y += 1
            esquinas.add((y, x + 1))
            top[x + 1] = y
            x += 1

        # Camino de salida: de (P+k, n+k) a (n+k, M+k)
        x, y = positivos + k, n + k
        for p, s in enumerate(signature, start=1):
            if s == "-":
                top[x + 1] = y
                self.exit_north[(y, x + 1)] = p
                self.exit_point[p] = (x + 0.5, y)
                x += 1
            else:
                self.exit_east[(y, x)] = p
                self.exit_point[p] = (x, y - 0.5)
                y -= 1

        # Acordeón (EN)^{M+k} de (P, 0) a (n+k, M+k)
        x, y = positivos, 0
        for _ in range(negativos + k):
            bottom[x + 1] = y
            esquinas.add((y + 1, x + 1))
            x += 1
            y += 1

        self.columns = n + k
        self.bottom = bottom
        self.top = top
        cajas: List[Box] = [
            (r, c)
            for c in range(1, self.columns + 1)
            for r in range(bottom[c] + 1, top[c] + 1)
        ]
        # filas de abajo a arriba, columnas de izquierda a derecha
        cajas.sort()
        self.boxes: List[Box] = cajas
        self.index: Dict[Box, int] = {caja: i for i, caja in enumerate(cajas)}
        self.boundary: FrozenSet[Box] = frozenset(esquinas)
        self.interior: List[Box] = [b for b in cajas if b not in self.boundary]
        self.boundary_mask = 0
        for caja in self.boundary:
            self.boundary_mask |= 1 << self.index[caja]
        self.interior_mask = ((1 << len(cajas)) - 1) ^ self.boundary_mask

        # Tabla de rastreo: (sur, entrada_sur, oeste, entrada_oeste, norte, este)
        plan = []
        for r, c in cajas:
            sur = self.index.get((r - 1, c), -1)
            oeste = self.index.get((r, c - 1), -1)
            norte = INTERIOR if (r + 1, c) in self.index else self.exit_north.get((r, c), WALL)
            este = INTERIOR if (r, c + 1) in self.index else self.exit_east.get((r, c), WALL)
            plan.append(
                (
                    sur,
                    self.entry_south.get((r, c), 0),
                    oeste,
                    self.entry_west.get((r, c), 0),
                    norte,
                    este,
                )
            )
        self.plan: Tuple[Tuple[int, int, int, int, int, int], ...] = tuple(plan)

    @property
    def is_classical(self) -> bool:
        return "+" not in self.signature

    def __contains__(self, caja: Box) -> bool:
        return caja in self.index

    def __len__(self) -> int:
        return len(self.boxes)

    def expected_box_count(self) -> int:
        return self.k * (self.n + 1) + self.n * (self.n + 1) // 2

    def boxes_of(self, mascara: int) -> List[Box]:
        return [b for i, b in enumerate(self.boxes) if mascara >> i & 1]

    def __repr__(self) -> str:
        return f"GridShape(k={self.k}, signature={self.signature!r})"


@lru_cache(maxsize=None)
def build_shape(k: int, signature: str) -> GridShape:
    """
    Construye (y cachea) la forma de parámetro k y firma dada

    Args:
        k: parámetro de cruce
        signature: cadena sobre "+-"; "-"*n es la forma clásica

    Returns:
        GridShape inmutable compartida
    """
    return GridShape(k, signature)


def classical_shape(k: int, n: int) -> GridShape:
    return build_shape(k, "-" * n)


# --- Diagonales del polígono ------------------------------------------------

Chord = Tuple[int, int]


def box_to_chord(k: int, caja: Box) -> Chord:
    """Casilla (r, c) de la forma reducida -> diagonal [c, r+k] del (n+2k)-ágono"""
    r, c = caja
    return (c, r + k)


def chords_cross(a: Chord, b: Chord) -> bool:
    (i, j), (p, q) = a, b
    return i < p < j < q or p < i < q < j


def chord_length(m: int, cuerda: Chord) -> int:
    """Longitud cíclica de una cuerda en un m-ágono"""
    i, j = cuerda
    return min(j - i, m - (j - i))


def irrelevant_chords(k: int, m: int) -> List[Chord]:
    """Cuerdas de longitud cíclica <= k (presentes en toda k-triangulación)"""
    cuerdas = set()
    for i in range(1, m + 1):
        for d in range(1, k + 1):
            j = (i + d - 1) % m + 1
            cuerdas.add((min(i, j), max(i, j)))
    return sorted(cuerdas)
