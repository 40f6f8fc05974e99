"""
Geometría: vértices del permutoedro, del politopo de ladrillos y del zonotopo,
conos de incidencia y de trenzas, orientación del 1-esqueleto y normales de facetas
"""

from fractions import Fraction
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import Rational, series, symbols

from models.errors import CyclicInput, CyclicTwist
from services.insertion import insert_permutation
from services.lattice import increasing_flip_lattice
from services.orientations import Orientation, enumerate_acyclic_orientations
from services.permutations import (
    Pair,
    Poset,
    all_permutations,
    identity,
    inverse,
    longest,
    weak_covers,
)
from services.twist import Twist

Vector = Tuple[Fraction, ...]


def vector_sum(v: Sequence[Fraction]) -> Fraction:
    return sum(v, Fraction(0))


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


def direction_u(n: int) -> Tuple[int, ...]:
    """U = sum (n+1-2i) e_i"""
    return tuple(n + 1 - 2 * i for i in range(1, n + 1))


# --- Permutoedro y zonotopo -------------------------------------------------


def permutahedron_vertex(k: int, tau: Sequence[int]) -> Vector:
    """k [tau^{-1}(i)] - k(n+1)/2"""
    n = len(tau)
    desplazamiento = Fraction(k * (n + 1), 2)
    return tuple(k * p - desplazamiento for p in inverse(tau))


def zonotope_weight(i: int, j: int, k: int, n: int) -> int:
    """
    Peso del segmento [e_i, e_j] en el zonotopo de G^k(n)

    Para |i - j| = k se usa m(n-k+1-m) con m = min(i, n+1-j), que es el valor
    compatible con la traslación (n-1)(n+3k-2)/6.
    """
    i, j = min(i, j), max(i, j)
    d = j - i
    if d < k:
        return n + k - 2 * d
    if d == k:
        m = min(i, n + 1 - j)
        return m * (n - k + 1 - m)
    return 0


def zonotope_vertex(k: int, theta: Orientation) -> Vector:
    """Grado de entrada ponderado de cada vértice menos (n-1)(n+3k-2)/6"""
    n = theta.n
    coordenadas = [Fraction(0)] * n
    for u, v in theta.arcs():
        coordenadas[v - 1] += zonotope_weight(u, v, k, n)
    desplazamiento = Fraction((n - 1) * (n + 3 * k - 2), 6)
    return tuple(x - desplazamiento for x in coordenadas)


# --- Vectores de ladrillos --------------------------------------------------


def _overlap(a0: float, a1: float, b0: float, b1: float) -> bool:
    return max(a0, b0) < min(a1, b1)


def brick_area(T: Twist, p: int) -> int:
    """
    Casillas bajo el pipe p dentro del rectángulo de sus extremos

    En cada columna que recorre el pipe se cuentan las casillas de la forma
    por debajo de su fila más baja que cortan el rectángulo con área positiva.
    """
    forma = T.shape
    camino = T.pipe_paths()[p]
    mas_baja: Dict[int, int] = {}
    for r, c in camino:
        mas_baja[c] = min(r, mas_baja.get(c, r))
    (x0, y0), (x1, y1) = forma.entry_point[p], forma.exit_point[p]
    xlo, xhi = min(x0, x1), max(x0, x1)
    ylo, yhi = min(y0, y1), max(y0, y1)
    area = 0
    for c, baja in mas_baja.items():
        if not _overlap(c - 1, c, xlo, xhi):
            continue
        for r in range(forma.bottom[c] + 1, baja):
            if _overlap(r - 1, r, ylo, yhi):
                area += 1
    return area


def raw_brick_vector(T: Twist) -> Tuple[int, ...]:
    return tuple(brick_area(T, p) for p in range(1, T.n + 1))


def brick_offset(k: int, signature: str) -> Vector:
    """Punto medio de los vectores crudos de los twists mínimo y máximo"""
    n = len(signature)
    firma = signature if "+" in signature else None
    minimo = raw_brick_vector(insert_permutation(k, identity(n), firma))
    maximo = raw_brick_vector(insert_permutation(k, longest(n), firma))
    return tuple(Fraction(a + b, 2) for a, b in zip(minimo, maximo))


def brick_vector(T: Twist) -> Vector:
    """Área de ladrillos de cada pipe, centrada para que la suma sea 0"""
    offset = brick_offset(T.k, T.signature)
    return tuple(a - o for a, o in zip(raw_brick_vector(T), offset))


def loday_vertex(T: Twist) -> Tuple[int, ...]:
    """
    Vértice de Loday l_i * r_i del árbol binario de un 1-twist

    El grafo de contacto (aristas hijo -> padre) es un árbol binario de
    búsqueda; l_i y r_i son las hojas de los subárboles izquierdo y derecho.
    """
    grafo = T.contact_graph()
    if not grafo.is_acyclic:
        raise CyclicTwist("Un 1-twist con ciclo no define un árbol binario")
    cierre = grafo.closure
    vertice = []
    for i in range(1, T.n + 1):
        izquierda = 1 + sum(1 for j in range(1, i) if cierre.less(j, i))
        derecha = 1 + sum(1 for j in range(i + 1, T.n + 1) if cierre.less(j, i))
        vertice.append(izquierda * derecha)
    return tuple(vertice)


def loday_translation(twists: Iterable[Twist]) -> Optional[Vector]:
    """Traslación común entre Loday y los vectores de ladrillos (None si no existe)"""
    traslaciones = {
        tuple(Fraction(a) - b for a, b in zip(loday_vertex(T), brick_vector(T)))
        for T in twists
    }
    return traslaciones.pop() if len(traslaciones) == 1 else None


# --- Conos ------------------------------------------------------------------


class PolyCone:
    """
    Cono de incidencia cone{e_i - e_j : i < j en el orden} y su polar, el cono
    de trenzas {x en H : x_i <= x_j}
    """

    __slots__ = ("poset",)

    def __init__(self, poset: Poset):
        self.poset = poset

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def relations(self) -> FrozenSet[Pair]:
        return self.poset.relations

    def braid_inequalities(self) -> List[Pair]:
        """Pares (i, j) con x_i <= x_j; son las facetas del cono de trenzas"""
        return self.poset.cover_relations()

    def facet_count(self) -> int:
        return len(self.braid_inequalities())

    def braid_contains_point(self, x: Sequence) -> bool:
        if vector_sum([Fraction(v) for v in x]) != 0:
            return False
        return all(x[i - 1] <= x[j - 1] for i, j in self.relations)

    def __eq__(self, otro) -> bool:
        return isinstance(otro, PolyCone) and self.poset == otro.poset

    def __hash__(self) -> int:
        return hash(self.poset)

    def __repr__(self) -> str:
        return f"PolyCone(n={self.n}, covers={self.poset.cover_relations()})"


def cones(x: Union[Sequence[int], Twist, Orientation]) -> PolyCone:
    """
    Cono de una permutación (cadena), de un twist acíclico (clausura del grafo
    de contacto) o de una orientación acíclica

    Raises:
        CyclicInput: el objeto no es acíclico
    """
    if isinstance(x, Twist):
        grafo = x.contact_graph()
        if not grafo.is_acyclic:
            raise CyclicInput("El twist tiene un grafo de contacto con ciclos")
        return PolyCone(grafo.closure)
    if isinstance(x, Orientation):
        return PolyCone(Poset(x.n, x.arcs()))
    return PolyCone(Poset.chain(tuple(x)))


def cone_contains(C: PolyCone, D: PolyCone) -> bool:
    """Cono de trenzas de C contiene al de D (equivale a relaciones de C en D)"""
    return C.n == D.n and C.relations <= D.relations


def containing_cones(tau: Sequence[int], familia: Iterable) -> List:
    """Elementos de la familia cuyo cono de trenzas contiene al de tau"""
    cadena = cones(tau)
    return [x for x in familia if cone_contains(cones(x), cadena)]


# --- 1-esqueleto ------------------------------------------------------------


def skeleton_orientation_check(
    k: int,
    n: int,
    flip_lattice=None,
    signature: Optional[str] = None,
) -> bool:
    """
    Las aristas del 1-esqueleto crecen en la dirección U

    Se comprueban los flips crecientes entre twists acíclicos (vectores de
    ladrillos), las coberturas del orden débil (permutoedro) y los flips
    crecientes de orientaciones (zonotopo).
    """
    U = direction_u(n)
    if flip_lattice is None:
        flip_lattice = increasing_flip_lattice(k, n, signature=signature)
    vectores = {T: brick_vector(T) for T in flip_lattice.elements}
    for a, b in flip_lattice.hasse_edges():
        if dot(U, [y - x for x, y in zip(vectores[a], vectores[b])]) <= 0:
            return False
    for tau in all_permutations(n):
        x = permutahedron_vertex(k, tau)
        for cubre in weak_covers(tau):
            y = permutahedron_vertex(k, cubre)
            if dot(U, [b - a for a, b in zip(x, y)]) <= 0:
                return False
    for theta in enumerate_acyclic_orientations(k, n):
        x = zonotope_vertex(k, theta)
        for otra in theta.increasing_flips():
            y = zonotope_vertex(k, otra)
            if dot(U, [b - a for a, b in zip(x, y)]) <= 0:
                return False
    return True


# --- Normales de facetas ----------------------------------------------------


def is_proper_k_connected(secuencia: Sequence[int], k: int) -> bool:
    """Distinta de 0^n y 1^n, sin factor 1 0^l 1 con l >= k"""
    if all(s == 0 for s in secuencia) or all(s == 1 for s in secuencia):
        return False
    ultimo_uno = None
    for pos, s in enumerate(secuencia):
        if s != 1:
            continue
        if ultimo_uno is not None and pos - ultimo_uno - 1 >= k:
            return False
        ultimo_uno = pos
    return True


def facet_normals(k: int, n: int) -> List[Tuple[int, ...]]:
    return [s for s in product((0, 1), repeat=n) if is_proper_k_connected(s, k)]


def facet_normal_count(k: int, n: int) -> int:
    return len(facet_normals(k, n))


def facet_normal_series_count(k: int, n: int) -> int:
    """Coeficiente de t^n en t^2(2-t^k) / ((1-2t+t^{k+1})(1-t))"""
    t = symbols("t")
    funcion = t**2 * (2 - t**k) / ((1 - 2 * t + t ** (k + 1)) * (1 - t))
    desarrollo = series(funcion, t, 0, n + 1).removeO()
    coeficiente = Rational(desarrollo.coeff(t, n))
    return int(coeficiente)


def in_brick_polytope(x: Sequence, vertices: Sequence[Sequence], k: int) -> bool:
    """
    x pertenece a la envolvente de los vértices: para cada normal de faceta
    su producto escalar queda entre el mínimo y el máximo sobre los vértices
    """
    n = len(x)
    if vector_sum([Fraction(v) for v in x]) != 0:
        return False
    for normal in facet_normals(k, n):
        valores = [dot(normal, v) for v in vertices]
        if not min(valores) <= dot(normal, x) <= max(valores):
            return False
    return True

