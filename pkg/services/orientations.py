"""Orientaciones acíclicas de G^k(n), k-recoils, k-canopy y restricciones"""

from math import factorial
from typing import Dict, Iterable, List, Sequence, Tuple

import networkx as nx

from models.errors import CyclicInput, CyclicTwist, InvariantViolation
from services.insertion import fiber, insert_permutation
from services.permutations import Perm, inverse, linear_extensions
from services.twist import Twist

FORWARD = 1  # i -> j con i < j
BACKWARD = -1  # j -> i
UNSET = 0  # sin orientar (orientaciones parciales)


def graph_edges(k: int, n: int) -> List[Tuple[int, int]]:
    """Aristas {i, j} de G^k(n): i < j <= i + k"""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, min(n, i + k) + 1)]


class Orientation:
    """
    Orientación (total o parcial) de G^k(n)

    Los valores se guardan en el orden de graph_edges(k, n): FORWARD, BACKWARD
    o UNSET.
    """

    __slots__ = ("k", "n", "values")

    def __init__(self, k: int, n: int, values: Sequence[int]):
        self.k = k
        self.n = n
        self.values: Tuple[int, ...] = tuple(values)
        if len(self.values) != len(graph_edges(k, n)):
            raise InvariantViolation("Número de valores distinto del número de aristas")

    @classmethod
    def from_arcs(cls, k: int, n: int, arcs: Iterable[Tuple[int, int]]) -> "Orientation":
        conjunto = set(arcs)
        valores = []
        for i, j in graph_edges(k, n):
            if (i, j) in conjunto:
                valores.append(FORWARD)
            elif (j, i) in conjunto:
                valores.append(BACKWARD)
            else:
                valores.append(UNSET)
        return cls(k, n, valores)

    def arcs(self) -> List[Tuple[int, int]]:
        resultado = []
        for (i, j), valor in zip(graph_edges(self.k, self.n), self.values):
            if valor == FORWARD:
                resultado.append((i, j))
            elif valor == BACKWARD:
                resultado.append((j, i))
        return resultado

    def graph(self) -> nx.DiGraph:
        grafo = nx.DiGraph()
        grafo.add_nodes_from(range(1, self.n + 1))
        grafo.add_edges_from(self.arcs())
        return grafo

    @property
    def is_acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.graph())

    def restrict(self, ell: int) -> "Orientation":
        """Restricción a G^ell(n) (subconjunto de aristas)"""
        if ell > self.k:
            raise ValueError(f"No se puede restringir de {self.k} a {ell}")
        return Orientation.from_arcs(
            ell, self.n, [(u, v) for u, v in self.arcs() if abs(u - v) <= ell]
        )

    def signs(self) -> str:
        """Vector de signos: '+' por arista orientada i -> j, '-' al revés, '0' sin orientar"""
        return "".join({FORWARD: "+", BACKWARD: "-", UNSET: "0"}[v] for v in self.values)

    def increasing_flips(self) -> List["Orientation"]:
        """Invierte una arista i -> j (i < j) manteniendo la aciclicidad"""
        resultado = []
        for pos, valor in enumerate(self.values):
            if valor != FORWARD:
                continue
            nuevos = list(self.values)
            nuevos[pos] = BACKWARD
            candidata = Orientation(self.k, self.n, nuevos)
            if candidata.is_acyclic:
                resultado.append(candidata)
        return resultado

    def __eq__(self, otra) -> bool:
        return isinstance(otra, Orientation) and (self.k, self.n, self.values) == (
            otra.k,
            otra.n,
            otra.values,
        )

    def __hash__(self) -> int:
        return hash((self.k, self.n, self.values))

    def __lt__(self, otra: "Orientation") -> bool:
        return self.values < otra.values

    def __repr__(self) -> str:
        return f"Orientation(k={self.k}, n={self.n}, signs={self.signs()!r})"


def recoil_scheme(k: int, tau: Sequence[int]) -> Orientation:
    """theta^k(tau): i -> j si |i - j| <= k y tau^{-1}(i) < tau^{-1}(j)"""
    posicion = inverse(tau)
    valores = [
        FORWARD if posicion[i - 1] < posicion[j - 1] else BACKWARD
        for i, j in graph_edges(k, len(tau))
    ]
    return Orientation(k, len(tau), valores)


def canopy(T: Twist) -> Orientation:
    """
    eta^k(T): i -> j si i precede a j en la clausura del grafo de contacto

    Raises:
        CyclicTwist: T no es acíclico
    """
    grafo = T.contact_graph()
    if not grafo.is_acyclic:
        raise CyclicTwist("El canopy solo está definido para twists acíclicos")
    cierre = grafo.closure
    valores = []
    for i, j in graph_edges(T.k, T.n):
        if cierre.less(i, j):
            valores.append(FORWARD)
        elif cierre.less(j, i):
            valores.append(BACKWARD)
        else:
            valores.append(UNSET)
    return Orientation(T.k, T.n, valores)


def orientation_count(k: int, n: int) -> int:
    """k!(k+1)^(n-k) si n >= k, n! si n <= k"""
    if n <= k:
        return factorial(n)
    return factorial(k) * (k + 1) ** (n - k)


def enumerate_acyclic_orientations(k: int, n: int) -> List[Orientation]:
    """
    Orientaciones acíclicas de G^k(n) agregando un vértice a la vez

    Al agregar m, las aristas hacia la ventana m-k..m-1 se reparten en
    entrantes y salientes; hay ciclo si algún saliente alcanza a un entrante.
    """
    # estado: (arcos, alcanzables[v] = conjunto de vértices alcanzables desde v)
    estados: List[Tuple[Tuple[Tuple[int, int], ...], Dict[int, frozenset]]] = [((), {})]
    for m in range(1, n + 1):
        ventana = list(range(max(1, m - k), m))
        nuevos = []
        for arcos, alcance in estados:
            for mascara in range(1 << len(ventana)):
                salientes = [u for b, u in enumerate(ventana) if mascara >> b & 1]
                entrantes = [u for b, u in enumerate(ventana) if not mascara >> b & 1]
                if any(
                    e == s or e in alcance[s] for s in salientes for e in entrantes
                ):
                    continue
                # m -> s para s saliente, e -> m para e entrante
                desde_m = set(salientes)
                for s in salientes:
                    desde_m |= alcance[s]
                nuevo_alcance = dict(alcance)
                nuevo_alcance[m] = frozenset(desde_m)
                llegan = set(entrantes)
                for v in list(alcance):
                    if any(e in alcance[v] for e in entrantes):
                        llegan.add(v)
                for v in llegan:
                    nuevo_alcance[v] = alcance[v] | {m} | desde_m
                nuevos_arcos = arcos + tuple((m, s) for s in salientes) + tuple(
                    (e, m) for e in entrantes
                )
                nuevos.append((nuevos_arcos, nuevo_alcance))
        estados = nuevos
    return sorted(Orientation.from_arcs(k, n, arcos) for arcos, _ in estados)


def orientation_fiber(theta: Orientation) -> List[Perm]:
    """Permutaciones con recoil theta: extensiones lineales de su clausura"""
    if not theta.is_acyclic:
        raise CyclicInput("La orientación tiene un ciclo")
    return linear_extensions(theta.graph(), theta.n)


def restrict_twist(T: Twist, ell: int) -> Twist:
    """
    Restricción de un twist acíclico de parámetro k a parámetro ell <= k

    Se reinserta cualquier extensión lineal del grafo de contacto.
    """
    if ell > T.k:
        raise ValueError(f"No se puede restringir de {T.k} a {ell}")
    if ell == T.k:
        return T
    return insert_permutation(ell, fiber(T)[0])


def restrict(x, ell: int):
    """Restricción k -> ell para twists acíclicos y orientaciones"""
    if isinstance(x, Twist):
        return restrict_twist(x, ell)
    if isinstance(x, Orientation):
        return x.restrict(ell)
    raise TypeError(f"No se puede restringir {type(x).__name__}")


def canopy_signs(T: Twist) -> str:
    """Para k = 1: vector de canopy con (i -> i+1) codificado como '+'"""
    return canopy(T).signs()
