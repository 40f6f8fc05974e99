"""Enumeración de twists, retículos finitos y el retículo de flips crecientes"""

from collections import deque
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
from sympy import Matrix, catalan

from models.errors import BudgetExceeded, CyclicInput, InvariantViolation
from services.congruence import (
    Partition,
    cambrian_classes,
    class_extrema,
    congruence_classes,
    partition_lookup,
)
from services.insertion import acyclic_twists, insert_permutation
from services.permutations import all_permutations, weak_covers, weak_leq
from services.shape import build_shape
from services.twist import Twist, greedy_twist

DEFAULT_BUDGET = 10**7


def enumerate_twists(
    k: int,
    n: int,
    acyclic_only: bool = False,
    budget: int = DEFAULT_BUDGET,
    signature: Optional[str] = None,
) -> List[Twist]:
    """
    Todos los (k, n)-twists por BFS de flips desde el twist voraz

    Args:
        k: parámetro
        n: número de pipes
        acyclic_only: devolver solo los twists acíclicos
        budget: máximo de nodos visitados
        signature: firma cambriana (por defecto "-"*n)

    Returns:
        Twists ordenados por máscara

    Raises:
        BudgetExceeded: la enumeración supera el presupuesto
    """
    firma = signature if signature is not None else "-" * n
    if acyclic_only and "+" not in firma:
        return acyclic_twists(k, n, budget)
    forma = build_shape(k, firma)
    inicio = greedy_twist(forma)
    vistos: Dict[int, Twist] = {inicio.mask: inicio}
    cola = deque([inicio])
    while cola:
        actual = cola.popleft()
        for mascara, _ in actual.neighbor_masks():
            if mascara in vistos:
                continue
            if len(vistos) >= budget:
                raise BudgetExceeded(
                    f"Más de {budget} twists al enumerar (k={k}, firma={firma!r})"
                )
            nuevo = Twist(forma, mascara, validate=False)
            vistos[mascara] = nuevo
            cola.append(nuevo)
    twists = [vistos[m] for m in sorted(vistos)]
    if acyclic_only:
        twists = [T for T in twists if T.is_acyclic]
    return twists


def hankel_count(k: int, n: int) -> int:
    """det(C_{n+2k-i-j})_{i,j in [k]}: número de (k, n)-twists"""
    hankel = Matrix(k, k, lambda i, j: catalan(n + 2 * k - i - j - 2))
    return int(hankel.det())


class FiniteLattice:
    """
    Orden finito dado por sus relaciones de cobertura (aristas bajo -> alto)

    Los conjuntos superiores e inferiores se precalculan; meet y join
    devuelven None cuando no existen.
    """

    def __init__(
        self,
        elements: Iterable[Hashable],
        covers: Iterable[Tuple[Hashable, Hashable]],
        sort_key: Optional[Callable] = None,
    ):
        self.elements = list(elements)
        self.sort_key = sort_key
        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(self.elements)
        self.graph.add_edges_from(covers)
        if self.graph.number_of_nodes() != len(self.elements):
            raise InvariantViolation("Hay relaciones con elementos desconocidos")
        if not nx.is_directed_acyclic_graph(self.graph):
            raise CyclicInput("Las relaciones de cobertura tienen un ciclo")
        self._up: Dict[Hashable, Set[Hashable]] = {}
        self._down: Dict[Hashable, Set[Hashable]] = {x: {x} for x in self.elements}
        for x in reversed(list(nx.topological_sort(self.graph))):
            arriba = {x}
            for y in self.graph.successors(x):
                arriba |= self._up[y]
            self._up[x] = arriba
        for x, arriba in self._up.items():
            for y in arriba:
                self._down[y].add(x)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._up

    def leq(self, a, b) -> bool:
        return b in self._up[a]

    def up_set(self, a) -> Set[Hashable]:
        return set(self._up[a])

    def down_set(self, a) -> Set[Hashable]:
        """Ideal principal de a"""
        return set(self._down[a])

    def hasse_edges(self) -> List[Tuple[Hashable, Hashable]]:
        aristas = nx.transitive_reduction(self.graph).edges()
        if self.sort_key is None:
            return list(aristas)
        return sorted(aristas, key=lambda e: (self.sort_key(e[0]), self.sort_key(e[1])))

    def join(self, a, b):
        cotas = self._up[a] & self._up[b]
        if not cotas:
            return None
        c = max(cotas, key=lambda x: len(self._up[x]))
        return c if cotas <= self._up[c] else None

    def meet(self, a, b):
        cotas = self._down[a] & self._down[b]
        if not cotas:
            return None
        c = max(cotas, key=lambda x: len(self._down[x]))
        return c if cotas <= self._down[c] else None

    def bottom(self):
        minimos = [x for x in self.elements if len(self._down[x]) == 1]
        return minimos[0] if len(minimos) == 1 else None

    def top(self):
        maximos = [x for x in self.elements if len(self._up[x]) == 1]
        return maximos[0] if len(maximos) == 1 else None

    def is_lattice(self) -> bool:
        """Todo par tiene meet y join (basta el join y un mínimo en un orden finito)"""
        if not self.elements:
            return True
        if self.bottom() is None:
            return False
        for i, a in enumerate(self.elements):
            for b in self.elements[i + 1 :]:
                if self.join(a, b) is None:
                    return False
        return True

    def is_isomorphic_via(self, otro: "FiniteLattice", mapa: Dict) -> bool:
        """mapa es una biyección que preserva y refleja el orden"""
        if len(set(mapa.values())) != len(self) or len(otro) != len(self):
            return False
        if set(mapa) != set(self.elements) or set(mapa.values()) != set(otro.elements):
            return False
        return all(
            self.leq(a, b) == otro.leq(mapa[a], mapa[b])
            for a in self.elements
            for b in self.elements
        )

    def __repr__(self) -> str:
        return f"FiniteLattice({len(self)} elementos, {len(self.hasse_edges())} coberturas)"


def weak_order_lattice(n: int) -> FiniteLattice:
    permutaciones = all_permutations(n)
    return FiniteLattice(
        permutaciones,
        ((tau, cubre) for tau in permutaciones for cubre in weak_covers(tau)),
        sort_key=lambda tau: tau,
    )


def quotient_lattice(particion: Partition, n: int) -> FiniteLattice:
    """
    Cociente del orden débil por una partición en intervalos

    Los elementos son los índices de las clases; X <= Y si hay una cobertura
    del orden débil de un elemento de X a uno de Y (cerrado transitivamente).
    """
    indice = partition_lookup(particion)
    coberturas = set()
    for tau in all_permutations(n):
        for cubre in weak_covers(tau):
            a, b = indice[tau], indice[cubre]
            if a != b:
                coberturas.add((a, b))
    return FiniteLattice(range(len(particion)), sorted(coberturas), sort_key=int)


def _classes(k: int, n: int, signature: Optional[str]) -> Partition:
    if signature is None or "+" not in signature:
        return congruence_classes(k, n)
    return cambrian_classes(k, signature)


def increasing_flip_lattice(
    k: int,
    n: int,
    budget: int = DEFAULT_BUDGET,
    signature: Optional[str] = None,
) -> FiniteLattice:
    """
    Clausura transitiva de los flips crecientes entre twists acíclicos

    Solo cuentan los flips cuyo arco de contacto es una cobertura del orden
    de contacto. Con firmas no constantes (k >= 2) hay flips entre acíclicos
    que intercambian pipes nunca consecutivos en una extensión lineal, p.ej.
    psi^2(3142) -> psi^2(3241) con firma +-++; esos flips no son aristas del
    cociente y se descartan. Para twists clásicos todos los flips entre
    acíclicos son coberturas.

    Raises:
        BudgetExceeded
    """
    acyclicos = enumerate_twists(k, n, acyclic_only=True, budget=budget, signature=signature)
    return _flip_lattice(acyclicos, covers_only=True)


def _flip_lattice(twists: Sequence[Twist], covers_only: bool = False) -> FiniteLattice:
    por_mascara = {T.mask: T for T in twists}
    coberturas = []
    for T in twists:
        arcos = [(s, w) for _, s, w in T.trace.arcs]
        cubiertos = set(T.contact_graph().closure.cover_relations()) if covers_only else None
        for arco, (mascara, creciente) in zip(arcos, T.neighbor_masks()):
            if not creciente or mascara not in por_mascara:
                continue
            if cubiertos is None or arco in cubiertos:
                coberturas.append((T, por_mascara[mascara]))
    return FiniteLattice(twists, coberturas, sort_key=lambda T: T.mask)


def all_twists_flip_order(
    k: int, n: int, budget: int = DEFAULT_BUDGET, signature: Optional[str] = None
) -> FiniteLattice:
    """Orden de flips crecientes sobre todos los twists (no es un retículo en general)"""
    return _flip_lattice(enumerate_twists(k, n, budget=budget, signature=signature))


def psi_isomorphism(
    k: int, n: int, budget: int = DEFAULT_BUDGET, signature: Optional[str] = None
) -> Dict[int, Twist]:
    """
    Certificado de que psi^k induce un isomorfismo S_n/≡ -> flips crecientes

    Returns:
        índice de clase -> twist acíclico

    Raises:
        InvariantViolation: el mapa no es una biyección que preserve el orden
    """
    particion = _classes(k, n, signature)
    cociente = quotient_lattice(particion, n)
    flips = increasing_flip_lattice(k, n, budget, signature)
    mapa: Dict[int, Twist] = {}
    for i, clase in enumerate(particion):
        imagenes = {insert_permutation(k, tau, signature) for tau in clase}
        if len(imagenes) != 1:
            raise InvariantViolation(f"La clase {i} tiene {len(imagenes)} imágenes por psi")
        mapa[i] = imagenes.pop()
    if not cociente.is_isomorphic_via(flips, mapa):
        raise InvariantViolation("psi no induce un isomorfismo de órdenes")
    return mapa


def extremal_sublattice(particion: Partition, which: str = "min") -> FiniteLattice:
    """Subretículo del orden débil inducido por los mínimos (o máximos) de las clases"""
    posicion = 0 if which == "min" else 1
    representantes = [class_extrema(c)[posicion] for c in particion]
    coberturas = [
        (a, b)
        for a in representantes
        for b in representantes
        if a != b and weak_leq(a, b)
    ]
    orden = FiniteLattice(representantes, coberturas, sort_key=lambda tau: tau)
    return FiniteLattice(orden.elements, orden.hasse_edges(), sort_key=lambda tau: tau)


def check_quotient_meet_join(particion: Partition, n: int) -> bool:
    """
    meet/join del cociente coinciden con la proyección de meet/join de
    representantes arbitrarios
    """
    debil = weak_order_lattice(n)
    cociente = quotient_lattice(particion, n)
    indice = partition_lookup(particion)
    permutaciones = all_permutations(n)
    for a in permutaciones:
        for b in permutaciones:
            if indice[debil.meet(a, b)] != cociente.meet(indice[a], indice[b]):
                return False
            if indice[debil.join(a, b)] != cociente.join(indice[a], indice[b]):
                return False
    return True


def cyclic_only_comparable_pairs(
    k: int, n: int, budget: int = DEFAULT_BUDGET
) -> List[Tuple[Twist, Twist]]:
    """
    Pares de twists acíclicos comparables por flips crecientes en el conjunto
    de todos los twists pero no dentro de los acíclicos
    """
    todos = all_twists_flip_order(k, n, budget)
    acyclicos = [T for T in todos.elements if T.is_acyclic]
    restringido = _flip_lattice(acyclicos)
    pares = []
    for a in acyclicos:
        for b in acyclicos:
            if a != b and todos.leq(a, b) and not restringido.leq(a, b):
                pares.append((a, b))
    return sorted(pares, key=lambda par: (par[0].mask, par[1].mask))

