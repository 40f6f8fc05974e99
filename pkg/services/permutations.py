"""Permutaciones, permutaciones con signo, órdenes parciales y orden débil"""

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from models.errors import BadSignature, CyclicInput, SizeMismatch

Perm = Tuple[int, ...]
Pair = Tuple[int, int]


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def longest(n: int) -> Perm:
    return tuple(range(n, 0, -1))


def all_permutations(n: int) -> List[Perm]:
    """Todas las permutaciones de [n] en orden lexicográfico"""
    return list(permutations(range(1, n + 1)))


def parse_permutation(texto: str) -> Perm:
    """
    Lee una permutación en notación de una línea

    Acepta "31542" (valores de un dígito) o "3,1,5,4,2".

    Returns:
        Tupla con los valores
    """
    texto = texto.strip()
    if not texto:
        return ()
    if "," in texto or " " in texto:
        partes = [p for p in texto.replace(",", " ").split() if p]
        valores = tuple(int(p) for p in partes)
    else:
        valores = tuple(int(c) for c in texto)
    if sorted(valores) != list(range(1, len(valores) + 1)):
        raise ValueError(f"No es una permutación: {texto}")
    return valores


def format_permutation(tau: Sequence[int]) -> str:
    if len(tau) > 9:
        return ",".join(str(v) for v in tau)
    return "".join(str(v) for v in tau)


def inverse(tau: Sequence[int]) -> Perm:
    """Posiciones (1..n) de cada valor: inverse(tau)[v-1] = tau^{-1}(v)"""
    inv = [0] * len(tau)
    for pos, valor in enumerate(tau, start=1):
        inv[valor - 1] = pos
    return tuple(inv)


def standardize(secuencia: Sequence[int]) -> Perm:
    """Relabel de una palabra de valores distintos a una permutación de [m]"""
    orden = {valor: i for i, valor in enumerate(sorted(secuencia), start=1)}
    return tuple(orden[v] for v in secuencia)


def shift(tau: Sequence[int], m: int) -> Perm:
    return tuple(v + m for v in tau)


def coinversions(tau: Sequence[int]) -> FrozenSet[Pair]:
    """Pares i < j con tau^{-1}(i) > tau^{-1}(j)"""
    inv = inverse(tau)
    n = len(tau)
    return frozenset(
        (i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if inv[i - 1] > inv[j - 1]
    )


def weak_leq(tau: Sequence[int], tau2: Sequence[int]) -> bool:
    """Orden débil (derecho): inclusión de coinversiones"""
    if len(tau) != len(tau2):
        raise SizeMismatch(f"Tamaños distintos: {len(tau)} y {len(tau2)}")
    return coinversions(tau) <= coinversions(tau2)


def weak_covers(tau: Sequence[int]) -> List[Perm]:
    """Permutaciones que cubren a tau (se intercambia un ascenso adyacente)"""
    resultado = []
    for i in range(len(tau) - 1):
        if tau[i] < tau[i + 1]:
            nueva = list(tau)
            nueva[i], nueva[i + 1] = nueva[i + 1], nueva[i]
            resultado.append(tuple(nueva))
    return resultado


def descents(tau: Sequence[int]) -> List[int]:
    """Posiciones i (1..n-1) con tau_i > tau_{i+1}"""
    return [i for i in range(1, len(tau)) if tau[i - 1] > tau[i]]


# --- Permutaciones con signo ------------------------------------------------


def parse_signature(texto: str) -> str:
    """Normaliza una firma: admite '+', '-' y el signo menos tipográfico"""
    firma = texto.strip().replace("−", "-")
    if any(c not in "+-" for c in firma):
        raise BadSignature(f"Firma inválida: {texto!r}")
    return firma


@dataclass(frozen=True)
class SignedPermutation:
    """Permutación de [n] con cero o más vectores de signos sobre los valores"""

    word: Perm
    signs: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        n = len(self.word)
        if sorted(self.word) != list(range(1, n + 1)):
            raise ValueError(f"No es una permutación: {self.word}")
        for firma in self.signs:
            parse_signature(firma)
            if len(firma) != n:
                raise SizeMismatch(
                    f"La firma {firma!r} no tiene longitud {n}"
                )

    @property
    def n(self) -> int:
        return len(self.word)

    @property
    def signature(self) -> str:
        """Primer vector de signos (o todo negativo si no hay)"""
        return self.signs[0] if self.signs else "-" * self.n

    def __str__(self) -> str:
        if not self.signs:
            return format_permutation(self.word)
        return "".join(f"{v}{self.signature[v - 1]}" for v in self.word)


def signed_shifted_shuffle(
    a: SignedPermutation, b: SignedPermutation
) -> List[SignedPermutation]:
    """Shuffle desplazado: los signos viajan con los valores"""
    if len(a.signs) != len(b.signs):
        raise SizeMismatch("Número distinto de vectores de signos")
    signos = tuple(x + y for x, y in zip(a.signs, b.signs))
    return [SignedPermutation(w, signos) for w in shifted_shuffle(a.word, b.word)]


def signed_convolution(
    a: SignedPermutation, b: SignedPermutation
) -> List[SignedPermutation]:
    """Convolución: los signos se quedan con las posiciones"""
    if len(a.signs) != len(b.signs):
        raise SizeMismatch("Número distinto de vectores de signos")
    resultado = []
    for w in convolution(a.word, b.word):
        signos = []
        for nivel in range(len(a.signs)):
            por_valor = [""] * len(w)
            for pos, valor in enumerate(w):
                if pos < a.n:
                    por_valor[valor - 1] = a.signs[nivel][a.word[pos] - 1]
                else:
                    por_valor[valor - 1] = b.signs[nivel][b.word[pos - a.n] - 1]
            signos.append("".join(por_valor))
        resultado.append(SignedPermutation(w, tuple(signos)))
    return resultado


# --- Shuffle y convolución --------------------------------------------------


def shifted_shuffle(tau: Sequence[int], tau2: Sequence[int]) -> List[Perm]:
    """
    Shuffle de tau con tau2 desplazado en len(tau)

    Returns:
        Lista ordenada de las C(n+n', n) permutaciones
    """
    n, m = len(tau), len(tau2)
    derecha = shift(tau2, n)
    resultado = []
    for posiciones in combinations(range(n + m), n):
        palabra = [0] * (n + m)
        marcadas = set(posiciones)
        it_izq, it_der = iter(tau), iter(derecha)
        for pos in range(n + m):
            palabra[pos] = next(it_izq) if pos in marcadas else next(it_der)
        resultado.append(tuple(palabra))
    return sorted(resultado)


def convolution(tau: Sequence[int], tau2: Sequence[int]) -> List[Perm]:
    """Permutaciones cuyo prefijo se estandariza a tau y el sufijo a tau2"""
    n, m = len(tau), len(tau2)
    total = set(range(1, n + m + 1))
    resultado = []
    for prefijo_valores in combinations(range(1, n + m + 1), n):
        izq = sorted(prefijo_valores)
        der = sorted(total - set(prefijo_valores))
        palabra = tuple(izq[v - 1] for v in tau) + tuple(der[v - 1] for v in tau2)
        resultado.append(palabra)
    return sorted(resultado)


# --- Órdenes parciales ------------------------------------------------------


class Poset:
    """Orden estricto sobre [n] guardado como conjunto cerrado de pares"""

    def __init__(self, n: int, relations: Iterable[Pair] = ()):
        self.n = n
        grafo = nx.DiGraph()
        grafo.add_nodes_from(range(1, n + 1))
        grafo.add_edges_from(relations)
        if not nx.is_directed_acyclic_graph(grafo):
            raise CyclicInput("Las relaciones tienen un ciclo")
        cierre = nx.transitive_closure_dag(grafo)
        self.relations: FrozenSet[Pair] = frozenset(cierre.edges())
        self._grafo = cierre

    @classmethod
    def from_graph(cls, grafo: nx.DiGraph, n: Optional[int] = None) -> "Poset":
        if n is None:
            n = grafo.number_of_nodes()
        return cls(n, ((u, v) for u, v in grafo.edges()))

    @classmethod
    def chain(cls, tau: Sequence[int]) -> "Poset":
        """Orden total dado por la palabra tau"""
        return cls(len(tau), zip(tau, tau[1:]))

    def less(self, i: int, j: int) -> bool:
        return (i, j) in self.relations

    def comparable(self, i: int, j: int) -> bool:
        return (i, j) in self.relations or (j, i) in self.relations

    def cover_relations(self) -> List[Pair]:
        return sorted(nx.transitive_reduction(self._grafo).edges())

    def is_woip(self) -> bool:
        """
        Condición de intervalo del orden débil:
        a < c relacionados implican a◁b o b◁c para todo a < b < c (y simétrico)
        """
        for a, c in self.relations:
            bajo, alto = min(a, c), max(a, c)
            for b in range(bajo + 1, alto):
                if not (self.less(a, b) or self.less(b, c)):
                    return False
        return True

    def linear_extensions(self) -> List[Perm]:
        return linear_extensions(self)

    def __eq__(self, otro) -> bool:
        return isinstance(otro, Poset) and (self.n, self.relations) == (
            otro.n,
            otro.relations,
        )

    def __hash__(self) -> int:
        return hash((self.n, self.relations))

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, relations={sorted(self.relations)})"


def linear_extensions(orden: Union[Poset, nx.DiGraph], n: Optional[int] = None) -> List[Perm]:
    """
    Extensiones lineales de un orden o de un grafo dirigido acíclico

    Args:
        orden: Poset, o grafo (multi)dirigido sobre [n]
        n: tamaño del conjunto base si el grafo no tiene todos los nodos

    Returns:
        Lista lexicográfica y sin repetidos
    """
    if isinstance(orden, Poset):
        grafo = orden._grafo
    else:
        grafo = nx.DiGraph()
        grafo.add_nodes_from(range(1, (n or orden.number_of_nodes()) + 1))
        grafo.add_nodes_from(orden.nodes())
        grafo.add_edges_from((u, v) for u, v in orden.edges())
        if not nx.is_directed_acyclic_graph(grafo):
            raise CyclicInput("El grafo tiene un ciclo dirigido")
    if grafo.number_of_nodes() == 0:
        return [()]
    return sorted(set(tuple(orden_topo) for orden_topo in nx.all_topological_sorts(grafo)))


def weak_interval(bajo: Sequence[int], alto: Sequence[int]) -> List[Perm]:
    """Permutaciones del intervalo [bajo, alto] del orden débil"""
    cb, ca = coinversions(bajo), coinversions(alto)
    return [
        tau
        for tau in all_permutations(len(bajo))
        if cb <= coinversions(tau) <= ca
    ]


