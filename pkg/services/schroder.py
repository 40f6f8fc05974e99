"""
Caras: particiones ordenadas, hypertwists, el retículo de Schröder, proyecciones
a orientaciones parciales y el álgebra de Hopf sobre particiones ordenadas
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Dict, Iterator, List, Sequence, Tuple

import networkx as nx
from sympy.utilities.iterables import multiset_partitions

from models.errors import BudgetExceeded, CyclicTwist, InvariantViolation, ParseError
from services.hopf import FormalSum, _expect
from services.insertion import insert_permutation
from services.lattice import DEFAULT_BUDGET, FiniteLattice, enumerate_twists, increasing_flip_lattice
from services.orientations import BACKWARD, FORWARD, UNSET, Orientation, graph_edges
from services.twist import Twist

Block = Tuple[int, ...]

# Más allá de este tamaño el orden débil sobre particiones no se construye
MAX_PARTITION_SIZE = 6


@dataclass(frozen=True)
class OrderedPartition:
    """Sucesión de bloques disjuntos no vacíos que cubren [n]"""

    blocks: Tuple[Block, ...]

    def __post_init__(self):
        valores = sorted(v for b in self.blocks for v in b)
        if valores != list(range(1, len(valores) + 1)) or any(not b for b in self.blocks):
            raise InvariantViolation(f"No es una partición ordenada: {self.blocks}")

    @classmethod
    def of(cls, *blocks) -> "OrderedPartition":
        return cls(tuple(tuple(sorted(b)) for b in blocks))

    @classmethod
    def from_permutation(cls, tau: Sequence[int]) -> "OrderedPartition":
        return cls(tuple((v,) for v in tau))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def block_of(self) -> Dict[int, int]:
        """valor -> posición de su bloque"""
        return {v: i for i, b in enumerate(self.blocks) for v in b}

    def linear_extension(self) -> Tuple[int, ...]:
        return tuple(v for b in self.blocks for v in b)

    def sort_key(self):
        return (self.n, self.blocks)

    def __str__(self) -> str:
        return format_partition(self)


def parse_partition(texto: str) -> OrderedPartition:
    """
    Lee "3|15|24" (un dígito por valor)

    Raises:
        ParseError: caracteres o bloques inválidos
    """
    limpio = texto.strip()
    if not limpio or limpio == "∅":
        return OrderedPartition(())
    bloques = []
    for parte in limpio.split("|"):
        if not parte or not parte.isdigit():
            raise ParseError(f"Bloque inválido en {texto!r}", field="partition")
        bloques.append(tuple(sorted(int(c) for c in parte)))
    try:
        return OrderedPartition(tuple(bloques))
    except InvariantViolation as e:
        raise ParseError(str(e), field="partition") from e


def format_partition(particion: OrderedPartition) -> str:
    if not particion.blocks:
        return "∅"
    return "|".join("".join(str(v) for v in b) for b in particion.blocks)


def standardize_partition(bloques: Sequence[Sequence[int]]) -> OrderedPartition:
    valores = sorted(v for b in bloques for v in b)
    rango = {v: i + 1 for i, v in enumerate(valores)}
    return OrderedPartition(tuple(tuple(sorted(rango[v] for v in b)) for b in bloques if b))


@lru_cache(maxsize=8)
def all_ordered_partitions(n: int) -> Tuple[OrderedPartition, ...]:
    """
    Todas las particiones ordenadas de [n]

    Raises:
        BudgetExceeded: n > MAX_PARTITION_SIZE
    """
    if n > MAX_PARTITION_SIZE:
        raise BudgetExceeded(f"Particiones ordenadas de [{n}]: solo hasta n={MAX_PARTITION_SIZE}")
    if n == 0:
        return (OrderedPartition(()),)
    particiones = (
        OrderedPartition.of(*orden)
        for bloques in multiset_partitions(list(range(1, n + 1)))
        for orden in permutations(bloques)
    )
    return tuple(sorted(particiones, key=OrderedPartition.sort_key))


def coinversions(particion: OrderedPartition) -> Dict[Tuple[int, int], int]:
    """(i, j) con i < j -> -1, 0 o 1 según el orden de sus bloques"""
    bloque = particion.block_of()
    n = particion.n
    mapa = {}
    for i, j in combinations(range(1, n + 1), 2):
        mapa[(i, j)] = (bloque[i] > bloque[j]) - (bloque[i] < bloque[j])
    return mapa


def _ll(x: Sequence[int], y: Sequence[int]) -> bool:
    return max(x) < min(y)


def partition_covers(particion: OrderedPartition) -> List[OrderedPartition]:
    """
    Coberturas superiores: fusionar X|Y con X << Y, o partir un bloque B en
    (valores altos)|(valores bajos)
    """
    bloques = particion.blocks
    arriba = []
    for i in range(len(bloques) - 1):
        if _ll(bloques[i], bloques[i + 1]):
            fusion = tuple(sorted(bloques[i] + bloques[i + 1]))
            arriba.append(OrderedPartition(bloques[:i] + (fusion,) + bloques[i + 2 :]))
    for i, b in enumerate(bloques):
        for t in range(1, len(b)):
            arriba.append(OrderedPartition(bloques[:i] + (b[t:], b[:t]) + bloques[i + 1 :]))
    return arriba


def partition_weak_order(n: int) -> FiniteLattice:
    particiones = all_ordered_partitions(n)
    return FiniteLattice(
        particiones,
        ((p, q) for p in particiones for q in partition_covers(p)),
        sort_key=OrderedPartition.sort_key,
    )


# --- Hypertwists --------------------------------------------------------------


class HyperTwist:
    """
    Twist con sus pipes agrupados en hyperpipes conexos en el grafo de contacto

    Los codos entre pipes de un mismo hyperpipe pasan a ser cruces; la clave
    es (k, firma, codos que sobreviven, hyperpipes) y no depende del twist
    que se usó para refinarlo.
    """

    __slots__ = ("twist", "blocks", "_arcs")

    def __init__(self, twist: Twist, blocks: Sequence[Sequence[int]]):
        self.twist = twist
        self.blocks: Tuple[Block, ...] = tuple(
            sorted((tuple(sorted(b)) for b in blocks), key=min)
        )
        if sorted(v for b in self.blocks for v in b) != list(range(1, twist.n + 1)):
            raise InvariantViolation("Los hyperpipes no particionan los pipes")
        grafo = nx.Graph()
        grafo.add_edges_from((s, w) for _, s, w in twist.trace.arcs)
        for b in self.blocks:
            grafo.add_nodes_from(b)
            if len(b) > 1 and not nx.is_connected(grafo.subgraph(b)):
                raise InvariantViolation(f"El hyperpipe {b} no es conexo")
        bloque = self.block_index()
        self._arcs: Tuple[Tuple[int, int, int], ...] = tuple(
            (idx, bloque[s], bloque[w])
            for idx, s, w in twist.trace.arcs
            if bloque[s] != bloque[w]
        )

    def block_index(self) -> Dict[int, int]:
        return {v: i for i, b in enumerate(self.blocks) for v in b}

    @property
    def k(self) -> int:
        return self.twist.k

    @property
    def n(self) -> int:
        return self.twist.n

    @property
    def surviving_mask(self) -> int:
        mascara = 0
        for idx, _, _ in self._arcs:
            mascara |= 1 << idx
        return mascara

    @property
    def elbow_count(self) -> int:
        return len(self._arcs)

    def key(self) -> Tuple[int, str, int, Tuple[Block, ...]]:
        return (self.k, self.twist.signature, self.surviving_mask, self.blocks)

    def sort_key(self):
        return (self.n, self.surviving_mask, self.blocks)

    def __eq__(self, otro) -> bool:
        return isinstance(otro, HyperTwist) and self.key() == otro.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        bloques = "|".join("".join(map(str, b)) for b in self.blocks)
        return f"HyperTwist(k={self.k}, n={self.n}, hyperpipes={bloques}, elbows={self.elbow_count})"

    def contact_graph(self) -> nx.MultiDiGraph:
        """Grafo contraído sobre los índices de los hyperpipes"""
        grafo = nx.MultiDiGraph()
        grafo.add_nodes_from(range(len(self.blocks)))
        grafo.add_edges_from((u, v) for _, u, v in self._arcs)
        return grafo

    @property
    def is_acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.contact_graph())

    def contact_arcs(self) -> List[Tuple[Block, Block]]:
        return sorted({(self.blocks[u], self.blocks[v]) for _, u, v in self._arcs})

    def merge(self, u: Block, v: Block) -> "HyperTwist":
        """H/_{u -> v}: fusiona dos hyperpipes en contacto"""
        if (u, v) not in self.contact_arcs() and (v, u) not in self.contact_arcs():
            raise InvariantViolation(f"Los hyperpipes {u} y {v} no están en contacto")
        resto = [b for b in self.blocks if b not in (u, v)]
        return HyperTwist(self.twist, resto + [u + v])

    def is_trivial(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)


def _components(twist: Twist, valores: Sequence[int]) -> List[Block]:
    grafo = nx.Graph()
    grafo.add_nodes_from(valores)
    conjunto = set(valores)
    grafo.add_edges_from(
        (s, w) for _, s, w in twist.trace.arcs if s in conjunto and w in conjunto
    )
    return [tuple(sorted(c)) for c in nx.connected_components(grafo)]


def insert_ordered_partition(k: int, particion: OrderedPartition) -> HyperTwist:
    """
    Inserta los bloques de derecha a izquierda y fusiona, en cada bloque, los
    pipes que quedan conectados en el grafo de contacto
    """
    twist = insert_permutation(k, particion.linear_extension())
    bloques = []
    for b in particion.blocks:
        bloques.extend(_components(twist, b))
    return HyperTwist(twist, bloques)


def _set_partitions(valores: Sequence[int]) -> Iterator[List[List[int]]]:
    if not valores:
        return iter([[]])
    return multiset_partitions(list(valores))


def enumerate_hypertwists(
    k: int, n: int, acyclic_only: bool = True, budget: int = DEFAULT_BUDGET
) -> List[HyperTwist]:
    """Todos los hypertwists: particiones conexas de los pipes de cada twist"""
    hypertwists = set()
    for twist in enumerate_twists(k, n, budget=budget):
        grafo = nx.Graph()
        grafo.add_nodes_from(range(1, n + 1))
        grafo.add_edges_from((s, w) for _, s, w in twist.trace.arcs)
        for bloques in _set_partitions(list(range(1, n + 1))):
            if all(nx.is_connected(grafo.subgraph(b)) for b in bloques):
                H = HyperTwist(twist, bloques)
                if not acyclic_only or H.is_acyclic:
                    hypertwists.add(H)
    return sorted(hypertwists, key=HyperTwist.sort_key)


def elbow_profile(hypertwists: Sequence[HyperTwist]) -> Dict[int, int]:
    """Número de codos -> número de hypertwists"""
    perfil: Dict[int, int] = {}
    for H in hypertwists:
        perfil[H.elbow_count] = perfil.get(H.elbow_count, 0) + 1
    return dict(sorted(perfil.items()))


def schroder_number(n: int, e: int) -> int:
    """Disecciones del (n+2)-ágono con e diagonales: C(n-1, e) C(n+1+e, e) / (e+1)"""
    if e < 0 or e > n - 1:
        return 0
    return comb(n - 1, e) * comb(n + 1 + e, e) // (e + 1)


def hypertwist_fibers(k: int, n: int) -> Dict[HyperTwist, List[OrderedPartition]]:
    fibras: Dict[HyperTwist, List[OrderedPartition]] = {}
    for particion in all_ordered_partitions(n):
        fibras.setdefault(insert_ordered_partition(k, particion), []).append(particion)
    return fibras


def _witnessed(k: int, a: Block, c: Block, despues: Sequence[Block]) -> bool:
    if not _ll(a, c):
        return False
    testigos = {v for b in despues for v in b if max(a) < v < min(c)}
    return len(testigos) >= k


def hypertwist_rewrite_neighbors(k: int, particion: OrderedPartition) -> List[OrderedPartition]:
    """U|a|c|V = U|ac|V = U|c|a|V con k testigos entre a y c dentro de V"""
    bloques = particion.blocks
    vecinos = []
    for i in range(len(bloques) - 1):
        x, y = bloques[i], bloques[i + 1]
        a, c = (x, y) if _ll(x, y) else (y, x)
        if _witnessed(k, a, c, bloques[i + 2 :]):
            fusion = tuple(sorted(x + y))
            vecinos.append(OrderedPartition(bloques[:i] + (fusion,) + bloques[i + 2 :]))
    for i, b in enumerate(bloques):
        for t in range(1, len(b)):
            a, c = b[:t], b[t:]
            if _witnessed(k, a, c, bloques[i + 1 :]):
                for orden in ((a, c), (c, a)):
                    vecinos.append(OrderedPartition(bloques[:i] + orden + bloques[i + 1 :]))
    return vecinos


def hypertwist_congruence_classes(k: int, n: int) -> List[Tuple[OrderedPartition, ...]]:
    vistos: Dict[OrderedPartition, int] = {}
    clases: List[List[OrderedPartition]] = []
    for semilla in all_ordered_partitions(n):
        if semilla in vistos:
            continue
        vistos[semilla] = len(clases)
        clase, pila = [semilla], [semilla]
        while pila:
            for vecino in hypertwist_rewrite_neighbors(k, pila.pop()):
                if vecino not in vistos:
                    vistos[vecino] = len(clases)
                    clase.append(vecino)
                    pila.append(vecino)
        clases.append(clase)
    return sorted(
        (tuple(sorted(c, key=OrderedPartition.sort_key)) for c in clases),
        key=lambda c: c[0].sort_key(),
    )


def schroder_lattice(k: int, n: int) -> FiniteLattice:
    """
    Orden de Schröder sobre hypertwists acíclicos: H < H/_{u->v} si u << v y
    H/_{u->v} < H si v << u

    Raises:
        BudgetExceeded
    """
    elementos = set(hypertwist_fibers(k, n))
    coberturas = set()
    for H in elementos:
        for u, v in H.contact_arcs():
            fusion = H.merge(u, v)
            if fusion not in elementos:
                continue
            if _ll(u, v):
                coberturas.add((H, fusion))
            elif _ll(v, u):
                coberturas.add((fusion, H))
    return FiniteLattice(
        sorted(elementos, key=HyperTwist.sort_key), coberturas, sort_key=HyperTwist.sort_key
    )


def schroder_is_quotient(k: int, n: int) -> bool:
    """La inserción induce un isomorfismo P_n/≡ -> orden de Schröder"""
    fibras = hypertwist_fibers(k, n)
    schroder = schroder_lattice(k, n)
    debil = partition_weak_order(n)
    for H, fibra in fibras.items():
        for H2, fibra2 in fibras.items():
            en_cociente = H == H2 or any(
                debil.leq(a, b) for a in fibra for b in fibra2
            )
            if en_cociente != schroder.leq(H, H2):
                return False
    return True


def restriction_matches_flip_lattice(k: int, n: int) -> bool:
    """Restringido a hypertwists triviales, el orden de Schröder es el de flips"""
    schroder = schroder_lattice(k, n)
    flips = increasing_flip_lattice(k, n)
    triviales = {H.twist: H for H in schroder.elements if H.is_trivial()}
    if set(triviales) != set(flips.elements):
        return False
    return all(
        schroder.leq(triviales[a], triviales[b]) == flips.leq(a, b)
        for a in flips.elements
        for b in flips.elements
    )


# --- Proyecciones a orientaciones parciales -----------------------------------


def partition_recoil_scheme(k: int, particion: OrderedPartition) -> Orientation:
    """Coinversiones restringidas a i < j <= i + k"""
    coinv = coinversions(particion)
    signo = {-1: FORWARD, 0: UNSET, 1: BACKWARD}
    return Orientation(
        k, particion.n, [signo[coinv[(i, j)]] for i, j in graph_edges(k, particion.n)]
    )


def hypertwist_recoil_scheme(H: HyperTwist) -> Orientation:
    """
    i -> j si hay un camino dirigido del hyperpipe de i al de j

    Raises:
        CyclicTwist: H no es acíclico
    """
    grafo = nx.DiGraph(H.contact_graph())
    if not nx.is_directed_acyclic_graph(grafo):
        raise CyclicTwist("El hypertwist no es acíclico")
    bloque = H.block_index()
    valores = []
    for i, j in graph_edges(H.k, H.n):
        bi, bj = bloque[i], bloque[j]
        if bi != bj and nx.has_path(grafo, bi, bj):
            valores.append(FORWARD)
        elif bi != bj and nx.has_path(grafo, bj, bi):
            valores.append(BACKWARD)
        else:
            valores.append(UNSET)
    return Orientation(H.k, H.n, valores)


def face_projections(k: int, particion: OrderedPartition) -> Tuple[HyperTwist, Orientation]:
    return insert_ordered_partition(k, particion), partition_recoil_scheme(k, particion)


def face_triangle_commutes(k: int, n: int) -> bool:
    return all(
        hypertwist_recoil_scheme(H) == theta
        for H, theta in (face_projections(k, lam) for lam in all_ordered_partitions(n))
    )


# --- Álgebra OrdPart ----------------------------------------------------------


def restrict_blocks(particion: OrderedPartition, inicio: int, fin: int) -> OrderedPartition:
    """mu_{|I} para I = bloques inicio..fin-1"""
    return standardize_partition(particion.blocks[inicio:fin])


def _merge_blocks(x: Tuple[Block, ...], y: Tuple[Block, ...]) -> Iterator[Tuple[Block, ...]]:
    if not x:
        yield y
        return
    if not y:
        yield x
        return
    for resto in _merge_blocks(x[1:], y):
        yield (x[0],) + resto
    for resto in _merge_blocks(x, y[1:]):
        yield (y[0],) + resto
    for resto in _merge_blocks(x[1:], y[1:]):
        yield (tuple(sorted(x[0] + y[0])),) + resto


def partition_shifted_shuffle(a: OrderedPartition, b: OrderedPartition) -> List[OrderedPartition]:
    """mu con mu^{|[n]} = a y mu^{|[n+1, n+n']} = b"""
    desplazada = tuple(tuple(v + a.n for v in bloque) for bloque in b.blocks)
    return sorted(
        (OrderedPartition(m) for m in _merge_blocks(a.blocks, desplazada)),
        key=OrderedPartition.sort_key,
    )


def partition_convolution(a: OrderedPartition, b: OrderedPartition) -> List[OrderedPartition]:
    """mu con mu_{|[p]} = a y mu_{|[p+1, p+p']} = b"""
    total = a.n + b.n
    resultado = []
    for izquierda in combinations(range(1, total + 1), a.n):
        derecha = sorted(set(range(1, total + 1)) - set(izquierda))
        bloques = tuple(tuple(izquierda[v - 1] for v in bloque) for bloque in a.blocks)
        bloques += tuple(tuple(derecha[v - 1] for v in bloque) for bloque in b.blocks)
        resultado.append(OrderedPartition(bloques))
    return sorted(resultado, key=OrderedPartition.sort_key)


def O(*particiones: OrderedPartition) -> FormalSum:
    return FormalSum.of("O", particiones)


def product_O(a: FormalSum, b: FormalSum) -> FormalSum:
    _expect(a, "O")
    _expect(b, "O")
    resultado = FormalSum("O")
    for x, cx in a.terms.items():
        for y, cy in b.terms.items():
            for mu in partition_shifted_shuffle(x, y):
                resultado.add_term(mu, cx * cy)
    return resultado


def coproduct_O(a: FormalSum) -> FormalSum:
    """Delta F_mu = suma sobre los cortes de bloques de F_{mu_|izq} ⊗ F_{mu_|der}"""
    _expect(a, "O")
    resultado = FormalSum("O⊗O")
    for mu, coef in a.terms.items():
        p = len(mu.blocks)
        for corte in range(p + 1):
            resultado.add_term(
                (restrict_blocks(mu, 0, corte), restrict_blocks(mu, corte, p)), coef
            )
    return resultado


def coproduct_is_coassociative(n_max: int) -> bool:
    """(Delta ⊗ id) Delta = (id ⊗ Delta) Delta sobre particiones de tamaño <= n_max"""
    for n in range(n_max + 1):
        for mu in all_ordered_partitions(n):
            izquierda: Dict[Tuple, int] = {}
            derecha: Dict[Tuple, int] = {}
            for (x, y), c in coproduct_O(O(mu)).terms.items():
                for (x1, x2), c1 in coproduct_O(O(x)).terms.items():
                    clave = (x1, x2, y)
                    izquierda[clave] = izquierda.get(clave, 0) + c * c1
                for (y1, y2), c2 in coproduct_O(O(y)).terms.items():
                    clave = (x, y1, y2)
                    derecha[clave] = derecha.get(clave, 0) + c * c2
            if izquierda != derecha:
                return False
    return True


def PH(*hypertwists: HyperTwist) -> FormalSum:
    if not hypertwists:
        return FormalSum("PH")
    return FormalSum.of("PH", hypertwists, k=hypertwists[0].k)


def hyper_fiber(H: HyperTwist) -> List[OrderedPartition]:
    return sorted(hypertwist_fibers(H.k, H.n).get(H, []), key=OrderedPartition.sort_key)


def PH_expand(H: HyperTwist) -> FormalSum:
    """P_H = suma de F_lambda sobre la fibra de H"""
    return FormalSum.of("O", hyper_fiber(H))


def O_to_PH(x: FormalSum, k: int) -> FormalSum:
    """
    Reescribe en la base P_H una suma de F_lambda del álgebra de hypertwists

    Raises:
        InvariantViolation: la suma no es constante sobre alguna fibra
    """
    _expect(x, "O")
    resultado = FormalSum("PH", k=k)
    vistos = set()
    for lam, coef in x.terms.items():
        H = insert_ordered_partition(k, lam)
        if H in vistos:
            continue
        vistos.add(H)
        if any(x.coefficient(mu) != coef for mu in hyper_fiber(H)):
            raise InvariantViolation(f"La suma no contiene la fibra completa de {H!r}")
        resultado.add_term(H, coef)
    return resultado


def hyper_product(H: HyperTwist, H2: HyperTwist) -> FormalSum:
    if H.k != H2.k:
        raise InvariantViolation(f"Parámetros distintos: k={H.k} y k={H2.k}")
    return O_to_PH(product_O(PH_expand(H), PH_expand(H2)), H.k)


def hyper_coproduct(H: HyperTwist) -> FormalSum:
    """Delta P_H leído en los pares de representantes (primer elemento de cada fibra)"""
    resultado = FormalSum("PH⊗PH", k=H.k)
    for (a, b), coef in coproduct_O(PH_expand(H)).terms.items():
        A, B = insert_ordered_partition(H.k, a), insert_ordered_partition(H.k, b)
        if a == hyper_fiber(A)[0] and b == hyper_fiber(B)[0]:
            resultado.add_term((A, B), coef)
    return resultado


def X_rec(theta: Orientation) -> FormalSum:
    """Suma de F_lambda sobre las particiones con esquema de recoils theta"""
    return FormalSum.of(
        "O",
        (lam for lam in all_ordered_partitions(theta.n) if partition_recoil_scheme(theta.k, lam) == theta),
    )


def inclusion_chain_holds(k: int, n_max: int) -> bool:
    """
    HyperRec ⊂ HyperTwist ⊂ OrdPart: cada X_theta es suma de P_H y los
    productos de P_H se quedan en el álgebra de hypertwists
    """
    try:
        for n in range(1, n_max + 1):
            esquemas = {partition_recoil_scheme(k, lam) for lam in all_ordered_partitions(n)}
            for theta in esquemas:
                O_to_PH(X_rec(theta), k)
        for n in range(1, n_max):
            for m in range(1, n_max - n + 1):
                for H in hypertwist_fibers(k, n):
                    for H2 in hypertwist_fibers(k, m):
                        hyper_product(H, H2)
    except InvariantViolation:
        return False
    return True


def hypertwist_count(k: int, n: int, acyclic_only: bool = True) -> int:
    return len(enumerate_hypertwists(k, n, acyclic_only))


