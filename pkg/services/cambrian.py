"""
Capa cambriana: inserción desde permutaciones con signo, congruencia y retículo
cambrianos, tuplas de twists, twists gemelos y el álgebra de Hopf con signos
"""

from itertools import product
from typing import Dict, Iterable, List, Sequence, Tuple

import networkx as nx

from models.errors import CyclicTwist, SizeMismatch
from services.congruence import Partition, cambrian_classes
from services.geometry import PolyCone, brick_vector, cone_contains, cones
from services.hopf import FormalSum, P_expand, product_F
from services.insertion import fiber, insert_permutation
from services.lattice import DEFAULT_BUDGET, FiniteLattice, psi_isomorphism, quotient_lattice
from services.orientations import canopy, recoil_scheme
from services.permutations import (
    Perm,
    Poset,
    SignedPermutation,
    all_permutations,
    linear_extensions,
    parse_signature,
    standardize,
)
from services.twist import Twist

TwistTuple = Tuple[Twist, ...]


def all_signatures(n: int) -> List[str]:
    return ["".join(s) for s in product("+-", repeat=n)]


def alternating_signature(n: int, first: str = "+") -> str:
    """(+-)^{n/2} empezando por `first`"""
    otro = "-" if first == "+" else "+"
    return "".join(first if i % 2 == 0 else otro for i in range(n))


def opposite(signature: str) -> str:
    return signature.translate(str.maketrans("+-", "-+"))


def cambrian_insert(k: int, tau: SignedPermutation) -> Twist:
    """psi^k de una permutación con un vector de signos"""
    if len(tau.signs) > 1:
        raise SizeMismatch("La inserción cambriana usa un único vector de signos")
    return insert_permutation(k, tau.word, tau.signature)


def cambrian_congruence_classes(k: int, signature: str) -> Partition:
    return cambrian_classes(k, parse_signature(signature))


def cambrian_fibers(k: int, signature: str) -> Dict[Twist, List[Perm]]:
    """Fibras de psi^k sobre S^signature"""
    fibras: Dict[Twist, List[Perm]] = {}
    for tau in all_permutations(len(signature)):
        fibras.setdefault(insert_permutation(k, tau, signature), []).append(tau)
    return fibras


def cambrian_count(k: int, signature: str) -> int:
    """Número de twists cambrianos acíclicos (clases de la congruencia)"""
    return len(cambrian_fibers(k, parse_signature(signature)))


def cambrian_lattice(
    k: int, signature: str, budget: int = DEFAULT_BUDGET
) -> Tuple[FiniteLattice, Dict[int, Twist]]:
    """
    Cociente del orden débil por la congruencia cambriana junto con el
    isomorfismo clase -> twist cambriano acíclico

    Raises:
        BudgetExceeded
        InvariantViolation: psi no induce el isomorfismo
    """
    firma = parse_signature(signature)
    particion = cambrian_classes(k, firma)
    mapa = psi_isomorphism(k, len(firma), budget, firma)
    return quotient_lattice(particion, len(firma)), mapa


def canopy_commutes(k: int, signature: str) -> bool:
    """theta^k = eta^k o psi^k sobre S^signature"""
    return all(
        recoil_scheme(k, tau) == canopy(insert_permutation(k, tau, signature))
        for tau in all_permutations(len(signature))
    )


def cambrian_brick_vectors(k: int, signature: str) -> Dict[Twist, Tuple]:
    return {T: brick_vector(T) for T in cambrian_fibers(k, signature)}


# --- Hopf con signos ----------------------------------------------------------


def cambrian_product(T: Twist, T2: Twist) -> FormalSum:
    """
    P_T . P_T' en FQSym con signos: el shuffle desplazado de las fibras
    reescrito en la base P de firma concatenada
    """
    if T.k != T2.k:
        raise SizeMismatch(f"Parámetros distintos: k={T.k} y k={T2.k}")
    firma = T.signature + T2.signature
    resultado = FormalSum("P", k=T.k)
    vistos = set()
    for sigma in product_F(P_expand(T), P_expand(T2)).terms:
        S = insert_permutation(T.k, sigma, firma)
        if S not in vistos:
            vistos.add(S)
            resultado.add_term(S, 1)
    return resultado


def _signed_part(tau: Sequence[int], signature: str) -> Tuple[Perm, str]:
    orden = sorted(tau)
    return standardize(tau), "".join(signature[v - 1] for v in orden)


def cambrian_coproduct(T: Twist) -> FormalSum:
    """
    Delta P_T: deconcatenación de las extensiones lineales; cada mitad viaja
    con los signos de sus valores. Se toma el término en los pares de mínimos
    """
    firma = T.signature
    resultado = FormalSum("P⊗P", k=T.k)
    for tau in fiber(T):
        for p in range(len(tau) + 1):
            a, firma_a = _signed_part(tau[:p], firma)
            b, firma_b = _signed_part(tau[p:], firma)
            A = insert_permutation(T.k, a, firma_a)
            B = insert_permutation(T.k, b, firma_b)
            if a == fiber(A)[0] and b == fiber(B)[0]:
                resultado.add_term((A, B), 1)
    return resultado


# --- Tuplas y gemelos ---------------------------------------------------------


def union_contact_graph(twists: Iterable[Twist]) -> nx.DiGraph:
    grafo = nx.DiGraph()
    for T in twists:
        grafo.add_nodes_from(range(1, T.n + 1))
        grafo.add_edges_from(T.contact_graph().graph.edges())
    return grafo


def is_valid_tuple(twists: Sequence[Twist]) -> bool:
    """La unión de los grafos de contacto es acíclica"""
    return nx.is_directed_acyclic_graph(union_contact_graph(twists))


def tuple_insert(k: int, tau: SignedPermutation) -> TwistTuple:
    """Un twist cambriano por cada vector de signos de tau"""
    return tuple(insert_permutation(k, tau.word, firma) for firma in tau.signs)


def tuple_fiber(twists: Sequence[Twist]) -> List[Perm]:
    """
    Extensiones lineales de la unión de grafos de contacto

    Raises:
        CyclicTwist: la tupla no es válida
    """
    if not is_valid_tuple(twists):
        raise CyclicTwist("La unión de los grafos de contacto tiene un ciclo")
    return linear_extensions(union_contact_graph(twists), twists[0].n)


def tuple_classes(k: int, signatures: Sequence[str]) -> Partition:
    """Clases de la intersección de las congruencias cambrianas"""
    n = len(signatures[0])
    grupos: Dict[TwistTuple, List[Perm]] = {}
    for tau in all_permutations(n):
        clave = tuple_insert(k, SignedPermutation(tau, tuple(signatures)))
        grupos.setdefault(clave, []).append(tau)
    return sorted(tuple(sorted(c)) for c in grupos.values())


def tuple_count(k: int, signatures: Sequence[str]) -> int:
    return len(tuple_classes(k, signatures))


def tuple_flip_lattice(k: int, signatures: Sequence[str]) -> FiniteLattice:
    """Orden de flips de tuplas: cociente del orden débil por la intersección"""
    return quotient_lattice(tuple_classes(k, signatures), len(signatures[0]))


def tuple_flips(twists: Sequence[Twist]) -> List[TwistTuple]:
    """
    Tuplas válidas obtenidas flipeando un mismo arco i -> j en cada miembro
    que lo tiene como arco simple
    """
    arcos = set()
    for T in twists:
        arcos |= {(s, w) for _, s, w in T.trace.arcs}
    vecinas = []
    for s, w in sorted(arcos):
        nueva = []
        for T in twists:
            cajas = [T.shape.boxes[idx] for idx, a, b in T.trace.arcs if (a, b) == (s, w)]
            nueva.append(T.flip(cajas[0]) if cajas else T)
        nueva_tupla = tuple(nueva)
        if nueva_tupla != tuple(twists) and is_valid_tuple(nueva_tupla):
            vecinas.append(nueva_tupla)
    return vecinas


def tuple_braid_cone(twists: Sequence[Twist]) -> PolyCone:
    """Intersección de los conos de trenzas: cono de la clausura de la unión"""
    if not is_valid_tuple(twists):
        raise CyclicTwist("La unión de los grafos de contacto tiene un ciclo")
    return PolyCone(Poset.from_graph(union_contact_graph(twists), twists[0].n))


def tuple_cone_characterizes_insertion(k: int, signatures: Sequence[str]) -> bool:
    """tau cae en la tupla T sii el cono de tau está dentro del cono de T"""
    n = len(signatures[0])
    tuplas = {
        tuple_insert(k, SignedPermutation(tau, tuple(signatures)))
        for tau in all_permutations(n)
    }
    conos = {t: tuple_braid_cone(t) for t in tuplas}
    for tau in all_permutations(n):
        propia = tuple_insert(k, SignedPermutation(tau, tuple(signatures)))
        for t, cono in conos.items():
            if cone_contains(cono, cones(tau)) != (t == propia):
                return False
    return True


def twin_signatures(n: int, alternating: bool = False) -> Tuple[str, str]:
    """(eps, -eps) con eps = -^n o (-+)^{n/2}"""
    firma = alternating_signature(n, "-") if alternating else "-" * n
    return firma, opposite(firma)


def twin_pairs(k: int, n: int, alternating: bool = False) -> int:
    """Número de pares de twists cambrianos gemelos"""
    return tuple_count(k, twin_signatures(n, alternating))


def equal_canopy_cyclic_union(T: Twist, T2: Twist) -> bool:
    """Mismo canopy pero sin extensión lineal común"""
    return canopy(T) == canopy(T2) and not is_valid_tuple((T, T2))


def cambrian_table(k_max: int, n_max: int, signature_of=alternating_signature) -> Dict[Tuple[int, int], int]:
    """Conteos (k, n) -> número de twists cambrianos acíclicos para la firma dada"""
    return {
        (k, n): cambrian_count(k, signature_of(n))
        for k in range(1, k_max + 1)
        for n in range(1, n_max + 1)
    }


def signature_counts(k: int, n: int) -> Dict[str, int]:
    """Twists cambrianos acíclicos para cada firma de longitud n"""
    return {firma: cambrian_count(k, firma) for firma in all_signatures(n)}
