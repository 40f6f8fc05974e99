"""Inserción y borrado de pipes, la sobreyección psi^k y sus fibras"""

from bisect import bisect_left
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from models.errors import (
    BudgetExceeded,
    CyclicTwist,
    DuplicateLabel,
    InvariantViolation,
    NotASource,
)
from services.permutations import Perm, all_permutations, inverse, linear_extensions
from services.shape import build_shape, classical_shape
from services.twist import Twist, greedy_twist

MAX_DESCENT_FLIPS = 10**6


def empty_twist(k: int, signature: str = "") -> Twist:
    return Twist(build_shape(k, signature), 0, ())


def _splice(T: Twist, p: int) -> Twist:
    """
    Inserta un pipe nuevo en la posición p de un twist clásico

    El pipe nuevo ocupa la fila p y la columna p+k; los codos diagonales
    (p+i, p+i) se desplazan a (p+i+1, p+i).
    """
    k, n = T.k, T.n
    forma = classical_shape(k, n + 1)
    if k == 0:
        return Twist(forma, 0, validate=False)
    codos = set()
    for r, c in T.elbows:
        codos.add((r + (r >= p), c + (c >= p + k)))
    for i in range(k):
        codos.add((p + i + 1, p + i))
    mascara = 0
    for caja in codos:
        if caja in forma.index and caja not in forma.boundary:
            mascara |= 1 << forma.index[caja]
    return Twist(forma, mascara, validate=False)


def _unsplice(T: Twist, p: int) -> Twist:
    """Inversa de _splice: quita la fila p y la columna p+k"""
    k, n = T.k, T.n
    forma = classical_shape(k, n - 1)
    if k == 0:
        return Twist(forma, 0, validate=False)
    for c in range(1, p):
        if T.tile((p, c)) != "cross":
            raise NotASource(f"La fila {p} no es una fila de cruces")
    for r in range(p + k + 1, n + k + 1):
        if T.tile((r, p + k)) != "cross":
            raise NotASource(f"La columna {p + k} no es una columna de cruces")
    for i in range(k):
        if T.tile((p + i + 1, p + i)) != "elbow":
            raise NotASource(f"Falta el codo ({p + i + 1}, {p + i})")
    desplazados = {(p + i + 1, p + i) for i in range(k)}
    mascara = 0
    for r, c in T.elbows:
        if r == p or c == p + k or (r, c) in desplazados:
            continue
        caja = (r - (r > p), c - (c > p + k))
        if caja in forma.index and caja not in forma.boundary:
            mascara |= 1 << forma.index[caja]
    return Twist(forma, mascara, validate=False)


def pipe_insert(T: Twist, q: int) -> Twist:
    """
    Inserta un pipe de etiqueta q en un twist clásico etiquetado

    Args:
        T: twist con etiquetas crecientes
        q: etiqueta nueva

    Returns:
        Twist con n+1 pipes donde q es una fuente del grafo de contacto

    Raises:
        DuplicateLabel: q ya es una etiqueta de T
    """
    if q in T.labels:
        raise DuplicateLabel(f"La etiqueta {q} ya está en el twist")
    if not T.shape.is_classical:
        raise InvariantViolation("pipe_insert trabaja sobre formas clásicas")
    p = bisect_left(T.labels, q) + 1
    etiquetas = T.labels[: p - 1] + (q,) + T.labels[p - 1 :]
    return _splice(T, p).relabel(etiquetas)


def pipe_delete(T: Twist, q: int) -> Twist:
    """
    Borra el pipe de etiqueta q (debe ser una fuente del grafo de contacto)

    Raises:
        NotASource: q no es fuente
    """
    if q not in T.labels:
        raise NotASource(f"La etiqueta {q} no está en el twist")
    p = T.labels.index(q) + 1
    if T.contact_graph().graph.in_degree(p) > 0:
        raise NotASource(f"El pipe {q} no es una fuente")
    etiquetas = T.labels[: p - 1] + T.labels[p:]
    return _unsplice(T, p).relabel(etiquetas)


def descend_to(T: Twist, tau: Sequence[int]) -> Twist:
    """
    Flipea codos hasta que tau sea extensión lineal del grafo de contacto

    Cada flip aplicado invierte un arco s -> w con tau^{-1}(s) > tau^{-1}(w);
    el proceso termina en el único twist cuyo grafo de contacto admite tau.
    """
    posicion = inverse(tau)
    actual = T
    for _ in range(MAX_DESCENT_FLIPS):
        malo = None
        for idx, s, w in actual.trace.arcs:
            if posicion[s - 1] > posicion[w - 1]:
                malo = actual.shape.boxes[idx]
                break
        if malo is None:
            return actual
        actual = actual.flip(malo)
    raise InvariantViolation("El descenso por flips no terminó")


def insert_permutation(k: int, tau: Sequence[int], signature: Optional[str] = None) -> Twist:
    """
    psi^k(tau): inserta tau_n, ..., tau_1 en el twist vacío

    Args:
        k: parámetro
        tau: permutación de [n]
        signature: firma cambriana; None o "-"*n usa la inserción clásica

    Returns:
        Twist (etiquetas 1..n)
    """
    if signature is None or "+" not in signature:
        T = empty_twist(k)
        for valor in reversed(tau):
            T = pipe_insert(T, valor)
        return T
    return descend_to(greedy_twist(build_shape(k, signature)), tau)


def insert_by_descent(k: int, tau: Sequence[int], signature: Optional[str] = None) -> Twist:
    """Inserción genérica por flips (oráculo independiente del splice)"""
    firma = signature if signature is not None else "-" * len(tau)
    return descend_to(greedy_twist(build_shape(k, firma)), tau)


def leveled_insert(k: int, tau: Sequence[int]) -> Tuple[Twist, Perm]:
    """Twist nivelado: psi^k(tau) junto con el orden de inserción de sus pipes"""
    return insert_permutation(k, tau), tuple(reversed(tau))


def admits(T: Twist, tau: Sequence[int]) -> bool:
    """tau es extensión lineal del grafo de contacto de T"""
    posicion = inverse(tau)
    return all(posicion[s - 1] < posicion[w - 1] for _, s, w in T.trace.arcs)


def fiber(T: Twist) -> List[Perm]:
    """
    Permutaciones que se insertan en T

    Raises:
        CyclicTwist: T no es acíclico
    """
    grafo = T.contact_graph()
    if not grafo.is_acyclic:
        raise CyclicTwist("El twist no es acíclico")
    return linear_extensions(grafo.closure)


def acyclic_twists(k: int, n: int, budget: int = 10**7) -> List[Twist]:
    """
    Twists clásicos acíclicos por inserción de fuentes (programación dinámica)

    Todo twist acíclico tiene una fuente; borrarla da un twist acíclico.
    """
    nivel: Set[Twist] = {empty_twist(k)}
    visitados = 1
    for m in range(n):
        siguiente: Set[Twist] = set()
        for T in nivel:
            for p in range(1, m + 2):
                siguiente.add(_splice(T, p))
                visitados += 1
                if visitados > budget:
                    raise BudgetExceeded(
                        f"Más de {budget} nodos enumerando twists acíclicos ({k},{n})"
                    )
        nivel = siguiente
    return sorted(nivel, key=lambda t: t.mask)


def insert_by_search(tau: Sequence[int], candidates: Iterable[Twist]) -> Twist:
    """Oráculo: el único candidato que admite tau como extensión lineal"""
    encontrados = [T for T in candidates if admits(T, tau)]
    if len(encontrados) != 1:
        raise InvariantViolation(
            f"{len(encontrados)} twists admiten la permutación {tuple(tau)}"
        )
    return encontrados[0]


def pipe_insert_by_search(T: Twist, q: int, candidates: Iterable[Twist]) -> Twist:
    """
    Oráculo de la inserción: el único T' donde q es fuente y T' sin q es T
    """
    etiquetas = tuple(sorted(T.labels + (q,)))
    p = etiquetas.index(q) + 1
    encontrados = []
    for candidato in candidates:
        if candidato.n != T.n + 1:
            continue
        if candidato.contact_graph().graph.in_degree(p) > 0:
            continue
        try:
            if _unsplice(candidato, p) == T:
                encontrados.append(candidato)
        except NotASource:
            continue
    if len(encontrados) != 1:
        raise InvariantViolation(f"{len(encontrados)} candidatos para insertar {q}")
    return encontrados[0].relabel(etiquetas)


def image(k: int, n: int, signature: Optional[str] = None) -> Set[Twist]:
    """Imagen de psi^k sobre todas las permutaciones de [n]"""
    return {insert_permutation(k, tau, signature) for tau in all_permutations(n)}


def minimal_extension(T: Twist) -> Perm:
    """Menor extensión lineal en orden lexicográfico (mínimo de la fibra)"""
    return fiber(T)[0]
