"""Congruencias del orden débil: k-twist, k-recoil y cambriana"""

from typing import Callable, Dict, FrozenSet, Iterable, List, Sequence, Tuple

from services.permutations import (
    Perm,
    all_permutations,
    coinversions,
    weak_covers,
    weak_interval,
)

Partition = List[Tuple[Perm, ...]]
Rule = Callable[[Perm], List[Perm]]


def _swap(tau: Sequence[int], j: int) -> Perm:
    nueva = list(tau)
    nueva[j], nueva[j + 1] = nueva[j + 1], nueva[j]
    return tuple(nueva)


def twist_rewrite_neighbors(k: int, tau: Sequence[int]) -> List[Perm]:
    """
    Vecinos por la regla U ac V1 b1 ... Vk bk W = U ca V1 b1 ... Vk bk W

    Se intercambian dos valores adyacentes a < c cuando al menos k valores
    b con a < b < c aparecen después del par.
    """
    vecinos = []
    for j in range(len(tau) - 1):
        a, c = sorted((tau[j], tau[j + 1]))
        testigos = sum(1 for b in tau[j + 2 :] if a < b < c)
        if testigos >= k:
            vecinos.append(_swap(tau, j))
    return vecinos


def recoil_rewrite_neighbors(k: int, tau: Sequence[int]) -> List[Perm]:
    """Vecinos por U ij V = U ji V cuando i + k < j"""
    return [
        _swap(tau, j)
        for j in range(len(tau) - 1)
        if abs(tau[j] - tau[j + 1]) > k
    ]


def cambrian_rewrite_neighbors(k: int, tau: Sequence[int], signature: str) -> List[Perm]:
    """
    Vecinos por la regla cambriana U ac V = U ca V

    Hace falta un intervalo [a', c'] con a < a' <= c' < c tal que la diferencia
    entre los positivos de U y los negativos de V dentro del intervalo (en uno
    u otro sentido) sea al menos k. Los signos son los de los valores.
    """
    vecinos = []
    for j in range(len(tau) - 1):
        a, c = sorted((tau[j], tau[j + 1]))
        if k == 0 or _cambrian_witnessed(k, tau[:j], tau[j + 2 :], a, c, signature):
            vecinos.append(_swap(tau, j))
    return vecinos


def _cambrian_witnessed(
    k: int, antes: Sequence[int], despues: Sequence[int], a: int, c: int, signature: str
) -> bool:
    positivos_u = [u for u in antes if a < u < c and signature[u - 1] == "+"]
    negativos_v = [v for v in despues if a < v < c and signature[v - 1] == "-"]
    for inicio in range(a + 1, c):
        for fin in range(inicio, c):
            cu = sum(1 for u in positivos_u if inicio <= u <= fin)
            cv = sum(1 for v in negativos_v if inicio <= v <= fin)
            if cu - cv >= k or cv - cu >= k:
                return True
    return False


def classes_from_rule(n: int, rule: Rule) -> Partition:
    """
    Clases de la clausura transitiva de una regla de reescritura

    Returns:
        Lista de clases (tuplas ordenadas), ordenada por su primer elemento
    """
    vistos: Dict[Perm, int] = {}
    clases: List[List[Perm]] = []
    for semilla in all_permutations(n):
        if semilla in vistos:
            continue
        etiqueta = len(clases)
        vistos[semilla] = etiqueta
        pila = [semilla]
        clase = [semilla]
        while pila:
            actual = pila.pop()
            for vecino in rule(actual):
                if vecino not in vistos:
                    vistos[vecino] = etiqueta
                    clase.append(vecino)
                    pila.append(vecino)
        clases.append(clase)
    return sorted(tuple(sorted(c)) for c in clases)


def congruence_classes(k: int, n: int) -> Partition:
    """Clases de la congruencia de k-twists sobre S_n"""
    return classes_from_rule(n, lambda tau: twist_rewrite_neighbors(k, tau))


def recoil_classes(k: int, n: int) -> Partition:
    """Clases de la congruencia de k-recoils sobre S_n"""
    return classes_from_rule(n, lambda tau: recoil_rewrite_neighbors(k, tau))


def cambrian_classes(k: int, signature: str) -> Partition:
    n = len(signature)
    return classes_from_rule(
        n, lambda tau: cambrian_rewrite_neighbors(k, tau, signature)
    )


def class_extrema(clase: Iterable[Sequence[int]]) -> Tuple[Perm, Perm]:
    """
    Mínimo y máximo de una clase en el orden débil

    Returns:
        (mínimo, máximo): los elementos con menos y más coinversiones
    """
    elementos = [tuple(t) for t in clase]
    minimo = min(elementos, key=lambda t: (len(coinversions(t)), t))
    maximo = max(elementos, key=lambda t: (len(coinversions(t)), t))
    return minimo, maximo


def is_weak_interval(clase: Iterable[Sequence[int]]) -> bool:
    elementos = {tuple(t) for t in clase}
    minimo, maximo = class_extrema(elementos)
    return elementos == set(weak_interval(minimo, maximo))


def partition_lookup(particion: Partition) -> Dict[Perm, int]:
    return {tau: i for i, clase in enumerate(particion) for tau in clase}


def verify_lattice_congruence(particion: Partition, n: int) -> bool:
    """
    Comprueba que una partición de S_n sea una congruencia de retículo

    Las clases son intervalos y las proyecciones a mínimos y máximos
    preservan el orden (basta verificarlo sobre las relaciones de cobertura).
    """
    if sorted(t for c in particion for t in c) != all_permutations(n):
        return False
    if not all(is_weak_interval(c) for c in particion):
        return False
    indice = partition_lookup(particion)
    extremos = [class_extrema(c) for c in particion]
    coinv = {tau: coinversions(tau) for tau in indice}
    for tau in indice:
        abajo, arriba = extremos[indice[tau]]
        for cubre in weak_covers(tau):
            abajo2, arriba2 = extremos[indice[cubre]]
            if not coinv[abajo] <= coinv[abajo2]:
                return False
            if not coinv[arriba] <= coinv[arriba2]:
                return False
    return True


def is_class_minimum(k: int, tau: Sequence[int]) -> bool:
    """
    tau evita los patrones (k+2)1-(s1+1)-...-(sk+1): ningún descenso
    adyacente c a tiene k testigos a < b < c a su derecha
    """
    for j in range(len(tau) - 1):
        c, a = tau[j], tau[j + 1]
        if c > a and sum(1 for b in tau[j + 2 :] if a < b < c) >= k:
            return False
    return True


def is_class_maximum(k: int, tau: Sequence[int]) -> bool:
    """tau evita los patrones 1(k+2)-(s1+1)-...-(sk+1)"""
    for j in range(len(tau) - 1):
        a, c = tau[j], tau[j + 1]
        if a < c and sum(1 for b in tau[j + 2 :] if a < b < c) >= k:
            return False
    return True


def refines(fina: Partition, gruesa: Partition) -> bool:
    """Cada clase de `fina` está contenida en una clase de `gruesa`"""
    indice = partition_lookup(gruesa)
    return all(len({indice[t] for t in clase}) == 1 for clase in fina)


def as_sets(particion: Iterable[Iterable[Sequence[int]]]) -> FrozenSet[FrozenSet[Perm]]:
    return frozenset(frozenset(tuple(t) for t in clase) for clase in particion)
