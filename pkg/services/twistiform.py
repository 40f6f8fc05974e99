"""Operaciones k-twistiformes sobre FQSym y su estabilidad sobre el álgebra de twists"""

from itertools import product
from typing import List, Sequence, Tuple

from models.errors import BadOperatorLength, InvariantViolation
from services.hopf import F, FormalSum, F_to_P, P_expand
from services.permutations import Perm, all_permutations, shift
from services.twist import Twist

LETTERS = "lmr"

Relation = Tuple[str, str, str, str]


def _check_op(op: str, k: int) -> None:
    if len(op) != k or any(letra not in LETTERS for letra in op):
        raise BadOperatorLength(f"Operador {op!r} inválido para k={k}")


def _words(op: str, X: Tuple[int, ...], Y: Tuple[int, ...]) -> List[Perm]:
    """
    Shuffle de X e Y donde la p-ésima letra sale de X si op_p = 'l' y de Y
    si op_p = 'r'; sin letras de X (resp. Y) un 'l' (resp. 'r') da 0
    """
    if not op:
        if not X:
            return [Y]
        if not Y:
            return [X]
        return [(X[0],) + w for w in _words("", X[1:], Y)] + [
            (Y[0],) + w for w in _words("", X, Y[1:])
        ]
    cabeza, resto = op[0], op[1:]
    palabras: List[Perm] = []
    if cabeza in "lm" and X:
        palabras += [(X[0],) + w for w in _words(resto, X[1:], Y)]
    if cabeza in "rm" and Y:
        palabras += [(Y[0],) + w for w in _words(resto, X, Y[1:])]
    return palabras


def op_words(op: str, tau: Sequence[int], tau2: Sequence[int]) -> List[Perm]:
    """tau op tau' = tau op (tau' desplazado)"""
    return sorted(_words(op, tuple(tau), shift(tau2, len(tau))))


def mirrored_op_words(op: str, tau: Sequence[int], tau2: Sequence[int]) -> List[Perm]:
    """V op̄ W = espejo(espejo(V) op espejo(W)), condicionando las últimas letras"""
    espejo = _words(op, tuple(reversed(tau)), tuple(reversed(shift(tau2, len(tau)))))
    return sorted(tuple(reversed(w)) for w in espejo)


def twistiform_op(op: str, a: FormalSum, b: FormalSum, k: int, mirrored: bool = False) -> FormalSum:
    """
    Operación op ∈ {l,m,r}^k sobre sumas en la base F

    Raises:
        BadOperatorLength: op no tiene longitud k o usa otras letras
    """
    _check_op(op, k)
    regla = mirrored_op_words if mirrored else op_words
    resultado = FormalSum("F")
    for x, cx in a.terms.items():
        for y, cy in b.terms.items():
            for z in regla(op, x, y):
                resultado.add_term(z, cx * cy)
    return resultado


def split_relations(k: int) -> List[Tuple[str, str, str]]:
    """(b m b', b l b', b r b') para |b| + |b'| = k - 1"""
    relaciones = []
    for pos in range(k):
        for b in product(LETTERS, repeat=pos):
            for b2 in product(LETTERS, repeat=k - 1 - pos):
                izq, der = "".join(b), "".join(b2)
                relaciones.append((izq + "m" + der, izq + "l" + der, izq + "r" + der))
    return relaciones


def associativity_relations(k: int) -> List[Relation]:
    """
    (op_W, op'_W, op''_W, op'''_W) para W ∈ {x,y,z}^k, con
    x op_W (y op'_W z) = (x op''_W y) op'''_W z
    """
    relaciones = []
    for W in product("xyz", repeat=k):
        yz = [w for w in W if w in "yz"]
        xy = [w for w in W if w in "xy"]
        op = "".join("l" if w == "x" else "r" for w in W)
        op1 = "".join(
            ("l" if yz[p] == "y" else "r") if p < len(yz) else "m" for p in range(k)
        )
        op2 = "".join(
            ("l" if xy[p] == "x" else "r") if p < len(xy) else "m" for p in range(k)
        )
        op3 = "".join("l" if w in "xy" else "r" for w in W)
        relaciones.append((op, op1, op2, op3))
    return relaciones


def _operands(max_size: int) -> List[Perm]:
    return [tau for n in range(1, max_size + 1) for tau in all_permutations(n)]


def twistiform_relations_check(k: int, n_max: int) -> bool:
    """
    Comprueba las k 3^{k-1} relaciones de partición y las 3^k de asociatividad
    con operandos no vacíos de tamaño <= n_max

    Toda operación se anula sobre palabras de longitud < k, así que las
    relaciones de partición se comprueban para todos los pares (0 = 0 en los
    cortos). Las de asociatividad solo para triples con |x| + |y| >= k y
    |y| + |z| >= k: si no, un miembro se anula y el otro no. Por lo mismo m^k
    solo coincide con el producto de FQSym cuando |x| + |y| >= k.
    """
    operandos = _operands(n_max)
    for m, l, r in split_relations(k):
        for x in operandos:
            for y in operandos:
                if twistiform_op(m, F(x), F(y), k) != twistiform_op(l, F(x), F(y), k) + twistiform_op(r, F(x), F(y), k):
                    return False
    for op, op1, op2, op3 in associativity_relations(k):
        for x in operandos:
            for y in operandos:
                for z in operandos:
                    if len(x) + len(y) + len(z) > n_max + 2:
                        continue
                    if min(len(y) + len(z), len(x) + len(y)) < k:
                        continue
                    izquierda = twistiform_op(op, F(x), twistiform_op(op1, F(y), F(z), k), k)
                    derecha = twistiform_op(op3, twistiform_op(op2, F(x), F(y), k), F(z), k)
                    if izquierda != derecha:
                        return False
    return True


def mirrored_op_on_twists(op: str, T: Twist, T2: Twist) -> FormalSum:
    """
    P_T op̄ P_T' reescrito en la base P

    Raises:
        InvariantViolation: el resultado no está en el álgebra de twists
    """
    if T.k != T2.k:
        raise InvariantViolation("Twists con parámetros distintos")
    return F_to_P(twistiform_op(op, P_expand(T), P_expand(T2), T.k, mirrored=True), T.k)


def mirrored_stability_check(twists: Sequence[Twist], twists2: Sequence[Twist]) -> bool:
    """Las operaciones espejo estabilizan el álgebra de twists"""
    for T in twists:
        for T2 in twists2:
            for op in ("".join(p) for p in product(LETTERS, repeat=T.k)):
                try:
                    mirrored_op_on_twists(op, T, T2)
                except InvariantViolation:
                    return False
    return True
