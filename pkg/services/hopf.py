"""
Sumas formales y operaciones de Hopf: FQSym (bases F y G), el álgebra de twists
(bases P, Q, E, H), indescomponibles y la subálgebra de k-recoils
"""

from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

from sympy import series, symbols

from models.errors import CyclicTwist, InvariantViolation, MixedBasis
from services.congruence import class_extrema
from services.insertion import acyclic_twists, fiber, insert_permutation
from services.lattice import FiniteLattice, increasing_flip_lattice
from services.orientations import Orientation, canopy, orientation_fiber
from services.permutations import (
    Perm,
    convolution,
    format_permutation,
    shift,
    shifted_shuffle,
    standardize,
)
from services.twist import Twist

TENSOR = "⊗"


def render_key(key) -> str:
    """Texto determinista de una clave de base"""
    if isinstance(key, Twist):
        codos = ",".join(f"{r}.{c}" for r, c in key.elbows)
        return f"T{key.n}[{codos}]"
    if isinstance(key, tuple) and key and isinstance(key[0], int):
        return format_permutation(key) if key else "∅"
    if isinstance(key, tuple) and len(key) == 0:
        return "∅"
    if isinstance(key, tuple):
        return f" {TENSOR} ".join(render_key(parte) for parte in key)
    return str(key)


def _sort_key(key):
    if hasattr(key, "sort_key"):
        return (2, key.sort_key())
    if isinstance(key, Twist):
        return (0, key.n, key.mask)
    if isinstance(key, tuple) and key and not isinstance(key[0], int):
        return (1, tuple(_sort_key(parte) for parte in key))
    return (0, len(key), key)


class FormalSum:
    """
    Combinación lineal finita con coeficientes enteros

    `family` identifica la base ("F", "G", "P", "Q", "E", "H", "O", ...); las
    sumas tensoriales usan "F⊗F", "P⊗P", etc. Nunca se guardan coeficientes nulos.
    """

    __slots__ = ("family", "k", "terms")

    def __init__(self, family: str, terms: Optional[Dict[Hashable, int]] = None, k: Optional[int] = None):
        self.family = family
        self.k = k
        self.terms: Dict[Hashable, int] = {
            clave: coef for clave, coef in (terms or {}).items() if coef
        }

    @classmethod
    def of(cls, family: str, keys: Iterable[Hashable], k: Optional[int] = None) -> "FormalSum":
        suma = cls(family, k=k)
        for clave in keys:
            suma.add_term(clave, 1)
        return suma

    def add_term(self, clave: Hashable, coef: int) -> None:
        nuevo = self.terms.get(clave, 0) + coef
        if nuevo:
            self.terms[clave] = nuevo
        else:
            self.terms.pop(clave, None)

    def _check(self, otra: "FormalSum") -> None:
        if not isinstance(otra, FormalSum):
            raise MixedBasis(f"No se puede operar con {type(otra).__name__}")
        if self.family != otra.family:
            raise MixedBasis(f"Bases distintas: {self.family} y {otra.family}")
        if self.k is not None and otra.k is not None and self.k != otra.k:
            raise MixedBasis(f"Parámetros distintos: k={self.k} y k={otra.k}")

    def _k_with(self, otra: "FormalSum") -> Optional[int]:
        return self.k if self.k is not None else otra.k

    def __add__(self, otra: "FormalSum") -> "FormalSum":
        self._check(otra)
        suma = FormalSum(self.family, dict(self.terms), self._k_with(otra))
        for clave, coef in otra.terms.items():
            suma.add_term(clave, coef)
        return suma

    def __sub__(self, otra: "FormalSum") -> "FormalSum":
        return self + (-1) * otra

    def __rmul__(self, escalar: int) -> "FormalSum":
        return FormalSum(
            self.family, {c: escalar * v for c, v in self.terms.items()}, self.k
        )

    def __eq__(self, otra) -> bool:
        return (
            isinstance(otra, FormalSum)
            and self.family == otra.family
            and self.terms == otra.terms
        )

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.items())

    def items(self) -> List[Tuple[Hashable, int]]:
        return sorted(self.terms.items(), key=lambda par: _sort_key(par[0]))

    def keys(self) -> List[Hashable]:
        return [clave for clave, _ in self.items()]

    def coefficient(self, clave: Hashable) -> int:
        return self.terms.get(clave, 0)

    def is_boolean(self) -> bool:
        return all(coef == 1 for coef in self.terms.values())

    def is_zero(self) -> bool:
        return not self.terms

    def size_of_terms(self) -> int:
        """Suma de los coeficientes"""
        return sum(self.terms.values())

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        partes = []
        for clave, coef in self.items():
            base = f"{self.family.split(TENSOR)[0]}[{render_key(clave)}]"
            if TENSOR in self.family:
                familias = self.family.split(TENSOR)
                base = f" {TENSOR} ".join(
                    f"{f}[{render_key(parte)}]" for f, parte in zip(familias, clave)
                )
            partes.append(base if coef == 1 else f"{coef} {base}")
        return " + ".join(partes)

    def __repr__(self) -> str:
        return f"FormalSum({self.family}: {self.to_text()})"


def F(*taus: Sequence[int]) -> FormalSum:
    return FormalSum.of("F", (tuple(t) for t in taus))


def G(*taus: Sequence[int]) -> FormalSum:
    return FormalSum.of("G", (tuple(t) for t in taus))


def _bilinear(
    a: FormalSum, b: FormalSum, family: str, regla: Callable, k: Optional[int] = None
) -> FormalSum:
    resultado = FormalSum(family, k=k)
    for x, cx in a.terms.items():
        for y, cy in b.terms.items():
            for z in regla(x, y):
                resultado.add_term(z, cx * cy)
    return resultado


def _expect(a: FormalSum, family: str) -> None:
    if a.family != family:
        raise MixedBasis(f"Se esperaba la base {family}, no {a.family}")


# --- FQSym -------------------------------------------------------------------


def product_F(a: FormalSum, b: FormalSum) -> FormalSum:
    """F_tau . F_tau' = suma sobre el shuffle desplazado"""
    _expect(a, "F")
    _expect(b, "F")
    return _bilinear(a, b, "F", shifted_shuffle)


def coproduct_F(a: FormalSum) -> FormalSum:
    """Delta F_sigma = suma sobre los cortes de sigma de F_std(izq) ⊗ F_std(der)"""
    _expect(a, "F")
    resultado = FormalSum("F⊗F")
    for sigma, coef in a.terms.items():
        for p in range(len(sigma) + 1):
            resultado.add_term((standardize(sigma[:p]), standardize(sigma[p:])), coef)
    return resultado


def product_G(a: FormalSum, b: FormalSum) -> FormalSum:
    """Base dual: G_tau . G_tau' = suma sobre la convolución"""
    _expect(a, "G")
    _expect(b, "G")
    return _bilinear(a, b, "G", convolution)


def _value_split(sigma: Perm, p: int) -> Tuple[Perm, Perm]:
    bajos = tuple(v for v in sigma if v <= p)
    altos = tuple(v for v in sigma if v > p)
    return standardize(bajos), standardize(altos)


def coproduct_G(a: FormalSum) -> FormalSum:
    """Delta G_sigma = suma sobre p de G_std(valores <= p) ⊗ G_std(valores > p)"""
    _expect(a, "G")
    resultado = FormalSum("G⊗G")
    for sigma, coef in a.terms.items():
        for p in range(len(sigma) + 1):
            resultado.add_term(_value_split(sigma, p), coef)
    return resultado


def tensor_multiply(x: FormalSum, y: FormalSum, product: Callable) -> FormalSum:
    """(a ⊗ b)(c ⊗ d) = ac ⊗ bd"""
    if TENSOR not in x.family or x.family != y.family:
        raise MixedBasis("Se esperaban dos sumas tensoriales de la misma base")
    izquierda, derecha = x.family.split(TENSOR)
    resultado = FormalSum(x.family, k=x.k)
    for (a, b), ca in x.terms.items():
        for (c, d), cc in y.terms.items():
            ac = product(FormalSum(izquierda, {a: 1}, x.k), FormalSum(izquierda, {c: 1}, x.k))
            bd = product(FormalSum(derecha, {b: 1}, x.k), FormalSum(derecha, {d: 1}, x.k))
            for u, cu in ac.terms.items():
                for v, cv in bd.terms.items():
                    resultado.add_term((u, v), ca * cc * cu * cv)
    return resultado


# --- Álgebra de twists: base P -----------------------------------------------


def _psi(k: int, tau: Sequence[int], signature: Optional[str] = None) -> Twist:
    return insert_permutation(k, tuple(tau), signature)


def P(*twists: Twist) -> FormalSum:
    if not twists:
        return FormalSum("P")
    return FormalSum.of("P", twists, k=twists[0].k)


def P_expand(T: Twist) -> FormalSum:
    """P_T = suma de F_tau sobre la fibra de T"""
    return FormalSum.of("F", fiber(T))


def expand_P(x: FormalSum) -> FormalSum:
    """Expansión en F de una combinación de P"""
    _expect(x, "P")
    resultado = FormalSum("F")
    for T, coef in x.terms.items():
        for tau in fiber(T):
            resultado.add_term(tau, coef)
    return resultado


def F_to_P(x: FormalSum, k: int, signature: Optional[str] = None) -> FormalSum:
    """
    Reescribe en la base P una suma de F que pertenece al álgebra de twists

    Raises:
        InvariantViolation: la suma no es constante sobre alguna fibra
    """
    _expect(x, "F")
    resultado = FormalSum("P", k=k)
    vistos: Dict[Twist, int] = {}
    for tau, coef in x.terms.items():
        T = _psi(k, tau, signature)
        if T in vistos:
            if vistos[T] != coef:
                raise InvariantViolation(
                    f"Coeficientes distintos en la fibra de {render_key(T)}"
                )
            continue
        vistos[T] = coef
        if any(x.coefficient(sigma) != coef for sigma in fiber(T)):
            raise InvariantViolation(f"La suma no contiene la fibra completa de {render_key(T)}")
        resultado.add_term(T, coef)
    return resultado


@lru_cache(maxsize=32)
def _flip_lattice(k: int, n: int) -> FiniteLattice:
    return increasing_flip_lattice(k, n)


def fiber_extrema(T: Twist) -> Tuple[Perm, Perm]:
    return class_extrema(fiber(T))


def interval_bounds(T: Twist, T2: Twist) -> Tuple[Twist, Twist]:
    """
    (T\\T', T/T'): inserción de T en las primeras filas y columnas, y de T'
    en las primeras con T en las últimas
    """
    k, n = T.k, T.n
    minimo, maximo = fiber_extrema(T)
    minimo2, maximo2 = fiber_extrema(T2)
    abajo = _psi(k, minimo + shift(minimo2, n))
    arriba = _psi(k, shift(maximo2, n) + maximo)
    return abajo, arriba


def product_P(T: Twist, T2: Twist) -> FormalSum:
    """P_T . P_T' = suma de P_S sobre el intervalo [T\\T', T/T'] de flips crecientes"""
    if T.k != T2.k:
        raise MixedBasis(f"Parámetros distintos: k={T.k} y k={T2.k}")
    abajo, arriba = interval_bounds(T, T2)
    reticulo = _flip_lattice(T.k, T.n + T2.n)
    intervalo = reticulo.up_set(abajo) & reticulo.down_set(arriba)
    return FormalSum.of("P", intervalo, k=T.k)


def product_P_sum(a: FormalSum, b: FormalSum) -> FormalSum:
    _expect(a, "P")
    _expect(b, "P")
    return _bilinear(a, b, "P", lambda x, y: product_P(x, y).keys(), k=a._k_with(b))


def order_ideals(T: Twist) -> List[FrozenSet[int]]:
    """Ideales del orden de contacto: prefijos de las extensiones lineales"""
    ideales = set()
    for tau in fiber(T):
        for p in range(len(tau) + 1):
            ideales.add(frozenset(tau[:p]))
    return sorted(ideales, key=lambda x: (len(x), sorted(x)))


def _restricted_twists(T: Twist, valores: FrozenSet[int]) -> List[Twist]:
    """psi de las extensiones lineales (estandarizadas) de la restricción a `valores`"""
    vistos = set()
    for tau in fiber(T):
        vistos.add(standardize(tuple(v for v in tau if v in valores)))
    return sorted({_psi(T.k, sigma) for sigma in vistos}, key=_sort_key)


def coproduct_P(T: Twist) -> FormalSum:
    """
    Delta P_T por cortes del grafo de contacto

    Para cada ideal I del orden de contacto se suman los P de las extensiones
    de la restricción a I, tensorizados con el P de la restricción al
    complemento.
    """
    resultado = FormalSum("P⊗P", k=T.k)
    todos = frozenset(range(1, T.n + 1))
    for ideal in order_ideals(T):
        for abajo in _restricted_twists(T, ideal):
            for arriba in _restricted_twists(T, todos - ideal):
                resultado.add_term((abajo, arriba), 1)
    return resultado


def coproduct_P_via_F(T: Twist) -> FormalSum:
    """Delta P_T calculado en FQSym y reescrito en P ⊗ P"""
    delta = coproduct_F(P_expand(T))
    resultado = FormalSum("P⊗P", k=T.k)
    for (a, b), coef in delta.terms.items():
        A, B = _psi(T.k, a), _psi(T.k, b)
        if (a, b) == (fiber_extrema(A)[0], fiber_extrema(B)[0]):
            resultado.add_term((A, B), coef)
    return resultado


# --- Base dual Q -------------------------------------------------------------


def Q(*twists: Twist) -> FormalSum:
    if not twists:
        return FormalSum("Q")
    return FormalSum.of("Q", twists, k=twists[0].k)


def _representative(T: Twist) -> Perm:
    grafo = T.contact_graph()
    if not grafo.is_acyclic:
        raise CyclicTwist("La base Q solo está indexada por twists acíclicos")
    return fiber(T)[0]


def Q_product(T: Twist, T2: Twist, representatives: Optional[Tuple[Perm, Perm]] = None) -> FormalSum:
    """
    Q_T . Q_T' = suma de Q_psi(sigma) sobre la convolución de representantes

    Equivale a reinsertar en T' la permutación tau restringida a cada
    n-subconjunto X de [n+n'].
    """
    if T.k != T2.k:
        raise MixedBasis(f"Parámetros distintos: k={T.k} y k={T2.k}")
    tau, tau2 = representatives or (_representative(T), _representative(T2))
    resultado = FormalSum("Q", k=T.k)
    for sigma in convolution(tau, tau2):
        resultado.add_term(_psi(T.k, sigma), 1)
    return resultado


def Q_coproduct(T: Twist, representative: Optional[Perm] = None) -> FormalSum:
    """Delta Q_S = suma sobre p de Q_L(S,p) ⊗ Q_R(S,p)"""
    sigma = representative or _representative(T)
    resultado = FormalSum("Q⊗Q", k=T.k)
    for p in range(len(sigma) + 1):
        bajos, altos = _value_split(sigma, p)
        resultado.add_term((_psi(T.k, bajos), _psi(T.k, altos)), 1)
    return resultado


def pairing(p_sum: FormalSum, q_sum: FormalSum) -> int:
    """<P, Q>: coeficiente de F_tau por G_tau en los representantes de Q"""
    _expect(p_sum, "P")
    _expect(q_sum, "Q")
    expansion = expand_P(p_sum)
    return sum(coef * expansion.coefficient(_representative(T)) for T, coef in q_sum.terms.items())


# --- Bases multiplicativas ---------------------------------------------------


def E_basis(T: Twist) -> FormalSum:
    """E^T = suma de P_T' con T <= T'"""
    reticulo = _flip_lattice(T.k, T.n)
    return FormalSum.of("P", reticulo.up_set(T), k=T.k)


def H_basis(T: Twist) -> FormalSum:
    """H^T = suma de P_T' con T' <= T"""
    reticulo = _flip_lattice(T.k, T.n)
    return FormalSum.of("P", reticulo.down_set(T), k=T.k)


def E_H_bases(k: int, n: int) -> Dict[Twist, Tuple[FormalSum, FormalSum]]:
    """Cambio de base E/H -> P para todos los twists acíclicos de tamaño n"""
    return {T: (E_basis(T), H_basis(T)) for T in _flip_lattice(k, n).elements}


def prefix_cuts(T: Twist) -> List[int]:
    """Posiciones 0 < j < n tales que [j] es un ideal del orden de contacto"""
    grafo = T.contact_graph()
    if not grafo.is_acyclic:
        raise CyclicTwist("Solo los twists acíclicos tienen cortes")
    cierre = grafo.closure
    cortes = []
    for j in range(1, T.n):
        if not any(cierre.less(b, a) for a in range(1, j + 1) for b in range(j + 1, T.n + 1)):
            cortes.append(j)
    return cortes


def is_E_indecomposable(T: Twist) -> bool:
    return T.n > 0 and not prefix_cuts(T)


def min_fiber_has_prefix(T: Twist) -> bool:
    """El mínimo de la fibra empieza por una permutación de [j] para algún 0 < j < n"""
    minimo = fiber_extrema(T)[0]
    return any(set(minimo[:j]) == set(range(1, j + 1)) for j in range(1, T.n))


def count_indecomposables(k: int, n: int, budget: int = 10**7) -> int:
    return sum(1 for T in acyclic_twists(k, n, budget) if is_E_indecomposable(T))


def gf_identity_holds(indecomposables: Sequence[int], acyclic: Sequence[int]) -> bool:
    """
    1 / (1 - sum I_n t^n) = sum A_n t^n, con indecomposables[0] = I_1 y
    acyclic[0] = A_0 = 1
    """
    t = symbols("t")
    grado = min(len(indecomposables), len(acyclic) - 1)
    denominador = 1 - sum(c * t ** (i + 1) for i, c in enumerate(indecomposables[:grado]))
    desarrollo = series(1 / denominador, t, 0, grado + 1).removeO()
    return all(int(desarrollo.coeff(t, m)) == acyclic[m] for m in range(grado + 1))


def indecomposables_from_acyclic(acyclic: Sequence[int]) -> List[int]:
    """Inversión de la identidad: I_n a partir de A_0 = 1, A_1, ..., A_N"""
    indescomponibles: List[int] = []
    for m in range(1, len(acyclic)):
        valor = acyclic[m] - sum(
            indescomponibles[i - 1] * acyclic[m - i] for i in range(1, m)
        )
        indescomponibles.append(valor)
    return indescomponibles


# --- Subálgebra de k-recoils -------------------------------------------------


def recoil_sum(theta: Orientation) -> FormalSum:
    """X_theta = suma de F_tau con recoil theta"""
    return FormalSum.of("F", orientation_fiber(theta))


def recoil_sum_in_P(theta: Orientation, twists: Iterable[Twist]) -> FormalSum:
    """X_theta como suma de P_T sobre los twists con canopy theta"""
    return FormalSum.of("P", (T for T in twists if canopy(T) == theta), k=theta.k)

