"""Series truncadas y transformadas de puntos enteros de conos de posets"""

from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from models.errors import CyclicInput, InvariantViolation, SizeMismatch
from services.permutations import Poset, all_permutations, linear_extensions, shifted_shuffle
from services.twist import Twist

Exponent = Tuple[int, ...]

# Numerador de la forma cerrada por descenso i de tau
SHIFTED_NUMERATOR = "shifted"  # t_{tau_{i+1}} ... t_{tau_n}
LITERAL_NUMERATOR = "literal"  # t_{tau_i} ... t_{tau_n}


class TruncatedSeries:
    """
    Serie de potencias en `nvars` variables truncada en grado total `degree`

    Args:
        nvars: número de variables t_1..t_nvars
        degree: grado total máximo que se conserva
        terms: exponente -> coeficiente
    """

    __slots__ = ("nvars", "degree", "terms")

    def __init__(self, nvars: int, degree: int, terms: Optional[Dict[Exponent, int]] = None):
        self.nvars = nvars
        self.degree = degree
        self.terms: Dict[Exponent, int] = {}
        for exponente, coef in (terms or {}).items():
            if len(exponente) != nvars:
                raise SizeMismatch(f"Exponente {exponente} con {nvars} variables")
            if any(e < 0 for e in exponente):
                raise InvariantViolation(f"Exponente negativo {exponente}")
            if coef and sum(exponente) <= degree:
                self.terms[tuple(exponente)] = coef

    @classmethod
    def one(cls, nvars: int, degree: int) -> "TruncatedSeries":
        return cls(nvars, degree, {(0,) * nvars: 1})

    @classmethod
    def monomial(cls, exponente: Sequence[int], degree: int) -> "TruncatedSeries":
        return cls(len(exponente), degree, {tuple(exponente): 1})

    @classmethod
    def geometric(cls, exponente: Sequence[int], degree: int) -> "TruncatedSeries":
        """1 / (1 - t^exponente) truncada"""
        paso = sum(exponente)
        if paso == 0:
            raise InvariantViolation("La serie geométrica de 1 no converge")
        terms = {}
        m = 0
        while m * paso <= degree:
            terms[tuple(m * e for e in exponente)] = 1
            m += 1
        return cls(len(exponente), degree, terms)

    def _check(self, otra: "TruncatedSeries") -> int:
        if self.nvars != otra.nvars:
            raise SizeMismatch(f"Series con {self.nvars} y {otra.nvars} variables")
        return min(self.degree, otra.degree)

    def __add__(self, otra: "TruncatedSeries") -> "TruncatedSeries":
        grado = self._check(otra)
        suma = dict(self.terms)
        for exponente, coef in otra.terms.items():
            suma[exponente] = suma.get(exponente, 0) + coef
        return TruncatedSeries(self.nvars, grado, suma)

    def __mul__(self, otra: "TruncatedSeries") -> "TruncatedSeries":
        grado = self._check(otra)
        producto: Dict[Exponent, int] = {}
        for a, ca in self.terms.items():
            da = sum(a)
            for b, cb in otra.terms.items():
                if da + sum(b) > grado:
                    continue
                exponente = tuple(x + y for x, y in zip(a, b))
                producto[exponente] = producto.get(exponente, 0) + ca * cb
        return TruncatedSeries(self.nvars, grado, producto)

    def __eq__(self, otra) -> bool:
        return (
            isinstance(otra, TruncatedSeries)
            and self.nvars == otra.nvars
            and self.degree == otra.degree
            and self.terms == otra.terms
        )

    def coefficient(self, exponente: Sequence[int]) -> int:
        return self.terms.get(tuple(exponente), 0)

    def embed(self, offset: int, nvars: int) -> "TruncatedSeries":
        """Renombra t_i -> t_{i+offset} dentro de un anillo con `nvars` variables"""
        terms = {}
        for exponente, coef in self.terms.items():
            nuevo = [0] * nvars
            nuevo[offset : offset + self.nvars] = exponente
            terms[tuple(nuevo)] = coef
        return TruncatedSeries(nvars, self.degree, terms)

    def __repr__(self) -> str:
        return f"TruncatedSeries(nvars={self.nvars}, degree={self.degree}, terms={len(self.terms)})"


def _points(n: int, presupuesto: int) -> Iterator[Exponent]:
    """Vectores de Z_{>=0}^n con suma <= presupuesto"""
    if n == 0:
        yield ()
        return
    for primero in range(presupuesto + 1):
        for resto in _points(n - 1, presupuesto - primero):
            yield (primero,) + resto


def _as_poset(x: Union[Sequence[int], Poset, Twist]) -> Poset:
    if isinstance(x, Poset):
        return x
    if isinstance(x, Twist):
        grafo = x.contact_graph()
        if not grafo.is_acyclic:
            raise CyclicInput("El twist tiene un grafo de contacto con ciclos")
        return grafo.closure
    return Poset.chain(tuple(x))


def integer_point_transform(x: Union[Sequence[int], Poset, Twist], degree: int) -> TruncatedSeries:
    """
    Puntos enteros de {x >= 0 : x_i <= x_j si i ◁ j con i < j, x_i < x_j si i ◁ j con i > j}

    Args:
        x: permutación (cadena), poset o twist acíclico
        degree: grado total de truncamiento

    Raises:
        CyclicInput: el objeto no es acíclico
    """
    orden = _as_poset(x)
    debiles = [(i, j) for i, j in orden.relations if i < j]
    estrictas = [(i, j) for i, j in orden.relations if i > j]
    terms = {}
    for punto in _points(orden.n, degree):
        if all(punto[i - 1] <= punto[j - 1] for i, j in debiles) and all(
            punto[i - 1] < punto[j - 1] for i, j in estrictas
        ):
            terms[punto] = 1
    return TruncatedSeries(orden.n, degree, terms)


def closed_form_transform(
    tau: Sequence[int], degree: int, numerator: str = SHIFTED_NUMERATOR
) -> TruncatedSeries:
    """
    prod_{descensos} (numerador) / prod_i (1 - t_{tau_i} ... t_{tau_n}), truncada

    `numerator` elige t_{tau_{i+1}}...t_{tau_n} (SHIFTED_NUMERATOR) o
    t_{tau_i}...t_{tau_n} (LITERAL_NUMERATOR) por cada descenso i.
    """
    n = len(tau)

    def sufijo(i: int) -> Exponent:
        exponente = [0] * n
        for v in tau[i - 1 :]:
            exponente[v - 1] = 1
        return tuple(exponente)

    resultado = TruncatedSeries.one(n, degree)
    for i in range(1, n):
        if tau[i - 1] > tau[i]:
            inicio = i + 1 if numerator == SHIFTED_NUMERATOR else i
            resultado = resultado * TruncatedSeries.monomial(sufijo(inicio), degree)
    for i in range(1, n + 1):
        resultado = resultado * TruncatedSeries.geometric(sufijo(i), degree)
    return resultado


def closed_form_is_exact(tau: Sequence[int], degree: int, numerator: str = SHIFTED_NUMERATOR) -> bool:
    return closed_form_transform(tau, degree, numerator) == integer_point_transform(tau, degree)


def inexact_witnesses(n: int, degree: int, numerator: str) -> List[Tuple[int, ...]]:
    """Permutaciones de [n] donde la forma cerrada no coincide con el conteo directo"""
    return [tau for tau in all_permutations(n) if not closed_form_is_exact(tau, degree, numerator)]


def transform_of_extensions(x: Union[Poset, Twist], degree: int) -> TruncatedSeries:
    """Suma de las transformadas de las extensiones lineales"""
    orden = _as_poset(x)
    total = TruncatedSeries(orden.n, degree)
    for tau in linear_extensions(orden):
        total = total + integer_point_transform(tau, degree)
    return total


def shuffle_identity_holds(tau: Sequence[int], tau2: Sequence[int], degree: int) -> bool:
    """Z_tau(t_1..t_n) Z_tau'(t_{n+1}..) = suma sobre el shuffle desplazado de Z_sigma"""
    n, m = len(tau), len(tau2)
    izquierda = integer_point_transform(tau, degree).embed(0, n + m)
    derecha = integer_point_transform(tau2, degree).embed(n, n + m)
    total = TruncatedSeries(n + m, degree)
    for sigma in shifted_shuffle(tau, tau2):
        total = total + integer_point_transform(sigma, degree)
    return izquierda * derecha == total
