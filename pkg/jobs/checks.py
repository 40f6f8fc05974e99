"""Job que ejecuta suites de invariantes con nombre para el comando `check`"""

from typing import Callable, Dict, List, Optional, Tuple

from config.settings import AppConfig
from models.errors import TwistLabError
from models.schemas import CheckResult
from services.cambrian import all_signatures, canopy_commutes, cambrian_congruence_classes, cambrian_fibers
from services.congruence import as_sets, congruence_classes, is_weak_interval, verify_lattice_congruence
from services.geometry import facet_normal_count, facet_normal_series_count, skeleton_orientation_check
from services.hopf import (
    P,
    coproduct_P,
    coproduct_P_via_F,
    count_indecomposables,
    expand_P,
    gf_identity_holds,
    product_F,
    product_P,
    render_key,
)
from services.insertion import acyclic_twists, fiber, insert_by_descent, insert_permutation
from services.lattice import cyclic_only_comparable_pairs, increasing_flip_lattice, psi_isomorphism
from services.orientations import canopy, recoil_scheme, restrict
from services.permutations import all_permutations, format_permutation
from services.schroder import coproduct_is_coassociative, face_triangle_commutes, schroder_is_quotient
from services.serialization import dumps_twist, loads_twist
from services.series import SHIFTED_NUMERATOR, inexact_witnesses
from services.twistiform import twistiform_relations_check
from utils.reporter import Reporter

# Un invariante devuelve None si se cumple o un contraejemplo serializado
Invariant = Callable[[int], Optional[str]]


def _first(fallos) -> Optional[str]:
    return next(iter(fallos), None)


def _triangle(max_n: int) -> Optional[str]:
    for k in (1, 2):
        for n in range(1, min(max_n, 5) + 1):
            for tau in all_permutations(n):
                if recoil_scheme(k, tau) != canopy(insert_permutation(k, tau)):
                    return f"k={k} tau={format_permutation(tau)}"
    return None


def _restriction(max_n: int) -> Optional[str]:
    for n in range(1, min(max_n, 5) + 1):
        for tau in all_permutations(n):
            if restrict(insert_permutation(2, tau), 1) != insert_permutation(1, tau):
                return f"tau={format_permutation(tau)}"
    return None


def _descent_oracle(max_n: int) -> Optional[str]:
    return _first(
        f"k={k} tau={format_permutation(tau)}"
        for k in (1, 2)
        for n in range(1, min(max_n, 5) + 1)
        for tau in all_permutations(n)
        if insert_permutation(k, tau) != insert_by_descent(k, tau)
    )


def _fibers_are_classes(max_n: int) -> Optional[str]:
    for k in (1, 2):
        for n in range(1, min(max_n, 5) + 1):
            fibras = {}
            for tau in all_permutations(n):
                fibras.setdefault(insert_permutation(k, tau), []).append(tau)
            if as_sets(fibras.values()) != as_sets(congruence_classes(k, n)):
                return f"k={k} n={n}"
    return None


def _lattice_congruence(max_n: int) -> Optional[str]:
    for k in (1, 2):
        n = min(max_n, 4)
        if not verify_lattice_congruence(congruence_classes(k, n), n):
            return f"k={k} n={n}"
    return None


def _psi_isomorphism(max_n: int) -> Optional[str]:
    try:
        psi_isomorphism(2, min(max_n, 4))
    except TwistLabError as e:
        return str(e)
    return None


def _cambrian_psi_isomorphism(max_n: int) -> Optional[str]:
    for firma in all_signatures(min(max_n, 4)):
        try:
            psi_isomorphism(2, len(firma), signature=firma)
        except TwistLabError:
            return f"firma={firma}"
    return None


def _flip_lattice_is_lattice(max_n: int) -> Optional[str]:
    for k in (1, 2):
        if not increasing_flip_lattice(k, min(max_n, 5)).is_lattice():
            return f"k={k}"
    return None


def _cyclic_only_pairs(max_n: int) -> Optional[str]:
    for n in range(3, min(max_n, 5) + 1):
        if cyclic_only_comparable_pairs(2, n):
            return None
    return f"k=2 n<={min(max_n, 5)}: sin pares"


def _skeleton(max_n: int) -> Optional[str]:
    for k in (1, 2):
        if not skeleton_orientation_check(k, min(max_n, 4)):
            return f"k={k} n={min(max_n, 4)}"
    return None


def _facet_counts(max_n: int) -> Optional[str]:
    return _first(
        f"k={k} n={n}"
        for k in (1, 2, 3)
        for n in range(1, max_n + 3)
        if facet_normal_count(k, n) != facet_normal_series_count(k, n)
    )


def _product_matches_F(max_n: int) -> Optional[str]:
    for n in range(1, min(max_n, 3) + 1):
        for m in range(1, min(max_n, 4) - n + 1):
            for T in acyclic_twists(2, n):
                for T2 in acyclic_twists(2, m):
                    if expand_P(product_P(T, T2)) != product_F(expand_P(P(T)), expand_P(P(T2))):
                        return f"{render_key(T)} · {render_key(T2)}"
    return None


def _coproduct_cuts(max_n: int) -> Optional[str]:
    return _first(
        dumps_twist(T)
        for T in acyclic_twists(2, min(max_n, 4))
        if coproduct_P(T) != coproduct_P_via_F(T)
    )


def _generating_function(max_n: int) -> Optional[str]:
    top = min(max_n, 5)
    acyclicos = [1] + [len(acyclic_twists(2, n)) for n in range(1, top + 1)]
    indescomponibles = [count_indecomposables(2, n) for n in range(1, top + 1)]
    return None if gf_identity_holds(indescomponibles, acyclicos) else "k=2"


def _series_closed_form(max_n: int) -> Optional[str]:
    testigos = inexact_witnesses(min(max_n, 3), 4, SHIFTED_NUMERATOR)
    return format_permutation(testigos[0]) if testigos else None


def _twistiform(max_n: int) -> Optional[str]:
    return _first(f"k={k}" for k in (1, 2) if not twistiform_relations_check(k, min(max_n, 2)))


def _cambrian_canopy(max_n: int) -> Optional[str]:
    return _first(
        f"k={k} firma={firma}"
        for k in (1, 2)
        for firma in all_signatures(min(max_n, 4))
        if not canopy_commutes(k, firma)
    )


def _cambrian_fibers(max_n: int) -> Optional[str]:
    for firma in all_signatures(min(max_n, 4)):
        fibras = cambrian_fibers(1, firma)
        if as_sets(fibras.values()) != as_sets(cambrian_congruence_classes(1, firma)):
            return f"firma={firma}"
        if not all(is_weak_interval(f) for f in fibras.values()):
            return f"firma={firma} (fibra no es intervalo)"
    return None


def _schroder_triangle(max_n: int) -> Optional[str]:
    return _first(f"k={k}" for k in (1, 2) if not face_triangle_commutes(k, min(max_n, 4)))


def _schroder_quotient(max_n: int) -> Optional[str]:
    return None if schroder_is_quotient(1, min(max_n, 3)) else "k=1"


def _coassociativity(max_n: int) -> Optional[str]:
    return None if coproduct_is_coassociative(min(max_n, 4)) else "OrdPart"


def _round_trip(max_n: int) -> Optional[str]:
    return _first(
        dumps_twist(T) for T in acyclic_twists(2, min(max_n, 4)) if loads_twist(dumps_twist(T)) != T
    )


def _fiber_counts(max_n: int) -> Optional[str]:
    total = sum(len(fiber(T)) for T in acyclic_twists(2, min(max_n, 4)))
    return None if total == len(all_permutations(min(max_n, 4))) else f"{total} permutaciones"


SUITES: Dict[str, List[Tuple[str, Invariant]]] = {
    "triangle": [
        ("recoils = canopy o psi", _triangle),
        ("restricción conmuta con psi", _restriction),
    ],
    "congruence": [
        ("inserción por splice = por descenso", _descent_oracle),
        ("fibras = clases de congruencia", _fibers_are_classes),
        ("congruencia de retículo", _lattice_congruence),
        ("las fibras particionan S_n", _fiber_counts),
    ],
    "lattice": [
        ("psi induce isomorfismo", _psi_isomorphism),
        ("psi cambriano induce isomorfismo", _cambrian_psi_isomorphism),
        ("flips crecientes forman retículo", _flip_lattice_is_lattice),
        ("pares comparables solo por twists cíclicos", _cyclic_only_pairs),
    ],
    "geometry": [
        ("1-esqueleto orientado por U", _skeleton),
        ("normales de facetas = serie", _facet_counts),
    ],
    "hopf": [
        ("producto P por intervalos", _product_matches_F),
        ("coproducto P por cortes", _coproduct_cuts),
        ("identidad de series generatrices", _generating_function),
        ("forma cerrada de la transformada", _series_closed_form),
        ("relaciones twistiformes", _twistiform),
    ],
    "cambrian": [
        ("canopy cambriano conmuta", _cambrian_canopy),
        ("fibras cambrianas = clases", _cambrian_fibers),
    ],
    "schroder": [
        ("triángulo de caras", _schroder_triangle),
        ("Schröder = cociente", _schroder_quotient),
        ("coasociatividad OrdPart", _coassociativity),
    ],
    "serialization": [
        ("ida y vuelta JSON", _round_trip),
    ],
}


class InvariantSuiteJob:
    """Job que ejecuta suites de invariantes y reporta pass/fail"""

    def __init__(self, config: AppConfig, reporter: Optional[Reporter] = None):
        self.config = config
        self.reporter = reporter or Reporter(config)

    def procesar_suite(self, nombre: str) -> List[CheckResult]:
        """
        Ejecuta una suite

        Args:
            nombre: nombre de la suite (ver SUITES)

        Returns:
            Un CheckResult por invariante

        Raises:
            KeyError: suite desconocida
        """
        invariantes = SUITES[nombre]
        self.reporter.inicio(f"Suite {nombre}: {len(invariantes)} invariantes")
        if self.config.check_max_n > 5:
            self.reporter.aviso(f"check_max_n={self.config.check_max_n}: las suites recortan n a 5")
        resultados = []
        for titulo, invariante in invariantes:
            self.reporter.buscando(titulo)
            try:
                contraejemplo = invariante(self.config.check_max_n)
            except TwistLabError as e:
                contraejemplo = f"{type(e).__name__}: {e}"
            resultado = CheckResult(
                suite=nombre,
                name=titulo,
                passed=contraejemplo is None,
                counterexample=contraejemplo,
            )
            if resultado.passed:
                self.reporter.ok(titulo)
            else:
                self.reporter.error(f"{titulo}: {contraejemplo}")
            resultados.append(resultado)
        return resultados

    def procesar_todas(self) -> List[CheckResult]:
        resultados = []
        for nombre in SUITES:
            resultados.extend(self.procesar_suite(nombre))
        return resultados
