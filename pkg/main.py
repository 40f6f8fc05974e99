"""
twistlab: twists, la inserción psi^k, retículos de flips, geometría y álgebras
de Hopf sobre twists acíclicos desde la línea de comandos

Uso:
    python main.py count acyclic -k 2 -n 4
    python main.py insert -k 2 31542
    python main.py lattice -k 1 -n 4 --dot
    python main.py hopf product --basis P -k 2 12 1
    python main.py check hopf
    python main.py table twists --jobs 4
"""

import argparse
import json
import sys
from typing import List, Optional

from dotenv import load_dotenv

from config.settings import AppConfig, Basis, CountKind
from jobs.checks import SUITES, InvariantSuiteJob
from jobs.tabulation import TABLES, CountTableJob, count_value
from models.errors import ParseError, TwistLabError
from services.hopf import (
    F,
    G,
    P,
    E_basis,
    H_basis,
    Q,
    Q_coproduct,
    Q_product,
    coproduct_F,
    coproduct_G,
    coproduct_P,
    product_F,
    product_G,
    product_P_sum,
)
from services.insertion import insert_permutation
from services.lattice import increasing_flip_lattice, weak_order_lattice
from services.permutations import parse_permutation, parse_signature
from services.schroder import (
    O,
    coproduct_O,
    insert_ordered_partition,
    parse_partition,
    product_O,
    schroder_lattice,
)
from services.serialization import dumps_formal_sum, dumps_lattice, dumps_twist, twist_record
from utils.dot import contact_graph_to_dot, lattice_to_dot
from utils.reporter import Reporter


# ============================================================================
# CONFIGURACIÓN
# ============================================================================


def setup_config(args: argparse.Namespace) -> AppConfig:
    """AppConfig desde el entorno con los flags de la línea de comandos encima"""
    config = AppConfig()
    cambios = {}
    if getattr(args, "budget", None) is not None:
        cambios["budget"] = args.budget
    if getattr(args, "jobs", None) is not None:
        cambios["jobs"] = args.jobs
    if getattr(args, "verbose", False):
        cambios["verbose"] = True
    return config.model_copy(update=cambios) if cambios else config


def _permutation(texto: str):
    try:
        return parse_permutation(texto)
    except ValueError as e:
        raise ParseError(str(e), field="permutation") from e


def _signature(texto: Optional[str]) -> Optional[str]:
    return parse_signature(texto) if texto else None


# ============================================================================
# COMANDOS
# ============================================================================


def comando_count(args: argparse.Namespace, config: AppConfig, reporter: Reporter) -> int:
    reporter.buscando(f"Contando {args.kind} para k={args.k}, n={args.n}")
    valor = count_value(
        CountKind(args.kind),
        args.k,
        args.n,
        config.budget,
        _signature(args.signature),
        args.alternating,
    )
    print(valor)
    return 0


def comando_insert(args: argparse.Namespace, config: AppConfig, reporter: Reporter) -> int:
    if "|" in args.word:
        H = insert_ordered_partition(args.k, parse_partition(args.word))
        salida = {
            "hyperpipes": ["".join(map(str, b)) for b in H.blocks],
            "twist": twist_record(H.twist).model_dump(exclude_none=True),
        }
        print(json.dumps(salida, sort_keys=True, separators=(",", ":"), ensure_ascii=False))
        return 0
    tau = _permutation(args.word)
    T = insert_permutation(args.k, tau, _signature(args.signature))
    if args.dot:
        sys.stdout.write(contact_graph_to_dot(T))
    else:
        print(dumps_twist(T))
    return 0


def comando_lattice(args: argparse.Namespace, config: AppConfig, reporter: Reporter) -> int:
    if args.order == "weak":
        reticulo = weak_order_lattice(args.n)
    elif args.order == "schroder":
        reticulo = schroder_lattice(args.k, args.n)
    else:
        reticulo = increasing_flip_lattice(
            args.k, args.n, config.budget, _signature(args.signature)
        )
    nombre = f"{args.order}-k{args.k}-n{args.n}"
    reporter.conteo(f"{nombre}: {len(reticulo)} elementos")
    if args.dot:
        sys.stdout.write(lattice_to_dot(nombre, reticulo))
    else:
        print(dumps_lattice(nombre, reticulo))
    return 0


def _operands(args: argparse.Namespace):
    base = Basis(args.basis)
    if base == Basis.O:
        return [O(parse_partition(w)) for w in args.operands]
    perms = [_permutation(w) for w in args.operands]
    if base == Basis.F:
        return [F(t) for t in perms]
    if base == Basis.G:
        return [G(t) for t in perms]
    twists = [insert_permutation(args.k, t) for t in perms]
    if base == Basis.Q:
        return [Q(T) for T in twists]
    if base == Basis.E:
        return [E_basis(T) for T in twists]
    if base == Basis.H:
        return [H_basis(T) for T in twists]
    return [P(T) for T in twists]


def comando_hopf(args: argparse.Namespace, config: AppConfig, reporter: Reporter) -> int:
    base = Basis(args.basis)
    operandos = _operands(args)
    if args.operation == "product":
        if len(operandos) != 2:
            raise ParseError("El producto necesita dos operandos", field="operands")
        a, b = operandos
        if base == Basis.F:
            resultado = product_F(a, b)
        elif base == Basis.G:
            resultado = product_G(a, b)
        elif base == Basis.O:
            resultado = product_O(a, b)
        elif base == Basis.Q:
            resultado = Q_product(a.keys()[0], b.keys()[0])
        else:
            resultado = product_P_sum(a, b)
    else:
        if len(operandos) != 1:
            raise ParseError("El coproducto necesita un operando", field="operands")
        (a,) = operandos
        if base == Basis.F:
            resultado = coproduct_F(a)
        elif base == Basis.G:
            resultado = coproduct_G(a)
        elif base == Basis.O:
            resultado = coproduct_O(a)
        elif base == Basis.Q:
            resultado = Q_coproduct(a.keys()[0])
        elif base == Basis.P:
            resultado = coproduct_P(a.keys()[0])
        else:
            raise ParseError(f"Coproducto no disponible en la base {base.value}", field="basis")
    print(dumps_formal_sum(resultado) if args.json else resultado.to_text())
    return 0


def comando_check(args: argparse.Namespace, config: AppConfig, reporter: Reporter) -> int:
    job = InvariantSuiteJob(config, reporter)
    resultados = job.procesar_todas() if args.suite == "all" else job.procesar_suite(args.suite)
    for r in resultados:
        marca = "✅" if r.passed else "❌"
        linea = f"{marca} {r.suite}: {r.name}"
        if r.counterexample:
            linea += f" | {r.counterexample}"
        print(linea)
    return 0 if all(r.passed for r in resultados) else 1


def comando_table(args: argparse.Namespace, config: AppConfig, reporter: Reporter) -> int:
    tabla = CountTableJob(config, reporter).procesar_tabla_nombrada(args.name)
    print(tabla.to_csv() if args.csv else tabla.to_string())
    return 0


COMANDOS = {
    "count": comando_count,
    "insert": comando_insert,
    "lattice": comando_lattice,
    "hopf": comando_hopf,
    "check": comando_check,
    "table": comando_table,
}


# ============================================================================
# ARGUMENTOS
# ============================================================================


def build_parser() -> argparse.ArgumentParser:
    comun = argparse.ArgumentParser(add_help=False)
    comun.add_argument("--budget", type=int, help="Máximo de nodos por enumeración")
    comun.add_argument("--jobs", type=int, help="Procesos para tabular")
    comun.add_argument("--verbose", action="store_true", help="Progreso en stderr")

    parser = argparse.ArgumentParser(prog="twistlab", description=__doc__.splitlines()[1])
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser("count", parents=[comun], help="Cuenta una familia")
    count.add_argument("kind", choices=[c.value for c in CountKind])
    count.add_argument("-k", type=int, required=True)
    count.add_argument("-n", type=int, required=True)
    count.add_argument("--signature", help="Firma cambriana, p. ej. +-++")
    count.add_argument("--alternating", action="store_true", help="Gemelos con firmas alternadas")

    insert = sub.add_parser("insert", parents=[comun], help="Inserta una permutación o partición")
    insert.add_argument("-k", type=int, required=True)
    insert.add_argument("word", help="Permutación (31542) o partición ordenada (3|15|24)")
    insert.add_argument("--signature")
    insert.add_argument("--dot", action="store_true", help="Grafo de contacto en DOT")

    lattice = sub.add_parser("lattice", parents=[comun], help="Exporta un retículo")
    lattice.add_argument("-k", type=int, default=1)
    lattice.add_argument("-n", type=int, required=True)
    lattice.add_argument("--order", choices=["flip", "weak", "schroder"], default="flip")
    lattice.add_argument("--signature")
    formato = lattice.add_mutually_exclusive_group()
    formato.add_argument("--dot", action="store_true")
    formato.add_argument("--json", action="store_true")

    hopf = sub.add_parser("hopf", parents=[comun], help="Producto o coproducto")
    hopf.add_argument("operation", choices=["product", "coproduct"])
    hopf.add_argument("operands", nargs="+")
    hopf.add_argument("--basis", choices=[b.value for b in Basis], default=Basis.F.value)
    hopf.add_argument("-k", type=int, default=1)
    hopf.add_argument("--json", action="store_true")

    check = sub.add_parser("check", parents=[comun], help="Ejecuta una suite de invariantes")
    check.add_argument("suite", choices=sorted(SUITES) + ["all"])

    table = sub.add_parser("table", parents=[comun], help="Tabula conteos")
    table.add_argument("name", choices=sorted(TABLES))
    table.add_argument("--csv", action="store_true")

    return parser


# ============================================================================
# FUNCIÓN PRINCIPAL
# ============================================================================


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    config = setup_config(args)
    reporter = Reporter(config)
    reporter.inicio(f"twistlab {args.command}")
    try:
        return COMANDOS[args.command](args, config, reporter)
    except TwistLabError as e:
        reporter.error(str(e))
        return 1


if __name__ == "__main__":
    sys.exit(main())
