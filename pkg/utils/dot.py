"""Exportación a DOT de retículos y grafos de contacto"""

from typing import List

from services.hopf import render_key
from services.lattice import FiniteLattice
from services.twist import Twist


def _quote(texto: str) -> str:
    return '"' + texto.replace("\\", "\\\\").replace('"', '\\"') + '"'


def lattice_to_dot(nombre: str, reticulo: FiniteLattice) -> str:
    """Diagrama de Hasse; los nodos salen en el orden canónico del retículo"""
    elementos = (
        sorted(reticulo.elements, key=reticulo.sort_key)
        if reticulo.sort_key
        else list(reticulo.elements)
    )
    posicion = {x: i for i, x in enumerate(elementos)}
    lineas: List[str] = [f"digraph {_quote(nombre)} {{", "  rankdir=BT;"]
    for i, x in enumerate(elementos):
        lineas.append(f"  n{i} [label={_quote(render_key(x))}];")
    for a, b in sorted((posicion[a], posicion[b]) for a, b in reticulo.hasse_edges()):
        lineas.append(f"  n{a} -> n{b};")
    lineas.append("}")
    return "\n".join(lineas) + "\n"


def contact_graph_to_dot(T: Twist) -> str:
    lineas = [f"digraph {_quote(render_key(T))} {{"]
    for p in range(1, T.n + 1):
        lineas.append(f"  {p} [label={_quote(str(T.labels[p - 1]))}];")
    for s, w in T.contact_graph().arcs:
        lineas.append(f"  {s} -> {w};")
    lineas.append("}")
    return "\n".join(lineas) + "\n"
