"""Utilidades: progreso en consola y exportación DOT"""

from .dot import contact_graph_to_dot, lattice_to_dot
from .reporter import Reporter

__all__ = ["Reporter", "contact_graph_to_dot", "lattice_to_dot"]
