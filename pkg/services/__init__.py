"""Servicios: twists, inserción, congruencias, retículos, geometría y álgebras de Hopf"""

from .hopf import FormalSum
from .insertion import acyclic_twists, fiber, insert_permutation
from .lattice import FiniteLattice, increasing_flip_lattice
from .orientations import Orientation, canopy, recoil_scheme
from .schroder import HyperTwist, OrderedPartition, insert_ordered_partition
from .shape import GridShape, build_shape
from .twist import Twist, build_twist

__all__ = [
    "FiniteLattice",
    "FormalSum",
    "GridShape",
    "HyperTwist",
    "Orientation",
    "OrderedPartition",
    "Twist",
    "acyclic_twists",
    "build_shape",
    "build_twist",
    "canopy",
    "fiber",
    "increasing_flip_lattice",
    "insert_ordered_partition",
    "insert_permutation",
    "recoil_scheme",
]
