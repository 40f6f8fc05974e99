from enum import Enum
from pydantic_settings import BaseSettings
from pydantic import Field


class CountKind(str, Enum):
    """Familias que sabe contar el comando `count`"""

    TWISTS = "twists"
    ACYCLIC = "acyclic"
    ORIENTATIONS = "orientations"
    INDECOMPOSABLE = "indecomposable"
    TWINS = "twins"
    CAMBRIAN = "cambrian"
    HYPERTWISTS = "hypertwists"
    FACETS = "facets"


class Basis(str, Enum):
    """Bases de las álgebras de Hopf"""

    F = "F"  # permutaciones (FQSym)
    G = "G"  # base dual de F
    P = "P"  # twists acíclicos
    Q = "Q"  # base dual de P
    E = "E"  # multiplicativa (mínimos)
    H = "H"  # multiplicativa (máximos)
    O = "O"  # particiones ordenadas


class AppConfig(BaseSettings):
    """Configuración de la aplicación desde variables de entorno (prefijo TWISTLAB_)"""

    # Presupuesto de nodos para toda enumeración
    budget: int = Field(
        default=10**7, gt=0, description="Máximo de nodos visitados por enumeración"
    )

    # Paralelismo
    jobs: int = Field(default=1, ge=1, description="Procesos para tabular conteos")

    # Salida
    verbose: bool = Field(default=False, description="Muestra progreso en stderr")

    # Suites de verificación
    check_max_n: int = Field(default=5, ge=1, le=7)

    class Config:
        env_prefix = "TWISTLAB_"
        env_file = ".env"
        env_file_encoding = "utf-8"
