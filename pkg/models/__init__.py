"""Modelos de datos Pydantic y errores del dominio"""

from .schemas import (
    CheckResult,
    CountRow,
    FormalSumRecord,
    LatticeRecord,
    OrientationRecord,
    TermRecord,
    TwistRecord,
)

__all__ = [
    "CheckResult",
    "CountRow",
    "FormalSumRecord",
    "LatticeRecord",
    "OrientationRecord",
    "TermRecord",
    "TwistRecord",
]
