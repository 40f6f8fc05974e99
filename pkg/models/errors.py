"""Errores del dominio"""

from typing import Optional


class TwistLabError(ValueError):
    """Error base de twistlab"""


class DoubleCrossing(TwistLabError):
    """Dos pipes se cruzan más de una vez"""


class BadEndpoint(TwistLabError):
    """Un pipe sale por una salida que no le corresponde (o por el borde)"""


class OutOfShape(TwistLabError):
    """Una casilla no pertenece a la forma"""


class NotAnElbow(TwistLabError):
    """La casilla indicada no es un codo"""


class BoundaryElbow(TwistLabError):
    """El codo es de borde: no tiene segundo pipe relevante"""


class DuplicateLabel(TwistLabError):
    """La etiqueta ya existe en el twist"""


class NotASource(TwistLabError):
    """El pipe no es una fuente del grafo de contacto"""


class CyclicTwist(TwistLabError):
    """El grafo de contacto tiene un ciclo dirigido"""


class CyclicInput(TwistLabError):
    """El orden o grafo de entrada no es acíclico"""


class SizeMismatch(TwistLabError):
    """Tamaños incompatibles"""


class BudgetExceeded(TwistLabError):
    """La enumeración superó el presupuesto de nodos"""


class MixedBasis(TwistLabError):
    """Operación entre sumas formales de familias distintas"""


class BadOperatorLength(TwistLabError):
    """La palabra del operador no tiene longitud k"""


class BadSignature(TwistLabError):
    """Firma inválida (solo se admiten '+' y '-')"""


class InvariantViolation(TwistLabError):
    """Un objeto bien formado no cumple sus invariantes"""


class ParseError(TwistLabError):
    """Error de lectura con contexto de campo y línea"""

    def __init__(
        self, message: str, field: Optional[str] = None, line: Optional[int] = None
    ):
        self.field = field
        self.line = line
        contexto = []
        if field:
            contexto.append(f"campo '{field}'")
        if line is not None:
            contexto.append(f"línea {line}")
        if contexto:
            message = f"{message} ({', '.join(contexto)})"
        super().__init__(message)
