"""Configuración de la aplicación"""

from .settings import AppConfig, Basis, CountKind

__all__ = ["AppConfig", "Basis", "CountKind"]
