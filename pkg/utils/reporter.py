"""Líneas de progreso con emoji en stderr"""

import sys
from typing import Optional, TextIO

from config.settings import AppConfig


class Reporter:
    """
    Escribe el progreso en stderr para que stdout quede libre para la salida
    legible por máquina. Solo los errores se muestran sin `verbose`.
    """

    def __init__(self, config: AppConfig, stream: Optional[TextIO] = None):
        self.config = config
        self.stream = stream if stream is not None else sys.stderr

    def _linea(self, icono: str, mensaje: str, siempre: bool = False) -> None:
        if siempre or self.config.verbose:
            print(f"{icono} {mensaje}", file=self.stream)

    def inicio(self, mensaje: str) -> None:
        self._linea("🚀", mensaje)

    def buscando(self, mensaje: str) -> None:
        self._linea("🔍", mensaje)

    def ok(self, mensaje: str) -> None:
        self._linea("✅", mensaje)

    def conteo(self, mensaje: str) -> None:
        self._linea("📊", mensaje)

    def aviso(self, mensaje: str) -> None:
        self._linea("⚠️ ", mensaje)

    def error(self, mensaje: str) -> None:
        self._linea("❌", mensaje, siempre=True)
