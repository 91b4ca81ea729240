"""
Jerarquía de errores del paquete
"""
from typing import Any, Optional, Tuple


class EdgeIdealError(Exception):
    """Error base de edgeideals"""


class ConfigError(EdgeIdealError, ValueError):
    """Configuración inválida (archivo o flags)"""


class GraphValidationError(EdgeIdealError, ValueError):
    """Arista fuera de rango, lazo o arista duplicada"""

    def __init__(self, message: str, edge: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.edge = edge


class InvalidFamilyError(EdgeIdealError, ValueError):
    """Parámetros inválidos para una familia de grafos"""


class UnsupportedFamilyError(EdgeIdealError, ValueError):
    """Familia sin valores de referencia"""


class DimensionError(EdgeIdealError, ValueError):
    """Monomios de anillos ambiente distintos"""


class ParseError(EdgeIdealError, ValueError):
    """Texto que no respeta el formato esperado"""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message if line is None else f"línea {line}: {message}")
        self.line = line


class NonSquarefreeError(EdgeIdealError, ValueError):
    """Ideal no libre de cuadrados donde se exige serlo"""


class CapExceededError(EdgeIdealError):
    """Cómputo rechazado por superar un límite configurado"""

    def __init__(self, what: str, count: int, limit: int, detail: Any = None):
        super().__init__(f"límite excedido en {what}: {count} > {limit}")
        self.what = what
        self.count = count
        self.limit = limit
        self.detail = detail


class UnusableProfileError(EdgeIdealError, ValueError):
    """Perfil de cocientes lineales fallido usado para fórmulas"""


class ShapeViolationError(EdgeIdealError):
    """Un cociente del cono de aplicación no tiene la forma esperada"""

    def __init__(self, message: str, k: int, colon: Any = None):
        super().__init__(f"paso k={k}: {message}")
        self.k = k
        self.colon = colon


class BoundedTableError(EdgeIdealError):
    """Pregunta fuera de la región certificada de una tabla acotada"""


class IncompatibleMethodError(EdgeIdealError, ValueError):
    """Método no aplicable al lado o a la familia pedidos"""
