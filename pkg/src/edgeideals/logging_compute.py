"""
Sistema de logging para los cómputos (nunca escribe en stdout)
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

from rich.console import Console
from rich.logging import RichHandler

LOGGER_NAME = "edgeideals"


class ComputeLogger:
    """Logger estructurado: un objeto JSON por registro"""

    def __init__(self, level: str = "WARNING", log_file: Optional[str] = None,
                 max_payload_chars: int = 1000):
        self.log_file = log_file
        self.max_payload_chars = max_payload_chars

        self.logger = logging.getLogger(LOGGER_NAME)
        self.logger.setLevel(getattr(logging, level.upper(), logging.WARNING))
        self.logger.propagate = False

        # Reconfigurar sin duplicar handlers
        for handler in list(self.logger.handlers):
            self.logger.removeHandler(handler)
            handler.close()

        console_handler = RichHandler(
            console=Console(stderr=True),
            show_time=False,
            show_path=False,
            markup=False,
        )
        console_handler.setFormatter(logging.Formatter("%(message)s"))
        self.logger.addHandler(console_handler)

        if log_file:
            Path(log_file).parent.mkdir(parents=True, exist_ok=True)
            file_handler = logging.FileHandler(log_file, encoding="utf-8")
            file_handler.setFormatter(
                logging.Formatter("%(asctime)s - %(levelname)s - %(message)s")
            )
            self.logger.addHandler(file_handler)

    def log_event(self, component: str, event: str, data: Any = None,
                  duration: Optional[float] = None, level: int = logging.INFO):
        """Registra un evento de cómputo"""
        if not self.logger.isEnabledFor(level):
            return
        entry = {
            "component": component,
            "event": event,
            "duration_ms": None if duration is None else round(duration, 3),
            "data": self._sanitize_data(data),
        }
        self.logger.log(level, f"COMPUTE: {json.dumps(entry, ensure_ascii=False, default=str)}")

    def log_refusal(self, component: str, what: str, count: int, limit: int):
        """Registra un rechazo por límite"""
        self.log_event(component, "CAP_REFUSAL", {
            "what": what,
            "count": count,
            "limit": limit,
        }, level=logging.WARNING)

    def log_error(self, component: str, error: str, context: Optional[Dict[str, Any]] = None):
        self.log_event(component, "ERROR", {
            "error": error,
            "context": context or {},
        }, level=logging.ERROR)

    def _sanitize_data(self, data: Any) -> Any:
        """Trunca cadenas largas y listas de más de 10 elementos"""
        if isinstance(data, str) and len(data) > self.max_payload_chars:
            return data[:self.max_payload_chars] + "... [truncated]"
        elif isinstance(data, dict):
            return {str(k): self._sanitize_data(v) for k, v in data.items()}
        elif isinstance(data, (list, tuple)):
            items = [self._sanitize_data(item) for item in list(data)[:10]]
            if len(data) > 10:
                items.append(f"... [{len(data) - 10} more]")
            return items
        return data


_compute_logger: Optional[ComputeLogger] = None


def get_compute_logger() -> ComputeLogger:
    """Logger compartido; se crea con valores por defecto si nadie lo configuró"""
    global _compute_logger
    if _compute_logger is None:
        _compute_logger = ComputeLogger()
    return _compute_logger


def configure_logging(level: str = "WARNING", log_file: Optional[str] = None,
                      max_payload_chars: int = 1000) -> ComputeLogger:
    global _compute_logger
    _compute_logger = ComputeLogger(level, log_file, max_payload_chars)
    return _compute_logger
