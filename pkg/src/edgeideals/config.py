"""
Configuración: valores por defecto en config.json, sobrescritos por flags
"""
import json
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator
from sympy import isprime

from .errors import ConfigError

DEFAULT_CONFIG_PATH = Path(__file__).with_name("config.json")

# La eliminación mod p multiplica en int64: p < 2^31
MAX_FIELD_PRIME = 2 ** 31


class CapsSettings(BaseModel):
    """Límites de tamaño de los oráculos"""
    max_spot_columns: int = Field(20000, ge=1)
    max_spot_basis: int = Field(150000, ge=1)
    max_lattice_size: int = Field(20000, ge=1)
    max_lattice_work: int = Field(2_000_000, ge=1)
    max_exact_lattice: int = Field(64, ge=1)
    max_s_pairs: int = Field(250_000, ge=1)


class LoggingSettings(BaseModel):
    level: str = "WARNING"
    file: Optional[str] = None
    max_payload_chars: int = Field(1000, ge=10)

    @field_validator("level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.upper()
        if value not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"nivel de logging desconocido: {value}")
        return value


class Settings(BaseModel):
    """Configuración completa de una ejecución"""
    version: int = 1
    field_prime: int = 32003
    threads: int = Field(1, ge=1)
    caps: CapsSettings = Field(default_factory=CapsSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)

    @field_validator("field_prime")
    @classmethod
    def _prime(cls, value: int) -> int:
        if not isprime(value):
            raise ValueError(f"{value} no es primo")
        if value >= MAX_FIELD_PRIME:
            raise ValueError(f"{value} no cabe en la aritmética int64 (p < 2^31)")
        return value

    def with_overrides(self, overrides: Dict[str, Any]) -> "Settings":
        """Aplica flags de la CLI; las claves con valor None se ignoran"""
        data = self.model_dump()
        for key, value in overrides.items():
            if value is None:
                continue
            if key in data["caps"]:
                data["caps"][key] = value
            elif key in data["logging"]:
                data["logging"][key] = value
            elif key in data:
                data[key] = value
            else:
                raise ConfigError(f"opción desconocida: {key}")
        try:
            return Settings.model_validate(data)
        except ValidationError as e:
            raise ConfigError(str(e)) from e


def load_settings(path: Optional[Path] = None) -> Settings:
    """Lee y valida un archivo de configuración (por defecto el empaquetado)"""
    config_path = Path(path) if path is not None else DEFAULT_CONFIG_PATH
    if not config_path.exists():
        raise ConfigError(f"no existe el archivo de configuración: {config_path}")
    try:
        with config_path.open("r", encoding="utf-8") as f:
            raw = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"JSON inválido en {config_path}: {e}") from e
    try:
        return Settings.model_validate(raw)
    except ValidationError as e:
        raise ConfigError(str(e)) from e
