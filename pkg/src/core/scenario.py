"""
Carregamento do cenário de execução (arquivo key = value + flags da CLI).
"""
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from dotenv import dotenv_values

from ..utils.validators import validate_scenario_params
from .config import BALANCE_CONFIG, CORRELATION_CONFIG, SPECTRA_CONFIG, get_logger
from .exceptions import ConfigError

logger = get_logger(__name__)

SCENARIO_KEYS = (
    "k0", "grid", "lambda", "omega1", "omega2", "wing", "quad", "bound",
    "potentials", "colours", "v0", "history", "link", "intercept_only", "seed",
)

_TRUE = {"1", "true", "yes", "sim", "on"}
_FALSE = {"0", "false", "no", "nao", "não", "off"}


@dataclass(frozen=True)
class ScenarioConfig:
    """Parâmetros de uma execução; todos os padrões já materializados."""
    k0: float = SPECTRA_CONFIG["k0"]
    grid: int = SPECTRA_CONFIG["grid_size"]
    lam: float = SPECTRA_CONFIG["lambda"]
    omega1: complex = 1 + 0j
    omega2: complex = 1j
    wing: Optional[Path] = None
    quad: Tuple[float, float, float, float] = (1.0, 3.0, 2.0, 3.0)
    bound: int = CORRELATION_CONFIG["search_bound"]
    # None = derivar V^in e V^out do reticulado e da asa
    potentials: Optional[Tuple[float, float]] = None
    colours: Tuple[float, float, float, float, float] = (0.8, 0.05, 0.0, 0.0, 0.5)
    v0: float = 0.0
    history: Optional[Path] = None
    link: str = BALANCE_CONFIG["link"]
    intercept_only: bool = False
    seed: int = 0
    source: Optional[Path] = field(default=None, compare=False)

    @property
    def derive_potentials(self) -> bool:
        return self.potentials is None

    def to_dict(self) -> Dict[str, Any]:
        """Eco do cenário serializável em JSON (complexos como [re, im])."""
        echo = {}
        for key, value in asdict(self).items():
            if key == "source":
                continue
            if key == "lam":
                key = "lambda"
            if isinstance(value, complex):
                value = [value.real, value.imag]
            elif isinstance(value, Path):
                value = str(value)
            elif isinstance(value, tuple):
                value = list(value)
            echo[key] = value
        echo["potentials"] = "derive" if self.potentials is None else list(self.potentials)
        return echo


def _floats(text: str, name: str, size: int) -> Tuple[float, ...]:
    values = tuple(float(v) for v in text.replace(";", ",").split(",") if v.strip())
    if len(values) != size:
        raise ValueError(f"{name} precisa de {size} valores, recebeu {len(values)}")
    return values


def _complex(text: Union[str, complex, float]) -> complex:
    if isinstance(text, (complex, int, float)):
        return complex(text)
    return complex(text.replace(" ", "").replace("i", "j"))


def _bool(text: Union[str, bool]) -> bool:
    if isinstance(text, bool):
        return text
    lowered = text.strip().lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ValueError(f"Valor booleano inválido: {text}")


def _parse_value(key: str, raw: Any, base_dir: Path) -> Any:
    """Converte um valor do arquivo (str) ou da CLI para o tipo do campo."""
    if not isinstance(raw, str):
        if key in ("omega1", "omega2"):
            return _complex(raw)
        if key in ("wing", "history"):
            return _resolve(Path(raw), base_dir)
        return raw

    raw = raw.strip()
    if key == "k0" or key == "lambda" or key == "v0":
        return float(raw)
    if key in ("grid", "bound", "seed"):
        return int(raw)
    if key in ("omega1", "omega2"):
        return _complex(raw)
    if key in ("wing", "history"):
        return _resolve(Path(raw), base_dir) if raw else None
    if key == "quad":
        return _floats(raw, "quad", 4)
    if key == "colours":
        return _floats(raw, "colours", 5)
    if key == "potentials":
        return None if raw.lower() == "derive" else _floats(raw, "potentials", 2)
    if key == "link":
        return raw.lower()
    if key == "intercept_only":
        return _bool(raw)
    raise ValueError(f"Chave desconhecida: {key}")


def _resolve(path: Path, base_dir: Path) -> Path:
    return path if path.is_absolute() else (base_dir / path).resolve()


def load_scenario(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> ScenarioConfig:
    """
    Lê um cenário key = value e aplica as flags da linha de comando.

    Args:
        path: Arquivo de cenário (opcional)
        overrides: Valores vindos da CLI; None é ignorado

    Returns:
        ScenarioConfig validado

    Raises:
        ConfigError: Chave desconhecida, valor mal formado ou inválido
    """
    raw: Dict[str, Any] = {}
    base_dir = Path.cwd()

    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"Arquivo de cenário não encontrado: {path}")
        base_dir = path.resolve().parent
        raw.update({k.strip().lower(): v for k, v in dotenv_values(path).items()})

    if overrides:
        raw.update({k: v for k, v in overrides.items() if v is not None})

    unknown = sorted(set(raw) - set(SCENARIO_KEYS))
    if unknown:
        raise ConfigError(f"Chaves desconhecidas no cenário: {', '.join(unknown)}", keys=unknown)

    params: Dict[str, Any] = {}
    errors = []
    for key, value in raw.items():
        if value is None:
            # linha "chave" sem valor no arquivo
            errors.append(f"{key}: valor ausente")
            continue
        try:
            params[key] = _parse_value(key, value, base_dir)
        except ValueError as e:
            errors.append(f"{key}: {e}")

    if not errors:
        _, errors = validate_scenario_params(params)
    if errors:
        raise ConfigError("Cenário inválido: " + "; ".join(errors), errors=errors)

    if "lambda" in params:
        params["lam"] = params.pop("lambda")

    config = ScenarioConfig(source=path, **params)
    logger.debug("Cenário carregado: %s", config.to_dict())
    return config
