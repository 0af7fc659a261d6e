"""
Configurações centralizadas do sistema de predição de caminhos.
"""
import logging
import math
import os
from pathlib import Path
from typing import Dict

from dotenv import load_dotenv
from rich.logging import RichHandler

# Carregar variáveis de ambiente
load_dotenv()

# Diretórios base
PROJECT_ROOT = Path(__file__).parent.parent.parent
DATA_DIR = PROJECT_ROOT / "data"
REPORT_DIR = DATA_DIR / "reports"

# Intervalo do norming [·]₀
HALF_PI = math.pi / 2

# Configurações da reconstrução de espectros
SPECTRA_CONFIG = {
    "k0": float(os.getenv("PATH_K0", "1.0")),
    "grid_size": int(os.getenv("PATH_GRID", "200")),
    "lambda": float(os.getenv("PATH_LAMBDA", "1e-6")),
    "min_grid": 16,
    "degenerate_tol": 1e-12,   # |Δf| abaixo disso -> droop indefinido
}

# Invariantes de Weierstrass
RESONANCE_CONFIG = {
    "qseries_tol": 1e-15,
    "qseries_max_terms": 10_000,
    "degenerate_tol": 1e-12,
    "discriminant_floor": 1e-300,
    "lattice_radius": 60,
    "min_lattice_radius": 20,
}

# Ressonâncias de Poincaré e correlações
CORRELATION_CONFIG = {
    "search_bound": int(os.getenv("PATH_SEARCH_BOUND", "32")),
    "resonance_tol": 1e-9,
    "potential_tol": 1e-12,
}

# Regressão de Poisson e receptor
BALANCE_CONFIG = {
    "link": os.getenv("PATH_LINK", "identity"),   # identity ou log
    "max_iter": 100,
    "tol": 1e-10,
    "mu_floor": 1e-6,
    "grazing_tol": 1e-12,
    "max_halvings": 30,
}

# Gerador sintético
SYNTHETIC_CONFIG = {
    "ramp": 0.5,          # inclinação do espectro de frequência
    "noise": 1e-3,
    "T": 64,
    "history_rows": 500,
}

# Configurações de performance
PERFORMANCE_CONFIG = {
    "num_workers": int(os.getenv("NUM_WORKERS", "3")),
}

# Configurações de logging
LOGGING_CONFIG = {
    "level": os.getenv("LOG_LEVEL", "WARNING"),
    "format": "%(name)s - %(message)s",
    "file": os.getenv("LOG_FILE"),
}

# Configurações de output
OUTPUT_CONFIG = {
    "indent": 2,
    "report_prefix": "prediction",
}

_LOGGING_READY = False


def get_logger(name: str) -> logging.Logger:
    """
    Retorna um logger do sistema, configurando os handlers na primeira chamada.

    Args:
        name: Nome do logger (normalmente __name__)

    Returns:
        Logger configurado
    """
    global _LOGGING_READY

    if not _LOGGING_READY:
        root = logging.getLogger("src")
        root.setLevel(LOGGING_CONFIG["level"])
        root.addHandler(RichHandler(show_path=False, rich_tracebacks=True))

        if LOGGING_CONFIG["file"]:
            file_handler = logging.FileHandler(LOGGING_CONFIG["file"], encoding="utf-8")
            file_handler.setFormatter(
                logging.Formatter("%(asctime)s - " + LOGGING_CONFIG["format"])
            )
            root.addHandler(file_handler)

        root.propagate = False
        _LOGGING_READY = True

    return logging.getLogger(name)


def get_mechanism_info(mechanism: str) -> Dict[str, str]:
    """Retorna a descrição de um mecanismo de predição."""
    info = {
        "resonance": {"juxtaposition": "molécula diatômica", "total": "L_m", "combinator": "euclidiano"},
        "correlation": {"juxtaposition": "DNA circular", "total": "L_d", "combinator": "ropelength"},
        "balance": {"juxtaposition": "radiação", "total": "L_b", "combinator": "ropelength"},
    }
    return info.get(mechanism, info["resonance"])
