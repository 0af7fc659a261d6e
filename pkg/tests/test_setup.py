"""
Teste simples do sistema de predição.
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))


def test_import():
    """Testa se os módulos podem ser importados."""
    from src import __version__
    from src.core import Mechanism, actual_droop, fit_poisson, invariants_qseries, norm0, validate_quad
    from src.core.config import BALANCE_CONFIG, SPECTRA_CONFIG, get_logger
    from src.core.pipeline import run_pipeline
    from src.utils.file_handler import FileHandler

    assert __version__
    assert len(Mechanism) == 3
    assert SPECTRA_CONFIG["grid_size"] >= SPECTRA_CONFIG["min_grid"]
    assert BALANCE_CONFIG["link"] in ("identity", "log")
    assert get_logger("src.teste").name == "src.teste"
    assert all(callable(f) for f in (actual_droop, fit_poisson, invariants_qseries, norm0,
                                     validate_quad, run_pipeline, FileHandler))
