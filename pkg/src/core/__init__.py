"""Módulos principais do sistema."""
from src.core.norming import Mechanism, norm0
from src.core.spectra import DeviationSeries, actual_droop
from src.core.resonance import invariants_qseries
from src.core.correlation import validate_quad
from src.core.balance import fit_poisson

__all__ = [
    "Mechanism",
    "norm0",
    "DeviationSeries",
    "actual_droop",
    "invariants_qseries",
    "validate_quad",
    "fit_poisson",
]
