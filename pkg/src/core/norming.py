"""
Operador de norming [·]₀, passo de aproximação estocástica e estimadores de caminho.
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from .config import HALF_PI
from .exceptions import (
    NonFiniteInputError,
    NonPositiveDroopError,
    ZeroInputError,
)


class Mechanism(Enum):
    """Mecanismos de formação do droop esperado."""
    RESONANCE = "resonance"      # molécula diatômica
    CORRELATION = "correlation"  # DNA circular
    BALANCE = "balance"          # radiação


@dataclass(frozen=True)
class NormedValue:
    """Resultado de [x]₀: x = mantissa · 2^exponent."""
    mantissa: float
    exponent: int
    source: float


@dataclass(frozen=True)
class PathEstimate:
    """Par (L_f, L_p) de um mecanismo."""
    L_f: float
    L_p: float
    mechanism: Mechanism

    def __post_init__(self):
        if not (math.isfinite(self.L_f) and math.isfinite(self.L_p)):
            raise NonFiniteInputError(
                f"Estimativa de caminho não finita: L_f={self.L_f}, L_p={self.L_p}"
            )


@dataclass(frozen=True)
class TotalPathReport:
    """Caminhos totais esperados; None marca um mecanismo que falhou."""
    L_m: Optional[float]
    L_d: Optional[float]
    L_b: Optional[float]


def _positive_norm(x: float) -> Tuple[float, int]:
    """Escala x > 0 por 2^n até (π/2, π]."""
    n = math.ceil(math.log2(x) - math.log2(math.pi))
    mantissa = math.ldexp(x, -n)

    # Correção de um passo contra o arredondamento do log2
    if mantissa > math.pi:
        n += 1
        mantissa = math.ldexp(x, -n)
    elif mantissa <= HALF_PI:
        n -= 1
        mantissa = math.ldexp(x, -n)

    return mantissa, n


def norm0(x: float) -> NormedValue:
    """
    Norming de x no intervalo (π/2, π] dividindo por uma potência de dois.

    Para x < 0 aplica a extensão que preserva o sinal: [x]₀ = -[|x|]₀.

    Args:
        x: Valor real não nulo

    Returns:
        NormedValue com mantissa, expoente e o valor original

    Raises:
        ZeroInputError: Se x == 0
        NonFiniteInputError: Se x for inf ou nan
    """
    x = float(x)
    if x == 0.0:
        raise ZeroInputError("Nenhuma potência de dois leva 0 ao intervalo (π/2, π]")
    if not math.isfinite(x):
        raise NonFiniteInputError(f"Valor não finito para norming: {x}")

    mantissa, exponent = _positive_norm(abs(x))
    return NormedValue(mantissa=math.copysign(mantissa, x), exponent=exponent, source=x)


def norm0_array(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Versão vetorizada de norm0.

    Args:
        x: Array de valores não nulos e finitos

    Returns:
        Tupla (mantissas, expoentes)
    """
    x = np.asarray(x, dtype=np.float64)
    if np.any(x == 0.0):
        raise ZeroInputError("Array contém zeros; norming indefinido")
    if not np.all(np.isfinite(x)):
        raise NonFiniteInputError("Array contém valores não finitos")

    magnitude = np.abs(x)
    exponent = np.ceil(np.log2(magnitude) - np.log2(np.pi)).astype(np.int32)
    mantissa = np.ldexp(magnitude, -exponent)

    exponent = np.where(mantissa > np.pi, exponent + 1, exponent)
    exponent = np.where(mantissa <= HALF_PI, exponent - 1, exponent)
    mantissa = np.ldexp(magnitude, -exponent)

    return np.copysign(mantissa, x), exponent


def droop_mantissa(x: float, name: str = "droop") -> float:
    """
    Mantissa de [x]₀ para grandezas que produzem droops (exige x > 0).

    Args:
        x: Valor a normar
        name: Nome da grandeza para a mensagem de erro

    Returns:
        Mantissa em (π/2, π]
    """
    if not x > 0:
        raise NonPositiveDroopError(f"{name} deve ser positivo para gerar um droop: {x}")
    return norm0(x).mantissa


def stochastic_step(dV: float) -> float:
    """
    Passo de aproximação estocástica ΔP = -[ΔV]₀.

    Args:
        dV: Variação observada da energia potencial

    Returns:
        Estimativa linear ótima da variação de potência
    """
    return -norm0(dV).mantissa


def droops_from_potential(dV: float, dTau: float) -> Tuple[float, float]:
    """
    Droops dados pela rotação do sistema aberto: k^f = [Δτ²]₀, k^p = [ΔV/Δτ]₀.

    Args:
        dV: Variação da energia potencial
        dTau: Variação do tempo próprio (> 0)

    Returns:
        Tupla (k_f, k_p)
    """
    if dTau == 0 or dV == 0:
        raise ZeroInputError(f"Argumento nulo para o norming: dV={dV}, dTau={dTau}")
    if dTau < 0:
        raise NonPositiveDroopError(f"dTau deve ser positivo: {dTau}")

    k_f = droop_mantissa(dTau ** 2, "dTau²")
    k_p = droop_mantissa(dV / dTau, "dV/dTau")
    return k_f, k_p


def droop_from_synchronization(dP: float, dTau: float) -> float:
    """Droop k = ΔP/Δf = -(ΔP/Δτ)·Δτ², usando f = 1/τ."""
    if dTau == 0:
        raise ZeroInputError("dTau nulo: frequência indefinida")
    return -(dP / dTau) * dTau ** 2


def path_estimate(k_prev: float, k_next: float) -> float:
    """
    Estimativa do caminho: 0.5·(ln k_{t-1} + ln k_t).

    Args:
        k_prev: Droop real de ontem
        k_next: Droop esperado para hoje

    Returns:
        Comprimento estimado do caminho
    """
    if not (k_prev > 0 and k_next > 0):
        raise NonPositiveDroopError(
            f"Droops devem ser positivos: k_prev={k_prev}, k_next={k_next}"
        )
    return 0.5 * (math.log(k_prev) + math.log(k_next))


def total_euclidean(L_f: float, L_p: float) -> float:
    """Comprimento euclidiano (L_f² + L_p²)^{1/2}."""
    return math.hypot(L_f, L_p)


def total_ropelength(L_f: float, L_p: float) -> float:
    """Ropelength (L_f + 4·L_p)/5."""
    return (L_f + 4.0 * L_p) / 5.0
