"""
Droops do mecanismo de correlação: mediante ρ₃,₁ (torção do DNA circular) e
correlação de potenciais ρ₃,₂ (elevação do DNA circular).
"""
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .config import CORRELATION_CONFIG
from .exceptions import (
    EqualPotentialsError,
    InvalidInputError,
    NoResonanceError,
    NonPositiveDroopError,
)
from .norming import (
    Mechanism,
    PathEstimate,
    droop_mantissa,
    path_estimate,
    total_ropelength,
)
from .resonance import PotentialPair

IntPair = Tuple[int, int]

_EPS = np.finfo(np.float64).eps


@dataclass(frozen=True)
class ResonanceQuad:
    """Quatro frequências e dois pares de ressonâncias de Poincaré."""
    omega: Tuple[float, float, float, float]
    pairs: Tuple[IntPair, IntPair]

    def __post_init__(self):
        if len(self.omega) != 4:
            raise InvalidInputError(f"São necessárias 4 frequências, recebeu {len(self.omega)}")
        w1, w2, w3, w4 = self.omega
        if w2 + w4 == 0:
            raise InvalidInputError("ω₂ + ω₄ não pode ser nulo")

        tol = CORRELATION_CONFIG["resonance_tol"]
        for (n, m), (a, b) in zip(self.pairs, ((w1, w2), (w3, w4))):
            if not _is_resonant(n, m, a, b, tol):
                raise InvalidInputError(
                    f"Par ({n}, {m}) não satisfaz n·{a} + m·{b} = 0"
                )


def _is_resonant(n: int, m: int, a: float, b: float, tol: float) -> bool:
    scale = max(abs(n * a), abs(m * b))
    return scale > 0 and abs(n * a + m * b) <= tol * scale


def _find_pair(a: float, b: float, bound: int, tol: float) -> Optional[IntPair]:
    """Menor n > 0 (e m < 0) com n·a + m·b = 0, |n|, |m| ≤ bound."""
    n = np.arange(1, bound + 1)[:, None]
    m = -np.arange(1, bound + 1)[None, :]
    scale = np.maximum(np.abs(n * a), np.abs(m * b))
    hits = np.abs(n * a + m * b) <= tol * scale
    if not hits.any():
        return None
    i, j = np.unravel_index(np.argmax(hits), hits.shape)
    return int(n[i, 0]), int(m[0, j])


def validate_quad(omega: Sequence[float], B: Optional[int] = None) -> ResonanceQuad:
    """
    Procura os pares de ressonância e devolve o quarteto canônico (ρ₁ ≤ ρ₂).

    Args:
        omega: Frequências ω₁..ω₄ positivas
        B: Limite da busca inteira

    Returns:
        ResonanceQuad
    """
    B = CORRELATION_CONFIG["search_bound"] if B is None else B
    omega = tuple(float(w) for w in omega)
    if len(omega) != 4 or not all(w > 0 and math.isfinite(w) for w in omega):
        raise InvalidInputError(f"Frequências devem ser 4 valores positivos: {omega}")
    if B < 1:
        raise InvalidInputError(f"Limite de busca deve ser >= 1: {B}")

    tol = CORRELATION_CONFIG["resonance_tol"]
    w1, w2, w3, w4 = omega
    first = _find_pair(w1, w2, B, tol)
    second = _find_pair(w3, w4, B, tol)

    if first is None or second is None:
        missing = "(ω₁, ω₂)" if first is None else "(ω₃, ω₄)"
        raise NoResonanceError(f"Nenhuma ressonância em {missing} com |n|, |m| ≤ {B}")

    # ρ₁ ≤ ρ₂: a mediante não depende da ordem
    if w1 / w2 > w3 / w4:
        return ResonanceQuad(omega=(w3, w4, w1, w2), pairs=(second, first))
    return ResonanceQuad(omega=omega, pairs=(first, second))


def mediant(a, b, c, d):
    """Mediante (a + c)/(b + d) de a/b e c/d; aceita arrays."""
    return (a + c) / (b + d)


def mediant_correlation(quad: ResonanceQuad) -> float:
    """ρ₃,₁ = (ω₁ + ω₃)/(ω₂ + ω₄)."""
    w1, w2, w3, w4 = quad.omega
    return float(mediant(w1, w2, w3, w4))


def mediant_bounds(quad: ResonanceQuad) -> Tuple[float, float, float]:
    """Tupla (ρ₁, ρ₃,₁, ρ₂); para ρ₁ < ρ₂ vale ρ₁ < ρ₃,₁ < ρ₂."""
    w1, w2, w3, w4 = quad.omega
    return w1 / w2, mediant_correlation(quad), w3 / w4


def spectral_sums(omega: Sequence[float]) -> Tuple[float, float, float]:
    """
    Somas dos três emparelhamentos do ferromagneto de Heisenberg de 4 partículas.

    Todas valem ω₁ + ω₂ + ω₃ + ω₄; serve como verificação de consistência.
    """
    w1, w2, w3, w4 = omega
    return (w1 + w2) + (w3 + w4), (w1 + w4) + (w2 + w3), (w2 + w4) + (w1 + w3)


def droop_corr_f(quad: ResonanceQuad) -> float:
    """Droop k^f_{t,2} = [ρ₃,₁]₀ (torção)."""
    return droop_mantissa(mediant_correlation(quad), "ρ₃,₁")


@dataclass(frozen=True)
class CorrelationResult:
    """ρ₃,₁, ρ₃,₂ e o modelo global V' = (V^out - V^in)/2."""
    rho31: Optional[float]
    rho32: float
    v_prime: float

    def __post_init__(self):
        if not math.isclose(self.v_prime * 2 * self.rho32, 1.0, rel_tol=8 * _EPS, abs_tol=0.0):
            raise InvalidInputError(
                f"V' = 1/(2ρ₃,₂) violado: v_prime={self.v_prime}, rho32={self.rho32}"
            )


def potential_correlation(pot: PotentialPair, quad: Optional[ResonanceQuad] = None) -> CorrelationResult:
    """
    Correlação do modelo global: ρ₃,₂ = 1/(V^out - V^in).

    Args:
        pot: Potenciais interno e externo
        quad: Quarteto opcional para registrar ρ₃,₁ junto

    Returns:
        CorrelationResult
    """
    diff = pot.v_out - pot.v_in
    if abs(diff) < CORRELATION_CONFIG["potential_tol"]:
        raise EqualPotentialsError(
            f"V^out = V^in = {pot.v_in}: correlação indefinida"
        )

    rho31 = mediant_correlation(quad) if quad is not None else None
    return CorrelationResult(rho31=rho31, rho32=1.0 / diff, v_prime=diff / 2.0)


def droop_corr_p(res: CorrelationResult) -> float:
    """Droop k^p_{t,2} = [ρ₃,₂]₀ (elevação)."""
    if not res.rho32 > 0:
        raise NonPositiveDroopError(f"ρ₃,₂ = {res.rho32} não positivo (V^out < V^in)")
    return droop_mantissa(res.rho32, "ρ₃,₂")


def dna_paths(
    k_prev_f: float,
    k_prev_p: float,
    quad: ResonanceQuad,
    pot: PotentialPair,
) -> Tuple[PathEstimate, float]:
    """
    Caminho esperado com correlações e ropelength L_d do DNA.

    Args:
        k_prev_f: Droop real de ontem (frequência)
        k_prev_p: Droop real de ontem (potência)
        quad: Quarteto de ressonâncias
        pot: Potenciais da molécula

    Returns:
        Tupla (PathEstimate, L_d)
    """
    k_f = droop_corr_f(quad)
    k_p = droop_corr_p(potential_correlation(pot, quad))

    estimate = PathEstimate(
        L_f=path_estimate(k_prev_f, k_f),
        L_p=path_estimate(k_prev_p, k_p),
        mechanism=Mechanism.CORRELATION,
    )
    return estimate, total_ropelength(estimate.L_f, estimate.L_p)
