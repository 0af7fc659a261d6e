"""
Droops do mecanismo de ressonância.

k^f_{t,1} vem do discriminante de Weierstrass do reticulado de períodos e
k^p_{t,1} do tempo próprio da asa fina. Convenção de semi-períodos: o
reticulado é gerado por 2ω₁ e 2ω₂ e τ = ω₂/ω₁.
"""
import cmath
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .config import RESONANCE_CONFIG, get_logger
from .exceptions import (
    DegenerateLatticeError,
    InvalidInputError,
    NonPositiveDroopError,
    ZeroDiscriminantError,
    ZeroVerticalSpeedError,
)
from .norming import (
    Mechanism,
    PathEstimate,
    droop_mantissa,
    path_estimate,
    total_euclidean,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class WeierstrassLattice:
    """Reticulado orientado (Im τ > 0) e seus invariantes g₂, g₃."""
    omega1: complex
    omega2: complex
    g2: complex
    g3: complex

    @property
    def disc(self) -> complex:
        """Discriminante Δ = g₂³ - 27·g₃²."""
        return self.g2 ** 3 - 27 * self.g3 ** 2

    @property
    def tau(self) -> complex:
        return self.omega2 / self.omega1


@dataclass(frozen=True)
class WingTrace:
    """Velocidades horizontal u_i e vertical v_i da asa."""
    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=np.float64).ravel()
        v = np.asarray(self.v, dtype=np.float64).ravel()
        if u.size == 0 or u.shape != v.shape:
            raise InvalidInputError(
                f"u e v precisam ter o mesmo comprimento não nulo ({u.size} vs {v.size})"
            )
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
            raise InvalidInputError("Velocidades da asa contêm valores não finitos")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @property
    def T(self) -> int:
        return int(self.u.size)


@dataclass(frozen=True)
class PotentialPair:
    """Energias potenciais interna V^in e externa V^out."""
    v_in: float
    v_out: float

    def __post_init__(self):
        if not (self.v_in > 0 and self.v_out > 0):
            raise InvalidInputError(
                f"Potenciais devem ser positivos: v_in={self.v_in}, v_out={self.v_out}"
            )


def _oriented_basis(omega1: complex, omega2: complex) -> Tuple[complex, complex]:
    """Valida o reticulado e troca os períodos para garantir Im(ω₂/ω₁) > 0."""
    omega1, omega2 = complex(omega1), complex(omega2)
    if omega1 == 0 or omega2 == 0:
        raise DegenerateLatticeError("Períodos não podem ser nulos")

    tau = omega2 / omega1
    if abs(tau.imag) < RESONANCE_CONFIG["degenerate_tol"]:
        raise DegenerateLatticeError(f"τ = {tau} é real: reticulado degenerado")

    if tau.imag < 0:
        omega1, omega2 = omega2, omega1
    return omega1, omega2


def reduce_basis(omega1: complex, omega2: complex) -> Tuple[complex, complex]:
    """
    Redução de Gauss da base orientada: leva τ ao domínio fundamental.

    O reticulado (e portanto g₂, g₃) não muda; só a convergência da série q melhora.
    """
    for _ in range(100):
        tau = omega2 / omega1
        shift = round(tau.real)
        if shift:
            omega2 = omega2 - shift * omega1
        if abs(omega2) < abs(omega1):
            # τ -> -1/τ mantém a orientação
            omega1, omega2 = omega2, -omega1
        else:
            break
    return omega1, omega2


def _lambert_sums(q2: complex) -> Tuple[complex, complex, int]:
    """Σ n³xⁿ/(1-xⁿ) e Σ n⁵xⁿ/(1-xⁿ) com x = q², truncadas pela tolerância."""
    tol = RESONANCE_CONFIG["qseries_tol"]
    s3 = 0j
    s5 = 0j
    power = 1 + 0j

    for n in range(1, RESONANCE_CONFIG["qseries_max_terms"] + 1):
        power *= q2
        ratio = power / (1 - power)
        term3 = n ** 3 * ratio
        term5 = n ** 5 * ratio
        s3 += term3
        s5 += term5
        if (abs(240 * term3) < tol * max(abs(1 + 240 * s3), 1.0)
                and abs(504 * term5) < tol * max(abs(1 - 504 * s5), 1.0)):
            return s3, s5, n

    return s3, s5, RESONANCE_CONFIG["qseries_max_terms"]


def invariants_qseries(omega1: complex, omega2: complex) -> WeierstrassLattice:
    """
    Invariantes g₂, g₃ pelas séries de Eisenstein em q = exp(iπτ).

    g₂ = (4/3)·(π/2ω₁)⁴·E₄(τ),  g₃ = (8/27)·(π/2ω₁)⁶·E₆(τ)

    Args:
        omega1: Semi-período ω₁
        omega2: Semi-período ω₂

    Returns:
        WeierstrassLattice com a base orientada
    """
    omega1, omega2 = _oriented_basis(omega1, omega2)
    w1, w2 = reduce_basis(omega1, omega2)

    q = cmath.exp(1j * math.pi * (w2 / w1))
    s3, s5, terms = _lambert_sums(q * q)
    logger.debug("Série q truncada após %d termos (|q|=%.3e)", terms, abs(q))

    e4 = 1 + 240 * s3
    e6 = 1 - 504 * s5
    scale = math.pi / (2 * w1)
    g2 = (4.0 / 3.0) * scale ** 4 * e4
    g3 = (8.0 / 27.0) * scale ** 6 * e6

    return WeierstrassLattice(omega1=omega1, omega2=omega2, g2=g2, g3=g3)


def invariants_latticesum(omega1: complex, omega2: complex,
                          M: Optional[int] = None) -> WeierstrassLattice:
    """
    Invariantes pela definição: g₂ = 60·Σ' w⁻⁴, g₃ = 140·Σ' w⁻⁶.

    A soma percorre w = 2mω₁ + 2nω₂ com |m|, |n| ≤ M, restrita ao disco
    inscrito no paralelogramo de índices, o que preserva as simetrias do
    reticulado na truncagem.

    Args:
        omega1: Semi-período ω₁
        omega2: Semi-período ω₂
        M: Raio de truncagem (>= 20)

    Returns:
        WeierstrassLattice
    """
    M = RESONANCE_CONFIG["lattice_radius"] if M is None else M
    if M < RESONANCE_CONFIG["min_lattice_radius"]:
        raise InvalidInputError(f"Raio de truncagem muito pequeno: M={M}")

    omega1, omega2 = _oriented_basis(omega1, omega2)
    a, b = 2 * omega1, 2 * omega2

    area = abs((a.conjugate() * b).imag)
    radius = M * area / max(abs(a), abs(b))

    idx = np.arange(-M, M + 1)
    m, n = np.meshgrid(idx, idx, indexing="ij")
    w = m * a + n * b
    mask = (np.abs(w) <= radius) & ((m != 0) | (n != 0))
    w = w[mask]

    w2 = w ** -2
    w4 = w2 * w2
    g2 = 60 * np.sum(w4)
    g3 = 140 * np.sum(w4 * w2)

    return WeierstrassLattice(omega1=omega1, omega2=omega2, g2=complex(g2), g3=complex(g3))


def droop_resonance_f(lat: WeierstrassLattice) -> Tuple[float, float]:
    """
    Droop k^f_{t,1} = [|Δ|^{-1/12}]₀ e potencial interno V^in = |Δ|^{-1/12}.

    Args:
        lat: Reticulado com invariantes

    Returns:
        Tupla (k, v_in)
    """
    abs_disc = abs(lat.disc)
    if abs_disc < RESONANCE_CONFIG["discriminant_floor"]:
        raise ZeroDiscriminantError(f"|Δ| = {abs_disc:.3e}: reticulado colapsado")

    v_in = abs_disc ** (-1.0 / 12.0)
    return droop_mantissa(v_in, "|Δ|^(-1/12)"), v_in


def proper_time_sq(wing: WingTrace) -> float:
    """
    Sincronização dos relógios: Δτ² = Σ (1 - (u_i/v_i)²).

    Args:
        wing: Velocidades da asa

    Returns:
        Δτ²
    """
    zero = np.flatnonzero(wing.v == 0)
    if zero.size:
        raise ZeroVerticalSpeedError(
            f"Velocidade vertical nula no passo {int(zero[0]) + 1}", step=int(zero[0]) + 1
        )
    return float(np.sum(1.0 - (wing.u / wing.v) ** 2))


def droop_resonance_p(dtau2: float) -> Tuple[float, float]:
    """
    Droop k^p_{t,1} = [Δτ²]₀ e potencial externo V^out = Δτ².

    Args:
        dtau2: Quadrado do tempo próprio

    Returns:
        Tupla (k, v_out)
    """
    if not dtau2 > 0:
        raise NonPositiveDroopError(f"Δτ² = {dtau2} não positivo: regime sem droop")
    return droop_mantissa(dtau2, "Δτ²"), float(dtau2)


def molecule_potentials(lat: WeierstrassLattice, wing: WingTrace) -> PotentialPair:
    """Potenciais V^in e V^out da molécula diatômica associada."""
    _, v_in = droop_resonance_f(lat)
    _, v_out = droop_resonance_p(proper_time_sq(wing))
    return PotentialPair(v_in=v_in, v_out=v_out)


def molecule_paths(
    k_prev_f: float,
    k_prev_p: float,
    lat: WeierstrassLattice,
    wing: WingTrace,
) -> Tuple[PathEstimate, float]:
    """
    Caminho esperado com ressonâncias e distância interatômica L_m.

    Args:
        k_prev_f: Droop real de ontem (frequência)
        k_prev_p: Droop real de ontem (potência)
        lat: Reticulado de Weierstrass
        wing: Velocidades da asa

    Returns:
        Tupla (PathEstimate, L_m)
    """
    k_f, _ = droop_resonance_f(lat)
    k_p, _ = droop_resonance_p(proper_time_sq(wing))

    estimate = PathEstimate(
        L_f=path_estimate(k_prev_f, k_f),
        L_p=path_estimate(k_prev_p, k_p),
        mechanism=Mechanism.RESONANCE,
    )
    return estimate, total_euclidean(estimate.L_f, estimate.L_p)
