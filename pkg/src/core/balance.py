"""
Droops do mecanismo de balanço: produção de redundância por regressão de
Poisson sobre as cores e produção de entropia pela geometria do receptor.
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Tuple, Union

import numpy as np
from scipy.special import gammaln

from .config import BALANCE_CONFIG, get_logger
from .exceptions import (
    ChannelOrderError,
    EmptyDataError,
    GrazingScanError,
    InvalidInputError,
    NonConvergentError,
    RankDeficientError,
)
from .norming import (
    Mechanism,
    PathEstimate,
    droop_mantissa,
    path_estimate,
    total_ropelength,
)

logger = get_logger(__name__)

# "os valores das cores são oito": amplitude fixa de ΔR
REDUNDANCY_AMPLITUDE = 8.0

N_FEATURES = 4


class Link(Enum):
    """Função de ligação do GLM de Poisson."""
    IDENTITY = "identity"
    LOG = "log"


def _as_link(link: Union[str, Link, None]) -> Link:
    if link is None:
        link = BALANCE_CONFIG["link"]
    if isinstance(link, Link):
        return link
    try:
        return Link(str(link).lower())
    except ValueError:
        raise InvalidInputError(f"Link desconhecido: {link} (use identity ou log)")


@dataclass(frozen=True)
class ColorVector:
    """Cinco cores c₁..c₅, cada uma em [0, 1)."""
    c: Tuple[float, float, float, float, float]

    def __post_init__(self):
        c = tuple(float(v) for v in self.c)
        if len(c) != 5:
            raise InvalidInputError(f"São necessárias 5 cores, recebeu {len(c)}")
        bad = [v for v in c if not (0.0 <= v < 1.0)]
        if bad:
            raise InvalidInputError(f"Cores fora de [0, 1): {bad}")
        object.__setattr__(self, "c", c)

    @property
    def features(self) -> np.ndarray:
        """Cores c₁..c₄ usadas pela regressão."""
        return np.array(self.c[:N_FEATURES])

    @property
    def wavelengths(self) -> np.ndarray:
        """λ_i = π·c_i."""
        return math.pi * np.array(self.c)


@dataclass(frozen=True)
class PoissonModel:
    """GLM de Poisson ajustado: β = (intercepto, β₁..β₄)."""
    beta: np.ndarray
    link: Link = Link.IDENTITY
    iterations: int = 0
    converged: bool = True
    loglik_history: List[float] = field(default_factory=list)
    intercept_only: bool = False

    def __post_init__(self):
        beta = np.asarray(self.beta, dtype=np.float64).ravel()
        if beta.shape != (N_FEATURES + 1,):
            raise InvalidInputError(f"beta deve ter {N_FEATURES + 1} coeficientes")
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "link", _as_link(self.link))

    def predict(self, features: np.ndarray) -> np.ndarray:
        """
        Média prevista para uma ou mais linhas de cores (c₁..c₄).

        Args:
            features: Array (4,) ou (n, 4)

        Returns:
            Array de médias (escalar 0-d para uma única linha)
        """
        X = np.asarray(features, dtype=np.float64)
        eta = self.beta[0] + X @ self.beta[1:]
        return _inverse_link(eta, self.link)

    def log_likelihood(self, features: np.ndarray, counts: np.ndarray) -> float:
        """Log-verossimilhança de Poisson nas linhas dadas."""
        return _poisson_loglik(np.asarray(counts, dtype=np.float64), self.predict(features))

    def to_dict(self) -> dict:
        return {
            "beta": [float(b) for b in self.beta],
            "link": self.link.value,
            "iterations": self.iterations,
            "converged": self.converged,
            "intercept_only": self.intercept_only,
            "loglik_history": [float(v) for v in self.loglik_history],
        }


def _inverse_link(eta: np.ndarray, link: Link) -> np.ndarray:
    if link is Link.LOG:
        return np.exp(eta)
    return np.maximum(eta, BALANCE_CONFIG["mu_floor"])


def _poisson_loglik(y: np.ndarray, mu: np.ndarray) -> float:
    return float(np.sum(y * np.log(mu) - mu - gammaln(y + 1.0)))


def _split_rows(rows) -> Tuple[np.ndarray, np.ndarray]:
    """Separa as linhas (c₁..c₄, count) em cores e contagens."""
    data = np.asarray(rows, dtype=np.float64)
    if data.size == 0:
        raise EmptyDataError("Histórico de regressão vazio")
    data = np.atleast_2d(data)
    if data.shape[1] != N_FEATURES + 1:
        raise InvalidInputError(
            f"Cada linha precisa de {N_FEATURES} cores e uma contagem (recebeu {data.shape[1]} colunas)"
        )
    if not np.all(np.isfinite(data)):
        raise InvalidInputError("Histórico contém valores não finitos")

    counts = data[:, -1]
    if np.any(counts < 0) or np.any(counts != np.round(counts)):
        raise InvalidInputError("Contagens devem ser inteiros não negativos")
    return data[:, :-1], counts


def fit_poisson(rows, link: Union[str, Link, None] = None,
                intercept_only: bool = False) -> PoissonModel:
    """
    Ajusta o GLM de Poisson por mínimos quadrados iterativamente reponderados.

    Cada passo que reduz a log-verossimilhança é cortado pela metade até
    deixar de reduzi-la.

    Args:
        rows: Linhas (c₁, c₂, c₃, c₄, count)
        link: identity (padrão) ou log
        intercept_only: Ajusta apenas o intercepto

    Returns:
        PoissonModel ajustado
    """
    link = _as_link(link)
    features, y = _split_rows(rows)
    n = y.size

    X = np.column_stack([np.ones(n), features])
    if intercept_only:
        X = X[:, :1]
    p = X.shape[1]
    if np.linalg.matrix_rank(X) < p:
        raise RankDeficientError(
            f"Matriz de projeto com posto {np.linalg.matrix_rank(X)} < {p} ({n} linhas)"
        )

    floor = BALANCE_CONFIG["mu_floor"]
    tol = BALANCE_CONFIG["tol"]

    def mean_of(beta: np.ndarray) -> np.ndarray:
        return _inverse_link(X @ beta, link)

    def irls_target(mu: np.ndarray) -> np.ndarray:
        # Poisson: V(μ) = μ
        if link is Link.LOG:
            weights = mu
            z = np.log(mu) + (y - mu) / mu
        else:
            weights = 1.0 / mu
            z = y
        sw = np.sqrt(weights)
        beta, *_ = np.linalg.lstsq(X * sw[:, None], z * sw, rcond=None)
        return beta

    mu = np.maximum(0.5 * (y + y.mean()), floor)
    beta = irls_target(mu)
    loglik = _poisson_loglik(y, mean_of(beta))
    history = [loglik]

    for iteration in range(1, BALANCE_CONFIG["max_iter"] + 1):
        candidate = irls_target(mean_of(beta))
        step = candidate - beta

        new_loglik = _poisson_loglik(y, mean_of(candidate))
        slack = 1e-12 * max(1.0, abs(loglik))
        halvings = 0
        while new_loglik < loglik - slack and halvings < BALANCE_CONFIG["max_halvings"]:
            step *= 0.5
            candidate = beta + step
            new_loglik = _poisson_loglik(y, mean_of(candidate))
            halvings += 1
        if halvings:
            logger.debug("IRLS iteração %d: %d meias-passadas", iteration, halvings)

        if new_loglik < loglik - slack:
            # nenhuma fração do passo melhora: já estamos no máximo numérico
            logger.debug("IRLS parou na iteração %d sem melhora", iteration)
            return _model(beta, link, iteration, True, history, intercept_only)

        beta = candidate
        loglik = new_loglik
        history.append(loglik)
        logger.debug("IRLS iteração %d: loglik=%.10f", iteration, loglik)

        if np.max(np.abs(step)) < tol * max(1.0, float(np.max(np.abs(beta)))):
            return _model(beta, link, iteration, True, history, intercept_only)

    raise NonConvergentError(
        f"IRLS não convergiu em {BALANCE_CONFIG['max_iter']} iterações",
        beta=beta.tolist(),
    )


def _model(beta: np.ndarray, link: Link, iterations: int, converged: bool,
           history: List[float], intercept_only: bool) -> PoissonModel:
    full = np.zeros(N_FEATURES + 1)
    full[:beta.size] = beta
    return PoissonModel(
        beta=full,
        link=link,
        iterations=iterations,
        converged=converged,
        loglik_history=list(history),
        intercept_only=intercept_only,
    )


@dataclass(frozen=True)
class RedundancyResult:
    """R(0) regredida, produção ΔR e R(1) = R(0) + ΔR."""
    r0: float
    dr: float
    r1: float

    def __post_init__(self):
        if self.r1 != self.r0 + self.dr:
            raise InvalidInputError("R(1) deve ser R(0) + ΔR")
        if abs(self.dr) > REDUNDANCY_AMPLITUDE:
            raise InvalidInputError(f"|ΔR| = {abs(self.dr)} excede {REDUNDANCY_AMPLITUDE}")


@dataclass(frozen=True)
class EntropyResult:
    """Raios dos canais, entropias S(0), ΔS, S(1) e o raio-vetor R*."""
    r1_radius: float
    r2_radius: float
    v0: float
    s0: float
    ds: float
    s1: float
    r_star: float

    def __post_init__(self):
        if not self.r1_radius > self.r2_radius >= 0:
            raise ChannelOrderError(
                f"R₁ = {self.r1_radius} deve ser maior que R₂ = {self.r2_radius}"
            )
        if self.s1 != self.s0 + self.ds or not self.s1 > 0:
            raise InvalidInputError("S(1) deve ser S(0) + ΔS e positivo")


def redundancy_production(c5) -> np.ndarray:
    """ΔR = 8·cos(π·c₅); aceita arrays."""
    return REDUNDANCY_AMPLITUDE * np.cos(np.pi * np.asarray(c5, dtype=np.float64))


def redundancy(model: PoissonModel, colors: ColorVector) -> RedundancyResult:
    """
    Redundância produzida: R(1) = PREG(c₁..c₄) + 8·cos(π·c₅).

    Args:
        model: Modelo de Poisson ajustado
        colors: Cores do sistema

    Returns:
        RedundancyResult
    """
    r0 = float(model.predict(colors.features))
    dr = float(redundancy_production(colors.c[4]))
    return RedundancyResult(r0=r0, dr=dr, r1=r0 + dr)


def droop_balance_f(res: RedundancyResult) -> float:
    """Droop k^f_{t,3} = [R(1)]₀."""
    return droop_mantissa(res.r1, "R(1)")


def entropy(colors: ColorVector, v0: float) -> EntropyResult:
    """
    Entropia do receptor de dois canais.

    R₁ = π·c₁/8, R₂ = π·c₂, S(0) = π·R₁²/4,
    ΔS = π·(R₁² - R₂²)·sec(v₀)/16 (área do cone truncado), R* = √S(1).

    Args:
        colors: Cores do sistema
        v0: Velocidade de varredura em radianos

    Returns:
        EntropyResult
    """
    r1 = math.pi * colors.c[0] / 8.0
    r2 = math.pi * colors.c[1]
    if r1 <= r2:
        raise ChannelOrderError(
            f"Canal externo R₁ = {r1:.6f} não supera o interno R₂ = {r2:.6f}"
        )

    cos_v0 = math.cos(v0)
    if abs(cos_v0) < BALANCE_CONFIG["grazing_tol"]:
        raise GrazingScanError(f"cos(v₀) = {cos_v0:.3e}: varredura rasante", v0=v0)

    # (1 + tan²v₀)^{1/2} = 1/|cos v₀|
    secant = 1.0 / abs(cos_v0)
    s0 = math.pi * r1 ** 2 / 4.0
    ds = math.pi * (r1 ** 2 - r2 ** 2) * secant / 16.0
    s1 = s0 + ds

    return EntropyResult(
        r1_radius=r1, r2_radius=r2, v0=float(v0),
        s0=s0, ds=ds, s1=s1, r_star=math.sqrt(s1),
    )


def droop_balance_p(res: EntropyResult) -> float:
    """Droop k^p_{t,3} = [R*]₀."""
    return droop_mantissa(res.r_star, "R*")


def radiation_paths(
    k_prev_f: float,
    k_prev_p: float,
    model: PoissonModel,
    colors: ColorVector,
    v0: float,
) -> Tuple[PathEstimate, float]:
    """
    Caminho esperado com balanços e comprimento L_b da onda irradiada.

    Args:
        k_prev_f: Droop real de ontem (frequência)
        k_prev_p: Droop real de ontem (potência)
        model: Modelo de Poisson
        colors: Cores
        v0: Velocidade de varredura

    Returns:
        Tupla (PathEstimate, L_b)
    """
    k_f = droop_balance_f(redundancy(model, colors))
    k_p = droop_balance_p(entropy(colors, v0))

    estimate = PathEstimate(
        L_f=path_estimate(k_prev_f, k_f),
        L_p=path_estimate(k_prev_p, k_p),
        mechanism=Mechanism.BALANCE,
    )
    return estimate, total_ropelength(estimate.L_f, estimate.L_p)

