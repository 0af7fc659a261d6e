"""
Reconstrução dos espectros de frequência e potência e cálculo do droop real.

A equação de Fredholm de primeira espécie

    ∫₀¹ [1 - x/t]₊ φ(x) dx = g(t)

é discretizada pela regra do trapézio numa grade uniforme de [0, 1] e resolvida
com regularização de Tikhonov sobre a segunda diferença de φ.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np
from scipy import linalg
from scipy.interpolate import CubicSpline

from .config import SPECTRA_CONFIG, get_logger
from .exceptions import (
    DegenerateFrequencyError,
    InvalidInputError,
    SingularSystemError,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class DeviationSeries:
    """Desvios por unidade Δf(t) ou ΔP(t), t = 1..T."""
    values: np.ndarray
    label: str = "delta_f"

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64).ravel()
        if values.size < 2:
            raise InvalidInputError(f"Série {self.label} precisa de T >= 2 (T={values.size})")
        if not np.all(np.isfinite(values)):
            raise InvalidInputError(f"Série {self.label} contém valores não finitos")
        object.__setattr__(self, "values", values)

    @property
    def T(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class PathTrace:
    """Caminho x(t) = k0·t·Σ_{i≤t} Δf(i)."""
    x: np.ndarray
    k0: float


@dataclass(frozen=True)
class SpectrumGrid:
    """Espectro reconstruído nos nós da grade uniforme."""
    nodes: np.ndarray
    phi: np.ndarray
    lam: float = 0.0
    residual: float = 0.0

    def __post_init__(self):
        if self.nodes.shape != self.phi.shape:
            raise InvalidInputError("nodes e phi precisam ter o mesmo tamanho")
        if not np.all(np.isfinite(self.phi)):
            raise InvalidInputError("Espectro contém valores não finitos")

    @property
    def N(self) -> int:
        return int(self.nodes.size - 1)

    @property
    def endpoint(self) -> float:
        """Valor do espectro em x = 1 (corresponde a t = T)."""
        return float(self.phi[-1])

    @classmethod
    def from_function(cls, func: Callable[[np.ndarray], np.ndarray], N: int) -> "SpectrumGrid":
        """Amostra uma função analítica na grade."""
        nodes = uniform_grid(N)
        phi = np.broadcast_to(np.asarray(func(nodes), dtype=np.float64), nodes.shape).copy()
        return cls(nodes=nodes, phi=phi)


@dataclass(frozen=True)
class ActualDroop:
    """Droop real k_{t-1} = ΔP_{t-1} / Δf_{t-1}."""
    delta_f: float
    delta_P: float
    k: float

    @classmethod
    def from_endpoints(cls, f_end: float, p_end: float,
                       tol: Optional[float] = None) -> "ActualDroop":
        """
        Calcula o droop a partir dos valores dos espectros em x = 1.

        Args:
            f_end: f*(1)
            p_end: P*(1)
            tol: Limite abaixo do qual Δf é considerado nulo

        Returns:
            ActualDroop
        """
        tol = SPECTRA_CONFIG["degenerate_tol"] if tol is None else tol
        delta_f = f_end - 1.0
        delta_P = p_end - 1.0

        if abs(delta_f) < tol:
            raise DegenerateFrequencyError(
                f"Δf = {delta_f:.3e}: droop indefinido", f_end=f_end
            )

        return cls(delta_f=delta_f, delta_P=delta_P, k=delta_P / delta_f)


def uniform_grid(N: int) -> np.ndarray:
    """N+1 nós uniformes em [0, 1]."""
    return np.linspace(0.0, 1.0, N + 1)


def kernel_matrix(N: int) -> np.ndarray:
    """
    Discretização trapezoidal do núcleo [1 - x/t]₊.

    A linha i integra sobre [0, t_i]; o núcleo se anula em x = t_i, então o peso
    da extremidade direita não contribui. A linha 0 é nula (g(0) = 0).

    Args:
        N: Número de intervalos da grade

    Returns:
        Matriz (N+1) x (N+1)
    """
    nodes = uniform_grid(N)
    h = 1.0 / N

    K = np.zeros((N + 1, N + 1))
    t = nodes[1:, None]
    x = nodes[None, :]
    K[1:, :] = np.clip(1.0 - x / t, 0.0, None)

    weights = np.full(N + 1, h)
    weights[0] = 0.5 * h
    return K * weights[None, :]


def second_difference(N: int) -> np.ndarray:
    """Operador de segunda diferença (N-1) x (N+1)."""
    D = np.zeros((N - 1, N + 1))
    rows = np.arange(N - 1)
    D[rows, rows] = 1.0
    D[rows, rows + 1] = -2.0
    D[rows, rows + 2] = 1.0
    return D


def forward_operator(spectrum: SpectrumGrid) -> np.ndarray:
    """
    Aplica o operador direto: g(t_i) = ∫₀^{t_i} (1 - x/t_i)·φ(x) dx.

    Args:
        spectrum: Espectro na grade

    Returns:
        Array g nos nós da grade
    """
    return kernel_matrix(spectrum.N) @ spectrum.phi


def solve_spectrum(g: np.ndarray, N: int, lam: float) -> SpectrumGrid:
    """
    Resolve min ‖Kφ - g‖² + λ‖D²φ‖² pelas equações normais.

    Args:
        g: Dados nos N+1 nós da grade
        N: Número de intervalos (>= 16)
        lam: Peso da regularização (>= 0)

    Returns:
        SpectrumGrid com o espectro e o resíduo ‖Kφ - g‖₂
    """
    g = np.asarray(g, dtype=np.float64)
    if N < SPECTRA_CONFIG["min_grid"]:
        raise InvalidInputError(f"Grade muito pequena: N={N} (mínimo {SPECTRA_CONFIG['min_grid']})")
    if g.shape != (N + 1,):
        raise InvalidInputError(f"g deve ter {N + 1} amostras, recebeu {g.size}")
    if lam < 0 or not np.isfinite(lam):
        raise InvalidInputError(f"lambda deve ser não negativo: {lam}")

    K = kernel_matrix(N)
    D = second_difference(N)
    A = K.T @ K + lam * (D.T @ D)
    b = K.T @ g

    try:
        factor = linalg.cho_factor(A, lower=True)
        phi = linalg.cho_solve(factor, b)
    except linalg.LinAlgError as e:
        raise SingularSystemError(
            f"Equações normais singulares (lambda={lam}): {e}", lam=lam
        ) from e

    if not np.all(np.isfinite(phi)):
        raise SingularSystemError(f"Solução não finita (lambda={lam})", lam=lam)

    residual = float(np.linalg.norm(K @ phi - g))
    logger.debug("Tikhonov N=%d lambda=%.1e residual=%.3e", N, lam, residual)

    return SpectrumGrid(nodes=uniform_grid(N), phi=phi, lam=lam, residual=residual)


def lcurve_points(g: np.ndarray, N: int, lambdas: Iterable[float]) -> List[Dict[str, float]]:
    """
    Pontos da curva L (resíduo vs. semi-norma de suavidade) para inspeção.

    Args:
        g: Dados na grade
        N: Número de intervalos
        lambdas: Valores de lambda

    Returns:
        Lista de dicts com lambda, residual e seminorm
    """
    D = second_difference(N)
    points = []
    for lam in lambdas:
        spectrum = solve_spectrum(g, N, lam)
        points.append({
            "lambda": float(lam),
            "residual": spectrum.residual,
            "seminorm": float(np.linalg.norm(D @ spectrum.phi)),
        })
    return points


def build_path(series: DeviationSeries, k0: float) -> PathTrace:
    """
    Constrói o caminho x(t) = k0·t·Σ_{i=1}^{t} Δf(i).

    Args:
        series: Série de desvios
        k0: Constante de escala (> 0)

    Returns:
        PathTrace de comprimento T
    """
    if not k0 > 0:
        raise InvalidInputError(f"k0 deve ser positivo: {k0}")

    t = np.arange(1, series.T + 1, dtype=np.float64)
    x = k0 * t * np.cumsum(series.values)
    return PathTrace(x=x, k0=float(k0))


def resample_to_grid(series: DeviationSeries, N: int) -> np.ndarray:
    """
    Leva t = 1..T afim para [0, 1] e reamostra na grade por spline cúbica.

    Args:
        series: Série observada
        N: Número de intervalos da grade

    Returns:
        Array com N+1 amostras
    """
    s = np.linspace(0.0, 1.0, series.T)
    if series.T < 4:
        return np.interp(uniform_grid(N), s, series.values)
    return CubicSpline(s, series.values, bc_type="not-a-knot")(uniform_grid(N))


def reconstruct(series: DeviationSeries, N: int, lam: float) -> SpectrumGrid:
    """Reamostra a série e resolve o espectro correspondente."""
    return solve_spectrum(resample_to_grid(series, N), N, lam)


def reconstruct_spectra(
    f_series: DeviationSeries, P_series: DeviationSeries, N: int, lam: float
) -> Tuple[SpectrumGrid, SpectrumGrid]:
    """Reconstrói f* e P*; as duas inversões são independentes."""
    with ThreadPoolExecutor(max_workers=2) as executor:
        f_future = executor.submit(reconstruct, f_series, N, lam)
        p_future = executor.submit(reconstruct, P_series, N, lam)
        return f_future.result(), p_future.result()


def actual_droop(
    f_series: DeviationSeries,
    P_series: DeviationSeries,
    k0: Optional[float] = None,
    N: Optional[int] = None,
    lam: Optional[float] = None,
) -> ActualDroop:
    """
    Droop real de ontem a partir dos espectros reconstruídos.

    Args:
        f_series: Desvios de frequência
        P_series: Desvios de potência
        k0: Constante do caminho (só valida; a inversão usa a grade normalizada)
        N: Número de intervalos da grade
        lam: Peso da regularização

    Returns:
        ActualDroop com Δf_{t-1}, ΔP_{t-1} e k_{t-1}
    """
    k0 = SPECTRA_CONFIG["k0"] if k0 is None else k0
    N = SPECTRA_CONFIG["grid_size"] if N is None else N
    lam = SPECTRA_CONFIG["lambda"] if lam is None else lam

    if f_series.T != P_series.T:
        raise InvalidInputError(
            f"Séries com comprimentos diferentes: {f_series.T} != {P_series.T}"
        )
    if not k0 > 0:
        raise InvalidInputError(f"k0 deve ser positivo: {k0}")

    f_star, p_star = reconstruct_spectra(f_series, P_series, N, lam)
    return ActualDroop.from_endpoints(f_star.endpoint, p_star.endpoint)
