"""
Orquestração da predição completa: droop real -> três mecanismos -> três caminhos totais.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .. import __version__
from ..utils.file_handler import FileHandler, dump_json
from .balance import (
    ColorVector,
    Link,
    PoissonModel,
    droop_balance_f,
    droop_balance_p,
    entropy,
    fit_poisson,
    radiation_paths,
    redundancy,
)
from .config import HALF_PI, PERFORMANCE_CONFIG, SYNTHETIC_CONFIG, get_logger
from .correlation import (
    dna_paths,
    droop_corr_f,
    droop_corr_p,
    potential_correlation,
    validate_quad,
)
from .exceptions import InvalidInputError, MissingInputError, PathPredictionError
from .norming import Mechanism, PathEstimate, TotalPathReport
from .resonance import (
    PotentialPair,
    WingTrace,
    droop_resonance_f,
    droop_resonance_p,
    invariants_qseries,
    molecule_paths,
    molecule_potentials,
    proper_time_sq,
)
from .scenario import ScenarioConfig
from .spectra import (
    ActualDroop,
    DeviationSeries,
    actual_droop,
    build_path,
    reconstruct_spectra,
)

logger = get_logger(__name__)

STATUS_OK = "ok"

TOTAL_NAMES = {
    Mechanism.RESONANCE: "L_m",
    Mechanism.CORRELATION: "L_d",
    Mechanism.BALANCE: "L_b",
}


@dataclass(frozen=True)
class MechanismOutcome:
    """Droops esperados de um mecanismo, cada um com seu status."""
    mechanism: Mechanism
    k_f: Optional[float]
    k_p: Optional[float]
    f_status: str = STATUS_OK
    p_status: str = STATUS_OK
    detail: Optional[str] = None

    def __post_init__(self):
        for k, status in ((self.k_f, self.f_status), (self.k_p, self.p_status)):
            if status == STATUS_OK and not (k is not None and HALF_PI < k <= np.pi):
                raise InvalidInputError(f"Droop {k} com status ok fora de (π/2, π]")

    @property
    def status(self) -> str:
        """ok, ou o primeiro código de erro (frequência antes de potência)."""
        if self.f_status != STATUS_OK:
            return self.f_status
        return self.p_status

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK


@dataclass(frozen=True)
class DroopSet:
    """Droop real e os seis droops esperados."""
    k_actual: Optional[float]
    actual_status: str
    expected: Dict[Mechanism, MechanismOutcome]
    actual_detail: Optional[str] = None


@dataclass(frozen=True)
class PredictionResult:
    """Tudo o que uma execução produz."""
    droops: DroopSet
    paths: Dict[Mechanism, Optional[PathEstimate]]
    path_status: Dict[Mechanism, str]
    totals: TotalPathReport
    path_trace: List[float] = field(default_factory=list)
    config_echo: Dict[str, Any] = field(default_factory=dict)
    actual: Optional[ActualDroop] = None

    def to_dict(self) -> Dict[str, Any]:
        """Relatório no esquema JSON público (null marca resultado ausente)."""
        actual = {
            "k": self.droops.k_actual,
            "status": self.droops.actual_status,
            "detail": self.droops.actual_detail,
            "delta_f": self.actual.delta_f if self.actual else None,
            "delta_p": self.actual.delta_P if self.actual else None,
        }

        expected = {}
        for mechanism, outcome in self.droops.expected.items():
            expected[mechanism.value] = {
                "f": outcome.k_f,
                "p": outcome.k_p,
                "status": outcome.status,
                "f_status": outcome.f_status,
                "p_status": outcome.p_status,
                "detail": outcome.detail,
            }

        paths = {}
        for mechanism, estimate in self.paths.items():
            paths[mechanism.value] = {
                "L_f": estimate.L_f if estimate else None,
                "L_p": estimate.L_p if estimate else None,
                "status": self.path_status[mechanism],
            }

        return {
            "actual_droop": actual,
            "expected_droops": expected,
            "paths": paths,
            "totals": {
                "L_m": self.totals.L_m,
                "L_d": self.totals.L_d,
                "L_b": self.totals.L_b,
            },
            "path_trace": list(self.path_trace),
            "config_echo": self.config_echo,
            "version": __version__,
        }


def report_to_json(result: PredictionResult) -> str:
    """Serialização determinística do relatório."""
    return dump_json(result.to_dict())


def _attempt(func: Callable[[], float]) -> Tuple[Optional[float], str, Optional[str]]:
    """Executa um cálculo de droop e captura o erro do domínio como status."""
    try:
        return func(), STATUS_OK, None
    except PathPredictionError as e:
        return None, e.code, str(e)


def _outcome(mechanism: Mechanism, f_calc: Callable[[], float],
             p_calc: Callable[[], float]) -> MechanismOutcome:
    k_f, f_status, f_detail = _attempt(f_calc)
    k_p, p_status, p_detail = _attempt(p_calc)
    detail = "; ".join(d for d in (f_detail, p_detail) if d) or None
    if detail:
        logger.warning("Mecanismo %s: %s", mechanism.value, detail)
    return MechanismOutcome(
        mechanism=mechanism, k_f=k_f, k_p=k_p,
        f_status=f_status, p_status=p_status, detail=detail,
    )


def _require(value, name: str):
    if value is None:
        raise MissingInputError(f"Entrada ausente: {name}")
    return value


class _Inputs:
    """Entradas dos mecanismos, resolvidas preguiçosamente e compartilhadas."""

    def __init__(self, config: ScenarioConfig, wing: Optional[WingTrace],
                 history: Optional[np.ndarray], model: Optional[PoissonModel]):
        self.config = config
        self.wing = wing
        self.history = history
        self.model = model

    def lattice(self):
        return invariants_qseries(self.config.omega1, self.config.omega2)

    def wing_trace(self) -> WingTrace:
        return _require(self.wing, "wing")

    def quad(self):
        return validate_quad(self.config.quad, self.config.bound)

    def potentials(self) -> PotentialPair:
        if self.config.derive_potentials:
            return molecule_potentials(self.lattice(), self.wing_trace())
        v_in, v_out = self.config.potentials
        return PotentialPair(v_in=v_in, v_out=v_out)

    def poisson_model(self) -> PoissonModel:
        if self.model is None:
            rows = _require(self.history, "history")
            self.model = fit_poisson(rows, self.config.link, self.config.intercept_only)
        return self.model

    def colors(self) -> ColorVector:
        return ColorVector(c=tuple(self.config.colours))


def _resonance(inputs: _Inputs) -> MechanismOutcome:
    return _outcome(
        Mechanism.RESONANCE,
        lambda: droop_resonance_f(inputs.lattice())[0],
        lambda: droop_resonance_p(proper_time_sq(inputs.wing_trace()))[0],
    )


def _correlation(inputs: _Inputs) -> MechanismOutcome:
    def rho32_droop() -> float:
        try:
            quad = inputs.quad()
        except PathPredictionError:
            quad = None
        return droop_corr_p(potential_correlation(inputs.potentials(), quad))

    return _outcome(
        Mechanism.CORRELATION,
        lambda: droop_corr_f(inputs.quad()),
        rho32_droop,
    )


def _balance(inputs: _Inputs) -> MechanismOutcome:
    return _outcome(
        Mechanism.BALANCE,
        lambda: droop_balance_f(redundancy(inputs.poisson_model(), inputs.colors())),
        lambda: droop_balance_p(entropy(inputs.colors(), inputs.config.v0)),
    )


def _paths(mechanism: Mechanism, k_actual: float, inputs: _Inputs) -> Tuple[PathEstimate, float]:
    if mechanism is Mechanism.RESONANCE:
        return molecule_paths(k_actual, k_actual, inputs.lattice(), inputs.wing_trace())
    if mechanism is Mechanism.CORRELATION:
        return dna_paths(k_actual, k_actual, inputs.quad(), inputs.potentials())
    return radiation_paths(k_actual, k_actual, inputs.poisson_model(), inputs.colors(),
                           inputs.config.v0)


def run_pipeline(
    config: ScenarioConfig,
    f_series: DeviationSeries,
    P_series: DeviationSeries,
    wing: Optional[WingTrace] = None,
    history: Optional[np.ndarray] = None,
    model: Optional[PoissonModel] = None,
) -> PredictionResult:
    """
    Executa a predição completa.

    O droop real é calculado uma vez e usado como k^f_{t-1} e k^p_{t-1}.
    Erros de um mecanismo viram status e nunca interrompem os outros.

    Args:
        config: Cenário validado
        f_series: Desvios de frequência
        P_series: Desvios de potência
        wing: Velocidades da asa (senão, lidas de config.wing)
        history: Histórico da regressão (senão, lido de config.history)
        model: Modelo de Poisson já ajustado (dispensa o histórico)

    Returns:
        PredictionResult
    """
    if wing is None and config.wing is not None:
        wing = _load_optional(lambda h: h.read_wing(config.wing))
    if history is None and model is None and config.history is not None:
        history = _load_optional(lambda h: h.read_history(config.history))

    actual: Optional[ActualDroop] = None
    try:
        actual = actual_droop(f_series, P_series, config.k0, config.grid, config.lam)
        k_actual, actual_status, actual_detail = actual.k, STATUS_OK, None
    except PathPredictionError as e:
        logger.warning("Droop real indisponível: %s", e)
        k_actual, actual_status, actual_detail = None, e.code, str(e)

    inputs = _Inputs(config, wing, history, model)
    # o modelo é ajustado antes de abrir as threads
    if inputs.model is None and inputs.history is not None:
        try:
            inputs.poisson_model()
        except PathPredictionError:
            pass

    workers = max(1, PERFORMANCE_CONFIG["num_workers"])
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [
            executor.submit(_resonance, inputs),
            executor.submit(_correlation, inputs),
            executor.submit(_balance, inputs),
        ]
        outcomes = [future.result() for future in futures]

    expected = {outcome.mechanism: outcome for outcome in outcomes}

    paths: Dict[Mechanism, Optional[PathEstimate]] = {}
    path_status: Dict[Mechanism, str] = {}
    totals: Dict[str, Optional[float]] = {}

    for mechanism, outcome in expected.items():
        estimate, total = None, None
        if k_actual is None:
            status = actual_status
        elif not outcome.ok:
            status = outcome.status
        else:
            try:
                estimate, total = _paths(mechanism, k_actual, inputs)
                status = STATUS_OK
            except PathPredictionError as e:
                logger.warning("Caminho %s indisponível: %s", mechanism.value, e)
                status = e.code
        paths[mechanism] = estimate
        path_status[mechanism] = status
        totals[TOTAL_NAMES[mechanism]] = total

    trace = build_path(f_series, config.k0)

    return PredictionResult(
        droops=DroopSet(
            k_actual=k_actual,
            actual_status=actual_status,
            expected=expected,
            actual_detail=actual_detail,
        ),
        paths=paths,
        path_status=path_status,
        totals=TotalPathReport(**totals),
        path_trace=[float(x) for x in trace.x],
        config_echo=config.to_dict(),
        actual=actual,
    )


def _load_optional(reader: Callable):
    """Lê um arquivo de entrada; falhas de leitura viram status no mecanismo."""
    try:
        return reader(FileHandler())
    except PathPredictionError as e:
        logger.warning("Entrada ignorada: %s", e)
        return None


def reconstruct_report(config: ScenarioConfig, f_series: DeviationSeries,
                       P_series: DeviationSeries) -> Dict[str, Any]:
    """
    Espectros reconstruídos, droop real e caminho x(t) para o subcomando reconstruct.

    Args:
        config: Cenário
        f_series: Desvios de frequência
        P_series: Desvios de potência

    Returns:
        Dict serializável
    """
    if f_series.T != P_series.T:
        raise InvalidInputError(f"Séries com comprimentos diferentes: {f_series.T} != {P_series.T}")

    f_star, p_star = reconstruct_spectra(f_series, P_series, config.grid, config.lam)
    report: Dict[str, Any] = {
        "nodes": f_star.nodes.tolist(),
        "f_spectrum": f_star.phi.tolist(),
        "p_spectrum": p_star.phi.tolist(),
        "residuals": {"f": f_star.residual, "p": p_star.residual},
        "path_trace": build_path(f_series, config.k0).x.tolist(),
        "config_echo": config.to_dict(),
        "version": __version__,
    }

    try:
        droop = ActualDroop.from_endpoints(f_star.endpoint, p_star.endpoint)
        report["actual_droop"] = {"k": droop.k, "delta_f": droop.delta_f,
                                  "delta_p": droop.delta_P, "status": STATUS_OK}
    except PathPredictionError as e:
        report["actual_droop"] = {"k": None, "status": e.code, "detail": str(e)}
    return report


def generate_synthetic(
    seed: int,
    true_droop: float,
    T: Optional[int] = None,
    noise: Optional[float] = None,
) -> Tuple[DeviationSeries, DeviationSeries]:
    """
    Gera séries sintéticas cujo droop reconstruído é true_droop.

    Os espectros são f*(x) = 1 + a·x e P*(x) = 1 + c·a·x, com c = true_droop;
    as séries são os dados exatos g(s) = s/2 + a·s²/6 da equação integral em
    s = (t-1)/(T-1), mais ruído gaussiano semeado.

    Args:
        seed: Semente do gerador
        true_droop: Droop imposto c
        T: Número de passos (>= 8)
        noise: Desvio padrão do ruído (0 desliga)

    Returns:
        Tupla (f_series, P_series)
    """
    T = SYNTHETIC_CONFIG["T"] if T is None else T
    noise = SYNTHETIC_CONFIG["noise"] if noise is None else noise
    if T < 8:
        raise InvalidInputError(f"T deve ser >= 8: {T}")
    if not true_droop > 0:
        raise InvalidInputError(f"true_droop deve ser positivo: {true_droop}")

    ramp = SYNTHETIC_CONFIG["ramp"]
    s = np.linspace(0.0, 1.0, T)

    def data(slope: float) -> np.ndarray:
        return s / 2.0 + slope * s ** 2 / 6.0

    rng = np.random.default_rng(seed)
    f_noise = noise * rng.standard_normal(T)
    p_noise = noise * rng.standard_normal(T)

    f_series = DeviationSeries(values=data(ramp) + f_noise, label="delta_f")
    P_series = DeviationSeries(values=data(true_droop * ramp) + p_noise, label="delta_p")
    return f_series, P_series


def generate_history(
    seed: int,
    n: Optional[int] = None,
    beta: Sequence[float] = (1.0, 2.0, 0.0, 0.0, 0.0),
    link: Union[str, Link] = Link.IDENTITY,
) -> np.ndarray:
    """
    Gera um histórico (c₁..c₄, count) com contagens de Poisson.

    Args:
        seed: Semente do gerador
        n: Número de linhas
        beta: Coeficientes verdadeiros
        link: Ligação usada para a média

    Returns:
        Array (n, 5)
    """
    n = SYNTHETIC_CONFIG["history_rows"] if n is None else n
    if n < 1:
        raise InvalidInputError(f"n deve ser positivo: {n}")

    rng = np.random.default_rng(seed)
    colors = rng.uniform(0.0, 1.0, size=(n, 4))
    mean = PoissonModel(beta=np.asarray(beta, dtype=np.float64), link=link).predict(colors)
    counts = rng.poisson(mean)
    return np.column_stack([colors, counts]).astype(np.float64)
