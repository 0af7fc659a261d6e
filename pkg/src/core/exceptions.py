"""
Erros do sistema de predição, cada um com um código estável para relatórios.
"""


class PathPredictionError(ValueError):
    """Erro base do domínio."""

    code = "PathPredictionError"

    def __init__(self, message: str, **context):
        super().__init__(message)
        self.context = context


class ZeroInputError(PathPredictionError):
    code = "ZeroInput"


class NonFiniteInputError(PathPredictionError):
    code = "NonFiniteInput"


class NonPositiveDroopError(PathPredictionError):
    code = "NonPositiveDroop"


class InvalidInputError(PathPredictionError):
    code = "InvalidInput"


class MissingInputError(PathPredictionError):
    code = "MissingInput"


class SingularSystemError(PathPredictionError):
    code = "SingularSystem"


class DegenerateFrequencyError(PathPredictionError):
    code = "DegenerateFrequency"


class DegenerateLatticeError(PathPredictionError):
    code = "DegenerateLattice"


class ZeroDiscriminantError(PathPredictionError):
    code = "ZeroDiscriminant"


class ZeroVerticalSpeedError(PathPredictionError):
    code = "ZeroVerticalSpeed"


class NoResonanceError(PathPredictionError):
    code = "NoResonance"


class EqualPotentialsError(PathPredictionError):
    code = "EqualPotentials"


class ChannelOrderError(PathPredictionError):
    code = "ChannelOrder"


class GrazingScanError(PathPredictionError):
    code = "GrazingScan"


class RankDeficientError(PathPredictionError):
    code = "RankDeficient"


class NonConvergentError(PathPredictionError):
    code = "NonConvergent"


class EmptyDataError(PathPredictionError):
    code = "EmptyData"


class ConfigError(PathPredictionError):
    code = "ConfigError"
