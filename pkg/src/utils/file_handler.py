"""
Utilitários para leitura das séries CSV e escrita dos relatórios JSON.
"""
import hashlib
import json
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd

from ..core.config import OUTPUT_CONFIG, REPORT_DIR
from ..core.exceptions import InvalidInputError, MissingInputError
from ..core.resonance import WingTrace
from ..core.spectra import DeviationSeries
from .validators import HISTORY_HEADER, WING_HEADER, SeriesValidator


def dump_json(data: Dict[str, Any]) -> str:
    """Serialização única dos relatórios; NaN e infinito são recusados."""
    return json.dumps(data, ensure_ascii=False, indent=OUTPUT_CONFIG["indent"], allow_nan=False)


class FileHandler:
    """Gerenciador de arquivos do sistema."""

    def __init__(self, report_dir: Optional[Union[str, Path]] = None):
        """
        Inicializa o gerenciador de arquivos.

        Args:
            report_dir: Diretório dos relatórios (padrão data/reports)
        """
        self.report_dir = Path(report_dir) if report_dir else REPORT_DIR
        self.validator = SeriesValidator()

    def _read_csv(self, file_path: Union[str, Path], header: List[str]) -> pd.DataFrame:
        """Valida o arquivo e lê o CSV com as colunas esperadas."""
        is_valid, error = self.validator.validate_file(file_path, header)
        if not is_valid:
            if not Path(file_path).exists():
                raise MissingInputError(error, path=str(file_path))
            raise InvalidInputError(error, path=str(file_path))

        # round_trip: valores escritos com %.17g voltam idênticos
        df = pd.read_csv(file_path, skipinitialspace=True, float_precision="round_trip")
        df.columns = [c.strip().lower() for c in df.columns]

        if df.empty:
            raise InvalidInputError(f"Arquivo sem linhas de dados: {file_path}")
        if df.isna().any().any():
            raise InvalidInputError(f"Valores ausentes em {Path(file_path).name}")

        numeric = df[header].apply(pd.to_numeric, errors="coerce")
        for column in header:
            bad = numeric[column].isna().to_numpy()
            if bad.any():
                row = int(np.argmax(bad))
                raise InvalidInputError(
                    f"Valor não numérico em {Path(file_path).name}, coluna {column}: "
                    f"{df[column].iloc[row]!r}",
                    path=str(file_path), column=column, line=row + 2,
                )
        return numeric.astype(np.float64)

    def _check_steps(self, df: pd.DataFrame, file_path: Union[str, Path]):
        """A coluna t deve ser 1, 2, ..., T."""
        expected = np.arange(1, len(df) + 1)
        if not np.array_equal(df["t"].to_numpy(), expected):
            raise InvalidInputError(
                f"Coluna t de {Path(file_path).name} deve ser 1..{len(df)} em ordem"
            )

    def read_series(self, file_path: Union[str, Path], label: str = "delta_f") -> DeviationSeries:
        """
        Lê uma série de desvios (cabeçalho t,delta_f ou t,delta_p).

        Args:
            file_path: Caminho do CSV
            label: delta_f ou delta_p

        Returns:
            DeviationSeries
        """
        header = self.validator.series_header_for(label)
        df = self._read_csv(file_path, header)
        self._check_steps(df, file_path)
        return DeviationSeries(values=df[label].to_numpy(dtype=np.float64), label=label)

    def read_wing(self, file_path: Union[str, Path]) -> WingTrace:
        """Lê as velocidades da asa (cabeçalho t,u,v)."""
        df = self._read_csv(file_path, WING_HEADER)
        self._check_steps(df, file_path)
        return WingTrace(u=df["u"].to_numpy(dtype=np.float64), v=df["v"].to_numpy(dtype=np.float64))

    def read_history(self, file_path: Union[str, Path]) -> np.ndarray:
        """
        Lê o histórico de regressão (cabeçalho c1,c2,c3,c4,count).

        Returns:
            Array (n, 5) com as cores e a contagem
        """
        df = self._read_csv(file_path, HISTORY_HEADER)
        return df[HISTORY_HEADER].to_numpy(dtype=np.float64)

    def write_series(self, file_path: Union[str, Path], series: DeviationSeries) -> Path:
        """Escreve uma série no formato t,<label>."""
        file_path = Path(file_path)
        file_path.parent.mkdir(parents=True, exist_ok=True)
        df = pd.DataFrame({"t": np.arange(1, series.T + 1), series.label: series.values})
        df.to_csv(file_path, index=False, float_format="%.17g")
        return file_path

    def write_history(self, file_path: Union[str, Path], rows: np.ndarray) -> Path:
        """Escreve um histórico de regressão."""
        file_path = Path(file_path)
        file_path.parent.mkdir(parents=True, exist_ok=True)
        df = pd.DataFrame(np.asarray(rows), columns=HISTORY_HEADER)
        df["count"] = df["count"].astype(np.int64)
        df.to_csv(file_path, index=False, float_format="%.17g")
        return file_path

    def get_file_hash(self, file_path: Union[str, Path]) -> str:
        """
        Calcula o hash SHA256 de um arquivo.

        Args:
            file_path: Caminho do arquivo

        Returns:
            Hash hexadecimal do arquivo
        """
        sha256_hash = hashlib.sha256()

        with open(file_path, "rb") as f:
            for byte_block in iter(lambda: f.read(4096), b""):
                sha256_hash.update(byte_block)

        return sha256_hash.hexdigest()

    def save_json(self, data: Dict[str, Any], output_path: Optional[Union[str, Path]] = None) -> Path:
        """
        Salva um relatório JSON; sem caminho, gera um nome com timestamp.

        Args:
            data: Conteúdo serializável
            output_path: Caminho de saída (opcional)

        Returns:
            Path do arquivo salvo
        """
        if output_path is None:
            self.report_dir.mkdir(parents=True, exist_ok=True)
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            output_path = self.report_dir / f"{OUTPUT_CONFIG['report_prefix']}_{timestamp}.json"

        output_path = Path(output_path)
        output_path.parent.mkdir(parents=True, exist_ok=True)

        with open(output_path, "w", encoding="utf-8") as f:
            f.write(dump_json(data))

        return output_path

    def load_json(self, file_path: Union[str, Path]) -> Dict[str, Any]:
        """Carrega um relatório JSON salvo."""
        with open(file_path, "r", encoding="utf-8") as f:
            return json.load(f)

