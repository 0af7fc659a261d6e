"""
Validadores e verificações para o sistema de predição de caminhos.
"""
import importlib
import math
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from rich.console import Console
from rich.table import Table

from ..core.config import (
    BALANCE_CONFIG,
    LOGGING_CONFIG,
    PERFORMANCE_CONFIG,
    SPECTRA_CONFIG,
)

console = Console()

# Cabeçalhos CSV aceitos
SERIES_HEADERS = {
    "delta_f": ["t", "delta_f"],
    "delta_p": ["t", "delta_p"],
}
WING_HEADER = ["t", "u", "v"]
HISTORY_HEADER = ["c1", "c2", "c3", "c4", "count"]

VALID_LINKS = ["identity", "log"]


class SeriesValidator:
    """Validador de arquivos CSV de entrada."""

    def validate_file(
        self, file_path: Union[str, Path], header: Sequence[str]
    ) -> Tuple[bool, Optional[str]]:
        """
        Valida existência, tamanho e cabeçalho de um CSV.

        Args:
            file_path: Caminho do arquivo
            header: Colunas esperadas, na ordem

        Returns:
            Tupla (é_válido, mensagem_erro)
        """
        file_path = Path(file_path)

        if not file_path.exists():
            return False, f"Arquivo não encontrado: {file_path}"

        if not file_path.is_file():
            return False, f"Caminho não é um arquivo: {file_path}"

        if file_path.stat().st_size == 0:
            return False, f"Arquivo vazio: {file_path}"

        with open(file_path, "r", encoding="utf-8") as f:
            first_line = f.readline().strip()

        columns = [c.strip().lower() for c in first_line.split(",")]
        if columns != list(header):
            return False, f"Cabeçalho inválido em {file_path.name}: esperado {','.join(header)}"

        return True, None

    def series_header_for(self, label: str) -> List[str]:
        """Cabeçalho esperado para uma série (delta_f ou delta_p)."""
        try:
            return SERIES_HEADERS[label]
        except KeyError:
            raise ValueError(f"Série desconhecida: {label}")


class SystemValidator:
    """Validador do ambiente."""

    @staticmethod
    def check_dependencies() -> Dict[str, Dict]:
        """
        Verifica os pacotes de que o sistema depende.

        Returns:
            Dict com status de cada dependência
        """
        dependencies = {}

        packages = {
            "numpy": "numpy",
            "scipy": "scipy",
            "pandas": "pandas",
            "rich": "rich",
            "python-dotenv": "dotenv",
        }

        for name, module in packages.items():
            try:
                imported = importlib.import_module(module)
                version = getattr(imported, "__version__", "")
                dependencies[name] = {
                    "installed": True,
                    "status": "OK",
                    "message": f"Instalado {version}".strip(),
                }
            except ImportError:
                dependencies[name] = {
                    "installed": False,
                    "status": "Erro",
                    "message": "Não instalado",
                }

        try:
            importlib.import_module("hypothesis")
            dependencies["hypothesis"] = {
                "installed": True,
                "status": "OK",
                "message": "Testes de propriedade disponíveis",
            }
        except ImportError:
            dependencies["hypothesis"] = {
                "installed": False,
                "status": "Info",
                "message": "Opcional - necessário apenas para os testes",
            }

        return dependencies

    @staticmethod
    def display_system_check() -> bool:
        """
        Exibe verificação completa do sistema.

        Returns:
            True se todas as dependências obrigatórias estão instaladas
        """
        console.print("\n🔍 [bold]Verificação do Sistema[/bold]\n")

        deps = SystemValidator.check_dependencies()

        deps_table = Table(title="Dependências", show_lines=True)
        deps_table.add_column("Componente", style="cyan")
        deps_table.add_column("Status", style="white")
        deps_table.add_column("Mensagem", style="white")

        for name, info in deps.items():
            status_style = {
                "OK": "[green]✅ OK[/green]",
                "Erro": "[red]❌ Erro[/red]",
                "Info": "[blue]ℹ️  Info[/blue]",
            }.get(info["status"], info["status"])
            deps_table.add_row(name, status_style, info["message"])

        console.print(deps_table)

        console.print("\n⚙️  [bold]Configurações Atuais:[/bold]")
        console.print(f"   k0: {SPECTRA_CONFIG['k0']}")
        console.print(f"   Grade N: {SPECTRA_CONFIG['grid_size']}")
        console.print(f"   Lambda: {SPECTRA_CONFIG['lambda']:.1e}")
        console.print(f"   Link da regressão: {BALANCE_CONFIG['link']}")
        console.print(f"   Workers: {PERFORMANCE_CONFIG['num_workers']}")
        console.print(f"   Nível de log: {LOGGING_CONFIG['level']}")

        all_ok = all(d["status"] in ["OK", "Info"] for d in deps.values())

        if all_ok:
            console.print("\n[green]✅ Sistema pronto para uso![/green]")
        else:
            console.print("\n[yellow]⚠️  Alguns componentes precisam de atenção[/yellow]")

        return all_ok


def validate_scenario_params(params: Dict) -> Tuple[bool, List[str]]:
    """
    Valida parâmetros de um cenário já convertidos para seus tipos.

    Args:
        params: Parâmetros para validar

    Returns:
        Tupla (é_válido, lista_de_erros)
    """
    errors = []

    if "k0" in params and not params["k0"] > 0:
        errors.append(f"k0 deve ser positivo: {params['k0']}")

    if "grid" in params and params["grid"] < SPECTRA_CONFIG["min_grid"]:
        errors.append(f"Grade deve ter N >= {SPECTRA_CONFIG['min_grid']}: {params['grid']}")

    if "lambda" in params:
        lam = params["lambda"]
        if not math.isfinite(lam) or lam < 0:
            errors.append(f"lambda deve ser não negativo: {lam}")

    if "bound" in params and params["bound"] < 1:
        errors.append(f"Limite da busca deve ser >= 1: {params['bound']}")

    if "link" in params and params["link"] not in VALID_LINKS:
        errors.append(f"Link inválido: {params['link']}")

    if "quad" in params and params["quad"] is not None:
        quad = params["quad"]
        if len(quad) != 4 or any(w <= 0 for w in quad):
            errors.append(f"quad deve ter 4 frequências positivas: {quad}")

    if "colours" in params and params["colours"] is not None:
        colours = params["colours"]
        if len(colours) != 5:
            errors.append(f"São necessárias 5 cores: {colours}")
        elif any(not (0 <= c < 1) for c in colours):
            errors.append(f"Cores devem estar em [0, 1): {colours}")

    if params.get("potentials") is not None:
        v_in, v_out = params["potentials"]
        if v_in <= 0 or v_out <= 0:
            errors.append(f"Potenciais devem ser positivos: {params['potentials']}")

    if "v0" in params and not math.isfinite(params["v0"]):
        errors.append(f"v0 deve ser finito: {params['v0']}")

    for key in ("omega1", "omega2"):
        if key in params and params[key] == 0:
            errors.append(f"{key} não pode ser nulo")

    for key in ("wing", "history"):
        path = params.get(key)
        if path is not None and not Path(path).exists():
            errors.append(f"Arquivo de {key} não encontrado: {path}")

    return len(errors) == 0, errors
