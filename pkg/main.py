#!/usr/bin/env python3
"""
Sistema de Predição do Caminho de um Sistema Aberto
Ponto de entrada principal com todas as funcionalidades.
"""
import argparse
import sys
import traceback
from pathlib import Path
from typing import List, Optional

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

# Adicionar o diretório src ao path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from src import __version__
from src.core.balance import fit_poisson
from src.core.config import SYNTHETIC_CONFIG, get_mechanism_info
from src.core.exceptions import ConfigError, PathPredictionError
from src.core.pipeline import (
    PredictionResult,
    generate_history,
    generate_synthetic,
    reconstruct_report,
    run_pipeline,
)
from src.core.scenario import load_scenario
from src.utils.file_handler import FileHandler
from src.utils.validators import SystemValidator

console = Console()


def print_banner():
    """Exibe o banner do sistema."""
    banner = f"""
    ╔═══════════════════════════════════════════════════════════════╗
    ║        📈  PREDIÇÃO DO CAMINHO DE UM SISTEMA ABERTO  📈        ║
    ║          droop real -> ressonância, correlação, balanço        ║
    ║                          Versão {__version__}                         ║
    ╚═══════════════════════════════════════════════════════════════╝
    """
    console.print(Panel(banner, style="bold cyan"))


def _fmt(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.6f}"


def display_prediction(result: PredictionResult):
    """Exibe droops e caminhos em tabelas."""
    droops = result.droops
    status = "[green]ok[/green]" if droops.k_actual is not None else f"[red]{droops.actual_status}[/red]"
    console.print(f"\n📉 [bold]Droop real k_(t-1):[/bold] {_fmt(droops.k_actual)} ({status})")

    table = Table(title="Droops esperados e caminhos", show_lines=True)
    table.add_column("Mecanismo", style="cyan")
    table.add_column("k^f", style="white")
    table.add_column("k^p", style="white")
    table.add_column("L_f", style="green")
    table.add_column("L_p", style="green")
    table.add_column("Total", style="yellow")
    table.add_column("Status", style="white")

    totals = {"L_m": result.totals.L_m, "L_d": result.totals.L_d, "L_b": result.totals.L_b}
    for mechanism, outcome in droops.expected.items():
        info = get_mechanism_info(mechanism.value)
        estimate = result.paths[mechanism]
        path_status = result.path_status[mechanism]
        table.add_row(
            f"{mechanism.value} ({info['juxtaposition']})",
            _fmt(outcome.k_f),
            _fmt(outcome.k_p),
            _fmt(estimate.L_f if estimate else None),
            _fmt(estimate.L_p if estimate else None),
            f"{info['total']} = {_fmt(totals[info['total']])}",
            "[green]ok[/green]" if path_status == "ok" else f"[red]{path_status}[/red]",
        )

    console.print(table)


def cmd_reconstruct(args, handler: FileHandler) -> int:
    """Reconstrói os espectros e o droop real."""
    config = load_scenario(args.config, _overrides(args))
    f_series = handler.read_series(args.delta_f, "delta_f")
    P_series = handler.read_series(args.delta_p, "delta_p")

    report = reconstruct_report(config, f_series, P_series)
    actual = report["actual_droop"]
    console.print(f"\n📉 [bold]Droop real:[/bold] {_fmt(actual['k'])} ({actual['status']})")
    console.print(f"   Resíduos: f={report['residuals']['f']:.3e}  P={report['residuals']['p']:.3e}")

    output_path = handler.save_json(report, args.out)
    console.print(f"📄 Espectros salvos em: [bold]{output_path}[/bold]")
    return 0


def cmd_predict(args, handler: FileHandler) -> int:
    """Executa a predição completa."""
    config = load_scenario(args.config, _overrides(args))
    f_series = handler.read_series(args.delta_f, "delta_f")
    P_series = handler.read_series(args.delta_p, "delta_p")

    result = run_pipeline(config, f_series, P_series)
    display_prediction(result)

    output_path = handler.save_json(result.to_dict(), args.out)
    console.print(f"\n📄 Relatório salvo em: [bold]{output_path}[/bold]")
    return 0


def cmd_simulate(args, handler: FileHandler) -> int:
    """Gera séries sintéticas (e, opcionalmente, um histórico de regressão)."""
    config = load_scenario(args.config, _overrides(args))
    out_dir = Path(args.out) if args.out else Path.cwd()

    f_series, P_series = generate_synthetic(config.seed, args.true_droop, args.steps, args.noise)
    f_path = handler.write_series(out_dir / "delta_f.csv", f_series)
    p_path = handler.write_series(out_dir / "delta_p.csv", P_series)
    console.print(f"✅ Séries com droop {args.true_droop} salvas em: [bold]{f_path}[/bold], [bold]{p_path}[/bold]")

    if args.history_rows:
        rows = generate_history(config.seed, args.history_rows, link=config.link)
        history_path = handler.write_history(out_dir / "history.csv", rows)
        console.print(f"✅ Histórico com {args.history_rows} linhas salvo em: [bold]{history_path}[/bold]")
    return 0


def cmd_fit_poisson(args, handler: FileHandler) -> int:
    """Ajusta o modelo de Poisson e salva os coeficientes."""
    config = load_scenario(args.config, _overrides(args))
    rows = handler.read_history(args.history)
    model = fit_poisson(rows, config.link, args.intercept_only or config.intercept_only)

    table = Table(title=f"Regressão de Poisson (link {model.link.value})", show_lines=True)
    table.add_column("Coeficiente", style="cyan")
    table.add_column("Valor", style="green")
    for name, value in zip(["intercepto", "c1", "c2", "c3", "c4"], model.beta):
        table.add_row(name, f"{value:.8f}")
    console.print(table)
    console.print(f"   Iterações: {model.iterations}  log-verossimilhança: {model.loglik_history[-1]:.6f}")

    data = model.to_dict()
    data["rows"] = int(rows.shape[0])
    data["source_sha256"] = handler.get_file_hash(args.history)
    output_path = handler.save_json(data, args.out)
    console.print(f"📄 Modelo salvo em: [bold]{output_path}[/bold]")
    return 0


def cmd_check(args, handler: FileHandler) -> int:
    """Verifica o ambiente."""
    return 0 if SystemValidator.display_system_check() else 1


def _overrides(args) -> dict:
    return {
        "k0": args.k0,
        "grid": args.grid,
        "lambda": args.lam,
        "link": args.link,
        "seed": args.seed,
    }


def build_parser() -> argparse.ArgumentParser:
    """Monta o parser com os subcomandos."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="Arquivo de cenário (key = value)")
    common.add_argument("--k0", type=float, default=None, help="Constante do caminho x(t)")
    common.add_argument("--grid", type=int, default=None, help="Número de intervalos N da grade")
    common.add_argument("--lambda", dest="lam", type=float, default=None, help="Peso de Tikhonov")
    common.add_argument("--link", choices=["identity", "log"], default=None, help="Link da regressão de Poisson")
    common.add_argument("--seed", type=int, default=None, help="Semente do gerador")
    common.add_argument("--out", default=None, help="Arquivo (ou diretório, para simulate) de saída")
    common.add_argument("--debug", action="store_true", help="Mostrar traceback completo")

    parser = argparse.ArgumentParser(
        description="Sistema de Predição do Caminho de um Sistema Aberto",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    reconstruct = subparsers.add_parser("reconstruct", parents=[common], help="Espectros e droop real")
    reconstruct.add_argument("delta_f", help="CSV t,delta_f")
    reconstruct.add_argument("delta_p", help="CSV t,delta_p")
    reconstruct.set_defaults(handler=cmd_reconstruct)

    predict = subparsers.add_parser("predict", parents=[common], help="Predição completa")
    predict.add_argument("delta_f", help="CSV t,delta_f")
    predict.add_argument("delta_p", help="CSV t,delta_p")
    predict.set_defaults(handler=cmd_predict)

    simulate = subparsers.add_parser("simulate", parents=[common], help="Gerador sintético")
    simulate.add_argument("--true-droop", type=float, default=2.0, help="Droop imposto")
    simulate.add_argument("--steps", type=int, default=SYNTHETIC_CONFIG["T"], help="Número de passos T")
    simulate.add_argument("--noise", type=float, default=SYNTHETIC_CONFIG["noise"], help="Desvio padrão do ruído")
    simulate.add_argument("--history-rows", type=int, default=0, help="Também gera history.csv com n linhas")
    simulate.set_defaults(handler=cmd_simulate)

    fit = subparsers.add_parser("fit-poisson", parents=[common], help="Ajuste da regressão de Poisson")
    fit.add_argument("history", help="CSV c1,c2,c3,c4,count")
    fit.add_argument("--intercept-only", action="store_true", help="Ajustar apenas o intercepto")
    fit.set_defaults(handler=cmd_fit_poisson)

    check = subparsers.add_parser("check", parents=[common], help="Verificar sistema")
    check.set_defaults(handler=cmd_check)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Função principal."""
    parser = build_parser()
    args = parser.parse_args(argv)

    print_banner()

    try:
        return args.handler(args, FileHandler())
    except ConfigError as e:
        console.print(f"\n[bold red]❌ Configuração inválida: {e}[/bold red]")
        return 2
    except PathPredictionError as e:
        console.print(f"\n[bold red]❌ {e.code}: {e}[/bold red]")
        if args.debug:
            console.print("\n[dim]Traceback completo:[/dim]")
            traceback.print_exc()
        return 1
    except KeyboardInterrupt:
        console.print("\n\n[yellow]⚠️  Processo interrompido pelo usuário[/yellow]")
        return 1


if __name__ == "__main__":
    sys.exit(main())
