"""
CLI Command Handler
===================
Parses the command line and routes each subcommand to its command class.

Exit codes: 0 ok, 2 configuration or domain error found before solving,
3 solver failure (any failed channel, table row or scan).
"""

import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from functions.errors import ConfigError, DomainError, SpectraError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3

FORMATS = ("text", "csv", "json")
UNITS = ("natural", "MeV", "MHz", "meV")
ORACLES = ("schrodinger", "klein-gordon", "dirac", "free", "heun")

EPILOG = """
examples:
  twobody-spectra solve configs/positronium.json --format csv
  twobody-spectra table table4 --rows phi J/psi
  twobody-spectra scan configs/ss.json --channel 0 --grid -1.4e-5:-1.2e-5:81
  twobody-spectra oracle dirac --n 2 --j 0.5 --mass 1 --alpha 0.0072973525698
"""


def _progress(message: str) -> None:
    print(message, file=sys.stderr)


class CLIHandler:
    """Handles CLI commands and routes them to the solver front ends."""

    def execute(self, args: List[str]) -> int:
        parser = self._create_parser()
        try:
            parsed = parser.parse_args(args)
        except SystemExit as e:
            return EXIT_OK if e.code in (0, None) else EXIT_CONFIG
        try:
            return self._route_command(parsed)
        except Exception as e:
            print(f"❌ Error: {e}", file=sys.stderr)
            return EXIT_SOLVER

    def _create_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="twobody-spectra",
            description="Covariant two-body bound-state spectra",
            formatter_class=argparse.RawDescriptionHelpFormatter,
            epilog=EPILOG,
        )
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--format", choices=FORMATS, help="Output format (default: config or text)")
        common.add_argument("--out", metavar="PATH", help="Write the report to PATH")

        sub = parser.add_subparsers(dest="command", metavar="COMMAND")

        solve = sub.add_parser("solve", parents=[common], help="Solve every channel of a config")
        solve.add_argument("config", help="JSON run configuration")
        solve.add_argument("--units", choices=UNITS, help="Energy unit of the report")
        solve.add_argument("--threads", type=int, default=1, help="Channels solved concurrently")
        solve.add_argument("--strict", action="store_true", default=True,
                           help="Reject unknown config keys (default)")
        solve.add_argument("--lenient", dest="strict", action="store_false",
                           help="Ignore unknown config keys")

        table = sub.add_parser("table", parents=[common], help="Recompute a published table")
        table.add_argument("name", help="table1 ... table5")
        table.add_argument("--rows", nargs="+", metavar="KEY", help="Row keys or families to run")
        table.add_argument("--ratios", nargs="+", type=float, metavar="R",
                           help="table2 mass ratios m_S/m_F")
        table.add_argument("--shells", nargs="+", metavar="SHELL", help="table3 shells (1s 2s ...)")

        scan = sub.add_parser("scan", parents=[common], help="Tabulate the matching determinant")
        scan.add_argument("config", help="JSON run configuration")
        scan.add_argument("--channel", type=int, default=0, help="Channel index in the config")
        scan.add_argument("--grid", required=True, metavar="LO:HI:N",
                          help="Binding-energy grid in reference units")
        scan.add_argument("--units", choices=UNITS, help="Energy unit of the report")
        scan.add_argument("--strict", action="store_true", default=True)
        scan.add_argument("--lenient", dest="strict", action="store_false")

        orbit = sub.add_parser("orbit", parents=[common], help="Classical orbit of a config")
        orbit.add_argument("config", help="JSON run configuration with an 'orbit' section")
        orbit.add_argument("--strict", action="store_true", default=True)
        orbit.add_argument("--lenient", dest="strict", action="store_false")

        oracle = sub.add_parser("oracle", parents=[common], help="Evaluate a closed-form oracle")
        oracle.add_argument("kind", choices=ORACLES)
        oracle.add_argument("--n", type=int, default=1, help="Principal quantum number")
        oracle.add_argument("--l", type=int, default=0, help="Orbital quantum number")
        oracle.add_argument("--j", type=float, default=0.5, help="Total angular momentum")
        oracle.add_argument("--mass", type=float, default=1.0, help="Mass (reduced mass for schrodinger)")
        oracle.add_argument("--alpha", type=float, help="Coupling (default: fine-structure constant)")
        oracle.add_argument("--q", type=float, default=0.0, help="Relative momentum (free)")
        oracle.add_argument("--m1", type=float, default=1.0)
        oracle.add_argument("--m2", type=float, default=1.0)
        oracle.add_argument("--lambda", dest="lambda_", type=float, help="Invariant mass (heun)")
        return parser

    def _route_command(self, args) -> int:
        commands = {
            "solve": SolveCommand,
            "table": TableCommand,
            "scan": ScanCommand,
            "orbit": OrbitCommand,
            "oracle": OracleCommand,
        }
        command = commands.get(args.command)
        if command is None:
            print("❌ No command specified. Use --help for options.", file=sys.stderr)
            return EXIT_CONFIG
        return command().execute(args)


class BaseCommand:
    """Base class for all CLI commands."""

    def validate_path(self, path: str) -> Path:
        path_obj = Path(path)
        if not path_obj.is_file():
            raise ConfigError(f"Config file '{path}' does not exist")
        return path_obj

    def save_results(self, content: str, save_path: str) -> bool:
        try:
            Path(save_path).write_text(content, encoding="utf-8", newline="")
            _progress(f"💾 Report saved to: {save_path}")
            return True
        except OSError as e:
            _progress(f"❌ Save failed: {e}")
            return False

    def emit(self, content: str, save_path: Optional[str]) -> int:
        """Print the report or write it to ``save_path``."""
        if save_path:
            return EXIT_OK if self.save_results(content, save_path) else EXIT_SOLVER
        sys.stdout.write(content)
        return EXIT_OK

    def load(self, args):
        from functions.config_loader import load_config
        return load_config(self.validate_path(args.config), strict=args.strict)


class SolveCommand(BaseCommand):
    def execute(self, args) -> int:
        from functions.results_formatter import format_solve_report
        from functions.solve_controller import SolveController

        try:
            config = self.load(args)
            controller = SolveController(threads=args.threads)
            controller.validate(config)
            fmt = args.format or config.output.format
            units = args.units or config.output.units
            if units != "natural" and config.scale_mev is None:
                raise ConfigError(f"Units '{units}' need masses given in MeV or u")
        except (ConfigError, DomainError) as e:
            _progress(f"❌ Config error: {e}")
            return EXIT_CONFIG

        _progress(f"🔍 Solving: {config.source}")
        results = controller.run_solve_sync(config, progress_callback=_progress)
        code = self.emit(format_solve_report(results, fmt, units), args.out or config.output.path)
        if not results.success:
            _progress(f"❌ {len(results.failed_channels)} channel(s) failed")
            return EXIT_SOLVER
        return code


class TableCommand(BaseCommand):
    def execute(self, args) -> int:
        from functions.results_formatter import format_table
        from functions.table_runner import TABLES, run_table

        if args.name not in TABLES:
            _progress(f"❌ Unknown table '{args.name}'. Known: {', '.join(TABLES)}")
            return EXIT_CONFIG
        try:
            doc = run_table(args.name, rows=args.rows, ratios=args.ratios, shells=args.shells,
                            progress_callback=_progress)
        except ConfigError as e:
            _progress(f"❌ Config error: {e}")
            return EXIT_CONFIG
        code = self.emit(format_table(doc, args.format or "text"), args.out)
        return EXIT_SOLVER if doc.failed_rows else code


def parse_grid(text: str):
    """'lo:hi:n' into (lo, hi, n)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"Grid must read lo:hi:n, got '{text}'")
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as e:
        raise ConfigError(f"Bad grid '{text}': {e}") from e


class ScanCommand(BaseCommand):
    def execute(self, args) -> int:
        from functions.results_formatter import format_scan
        from functions.solve_controller import SolveController

        try:
            config = self.load(args)
            low, high, points = parse_grid(args.grid)
            units = args.units or config.output.units
            if units != "natural" and config.scale_mev is None:
                raise ConfigError(f"Units '{units}' need masses given in MeV or u")
            controller = SolveController()
            controller.validate(config)
        except (ConfigError, DomainError) as e:
            _progress(f"❌ Config error: {e}")
            return EXIT_CONFIG

        _progress(f"🔍 Scanning channel {args.channel} on {points} point(s)")
        try:
            doc = controller.run_scan(config, args.channel, low, high, points)
        except ConfigError as e:
            _progress(f"❌ Config error: {e}")
            return EXIT_CONFIG
        except SpectraError as e:
            _progress(f"❌ Scan failed: {e}")
            return EXIT_SOLVER
        text = format_scan(doc, args.format or config.output.format, units, config.scale_mev)
        code = self.emit(text, args.out)
        if not doc.free and all(v is None for v in doc.values):
            return EXIT_SOLVER
        return code


class OrbitCommand(BaseCommand):
    def execute(self, args) -> int:
        from functions.results_formatter import format_orbit
        from functions.solve_controller import SolveController

        try:
            config = self.load(args)
            report = SolveController().run_orbit(config)
        except (ConfigError, DomainError) as e:
            _progress(f"❌ Config error: {e}")
            return EXIT_CONFIG
        except SpectraError as e:
            _progress(f"❌ Orbit failed: {e}")
            return EXIT_SOLVER
        _progress(f"✅ Regime: {report.regime.value}")
        return self.emit(format_orbit(report, args.format or config.output.format), args.out)


def evaluate_oracle(args) -> Dict[str, Any]:
    """Closed-form values for the ``oracle`` subcommand."""
    from functions import analytic_oracles as oracles
    from functions.core_model import FINE_STRUCTURE

    alpha = FINE_STRUCTURE if args.alpha is None else args.alpha
    if args.kind == "schrodinger":
        return {"kind": args.kind, "unit": "mass units",
                "energy": oracles.schrodinger_level(args.n, args.mass, alpha)}
    if args.kind == "klein-gordon":
        return {"kind": args.kind, "unit": "mass units",
                "energy": oracles.klein_gordon_level(args.n, args.l, args.mass, alpha)}
    if args.kind == "dirac":
        return {"kind": args.kind, "unit": "mass units",
                "energy": oracles.dirac_level(args.n, args.j, args.mass, alpha)}
    if args.kind == "free":
        names = ("both_positive", "both_negative", "first_positive", "second_positive")
        return {"kind": args.kind, "unit": "mass units",
                **dict(zip(names, oracles.free_spectrum(args.q, args.m1, args.m2)))}
    if args.lambda_ is None:
        raise ConfigError("The heun oracle needs --lambda")
    names = ("eta", "beta", "gamma", "delta", "zeta")
    values = oracles.heun_parameters(args.lambda_, args.m1, args.m2, alpha, args.j)
    return {"kind": args.kind, "unit": "1", **dict(zip(names, values))}


class OracleCommand(BaseCommand):
    def execute(self, args) -> int:
        from functions.results_formatter import format_oracle

        try:
            data = evaluate_oracle(args)
        except (ConfigError, DomainError) as e:
            _progress(f"❌ Oracle error: {e}")
            return EXIT_CONFIG
        return self.emit(format_oracle(data, args.format or "text"), args.out)
