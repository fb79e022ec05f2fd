import argparse
from pathlib import Path
import sys
from typing import Any, Callable, Collection, Dict, List, Optional, Sequence

from dotenv import load_dotenv

from binary_slab.config.loader import AppConfig, load_config_file, merge_settings
from binary_slab.ensemble.coordinator import EnsembleCoordinator
from binary_slab.ensemble.worker import EnsembleWorker
from binary_slab.models import ModelFactory
from binary_slab.report.problems import (
    DIFFUSIVE_SETS,
    NON_DIFFUSIVE_SETS,
    Numerics,
    ProblemConfig,
    custom_problem,
    resolve_problem,
)
from binary_slab.report.runner import (
    DIFFUSION_MODELS,
    TRANSPORT_MODELS,
    convergence_study,
    run_models,
    table2,
    table4,
    write_figure_data,
)
from binary_slab.report.writers import write_summary
from binary_slab.utils.exceptions import BinarySlabError, ConfigurationError
from binary_slab.utils.logger import Logger, logger


def comma_list(
    item_type: Callable[[str], Any], name: str
) -> Callable[[str], List[Any]]:
    """
    argparse type for a comma-separated list such as `A,B,C` or `20,40,60`.

    Each item is converted by item_type; a ValueError from it rejects the
    whole argument.
    """

    def parse(text: str) -> List[Any]:
        items = [part.strip() for part in text.split(",") if part.strip()]
        if not items:
            raise argparse.ArgumentTypeError(f"empty {name} list")
        try:
            return [item_type(part) for part in items]
        except ValueError as e:
            raise argparse.ArgumentTypeError(f"invalid {name} list {text!r}: {e}")

    return parse


def set_id_in(allowed: Collection[str]) -> Callable[[str], str]:
    """Item converter accepting only the given problem sets, in any case."""

    def convert(text: str) -> str:
        normalized = text.upper()
        if normalized not in allowed:
            raise ValueError(f"{text} is not one of {', '.join(allowed)}")
        return normalized

    return convert


class ExtendItems(argparse.Action):
    """Flattens `--sets A,B C` into ['A', 'B', 'C']."""

    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, [item for chunk in values for item in chunk])


def _add_list(
    parser: argparse.ArgumentParser,
    flag: str,
    item_type: Callable[[str], Any],
    example: str,
) -> None:
    parser.add_argument(
        flag,
        nargs="+",
        type=comma_list(item_type, flag.lstrip("-")),
        action=ExtendItems,
        help=f"Comma- or space-separated, {example}",
    )


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON file with settings (keys = flag names)")
    parser.add_argument("--log-level", dest="log_level")
    parser.add_argument("--out", help="Output directory")
    parser.add_argument("--workers", type=int)
    parser.add_argument("--seed", type=int, help="Base seed of the ensemble")
    parser.add_argument("--quad", type=int, help="Gauss-Legendre order")
    parser.add_argument("--dx-max", dest="dx_max", type=float)
    parser.add_argument("--tol", type=float)
    parser.add_argument("--max-iters", dest="max_iters", type=int)
    parser.add_argument("--grid-cells", dest="grid_cells", type=int)
    parser.add_argument("--ci", type=float, help="Target relative CI half-width")
    parser.add_argument("--confidence", type=float)
    parser.add_argument("--min-n", dest="min_n", type=int)
    parser.add_argument("--max-n", dest="max_n", type=int)
    parser.add_argument(
        "--ci-everywhere",
        dest="ci_everywhere",
        action="store_const",
        const=True,
        help="Require the CI target at every grid point, not just x = 0",
    )


def _add_problem(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--set", help="Problem set A-F or custom")
    parser.add_argument("--M", type=int, help="Layers per lambda pair (sets A-C)")
    parser.add_argument("--choice", type=int, help="sigma_s1 choice 1-3 (sets D-F)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="binary-slab",
        description="Transport in binary Markovian slabs: benchmark, LP, ALP, "
        "atomic mix and diffusion limits.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="Run models on one problem")
    _add_problem(solve)
    solve.add_argument(
        "--model",
        help=f"One of {', '.join(TRANSPORT_MODELS + DIFFUSION_MODELS)} or all",
    )
    solve.add_argument("--eta", type=float, help="Override eta for the alp model")
    _add_common(solve)

    tab2 = commands.add_parser("table2", help="Diffusive problems (sets A-C)")
    _add_list(tab2, "--sets", set_id_in(DIFFUSIVE_SETS), "e.g. A,B,C")
    _add_list(tab2, "--M", int, "e.g. 20,40,60")
    _add_common(tab2)

    tab4 = commands.add_parser("table4", help="Non-diffusive problems (sets D-F)")
    _add_list(tab4, "--sets", set_id_in(NON_DIFFUSIVE_SETS), "e.g. D,E,F")
    _add_list(tab4, "--choice", int, "e.g. 1,2,3")
    _add_common(tab4)

    converge = commands.add_parser("converge", help="Transport vs diffusion in M")
    converge.add_argument("--set", type=set_id_in(DIFFUSIVE_SETS))
    _add_list(converge, "--M", int, "e.g. 20,40,60")
    _add_common(converge)

    ensemble = commands.add_parser("ensemble", help="Benchmark ensemble only")
    _add_problem(ensemble)
    _add_common(ensemble)
    return parser


def _as_list(
    value: Any, item_type: Optional[Callable[[Any], Any]] = None
) -> Optional[List[Any]]:
    """
    Normalize a list setting. Config files may give a list, a single value
    or a comma-separated string.
    """
    if value is None:
        return None
    if isinstance(value, str):
        value = [part.strip() for part in value.split(",") if part.strip()]
    values = list(value) if isinstance(value, (list, tuple)) else [value]
    if item_type is None:
        return values
    try:
        return [item_type(item) for item in values]
    except (TypeError, ValueError):
        raise ConfigurationError(f"Invalid list setting: {value!r}") from None


def _single(value: Any, name: str) -> Any:
    values = _as_list(value, int)
    if values is None:
        return None
    if len(values) != 1:
        raise ConfigurationError(f"{name} must be a single value here, got {values}")
    return values[0]


def problem_from_settings(
    settings: Dict[str, Any], numerics: Numerics
) -> ProblemConfig:
    """
    Raises:
        ConfigurationError: If the set or its parameter is missing.
    """
    set_id = settings.get("set")
    if not set_id:
        raise ConfigurationError("A problem set is required (--set)")
    if str(set_id).lower() == "custom":
        missing = [k for k in ("materials", "lambdas", "X") if k not in settings]
        if missing:
            raise ConfigurationError(f"Custom problems need config keys {missing}")
        return custom_problem(
            settings["materials"], settings["lambdas"], settings["X"], numerics
        )
    parameter = _single(settings.get("M"), "M")
    if parameter is None:
        parameter = _single(settings.get("choice"), "choice")
    if parameter is None:
        raise ConfigurationError(f"Set {set_id} needs --M or --choice")
    return resolve_problem(str(set_id), parameter, numerics)


def _command_solve(settings: Dict[str, Any], numerics: Numerics, out: Path) -> None:
    problem = problem_from_settings(settings, numerics)
    model = settings.get("model", "all")
    if model == "all":
        models = None
    else:
        ModelFactory.create(model)
        models = [model]
    run = run_models(
        problem,
        workers=settings["workers"],
        out_dir=out,
        models=models,
        eta=settings.get("eta"),
    )
    if models is None:
        write_figure_data(run, out)
    for name, field in run.fields.items():
        print(f"{problem.label} {name}: phi(0) = {field.value_at_origin():.6g}")


def _command_ensemble(settings: Dict[str, Any], numerics: Numerics, out: Path) -> None:
    problem = problem_from_settings(settings, numerics)
    coordinator = EnsembleCoordinator(
        problem.ensemble_config(),
        numerics.stopping_rule(),
        workers=settings["workers"],
    )
    worker = EnsembleWorker(coordinator)
    worker.install_signal_handlers()
    stats = worker.run()
    stats.to_csv(out / f"{problem.label}_benchmark.csv")
    write_summary(
        out / f"{problem.label}_summary.txt",
        [f"{problem.label}: {stats.summary_line()}"],
    )
    print(stats.summary_line())


def run_command(settings: Dict[str, Any]) -> None:
    """Dispatch a merged settings dict to its subcommand."""
    numerics = Numerics.from_settings(settings)
    out = Path(settings["out"])
    command = settings["command"]
    workers = settings["workers"]

    if command == "solve":
        _command_solve(settings, numerics, out)
    elif command == "ensemble":
        _command_ensemble(settings, numerics, out)
    elif command == "table2":
        rows = table2(
            sets=_as_list(settings.get("sets"), str.upper) or ("A", "B", "C"),
            M_list=_as_list(settings.get("M"), int) or (20, 40, 60),
            numerics=numerics,
            workers=workers,
            out_dir=out,
        )
        for row in rows:
            print(row.rounded())
    elif command == "table4":
        rows = table4(
            sets=_as_list(settings.get("sets"), str.upper) or ("D", "E", "F"),
            choices=_as_list(settings.get("choice"), int) or (1, 2, 3),
            numerics=numerics,
            workers=workers,
            out_dir=out,
        )
        for row in rows:
            print(row.rounded())
    elif command == "converge":
        frame = convergence_study(
            settings.get("set") or "B",
            _as_list(settings.get("M"), int) or (20, 40, 60),
            numerics=numerics,
            out_dir=out,
        )
        print(frame.to_string(index=False))


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point of the binary-slab CLI.

    Settings are layered: environment defaults (AppConfig, after .env is
    loaded), then the JSON file given by --config, then command-line flags.
    """
    load_dotenv()
    args = build_parser().parse_args(argv)
    flags = {k: v for k, v in vars(args).items() if k != "config"}

    try:
        app_config = AppConfig.load()
        settings = merge_settings(
            app_config.as_settings(), load_config_file(args.config), flags
        )
        Logger.update_level(settings["log_level"])
        run_command(settings)
    except BinarySlabError as e:
        logger.error(f"{args.command} failed: {e}")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
