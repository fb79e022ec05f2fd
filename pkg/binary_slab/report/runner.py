from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from binary_slab.diffusion.solvers import write_coefficients
from binary_slab.ensemble.grid import (
    map_to_grid,
    relative_error,
    relative_error_at_origin,
)
from binary_slab.ensemble.statistics import EnsembleStats
from binary_slab.models import (
    BenchmarkModel,
    DiffusionAMModel,
    LPModel,
    ModelFactory,
)
from binary_slab.report.problems import Numerics, ProblemConfig, resolve_problem
from binary_slab.report.writers import (
    write_flux,
    write_frame,
    write_summary,
    write_table,
)
from binary_slab.transport.flux import FluxField
from binary_slab.utils.exceptions import BinarySlabError, SolverError
from binary_slab.utils.logger import logger

TRANSPORT_MODELS = ("benchmark", "lp", "alp", "am")
DIFFUSION_MODELS = ("diff-am", "diff-lp", "diff-alp")

# Figure numbers per set: transport vs diffusion, transport vs benchmark,
# and error profiles of the non-diffusive sets.
DIFFUSION_FIGURES = {"A": 2, "B": 3, "C": 4}
BENCHMARK_FIGURES = {"A": 5, "B": 6, "C": 7}
ERROR_FIGURES = {"D": 8, "E": 9, "F": 10}


def round_half_even(
    value: Optional[float], places: Optional[int] = None
) -> Optional[float]:
    """
    Round to the printed precision of the tables: 4 decimals, or 3 when the
    magnitude is at least 10. NaN and None pass through.
    """
    if value is None or not math.isfinite(value):
        return value
    if places is None:
        places = 3 if abs(value) >= 10 else 4
    quantum = Decimal(1).scaleb(-places)
    exact = Decimal(repr(float(value)))
    return float(exact.quantize(quantum, rounding=ROUND_HALF_EVEN))


def _percent(value: Optional[float]) -> Optional[float]:
    if value is None:
        return None
    return round_half_even(100.0 * value, 2)


@dataclass
class TableRow:
    """Fluxes at x = 0 and relative errors against the benchmark."""

    set_id: str
    parameter: str
    phi_b: float
    phi_lp: float
    phi_alp: float
    phi_am: Optional[float] = None
    err_lp: float = float("nan")
    err_alp: float = float("nan")
    err_am: Optional[float] = None
    n_realizations: int = 0
    ci_halfwidth: float = float("nan")
    phi_diff_lp: Optional[float] = None
    phi_diff_alp: Optional[float] = None

    def rounded(self) -> Dict[str, Any]:
        """Entries at printed precision; errors in percent to two decimals."""
        return {
            "set": self.set_id,
            "parameter": self.parameter,
            "phi_b": round_half_even(self.phi_b),
            "phi_lp": round_half_even(self.phi_lp),
            "phi_alp": round_half_even(self.phi_alp),
            "phi_am": round_half_even(self.phi_am),
            "err_lp_pct": _percent(self.err_lp),
            "err_alp_pct": _percent(self.err_alp),
            "err_am_pct": _percent(self.err_am),
            "n_realizations": self.n_realizations,
            "ci_halfwidth_pct": _percent(self.ci_halfwidth),
        }


@dataclass
class ModelRun:
    """Everything one `run_models` call produced."""

    problem: ProblemConfig
    row: TableRow
    fields: Dict[str, FluxField] = field(default_factory=dict)
    benchmark: Optional[EnsembleStats] = None
    files: List[Path] = field(default_factory=list)


def solve_model(name: str, problem: ProblemConfig, **kwargs) -> Tuple[Any, FluxField]:
    """
    Create and run one registered model.

    Raises:
        SolverError: Wrapping any domain failure, tagged with the model name.
    """
    model = ModelFactory.create(name, **kwargs)
    logger.info(f"Solving {problem.label} with model {name}")
    try:
        return model, model.solve(problem)
    except BinarySlabError as e:
        logger.error(f"Model {name} failed on {problem.label}: {e}")
        raise SolverError(str(e), model=name) from e


def run_models(
    problem: ProblemConfig,
    workers: int = 1,
    out_dir: Optional[Path] = None,
    models: Optional[Sequence[str]] = None,
    eta: Optional[float] = None,
) -> ModelRun:
    """
    Run the benchmark, LP, ALP and atomic-mix models (plus the diffusion
    limits for diffusive sets) and tabulate x = 0 values against the
    benchmark. Writes every flux with its sidecar when out_dir is given.
    """
    if models is None:
        models = TRANSPORT_MODELS + (DIFFUSION_MODELS if problem.diffusive else ())

    fields: Dict[str, FluxField] = {}
    benchmark: Optional[EnsembleStats] = None
    files: List[Path] = []
    knobs = problem.knobs()

    for name in models:
        kwargs: Dict[str, Any] = {}
        if name == "benchmark":
            kwargs["workers"] = workers
        elif name == "alp" and eta is not None:
            kwargs["eta"] = eta
        model, result = solve_model(name, problem, **kwargs)
        fields[name] = result

        if isinstance(model, BenchmarkModel):
            benchmark = model.last_stats
        if out_dir is None:
            continue
        target = Path(out_dir) / f"{problem.label}_{name}.csv"
        flux_target = Path(out_dir) / f"{problem.label}_{name}_flux.csv"
        metadata = {**knobs, "problem": problem.label, **result.metadata}
        if isinstance(model, BenchmarkModel):
            benchmark.to_csv(target)
            write_flux(flux_target, result, metadata)
            files.append(target)
        elif isinstance(model, LPModel):
            model.last_solution.to_csv(target)
            write_flux(flux_target, result, metadata)
            files.append(target)
        else:
            files.append(write_flux(target, result, metadata))
        if isinstance(model, DiffusionAMModel):
            report = Path(out_dir) / f"{problem.label}_{name}_coefficients.txt"
            write_coefficients(
                report, model.diffusion_problem(problem), model.mixture_values(problem)
            )
            files.append(report)

    row = _table_row(problem, fields, benchmark)
    if out_dir is not None and benchmark is not None:
        write_summary(
            Path(out_dir) / f"{problem.label}_summary.txt",
            [f"{problem.label}: {benchmark.summary_line()}"],
        )
    return ModelRun(
        problem=problem, row=row, fields=fields, benchmark=benchmark, files=files
    )


def _origin(fields: Dict[str, FluxField], name: str) -> Optional[float]:
    return fields[name].value_at_origin() if name in fields else None


def _error(fields: Dict[str, FluxField], name: str, benchmark) -> Optional[float]:
    if name not in fields or benchmark is None:
        return None
    return relative_error_at_origin(fields[name], benchmark)


def _table_row(
    problem: ProblemConfig,
    fields: Dict[str, FluxField],
    benchmark: Optional[EnsembleStats],
) -> TableRow:
    return TableRow(
        set_id=problem.set_id,
        parameter=problem.parameter,
        phi_b=benchmark.origin_mean if benchmark is not None else float("nan"),
        phi_lp=_origin(fields, "lp"),
        phi_alp=_origin(fields, "alp"),
        phi_am=_origin(fields, "am"),
        err_lp=_error(fields, "lp", benchmark),
        err_alp=_error(fields, "alp", benchmark),
        err_am=_error(fields, "am", benchmark),
        n_realizations=benchmark.n_realizations if benchmark is not None else 0,
        ci_halfwidth=(
            benchmark.ci_relative_halfwidth if benchmark is not None else float("nan")
        ),
        phi_diff_lp=_origin(fields, "diff-lp"),
        phi_diff_alp=_origin(fields, "diff-alp"),
    )


def two_column(field: FluxField) -> pd.DataFrame:
    return pd.DataFrame({"x": field.x, "scalar_flux": field.scalar_flux})


def error_profile(
    model: FluxField, benchmark: EnsembleStats
) -> pd.DataFrame:
    """
    |Err(x)| against distance from the origin, averaging the two symmetric
    halves of the reporting grid; a NaN half falls back to the other.
    """
    errors = np.abs(relative_error(map_to_grid(model, benchmark.edges), benchmark))
    half = errors.shape[0] // 2
    right = errors[half:]
    left = errors[:half][::-1]
    both = np.vstack((left, right))
    valid = ~np.isnan(both)
    counts = valid.sum(axis=0)
    totals = np.where(valid, both, 0.0).sum(axis=0)
    averaged = np.full(right.shape, np.nan)
    averaged[counts > 0] = totals[counts > 0] / counts[counts > 0]
    return pd.DataFrame({"distance": benchmark.centers[half:], "abs_error": averaged})


def _figure_metadata(run: ModelRun, names: Sequence[str]) -> Dict[str, Any]:
    metadata: Dict[str, Any] = {
        **run.problem.knobs(),
        "problem": run.problem.label,
        "model_tags": {name: run.fields[name].model_tag for name in names},
    }
    if run.benchmark is not None:
        metadata["n_realizations"] = run.benchmark.n_realizations
    return metadata


def write_figure_data(run: ModelRun, out_dir: Path) -> List[Path]:
    """Plot-ready two-column CSVs for the figures this problem appears in."""
    problem = run.problem
    written: List[Path] = []
    out_dir = Path(out_dir)

    if problem.set_id in DIFFUSION_FIGURES:
        figure = DIFFUSION_FIGURES[problem.set_id]
        for name in ("lp", "alp", "diff-lp", "diff-alp"):
            if name in run.fields:
                written.append(
                    write_frame(
                        out_dir / f"fig{figure}_M{problem.M}_{name}.csv",
                        two_column(run.fields[name]),
                        _figure_metadata(run, [name]),
                        tags={"model_tag": run.fields[name].model_tag},
                    )
                )
        figure = BENCHMARK_FIGURES[problem.set_id]
        for name in ("benchmark", "lp", "alp"):
            if name in run.fields:
                written.append(
                    write_frame(
                        out_dir / f"fig{figure}_M{problem.M}_{name}.csv",
                        two_column(run.fields[name]),
                        _figure_metadata(run, [name]),
                        tags={"model_tag": run.fields[name].model_tag},
                    )
                )

    if problem.set_id in ERROR_FIGURES and run.benchmark is not None:
        figure = ERROR_FIGURES[problem.set_id]
        for name in ("lp", "alp", "am"):
            if name in run.fields:
                written.append(
                    write_frame(
                        out_dir / f"fig{figure}_s{problem.m1.sigma_s:g}_{name}.csv",
                        error_profile(run.fields[name], run.benchmark),
                        _figure_metadata(run, ["benchmark", name]),
                        tags={"model_tag": run.fields[name].model_tag},
                    )
                )
    return written


def _run_table(
    problems: Sequence[ProblemConfig],
    path: Path,
    workers: int,
    out_dir: Optional[Path],
    figures: bool,
) -> List[TableRow]:
    rows: List[TableRow] = []
    knobs: Dict[str, Any] = {}
    for problem in problems:
        run = run_models(problem, workers=workers, out_dir=out_dir)
        rows.append(run.row)
        knobs[problem.label] = {
            **problem.knobs(),
            "n_realizations": run.row.n_realizations,
            "model_tags": {name: f.model_tag for name, f in run.fields.items()},
        }
        if figures and out_dir is not None:
            write_figure_data(run, out_dir)
        logger.info(f"{problem.label}: {run.row.rounded()}")
    write_table(path, [row.rounded() for row in rows], {"problems": knobs})
    return rows


def table2(
    sets: Sequence[str] = ("A", "B", "C"),
    M_list: Sequence[int] = (20, 40, 60),
    numerics: Optional[Numerics] = None,
    workers: int = 1,
    out_dir: Path = Path("results"),
    figures: bool = True,
) -> List[TableRow]:
    """Diffusive problems: benchmark, LP and ALP at x = 0 per set and M."""
    problems = [resolve_problem(s, M, numerics) for s in sets for M in M_list]
    out_dir = Path(out_dir)
    return _run_table(problems, out_dir / "table2.csv", workers, out_dir, figures)


def table4(
    sets: Sequence[str] = ("D", "E", "F"),
    choices: Sequence[int] = (1, 2, 3),
    numerics: Optional[Numerics] = None,
    workers: int = 1,
    out_dir: Path = Path("results"),
    figures: bool = True,
) -> List[TableRow]:
    """Non-diffusive problems: benchmark, LP, ALP and atomic mix at x = 0."""
    problems = [resolve_problem(s, c, numerics) for s in sets for c in choices]
    out_dir = Path(out_dir)
    return _run_table(problems, out_dir / "table4.csv", workers, out_dir, figures)


def convergence_study(
    set_id: str,
    M_list: Sequence[int] = (20, 40, 60),
    numerics: Optional[Numerics] = None,
    out_dir: Optional[Path] = None,
) -> pd.DataFrame:
    """
    Transport versus diffusion at x = 0 for LP and ALP as M grows; the gap is
    |phi_transport - phi_diffusion| / phi_diffusion.
    """
    records = []
    for M in M_list:
        problem = resolve_problem(set_id, M, numerics)
        if not problem.diffusive:
            raise SolverError(
                f"Convergence study needs a diffusive set, got {set_id}",
                model="converge",
            )
        for transport, diffusion in (("lp", "diff-lp"), ("alp", "diff-alp")):
            _, transport_field = solve_model(transport, problem)
            _, diffusion_field = solve_model(diffusion, problem)
            phi_t = transport_field.value_at_origin()
            phi_d = diffusion_field.value_at_origin()
            records.append(
                {
                    "M": M,
                    "model": transport,
                    "phi_transport": phi_t,
                    "phi_diffusion": phi_d,
                    "gap": abs(phi_t - phi_d) / phi_d,
                }
            )
            logger.info(
                f"{problem.label} {transport}: transport={phi_t:.6g}, "
                f"diffusion={phi_d:.6g}"
            )

    frame = pd.DataFrame.from_records(
        records, columns=["M", "model", "phi_transport", "phi_diffusion", "gap"]
    )
    if out_dir is not None:
        reference = resolve_problem(set_id, M_list[0], numerics)
        write_frame(
            Path(out_dir) / f"convergence_{set_id.upper()}.csv",
            frame,
            {"set": set_id.upper(), "M": list(M_list), **reference.knobs()},
        )
    return frame
