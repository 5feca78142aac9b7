"""Sweep assembly and deterministic CSV/JSON serialization for the CLI."""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .bruteforce import (
    CAPACITY_QUBITS,
    MEASURE_KEYS,
    _generic_measures,
    cross_validate,
    evolve,
)
from .coherence import coherence_l1_ga, coherence_r_ga
from .discord import genuine_discord_ga, pairwise_discord_ga
from .entanglement import concurrence_multiqubit_ga, concurrence_two_qubit_ga
from .gga import (
    AmplitudeDistribution,
    PhiFamily,
    gga_closed_form,
    gga_iterate,
    gga_optimal_time,
    gga_pmax,
    phi_family_delta_coherence,
)
from .grover import GroverConfig, optimal_iteration_details, success_probability
from .linalg import HERMITIAN_TOL, TRACE_TOL
from .nonlocality import chsh_M_ga, svetlichny_max_ga
from .optimizers import OptimizerConfig

# d2 and svet run optimizers at every row and are opt-in.
DEFAULT_GA_MEASURES = ("cr", "cl1", "e2", "en", "dn", "m")

_ANALYTIC_ANY_J = ("p", "cr", "cl1")


@dataclass(frozen=True)
class RunConfig:
    """One CLI invocation; identical configs must produce byte-identical output."""

    command: str
    n: int = 11
    j_values: tuple = (1,)
    r_max: int | None = None
    measures: tuple = DEFAULT_GA_MEASURES
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    seed: int = 0
    fmt: str = "csv"
    use_oracle: bool = True
    phi_points: int = 50
    init_file: str | None = None
    max_n: int = 8
    inject_fault: float = 0.0
    workers: int = 1

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "n": self.n,
            "j_values": list(self.j_values),
            "r_max": self.r_max,
            "measures": list(self.measures),
            "seed": self.seed,
            "format": self.fmt,
            "use_oracle": self.use_oracle,
            "phi_points": self.phi_points,
            "init_file": self.init_file,
            "max_n": self.max_n,
            "inject_fault": self.inject_fault,
            "workers": self.workers,
            "optimizer": {
                "theta_grid": self.optimizer.theta_grid,
                "phi_grid": self.optimizer.phi_grid,
                "restarts": self.optimizer.restarts,
                "refine_tol": self.optimizer.refine_tol,
            },
        }


def _analytic_engine_available(cfg: GroverConfig, measure: str) -> bool:
    if measure in _ANALYTIC_ANY_J:
        return True
    return cfg.j == 1 and cfg.solutions == (0,)


def _analytic_value(cfg: GroverConfig, r: int, measure: str, optimizer: OptimizerConfig):
    if measure == "p":
        return success_probability(cfg, r), {}
    if measure == "cr":
        return coherence_r_ga(cfg, r), {}
    if measure == "cl1":
        return coherence_l1_ga(cfg, r), {}
    if measure == "e2":
        return concurrence_two_qubit_ga(cfg, r), {}
    if measure == "en":
        return concurrence_multiqubit_ga(cfg, r), {}
    if measure == "d2":
        sol = pairwise_discord_ga(cfg, r, optimizer)
        return sol.value, {"evals": sol.optimizer_evals, "converged": sol.converged}
    if measure == "dn":
        return genuine_discord_ga(cfg, r), {}
    if measure == "m":
        return chsh_M_ga(cfg, r), {}
    if measure == "svet":
        res = svetlichny_max_ga(cfg, r, optimizer)
        return res.value, {"evals": res.optimizer_evals, "converged": res.converged}
    raise ValueError(f"unknown measure {measure!r}")


def _series_engines(cfg: GroverConfig, measures, use_oracle: bool) -> dict:
    engines = {}
    for m in ("p",) + tuple(measures):
        if _analytic_engine_available(cfg, m):
            engines[m] = "analytic"
        elif use_oracle and cfg.n <= CAPACITY_QUBITS:
            engines[m] = "oracle"
        else:
            engines[m] = "unavailable"
    return engines


def _ga_series_rows(args) -> list:
    """All rows of one (n, j) series; top-level so worker pools can pickle it."""
    n, j, r_max, measures, optimizer, use_oracle = args
    cfg = GroverConfig(n=n, j=j)
    engines = _series_engines(cfg, measures, use_oracle)
    oracle_measures = tuple(m for m in engines if engines[m] == "oracle")
    rows = []
    sv = evolve(cfg, 0) if oracle_measures else None
    from .bruteforce import grover_step

    for r in range(r_max + 1):
        row = {"j": j, "r": r}
        row["p"] = success_probability(cfg, r)
        if oracle_measures and r > 0:
            sv = grover_step(sv, cfg.solutions)
        oracle_values = {}
        if oracle_measures:
            oracle_values, _ = _generic_measures(sv, cfg, oracle_measures, optimizer)
        for m in measures:
            engine = engines[m]
            if engine == "analytic":
                row[m], _ = _analytic_value(cfg, r, m, optimizer)
            elif engine == "oracle":
                row[m] = oracle_values[m]
            else:
                row[m] = None
        rows.append(row)
    return rows


@dataclass(frozen=True, eq=False)
class SweepResult:
    columns: tuple
    rows: list
    engines: dict
    extra_metadata: dict


def ga_sweep(run: RunConfig) -> SweepResult:
    """Measure sweep over r = 0..r_opt for each requested solution count.

    An explicit r range is validated against 0..r_opt: requests past the
    optimal stopping time are clamped and flagged in the metadata (the
    underlying formulas stay valid, but sweeps report the algorithm's run).
    """
    measures = tuple(m for m in MEASURE_KEYS if m in run.measures and m != "p")
    if run.r_max is not None and run.r_max < 0:
        raise ValueError(f"r-max must be >= 0, got {run.r_max}")
    optimizer = OptimizerConfig(
        theta_grid=run.optimizer.theta_grid,
        phi_grid=run.optimizer.phi_grid,
        restarts=run.optimizer.restarts,
        seed=run.seed,
        refine_tol=run.optimizer.refine_tol,
        refine_maxiter=run.optimizer.refine_maxiter,
    )
    extra = {}
    tasks = []
    for j in run.j_values:
        r_limit = optimal_iteration_details(GroverConfig(n=run.n, j=j)).r_opt
        r_max = r_limit if run.r_max is None else min(run.r_max, r_limit)
        if run.r_max is not None and run.r_max > r_limit:
            extra[f"r_max_clamped.j{j}"] = r_limit
        tasks.append((run.n, j, r_max, measures, optimizer, run.use_oracle))
    if run.workers > 1:
        with ProcessPoolExecutor(max_workers=run.workers) as pool:
            series = list(pool.map(_ga_series_rows, tasks))
    else:
        series = [_ga_series_rows(t) for t in tasks]
    rows = [row for block in series for row in block]
    engines = {}
    for j in run.j_values:
        cfg = GroverConfig(n=run.n, j=j)
        for m, eng in _series_engines(cfg, measures, run.use_oracle).items():
            engines[f"j{j}.{m}"] = eng
    columns = (("j",) if len(run.j_values) > 1 else ()) + ("r", "p") + measures
    return SweepResult(columns=columns, rows=rows, engines=engines, extra_metadata=extra)


def phi_sweep(run: RunConfig) -> SweepResult:
    """Coherence depletion vs optimal measurement time across the phi family."""
    N = 1 << run.n
    points = np.linspace(0.0, 1.0 / math.sqrt(N), run.phi_points)
    rows = []
    for phi0 in points:
        fam = PhiFamily.from_phi0(N, float(phi0))
        dist = _phi_distribution(fam)
        opt = gga_optimal_time(dist)
        rows.append(
            {
                "phi0": float(phi0),
                "r_opt": opt.time,
                "delta_cr": phi_family_delta_coherence(fam),
                "p_max": gga_pmax(dist),
            }
        )
    return SweepResult(
        columns=("phi0", "r_opt", "delta_cr", "p_max"),
        rows=rows,
        engines={"all": "closed-form"},
        extra_metadata={"N": N},
    )


def _phi_distribution(fam: PhiFamily) -> AmplitudeDistribution:
    from .gga import phi_family_distribution

    return phi_family_distribution(fam)


def init_file_sweep(run: RunConfig, dist0: AmplitudeDistribution, n: int, solutions) -> SweepResult:
    """Per-step amplitudes, averages and success probability for a custom start."""
    opt = gga_optimal_time(dist0)
    r_max = run.r_max if run.r_max is not None else max(1, math.ceil(opt.time))
    rows = []
    dist = dist0
    amplitude_log = []
    for r in range(r_max + 1):
        rows.append(
            {
                "r": r,
                "p": dist.success_probability(),
                "kbar_re": dist.kbar.real,
                "kbar_im": dist.kbar.imag,
                "lbar_re": dist.lbar.real,
                "lbar_im": dist.lbar.imag,
            }
        )
        amplitude_log.append(
            {
                "r": r,
                "solution_amplitudes": [[a.real, a.imag] for a in dist.solution_amplitudes],
                "other_amplitudes": [[a.real, a.imag] for a in dist.other_amplitudes],
            }
        )
        dist = gga_iterate(dist, 1)
    extra = {
        "n": n,
        "solutions": list(solutions),
        "optimal_time": opt.time,
        "optimal_time_method": opt.method,
        "degenerate_phase": opt.degenerate_phase,
        "p_floor": opt.p_floor,
        "p_ceil": opt.p_ceil,
        "p_max": gga_pmax(dist0),
        "amplitudes_per_step": amplitude_log,
    }
    if dist0.is_real:
        cf = gga_closed_form(dist0)
        extra["closed_form"] = {"omega": cf.omega, "beta": cf.beta, "C": cf.C}
    return SweepResult(
        columns=("r", "p", "kbar_re", "kbar_im", "lbar_re", "lbar_im"),
        rows=rows,
        engines={"all": "iteration"},
        extra_metadata=extra,
    )


def verify_rows(run: RunConfig):
    summary = cross_validate(
        max_n=run.max_n,
        j_values=run.j_values if run.j_values != (1,) else (1, 2),
        seed=run.seed,
        fault=run.inject_fault,
    )
    rows = [
        {
            "name": c.name,
            "max_deviation": c.max_deviation,
            "tolerance": c.tolerance,
            "passed": c.passed,
            "cases": c.cases,
        }
        for c in summary.checks
    ]
    return summary, SweepResult(
        columns=("name", "max_deviation", "tolerance", "passed", "cases"),
        rows=rows,
        engines={},
        extra_metadata={"passed": summary.passed, "fault": summary.fault},
    )


def _format_value(value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return format(float(value), ".12g")


def base_metadata(run: RunConfig, engines: dict) -> dict:
    return {
        "version": __version__,
        "seed": run.seed,
        "tolerances": {
            "hermitian": HERMITIAN_TOL,
            "trace": TRACE_TOL,
            "optimizer_refine": run.optimizer.refine_tol,
        },
        "engines": engines,
    }


def render_csv(result: SweepResult, run: RunConfig) -> str:
    """CSV with '#'-prefixed metadata lines, a header row, 12 significant digits, LF."""
    meta = base_metadata(run, result.engines)
    lines = [
        f"# version={meta['version']}",
        f"# command={run.command}",
        f"# seed={run.seed}",
    ]
    for key, value in result.engines.items():
        lines.append(f"# engine.{key}={value}")
    for key, value in result.extra_metadata.items():
        if key == "amplitudes_per_step":
            continue  # JSON-only payload
        if isinstance(value, (dict, list)):
            lines.append(f"# {key}={json.dumps(value, separators=(',', ':'))}")
        else:
            lines.append(f"# {key}={_format_value(value)}")
    lines.append(",".join(result.columns))
    for row in result.rows:
        lines.append(",".join(_format_value(row.get(c)) for c in result.columns))
    return "\n".join(lines) + "\n"


def render_json(result: SweepResult, run: RunConfig) -> str:
    doc = {
        "config": run.to_dict(),
        "rows": result.rows,
        "metadata": {**base_metadata(run, result.engines), **result.extra_metadata},
    }
    return json.dumps(doc, indent=2) + "\n"


def render(result: SweepResult, run: RunConfig) -> str:
    if run.fmt == "json":
        return render_json(result, run)
    if run.fmt == "csv":
        return render_csv(result, run)
    raise ValueError(f"unknown format {run.fmt!r}")


_GNUPLOT = {
    "fig2": """set datafile separator ','
set xlabel 'iteration r'
set ylabel 'relative-entropy coherence (bits)'
set key outside
plot for [jj=1:10] 'fig2.csv' using 2:($1==jj?$3:1/0) with linespoints title sprintf('j=%d', jj)
""",
    "fig3": """set datafile separator ','
set xlabel 'optimal measurement time'
set ylabel 'coherence depletion (bits)'
plot 'fig3.csv' using 2:3 with points pt 7 title 'phi family, N=1024'
""",
    "fig4": """set datafile separator ','
set xlabel 'iteration r'
set key outside
plot 'fig4.csv' using 1:2 with points pt 5 title 'success probability', \\
     'fig4.csv' using 1:3 with points pt 9 title 'pairwise concurrence', \\
     'fig4.csv' using 1:4 with points pt 7 title 'multipartite concurrence'
""",
    "fig5": """set datafile separator ','
set xlabel 'iteration r'
set key outside
plot 'fig5.csv' using 1:2 with points pt 5 title 'success probability', \\
     'fig5.csv' using 1:3 with points pt 9 title 'pairwise discord', \\
     'fig5.csv' using 1:4 with points pt 7 title 'genuine multipartite correlation'
""",
}


def figure_outputs(run: RunConfig) -> dict:
    """Plot-ready data files and gnuplot scripts for the four measure sweeps."""
    files: dict[str, str] = {}

    fig2_run = RunConfig(
        command="figures.fig2",
        n=11,
        j_values=tuple(range(1, 11)),
        measures=("cr",),
        seed=run.seed,
        optimizer=run.optimizer,
    )
    files["fig2.csv"] = render_csv(ga_sweep(fig2_run), fig2_run)

    fig3_run = RunConfig(command="figures.fig3", n=10, phi_points=run.phi_points, seed=run.seed)
    files["fig3.csv"] = render_csv(phi_sweep(fig3_run), fig3_run)

    fig4_run = RunConfig(
        command="figures.fig4",
        n=11,
        j_values=(1,),
        measures=("e2", "en"),
        seed=run.seed,
        optimizer=run.optimizer,
    )
    files["fig4.csv"] = render_csv(ga_sweep(fig4_run), fig4_run)

    fig5_run = RunConfig(
        command="figures.fig5",
        n=11,
        j_values=(1,),
        measures=("d2", "dn"),
        seed=run.seed,
        optimizer=run.optimizer,
    )
    files["fig5.csv"] = render_csv(ga_sweep(fig5_run), fig5_run)

    for name, script in _GNUPLOT.items():
        files[f"{name}.gp"] = script
    return files
