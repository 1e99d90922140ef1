"""Command-line interface: scenario execution and bound analytics.

Exit codes follow the theorem-checking contract: 0 when every evaluated
bound is respected, 2 when any bound is violated beyond its statistical
tolerance, 1 on execution errors.
"""

from __future__ import annotations

import sys

import click

from . import bench, classical, quantum
from .core import ConfigError

EXIT_VIOLATION = 2


def _apply_flag_overrides(scenario, seed, horizon, samples, gap_tol):
    cfg = dict(scenario.config)
    avg = dict(cfg.get("average", {}))
    if seed is not None:
        avg["seed"] = seed
    if horizon is not None:
        avg["horizon"] = horizon
    if samples is not None:
        avg["samples"] = samples
    cfg["average"] = avg
    if gap_tol is not None:
        cfg["gap_tol"] = gap_tol
    return bench.load_scenario(cfg, name=scenario.name)


def _print_records(records):
    for rec in records:
        if rec.error is not None:
            click.echo(f"{rec.scenario} {rec.params}: ERROR {rec.error}")
            continue
        rep = rec.report
        states = " ".join(
            f"{name.split('-')[0]}={chk.status}"
            for name, chk in rec.bounds.items()
            if chk.status != bench.STATUS_NA
        )
        click.echo(
            f"{rec.scenario}: mean_D={rep.mean_distinguishability:.5f} "
            f"stderr={rep.standard_error:.2e} eps={rep.epsilon:g} "
            f"verdict={rep.verdict} {states}"
        )


def _finish(records, out, fmt):
    if out is not None:
        bench.emit_report(records, fmt, out)
        click.echo(f"wrote {len(records)} record(s) to {out}")
    if bench.any_violation(records):
        click.echo("bound VIOLATED beyond statistical tolerance", err=True)
        sys.exit(EXIT_VIOLATION)


_common = [
    click.option("--seed", type=int, default=None, help="Override the averaging seed."),
    click.option("--horizon", type=float, default=None, help="Override the averaging horizon."),
    click.option("--samples", type=int, default=None, help="Override the sample count."),
    click.option("--gap-tol", type=float, default=None, help="Override the gap tolerance."),
    click.option("--out", type=click.Path(dir_okay=False), default=None,
                 help="Write records to this file."),
    click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
                 show_default=True, help="Output format for --out."),
]


def _with_common(fn):
    for option in reversed(_common):
        fn = option(fn)
    return fn


@click.group()
def main():
    """Equilibration bound checking for classical and quantum dynamics."""


@main.command()
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@_with_common
def run(config, seed, horizon, samples, gap_tol, out, fmt):
    """Execute a single scenario (no sweep grid)."""
    try:
        scenario = bench.load_scenario(config)
        if len(scenario.sweep_points) != 1 or scenario.sweep_points[0]:
            raise ConfigError("scenario has a sweep grid; use the `sweep` command")
        scenario = _apply_flag_overrides(scenario, seed, horizon, samples, gap_tol)
        records = bench.run_scenario(scenario)
    except ConfigError as exc:
        raise click.ClickException(str(exc)) from exc
    _print_records(records)
    _finish(records, out, fmt)


@main.command()
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@_with_common
def sweep(config, seed, horizon, samples, gap_tol, out, fmt):
    """Execute a scenario over its sweep grid."""
    try:
        scenario = bench.load_scenario(config)
        if "sweep" not in scenario.config:
            raise ConfigError("scenario has no sweep grid; use the `run` command")
        scenario = _apply_flag_overrides(scenario, seed, horizon, samples, gap_tol)
        records = bench.run_scenario(scenario)
    except ConfigError as exc:
        raise click.ClickException(str(exc)) from exc
    _print_records(records)
    _finish(records, out, fmt)


@main.command()
@_with_common
def verify(seed, horizon, samples, gap_tol, out, fmt):
    """Run the built-in scenario suite and check every bound."""
    try:
        records = []
        for scenario in bench.builtin_scenarios():
            if any(v is not None for v in (seed, horizon, samples, gap_tol)):
                scenario = _apply_flag_overrides(scenario, seed, horizon, samples, gap_tol)
            records.extend(bench.run_scenario(scenario))
    except ConfigError as exc:
        raise click.ClickException(str(exc)) from exc
    _print_records(records)
    violated = sum(
        chk.status == bench.STATUS_VIOLATED for r in records for chk in r.bounds.values()
    )
    checked = sum(
        chk.status != bench.STATUS_NA for r in records for chk in r.bounds.values()
    )
    click.echo(f"checked {checked} bound evaluations across {len(records)} runs, "
               f"{violated} violated")
    _finish(records, out, fmt)


@main.command()
@click.option("--outcomes", "-n", type=int, required=True, help="Measurement outcome count N.")
@click.option("--effective-dimension", "d_eff", type=float, default=None,
              help="Effective dimension of the state.")
@click.option("--gap-degeneracy", "d_g", type=int, default=1, show_default=True,
              help="Maximum energy-gap degeneracy.")
@click.option("--epsilon", type=float, default=None, help="Equilibration tolerance.")
@click.option("--delta", type=float, default=None,
              help="Mixture weight outside the chaotic subspace.")
@click.option("--eigenvalues", type=str, default=None,
              help="Comma-separated energies; prints the gap degeneracy at 0.1x/1x/10x "
                   "of the default gap tolerance.")
def bounds(outcomes, d_eff, d_g, epsilon, delta, eigenvalues):
    """Print analytic bound values without simulating anything."""
    try:
        if eigenvalues is not None:
            values = [float(v) for v in eigenvalues.split(",")]
            spectrum = quantum.HamiltonianSpectrum(sorted(values))
            base = quantum.GAP_REL_TOL * spectrum.spectral_range
            for factor in (0.1, 1.0, 10.0):
                tol = factor * base
                deg = quantum.max_gap_degeneracy(spectrum, tol if tol > 0 else None)
                click.echo(f"gap-degeneracy @ {factor:g}x tolerance ({tol:.3e}): {deg}")
            d_g = quantum.max_gap_degeneracy(spectrum, base if base > 0 else None)
        if d_eff is not None:
            value = quantum.equilibration_bound(outcomes, d_g, d_eff)
            click.echo(f"spectral bound (N={outcomes}, D_G={d_g}, d_eff={d_eff:g}): "
                       f"{value:.10g}")
            if outcomes >= 2 and d_eff == 1.0:
                click.echo("note: effective dimension 1 makes this bound vacuous (>= 1/2)")
        if epsilon is not None and d_eff is not None:
            n_max = quantum.max_outcomes_for_equilibration(epsilon, d_eff, d_g)
            click.echo(f"max outcomes guaranteeing {epsilon:g}-equilibration: {n_max}")
        if delta is not None:
            value = classical.mixed_equilibration_bound(outcomes, delta)
            click.echo(f"mixing bound (N={outcomes}, delta={delta:g}): {value:.10g}")
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc


if __name__ == "__main__":
    main()
