"""Scenario-driven experiment runner.

A scenario is a single JSON document describing one system (quantum
matrices, a classical map plus partition, or a synthetic probe recipe), one
measurement, an epsilon and an averaging configuration, plus an optional
sweep grid of dotted-path overrides. Running a scenario produces one record
per sweep point, each carrying the measured equilibration report and the
status of every analytic bound: satisfied, violated, or not-applicable.
"""

from __future__ import annotations

import copy
import itertools
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import classical, quantum
from .core import (
    ConfigError,
    OutcomeDistribution,
    EquilibrationReport,
    TimeAverageConfig,
    TrajectoryProbe,
    check_sufficiency,
    equilibration_report,
    synthetic_probe,
    time_average_distribution,
)

KINDS = ("quantum", "classical-pure", "classical-ensemble", "synthetic-probe")

STATUS_SATISFIED = "satisfied"
STATUS_VIOLATED = "violated"
STATUS_NA = "not-applicable"

BOUND_NAMES = ("thm1-sufficiency", "thm2-necessity", "thm3-mixing", "thm5-spectral")

CSV_COLUMNS = [
    "scenario",
    "N",
    "d_eff",
    "D_G",
    "epsilon",
    "mean_D",
    "stderr",
    "bound_thm5",
    "bound_thm3",
    "suff_thm1",
    "nec_thm2",
    "verdict",
    "seed",
]


@dataclass(frozen=True)
class BoundCheck:
    value: float | None
    status: str

    def to_dict(self) -> dict:
        return {"value": self.value, "status": self.status}


@dataclass(frozen=True, eq=False)
class RunRecord:
    """One executed sweep point: parameters, measurement, bound statuses."""

    scenario: str
    params: dict
    report: EquilibrationReport | None
    bounds: dict[str, BoundCheck]
    wall_time: float
    seed: int
    error: str | None = None

    def __post_init__(self):
        missing = [name for name in BOUND_NAMES if name not in self.bounds]
        if missing:
            raise ConfigError(f"record is missing bound entries: {missing}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, RunRecord):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def to_dict(self) -> dict:
        rep = None
        if self.report is not None:
            rep = {
                "mean_distinguishability": self.report.mean_distinguishability,
                "standard_error": self.report.standard_error,
                "equilibrium_distribution": [
                    float(v) for v in self.report.equilibrium_distribution.probs
                ],
                "epsilon": self.report.epsilon,
                "verdict": self.report.verdict,
                "bound_values": dict(self.report.bound_values),
            }
        return {
            "scenario": self.scenario,
            "params": self.params,
            "report": rep,
            "bounds": {name: chk.to_dict() for name, chk in self.bounds.items()},
            "wall_time": self.wall_time,
            "seed": self.seed,
            "error": self.error,
        }

    @staticmethod
    def from_dict(data: dict) -> "RunRecord":
        rep = None
        if data.get("report") is not None:
            r = data["report"]
            rep = EquilibrationReport(
                mean_distinguishability=r["mean_distinguishability"],
                standard_error=r["standard_error"],
                equilibrium_distribution=OutcomeDistribution(r["equilibrium_distribution"]),
                epsilon=r["epsilon"],
                verdict=r["verdict"],
                bound_values=dict(r["bound_values"]),
            )
        bounds = {
            name: BoundCheck(value=chk["value"], status=chk["status"])
            for name, chk in data["bounds"].items()
        }
        return RunRecord(
            scenario=data["scenario"],
            params=data["params"],
            report=rep,
            bounds=bounds,
            wall_time=data["wall_time"],
            seed=data["seed"],
            error=data.get("error"),
        )


@dataclass(frozen=True)
class Scenario:
    """Validated scenario: the raw config plus the expanded sweep grid."""

    name: str
    kind: str
    config: dict
    sweep_points: tuple[dict, ...] = field(default_factory=tuple)


# --- config parsing ----------------------------------------------------------

def _require(cfg: dict, key: str, path: str):
    if key not in cfg:
        raise ConfigError(f"{path}.{key}: required")
    return cfg[key]


def _obj(node, path: str) -> dict:
    if not isinstance(node, dict):
        raise ConfigError(f"{path}: expected an object, got {type(node).__name__}")
    return node


def _number(cfg: dict, key: str, path: str) -> float:
    value = _require(cfg, key, path)
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"{path}.{key}: expected a number, got {type(value).__name__}")
    return float(value)


def _absolutize_file_refs(node, base_dir: Path) -> None:
    """Rewrite relative {"file": ...} matrix references against the config's
    own directory, in place."""
    if isinstance(node, dict):
        ref = node.get("file")
        if isinstance(ref, str) and not Path(ref).is_absolute():
            node["file"] = str(base_dir / ref)
        for value in node.values():
            _absolutize_file_refs(value, base_dir)
    elif isinstance(node, list):
        for value in node:
            _absolutize_file_refs(value, base_dir)


def load_scenario(source: dict | str | Path, name: str | None = None) -> Scenario:
    """Parse and validate a scenario from a dict or a JSON file path."""
    if isinstance(source, (str, Path)):
        path = Path(source)
        try:
            raw = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from None
        name = name or path.stem
        if isinstance(raw, dict):
            _absolutize_file_refs(raw, path.resolve().parent)
    else:
        raw = source
    if not isinstance(raw, dict):
        raise ConfigError("scenario: expected a JSON object")
    name = raw.get("name", name or "scenario")
    kind = _require(raw, "kind", "scenario")
    if kind not in KINDS:
        raise ConfigError(f"scenario.kind: unknown kind {kind!r}, expected one of {KINDS}")
    epsilon = _number(raw, "epsilon", "scenario")
    if not 0.0 <= epsilon < 1.0:
        raise ConfigError(f"scenario.epsilon: must lie in [0, 1), got {epsilon}")
    _require(raw, "average", "scenario")
    _require(raw, "system", "scenario")
    if kind != "synthetic-probe":
        _require(raw, "measurement", "scenario")
    sweep = raw.get("sweep", None)
    points: list[dict]
    if sweep is None:
        points = [{}]
    else:
        if not isinstance(sweep, dict):
            raise ConfigError("scenario.sweep: expected an object of path -> value list")
        keys = sorted(sweep)
        for k in keys:
            if not isinstance(sweep[k], list):
                raise ConfigError(f"scenario.sweep.{k}: expected a list of values")
        points = [
            dict(zip(keys, combo))
            for combo in itertools.product(*(sweep[k] for k in keys))
        ]
    # every sweep point must be internally consistent before any run starts;
    # numeric failures are a run-level concern and stay deferred
    for point in points or [{}]:
        try:
            _build_runtime(_apply_overrides(raw, point))
        except ConfigError:
            raise
        except Exception:
            pass
    return Scenario(name=name, kind=kind, config=raw, sweep_points=tuple(points))


def _apply_overrides(raw: dict, overrides: dict) -> dict:
    cfg = copy.deepcopy(raw)
    for dotted, value in overrides.items():
        node = cfg
        parts = dotted.split(".")
        for part in parts[:-1]:
            if not isinstance(node.get(part), dict):
                node[part] = {}
            node = node[part]
        node[parts[-1]] = value
    return cfg


def _average_config(cfg: dict, spectrum=None) -> TimeAverageConfig:
    avg = cfg["average"]
    path = "scenario.average"
    if not isinstance(avg, dict):
        raise ConfigError(f"{path}: expected an object")
    samples = int(_number(avg, "samples", path))
    seed = int(avg.get("seed", 0))
    scheme = avg.get("scheme", "stratified-random")
    horizon = avg.get("horizon", "auto")
    if horizon == "auto":
        if spectrum is None:
            raise ConfigError(f"{path}.horizon: 'auto' is only available for quantum scenarios")
        return TimeAverageConfig(
            horizon=quantum.default_average_config(spectrum).horizon,
            samples=samples,
            scheme=scheme,
            seed=seed,
        )
    if not isinstance(horizon, (int, float)) or isinstance(horizon, bool):
        raise ConfigError(f"{path}.horizon: expected a number or 'auto'")
    try:
        return TimeAverageConfig(horizon=float(horizon), samples=samples, scheme=scheme, seed=seed)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None


class _Runtime:
    """Everything needed to execute one resolved sweep point.

    ``quadrature_error_of`` maps the measured equilibrium distribution to the
    resolution floor of a quadrature-discretized probe (0 for exact probes);
    it is evaluated at run time, never during validation.
    """

    def __init__(self, kind, probe, cfg, epsilon, diagnostics, quadrature_error_of=None):
        self.kind = kind
        self.probe: TrajectoryProbe = probe
        self.cfg: TimeAverageConfig = cfg
        self.epsilon = epsilon
        self.diagnostics: dict = diagnostics
        self.quadrature_error_of = quadrature_error_of


def _matrix_node(node, path: str) -> np.ndarray:
    node = _obj(node, path)
    if "file" in node:
        ref = Path(node["file"])
        try:
            inner = json.loads(ref.read_text())
        except OSError as exc:
            raise ConfigError(f"{path}.file: cannot read {ref} ({exc})") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}.file: invalid JSON in {ref} ({exc})") from None
        return quantum.matrix_from_pairs(_obj(inner, path), path)
    return quantum.matrix_from_pairs(node, path)


def _build_quantum(cfg: dict) -> _Runtime:
    system = _obj(cfg["system"], "scenario.system")
    meas = _obj(cfg["measurement"], "scenario.measurement")
    gap_tol = cfg.get("gap_tol")
    path = "scenario.system"
    if "sampler" in system:
        s = _obj(system["sampler"], f"{path}.sampler")
        dim = int(_number(s, "dim", f"{path}.sampler"))
        seed = int(_number(s, "seed", f"{path}.sampler"))
        spec_kind = s.get("spectrum", "generic")
        try:
            spectrum = quantum.random_spectrum(dim, seed, spec_kind, s.get("spacing", 1.0))
        except ValueError as exc:
            raise ConfigError(f"{path}.sampler.spectrum: {exc}") from None
        state_kind = s.get("state", "pure")
        if state_kind == "pure":
            rho = quantum.random_pure_state(dim, seed + 1)
        elif state_kind == "mixed":
            rho = quantum.random_mixed_state(dim, seed + 1)
        else:
            raise ConfigError(f"{path}.sampler.state: expected 'pure' or 'mixed'")
    else:
        ham = _obj(_require(system, "hamiltonian", path), f"{path}.hamiltonian")
        if "eigenvalues" in ham:
            vecs = None
            if "eigenvectors" in ham:
                vecs = _matrix_node(ham["eigenvectors"], f"{path}.hamiltonian.eigenvectors")
            try:
                spectrum = quantum.HamiltonianSpectrum(ham["eigenvalues"], vecs)
            except ValueError as exc:
                raise ConfigError(f"{path}.hamiltonian: {exc}") from None
        else:
            mat = _matrix_node(_require(ham, "matrix", f"{path}.hamiltonian"),
                               f"{path}.hamiltonian.matrix")
            try:
                spectrum = quantum.HamiltonianSpectrum.from_matrix(mat)
            except ValueError as exc:
                raise ConfigError(f"{path}.hamiltonian.matrix: {exc}") from None
        state = _obj(_require(system, "state", path), f"{path}.state")
        try:
            if "vector" in state:
                vec = np.array([complex(re, im) for re, im in state["vector"]])
                rho = quantum.DensityMatrix.from_vector(vec)
            else:
                rho = quantum.DensityMatrix(
                    _matrix_node(_require(state, "matrix", f"{path}.state"), f"{path}.state.matrix")
                )
        except ConfigError:
            raise
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{path}.state: {exc}") from None

    mpath = "scenario.measurement"
    if "sampler" in meas:
        s = _obj(meas["sampler"], f"{mpath}.sampler")
        outcomes = int(_number(s, "outcomes", f"{mpath}.sampler"))
        seed = int(_number(s, "seed", f"{mpath}.sampler"))
        name = s.get("name", "random")
        try:
            if name == "random":
                povm = quantum.random_povm(spectrum.dim, outcomes, seed)
            elif name == "projective":
                povm = quantum.projective_povm(spectrum.dim, outcomes, seed)
            elif name == "uneven":
                povm = quantum.uneven_povm(
                    spectrum.dim, outcomes, _number(s, "leak", f"{mpath}.sampler"), seed
                )
            else:
                raise ConfigError(f"{mpath}.sampler.name: unknown sampler {name!r}")
        except ValueError as exc:
            raise ConfigError(f"{mpath}.sampler: {exc}") from None
    else:
        elements = _require(meas, "povm", mpath)
        if not isinstance(elements, list) or not elements:
            raise ConfigError(f"{mpath}.povm: expected a nonempty list of matrices")
        try:
            povm = quantum.POVM(
                [_matrix_node(el, f"{mpath}.povm[{k}]") for k, el in enumerate(elements)]
            )
        except ValueError as exc:
            raise ConfigError(f"{mpath}.povm: {exc}") from None

    if povm.dim != spectrum.dim or rho.dim != spectrum.dim:
        raise ConfigError(
            "scenario: inconsistent dimensions "
            f"(state {rho.dim}, hamiltonian {spectrum.dim}, measurement {povm.dim})"
        )
    probe = quantum.quantum_probe(rho, spectrum, povm)
    avg = _average_config(cfg, spectrum)
    d_eff = quantum.effective_dimension(rho, spectrum)
    base_tol = quantum.GAP_REL_TOL * spectrum.spectral_range if gap_tol is None else gap_tol
    d_g = quantum.max_gap_degeneracy(spectrum, base_tol if base_tol > 0 else None)
    diagnostics = {
        "N": povm.outcome_count,
        "d": spectrum.dim,
        "d_eff": d_eff,
        "D_G": d_g,
        "gap_tolerance": base_tol,
        "D_G_sensitivity": {
            f"{f:g}x": quantum.max_gap_degeneracy(spectrum, f * base_tol) if base_tol > 0 else d_g
            for f in (0.1, 1.0, 10.0)
        },
        "single_eigenspace": spectrum.eigenspace_count < 2,
    }
    return _Runtime("quantum", probe, avg, cfg["epsilon"], diagnostics)


def _build_classical_pure(cfg: dict) -> _Runtime:
    system = _obj(cfg["system"], "scenario.system")
    meas = _obj(cfg["measurement"], "scenario.measurement")
    mapping = classical.map_from_config(
        _obj(_require(system, "map", "scenario.system"), "scenario.system.map"),
        "scenario.system.map",
    )
    partition = classical.partition_from_config(
        _obj(_require(meas, "partition", "scenario.measurement"),
             "scenario.measurement.partition"),
        "scenario.measurement.partition",
    )
    point_cfg = _require(system, "point", "scenario.system")
    try:
        point = classical.PhasePoint(point_cfg)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"scenario.system.point: {exc}") from None
    if point.dim != mapping.dim:
        raise ConfigError(
            f"scenario.system.point: {point.dim}-d point for {mapping.dim}-d map"
        )
    probe = classical.classical_probe(point, mapping, partition)
    diagnostics = {"N": partition.cell_count, "map": mapping.name}
    return _Runtime(
        "classical-pure", probe, _average_config(cfg), cfg["epsilon"], diagnostics
    )


def _build_classical_ensemble(cfg: dict) -> _Runtime:
    system = _obj(cfg["system"], "scenario.system")
    meas = _obj(cfg["measurement"], "scenario.measurement")
    mapping = classical.map_from_config(
        _obj(_require(system, "map", "scenario.system"), "scenario.system.map"),
        "scenario.system.map",
    )
    partition = classical.partition_from_config(
        _obj(_require(meas, "partition", "scenario.measurement"),
             "scenario.measurement.partition"),
        "scenario.measurement.partition",
    )
    ens_cfg = _obj(_require(system, "ensemble", "scenario.system"), "scenario.system.ensemble")
    path = "scenario.system.ensemble"
    try:
        if "sampler" in ens_cfg:
            s = _obj(ens_cfg["sampler"], f"{path}.sampler")
            if s.get("name", "contaminated-cat") != "contaminated-cat":
                raise ConfigError(f"{path}.sampler.name: unknown sampler {s.get('name')!r}")
            ensemble = classical.contaminated_cat_ensemble(
                count=int(_number(s, "count", f"{path}.sampler")),
                delta=_number(s, "delta", f"{path}.sampler"),
                seed=int(_number(s, "seed", f"{path}.sampler")),
                lattice=int(s.get("lattice", 4)),
            )
        else:
            ensemble = classical.ClassicalEnsemble(
                np.asarray(_require(ens_cfg, "points", path), dtype=float),
                ens_cfg.get("weights"),
                ens_cfg.get("chaotic_flags"),
            )
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: {exc}") from None
    if ensemble.dim != mapping.dim:
        raise ConfigError(f"{path}: {ensemble.dim}-d points for {mapping.dim}-d map")
    probe = classical.ensemble_probe(ensemble, mapping, partition)
    diagnostics = {
        "N": partition.cell_count,
        "map": mapping.name,
        "delta": ensemble.periodic_weight,
        "ensemble_size": ensemble.size,
    }
    return _Runtime(
        "classical-ensemble",
        probe,
        _average_config(cfg),
        cfg["epsilon"],
        diagnostics,
        # the cloud resolves distinguishability only down to its own
        # sampling noise, which belongs in the reported standard error
        quadrature_error_of=lambda omega: classical.ensemble_noise_floor(ensemble, omega),
    )


def _build_synthetic(cfg: dict) -> _Runtime:
    system = _obj(cfg["system"], "scenario.system")
    recipe = _obj(_require(system, "probe", "scenario.system"), "scenario.system.probe")
    path = "scenario.system.probe"
    try:
        probe = synthetic_probe(
            outcomes=int(_number(recipe, "outcomes", path)),
            seed=int(_number(recipe, "seed", path)),
            dominant_weight=recipe.get("dominant_weight"),
            mode_count=int(recipe.get("mode_count", 3)),
            amplitude=recipe.get("amplitude", 0.6),
        )
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    diagnostics = {"N": probe.outcome_count}
    return _Runtime(
        "synthetic-probe", probe, _average_config(cfg), cfg["epsilon"], diagnostics
    )


_BUILDERS = {
    "quantum": _build_quantum,
    "classical-pure": _build_classical_pure,
    "classical-ensemble": _build_classical_ensemble,
    "synthetic-probe": _build_synthetic,
}


def _build_runtime(cfg: dict) -> _Runtime:
    kind = cfg["kind"]
    epsilon = cfg["epsilon"]
    if not isinstance(epsilon, (int, float)) or not 0.0 <= epsilon < 1.0:
        raise ConfigError(f"scenario.epsilon: must lie in [0, 1), got {epsilon!r}")
    return _BUILDERS[kind](cfg)


# --- execution ---------------------------------------------------------------

def _evaluate_bounds(rt: _Runtime, report: EquilibrationReport) -> dict[str, BoundCheck]:
    mean = report.mean_distinguishability
    err = report.standard_error
    eps = rt.epsilon
    omega = report.equilibrium_distribution
    checks: dict[str, BoundCheck] = {}

    if check_sufficiency(omega, eps):
        status = STATUS_SATISFIED if mean <= eps + 3.0 * err else STATUS_VIOLATED
    else:
        status = STATUS_NA
    checks["thm1-sufficiency"] = BoundCheck(value=1.0 - eps / 2.0, status=status)

    if rt.kind == "classical-pure":
        statistically_equilibrated = mean <= eps - 3.0 * err
        if statistically_equilibrated and not classical.check_necessity(omega, eps):
            status = STATUS_VIOLATED
        else:
            status = STATUS_SATISFIED
        checks["thm2-necessity"] = BoundCheck(value=1.0 - eps, status=status)
    else:
        checks["thm2-necessity"] = BoundCheck(value=None, status=STATUS_NA)

    if rt.kind == "classical-ensemble" and rt.diagnostics.get("delta", 1.0) <= 0.5:
        bound = classical.mixed_equilibration_bound(
            rt.diagnostics["N"], rt.diagnostics["delta"]
        )
        status = STATUS_SATISFIED if mean <= bound + 3.0 * err else STATUS_VIOLATED
        checks["thm3-mixing"] = BoundCheck(value=bound, status=status)
    else:
        checks["thm3-mixing"] = BoundCheck(value=None, status=STATUS_NA)

    if rt.kind == "quantum":
        bound = quantum.equilibration_bound(
            rt.diagnostics["N"], rt.diagnostics["D_G"], rt.diagnostics["d_eff"]
        )
        status = STATUS_VIOLATED if mean - 3.0 * err > bound else STATUS_SATISFIED
        checks["thm5-spectral"] = BoundCheck(value=bound, status=status)
    else:
        checks["thm5-spectral"] = BoundCheck(value=None, status=STATUS_NA)

    return checks


def run_scenario(scenario: Scenario) -> list[RunRecord]:
    """Execute every sweep point of a scenario, in grid order.

    A numeric failure in one point is recorded on its record (bounds all
    not-applicable) and the sweep continues.
    """
    records: list[RunRecord] = []
    for overrides in scenario.sweep_points:
        resolved = _apply_overrides(scenario.config, overrides)
        start = time.perf_counter()
        try:
            rt = _build_runtime(resolved)
            floor = 0.0
            if rt.quadrature_error_of is not None:
                omega = time_average_distribution(rt.probe, rt.cfg)
                floor = rt.quadrature_error_of(omega)
                rt.diagnostics["quadrature_floor"] = floor
            report = equilibration_report(
                rt.probe, rt.epsilon, rt.cfg, quadrature_error=floor
            )
            checks = _evaluate_bounds(rt, report)
            report = EquilibrationReport(
                mean_distinguishability=report.mean_distinguishability,
                standard_error=report.standard_error,
                equilibrium_distribution=report.equilibrium_distribution,
                epsilon=report.epsilon,
                verdict=report.verdict,
                bound_values={
                    name: chk.value for name, chk in checks.items() if chk.value is not None
                },
            )
            params = dict(overrides)
            params.update(rt.diagnostics)
            records.append(
                RunRecord(
                    scenario=scenario.name,
                    params=_plain(params),
                    report=report,
                    bounds=checks,
                    wall_time=time.perf_counter() - start,
                    seed=rt.cfg.seed,
                )
            )
        except ConfigError:
            raise
        except (ValueError, FloatingPointError, np.linalg.LinAlgError) as exc:
            records.append(
                RunRecord(
                    scenario=scenario.name,
                    params=_plain(dict(overrides)),
                    report=None,
                    bounds={name: BoundCheck(None, STATUS_NA) for name in BOUND_NAMES},
                    wall_time=time.perf_counter() - start,
                    seed=int(resolved.get("average", {}).get("seed", 0)),
                    error=f"{type(exc).__name__}: {exc}",
                )
            )
    return records


def _plain(obj):
    """Recursively convert numpy scalars so records serialize and compare cleanly."""
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def any_violation(records: list[RunRecord]) -> bool:
    return any(
        chk.status == STATUS_VIOLATED for rec in records for chk in rec.bounds.values()
    )


# --- report emission ---------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def emit_report(records: list[RunRecord], fmt: str, path) -> None:
    """Write records as plot-ready CSV (fixed column order) or verbatim JSON."""
    if fmt == "json":
        Path(path).write_text(json.dumps([rec.to_dict() for rec in records], indent=2) + "\n")
        return
    if fmt != "csv":
        raise ConfigError(f"format: expected 'csv' or 'json', got {fmt!r}")
    if not records:
        raise ConfigError("cannot infer a CSV header from an empty record list")
    lines = [",".join(CSV_COLUMNS)]
    for rec in records:
        rep = rec.report
        row = [
            rec.scenario,
            _fmt(rec.params.get("N")),
            _fmt(rec.params.get("d_eff")),
            _fmt(rec.params.get("D_G")),
            _fmt(rep.epsilon if rep else None),
            _fmt(rep.mean_distinguishability if rep else None),
            _fmt(rep.standard_error if rep else None),
            _fmt(rec.bounds["thm5-spectral"].value),
            _fmt(rec.bounds["thm3-mixing"].value),
            rec.bounds["thm1-sufficiency"].status,
            rec.bounds["thm2-necessity"].status,
            rep.verdict if rep else "error",
            _fmt(rec.seed),
        ]
        lines.append(",".join(row))
    Path(path).write_text("\n".join(lines) + "\n")


def load_records(path) -> list[RunRecord]:
    data = json.loads(Path(path).read_text())
    return [RunRecord.from_dict(d) for d in data]


# --- built-in verification suite ----------------------------------------------

def builtin_scenarios() -> list[Scenario]:
    """Compact scenario suite touching every bound; used by `equilib verify`."""
    sigma_x_plus = [[[0.5, 0.0], [0.5, 0.0]], [[0.5, 0.0], [0.5, 0.0]]]
    sigma_x_minus = [[[0.5, 0.0], [-0.5, 0.0]], [[-0.5, 0.0], [0.5, 0.0]]]

    def mat(rows):
        return {
            "rows": len(rows),
            "cols": len(rows),
            "data": [pair for row in rows for pair in row],
        }

    configs = [
        {
            "name": "qubit-benchmark",
            "kind": "quantum",
            "epsilon": 0.35,
            "average": {"horizon": "auto", "samples": 10_000, "seed": 11},
            "system": {
                "hamiltonian": {"eigenvalues": [0.0, 1.0]},
                "state": {"matrix": mat(sigma_x_plus)},
            },
            "measurement": {"povm": [mat(sigma_x_plus), mat(sigma_x_minus)]},
        },
        {
            "name": "quantum-generic",
            "kind": "quantum",
            "epsilon": 0.4,
            "average": {"horizon": "auto", "samples": 3000, "seed": 5},
            "system": {"sampler": {"dim": 8, "seed": 21, "spectrum": "generic", "state": "pure"}},
            "measurement": {"sampler": {"name": "projective", "outcomes": 3, "seed": 22}},
            "sweep": {"system.sampler.seed": [21, 23, 25]},
        },
        {
            "name": "quantum-ladder-mixed",
            "kind": "quantum",
            "epsilon": 0.5,
            "average": {"horizon": "auto", "samples": 3000, "seed": 6},
            "system": {
                "sampler": {"dim": 6, "seed": 31, "spectrum": "equally-spaced", "state": "mixed"}
            },
            "measurement": {"sampler": {"name": "random", "outcomes": 4, "seed": 32}},
        },
        {
            "name": "classical-golden-rotation",
            "kind": "classical-pure",
            "epsilon": 0.3,
            "average": {"horizon": 4096, "samples": 4096, "scheme": "uniform-grid", "seed": 0},
            "system": {"map": {"name": "rotation", "angles": [0.6180339887498949]},
                       "point": [0.123]},
            "measurement": {"partition": {"kind": "interval", "edges": [0.0, 0.5, 1.0]}},
        },
        {
            "name": "classical-cat-pure",
            "kind": "classical-pure",
            "epsilon": 0.2,
            "average": {"horizon": 4096, "samples": 4096, "scheme": "uniform-grid", "seed": 0},
            "system": {"map": {"name": "cat-map"}, "point": [0.2137, 0.5821]},
            "measurement": {
                "partition": {"kind": "grid", "edges": [[0.0, 0.5, 1.0], [0.0, 0.5, 1.0]]}
            },
        },
        {
            "name": "classical-ensemble-cat",
            "kind": "classical-ensemble",
            "epsilon": 0.45,
            "average": {"horizon": 1024, "samples": 1024, "scheme": "uniform-grid", "seed": 0},
            "system": {
                "map": {"name": "cat-map"},
                "ensemble": {"sampler": {"name": "contaminated-cat", "count": 600,
                                          "delta": 0.1, "seed": 41, "lattice": 4}},
            },
            "measurement": {
                "partition": {"kind": "grid", "edges": [[0.0, 0.5, 1.0], [0.0, 0.5, 1.0]]}
            },
        },
        {
            "name": "synthetic-uneven",
            "kind": "synthetic-probe",
            "epsilon": 0.2,
            "average": {"horizon": 500.0, "samples": 2000, "seed": 9},
            "system": {"probe": {"outcomes": 5, "seed": 51, "dominant_weight": 0.95,
                                  "amplitude": 0.4}},
        },
    ]
    return [load_scenario(cfg) for cfg in configs]
