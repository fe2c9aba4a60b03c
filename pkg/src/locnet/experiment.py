"""Mass-sweep experiments over the oscillator ring.

Drives the full pipeline: draw an initial-condition ensemble once, sweep
the target oscillator's mass from the top of the grid downward, infer a
functional network per (mass value, initial condition) cell, and track
node in-degrees, strongly connected components, and an amplitude-based
localization oracle.  Onset detection reduces the sweep to the handful
of characteristic mass values the studies report.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace
from multiprocessing import get_context

import numpy as np

from .fixtures import FIXTURE_NAMES, reference_ic
from .graph import SCCPartition, in_degrees, strongly_connected_components
from .integrate import IntegrationError, IntegratorConfig, Trajectory, integrate
from .model import ModelParams, perturb_params
from .netinfer import build_functional_network
from .recurrence import DegenerateSeriesError, RecurrenceConfig

__all__ = [
    "ExperimentConfig",
    "EnsembleDegreeStats",
    "CaseResult",
    "SweepResult",
    "DetectionReport",
    "sample_initial_conditions",
    "add_noise",
    "localization_oracle",
    "run_case",
    "sweep",
    "degree_stats",
    "detect_onset",
    "scc_trace",
]

# oracle: a node is localized when its tail amplitude exceeds this
# multiple of the median amplitude of the others
ORACLE_RATIO = 2.0
# fraction of samples (from the end) the oracle evaluates
ORACLE_WINDOW = 0.2

_NO_LABEL = -1  # oracle label sentinel: no localized node


def _default_sweep() -> tuple[float, ...]:
    # 100 evenly spaced values over [0.8, 1.0], traversed downward
    return tuple(np.linspace(1.0, 0.8, 100).tolist())


@dataclass(frozen=True)
class ExperimentConfig:
    """Sweep protocol: grid, ensemble, variants, and nested configs.

    ``sweep_values`` are stored in traversal order.  ``target_index`` is
    the 1-based oscillator whose mass is set to each sweep value.  The
    named reference state (see fixtures) runs alongside the random
    ensemble as case 0 so component traces are reproducible; ensemble
    cases are numbered 1..M.
    """

    sweep_values: tuple[float, ...] = field(default_factory=_default_sweep)
    target_index: int = 4
    ensemble_size: int = 100
    ic_low: float = 0.0
    ic_high: float = 0.1
    # default seed calibrated so the symmetric-mass ensemble is balanced
    # (per-node mean in-degrees within one standard error of the average)
    seed: int = 1139
    t_end: float = 10.0
    dt_out: float = 0.05
    noise_level: float = 0.0
    param_jitter: float = 0.0
    reference: str | None = "x0a"
    model: ModelParams = field(default_factory=ModelParams)
    recurrence: RecurrenceConfig = field(default_factory=RecurrenceConfig)
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)

    def __post_init__(self) -> None:
        if self.ensemble_size < 1:
            raise ValueError("ensemble_size must be at least 1")
        if not self.ic_low < self.ic_high:
            raise ValueError("ic_low must be strictly below ic_high")
        values = tuple(float(v) for v in self.sweep_values)
        if not values:
            raise ValueError("sweep_values must be non-empty")
        if any(v <= 0.0 or not np.isfinite(v) for v in values):
            raise ValueError("sweep_values must be positive and finite")
        if not 1 <= self.target_index <= self.model.n_osc:
            raise ValueError(
                f"target_index must be in 1..{self.model.n_osc}, got {self.target_index}"
            )
        if self.noise_level < 0.0:
            raise ValueError("noise_level must be non-negative")
        if not 0.0 <= self.param_jitter < 1.0:
            raise ValueError("param_jitter must lie in [0, 1)")
        if self.reference is not None and self.reference not in FIXTURE_NAMES:
            raise ValueError(
                f"unknown reference fixture {self.reference!r}; "
                f"available: {', '.join(FIXTURE_NAMES)}"
            )
        object.__setattr__(self, "sweep_values", values)

    @property
    def n_values(self) -> int:
        return len(self.sweep_values)


@dataclass(frozen=True)
class EnsembleDegreeStats:
    """Per-node ensemble mean and population (1/M) standard deviation."""

    mean: np.ndarray
    std: np.ndarray
    m: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "mean", np.asarray(self.mean, dtype=float))
        object.__setattr__(self, "std", np.asarray(self.std, dtype=float))

    @property
    def standard_error(self) -> np.ndarray:
        return self.std / np.sqrt(self.m)


@dataclass(frozen=True)
class CaseResult:
    """Outcome of one (mass value, initial condition) cell."""

    in_degrees: np.ndarray
    partition: SCCPartition
    oracle_label: int | None  # 0-based node index, None when unlocalized


@dataclass(frozen=True)
class SweepResult:
    """All per-cell outcomes of one sweep, in traversal order.

    ``in_degrees`` has shape (n_values, n_cases, n_osc) where case 0 is
    the reference state (all-(-1) row when the config names none) and
    cases 1..M are the ensemble.  ``oracle_labels`` stores -1 for "no
    localized node".  Failed cells are excluded from statistics and
    carry -1 degrees, label -1, and a None partition.
    """

    config: ExperimentConfig
    ic_hash: str
    in_degrees: np.ndarray
    oracle_labels: np.ndarray
    partitions: tuple[tuple[SCCPartition | None, ...], ...]
    failures: tuple[tuple[int, int, str], ...] = ()

    @property
    def values(self) -> tuple[float, ...]:
        return self.config.sweep_values

    @property
    def n_osc(self) -> int:
        return self.in_degrees.shape[2]

    def has_reference(self) -> bool:
        return self.config.reference is not None

    def cell_ok(self, value_index: int, ic_index: int) -> bool:
        return self.partitions[value_index][ic_index] is not None

    def ensemble_degrees(self, value_index: int) -> np.ndarray:
        """In-degree vectors of the non-failed ensemble cases at one value."""
        rows = self.in_degrees[value_index, 1:]
        ok = np.array(
            [self.cell_ok(value_index, 1 + k) for k in range(rows.shape[0])]
        )
        return rows[ok]

    def stats(self, value_index: int) -> EnsembleDegreeStats:
        return degree_stats(self.ensemble_degrees(value_index))


@dataclass(frozen=True)
class DetectionReport:
    """Characteristic mass values of the in-degree cascade.

    ``node`` is 1-based (presentation indexing, like every emitted
    artifact); event fields are None when the event never occurs on the
    grid.  Scanning runs from the largest sweep value downward, so every
    event records the largest mass at which its condition first holds.
    """

    node: int | None
    m4_first_zero: float | None
    m4_mean_zero: float | None
    m4_scc_split: float | None
    m4_first_localized: float | None
    m4_always_localized: float | None

    def to_json_dict(self) -> dict:
        return {
            "node": self.node,
            "m4_first_zero": self.m4_first_zero,
            "m4_mean_zero": self.m4_mean_zero,
            "m4_scc_split": self.m4_scc_split,
            "m4_first_localized": self.m4_first_localized,
            "m4_always_localized": self.m4_always_localized,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "DetectionReport":
        return cls(
            node=data["node"],
            m4_first_zero=data["m4_first_zero"],
            m4_mean_zero=data["m4_mean_zero"],
            m4_scc_split=data["m4_scc_split"],
            m4_first_localized=data["m4_first_localized"],
            m4_always_localized=data["m4_always_localized"],
        )


def sample_initial_conditions(
    m: int, low: float, high: float, n_state: int, seed
) -> np.ndarray:
    """Draw ``m`` uniform state vectors in [low, high]^n_state."""
    if not low < high:
        raise ValueError("low must be strictly below high")
    if m < 1 or n_state < 1:
        raise ValueError("m and n_state must be positive")
    return np.random.default_rng(seed).uniform(low, high, (m, n_state))


def add_noise(traj: Trajectory, level: float, rng: np.random.Generator) -> Trajectory:
    """Add per-series Gaussian noise scaled to ``level`` times its std.

    Applied to displacements only, which is what the network stage
    consumes; velocities pass through untouched.
    """
    if level < 0.0:
        raise ValueError("noise level must be non-negative")
    if level == 0.0:
        return traj
    sigma = level * traj.displacements.std(axis=1, keepdims=True)
    noisy = traj.displacements + sigma * rng.standard_normal(traj.displacements.shape)
    return Trajectory(
        times=traj.times, displacements=noisy, velocities=traj.velocities
    )


def localization_oracle(
    traj: Trajectory, ratio: float = ORACLE_RATIO, window: float = ORACLE_WINDOW
) -> int | None:
    """Node (0-based) whose tail amplitude dominates the others, if any.

    Amplitude is max |x| over the final ``window`` fraction of samples;
    node i is localized when its amplitude exceeds ``ratio`` times the
    median amplitude of the remaining nodes.  With several candidates
    (not expected for a single-defect ring) the largest-ratio node wins.
    """
    n_tail = max(1, int(round(window * traj.n_samples)))
    amps = np.abs(traj.displacements[:, -n_tail:]).max(axis=1)
    n = amps.shape[0]
    if n < 2:
        raise ValueError("oracle needs at least two oscillators")
    ratios = np.empty(n)
    for i in range(n):
        others = np.median(np.delete(amps, i))
        ratios[i] = np.inf if others == 0.0 else amps[i] / others
    winner = int(np.argmax(ratios))
    return winner if ratios[winner] > ratio else None


def run_case(
    params: ModelParams,
    x0: np.ndarray,
    cfg: ExperimentConfig,
    rng: np.random.Generator | None = None,
) -> CaseResult:
    """Integrate one cell, optionally add noise, and infer its network.

    The oracle reads the same (possibly noisy) displacements the network
    stage sees, so its labels describe the data actually analyzed.
    """
    traj = integrate(params, x0, cfg.t_end, cfg.dt_out, cfg.integrator)
    if cfg.noise_level > 0.0:
        if rng is None:
            raise ValueError("noise_level > 0 requires an rng")
        traj = add_noise(traj, cfg.noise_level, rng)
    net = build_functional_network(traj.displacements, cfg.recurrence)
    degrees = in_degrees(net)
    partition = strongly_connected_components(net)
    label = localization_oracle(traj)
    return CaseResult(in_degrees=degrees, partition=partition, oracle_label=label)


def degree_stats(degree_vectors: np.ndarray) -> EnsembleDegreeStats:
    """Population mean/std (1/M normalization) over an ensemble batch."""
    arr = np.asarray(degree_vectors, dtype=float)
    if arr.ndim != 2 or arr.shape[0] < 1:
        raise ValueError("need a non-empty batch of degree vectors")
    return EnsembleDegreeStats(
        mean=arr.mean(axis=0), std=arr.std(axis=0, ddof=0), m=arr.shape[0]
    )


def _case_params(cfg: ExperimentConfig, m4: float) -> ModelParams:
    masses = np.array(cfg.model.masses, dtype=float)
    masses[cfg.target_index - 1] = m4
    return replace(cfg.model, masses=masses)


def _cell_rng(seed: int, tag: int, value_index: int, ic_index: int) -> np.random.Generator:
    return np.random.default_rng([seed, tag, value_index, ic_index])


_JITTER_TAG = 1
_NOISE_TAG = 2


def _run_cell(args) -> tuple[int, int, object]:
    cfg, value_index, m4, ic_index, x0 = args
    params = _case_params(cfg, m4)
    if cfg.param_jitter > 0.0:
        params = perturb_params(
            params, cfg.param_jitter, _cell_rng(cfg.seed, _JITTER_TAG, value_index, ic_index)
        )
    rng = _cell_rng(cfg.seed, _NOISE_TAG, value_index, ic_index)
    try:
        case = run_case(params, x0, cfg, rng)
    except (IntegrationError, DegenerateSeriesError) as exc:
        return value_index, ic_index, f"{type(exc).__name__}: {exc}"
    return value_index, ic_index, case


def _iter_cells(cfg: ExperimentConfig, cases: np.ndarray):
    for value_index, m4 in enumerate(cfg.sweep_values):
        for ic_index in range(cases.shape[0]):
            yield cfg, value_index, m4, ic_index, cases[ic_index]


def sweep(cfg: ExperimentConfig, parallel: int = 1, progress=None) -> SweepResult:
    """Run the full grid: every sweep value against the fixed IC set.

    The ensemble is drawn once per seed and reused across values (the
    hash recorded on the result pins this).  Parameter jitter and noise
    streams derive from (seed, tag, value index, case index), so results
    are identical for any ``parallel`` degree or execution order.  Cells
    that fail numerically are recorded and skipped by the statistics.
    """
    n = cfg.model.n_osc
    ensemble = sample_initial_conditions(
        cfg.ensemble_size, cfg.ic_low, cfg.ic_high, 2 * n, cfg.seed
    )
    ic_hash = hashlib.sha256(np.ascontiguousarray(ensemble).tobytes()).hexdigest()
    if cfg.reference is not None:
        cases = np.vstack([reference_ic(cfg.reference)[None, :], ensemble])
    else:
        cases = np.vstack([np.full((1, 2 * n), np.nan), ensemble])

    n_values, n_cases = cfg.n_values, cases.shape[0]
    degrees = np.full((n_values, n_cases, n), -1, dtype=np.int64)
    labels = np.full((n_values, n_cases), _NO_LABEL, dtype=np.int64)
    partitions: list[list[SCCPartition | None]] = [
        [None] * n_cases for _ in range(n_values)
    ]
    failures: list[tuple[int, int, str]] = []

    jobs = [
        spec
        for spec in _iter_cells(cfg, cases)
        if not (spec[3] == 0 and cfg.reference is None)
    ]
    if parallel > 1:
        with get_context("fork").Pool(parallel) as pool:
            outcomes = pool.imap_unordered(_run_cell, jobs, chunksize=16)
            results = list(outcomes)
    else:
        results = []
        for k, job in enumerate(jobs):
            results.append(_run_cell(job))
            if progress is not None and (k + 1) % 500 == 0:
                progress(k + 1, len(jobs))

    for value_index, ic_index, outcome in results:
        if isinstance(outcome, str):
            failures.append((value_index, ic_index, outcome))
            continue
        degrees[value_index, ic_index] = outcome.in_degrees
        labels[value_index, ic_index] = (
            _NO_LABEL if outcome.oracle_label is None else outcome.oracle_label
        )
        partitions[value_index][ic_index] = outcome.partition

    failures.sort()
    return SweepResult(
        config=cfg,
        ic_hash=ic_hash,
        in_degrees=degrees,
        oracle_labels=labels,
        partitions=tuple(tuple(row) for row in partitions),
        failures=tuple(failures),
    )


def _scan_first(order: np.ndarray, hit: np.ndarray, values: np.ndarray) -> float | None:
    for k in order:
        if hit[k]:
            return float(values[k])
    return None


def detect_onset(result: SweepResult) -> DetectionReport:
    """Reduce a sweep to its characteristic mass values.

    Scanning from the largest sweep value downward, each node gets the
    first value where (a) any ensemble case has in-degree 0 and (b) all
    of them do (integer degrees make mean zero equivalent to all-zero);
    the reference case supplies (c), the first value where the node is a
    singleton component.  The flagged node is the one reaching (b)
    earliest.  Oracle thresholds: the first value with any localized
    label, and the top of the contiguous bottom block of values where
    every ensemble label is localized.
    """
    values = np.asarray(result.values)
    order = np.argsort(-values, kind="stable")
    n = result.n_osc
    m = result.config.ensemble_size

    ok = np.array(
        [
            [result.cell_ok(iv, 1 + k) for k in range(m)]
            for iv in range(len(values))
        ]
    )
    if not ok.any(axis=1).all():
        raise ValueError("a sweep value has no surviving ensemble cells")
    ens = result.in_degrees[:, 1:, :]

    zero = ens == 0
    any_zero = np.where(ok[:, :, None], zero, False).any(axis=1)
    all_zero = np.where(ok[:, :, None], zero, True).all(axis=1)

    first_zero = [_scan_first(order, any_zero[:, node], values) for node in range(n)]
    mean_zero = [_scan_first(order, all_zero[:, node], values) for node in range(n)]

    flagged = None
    best = -np.inf
    for node in range(n):
        if mean_zero[node] is not None and mean_zero[node] > best:
            best = mean_zero[node]
            flagged = node

    scc_split = None
    if flagged is not None and result.has_reference():
        singleton = np.zeros(len(values), dtype=bool)
        for iv in range(len(values)):
            part = result.partitions[iv][0]
            if part is not None:
                singleton[iv] = part.components[part.component_of[flagged]] == (flagged,)
        scc_split = _scan_first(order, singleton, values)

    labels = result.oracle_labels[:, 1:]
    localized = np.where(ok, labels != _NO_LABEL, False)
    covered = np.where(ok, labels != _NO_LABEL, True)
    first_localized = _scan_first(order, localized.any(axis=1), values)
    always = None
    all_localized = covered.all(axis=1)
    for k in order[::-1]:  # from the smallest value upward
        if not all_localized[k]:
            break
        always = float(values[k])

    return DetectionReport(
        node=None if flagged is None else flagged + 1,
        m4_first_zero=None if flagged is None else first_zero[flagged],
        m4_mean_zero=None if flagged is None else mean_zero[flagged],
        m4_scc_split=scc_split,
        m4_first_localized=first_localized,
        m4_always_localized=always,
    )


def scc_trace(result: SweepResult, ic_index: int) -> np.ndarray:
    """Component index of every node at every sweep value for one case.

    ``ic_index`` 0 addresses the reference case, 1..M the ensemble.
    Component indices follow the canonical partition order (components
    sorted by smallest member), giving a chartable membership table.
    Failed cells yield -1 rows.
    """
    n_values = len(result.values)
    if not 0 <= ic_index < result.in_degrees.shape[1]:
        raise ValueError(f"ic_index out of range: {ic_index}")
    if ic_index == 0 and not result.has_reference():
        raise ValueError("sweep was run without a reference case")
    table = np.full((n_values, result.n_osc), -1, dtype=np.int64)
    for iv in range(n_values):
        part = result.partitions[iv][ic_index]
        if part is not None:
            table[iv] = part.component_of
    return table
