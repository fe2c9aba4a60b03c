"""Adaptive time integration of the oscillator ring onto a fixed grid.

Wraps the jitted Dormand-Prince 5(4) kernel: embedded error control with
PI-free step adaptation, FSAL, and a quartic continuous extension so the
returned samples sit exactly on ``t_k = k * dt_out`` regardless of the
internal step sequence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _dp45
from .model import ModelParams, assemble_matrices

__all__ = [
    "IntegratorConfig",
    "Trajectory",
    "IntegrationError",
    "NonFiniteStateError",
    "StepSizeUnderflowError",
    "StepBudgetExceededError",
    "integrate",
    "integrate_system",
]


class IntegrationError(RuntimeError):
    """Base class for numerical failures during integration."""


class NonFiniteStateError(IntegrationError):
    """State or derivative left the representable range (overflow / NaN)."""


class StepSizeUnderflowError(IntegrationError):
    """Error control pushed the step below the resolvable time spacing."""


class StepBudgetExceededError(IntegrationError):
    """The accepted-plus-rejected step budget was exhausted."""


@dataclass(frozen=True)
class IntegratorConfig:
    """Tolerances and limits of the adaptive stepper."""

    rel_tol: float = 1e-8
    abs_tol: float = 1e-10
    max_steps: int = 1_000_000

    def __post_init__(self) -> None:
        if not (self.rel_tol > 0.0 and self.abs_tol > 0.0):
            raise ValueError("tolerances must be strictly positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled solution, displacements and velocities per node.

    ``displacements`` and ``velocities`` have shape ``(n_osc, n_samples)``
    and align with ``times``.
    """

    times: np.ndarray
    displacements: np.ndarray
    velocities: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.times, dtype=float)
        x = np.asarray(self.displacements, dtype=float)
        v = np.asarray(self.velocities, dtype=float)
        if t.ndim != 1 or x.ndim != 2 or v.ndim != 2:
            raise ValueError("times must be 1-D, displacements/velocities 2-D")
        if x.shape != v.shape or x.shape[1] != t.shape[0]:
            raise ValueError(
                f"inconsistent shapes: times {t.shape}, displacements {x.shape}, "
                f"velocities {v.shape}"
            )
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "displacements", x)
        object.__setattr__(self, "velocities", v)

    @property
    def n_osc(self) -> int:
        return self.displacements.shape[0]

    @property
    def n_samples(self) -> int:
        return self.times.shape[0]

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0]) if self.n_samples > 1 else 0.0

    def to_csv_text(self) -> str:
        """Render ``t, x1..xN, v1..vN`` rows with a header line.

        Floats use the shortest representation that round-trips exactly,
        so regenerated files diff cleanly against originals.
        """
        n = self.n_osc
        header = ",".join(
            ["t"] + [f"x{i}" for i in range(1, n + 1)] + [f"v{i}" for i in range(1, n + 1)]
        )
        lines = [header]
        data = np.column_stack([self.times, self.displacements.T, self.velocities.T])
        for row in data:
            lines.append(",".join(repr(val) for val in row.tolist()))
        return "\n".join(lines) + "\n"

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_csv_text())

    @classmethod
    def from_csv(cls, path) -> "Trajectory":
        with open(path, "r", encoding="utf-8") as fh:
            header = fh.readline().strip().split(",")
            data = np.loadtxt(fh, delimiter=",", ndmin=2)
        if not header or header[0] != "t" or (len(header) - 1) % 2 != 0:
            raise ValueError(f"{path}: expected columns t, x1..xN, v1..vN")
        n = (len(header) - 1) // 2
        expected = ["t"] + [f"x{i}" for i in range(1, n + 1)] + [f"v{i}" for i in range(1, n + 1)]
        if header != expected:
            raise ValueError(f"{path}: expected columns t, x1..xN, v1..vN")
        return cls(times=data[:, 0], displacements=data[:, 1 : n + 1].T, velocities=data[:, n + 1 :].T)


def _run_kernel(masses, damp, k_mat, k_cubic, f_amp, f_freq, y0, t_end, dt_out, config):
    if t_end <= 0.0 or dt_out <= 0.0:
        raise ValueError("t_end and dt_out must be positive")
    n_out = int(round(t_end / dt_out)) + 1
    if not np.isclose((n_out - 1) * dt_out, t_end, rtol=1e-9, atol=1e-12):
        raise ValueError(f"t_end={t_end} is not an integer multiple of dt_out={dt_out}")
    f_amp_vec = np.ascontiguousarray(
        np.broadcast_to(np.asarray(f_amp, dtype=np.float64), masses.shape)
    )
    status, raw = _dp45.integrate_grid(
        np.ascontiguousarray(masses, dtype=np.float64),
        np.ascontiguousarray(damp, dtype=np.float64),
        np.ascontiguousarray(k_mat, dtype=np.float64),
        np.ascontiguousarray(k_cubic, dtype=np.float64),
        f_amp_vec,
        float(f_freq),
        np.ascontiguousarray(y0, dtype=np.float64),
        float(dt_out),
        n_out,
        float(config.rel_tol),
        float(config.abs_tol),
        int(config.max_steps),
    )
    if status == 1:
        raise NonFiniteStateError("state or derivative became non-finite")
    if status == 2:
        raise StepSizeUnderflowError("required step size fell below time resolution")
    if status == 3:
        raise StepBudgetExceededError(f"exceeded {config.max_steps} steps")
    n = masses.shape[0]
    times = np.arange(n_out) * dt_out
    return Trajectory(times=times, displacements=raw[:, :n].T, velocities=raw[:, n:].T)


def integrate_system(
    masses: np.ndarray,
    alpha: float,
    k_mat: np.ndarray,
    k_cubic: np.ndarray,
    force_amp: float | np.ndarray,
    force_freq: float,
    x0: np.ndarray,
    t_end: float,
    dt_out: float,
    config: IntegratorConfig | None = None,
) -> Trajectory:
    """Integrate an explicit ``(masses, alpha, K, k_cubic)`` system.

    Accepts an arbitrary stiffness matrix and a scalar or per-node
    forcing amplitude, which admits non-reciprocal couplings and
    selectively driven nodes that ``ModelParams`` cannot express (used
    by the master-slave calibration fixture).
    """
    config = config or IntegratorConfig()
    masses = np.asarray(masses, dtype=float)
    k_cubic = np.asarray(k_cubic, dtype=float)
    k_mat = np.asarray(k_mat, dtype=float)
    x0 = np.asarray(x0, dtype=float)
    n = masses.shape[0]
    if k_mat.shape != (n, n) or k_cubic.shape != (n,):
        raise ValueError("inconsistent system dimensions")
    if x0.shape != (2 * n,):
        raise ValueError(f"initial state must have shape ({2 * n},), got {x0.shape}")
    if not np.all(np.isfinite(x0)):
        raise ValueError("initial state contains non-finite entries")
    return _run_kernel(
        masses, alpha * masses, k_mat, k_cubic, force_amp, force_freq, x0, t_end, dt_out, config
    )


def integrate(
    params: ModelParams,
    x0: np.ndarray,
    t_end: float,
    dt_out: float,
    config: IntegratorConfig | None = None,
) -> Trajectory:
    """Integrate the ring from initial state ``x0 = [x, v]``."""
    _, _, k_mat = assemble_matrices(params)
    return integrate_system(
        params.masses,
        params.alpha,
        k_mat,
        params.k_cubic,
        params.force_amp,
        params.force_freq,
        x0,
        t_end,
        dt_out,
        config,
    )
