"""Ring of mass-coupled Duffing oscillators.

The mechanical system is ``M x'' + D x' + K x + F_nl(x) = f(t)`` with

* ``M = diag(m_i)`` the oscillator masses,
* ``D = diag(alpha * m_i)`` mass-proportional damping,
* ``K`` the circulant-like linear stiffness matrix of a closed ring
  (on-site stiffness ``k_lin_i`` on the diagonal, ``-k_coupling``
  between neighbours, including the wrap-around pair),
* ``F_nl(x)_i = k_cubic_i * x_i**3`` the hardening spring force,
* ``f(t) = force_amp * cos(force_freq * t)`` applied to every mass.

State vectors stack displacements first, velocities second:
``y = [x_1..x_N, v_1..v_N]``.

The default on-site stiffness is a calibrated constant: it is chosen so
that, with the other defaults, detuning one oscillator's mass produces
the documented localization boundary (localized vibration for every
sampled initial condition once the mass falls below roughly 0.877).
Each oscillator stays individually bistable at this value, which the
localization mechanism requires.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ModelParams",
    "assemble_matrices",
    "nonlinear_force",
    "equations_of_motion",
    "perturb_params",
]

_VECTOR_FIELDS = ("masses", "k_lin", "k_cubic")


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters of the oscillator ring.

    ``masses``, ``k_lin`` and ``k_cubic`` accept a scalar (replicated to
    every oscillator) or a length ``n_osc`` sequence.  Defaults reproduce
    the homogeneous reference ring.
    """

    n_osc: int = 10
    masses: np.ndarray | float = 1.0
    alpha: float = 0.1
    k_lin: np.ndarray | float = 1.125
    k_coupling: float = 0.1
    k_cubic: np.ndarray | float = 2.0
    force_amp: float = 1.0
    force_freq: float = 2.0

    def __post_init__(self) -> None:
        if int(self.n_osc) != self.n_osc or self.n_osc < 2:
            raise ValueError(f"n_osc must be an integer >= 2, got {self.n_osc!r}")
        object.__setattr__(self, "n_osc", int(self.n_osc))
        for name in _VECTOR_FIELDS:
            raw = np.asarray(getattr(self, name), dtype=float)
            if raw.ndim == 0:
                vec = np.full(self.n_osc, float(raw))
            elif raw.shape == (self.n_osc,):
                vec = raw.copy()
            else:
                raise ValueError(
                    f"{name} must be a scalar or have length n_osc={self.n_osc}, "
                    f"got shape {raw.shape}"
                )
            if not np.all(np.isfinite(vec)):
                raise ValueError(f"{name} contains non-finite entries")
            vec.setflags(write=False)
            object.__setattr__(self, name, vec)
        if np.any(self.masses <= 0.0):
            raise ValueError("masses must be strictly positive")
        if np.any(self.k_lin < 0.0) or np.any(self.k_cubic < 0.0):
            raise ValueError("stiffness coefficients must be non-negative")
        for name in ("alpha", "k_coupling", "force_amp", "force_freq"):
            val = float(getattr(self, name))
            if not np.isfinite(val):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, val)
        if self.alpha < 0.0:
            raise ValueError("alpha must be non-negative")
        if self.k_coupling < 0.0:
            raise ValueError("k_coupling must be non-negative")

    @property
    def n_state(self) -> int:
        return 2 * self.n_osc


def assemble_matrices(params: ModelParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return the dense ``(M, D, K)`` system matrices.

    ``K`` puts the on-site stiffness ``k_lin_i`` on the diagonal and
    couples ring neighbours additively, so every row sums to
    ``k_lin_i - 2 k_coupling`` even for the degenerate two-oscillator
    ring where both neighbour relations hit the same off-diagonal entry.
    """
    n = params.n_osc
    m_mat = np.diag(params.masses)
    d_mat = np.diag(params.alpha * params.masses)
    k_mat = np.diag(params.k_lin)
    idx = np.arange(n)
    np.add.at(k_mat, (idx, (idx + 1) % n), -params.k_coupling)
    np.add.at(k_mat, (idx, (idx - 1) % n), -params.k_coupling)
    return m_mat, d_mat, k_mat


def nonlinear_force(x: np.ndarray, k_cubic: np.ndarray | float) -> np.ndarray:
    """Elementwise hardening restoring force ``k_cubic * x**3``."""
    x = np.asarray(x, dtype=float)
    return np.asarray(k_cubic, dtype=float) * x**3


def equations_of_motion(t: float, state: np.ndarray, params: ModelParams) -> np.ndarray:
    """First-order right-hand side ``d/dt [x, v]`` for the forced ring."""
    state = np.asarray(state, dtype=float)
    n = params.n_osc
    if state.shape != (2 * n,):
        raise ValueError(f"state must have shape ({2 * n},), got {state.shape}")
    x = state[:n]
    v = state[n:]
    _, _, k_mat = assemble_matrices(params)
    forcing = params.force_amp * np.cos(params.force_freq * t)
    acc = (
        forcing
        - params.alpha * params.masses * v
        - k_mat @ x
        - nonlinear_force(x, params.k_cubic)
    ) / params.masses
    return np.concatenate([v, acc])


def perturb_params(
    params: ModelParams, level: float, rng: np.random.Generator
) -> ModelParams:
    """Multiplicatively jitter masses and spring constants.

    Each entry of ``masses``, ``k_lin`` and ``k_cubic`` is scaled by an
    independent factor drawn uniformly from ``[1 - level, 1 + level]``.
    Damping ratio, neighbour coupling and forcing stay exact.  The draw
    order is fixed (one ``(3, n_osc)`` uniform block) so a seeded
    generator always yields the same perturbation.
    """
    if not 0.0 <= level < 1.0:
        raise ValueError(f"jitter level must be in [0, 1), got {level}")
    if level == 0.0:
        return params
    factors = rng.uniform(1.0 - level, 1.0 + level, size=(3, params.n_osc))
    return dataclasses.replace(
        params,
        masses=params.masses * factors[0],
        k_lin=params.k_lin * factors[1],
        k_cubic=params.k_cubic * factors[2],
    )
