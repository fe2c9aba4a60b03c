"""Cross-recurrence construction and recurrence-network coupling measures.

A scalar time series is embedded into a point cloud; two clouds are
compared through the binary cross-recurrence matrix ``CR[p][q] = 1 iff
dist(a_p, b_q) <= eps``.  Interpreting ``CR`` together with the
self-recurrence structure of the second cloud as a bipartite network
yields cross-transitivity (global triangle closure) and per-node
cross-clustering coefficients, whose asymmetry between the two reading
directions carries coupling-direction information.

Triangle counting runs on bit-packed rows (AND + popcount), which is
exact integer arithmetic and keeps the all-pairs network inference fast
enough for ensemble parameter sweeps.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ._triples import closed_triples

__all__ = [
    "RecurrenceConfig",
    "CrossRecurrenceMatrix",
    "DegenerateSeriesError",
    "embed",
    "threshold_for_rate",
    "cross_recurrence_matrix",
    "recurrence_matrix",
    "cross_transitivity",
    "cross_clustering",
    "coupling_measures",
]

_METRICS = ("euclidean", "supremum")
_THRESHOLD_MODES = ("fixed-recurrence-rate", "fixed-epsilon")


class DegenerateSeriesError(ValueError):
    """Input with no usable distance structure (constant series or clouds)."""


@dataclass(frozen=True)
class RecurrenceConfig:
    """Embedding, thresholding and direction-rule settings.

    ``recurrence_rate`` is the target cross-recurrence density used in
    ``fixed-recurrence-rate`` mode (one shared epsilon per series pair);
    ``epsilon`` is only consulted in ``fixed-epsilon`` mode.
    ``direction_tol`` is the dead zone of the direction sign rule: pairs
    whose cross-transitivity difference falls inside it are treated as
    bidirectionally coupled.

    The default embedding, rate and dead zone are calibrated jointly
    against the oscillator-ring localization experiment. A (3, 8)
    time-delay embedding (window of a quarter forcing period at the
    0.05 s sampling) unfolds the driven dynamics enough that direction
    estimates barely move under 5% measurement noise, where raw scalar
    clouds flip marginal pairs; at rate 0.15 the detachment signal on
    the embedded clouds is large and sign-consistent (the one-way
    fixture's smallest |delta| is about 0.06, ten times the dead zone),
    and 0.006 absorbs the symmetric ring's sampling noise.
    """

    embed_dim: int = 3
    embed_delay: int = 8
    threshold_mode: str = "fixed-recurrence-rate"
    epsilon: float | None = None
    recurrence_rate: float = 0.15
    metric: str = "euclidean"
    direction_tol: float = 0.006

    def __post_init__(self) -> None:
        if self.embed_dim < 1 or self.embed_delay < 1:
            raise ValueError("embed_dim and embed_delay must be >= 1")
        if self.threshold_mode not in _THRESHOLD_MODES:
            raise ValueError(f"threshold_mode must be one of {_THRESHOLD_MODES}")
        if not 0.0 < self.recurrence_rate < 1.0:
            raise ValueError("recurrence_rate must lie in (0, 1)")
        if self.metric not in _METRICS:
            raise ValueError(f"metric must be one of {_METRICS}")
        if self.direction_tol < 0.0:
            raise ValueError("direction_tol must be >= 0")
        if self.threshold_mode == "fixed-epsilon":
            if self.epsilon is None or not self.epsilon > 0.0:
                raise ValueError("fixed-epsilon mode requires epsilon > 0")


@dataclass(frozen=True)
class CrossRecurrenceMatrix:
    """Binary recurrence pattern between two clouds plus bookkeeping."""

    entries: np.ndarray
    epsilon_used: float
    density: float

    def __post_init__(self) -> None:
        e = np.asarray(self.entries)
        if e.ndim != 2:
            raise ValueError("entries must be a 2-D matrix")
        object.__setattr__(self, "entries", e)


def embed(series: np.ndarray, dim: int, delay: int) -> np.ndarray:
    """Time-delay embedding; row k = (s[k], s[k+delay], ..., s[k+(dim-1)*delay])."""
    series = np.asarray(series, dtype=float)
    if series.ndim != 1:
        raise ValueError("series must be 1-D")
    if dim < 1 or delay < 1:
        raise ValueError("dim and delay must be >= 1")
    n_rows = series.shape[0] - (dim - 1) * delay
    if n_rows < 1:
        raise ValueError(
            f"series of length {series.shape[0]} too short for dim={dim}, delay={delay}"
        )
    cols = [series[k * delay : k * delay + n_rows] for k in range(dim)]
    return np.column_stack(cols)


def _distance_matrix(cloud_a: np.ndarray, cloud_b: np.ndarray, metric: str) -> np.ndarray:
    if cloud_a.shape[1] != cloud_b.shape[1]:
        raise ValueError(
            f"cloud dimensions differ: {cloud_a.shape[1]} vs {cloud_b.shape[1]}"
        )
    if cloud_a.shape[1] == 1:
        # dominant path (scalar embedding): plain broadcasted |a - b|
        return np.abs(cloud_a[:, 0, None] - cloud_b[None, :, 0])
    diff = np.abs(cloud_a[:, None, :] - cloud_b[None, :, :])
    if metric == "supremum":
        return diff.max(axis=2)
    return np.sqrt((diff * diff).sum(axis=2))


def _threshold_from_distances(dists: np.ndarray, rho: float) -> float:
    """k-th smallest distance with k = round(rho * count), clamped to >= 1."""
    dists = dists.ravel()
    if dists.max() == dists.min():
        raise DegenerateSeriesError("all pairwise distances equal; no threshold exists")
    k = int(round(rho * dists.size))
    k = min(max(k, 1), dists.size)
    return float(np.partition(dists, k - 1)[k - 1])


def threshold_for_rate(
    cloud_a: np.ndarray, cloud_b: np.ndarray, rho: float, metric: str = "euclidean"
) -> float:
    """Distance cut reproducing cross-recurrence density ``rho``.

    Returns the rho-quantile (k-th smallest of the P*Q cross-distances,
    k = round(rho*P*Q) clamped to [1, P*Q]), so the resulting density is
    within one matrix cell of the target.
    """
    if not 0.0 < rho < 1.0:
        raise ValueError("rho must lie in (0, 1)")
    cloud_a = np.atleast_2d(np.asarray(cloud_a, dtype=float))
    cloud_b = np.atleast_2d(np.asarray(cloud_b, dtype=float))
    return _threshold_from_distances(_distance_matrix(cloud_a, cloud_b, metric), rho)


def cross_recurrence_matrix(
    cloud_a: np.ndarray, cloud_b: np.ndarray, epsilon: float, metric: str = "euclidean"
) -> CrossRecurrenceMatrix:
    """Binary matrix of cross-distances within ``epsilon``."""
    cloud_a = np.atleast_2d(np.asarray(cloud_a, dtype=float))
    cloud_b = np.atleast_2d(np.asarray(cloud_b, dtype=float))
    dists = _distance_matrix(cloud_a, cloud_b, metric)
    entries = (dists <= epsilon).astype(np.uint8)
    density = float(entries.sum(dtype=np.int64)) / entries.size
    return CrossRecurrenceMatrix(entries=entries, epsilon_used=float(epsilon), density=density)


def recurrence_matrix(
    cloud: np.ndarray, epsilon: float, metric: str = "euclidean"
) -> np.ndarray:
    """Self-recurrence matrix with the diagonal forced to zero."""
    rec = cross_recurrence_matrix(cloud, cloud, epsilon, metric).entries.copy()
    np.fill_diagonal(rec, 0)
    return rec


def _triple_counts(cr_ab: np.ndarray, rec_b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-probe closed-triple and neighbour counts (exact integers).

    For probe v (row of cr_ab): closed[v] = number of ordered pairs
    (p, q), p != q, with cr[v][p], rec_b[p][q], cr[v][q] all set, and
    k[v] = number of neighbours of v in cloud B.
    """
    cr = np.asarray(cr_ab)
    closed = closed_triples(cr, rec_b).astype(np.float64)
    k = cr.astype(np.float64).sum(axis=1)
    return closed, k


def cross_transitivity(cr_ab: np.ndarray, rec_b: np.ndarray) -> float:
    """Fraction of cross-triples closed by a recurrence link in cloud B.

    Ordered triples (v, p, q) with p != q are counted on both sides of
    the fraction.  A denominator of zero (no probe sees two neighbours)
    is flagged with a RuntimeWarning and yields 0.
    """
    closed, k = _triple_counts(cr_ab, rec_b)
    denom = float((k * (k - 1.0)).sum())
    if denom == 0.0:
        warnings.warn("cross-transitivity undefined: no cross-triples", RuntimeWarning)
        return 0.0
    return float(closed.sum()) / denom


def cross_clustering(
    cr_ab: np.ndarray, rec_b: np.ndarray
) -> tuple[np.ndarray, float]:
    """Per-probe clustering coefficients and their mean.

    C_v = closed triples at v / (k_v (k_v - 1)); probes with fewer than
    two neighbours contribute 0.
    """
    closed, k = _triple_counts(cr_ab, rec_b)
    denom = k * (k - 1.0)
    per_node = np.where(denom > 0.0, closed / np.where(denom > 0.0, denom, 1.0), 0.0)
    return per_node, float(per_node.mean())


def coupling_measures(cr_ab: np.ndarray, rec_b: np.ndarray) -> tuple[float, float]:
    """Cross-transitivity and mean cross-clustering in one counting pass.

    Identical to calling ``cross_transitivity`` and ``cross_clustering``
    separately; the all-pairs inference loop calls this to avoid
    recounting the same triples.
    """
    closed, k = _triple_counts(cr_ab, rec_b)
    denom = k * (k - 1.0)
    total = float(denom.sum())
    if total == 0.0:
        warnings.warn("cross-transitivity undefined: no cross-triples", RuntimeWarning)
        transitivity = 0.0
    else:
        transitivity = float(closed.sum()) / total
    per_node = np.where(denom > 0.0, closed / np.where(denom > 0.0, denom, 1.0), 0.0)
    return transitivity, float(per_node.mean())
