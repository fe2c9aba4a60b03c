"""Render and parse the on-disk artifact formats.

All renderers are pure functions from result objects to text, so two
sweeps with equal results emit byte-identical files.  CSV floats use
the shortest representation that round-trips exactly (``repr``), which
keeps regression diffs meaningful.  Node and case labels follow the
presentation convention: nodes are 1-based, ic_index 0 is the reference
state and 1..M the random ensemble.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .experiment import DetectionReport, SweepResult
from .netinfer import FunctionalNetwork, PairMeasures

__all__ = [
    "render_degrees_csv",
    "render_stats_csv",
    "render_scc_json",
    "render_report_json",
    "render_network_json",
    "render_pair_table_csv",
    "render_edge_list",
    "parse_stats_csv",
    "parse_scc_json",
    "component_table",
]


def _f(value: float) -> str:
    return repr(float(value))


def render_degrees_csv(result: SweepResult) -> str:
    """Per-cell node in-degrees; failed cells are omitted."""
    lines = ["m4,ic_index,node,in_degree"]
    n_cases = result.in_degrees.shape[1]
    first_case = 0 if result.has_reference() else 1
    for iv, m4 in enumerate(result.values):
        for ic in range(first_case, n_cases):
            if not result.cell_ok(iv, ic):
                continue
            for node in range(result.n_osc):
                lines.append(
                    f"{_f(m4)},{ic},{node + 1},{result.in_degrees[iv, ic, node]}"
                )
    return "\n".join(lines) + "\n"


def render_stats_csv(result: SweepResult) -> str:
    """Ensemble mean/std of in-degree per sweep value and node."""
    lines = ["m4,node,mean,std"]
    for iv, m4 in enumerate(result.values):
        st = result.stats(iv)
        for node in range(result.n_osc):
            lines.append(f"{_f(m4)},{node + 1},{_f(st.mean[node])},{_f(st.std[node])}")
    return "\n".join(lines) + "\n"


def render_scc_json(result: SweepResult) -> str:
    """Component partitions for every cell, plus the failure log.

    ``partitions[iv][ic]`` lists components as sorted 1-based node
    lists, or is null for a failed (or absent reference) cell.
    """
    n_cases = result.in_degrees.shape[1]
    partitions = []
    for iv in range(len(result.values)):
        row = []
        for ic in range(n_cases):
            part = result.partitions[iv][ic]
            row.append(None if part is None else part.to_json_list())
        partitions.append(row)
    payload = {
        "reference": result.config.reference,
        "ensemble_size": result.config.ensemble_size,
        "values": [float(v) for v in result.values],
        "partitions": partitions,
        "failures": [list(f) for f in result.failures],
    }
    return json.dumps(payload, separators=(",", ":")) + "\n"


def render_report_json(report: DetectionReport) -> str:
    return json.dumps(report.to_json_dict(), indent=2) + "\n"


def render_network_json(net: FunctionalNetwork, measures: list[PairMeasures]) -> str:
    """Directed edges plus the per-pair evidence they were derived from."""
    payload = net.to_json_dict()
    payload["pairs"] = [
        {
            "i": pm.i + 1,
            "j": pm.j + 1,
            "epsilon": pm.epsilon,
            "t_ij": pm.t_ij,
            "t_ji": pm.t_ji,
            "delta": pm.delta,
            "c_ij": pm.c_ij,
            "c_ji": pm.c_ji,
            "decision": pm.direction.value,
        }
        for pm in measures
    ]
    return json.dumps(payload, indent=2) + "\n"


def render_pair_table_csv(measures: list[PairMeasures]) -> str:
    lines = ["i,j,epsilon,t_ij,t_ji,delta,c_ij,c_ji,decision"]
    for pm in measures:
        lines.append(
            ",".join(
                [
                    str(pm.i + 1),
                    str(pm.j + 1),
                    _f(pm.epsilon),
                    _f(pm.t_ij),
                    _f(pm.t_ji),
                    _f(pm.delta),
                    _f(pm.c_ij),
                    _f(pm.c_ji),
                    pm.direction.value,
                ]
            )
        )
    return "\n".join(lines) + "\n"


def render_edge_list(net: FunctionalNetwork) -> str:
    return "".join(f"{i + 1} {j + 1}\n" for i, j in net.edges())


def parse_stats_csv(text: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Invert render_stats_csv: (values, means, stds) in traversal order.

    ``means`` and ``stds`` have shape (n_values, n_nodes).
    """
    reader = csv.DictReader(io.StringIO(text))
    values: list[float] = []
    rows: dict[float, dict[int, tuple[float, float]]] = {}
    for rec in reader:
        m4 = float(rec["m4"])
        if m4 not in rows:
            values.append(m4)
            rows[m4] = {}
        rows[m4][int(rec["node"])] = (float(rec["mean"]), float(rec["std"]))
    if not values:
        raise ValueError("stats CSV contains no data rows")
    nodes = sorted(rows[values[0]])
    means = np.array([[rows[v][n][0] for n in nodes] for v in values])
    stds = np.array([[rows[v][n][1] for n in nodes] for v in values])
    return np.array(values), means, stds


def parse_scc_json(text: str) -> dict:
    return json.loads(text)


def component_table(scc_data: dict, ic_index: int = 0) -> np.ndarray:
    """Component index per (sweep value, node) for one case.

    Components are numbered in the stored canonical order (sorted by
    smallest member); failed cells give -1 rows.  Rebuilt purely from
    scc.json content so charts can be regenerated offline.
    """
    values = scc_data["values"]
    n_values = len(values)
    first = next(
        (
            row[ic_index]
            for row in scc_data["partitions"]
            if row[ic_index] is not None
        ),
        None,
    )
    if first is None:
        raise ValueError(f"case {ic_index} failed at every sweep value")
    n_nodes = sum(len(comp) for comp in first)
    table = np.full((n_values, n_nodes), -1, dtype=np.int64)
    for iv in range(n_values):
        part = scc_data["partitions"][iv][ic_index]
        if part is None:
            continue
        for ci, comp in enumerate(part):
            for node in comp:
                table[iv, node - 1] = ci
    return table
