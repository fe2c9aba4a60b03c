"""In-degrees, strongly connected components, and network condensation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .netinfer import FunctionalNetwork

__all__ = [
    "SCCPartition",
    "PartitionMismatchError",
    "in_degrees",
    "strongly_connected_components",
    "condense",
]


class PartitionMismatchError(ValueError):
    """Partition does not describe the given network's SCC structure."""


@dataclass(frozen=True)
class SCCPartition:
    """Disjoint strongly connected components covering all nodes.

    ``components`` are canonically ordered: nodes sorted within each
    component, components sorted by their smallest member.
    """

    components: tuple[tuple[int, ...], ...]
    component_of: np.ndarray

    @property
    def n_components(self) -> int:
        return len(self.components)

    def to_json_list(self) -> list[list[int]]:
        """Sorted node-index lists, 1-based labels."""
        return [[v + 1 for v in comp] for comp in self.components]


def in_degrees(net: FunctionalNetwork) -> np.ndarray:
    """Number of incoming links per node (column sums of the adjacency)."""
    return net.adjacency.sum(axis=0).astype(np.int64)


def strongly_connected_components(net: FunctionalNetwork) -> SCCPartition:
    """Tarjan's low-link algorithm with an explicit stack.

    The iterative formulation sidesteps recursion-depth limits so the
    same code serves much larger node counts than the default ring.
    """
    n = net.n_nodes
    succ = [np.flatnonzero(net.adjacency[v]).tolist() for v in range(n)]
    index = np.full(n, -1, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    on_stack = np.zeros(n, dtype=bool)
    stack: list[int] = []
    components: list[tuple[int, ...]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, child_pos = work[-1]
            if child_pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            descended = False
            for pos in range(child_pos, len(succ[v])):
                w = succ[v][pos]
                if index[w] == -1:
                    work[-1] = (v, pos + 1)
                    work.append((w, 0))
                    descended = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                components.append(tuple(sorted(comp)))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])

    components.sort(key=lambda comp: comp[0])
    component_of = np.empty(n, dtype=np.int64)
    for ci, comp in enumerate(components):
        for v in comp:
            component_of[v] = ci
    return SCCPartition(components=tuple(components), component_of=component_of)


def condense(net: FunctionalNetwork, p: SCCPartition) -> np.ndarray:
    """Component-level adjacency: edge A->B iff some member edge crosses.

    Raises PartitionMismatchError when ``p`` does not cover the nodes
    exactly once or when the result contains a cycle (which would mean
    the components were not maximal).
    """
    n = net.n_nodes
    if p.component_of.shape != (n,):
        raise PartitionMismatchError("partition covers a different node count")
    seen = sorted(v for comp in p.components for v in comp)
    if seen != list(range(n)):
        raise PartitionMismatchError("components are not a disjoint cover of the nodes")
    n_comp = p.n_components
    condensed = np.zeros((n_comp, n_comp), dtype=bool)
    for i, j in np.argwhere(net.adjacency):
        ci, cj = p.component_of[i], p.component_of[j]
        if ci != cj:
            condensed[ci, cj] = True

    # Kahn's algorithm; leftovers imply a cycle across components
    indeg = condensed.sum(axis=0).astype(np.int64)
    queue = [c for c in range(n_comp) if indeg[c] == 0]
    removed = 0
    while queue:
        c = queue.pop()
        removed += 1
        for d in np.flatnonzero(condensed[c]):
            indeg[d] -= 1
            if indeg[d] == 0:
                queue.append(int(d))
    if removed != n_comp:
        raise PartitionMismatchError("condensed graph is cyclic; partition is not the SCC partition")
    return condensed
