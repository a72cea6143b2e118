"""Numerical certification of walk invariants on concrete instances.

Each check runs real simulations, measures the worst deviation from the
claimed identity, and returns a PropertyReport whose verdict is pass iff
that deviation is within the check's tolerance.  Instances violating a
check's preconditions are rejected with ValueError rather than certified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import CirculantSpec, DirectedGraph, bipartition, weakly_connected_components
from .operators import CouplingSeries
from .walk import DEFAULT_TIME_GRID, TimeGrid, localized_state, run_walk

TOL_SUPPRESSION = 1e-10
TOL_MIRROR = 1e-9
TOL_STATIONARY = 1e-10
TOL_CANCELLATION = 1e-9

HALF_PI = math.pi / 2.0


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of one property check on one instance."""

    name: str
    instance: str
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance

    def line(self) -> str:
        verdict = "pass" if self.passed else "fail"
        return f"{self.name},{self.instance},{self.deviation:.17g},{self.tolerance:g},{verdict}"


def _graph_of(graph_or_spec) -> DirectedGraph:
    if isinstance(graph_or_spec, CirculantSpec):
        return graph_or_spec.to_graph()
    if isinstance(graph_or_spec, DirectedGraph):
        return graph_or_spec
    raise TypeError(f"expected DirectedGraph or CirculantSpec, got {type(graph_or_spec)!r}")


def _default_label(graph_or_spec) -> str:
    if isinstance(graph_or_spec, CirculantSpec):
        return f"circulant-n{graph_or_spec.n}"
    return f"graph-n{graph_or_spec.n}"


def check_transport_suppression(
    graph_or_spec,
    series: CouplingSeries,
    grid: TimeGrid = DEFAULT_TIME_GRID,
    partition=None,
    label: str | None = None,
) -> PropertyReport:
    """At alpha = pi/2, walks started in one partition never cross to the other.

    Without an explicit ``partition`` the graph must be bipartite.  With one,
    every edge joining two nodes of the same side must be bidirected (those
    pairs cancel in A_H(pi/2)); the given side is then walked from each of
    its nodes and the probability on the complement is the deviation.
    """
    graph = _graph_of(graph_or_spec)
    if partition is None:
        parts = bipartition(graph)
        if parts is None:
            raise ValueError(
                "graph is not bipartite; pass an explicit partition whose "
                "intra-partition edges are all bidirected"
            )
        starts = parts.even
        others = parts.odd
    else:
        starts = tuple(sorted({int(i) for i in partition}))
        if not starts or any(not (0 <= i < graph.n) for i in starts):
            raise ValueError(f"partition must be a nonempty subset of 0..{graph.n - 1}")
        side = set(starts)
        others = tuple(i for i in range(graph.n) if i not in side)
        for i, j in graph.edges:
            if (i in side) == (j in side) and (j, i) not in graph.edges:
                raise ValueError(
                    f"edge ({i}, {j}) joins one partition side but is not bidirected"
                )
    deviation = 0.0
    for start in starts:
        result = run_walk(graph_or_spec, HALF_PI, series, start, grid)
        if others:
            deviation = max(deviation, float(result.probabilities[:, others].max()))
    return PropertyReport(
        "suppression", label or _default_label(graph_or_spec), deviation, TOL_SUPPRESSION
    )


def _state_parity(initial, n: int) -> int | None:
    """0/1 when the state is supported on a single index parity, else None."""
    if isinstance(initial, (int, np.integer)):
        return int(initial) % 2
    support = np.nonzero(np.abs(np.asarray(initial)) > 0.0)[0]
    parities = {int(i) % 2 for i in support}
    return parities.pop() if len(parities) == 1 else None


def _is_bipartite_spec(c: CirculantSpec) -> bool:
    return c.n % 2 == 0 and all(c.coefficients[k] == 0.0 for k in range(0, c.n, 2))


def check_mirror_symmetries(
    graph_or_spec,
    series: CouplingSeries,
    deltas,
    initial=0,
    grid: TimeGrid = DEFAULT_TIME_GRID,
    half_pi_branch: bool | None = None,
    label: str | None = None,
) -> PropertyReport:
    """Probability fields are even in alpha, and mirror about pi/2 on
    bipartite circulants.

    The alpha -> -alpha branch runs for every delta in ``deltas`` on any
    input.  The pi/2 branch (P at pi/2 + delta vs pi/2 - delta, plus the
    implied pi-periodicity) needs a bipartite circulant spec and an initial
    state supported on a single index parity; ``half_pi_branch`` forces it
    on (ValueError when the preconditions fail), off, or automatic (None).
    """
    deltas = [float(d) for d in deltas]
    if not deltas:
        raise ValueError("need at least one delta")
    eligible = isinstance(graph_or_spec, CirculantSpec) and _is_bipartite_spec(graph_or_spec)
    n = graph_or_spec.n
    eligible = eligible and _state_parity(initial, n) is not None
    if half_pi_branch is True and not eligible:
        raise ValueError(
            "pi/2 mirror branch needs a bipartite circulant spec and a "
            "single-parity initial state"
        )
    run_half_pi = eligible if half_pi_branch is None else half_pi_branch
    deviation = 0.0
    for delta in deltas:
        p_plus = run_walk(graph_or_spec, delta, series, initial, grid).probabilities
        p_minus = run_walk(graph_or_spec, -delta, series, initial, grid).probabilities
        deviation = max(deviation, float(np.max(np.abs(p_plus - p_minus))))
        if run_half_pi:
            q_plus = run_walk(graph_or_spec, HALF_PI + delta, series, initial, grid)
            q_minus = run_walk(graph_or_spec, HALF_PI - delta, series, initial, grid)
            deviation = max(
                deviation,
                float(np.max(np.abs(q_plus.probabilities - q_minus.probabilities))),
            )
            p_shift = run_walk(graph_or_spec, delta + math.pi, series, initial, grid)
            deviation = max(
                deviation, float(np.max(np.abs(p_plus - p_shift.probabilities)))
            )
    return PropertyReport(
        "mirror", label or _default_label(graph_or_spec), deviation, TOL_MIRROR
    )


def check_stationary_at_half_pi(
    graph_or_spec,
    series: CouplingSeries,
    initial=0,
    grid: TimeGrid = DEFAULT_TIME_GRID,
    label: str | None = None,
) -> PropertyReport:
    """Symmetric graphs freeze at alpha = pi/2: P(i, t) = P(i, 0) for all t."""
    if isinstance(graph_or_spec, CirculantSpec):
        symmetric = graph_or_spec.is_reversal_symmetric
    else:
        symmetric = _graph_of(graph_or_spec).is_symmetric
    if not symmetric:
        raise ValueError("stationarity at pi/2 needs an undirected graph (A = A^T)")
    result = run_walk(graph_or_spec, HALF_PI, series, initial, grid)
    deviation = float(np.max(np.abs(result.probabilities - result.probabilities[0])))
    return PropertyReport(
        "stationary", label or _default_label(graph_or_spec), deviation, TOL_STATIONARY
    )


def check_bidirected_edge_cancellation(
    first,
    second,
    series: CouplingSeries,
    initial=0,
    grid: TimeGrid = DEFAULT_TIME_GRID,
    label: str | None = None,
) -> PropertyReport:
    """Graphs differing only by bidirected edge pairs walk identically at pi/2."""
    g1 = _graph_of(first)
    g2 = _graph_of(second)
    if g1.n != g2.n:
        raise ValueError(f"graphs must share a node count, got {g1.n} and {g2.n}")
    for only, name in ((g1.edges - g2.edges, "first"), (g2.edges - g1.edges, "second")):
        for i, j in only:
            if (j, i) not in only:
                raise ValueError(
                    f"edge ({i}, {j}) unique to the {name} graph is not part of a "
                    "bidirected pair"
                )
    p1 = run_walk(first, HALF_PI, series, initial, grid).probabilities
    p2 = run_walk(second, HALF_PI, series, initial, grid).probabilities
    deviation = float(np.max(np.abs(p1 - p2)))
    return PropertyReport(
        "cancellation",
        label or f"{_default_label(first)}|{_default_label(second)}",
        deviation,
        TOL_CANCELLATION,
    )


def random_bipartite_graph(rng: np.random.Generator, max_nodes: int = 16) -> DirectedGraph:
    """Weakly-connected random bipartite digraph on 2..max_nodes nodes.

    Partition sizes are uniform over 1 <= p <= n-1 (side one is nodes 0..p-1)
    and each cross edge appears in each direction with probability 1/2;
    disconnected draws are rejected and redrawn.
    """
    if max_nodes < 2:
        raise ValueError("need max_nodes >= 2")
    n = int(rng.integers(2, max_nodes + 1))
    p = int(rng.integers(1, n))
    for _ in range(10000):
        edges = set()
        for i in range(p):
            for j in range(p, n):
                if rng.random() < 0.5:
                    edges.add((i, j))
                if rng.random() < 0.5:
                    edges.add((j, i))
        g = DirectedGraph(n, frozenset(edges))
        if len(weakly_connected_components(g)) == 1:
            return g
    raise RuntimeError("failed to draw a connected bipartite graph")


def random_directed_graph(rng: np.random.Generator, max_nodes: int = 10) -> DirectedGraph:
    """Random digraph on 2..max_nodes nodes; each ordered pair has probability 1/2."""
    if max_nodes < 2:
        raise ValueError("need max_nodes >= 2")
    n = int(rng.integers(2, max_nodes + 1))
    edges = {
        (i, j)
        for i in range(n)
        for j in range(n)
        if i != j and rng.random() < 0.5
    }
    return DirectedGraph(n, frozenset(edges))


def random_polynomial_series(rng: np.random.Generator, max_degree: int = 5) -> CouplingSeries:
    """Random explicit polynomial of degree <= max_degree, coefficients in [-1, 1]."""
    degree = int(rng.integers(0, max_degree + 1))
    return CouplingSeries.polynomial(rng.uniform(-1.0, 1.0, size=degree + 1))
