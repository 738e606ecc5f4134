"""Typed undirected networks with direct and indirect compromise probabilities.

A network holds N nodes, each with a type index and a probability ``p`` of
being compromised directly (by an attack from outside the network). Each
undirected edge ``{u, v}`` carries two directed probabilities ``q[(u, v)]``
and ``q[(v, u)]``: the chance that a compromised endpoint compromises the
other one in a single propagation attempt. Pairs without an edge have an
implicit q of zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "NetworkModel",
    "build_network",
    "induced_subnetwork",
    "generate_ba",
    "assign_types_by_degree",
    "with_type_probabilities",
    "complete_network",
    "star_network",
    "complete_bipartite_network",
    "load_json",
    "save_json",
]

Edge = tuple[int, int]


def _canon(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class NetworkModel:
    """Immutable network with typed nodes and compromise probabilities.

    Construct through :func:`build_network` (which validates all invariants)
    rather than directly. ``node_ids`` are unique and ascending; built
    networks use the dense labels ``0..N-1``, while induced subnetworks keep
    the ids of their parent. ``q`` holds an entry for every ordered pair on
    every edge.
    """

    node_ids: tuple[int, ...]
    types: tuple[int, ...]
    p: tuple[float, ...]
    edges: frozenset[Edge]
    q: Mapping[Edge, float]
    num_types: int

    @property
    def n_nodes(self) -> int:
        return len(self.node_ids)

    @cached_property
    def index_of(self) -> dict[int, int]:
        """Node id -> position in ``node_ids`` (also the bitmask position)."""
        return {v: i for i, v in enumerate(self.node_ids)}

    @cached_property
    def type_sizes(self) -> tuple[int, ...]:
        sizes = [0] * self.num_types
        for t in self.types:
            sizes[t] += 1
        return tuple(sizes)

    @cached_property
    def neighbors(self) -> dict[int, tuple[int, ...]]:
        nbr: dict[int, list[int]] = {v: [] for v in self.node_ids}
        for u, v in self.edges:
            nbr[u].append(v)
            nbr[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in nbr.items()}

    @cached_property
    def in_edges(self) -> dict[int, tuple[tuple[int, float], ...]]:
        """Per target node: ``(source, q[source -> target])`` sorted by source."""
        inc: dict[int, list[tuple[int, float]]] = {v: [] for v in self.node_ids}
        for u, v in self.edges:
            inc[v].append((u, self.q[(u, v)]))
            inc[u].append((v, self.q[(v, u)]))
        return {v: tuple(sorted(es)) for v, es in inc.items()}

    @cached_property
    def out_edges(self) -> dict[int, tuple[tuple[int, float], ...]]:
        """Per source node: ``(target, q[source -> target])`` sorted by target."""
        out: dict[int, list[tuple[int, float]]] = {v: [] for v in self.node_ids}
        for u, v in self.edges:
            out[u].append((v, self.q[(u, v)]))
            out[v].append((u, self.q[(v, u)]))
        return {v: tuple(sorted(es)) for v, es in out.items()}

    def degree(self, node: int) -> int:
        return len(self.neighbors[node])

    def q_value(self, source: int, target: int) -> float:
        return self.q.get((source, target), 0.0)


def build_network(
    node_specs: Iterable[tuple[int, int, float]],
    edge_specs: Iterable[tuple[int, int]],
    q: float | Mapping[Edge, float] | None = None,
) -> NetworkModel:
    """Validate specs and assemble a :class:`NetworkModel`.

    ``node_specs`` are ``(id, type, p)`` triples with dense ids ``0..N-1``.
    ``edge_specs`` are unordered node pairs. ``q`` is either a single
    probability applied to every directed pair on every edge, or a mapping
    from ordered pairs to probabilities (missing pairs default to 0); pairs
    off an edge are rejected.
    """
    nodes = sorted(node_specs)
    if not nodes:
        raise ValueError("network must have at least one node")
    ids = [n[0] for n in nodes]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate node ids")
    if ids != list(range(len(ids))):
        raise ValueError("node ids must be dense 0..N-1")
    types = tuple(int(n[1]) for n in nodes)
    if min(types) < 0:
        raise ValueError("type indices must be non-negative")
    num_types = max(types) + 1
    for t in range(num_types):
        if t not in types:
            raise ValueError(f"type {t} has no nodes")
    p = tuple(float(n[2]) for n in nodes)
    for i, pi in enumerate(p):
        if not 0.0 <= pi <= 1.0:
            raise ValueError(f"p for node {i} out of [0, 1]: {pi}")

    id_set = set(ids)
    edges: set[Edge] = set()
    for u, v in edge_specs:
        if u == v:
            raise ValueError(f"self-loop on node {u}")
        if u not in id_set or v not in id_set:
            raise ValueError(f"edge ({u}, {v}) references unknown node")
        edges.add(_canon(u, v))

    qmap: dict[Edge, float] = {}
    if q is None or isinstance(q, (int, float)):
        fill = 0.0 if q is None else float(q)
        for u, v in edges:
            qmap[(u, v)] = fill
            qmap[(v, u)] = fill
    else:
        for (i, j), qij in q.items():
            if _canon(i, j) not in edges:
                raise ValueError(f"q given for ({i}, {j}) but {{{i}, {j}}} is not an edge")
            qmap[(i, j)] = float(qij)
        for u, v in edges:
            qmap.setdefault((u, v), 0.0)
            qmap.setdefault((v, u), 0.0)
    for pair, qij in qmap.items():
        if not 0.0 <= qij <= 1.0:
            raise ValueError(f"q for {pair} out of [0, 1]: {qij}")

    return NetworkModel(
        node_ids=tuple(ids),
        types=types,
        p=p,
        edges=frozenset(edges),
        q=qmap,
        num_types=num_types,
    )


def induced_subnetwork(net: NetworkModel, nodes: Iterable[int]) -> NetworkModel:
    """Restrict to ``nodes``: kept edges are those with both endpoints inside.

    Node ids, p and q values are inherited, so the result of restricting to
    the full node set compares equal to the original. Types that lose all
    their members stay as (empty) types, keeping count dimensions aligned
    with the parent network.
    """
    keep = set(nodes)
    unknown = keep - set(net.node_ids)
    if unknown:
        raise ValueError(f"unknown node ids: {sorted(unknown)}")
    kept_ids = tuple(v for v in net.node_ids if v in keep)
    idx = net.index_of
    edges = frozenset(e for e in net.edges if e[0] in keep and e[1] in keep)
    qmap = {}
    for u, v in edges:
        qmap[(u, v)] = net.q[(u, v)]
        qmap[(v, u)] = net.q[(v, u)]
    return NetworkModel(
        node_ids=kept_ids,
        types=tuple(net.types[idx[v]] for v in kept_ids),
        p=tuple(net.p[idx[v]] for v in kept_ids),
        edges=edges,
        q=qmap,
        num_types=net.num_types,
    )


def _seed_edges(n_init: int, topology: str) -> set[Edge]:
    if topology == "complete":
        return set(combinations(range(n_init), 2))
    if topology == "star":
        return {(0, i) for i in range(1, n_init)}
    if topology == "path":
        return {(i, i + 1) for i in range(n_init - 1)}
    raise ValueError(f"unknown seed topology: {topology!r}")


def generate_ba(
    n: int,
    m_attach: int,
    n_init: int,
    rng_seed: int,
    seed_topology: str = "complete",
) -> NetworkModel:
    """Grow a preferential-attachment (Barabasi-Albert) graph.

    Starts from a seed graph on ``n_init`` nodes (complete by default), then
    adds nodes one at a time, each connecting to ``m_attach`` distinct
    existing nodes sampled without replacement with probability proportional
    to current degree. Deterministic for a fixed ``rng_seed``. All nodes get
    type 0 and zero probabilities; assign types and probabilities afterwards.
    """
    if m_attach < 1:
        raise ValueError("m_attach must be >= 1")
    if n_init < m_attach:
        raise ValueError("n_init must be >= m_attach")
    if n < n_init:
        raise ValueError("n must be >= n_init")
    rng = np.random.default_rng(rng_seed)
    edges = _seed_edges(n_init, seed_topology)
    degree = np.zeros(n, dtype=float)
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    for s in range(n_init, n):
        chosen: list[int] = []
        for _ in range(m_attach):
            w = degree[:s].copy()
            w[chosen] = 0.0
            total = w.sum()
            if total > 0:
                probs = w / total
            else:
                # all remaining candidates isolated: fall back to uniform
                probs = np.ones(s)
                probs[chosen] = 0.0
                probs /= probs.sum()
            chosen.append(int(rng.choice(s, p=probs)))
        for t in chosen:
            edges.add(_canon(s, t))
            degree[t] += 1
            degree[s] += 1
    node_specs = [(i, 0, 0.0) for i in range(n)]
    return build_network(node_specs, edges)


def assign_types_by_degree(net: NetworkModel, top_k: int) -> NetworkModel:
    """Mark the ``top_k`` highest-degree nodes as type 0, the rest as type 1.

    Degree ties break toward the smaller node id so the split is reproducible.
    """
    n = net.n_nodes
    if not 0 < top_k < n:
        raise ValueError(f"top_k must be in 1..{n - 1}")
    ranked = sorted(net.node_ids, key=lambda v: (-net.degree(v), v))
    top = set(ranked[:top_k])
    types = tuple(0 if v in top else 1 for v in net.node_ids)
    return replace(net, types=types, num_types=2)


def with_type_probabilities(
    net: NetworkModel,
    p_by_type: Sequence[float],
    q_by_type: Sequence[float],
) -> NetworkModel:
    """Set per-node p and per-directed-edge q from per-type values.

    ``p_by_type[t]`` becomes the direct-compromise probability of every type-t
    node; ``q_by_type[t]`` the per-attempt probability with which a compromised
    type-t node propagates, i.e. q for a directed pair is keyed by the
    *source's* type.
    """
    if len(p_by_type) != net.num_types or len(q_by_type) != net.num_types:
        raise ValueError(f"need exactly {net.num_types} per-type values")
    for val in list(p_by_type) + list(q_by_type):
        if not 0.0 <= val <= 1.0:
            raise ValueError(f"probability out of [0, 1]: {val}")
    idx = net.index_of
    p = tuple(float(p_by_type[net.types[idx[v]]]) for v in net.node_ids)
    qmap = {}
    for u, v in net.edges:
        qmap[(u, v)] = float(q_by_type[net.types[idx[u]]])
        qmap[(v, u)] = float(q_by_type[net.types[idx[v]]])
    return replace(net, p=p, q=qmap)


def complete_network(
    type_sizes: Sequence[int], p: float, q: float
) -> NetworkModel:
    """Complete graph with homogeneous probabilities; types laid out in blocks."""
    node_specs = []
    node = 0
    for t, size in enumerate(type_sizes):
        if size <= 0:
            raise ValueError("type sizes must be positive")
        for _ in range(size):
            node_specs.append((node, t, p))
            node += 1
    return build_network(node_specs, combinations(range(node), 2), q=q)


def star_network(
    n: int, p_hub: float, p_leaf: float, q_hub_to_leaf: float, q_leaf_to_hub: float
) -> NetworkModel:
    """Star on ``n`` nodes: hub is node 0 (type 0), leaves are type 1."""
    if n < 2:
        raise ValueError("a star needs at least 2 nodes")
    node_specs = [(0, 0, p_hub)] + [(i, 1, p_leaf) for i in range(1, n)]
    edges = [(0, i) for i in range(1, n)]
    q = {}
    for i in range(1, n):
        q[(0, i)] = q_hub_to_leaf
        q[(i, 0)] = q_leaf_to_hub
    return build_network(node_specs, edges, q=q)


def complete_bipartite_network(
    n1: int, n2: int, p1: float, p2: float, q_1_to_2: float, q_2_to_1: float
) -> NetworkModel:
    """Complete bipartite graph: nodes 0..n1-1 are type 0, the rest type 1."""
    if n1 < 1 or n2 < 1:
        raise ValueError("both sides must be nonempty")
    node_specs = [(i, 0, p1) for i in range(n1)]
    node_specs += [(n1 + j, 1, p2) for j in range(n2)]
    edges = []
    q = {}
    for i in range(n1):
        for j in range(n1, n1 + n2):
            edges.append((i, j))
            q[(i, j)] = q_1_to_2
            q[(j, i)] = q_2_to_1
    return build_network(node_specs, edges, q=q)


def load_json(path: str) -> NetworkModel:
    """Load a network from the JSON schema written by :func:`save_json`."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "nodes" not in doc:
        raise ValueError(f"{path}: missing 'nodes' key")
    if "edges" not in doc:
        raise ValueError(f"{path}: missing 'edges' key")
    try:
        node_specs = [(n["id"], n["type"], n["p"]) for n in doc["nodes"]]
        edge_specs = [(e["u"], e["v"]) for e in doc["edges"]]
        q = {}
        for e in doc["edges"]:
            q[(e["u"], e["v"])] = e.get("q_uv", 0.0)
            q[(e["v"], e["u"])] = e.get("q_vu", 0.0)
    except (TypeError, KeyError) as exc:
        raise ValueError(f"{path}: malformed entry: {exc}") from exc
    return build_network(node_specs, edge_specs, q=q)


def save_json(net: NetworkModel, path: str) -> None:
    """Write the JSON representation; requires dense ids 0..N-1."""
    if net.node_ids != tuple(range(net.n_nodes)):
        raise ValueError("only networks with dense ids 0..N-1 can be saved")
    idx = net.index_of
    doc = {
        "nodes": [
            {"id": v, "type": net.types[idx[v]], "p": net.p[idx[v]]}
            for v in net.node_ids
        ],
        "edges": [
            {"u": u, "v": v, "q_uv": net.q[(u, v)], "q_vu": net.q[(v, u)]}
            for u, v in sorted(net.edges)
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
