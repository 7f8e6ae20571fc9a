"""Connectivity of F_1, seen through the boundary circles its arcs join."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import networkx as nx

from .arcs import ArcSystem, Endpoint


@dataclass(frozen=True)
class ConnectivityReport:
    nodes: int
    arc_edges: int
    connected: bool
    witness_connected: bool
    brute_force_connected: bool
    spanning_tree: tuple[tuple[Endpoint, Endpoint], ...]

    @property
    def ok(self) -> bool:
        return self.connected and self.witness_connected and self.brute_force_connected

    def to_dict(self) -> dict:
        return {
            "nodes": str(self.nodes),
            "arc_edges": str(self.arc_edges),
            "connected": self.connected,
            "witness_connected": self.witness_connected,
            "brute_force_connected": self.brute_force_connected,
            "spanning_tree": [[a.label(), b.label()] for a, b in self.spanning_tree],
        }


def boundary_nodes(p: int) -> list[Endpoint]:
    return [Endpoint(s, j) for j in range(p) for s in (1, 2)]


def f1_graph(arcs: ArcSystem) -> nx.MultiGraph:
    g = nx.MultiGraph()
    g.add_nodes_from(boundary_nodes(arcs.system.p))
    for arc in arcs.odd():
        g.add_edge(arc.tail, arc.head, curve=arc.curve, slot=arc.slot)
    return g


def witness_edges(arcs: ArcSystem) -> list[tuple[Endpoint, Endpoint]]:
    """The two families (L^5_{j+1,j})* and (L^1_{j+1,j})*."""
    p = arcs.system.p
    out = []
    for j in range(p):
        for slot in (5, 1):
            a = arcs[(((j + 1) % p, j), slot)]
            out.append((a.tail, a.head))
    return out


def _reaches_all(nodes, edges) -> bool:
    adj = {v: set() for v in nodes}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    start = next(iter(adj))
    seen, todo = {start}, deque([start])
    while todo:
        v = todo.popleft()
        for w in adj[v] - seen:
            seen.add(w)
            todo.append(w)
    return len(seen) == len(adj)


def check_f1_connected(arcs: ArcSystem) -> ConnectivityReport:
    nodes = boundary_nodes(arcs.system.p)
    g = f1_graph(arcs)
    connected = nx.is_connected(g)
    tree = tuple(sorted((min(a, b), max(a, b)) for a, b in nx.minimum_spanning_edges(g, data=False, keys=False))) \
        if connected else ()
    all_edges = [(a.tail, a.head) for a in arcs.odd()]
    return ConnectivityReport(
        nodes=len(nodes),
        arc_edges=len(all_edges),
        connected=connected,
        witness_connected=_reaches_all(nodes, witness_edges(arcs)),
        brute_force_connected=_reaches_all(nodes, all_edges),
        spanning_tree=tree,
    )
