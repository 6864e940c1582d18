"""Plain-adjacency graph utilities shared by every module.

Graphs at this layer are just ``dict[int, set[int]]``. Anything with an
``adjacency()`` method (embeddings) is accepted wherever an adjacency dict is,
via :func:`as_adj`. Distances follow the source conventions:

* ``distance_shell(G, X, j)`` — vertices at graph distance exactly j from the
  set X (so shell 0 is X itself);
* ``distance_ball(G, X, r)`` — vertices at distance at most r.
"""

from __future__ import annotations

from collections import deque
from typing import Dict, Iterable, Set

Adjacency = Dict[int, Set[int]]


def as_adj(g) -> Adjacency:
    if isinstance(g, dict):
        return g
    adjacency = getattr(g, "adjacency", None)
    if adjacency is not None:
        return adjacency() if callable(adjacency) else adjacency
    raise TypeError(f"not a graph: {type(g)!r}")


def induced_adj(adj: Adjacency, vertices: Iterable[int]) -> Adjacency:
    vs = set(vertices)
    return {v: adj[v] & vs for v in vs}


def subgraph_adj(adj: Adjacency, vertices: Iterable[int], edges) -> Adjacency:
    """Subgraph on `vertices` with exactly the given edge set (pairs)."""
    vs = set(vertices)
    out: Adjacency = {v: set() for v in vs}
    for a, b in edges:
        if a in vs and b in vs:
            out[a].add(b)
            out[b].add(a)
    return out


def bfs_distances(g, sources: Iterable[int], limit: int | None = None) -> Dict[int, int]:
    adj = as_adj(g)
    dist = {s: 0 for s in sources}
    frontier = deque(dist)
    while frontier:
        v = frontier.popleft()
        d = dist[v]
        if limit is not None and d >= limit:
            continue
        for u in adj[v]:
            if u not in dist:
                dist[u] = d + 1
                frontier.append(u)
    return dist


def distance_shell(g, X: Iterable[int], j: int) -> Set[int]:
    dist = bfs_distances(g, set(X), limit=j)
    return {v for v, d in dist.items() if d == j}


def distance_ball(g, X: Iterable[int], r: int) -> Set[int]:
    return set(bfs_distances(g, set(X), limit=r))


def set_distance(g, X: Iterable[int], Y: Iterable[int]) -> float:
    """Graph distance between two vertex sets; inf if disconnected, 0 if they meet."""
    X, Y = set(X), set(Y)
    if not X or not Y:
        return float("inf")
    if X & Y:
        return 0
    dist = bfs_distances(g, X)
    hits = [dist[y] for y in Y if y in dist]
    return min(hits) if hits else float("inf")


def connected_components(g, vertices: Iterable[int] | None = None) -> list[set[int]]:
    adj = as_adj(g)
    todo = set(adj) if vertices is None else set(vertices)
    comps = []
    while todo:
        seed = todo.pop()
        comp = {seed}
        frontier = deque([seed])
        while frontier:
            v = frontier.popleft()
            for u in adj[v]:
                if u in todo:
                    todo.discard(u)
                    comp.add(u)
                    frontier.append(u)
        comps.append(comp)
    return comps


def is_connected(g) -> bool:
    adj = as_adj(g)
    if not adj:
        return True
    return len(connected_components(adj)) == 1


def edge_set(adj: Adjacency) -> set[frozenset]:
    return {frozenset((v, u)) for v in adj for u in adj[v]}


def shortest_path(g, source: int, targets: Iterable[int]) -> list[int] | None:
    """One shortest path from `source` to the nearest vertex of `targets`.

    Deterministic: BFS explores neighbors in sorted order.
    """
    adj = as_adj(g)
    targets = set(targets)
    if source in targets:
        return [source]
    parent = {source: None}
    frontier = deque([source])
    while frontier:
        v = frontier.popleft()
        for u in sorted(adj[v]):
            if u in parent:
                continue
            parent[u] = v
            if u in targets:
                path = [u]
                while path[-1] is not None:
                    path.append(parent[path[-1]])
                path.pop()
                path.reverse()
                return path
            frontier.append(u)
    return None
