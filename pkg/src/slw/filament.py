"""Coloring and deleting long paths: Mid vertices, gaps, and filaments.

A filament is a shortest path with two precolored terminal stubs and a long
free middle run through 5-listed, triangulated territory. The reduction
search colors the path (possibly leaving a few inert vertices uncolored, or
swapping in a midpoint witness) so that the colored path can be deleted:
every 5-listed neighbor keeps three residual colors. The only neighbors
that can drop below three are the Mid vertices, those seeing a 2-path of
the path, so the sweep protects exactly them.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from .embedding import RotationEmbedding
from .errors import HypothesisError, SearchExhaustedError, StructureError
from .graphs import as_adj, bfs_distances, distance_ball, induced_adj
from .listcolor import (DEFAULT_MAX_ORACLE_VERTICES, ListAssignment,
                        ReductionCertificate, check_reduction, is_proper_partial,
                        sweep_coloring)
from .topology import is_short_inseparable

MIDDLE_FLOOR = 30


# ------------------------------------------------------------------ mid sets


def _require_path(adj, path: Sequence[int]) -> Tuple[int, ...]:
    path = tuple(path)
    if len(path) != len(set(path)):
        raise HypothesisError("path repeats a vertex", {"path": path})
    for a, b in zip(path, path[1:]):
        if b not in adj[a]:
            raise HypothesisError("consecutive path vertices not adjacent",
                                  {"edge": (a, b)})
    return path


def mid_map(g, L: ListAssignment, path: Sequence[int]) -> Dict[int, Optional[int]]:
    """Mid witness (or None) at every path vertex, in one scan.

    The witness at q is the 5-listed off-path vertex whose path neighborhood
    induces a 2-path with midpoint q; two witnesses at one midpoint would
    form a K_{2,3}, so that raises.
    """
    adj = as_adj(g)
    path = _require_path(adj, path)
    pset = set(path)
    out: Dict[int, Optional[int]] = {q: None for q in path}
    cand: Dict[int, Set[int]] = {}
    for q in path:
        for v in adj[q]:
            if v not in pset and L.size(v) >= 5:
                cand.setdefault(v, set()).add(q)
    for v in sorted(cand):
        hits = cand[v]
        if len(hits) != 3:
            continue
        sub = induced_adj(adj, hits)
        if sorted(len(sub[x]) for x in sorted(hits)) != [1, 1, 2]:
            continue
        mid = next(x for x in sorted(hits) if len(sub[x]) == 2)
        if out[mid] is not None:
            raise StructureError(
                f"two mid witnesses at {mid}: {out[mid]} and {v}")
        out[mid] = v
    return out


def mid_set(g, L: ListAssignment, path: Sequence[int], q: int) -> Optional[int]:
    """The unique 5-listed vertex seeing a 2-path of `path` centered at q,
    or None."""
    adj = as_adj(g)
    path = _require_path(adj, path)
    if q not in set(path):
        raise HypothesisError("midpoint must lie on the path", {"vertex": q})
    return mid_map(adj, L, path)[q]


def p_gap(g, L: ListAssignment, path: Sequence[int], x: int) -> bool:
    """Whether the interior path vertex x has no mid witness."""
    path = tuple(path)
    if x not in path[1:-1]:
        raise HypothesisError("gap test needs an interior path vertex",
                              {"vertex": x})
    return mid_set(g, L, path, x) is None


def swapped_path(g, L: ListAssignment, path: Sequence[int], w: int) -> Tuple[int, ...]:
    """The path with the midpoint of w's path neighborhood replaced by w."""
    adj = as_adj(g)
    path = _require_path(adj, path)
    mids = mid_map(adj, L, path)
    spots = [q for q, v in mids.items() if v == w]
    if not spots:
        raise HypothesisError("vertex is not a mid witness of the path",
                              {"vertex": w})
    q = spots[0]
    return tuple(w if v == q else v for v in path)


# ------------------------------------------------------------------ filaments


@dataclass(frozen=True)
class Filament:
    """A shortest path with precolored terminal stubs and a long free middle.

    left and right are the two terminal subpaths (in path order); precolor
    is the stub coloring, a reduction on its own domain.
    """

    path: Tuple[int, ...]
    left: Tuple[int, ...]
    right: Tuple[int, ...]
    precolor: Dict[int, int]

    def __init__(self, path, left, right, precolor):
        object.__setattr__(self, "path", tuple(path))
        object.__setattr__(self, "left", tuple(left))
        object.__setattr__(self, "right", tuple(right))
        object.__setattr__(self, "precolor", dict(precolor))

    @property
    def middle(self) -> Tuple[int, ...]:
        return self.path[len(self.left):len(self.path) - len(self.right)]

    @property
    def terminals(self) -> FrozenSet[int]:
        return frozenset(self.left) | frozenset(self.right)

    @property
    def wide_domain(self) -> bool:
        """Whether the precoloring spills outside the terminal stubs."""
        return not set(self.precolor) <= self.terminals


def validate_filament(emb: RotationEmbedding, L: ListAssignment, fil: Filament,
                      *, relax_length: bool = False,
                      max_vertices: int = DEFAULT_MAX_ORACLE_VERTICES) -> None:
    """Raise unless the filament satisfies its three defining clauses."""
    adj = emb.adjacency()
    path = _require_path(adj, fil.path)
    n = len(path)
    if not fil.left or not fil.right:
        raise HypothesisError("terminal subpaths must be nonempty")
    if path[:len(fil.left)] != fil.left or path[n - len(fil.right):] != fil.right:
        raise HypothesisError("terminal subpaths must be terminal",
                              {"left": fil.left, "right": fil.right})
    if set(fil.left) & set(fil.right):
        raise HypothesisError("terminal subpaths must be disjoint")
    dist = bfs_distances(adj, [path[0]])
    if dist.get(path[-1]) != n - 1:
        raise HypothesisError("path is not a shortest path between its ends",
                              {"length": n - 1, "distance": dist.get(path[-1])})
    middle = fil.middle
    if len(middle) - 1 < MIDDLE_FLOOR and not relax_length:
        raise HypothesisError(
            f"free middle has length {len(middle) - 1}, below the floor "
            f"{MIDDLE_FLOOR}", {"middle": len(middle) - 1})
    near = distance_ball(adj, middle, 1)
    thin = [v for v in near if L.size(v) < 5]
    if thin:
        raise HypothesisError(
            "vertices within distance one of the free middle need 5-lists",
            {"vertices": sorted(thin)[:8]})
    for walk in emb.faces():
        if set(walk.vertices) & near and len(walk.darts) != 3:
            raise HypothesisError(
                "faces near the free middle must be triangles",
                {"face": walk.vertices})
    if not is_proper_partial(adj, L, fil.precolor):
        raise HypothesisError("stub coloring is improper")
    cert = check_reduction(adj, L, set(fil.precolor), fil.precolor,
                           max_vertices=max_vertices)
    if not cert.ok:
        raise HypothesisError("stub coloring is not a reduction",
                              {"reason": cert.reason})


@dataclass
class FilamentReduction:
    """Certified (H, tau): the path plus at most a few mid witnesses, colored
    so the whole set can be deleted."""

    H: FrozenSet[int]
    tau: Dict[int, int]
    certificate: ReductionCertificate
    stage: str


def filament_reduce(emb: RotationEmbedding, L: ListAssignment, fil: Filament, *,
                    relax_length: bool = False,
                    max_vertices: int = DEFAULT_MAX_ORACLE_VERTICES) -> FilamentReduction:
    """Color the filament path into a deletable set.

    Stages: color everything; leave one (then three consecutive) inert
    middle vertices uncolored; swap a mid witness in for its midpoint. Each
    candidate is verified before being returned. Exhaustion raises, since
    the path theorem says a valid filament always reduces.
    """
    validate_filament(emb, L, fil, relax_length=relax_length,
                      max_vertices=max_vertices)
    adj = emb.adjacency()
    if emb.n <= 5:
        raise HypothesisError("host graph needs more than five vertices")
    if not is_short_inseparable(emb):
        raise HypothesisError("host graph is not short-inseparable")
    path = fil.path
    pset = set(path)
    middle = fil.middle
    tset = fil.terminals
    mids = mid_map(adj, L, path)
    protect = {w for w in mids.values() if w is not None}
    b1_middle = distance_ball(adj, middle, 1)
    dist_t = bfs_distances(adj, tset)
    tried: List[str] = []

    def finish(H: Set[int], tau: Dict[int, int], stage: str):
        if any(tau.get(k) != c for k, c in fil.precolor.items()):
            return None
        extra = H - pset
        if not extra <= b1_middle:
            return None
        if extra and min(dist_t[v] for v in extra) < 3:
            return None
        cert = check_reduction(adj, L, H, tau, max_vertices=max_vertices)
        if not cert.ok:
            return None
        return FilamentReduction(frozenset(H), dict(tau), cert, stage)

    tried.append("full-color")
    psi = sweep_coloring(adj, L, path, fil.precolor, protect)
    if psi is not None:
        got = finish(set(path), psi, "full-color")
        if got:
            return got

    gaps_first = sorted(middle, key=lambda q: (mids[q] is not None, path.index(q)))
    tried.append("uncolor-one")
    for q in gaps_first:
        psi = sweep_coloring(adj, L, path, fil.precolor, protect, {q})
        if psi is None:
            continue
        got = finish(set(path), psi, "uncolor-one")
        if got:
            return got

    tried.append("uncolor-run")
    idx = {v: i for i, v in enumerate(path)}
    for q in gaps_first:
        i = idx[q]
        if i - 1 < 0 or i + 1 >= len(path):
            continue
        run = {path[i - 1], q, path[i + 1]}
        if run & tset:
            continue
        psi = sweep_coloring(adj, L, path, fil.precolor, protect, run)
        if psi is None:
            continue
        got = finish(set(path), psi, "uncolor-run")
        if got:
            return got

    tried.append("swap-mid")
    for q in middle:
        w = mids[q]
        if w is None or dist_t[w] < 3:
            continue
        seq = tuple(w if v == q else v for v in path)
        psi = sweep_coloring(adj, L, seq, fil.precolor, protect - {w}, {q})
        if psi is None:
            continue
        got = finish(set(path) | {w}, psi, "swap-mid")
        if got:
            return got

    raise SearchExhaustedError(
        "filament reduction exhausted; candidate counterexample to the path "
        "theorem", {"path": path, "stages": tried})


# ------------------------------------------------------------------ sweeps on prefixes


def red_extend(g, L: ListAssignment, q_path: Sequence[int],
               q_prime: Sequence[int], phi: Mapping[int, int], *,
               max_vertices: int = DEFAULT_MAX_ORACLE_VERTICES) -> Dict[int, int]:
    """Extend a deletable coloring of a terminal subpath over the whole path.

    The forward sweep colors each next vertex keeping three residual colors
    at the unique mid witness behind it. The input must color exactly the
    terminal subpath; for stubs longer than two edges it must itself be
    deletable. Exhaustion raises, since the sweep lemma says it never fails.
    """
    adj = as_adj(g)
    q_path = _require_path(adj, q_path)
    q_prime = tuple(q_prime)
    if q_path[:len(q_prime)] == q_prime:
        pass
    elif q_path[len(q_path) - len(q_prime):] == q_prime:
        q_path = tuple(reversed(q_path))
        q_prime = tuple(reversed(q_prime))
    elif q_path[:len(q_prime)] == tuple(reversed(q_prime)):
        q_prime = tuple(reversed(q_prime))
    else:
        raise HypothesisError("second path must be terminal in the first",
                              {"path": q_path, "terminal": q_prime})
    dist = bfs_distances(adj, [q_path[0]])
    if dist.get(q_path[-1]) != len(q_path) - 1:
        raise HypothesisError("path is not a shortest path between its ends")
    thin = [v for v in q_path[len(q_prime):] if L.size(v) < 5]
    if thin:
        raise HypothesisError("vertices outside the terminal subpath need "
                              "5-lists", {"vertices": thin})
    phi = dict(phi)
    if set(phi) != set(q_prime):
        raise HypothesisError("coloring must cover exactly the terminal "
                              "subpath", {"dom": sorted(phi)})
    if not is_proper_partial(adj, L, phi):
        raise HypothesisError("terminal coloring is improper")
    if len(q_prime) > 3:
        cert = check_reduction(adj, L, set(q_prime), phi,
                               max_vertices=max_vertices)
        if not cert.ok:
            raise HypothesisError("terminal coloring is not deletable",
                                  {"reason": cert.reason})
    mids = mid_map(adj, L, q_path)
    protect = {w for w in mids.values() if w is not None}
    psi = sweep_coloring(adj, L, q_path, phi, protect)
    if psi is None:
        raise SearchExhaustedError(
            "sweep exhausted; candidate counterexample to the extension lemma",
            {"path": q_path})
    cert = check_reduction(adj, L, set(q_path), psi, max_vertices=max_vertices)
    if not cert.ok:
        raise SearchExhaustedError(
            "sweep result not deletable; candidate counterexample to the "
            "extension lemma", {"reason": cert.reason})
    return psi
