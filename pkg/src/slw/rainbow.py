"""Boundary-path coloring sets computed by exhaustive search.

Instances here are plane graphs with an outer facial cycle and a
distinguished subpath of it. The sets computed ask, in several flavors,
which partial colorings near the path force the rest of the graph to stay
colorable no matter how the remaining path vertices are colored:

- end_set: endpoint pairs whose every path completion extends.
- crown_set: partial boundary colorings (path neighbors of the endpoints
  left out) whose every completion over the path extends, with three colors
  of slack kept on the uncolored path vertices.
- link_set: colorings of a collar subpath, off its chord shadow, that leave
  the shadow inert.
- is_universal: colors at one end of a 2-path that survive every choice at
  the other two vertices.

All sets are produced by enumerating candidate colorings and quantifying
extensions through the exact oracle; nothing here trusts a construction.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .collar import Collar, uniquely_k_determined
from .errors import HypothesisError, StructureError
from .graphs import as_adj, connected_components, distance_ball, induced_adj
from .listcolor import (DEFAULT_MAX_ORACLE_VERTICES, ListAssignment,
                        ReductionCertificate, _guard, check_reduction,
                        enumerate_colorings, is_inert, is_proper_partial,
                        oracle_extend, residual_mask)
from .topology import is_short_inseparable

Coloring = Dict[int, int]


def _is_arc_of(cycle: Sequence[int], path: Sequence[int]) -> bool:
    """True when path reads as a contiguous arc of cycle, either way around."""
    n = len(cycle)
    if len(path) > n:
        return False
    if len(path) == 1:
        return path[0] in cycle
    doubled = tuple(cycle) + tuple(cycle)
    for seq in (tuple(path), tuple(reversed(path))):
        for i in range(n):
            if doubled[i:i + len(seq)] == seq:
                return True
    return False


class Rainbow:
    """Plane instance with an outer facial cycle, a distinguished boundary
    subpath, and list sizes graded by position: nonempty on the subpath
    endpoints, at least three elsewhere on the cycle, at least five off it.
    """

    def __init__(self, emb, cycle: Sequence[int], path: Sequence[int],
                 lists: ListAssignment):
        cycle = tuple(cycle)
        path = tuple(path)
        if not emb.is_facial_cycle(cycle):
            raise HypothesisError("boundary is not a facial cycle",
                                  {"cycle": cycle})
        if len(path) < 2:
            raise HypothesisError("path needs at least one edge",
                                  {"path": path})
        if len(set(path)) != len(path):
            raise HypothesisError("path repeats a vertex", {"path": path})
        if not _is_arc_of(cycle, path):
            raise HypothesisError("path is not an arc of the cycle",
                                  {"path": path})
        missing = [v for v in range(emb.n) if v not in lists]
        if missing:
            raise HypothesisError("list assignment misses vertices",
                                  {"vertices": missing})
        if lists.size(path[0]) < 1 or lists.size(path[-1]) < 1:
            raise HypothesisError("a path endpoint has an empty list")
        cset, pset = set(cycle), set(path)
        thin = [v for v in cset - pset if lists.size(v) < 3]
        if thin:
            raise HypothesisError("cycle vertex off the path has a list "
                                  "smaller than three", {"vertices": thin})
        thin = [v for v in range(emb.n) if v not in cset and lists.size(v) < 5]
        if thin:
            raise HypothesisError("interior vertex has a list smaller than "
                                  "five", {"vertices": thin})
        self.emb = emb
        self.cycle = cycle
        self.path = path
        self.lists = lists
        self.adj = emb.adjacency()

    @property
    def p0(self) -> int:
        return self.path[0]

    @property
    def p1(self) -> int:
        return self.path[-1]

    @property
    def q0(self) -> int:
        """Path neighbor of p0."""
        return self.path[1]

    @property
    def q1(self) -> int:
        """Path neighbor of p1."""
        return self.path[-2]

    @property
    def interior(self) -> Tuple[int, ...]:
        return self.path[1:-1]

    def __repr__(self) -> str:  # pragma: no cover
        return (f"Rainbow(n={self.emb.n}, cycle={self.cycle}, "
                f"path={self.path})")


def is_end_linked(rainbow: Rainbow) -> bool:
    """Endpoint lists jointly large enough to steer both ends: the two end
    lists have total size at least four.

    This is the single interpretation point for the endpoint-strength
    hypothesis used by the nonemptiness results on end_set and crown_set;
    with anything weaker there are two-edge instances whose end set is
    empty.
    """
    return (rainbow.lists.size(rainbow.p0)
            + rainbow.lists.size(rainbow.p1)) >= 4


# ------------------------------------------------------------------ end sets


def end_set(g, path: Optional[Sequence[int]] = None,
            lists: Optional[ListAssignment] = None, *,
            max_vertices: int = DEFAULT_MAX_ORACLE_VERTICES) -> List[Coloring]:
    """Colorings of the two path endpoints whose every proper completion of
    the path extends to the whole graph.

    Accepts a Rainbow, or any graph plus an explicit path and lists. The
    path needs at least three vertices. A pair with no proper completion of
    the path at all qualifies vacuously.
    """
    if isinstance(g, Rainbow):
        if path is not None or lists is not None:
            raise HypothesisError("path and lists come from the instance")
        adj, path, lists = g.adj, g.path, g.lists
    else:
        if path is None or lists is None:
            raise HypothesisError("need a path and lists with a bare graph")
        adj = as_adj(g)
    path = tuple(path)
    if len(path) < 3:
        raise HypothesisError("end set needs a path on >= 3 vertices",
                              {"path": path})
    if len(set(path)) != len(path):
        raise HypothesisError("path repeats a vertex", {"path": path})
    for a, b in zip(path, path[1:]):
        if b not in adj[a]:
            raise StructureError(f"path edge {a}-{b} is missing")
    _guard(set(adj), max_vertices, "end set instance")
    p0, p1 = path[0], path[-1]
    inner = sorted(set(path[1:-1]))
    out: List[Coloring] = []
    for a in lists.colors(p0):
        for b in lists.colors(p1):
            phi = {p0: a, p1: b}
            if not is_proper_partial(adj, lists, phi):
                continue
            good = True
            for psi in enumerate_colorings(adj, lists, inner, phi,
                                           max_vertices=max_vertices):
                if oracle_extend(adj, lists, {**phi, **psi},
                                 max_vertices=max_vertices) is None:
                    good = False
                    break
            if good:
                out.append(phi)
    return out


def crown_set(rainbow: Rainbow, *, max_domain: int = 12,
              max_vertices: int = DEFAULT_MAX_ORACLE_VERTICES
              ) -> List[Coloring]:
    """Partial colorings of the cycle, avoiding the path neighbors of the
    endpoints, whose every completion over the path extends to the graph.

    A qualifying coloring colors both endpoints (and, when the path is
    longer than three edges, some strictly interior path vertex away from
    those neighbors), leaves at least three residual colors on every
    uncolored path vertex, and survives the full extension quantifier.
    Returned in domain-size order, smallest domains first.
    """
    adj, lists = rainbow.adj, rainbow.lists
    path = rainbow.path
    if len(path) < 3:
        raise HypothesisError("crown set needs a path on >= 3 vertices",
                              {"path": path})
    _guard(set(adj), max_vertices, "crown set instance")
    p0, p1 = rainbow.p0, rainbow.p1
    pool = sorted(set(rainbow.cycle) - {rainbow.q0, rainbow.q1})
    others = [v for v in pool if v not in (p0, p1)]
    _guard(others, max_domain, "crown domain pool")
    need_mid = len(path) - 1 > 3
    mid_pool = set(rainbow.interior) - {rainbow.q0, rainbow.q1}
    pset = set(path)
    out: List[Coloring] = []
    for r in range(len(others) + 1):
        for extra in combinations(others, r):
            dom = {p0, p1, *extra}
            if need_mid and not (dom & mid_pool):
                continue
            free = sorted(pset - dom)
            for phi in enumerate_colorings(adj, lists, sorted(dom), {},
                                           max_vertices=max_vertices):
                if any(residual_mask(adj, lists, phi, x).bit_count() < 3
                       for x in free):
                    continue
                good = True
                for psi in enumerate_colorings(adj, lists, free, phi,
                                               max_vertices=max_vertices):
                    if oracle_extend(adj, lists, {**phi, **psi},
                                     max_vertices=max_vertices) is None:
                        good = False
                        break
                if good:
                    out.append(dict(sorted(phi.items())))
    return out


def is_universal(g, path2: Sequence[int], lists: ListAssignment, a: int, *,
                 max_vertices: int = DEFAULT_MAX_ORACLE_VERTICES) -> bool:
    """True when the color a at the first vertex of the 2-path survives all
    choices at the other two: for every b on the middle vertex avoiding a
    and every c on the far vertex avoiding b, the triple extends to color
    the whole graph.
    """
    adj = as_adj(g)
    p, q, p2 = path2
    if len({p, q, p2}) != 3:
        raise HypothesisError("2-path needs three distinct vertices",
                              {"path": tuple(path2)})
    if q not in adj[p] or p2 not in adj[q]:
        raise StructureError("2-path edges are missing from the graph")
    if not lists.allows(p, a):
        raise HypothesisError(f"color {a} is not in the list of {p}")
    for b in lists.colors(q):
        if b == a:
            continue
        for c in lists.colors(p2):
            if c == b:
                continue
            fixed = {p: a, q: b, p2: c}
            if not is_proper_partial(adj, lists, fixed):
                return False
            if oracle_extend(adj, lists, fixed,
                             max_vertices=max_vertices) is None:
                return False
    return True


# -------------------------------------------------------------- broken wheels


@dataclass(frozen=True)
class BrokenWheel:
    """A hub adjacent to every other vertex, the rest forming a path."""

    principal: int
    rim: Tuple[int, ...]

    @property
    def principal_path(self) -> Tuple[int, int, int]:
        return (self.rim[0], self.principal, self.rim[-1])


def as_broken_wheel(g, principal: Optional[int] = None
                    ) -> Optional[BrokenWheel]:
    """Recognize a graph as a hub plus a rim path covering its neighborhood.

    With `principal` given, only that hub is tried; otherwise the smallest
    working hub wins. Returns None when no hub works. The rim is oriented
    from its smaller endpoint.
    """
    adj = as_adj(g)
    candidates = [principal] if principal is not None else sorted(adj)
    for p in candidates:
        if p not in adj:
            continue
        rim_set = set(adj) - {p}
        if len(rim_set) < 2 or adj[p] != rim_set:
            continue
        rim_adj = induced_adj(adj, rim_set)
        degs = {v: len(rim_adj[v]) for v in rim_set}
        ends = sorted(v for v, d in degs.items() if d == 1)
        if len(ends) != 2 or any(d > 2 for d in degs.values()):
            continue
        if len(connected_components(rim_adj)) != 1:
            continue
        walk = [ends[0]]
        prev = None
        while walk[-1] != ends[1]:
            nxt = [u for u in rim_adj[walk[-1]] if u != prev]
            prev = walk[-1]
            walk.append(nxt[0])
        return BrokenWheel(p, tuple(walk))
    return None


def broken_wheel_with_path(g, path2: Sequence[int]) -> Optional[BrokenWheel]:
    """The broken wheel whose hub is the middle of the 2-path and whose rim
    runs between its endpoints, or None."""
    p, q, p2 = path2
    wheel = as_broken_wheel(g, q)
    if wheel is None or {wheel.rim[0], wheel.rim[-1]} != {p, p2}:
        return None
    if wheel.rim[0] != p:
        wheel = BrokenWheel(wheel.principal, tuple(reversed(wheel.rim)))
    return wheel


def even_neighbor_path(g, allowed: Iterable[int], end0: int, end1: int,
                       apex: int) -> Optional[Tuple[int, ...]]:
    """An even-length path from end0 to end1 through `allowed` vertices all
    adjacent to `apex`, or None."""
    adj = as_adj(g)
    pool = {v for v in allowed if apex in adj[v]}
    if end0 not in pool or end1 not in pool:
        return None

    stack = [(end0, (end0,))]
    while stack:
        v, walk = stack.pop()
        if v == end1 and len(walk) % 2 == 1:
            return walk
        for u in sorted(adj[v] & pool, reverse=True):
            if u not in walk:
                stack.append((u, walk + (u,)))
    return None


# ------------------------------------------------- collar subpath machinery


def _collar_subpath(collar: Collar, path: Sequence[int]) -> Tuple[int, ...]:
    path = tuple(path)
    if not path:
        raise HypothesisError("empty path")
    if len(set(path)) != len(path):
        raise HypothesisError("path repeats a vertex", {"path": path})
    if not _is_arc_of(collar.cycle, path):
        raise HypothesisError("path is not an arc of the collar cycle",
                              {"path": path})
    return path


def _require_determined(collar: Collar, k: int) -> None:
    if collar.k_determined_up_to >= k:
        return
    det = uniquely_k_determined(collar, k)
    if not det:
        raise HypothesisError(f"collar is not determined up to {k}",
                              {"witness": det.witness})


def _arc_component_count(side, path: Sequence[int]) -> int:
    """Components of the side's intersection with the path (path edges only)."""
    verts = side.vertices & set(path)
    if not verts:
        return 0
    sub = {v: set() for v in verts}
    for a, b in zip(path, path[1:]):
        if frozenset((a, b)) in side.edges:
            sub[a].add(b)
            sub[b].add(a)
    return len(connected_components(sub))


def sh_k_of_path(collar: Collar, path: Sequence[int], k: int
                 ) -> FrozenSet[int]:
    """Vertices strictly inside the small side of some proper chord of
    length <= k that cuts off a middle arc of the path.

    A chord counts when both its endpoints lie on the path, the small side
    meets the path in one arc, and the large side meets it in two.
    """
    path = _collar_subpath(collar, path)
    if k < 1:
        raise HypothesisError(f"shadow level must be >= 1, got {k}")
    _require_determined(collar, k)
    pset = set(path)
    out: Set[int] = set()
    for length in range(1, k + 1):
        for chord in collar.chords_of_length(length):
            if chord[0] == chord[-1]:
                continue
            if chord[0] not in pset or chord[-1] not in pset:
                continue
            sides = collar.sides_of(chord)
            if _arc_component_count(sides.small, path) != 1:
                continue
            if _arc_component_count(sides.large, path) != 2:
                continue
            out |= sides.small.vertices - set(chord)
    return frozenset(out)


def is_k_consistent(collar: Collar, path: Sequence[int], k: int) -> bool:
    """True when no chord leaves the path and every short proper chord with
    an endpoint strictly inside the path cuts it small-side-in-the-middle:
    one arc inside the small side, two inside the large.
    """
    path = _collar_subpath(collar, path)
    if k < 1:
        raise HypothesisError(f"consistency level must be >= 1, got {k}")
    _require_determined(collar, k)
    pset = set(path)
    inner = set(path[1:-1])
    for chord in collar.chords_of_length(1):
        if (chord[0] in pset) != (chord[-1] in pset):
            return False
    for length in range(1, k + 1):
        for chord in collar.chords_of_length(length):
            if chord[0] == chord[-1]:
                continue
            if chord[0] not in pset or chord[-1] not in pset:
                continue
            if chord[0] not in inner and chord[-1] not in inner:
                continue
            sides = collar.sides_of(chord)
            if _arc_component_count(sides.small, path) != 1:
                return False
            if _arc_component_count(sides.large, path) != 2:
                return False
    return True


def link_set(collar: Collar, path: Sequence[int], *,
             max_vertices: int = DEFAULT_MAX_ORACLE_VERTICES
             ) -> List[Coloring]:
    """Colorings of the path vertices off the level-2 shadow that leave the
    shadow inert: however the rest of the graph is properly colored around
    it, the shadow can always be finished."""
    path = _collar_subpath(collar, path)
    sh2 = sh_k_of_path(collar, path, 2)
    dom = sorted(v for v in path if v not in sh2)
    out: List[Coloring] = []
    for phi in enumerate_colorings(collar.adj, collar.lists, dom, {},
                                   max_vertices=max_vertices):
        if is_inert(collar.adj, collar.lists, sh2, phi,
                    max_vertices=max_vertices):
            out.append(dict(sorted(phi.items())))
    return out


@dataclass(frozen=True)
class PathPeaks:
    """Distance-one vertices seeing the path at least twice, off its level-2
    shadow; the internal ones avoid both path endpoints."""

    vertices: FrozenSet[int]
    internal: FrozenSet[int]

    def __iter__(self):
        return iter(sorted(self.vertices))

    def __contains__(self, v: int) -> bool:
        return v in self.vertices

    def __len__(self) -> int:
        return len(self.vertices)


def peaks(collar: Collar, path: Sequence[int]) -> PathPeaks:
    """Peaks of the path: midpoints of its maximal 2-chords."""
    path = _collar_subpath(collar, path)
    sh2 = sh_k_of_path(collar, path, 2)
    pset = set(path)
    ends = {path[0], path[-1]}
    vs: Set[int] = set()
    internal: Set[int] = set()
    for v in range(collar.emb.n):
        if collar.distance_to_cycle(v) != 1 or v in sh2:
            continue
        if len(collar.adj[v] & pset) < 2:
            continue
        vs.add(v)
        if not (collar.adj[v] & ends):
            internal.add(v)
    return PathPeaks(frozenset(vs), frozenset(internal))


# ------------------------------------------------------------ link plus one


def _search_reduction(adj, lists, phi, t_candidates, d_candidates,
                      max_vertices) -> Optional[ReductionCertificate]:
    tried = set()
    for T in t_candidates:
        for D in d_candidates:
            if not D <= T or (T, D) in tried:
                continue
            tried.add((T, D))
            targets = sorted(D - set(phi))
            for ext in enumerate_colorings(adj, lists, targets, phi,
                                           max_vertices=max_vertices):
                res = check_reduction(adj, lists, T, {**phi, **ext},
                                      max_vertices=max_vertices)
                if res.ok:
                    return res
    return None


def _dedup(sets: Iterable[FrozenSet[int]]) -> List[FrozenSet[int]]:
    out: List[FrozenSet[int]] = []
    for s in sets:
        if s not in out:
            out.append(s)
    return out


def link_plus_one(collar: Collar, path: Sequence[int], phi: Coloring, *,
                  max_vertices: int = DEFAULT_MAX_ORACLE_VERTICES
                  ) -> List[Tuple[int, ReductionCertificate]]:
    """For each internal peak w of the path, search for a verified reduction
    whose set sits between the path and the path plus w plus its level-3
    shadow, and whose coloring extends the given endpoint coloring.

    Hypotheses checked up front: collar determined up to 3, graph
    short-inseparable, every face near the cycle a triangle (the cycle
    itself excepted), 5-lists off the cycle nearby, a 3-consistent path
    with 3-lists inside, some cycle vertex off the path, and an endpoint
    coloring. The search tries the natural reduction shapes (path plus w,
    shadow absorbed or not, shadowed path vertices uncolored or not) and a
    bounded exhaustive sweep on tiny instances; successes are certified,
    misses are conservative.
    """
    path = _collar_subpath(collar, path)
    if len(path) < 2:
        raise HypothesisError("path needs at least one edge", {"path": path})
    adj, lists = collar.adj, collar.lists
    _require_determined(collar, 3)
    if not is_short_inseparable(collar.emb):
        raise HypothesisError("graph is not short-inseparable")
    cyc_set = set(collar.cycle)
    ball2 = distance_ball(adj, collar.cycle, 2)
    for walk in collar.emb.faces():
        verts = tuple(walk.vertices)
        if len(verts) == 3:
            continue
        if set(verts) == cyc_set and len(verts) == len(collar.cycle):
            continue
        hit = sorted(set(verts) & ball2)
        if hit:
            raise HypothesisError("non-triangular face near the cycle",
                                  {"face": verts, "vertices": hit})
    thin = [v for v in ball2 if v not in cyc_set and lists.size(v) < 5]
    if thin:
        raise HypothesisError("near-cycle vertex has a list smaller than "
                              "five", {"vertices": thin})
    if not cyc_set - set(path):
        raise HypothesisError("path covers the whole cycle")
    thin = [v for v in path[1:-1] if lists.size(v) < 3]
    if thin:
        raise HypothesisError("interior path vertex has a list smaller "
                              "than three", {"vertices": thin})
    if not is_k_consistent(collar, path, 3):
        raise HypothesisError("path is not 3-consistent", {"path": path})
    ends = {path[0], path[-1]}
    if set(phi) != ends:
        raise HypothesisError("coloring must cover exactly the endpoints",
                              {"domain": sorted(phi)})
    if any(not lists.allows(v, c) for v, c in phi.items()):
        raise HypothesisError("endpoint color outside its list")
    if not is_proper_partial(adj, lists, phi):
        raise HypothesisError("endpoint coloring is improper")

    pset = frozenset(path)
    sh2 = frozenset(sh_k_of_path(collar, path, 2))
    sh3 = frozenset(sh_k_of_path(collar, path, 3))
    pk = peaks(collar, path)
    internal = sorted(pk.internal)
    if not internal:
        return []

    d_base = _dedup([pset, pset - sh2, pset - sh3])
    t_base = _dedup([pset, pset | sh2, pset | sh3])
    free_cert = _search_reduction(adj, lists, phi, t_base, d_base,
                                  max_vertices)
    if free_cert is not None:
        return [(w, free_cert) for w in internal]

    out: List[Tuple[int, ReductionCertificate]] = []
    sh3_extra = sorted(sh3 - pset)
    dom_pool = sorted(pset - ends)
    for w in internal:
        wset = frozenset((w,))
        t_cands = _dedup([pset | wset, pset | wset | sh2, pset | wset | sh3])
        d_cands = _dedup([pset | wset, (pset - sh2) | wset,
                          (pset - sh3) | wset] + d_base)
        cert = _search_reduction(adj, lists, phi, t_cands, d_cands,
                                 max_vertices)
        if cert is None and len(sh3_extra) <= 4 and len(dom_pool) <= 5:
            t_cands = [pset | wset | frozenset(s)
                       for r in range(len(sh3_extra) + 1)
                       for s in combinations(sh3_extra, r)]
            d_cands = [frozenset(ends) | wset | frozenset(s)
                       for r in range(len(dom_pool), -1, -1)
                       for s in combinations(dom_pool, r)]
            cert = _search_reduction(adj, lists, phi, t_cands, d_cands,
                                     max_vertices)
        if cert is not None:
            out.append((w, cert))
    return out


# -------------------------------------------------------------- obstructions


def find_g_obstruction(rainbow: Rainbow) -> Optional[int]:
    """Scan the cycle for a vertex blocking endpoint-independent crowns on a
    five-edge path p0 q0 y0 y1 q1 p1: either one adjacent to all four
    interior vertices, or one adjacent to an endpoint and the far interior
    pair. Returns the smallest such vertex, or None.
    """
    path = rainbow.path
    if len(path) != 6:
        raise HypothesisError("obstruction scan needs a five-edge path",
                              {"path": path})
    adj = rainbow.adj
    p0, q0, y0, y1, q1, p1 = path
    inner = {q0, y0, y1, q1}
    off = set(rainbow.cycle) - inner
    for v in (q0, y0, y1, q1):
        if rainbow.lists.size(v) < 5:
            raise HypothesisError("interior path vertex has a list smaller "
                                  "than five", {"vertex": v})
        if not (adj[v] & off):
            raise HypothesisError("interior path vertex sees nothing off "
                                  "the open path", {"vertex": v})
    for x in sorted(rainbow.cycle):
        nbrs = adj[x]
        if inner <= nbrs:
            return x
        if {p0, q1, y1} <= nbrs or {p1, q0, y0} <= nbrs:
            return x
    return None
