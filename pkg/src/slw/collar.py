"""Boundary-cycle analysis: canonical sides of short chords, shadows,
enclosures, and the certified search for colored cut-off structures.

A collar is a contractible facial cycle C with a list assignment. For each
generalized chord Q of C (a path between two cycle vertices avoiding the
cycle in between, or a cycle meeting C in one vertex), the surface splits
into two sides. The collar is determined up to k when every chord of length
at most k has exactly one side that is a disc whose off-cycle vertices all
hold 5-lists; that side is the small side. The shadow at level k is the
union of the strict interiors of all small sides.
"""

import warnings
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import (Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional,
                    Sequence, Set, Tuple)

from .embedding import RotationEmbedding
from .errors import (HypothesisError, PartitionUndefinedError, SearchExhaustedError,
                     StructureError)
from .graphs import (as_adj, bfs_distances, connected_components, distance_ball,
                     distance_shell, induced_adj, set_distance)
from .listcolor import (DEFAULT_MAX_ORACLE_VERTICES, FamilyReport,
                        ListAssignment, ReductionCertificate,
                        check_consistent_family, check_reduction,
                        enumerate_colorings, is_inert, is_proper_partial)
from .topology import (SideGraph, enumerate_k_chords, face_width_at_least,
                       is_contractible, is_short_inseparable, natural_partition)


@dataclass(frozen=True)
class ChordSides:
    """Resolved split at one generalized chord of the collar cycle."""

    chord: Tuple[int, ...]
    small: SideGraph
    large: SideGraph
    weak: bool  # both sides qualified; the smaller one was chosen


def _canon_chord(q: Sequence[int]) -> Tuple[int, ...]:
    t = tuple(q)
    return min(t, tuple(reversed(t)))


class Collar:
    """A contractible facial cycle with its list assignment.

    Caches chord enumerations and resolved sides; `k_determined_up_to`
    records the largest k for which the determination check has passed.
    """

    def __init__(self, emb: RotationEmbedding, cycle: Sequence[int],
                 lists: ListAssignment):
        cycle = tuple(cycle)
        if not emb.is_facial_cycle(cycle):
            raise HypothesisError("collar boundary is not a facial cycle",
                                  {"cycle": cycle})
        if not is_contractible(emb, cycle):
            raise HypothesisError("collar boundary is not contractible",
                                  {"cycle": cycle})
        missing = [v for v in range(emb.n) if v not in lists]
        if missing:
            raise HypothesisError("list assignment misses vertices",
                                  {"vertices": missing})
        self.emb = emb
        self.cycle = cycle
        self.lists = lists
        self.k_determined_up_to = 0
        self.weakly_determined = False
        self.adj = emb.adjacency()
        self.cycle_edges = [frozenset((cycle[i], cycle[(i + 1) % len(cycle)]))
                            for i in range(len(cycle))]
        self._chords: Dict[int, List[Tuple[int, ...]]] = {}
        self._sides: Dict[Tuple[int, ...], ChordSides] = {}
        self._dist: Optional[Dict[int, int]] = None

    def distance_to_cycle(self, v: int) -> int:
        if self._dist is None:
            self._dist = bfs_distances(self.adj, self.cycle)
        return self._dist[v]

    def chords_of_length(self, length: int) -> List[Tuple[int, ...]]:
        """Generalized chords with exactly `length` edges."""
        if length not in self._chords:
            self._chords[length] = enumerate_k_chords(
                self.adj, self.cycle, self.cycle_edges, length)
        return self._chords[length]

    def sides_of(self, chord: Sequence[int]) -> ChordSides:
        """Small/large sides at a chord; raises when the split is undefined
        or neither side qualifies as small."""
        key = _canon_chord(chord)
        got = self._sides.get(key)
        if got is None:
            got = self._resolve(key)
            self._sides[key] = got
        return got

    def _resolve(self, chord: Tuple[int, ...]) -> ChordSides:
        part = natural_partition(self.emb, self.cycle, chord)
        cset = set(self.cycle)

        def qualifies(side: SideGraph) -> bool:
            if not side.is_disc:
                return False
            return all(self.lists.size(v) >= 5 for v in side.vertices - cset)

        q0, q1 = qualifies(part.side0), qualifies(part.side1)
        if q0 and q1:
            # Both sides are all-5-listed discs; take the smaller by
            # convention and remember that the label is not forced.
            return ChordSides(chord, part.side0, part.side1, True)
        if q0:
            return ChordSides(chord, part.side0, part.side1, False)
        if q1:
            return ChordSides(chord, part.side1, part.side0, False)
        raise StructureError(
            f"no side of chord {chord} is an all-5-listed disc",
            )


@dataclass
class Determination:
    """Outcome of the determination check up to level k."""

    ok: bool
    k: int
    weak: bool
    checked: int
    witness: Optional[Tuple[Tuple[int, ...], str]]
    collar: Collar

    def __bool__(self) -> bool:
        return self.ok

    def small(self, chord: Sequence[int]) -> SideGraph:
        return self._sides(chord).small

    def large(self, chord: Sequence[int]) -> SideGraph:
        return self._sides(chord).large

    def _sides(self, chord: Sequence[int]) -> ChordSides:
        key = _canon_chord(chord)
        if len(key) - 1 > self.k and not (
                self.k >= 3
                and all(self.collar.distance_to_cycle(v) <= 1 for v in key)):
            raise HypothesisError(
                "chord longer than the determined level and not within "
                "distance one of the cycle", {"chord": key})
        return self.collar.sides_of(key)


def uniquely_k_determined(collar: Collar, k: int) -> Determination:
    """Check every generalized chord of length <= k for a canonical side.

    On success the result exposes small/large lookups (extended, for k >= 3,
    to arbitrary-length chords lying within distance one of the cycle). On
    failure the witness names the first offending chord.
    """
    if k < 1:
        raise HypothesisError(f"determination level must be >= 1, got {k}")
    weak = False
    checked = 0
    for length in range(1, k + 1):
        for chord in collar.chords_of_length(length):
            checked += 1
            try:
                sides = collar.sides_of(chord)
            except (PartitionUndefinedError, StructureError) as e:
                return Determination(False, k, weak, checked,
                                     (chord, str(e)), collar)
            weak = weak or sides.weak
    if k > collar.k_determined_up_to:
        collar.k_determined_up_to = k
    collar.weakly_determined = collar.weakly_determined or weak
    return Determination(True, k, weak, checked, None, collar)


def shadow(collar: Collar, k: int) -> FrozenSet[int]:
    """Vertices strictly inside some small side of a chord of length <= k."""
    det = uniquely_k_determined(collar, k)
    if not det:
        raise HypothesisError(
            f"collar is not determined up to {k}", {"witness": det.witness})
    out: Set[int] = set()
    for length in range(1, k + 1):
        for chord in collar.chords_of_length(length):
            sides = collar.sides_of(chord)
            out |= sides.small.vertices - set(chord)
    return frozenset(out)


# ------------------------------------------------------------------ enclosures


def _collar_cache(collar: Collar, key: str, compute):
    cache = collar.__dict__.setdefault("_driver_cache", {})
    if key not in cache:
        cache[key] = compute()
    return cache[key]


def _cached_shadow(collar: Collar, k: int) -> FrozenSet[int]:
    return _collar_cache(collar, f"shadow{k}", lambda: shadow(collar, k))


def _d1_anchors(collar: Collar, w: int) -> List[int]:
    return sorted(z for z in collar.adj[w] if collar.distance_to_cycle(z) == 1)


def is_degenerate_anchor(collar: Collar, w: int) -> bool:
    """Whether the cycle-adjacent neighborhood of w induces a path of length
    at most one (a single vertex or a single edge)."""
    zs = _d1_anchors(collar, w)
    if len(zs) == 1:
        return True
    if len(zs) == 2:
        return zs[1] in collar.adj[zs[0]]
    return False


@dataclass(frozen=True)
class Enclosure:
    """A pocket pinned at a vertex w two steps off the cycle.

    For a non-degenerate w the chord is a proper 4-chord p-z-w-z'-p' with
    z, z' nonadjacent; for a degenerate w it is a 5-chord whose interior
    stays within distance one of the cycle and whose middle edge holds every
    cycle-adjacent neighbor of w (the chord then avoids w itself, and its
    two endpoints may coincide). `maximal` flags pockets whose small side is
    not strictly contained in another pocket's small side for the same w.
    """

    w: int
    chord: Tuple[int, ...]
    degenerate: bool
    maximal: bool

    @property
    def endpoints(self) -> Tuple[int, int]:
        return self.chord[0], self.chord[-1]


def enumerate_enclosures(collar: Collar, w: int) -> List[Enclosure]:
    """All pockets pinned at w, in canonical order, with maximal ones flagged.

    Candidates whose sides do not resolve (no all-5-listed disc side) are
    not pockets and are skipped.
    """
    if collar.distance_to_cycle(w) != 2:
        raise HypothesisError(
            "enclosure anchor must sit at distance two from the cycle",
            {"vertex": w, "distance": collar.distance_to_cycle(w)})
    adj = collar.adj
    cset = set(collar.cycle)
    zs = _d1_anchors(collar, w)
    degenerate = is_degenerate_anchor(collar, w)
    chords: Set[Tuple[int, ...]] = set()
    if not degenerate:
        for z, zp in combinations(zs, 2):
            if zp in adj[z]:
                continue
            for p in sorted(adj[z] & cset):
                for pp in sorted(adj[zp] & cset):
                    if p != pp:
                        chords.add(_canon_chord((p, z, w, zp, pp)))
    else:
        mids: Set[Tuple[int, int]] = set()
        if len(zs) == 1:
            z = zs[0]
            for t in sorted(adj[z]):
                if t not in cset and collar.distance_to_cycle(t) == 1:
                    mids.add((z, t))
                    mids.add((t, z))
        else:
            mids.add((zs[0], zs[1]))
            mids.add((zs[1], zs[0]))
        for y, yp in sorted(mids):
            for v1 in sorted(adj[y]):
                if v1 == yp or collar.distance_to_cycle(v1) != 1:
                    continue
                for v4 in sorted(adj[yp]):
                    if v4 in (y, v1) or collar.distance_to_cycle(v4) != 1:
                        continue
                    for p in sorted(adj[v1] & cset):
                        for pp in sorted(adj[v4] & cset):
                            chords.add(_canon_chord((p, v1, y, yp, v4, pp)))
    smalls: Dict[Tuple[int, ...], FrozenSet[int]] = {}
    for chord in sorted(chords):
        try:
            smalls[chord] = collar.sides_of(chord).small.vertices
        except (PartitionUndefinedError, StructureError):
            continue
    out = []
    for chord, small in smalls.items():
        maximal = not any(small < other for other in smalls.values())
        out.append(Enclosure(w, chord, degenerate, maximal))
    out.sort(key=lambda e: e.chord)
    return out


def topologically_reachable(emb: RotationEmbedding, cycle: Sequence[int],
                            S: Iterable[int], v: int) -> bool:
    """Whether v joins the cycle by a surface arc meeting the graph in S only.

    Such an arc decomposes into hops across single faces between the graph
    points it touches, and every touched point must lie in the subgraph
    induced on S or on the cycle (crossing an edge amounts to passing one of
    its endpoints, since both faces at the edge contain them). So v reaches
    the cycle exactly when a chain of allowed vertices joins it to the
    cycle, consecutive ones sharing a face.
    """
    allowed = set(S) | set(cycle)
    if v not in allowed:
        return False
    targets = set(cycle)
    if v in targets:
        return True
    at_vertex: Dict[int, List[int]] = {}
    face_sets = []
    for idx, walk in enumerate(emb.faces()):
        members = set(walk.vertices)
        face_sets.append(members)
        for x in members:
            at_vertex.setdefault(x, []).append(idx)
    seen = {v}
    queue = [v]
    while queue:
        cur = queue.pop()
        for idx in at_vertex.get(cur, ()):
            for nxt in face_sets[idx]:
                if nxt in seen or nxt not in allowed:
                    continue
                if nxt in targets:
                    return True
                seen.add(nxt)
                queue.append(nxt)
    return False


# ------------------------------------------------------------------ targets


@dataclass
class Target:
    """A verified cut-off coloring at a pocket.

    psi colors the chord endpoints, the anchor edge tip u, the anchor w (or
    part of the middle edge in the degenerate shape), and possibly more of
    the small side; removing the uncolored chord vertices from the small
    side and adding u yields a reduction.
    """

    enclosure: Enclosure
    u: int
    psi: Dict[int, int]
    A: FrozenSet[int]
    certificate: ReductionCertificate


def _check_anchor_edge(collar: Collar, enc: Enclosure, u: int) -> None:
    w = enc.w
    if u not in collar.adj[w]:
        raise HypothesisError("anchor edge is not an edge", {"edge": (u, w)})
    if collar.distance_to_cycle(w) != 2:
        raise HypothesisError("anchor w must sit at distance two",
                              {"vertex": w})
    if collar.distance_to_cycle(u) != 3:
        raise HypothesisError("anchor u must sit at distance three",
                              {"vertex": u})


def _target_context(collar: Collar, enc: Enclosure, u: int) -> Dict[str, object]:
    """Shared hypothesis checks for target and pair searches."""
    _check_anchor_edge(collar, enc, u)
    det = uniquely_k_determined(collar, 4)
    if not det.ok:
        raise HypothesisError("collar is not determined up to four",
                              {"witness": det.witness})
    if not _collar_cache(collar, "short_insep",
                         lambda: is_short_inseparable(collar.emb)):
        raise HypothesisError("graph is not short-inseparable")
    bad = [v for v in range(collar.emb.n)
           if 1 <= collar.distance_to_cycle(v) <= 4
           and collar.lists.size(v) < 5]
    if bad:
        raise HypothesisError(
            "vertices within distance four of the cycle need 5-lists",
            {"vertices": bad[:8]})
    sh4 = _cached_shadow(collar, 4)
    if enc.w in sh4 or u in sh4:
        raise HypothesisError("anchor edge meets the level-four shadow",
                              {"edge": (u, enc.w)})
    sides = collar.sides_of(enc.chord)
    cset = set(collar.cycle)
    large_on_c = sides.large.vertices & cset
    if len(large_on_c) <= 1:
        raise HypothesisError("large side must keep more than one cycle vertex")
    qset = set(enc.chord)
    for v in (sides.small.vertices & cset) - qset:
        if collar.lists.size(v) < 3:
            raise HypothesisError(
                "small-side cycle vertices off the chord need 3-lists",
                {"vertex": v})
    p, pp = enc.endpoints
    mp, mpp = collar.lists.mask(p), collar.lists.mask(pp)
    if not mp or not mpp:
        raise HypothesisError("chord endpoints need nonempty lists")
    if mp != mpp and max(collar.lists.size(p), collar.lists.size(pp)) < 3:
        raise HypothesisError(
            "chord endpoints need equal lists or one of size three")
    return {"sides": sides, "cset": cset, "qset": qset, "sh4": sh4,
            "large_on_c": large_on_c}


def _target_dom_tiers(collar: Collar, enc: Enclosure,
                      u: int, sides: ChordSides) -> Iterator[Set[int]]:
    """Domain candidates for the cut-off coloring, smallest first."""
    p, pp = enc.endpoints
    qset = set(enc.chord)
    small_v = sides.small.vertices
    cset = set(collar.cycle)
    if not enc.degenerate:
        bases = [{p, pp, enc.w, u}]
    else:
        y, yp = enc.chord[2], enc.chord[3]
        bases = []
        for sub in ({y}, {yp}, {y, yp}):
            if sub & collar.adj[enc.w]:
                bases.append({p, pp, u} | sub)
    arc = (small_v & cset) - qset
    interior = small_v - qset - cset
    for base in bases:
        yield set(base)
    for base in bases:
        if arc:
            yield set(base) | arc
    for base in bases:
        if interior and len(base) + len(arc) + len(interior) <= 10:
            yield set(base) | arc | interior


def _iter_targets(collar: Collar, enc: Enclosure, u: int,
                  fixed: Optional[Mapping[int, int]],
                  max_vertices: int) -> Iterator[Target]:
    ctx = _target_context(collar, enc, u)
    sides: ChordSides = ctx["sides"]  # type: ignore[assignment]
    qset: Set[int] = ctx["qset"]  # type: ignore[assignment]
    small_v = sides.small.vertices
    fixed = dict(fixed or {})
    allowed_fixed = (small_v | {u, enc.endpoints[0], enc.endpoints[1]})
    spill = set(fixed) - allowed_fixed
    if spill:
        raise HypothesisError("fixed colors fall outside the small side",
                              {"vertices": sorted(spill)})
    seen: Set[Tuple[Tuple[int, int], ...]] = set()
    for dom in _target_dom_tiers(collar, enc, u, sides):
        if any(v in qset and v not in dom for v in fixed):
            continue
        dom |= set(fixed)
        A = (set(small_v) - (qset - dom)) | {u}
        for psi in enumerate_colorings(collar.adj, collar.lists, dom, fixed,
                                       max_vertices=max_vertices):
            total = {**fixed, **psi}
            key = tuple(sorted(total.items()))
            if key in seen:
                continue
            seen.add(key)
            cert = check_reduction(collar.adj, collar.lists, A, total,
                                   max_vertices=max_vertices)
            if cert.ok:
                yield Target(enc, u, total, frozenset(A), cert)


def find_target(collar: Collar, enc: Enclosure, u: int, *,
                fixed: Optional[Mapping[int, int]] = None,
                max_vertices: int = DEFAULT_MAX_ORACLE_VERTICES) -> Optional[Target]:
    """Search for a cut-off coloring at the pocket, anchored at the edge uw.

    Hypothesis violations raise; an exhausted search returns None. `fixed`
    pins colors (typically at a chord endpoint) that the coloring must take.
    """
    return next(_iter_targets(collar, enc, u, fixed, max_vertices), None)


# ------------------------------------------------------------------ pairs


@dataclass
class Pair:
    """A verified complete reduction spanning the whole cycle.

    S contains the cycle, the pocket, and the anchor edge; phi colors the
    anchor edge, the chord remainder, and the large-side cycle vertices off
    the level-two shadow. Outside its level-four shadow, S meets distance
    three only at u and distance two only at w, and u joins the cycle by an
    arc over S.
    """

    enclosure: Enclosure
    u: int
    S: FrozenSet[int]
    phi: Dict[int, int]
    certificate: ReductionCertificate


def find_pair(collar: Collar, enc: Enclosure, u: int, *,
              max_vertices: int = DEFAULT_MAX_ORACLE_VERTICES,
              max_attempts: int = 5000) -> Optional[Pair]:
    """Search for a complete reduction built over a maximal pocket at w.

    Hypothesis violations raise; an exhausted search (or attempt budget)
    returns None.
    """
    if not enc.maximal:
        raise HypothesisError("pair search needs a maximal pocket",
                              {"chord": enc.chord})
    ctx = _target_context(collar, enc, u)
    thin = [v for v in collar.cycle if collar.lists.size(v) < 3]
    if thin:
        raise HypothesisError("cycle vertices need lists of size three",
                              {"vertices": thin[:8]})
    sides: ChordSides = ctx["sides"]  # type: ignore[assignment]
    qset: Set[int] = ctx["qset"]  # type: ignore[assignment]
    sh4: FrozenSet[int] = ctx["sh4"]  # type: ignore[assignment]
    large_on_c: Set[int] = ctx["large_on_c"]  # type: ignore[assignment]
    sh2 = _cached_shadow(collar, 2)
    cset = set(collar.cycle)
    small_v = sides.small.vertices
    phi_dom_goal = large_on_c - sh2
    b3 = distance_ball(collar.adj, cset, 3)
    attempts = 0
    for target in _iter_targets(collar, enc, u, None, max_vertices):
        sigma = target.psi
        if set(sigma) & (large_on_c - phi_dom_goal):
            continue
        S = (cset | set(small_v) | {u, enc.w}) - (qset - set(sigma))
        rest = sorted(phi_dom_goal - set(sigma))
        for phi in enumerate_colorings(collar.adj, collar.lists, rest, sigma,
                                       max_vertices=max_vertices):
            attempts += 1
            if attempts > max_attempts:
                return None
            total = {**sigma, **phi}
            cert = check_reduction(collar.adj, collar.lists, S, total,
                                   require_complete=True,
                                   max_vertices=max_vertices)
            if not cert.ok:
                continue
            off = S - sh4
            if {v for v in off if collar.distance_to_cycle(v) == 3} != {u}:
                continue
            if {v for v in off if collar.distance_to_cycle(v) == 2} != {enc.w}:
                continue
            if not S <= (b3 | sh4):
                continue
            if set(total) & large_on_c != phi_dom_goal:
                continue
            if not topologically_reachable(collar.emb, collar.cycle, S, u):
                continue
            return Pair(enc, u, frozenset(S), total, cert)
    return None


# ------------------------------------------------------------------ special set


@dataclass(frozen=True)
class SpEntry:
    """A cycle-adjacent vertex with its widest 2-chord and pocket."""

    y: int
    chord: Tuple[int, int, int]
    side: SideGraph


@dataclass
class SpSet:
    """Cycle-adjacent vertices with large-side contact and two or more cycle
    neighbors, each with the unique 2-chord whose small side holds all of
    its cycle neighbors."""

    entries: List[SpEntry]

    def vertices(self) -> FrozenSet[int]:
        return frozenset(e.y for e in self.entries)


def sp_set(collar: Collar, enc: Enclosure) -> SpSet:
    """Special vertices of a pocket: distance-one vertices that touch the
    large side of the cycle and fan over two or more cycle vertices."""
    det = uniquely_k_determined(collar, 2)
    if not det.ok:
        raise HypothesisError("collar is not determined up to two",
                              {"witness": det.witness})
    sides = collar.sides_of(enc.chord)
    cset = set(collar.cycle)
    large_on_c = sides.large.vertices & cset
    entries: List[SpEntry] = []
    for y in sorted(v for v in range(collar.emb.n)
                    if collar.distance_to_cycle(v) == 1):
        nbrs_c = collar.adj[y] & cset
        if len(nbrs_c) < 2 or not (collar.adj[y] & large_on_c):
            continue
        hits: List[Tuple[Tuple[int, int, int], SideGraph]] = []
        for a, b in combinations(sorted(nbrs_c), 2):
            chord = (a, y, b)
            try:
                ch_sides = collar.sides_of(chord)
            except (PartitionUndefinedError, StructureError):
                continue
            if nbrs_c <= ch_sides.small.vertices:
                hits.append((chord, ch_sides.small))
        if not hits:
            continue
        if len(hits) > 1:
            raise StructureError(
                f"no unique widest 2-chord at {y}",
                )
        chord, side = hits[0]
        entries.append(SpEntry(y, chord, side))
    return SpSet(entries)


# ---------------------------------------------------------------- connectors


DEFAULT_DISTANCE_FLOOR = 34
PATH_LENGTH_FLOOR = 38


@dataclass
class ConnectMember:
    """One reduction in an assembled family, labeled by its role."""

    label: str
    A: FrozenSet[int]
    phi: Dict[int, int]


@dataclass
class ConnectReport:
    """Certified assembly: the union reduction, its members, and the trace
    of the staged search that produced it."""

    A: FrozenSet[int]
    phi: Dict[int, int]
    certificate: ReductionCertificate
    family: FamilyReport
    members: List[ConnectMember]
    stages: List[str]


def _cycle_arc(cycle: Sequence[int], a: int, b: int) -> Tuple[int, ...]:
    """Vertices of the forward arc of the cycle from a to b, inclusive."""
    cycle = tuple(cycle)
    if a not in cycle or b not in cycle:
        raise StructureError(f"arc endpoints {a}, {b} must lie on the cycle")
    i = cycle.index(a)
    out = [a]
    while out[-1] != b:
        i = (i + 1) % len(cycle)
        out.append(cycle[i])
        if len(out) > len(cycle):
            raise StructureError("arc walk failed to close")
    return tuple(out)


def _small_arc(collar: Collar, enc: Enclosure) -> Tuple[int, ...]:
    """The cycle arc carved out by the enclosure's small side."""
    sides = collar.sides_of(enc.chord)
    on_c = sides.small.vertices & set(collar.cycle)
    p, pp = enc.endpoints
    for cand in (_cycle_arc(collar.cycle, p, pp),
                 _cycle_arc(collar.cycle, pp, p)):
        if set(cand) == on_c:
            return cand
    raise StructureError("small side does not meet the cycle in an arc")


def _compatible(adj, colors: Mapping[int, int], phi: Mapping[int, int]) -> bool:
    """Whether phi merges with the committed colors into a proper coloring."""
    for v, c in phi.items():
        if colors.get(v, c) != c:
            return False
        for u in adj[v]:
            if u not in phi and colors.get(u) == c:
                return False
    return True


def _iter_links(collar: Collar, path: Sequence[int], fixed: Mapping[int, int],
                *, max_vertices: int) -> Iterator[Dict[int, int]]:
    """Lazily yield colorings of the path off its level-2 shadow that leave
    the shadow inert, honoring the fixed colors."""
    from .rainbow import sh_k_of_path

    sh2 = sh_k_of_path(collar, path, 2)
    dom = [v for v in path if v not in sh2]
    if any(v not in dom for v in fixed):
        return
    guard = max(max_vertices, len(dom) + 8)
    for ext in enumerate_colorings(collar.adj, collar.lists, dom, dict(fixed),
                                   max_vertices=guard):
        phi = {**fixed, **ext}
        if is_inert(collar.adj, collar.lists, sh2, phi, max_vertices=guard):
            yield phi


def _sweep_member(collar: Collar, label: str, seq: Sequence[int],
                  pins: Mapping[int, int], env: Mapping[int, int],
                  extra: Sequence[int] = (), *,
                  max_vertices: int) -> Optional[ConnectMember]:
    """Totally color seq plus the extra vertices into a verified reduction.

    The sweep extends pins while seeing env (colors committed by earlier
    members) for properness and residual accounting; env stays outside the
    member. Five-listed outsiders with three or more neighbors in the set
    are protected from dropping below three residual colors.
    """
    adj, lists = collar.adj, collar.lists
    T = set(seq) | set(extra)
    near = set()
    for v in T:
        near |= adj[v]
    protect = {v for v in near - T
               if lists.size(v) >= 5 and len(adj[v] & T) >= 3}
    pinned = {**{v: c for v, c in env.items() if v not in T}, **pins}
    psi = sweep_coloring(adj, lists, list(seq) + sorted(set(extra) - set(seq)),
                         pinned, protect)
    if psi is None:
        return None
    phi = {v: psi[v] for v in T}
    cert = check_reduction(adj, lists, T, phi, max_vertices=max_vertices)
    if not cert.ok:
        return None
    return ConnectMember(label, frozenset(T), phi)


def _maximal_enclosures(collar: Collar, w: int) -> List[Enclosure]:
    encs = [e for e in enumerate_enclosures(collar, w) if e.maximal]
    return encs


def _anchor_edge_toward(adj, path: Sequence[int], dist: Mapping[int, int]
                        ) -> Tuple[int, int]:
    """The unique path edge (w, u) with w at distance 2 and u at distance 3
    from the face the distances were measured from."""
    hits = [(a, b) for a, b in zip(path, path[1:])
            if {dist.get(a), dist.get(b)} == {2, 3}]
    if len(hits) != 1:
        raise HypothesisError(
            "path crosses the distance-2/3 shell other than exactly once",
            {"edges": hits})
    a, b = hits[0]
    return (a, b) if dist[a] == 2 else (b, a)


def _dfs_chain(stages: Sequence[Tuple[str, object, int]], state: dict,
               trace: List[str]) -> Optional[dict]:
    if not stages:
        return state
    name, fn, cap = stages[0]
    tried = 0
    for delta in fn(state):
        tried += 1
        member = delta.get("member")
        new_state = {
            "members": state["members"] + ([member] if member else []),
            "colors": ({**state["colors"], **member.phi} if member
                       else state["colors"]),
            "meta": {**state["meta"], **delta.get("meta", {})},
        }
        got = _dfs_chain(stages[1:], new_state, trace)
        if got is not None:
            return got
        if tried >= cap:
            break
    trace.append(f"{name}: no candidate survived ({tried} tried)")
    return None


def _check_connect_shared(emb: RotationEmbedding, L: ListAssignment,
                          family: Sequence[Sequence[int]], d: int) -> None:
    if d < DEFAULT_DISTANCE_FLOOR:
        warnings.warn(f"distance floor {d} is below the proven {DEFAULT_DISTANCE_FLOOR}; "
                      "results are experimental", stacklevel=3)
    adj = emb.adjacency()
    fam = [tuple(C) for C in family]
    fam_sets = [frozenset(C) for C in fam]
    for C in fam:
        if not emb.is_facial_cycle(C):
            raise HypothesisError("family member is not a facial cycle",
                                  {"cycle": C})
    for i in range(len(fam)):
        for j in range(i + 1, len(fam)):
            gap = set_distance(adj, fam_sets[i], fam_sets[j])
            if gap < d:
                raise HypothesisError(
                    f"family members at distance {gap}, below the floor {d}",
                    {"pair": (fam[i], fam[j])})
    for walk in emb.faces():
        vs = frozenset(walk.vertices)
        if len(walk.darts) == 3:
            continue
        if any(vs == fs and len(walk.darts) == len(f)
               for fs, f in zip(fam_sets, fam)):
            continue
        raise HypothesisError("non-family face is not a triangle",
                              {"face": tuple(walk.vertices)})
    on_family = set().union(*fam_sets) if fam_sets else set()
    thin = [v for v in emb.vertices()
            if v not in on_family and L.size(v) < 5]
    if thin:
        raise HypothesisError("vertex off the family has a list smaller "
                              "than five", {"vertices": thin[:8]})
    if not face_width_at_least(emb, 6):
        raise HypothesisError("face width is below six")
    if not is_short_inseparable(emb):
        raise HypothesisError("graph is not short-inseparable")


def _face_distances(adj, cset: Iterable[int]) -> Dict[int, int]:
    return bfs_distances(adj, sorted(cset))


def _normalize_face_path(adj, path: Sequence[int], cset: Set[int],
                         fset: Set[int]) -> Tuple[int, ...]:
    path = tuple(path)
    if path[0] in fset and path[-1] in cset:
        path = tuple(reversed(path))
    if path[0] not in cset or path[-1] not in fset:
        raise HypothesisError("connecting path must run from the far face "
                              "to the root face", {"ends": (path[0], path[-1])})
    for a, b in zip(path, path[1:]):
        if b not in adj[a]:
            raise HypothesisError("consecutive path vertices not adjacent",
                                  {"edge": (a, b)})
    if len(set(path)) != len(path):
        raise HypothesisError("connecting path repeats a vertex")
    want = set_distance(adj, cset, fset)
    if len(path) - 1 != want:
        raise HypothesisError(
            f"connecting path has length {len(path) - 1}, but the faces are "
            f"at distance {want}")
    return path


def _build_filament_member(emb: RotationEmbedding, L: ListAssignment,
                           path: Sequence[int], colors: Mapping[int, int],
                           label: str, *, max_vertices: int
                           ) -> ConnectMember:
    """Reduce the free run of a connecting path between its colored anchor
    stubs. `colors` must cover the anchors adjacent to both faces."""
    from .filament import Filament, filament_reduce

    n = len(path) - 1
    window = list(range(2, n - 1))
    hit = [k for k in window if path[k] in colors]
    if not hit or min(hit) > 3 or max(hit) < n - 3:
        raise StructureError("anchor colors missing on the path window",
                             {"hit": hit})
    first, last = min(hit), max(hit)
    star = tuple(path[first:last + 1])
    left = tuple(path[k] for k in range(first, 4))
    right = tuple(path[k] for k in range(n - 3, last + 1))
    f = {path[k]: colors[path[k]] for k in hit}
    if set(f) != set(left) | set(right):
        raise StructureError("anchor colors are not confined to the stubs",
                             {"colored": sorted(f)})
    fil = Filament(star, left, right, f)
    red = filament_reduce(emb, L, fil, max_vertices=max_vertices)
    return ConnectMember(label, red.H, red.tau)


def _last_arc_candidates(collar: Collar, arc: Sequence[int],
                         pins: Mapping[int, int], env: Mapping[int, int],
                         avoid: Set[int], *, full_cycle: bool,
                         max_vertices: int) -> Iterator[dict]:
    """Reductions covering the one cycle arc the links leave uncolored.

    Candidates, in proof order: the arc plus one internal peak far from the
    enclosures; the bare arc; for short arcs, the certified peak search.
    When the arc is already inside the committed domain, a no-op suffices.
    """
    adj = collar.adj
    if all(v in env for v in arc):
        yield {"member": None}
        return
    if full_cycle:
        yield from ({"member": m} for m in filter(None, [
            _sweep_member(collar, "last-arc", arc, pins, env,
                          max_vertices=max_vertices)]))
        return
    from .rainbow import link_plus_one, peaks

    dist = bfs_distances(adj, sorted(avoid)) if avoid else {}
    pk = peaks(collar, arc)
    far = sorted((w for w in pk.internal if dist.get(w, 99) > 3))
    for w in far:
        m = _sweep_member(collar, "last-arc", arc, pins, env, (w,),
                          max_vertices=max_vertices)
        if m is not None:
            yield {"member": m}
    m = _sweep_member(collar, "last-arc", arc, pins, env,
                      max_vertices=max_vertices)
    if m is not None:
        yield {"member": m}
    if len(arc) <= 10:
        try:
            found = link_plus_one(collar, tuple(arc), dict(pins),
                                  max_vertices=max_vertices)
        except HypothesisError:
            found = []
        for w, cert in found:
            if dist.get(w, 99) > 3:
                yield {"member": ConnectMember("last-arc", cert.A,
                                               dict(cert.phi))}


def _chain_layout(collar: Collar, encs: Sequence[Enclosure]) -> Optional[dict]:
    """Cyclic layout of the enclosures' cycle arcs and the free arcs between
    them. None when some small side fails to carve an arc."""
    cycle = collar.cycle
    index = {v: i for i, v in enumerate(cycle)}
    try:
        rs = [_small_arc(collar, e) for e in encs]
    except StructureError:
        return None
    for r in rs:
        if len(r) == len(cycle):
            return None
    order = sorted(range(len(encs)), key=lambda i: index[rs[i][0]])
    taken: Set[int] = set()
    for r in rs:
        if taken & set(r):
            return None
        taken |= set(r)
    m = len(encs)
    arcs = []
    full_cycle = False
    for k in range(m):
        i, j = order[k], order[(k + 1) % m]
        if m == 1 and len(rs[i]) == 1:
            root = rs[i][0]
            at = index[root]
            arcs.append(tuple(cycle[at:] + cycle[:at]))
            full_cycle = True
            break
        arc = _cycle_arc(cycle, rs[i][-1], rs[j][0])
        if set(arc[1:-1]) & taken:
            return None
        arcs.append(arc)
    return {"order": order, "rs": rs, "arcs": arcs, "full_cycle": full_cycle}


def connect_faces(emb: RotationEmbedding, L: ListAssignment,
                  family: Sequence[Sequence[int]],
                  dfamily: Sequence[Sequence[int]], F: Sequence[int],
                  paths: Optional[Sequence[Sequence[int]]] = None, *,
                  d: int = DEFAULT_DISTANCE_FLOOR,
                  max_vertices: int = DEFAULT_MAX_ORACLE_VERTICES
                  ) -> ConnectReport:
    """Color a connected reducible set linking every far face to the root.

    The assembly follows the linked-enclosure recipe: an anchored target at
    each far face's entry point into the root collar, link colorings of the
    root arcs between them, one extra-vertex reduction on the last arc,
    a complete pair at each far face, and a path reduction bridging each
    pair to its target. The member family and the union are re-verified
    from scratch; conclusion containment is checked literally.
    """
    adj = emb.adjacency()
    F = tuple(F)
    dfam = [tuple(C) for C in dfamily]
    fam = [tuple(C) for C in family]
    if len(dfam) <= 1:
        raise HypothesisError("need at least two determined family members")
    if F not in dfam or any(C not in fam for C in dfam):
        raise HypothesisError("root face must belong to the determined "
                              "subfamily, which must sit inside the family")
    _check_connect_shared(emb, L, fam, d)
    for C in dfam:
        thin = [v for v in C if L.size(v) != 3]
        if thin:
            raise HypothesisError("determined family vertices need exactly "
                                  "three colors", {"vertices": thin})
    others = [C for C in dfam if C != F]
    fset = set(F)
    dist_f = _face_distances(adj, fset)
    if paths is None:
        paths = []
        for C in others:
            best = min(C, key=lambda v: dist_f[v])
            walk = shortest_path(adj, best, fset)
            paths.append(tuple(reversed(walk)))
    if len(paths) != len(others):
        raise HypothesisError("one connecting path per far face is required")
    paths = [_normalize_face_path(adj, p, set(C), fset)
             for C, p in zip(others, paths)]
    for i in range(len(paths)):
        for j in range(i + 1, len(paths)):
            gap = set_distance(adj, paths[i], paths[j])
            if gap < d:
                raise HypothesisError(
                    f"connecting paths at distance {gap}, below the floor {d}")
    for p in paths:
        if len(p) - 1 < PATH_LENGTH_FLOOR:
            raise HypothesisError(
                f"connecting path has length {len(p) - 1}; the path reduction "
                f"machinery needs at least {PATH_LENGTH_FLOOR}")
    collar_f = Collar(emb, F, L)
    if not uniquely_k_determined(collar_f, 4).ok:
        raise HypothesisError("root face is not uniquely 4-determined")
    trace: List[str] = []
    m = len(others)

    anchors = []
    far_members: List[ConnectMember] = []
    for i, (C, path) in enumerate(zip(others, paths)):
        collar_c = Collar(emb, C, L)
        if not uniquely_k_determined(collar_c, 4).ok:
            raise HypothesisError("far face is not uniquely 4-determined",
                                  {"face": C})
        w, u = _anchor_edge_toward(adj, path, dist_f)
        wp, up = _anchor_edge_toward(adj, path, _face_distances(adj, set(C)))
        pair = None
        for enc in _maximal_enclosures(collar_c, wp):
            pair = find_pair(collar_c, enc, up, max_vertices=max_vertices)
            if pair is not None:
                break
        if pair is None:
            raise SearchExhaustedError(
                "no certified pair at a far face", trace + [f"pair[{i}]"])
        far_members.append(ConnectMember(f"pair[{i}]", pair.S, dict(pair.phi)))
        encs = _maximal_enclosures(collar_f, w)
        if not encs:
            raise SearchExhaustedError(
                "no enclosure at a root anchor", trace + [f"enclosure[{i}]"])
        anchors.append({"face": C, "path": path, "w": w, "u": u,
                        "encs": encs, "collar": collar_c})

    def stage_layout(state):
        for combo in product(*(a["encs"] for a in anchors)):
            layout = _chain_layout(collar_f, list(combo))
            if layout is None:
                continue
            yield {"meta": {"encs": list(combo), "layout": layout}}

    def stage_target(k):
        def run(state):
            layout = state["meta"]["layout"]
            i = layout["order"][k]
            enc = state["meta"]["encs"][i]
            fixed = {}
            if k > 0:
                y = layout["rs"][i][0]
                fixed = {y: state["colors"][y]}
            for tgt in _iter_targets(collar_f, enc, anchors[i]["u"], fixed,
                                     max_vertices):
                if not _compatible(adj, state["colors"], tgt.psi):
                    continue
                yield {"member": ConnectMember(f"target[{i}]", tgt.A,
                                               dict(tgt.psi))}
        return run

    def stage_link(k):
        def run(state):
            layout = state["meta"]["layout"]
            arc = layout["arcs"][k]
            i = layout["order"][k]
            x = layout["rs"][i][-1]
            fixed = {x: state["colors"][x]}
            from .rainbow import is_k_consistent
            if not is_k_consistent(collar_f, arc, 2):
                return
            for phi in _iter_links(collar_f, arc, fixed,
                                   max_vertices=max_vertices):
                if not _compatible(adj, state["colors"], phi):
                    continue
                from .rainbow import sh_k_of_path
                a = frozenset(arc) | frozenset(sh_k_of_path(collar_f, arc, 2))
                yield {"member": ConnectMember(f"link[{k}]", a, phi)}
        return run

    def stage_last(state):
        layout = state["meta"]["layout"]
        arc = layout["arcs"][m - 1]
        i, j = layout["order"][m - 1], layout["order"][0]
        x, y = layout["rs"][i][-1], layout["rs"][j][0]
        pins = {x: state["colors"][x], y: state["colors"][y]}
        avoid = set(state["meta"]["encs"][i].chord)
        avoid |= set(state["meta"]["encs"][j].chord)
        yield from _last_arc_candidates(
            collar_f, arc, pins, state["colors"], avoid,
            full_cycle=layout["full_cycle"], max_vertices=max_vertices)

    def stage_assemble(state):
        members = list(state["members"]) + list(far_members)
        colors = dict(state["colors"])
        for fm in far_members:
            colors.update(fm.phi)
        try:
            for i, a in enumerate(anchors):
                members.append(_build_filament_member(
                    emb, L, a["path"], colors, f"filament[{i}]",
                    max_vertices=max_vertices))
        except (SearchExhaustedError, StructureError) as e:
            trace.append(f"filament: {e}")
            return
        fam_report = check_consistent_family(
            adj, L, [(mm.A, mm.phi) for mm in members],
            verify_members=True, max_vertices=max_vertices)
        if not fam_report.ok:
            trace.append(f"family: {fam_report.failures[:3]}")
            return
        A = frozenset().union(*(mm.A for mm in members))
        phi = fam_report.union
        cert = check_reduction(adj, L, A, phi, require_complete=True,
                               max_vertices=max_vertices)
        if not cert.ok:
            trace.append(f"union: {cert.reason}")
            return
        if not is_connected(induced_adj(adj, A)):
            trace.append("conclusion: union not connected")
            return
        for C in dfam:
            if not A & set(C):
                trace.append("conclusion: family member missed")
                return
        allowed = distance_ball(adj, fset, 2) | _cached_shadow(collar_f, 4)
        for a in anchors:
            allowed |= _cached_shadow(a["collar"], 4)
            allowed |= distance_ball(adj, set(a["face"]) | set(a["path"]), 2)
        if not A <= allowed:
            trace.append(f"conclusion: containment failed "
                         f"{sorted(A - allowed)[:5]}")
            return
        yield {"meta": {"report": ConnectReport(
            A, dict(phi), cert, fam_report, members, list(trace))}}

    stages: List[Tuple[str, object, int]] = [("layout", stage_layout, 8)]
    for k in range(m):
        stages.append((f"target[{k}]", stage_target(k), 6))
        if k < m - 1:
            stages.append((f"link[{k}]", stage_link(k), 6))
    stages.append(("last-arc", stage_last, 10))
    stages.append(("assemble", stage_assemble, 1))
    final = _dfs_chain(stages, {"members": [], "colors": {}, "meta": {}},
                       trace)
    if final is None:
        raise SearchExhaustedError("face connection search exhausted", trace)
    report: ConnectReport = final["meta"]["report"]
    return report


def connect_single_face(emb: RotationEmbedding, L: ListAssignment,
                        F: Sequence[int], path: Sequence[int],
                        family: Optional[Sequence[Sequence[int]]] = None, *,
                        d: int = DEFAULT_DISTANCE_FLOOR,
                        max_vertices: int = DEFAULT_MAX_ORACLE_VERTICES
                        ) -> ConnectReport:
    """Color a connected reducible set along a returning path at one face.

    The path leaves the face, runs through 5-listed territory, and returns;
    together with the face it carries a noncontractible curve. The assembly
    anchors a target at each end of the path, links one side arc of the
    face, covers the other with an extra-vertex reduction, and bridges the
    two targets with a path reduction; everything is re-verified.
    """
    adj = emb.adjacency()
    F = tuple(F)
    path = tuple(path)
    if family is None:
        family = [tuple(w.vertices) for w in emb.faces()
                  if len(w.darts) != 3]
        if F not in family and frozenset(F) not in {frozenset(c) for c in family}:
            family = list(family) + [F]
    fam = [tuple(C) for C in family]
    if F not in fam:
        raise HypothesisError("root face must belong to the family")
    _check_connect_shared(emb, L, fam, d)
    thin = [v for v in F if L.size(v) < 3]
    if thin:
        raise HypothesisError("root face vertices need at least three "
                              "colors", {"vertices": thin})
    collar_f = Collar(emb, F, L)
    if not uniquely_k_determined(collar_f, 4).ok:
        raise HypothesisError("root face is not uniquely 4-determined")
    fset = set(F)
    n = len(path) - 1
    if path[0] not in fset or path[-1] not in fset or path[0] == path[-1]:
        raise HypothesisError("path must return to the face at a distinct "
                              "vertex")
    if len(set(path)) != len(path):
        raise HypothesisError("returning path repeats a vertex")
    for a, b in zip(path, path[1:]):
        if b not in adj[a]:
            raise HypothesisError("consecutive path vertices not adjacent",
                                  {"edge": (a, b)})
    dist_ends = bfs_distances(adj, [path[0]])
    if dist_ends.get(path[-1]) != n:
        raise HypothesisError("returning path is not a shortest path "
                              "between its endpoints")
    if n < max(d, PATH_LENGTH_FLOOR):
        raise HypothesisError(
            f"returning path has length {n}; the reduction machinery needs "
            f"at least {max(d, PATH_LENGTH_FLOOR)}")
    dist_f = _face_distances(adj, fset)
    for k in range(4):
        want = {path[k], path[n - k]}
        got = {v for v in path if dist_f[v] == k}
        if got != want:
            raise HypothesisError(
                f"path meets the distance-{k} shell at {sorted(got)}, "
                f"expected {sorted(want)}")
    arc_a = _cycle_arc(F, path[-1], path[0])
    arc_b = _cycle_arc(F, path[0], path[-1])
    closed_a = path + arc_a[1:-1][::-1] if len(arc_a) > 2 else path
    closed_b = path + arc_b[1:-1] if len(arc_b) > 2 else path
    if is_contractible(emb, closed_a) and is_contractible(emb, closed_b):
        raise HypothesisError("face plus path carries no noncontractible "
                              "curve")
    trace: List[str] = []
    v2, v3 = path[2], path[3]
    w2, w3 = path[n - 2], path[n - 3]
    encs_q = _maximal_enclosures(collar_f, v2)
    encs_qq = _maximal_enclosures(collar_f, w2)
    if not encs_q or not encs_qq:
        raise SearchExhaustedError("no enclosure at a path anchor", trace)

    def stage_layout(state):
        for eq, eqq in product(encs_q, encs_qq):
            try:
                r, rr = _small_arc(collar_f, eq), _small_arc(collar_f, eqq)
            except StructureError:
                continue
            if set(r) & set(rr) or len(r) == len(F) or len(rr) == len(F):
                continue
            if set(r + rr) & set(path[3:n - 2]):
                continue
            p1 = _cycle_arc(F, r[-1], rr[0])
            p0 = _cycle_arc(F, rr[-1], r[0])
            if set(p1[1:-1]) & set(r + rr) or set(p0[1:-1]) & set(r + rr):
                continue
            yield {"meta": {"eq": eq, "eqq": eqq, "r": r, "rr": rr,
                            "p0": p0, "p1": p1}}

    def stage_target_q(state):
        for tgt in _iter_targets(collar_f, state["meta"]["eq"], v3, {},
                                 max_vertices):
            yield {"member": ConnectMember("target[q]", tgt.A,
                                           dict(tgt.psi))}

    def stage_link(state):
        meta = state["meta"]
        arc = meta["p1"]
        x1 = meta["r"][-1]
        from .rainbow import is_k_consistent, sh_k_of_path
        if not is_k_consistent(collar_f, arc, 2):
            return
        fixed = {x1: state["colors"][x1]}
        for phi in _iter_links(collar_f, arc, fixed,
                               max_vertices=max_vertices):
            if not _compatible(adj, state["colors"], phi):
                continue
            a = frozenset(arc) | frozenset(sh_k_of_path(collar_f, arc, 2))
            yield {"member": ConnectMember("link", a, phi)}

    def stage_target_qq(state):
        meta = state["meta"]
        y1 = meta["rr"][0]
        fixed = {y1: state["colors"][y1]}
        for tgt in _iter_targets(collar_f, meta["eqq"], w3, fixed,
                                 max_vertices):
            if not _compatible(adj, state["colors"], tgt.psi):
                continue
            yield {"member": ConnectMember("target[q']", tgt.A,
                                           dict(tgt.psi))}

    def stage_last(state):
        meta = state["meta"]
        arc = meta["p0"]
        x0, y0 = meta["r"][0], meta["rr"][-1]
        pins = {y0: state["colors"][y0], x0: state["colors"][x0]}
        avoid = set(meta["eq"].chord) | set(meta["eqq"].chord)
        yield from _last_arc_candidates(
            collar_f, arc, pins, state["colors"], avoid, full_cycle=False,
            max_vertices=max_vertices)

    def stage_assemble(state):
        members = list(state["members"])
        try:
            members.append(_build_filament_member(
                emb, L, path, state["colors"], "filament",
                max_vertices=max_vertices))
        except (SearchExhaustedError, StructureError) as e:
            trace.append(f"filament: {e}")
            return
        fam_report = check_consistent_family(
            adj, L, [(mm.A, mm.phi) for mm in members],
            verify_members=True, max_vertices=max_vertices)
        if not fam_report.ok:
            trace.append(f"family: {fam_report.failures[:3]}")
            return
        A = frozenset().union(*(mm.A for mm in members))
        phi = fam_report.union
        cert = check_reduction(adj, L, A, phi, require_complete=True,
                               max_vertices=max_vertices)
        if not cert.ok:
            trace.append(f"union: {cert.reason}")
            return
        if not is_connected(induced_adj(adj, A)):
            trace.append("conclusion: union not connected")
            return
        must = fset | set(path[3:n - 2])
        if not must <= A:
            trace.append(f"conclusion: required vertices missed "
                         f"{sorted(must - A)[:5]}")
            return
        allowed = (distance_ball(adj, fset | set(path), 2)
                   | _cached_shadow(collar_f, 4))
        if not A <= allowed:
            trace.append(f"conclusion: containment failed "
                         f"{sorted(A - allowed)[:5]}")
            return
        yield {"meta": {"report": ConnectReport(
            A, dict(phi), cert, fam_report, members, list(trace))}}

    stages: List[Tuple[str, object, int]] = [
        ("layout", stage_layout, 8),
        ("target[q]", stage_target_q, 6),
        ("link", stage_link, 6),
        ("target[q']", stage_target_qq, 6),
        ("last-arc", stage_last, 10),
        ("assemble", stage_assemble, 1),
    ]
    final = _dfs_chain(stages, {"members": [], "colors": {}, "meta": {}},
                       trace)
    if final is None:
        raise SearchExhaustedError("single-face connection search exhausted",
                                   trace)
    report: ConnectReport = final["meta"]["report"]
    return report
