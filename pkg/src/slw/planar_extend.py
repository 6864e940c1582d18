"""Constructive coloring extension for plane graphs.

The core routine extends a proper coloring of one boundary edge to the whole
graph whenever the other boundary vertices have lists of size three and the
interior vertices have lists of size five. The recursion is the classical
one: split the instance at a chord of the boundary cycle, or delete the
boundary vertex next to the colored edge while reserving two of its colors.
A fully precolored boundary cycle of length at most four reduces to the same
engine by peeling the extra colored vertices first.

The engine requires a near-triangulation (every inner face a triangle).
General inputs are normalized by adding chords inside big inner faces; the
rare shapes where that fails fall back to the exact search oracle below its
size guard.
"""

from typing import Dict, List, Optional, Sequence, Set, Tuple

from .embedding import RotationEmbedding
from .errors import HypothesisError, StructureError
from .graphs import induced_adj
from .listcolor import (DEFAULT_MAX_ORACLE_VERTICES, ListAssignment,
                        is_proper_partial, mask_colors, oracle_extend,
                        residual_mask)
from .topology import is_short_inseparable, regions_of_complement

Coloring = Dict[int, int]


# ------------------------------------------------------------- validation


def _check_facial_cycle(emb: RotationEmbedding, cycle: Sequence[int]) -> None:
    if not emb.is_facial_cycle(cycle):
        raise HypothesisError(
            "boundary is not a facial cycle", {"cycle": tuple(cycle)})


def _check_lists_cover(emb: RotationEmbedding, lists: ListAssignment) -> None:
    missing = [v for v in range(emb.n) if v not in lists]
    if missing:
        raise HypothesisError(
            "list assignment misses vertices", {"vertices": missing})


def _check_sizes(emb: RotationEmbedding, lists: ListAssignment,
                 boundary: Set[int], exempt: Set[int]) -> None:
    """Boundary (minus exempt) needs 3-lists, interior needs 5-lists."""
    for v in range(emb.n):
        if v in exempt:
            continue
        need = 3 if v in boundary else 5
        if lists.size(v) < need:
            where = "boundary" if v in boundary else "interior"
            raise HypothesisError(
                f"{where} vertex {v} has a list of size {lists.size(v)} < {need}")


def _verify_full(emb: RotationEmbedding, lists: ListAssignment,
                 colors: Coloring) -> Coloring:
    for v in range(emb.n):
        c = colors.get(v)
        if c is None:
            raise StructureError(f"vertex {v} left uncolored")
        if not lists.allows(v, c):
            raise StructureError(f"vertex {v} colored {c} outside its list")
    for d in range(2 * emb.m):
        t = emb.twin[d]
        if d < t and colors[emb.vertex_of[d]] == colors[emb.vertex_of[t]]:
            raise StructureError(
                f"edge {emb.vertex_of[d]}-{emb.vertex_of[t]} monochromatic")
    return colors


def _rotate_to_edge(cycle: Sequence[int], x: int, y: int) -> List[int]:
    """Cycle as a list starting x, y; errors if xy is not a cycle edge."""
    cyc = list(cycle)
    p = len(cyc)
    for i, v in enumerate(cyc):
        if v != x:
            continue
        if cyc[(i + 1) % p] == y:
            return [cyc[(i + t) % p] for t in range(p)]
        if cyc[(i - 1) % p] == y:
            return [cyc[(i - t) % p] for t in range(p)]
    raise HypothesisError(
        f"{x}-{y} is not an edge of the boundary cycle", {"cycle": tuple(cycle)})


# --------------------------------------------- near-triangulation normal form


def _facial_walks(emb: RotationEmbedding, outer: Sequence[int]) -> Tuple[List[List[int]], int]:
    walks = [list(f.vertices) for f in emb.faces()]
    d = emb.dart_between(outer[0], outer[1])
    if d is None:
        raise HypothesisError(f"{outer[0]}-{outer[1]} is not an edge")
    oset = set(outer)
    for cand in (d, emb.twin[d]):
        f = emb.face_of_dart(cand)
        if len(walks[f]) == len(outer) and set(walks[f]) == oset:
            return walks, f
    raise HypothesisError(
        "boundary is not a facial cycle", {"cycle": tuple(outer)})


def _triangulated(emb: RotationEmbedding,
                  outer: Sequence[int]) -> Optional[RotationEmbedding]:
    """Add chords until every non-outer face is a triangle.

    Keeps vertex numbering; returns None when some face cannot be split
    (repeated corners with all candidate chords already present).
    """
    walks, oi = _facial_walks(emb, outer)
    adj = {v: set(ns) for v, ns in emb.adjacency().items()}
    queue = [i for i in range(len(walks)) if i != oi and len(walks[i]) > 3]
    while queue:
        i = queue.pop()
        w = walks[i]
        k = len(w)
        if k <= 3:
            continue
        pick = None
        for t in range(k):
            u, x = w[t], w[(t + 2) % k]
            if u != x and x not in adj[u]:
                pick = t
                break
        if pick is None:
            return None
        u, mid, x = w[pick], w[(pick + 1) % k], w[(pick + 2) % k]
        adj[u].add(x)
        adj[x].add(u)
        walks.append([u, mid, x])
        walks[i] = [x] + [w[(pick + 2 + s) % k] for s in range(1, k - 2)] + [u]
        if len(walks[i]) > 3:
            queue.append(i)
    try:
        return RotationEmbedding.from_faces(walks)
    except StructureError:
        return None


# ------------------------------------------------------------------- engine


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class _Engine:
    """Extension recursion over a fixed near-triangulation.

    State: `colors` maps finished vertices to colors; `masks` holds the
    remaining colors of unfinished vertices. The colored vertices of every
    working cycle form one contiguous arc at the front of the cycle list.
    """

    def __init__(self, emb: RotationEmbedding, masks: Dict[int, int],
                 colors: Coloring):
        self.emb = emb
        self.adj = emb.adjacency()
        self.rows = emb.rotation_rows()
        self.masks = masks
        self.colors = colors

    def _assign(self, v: int, c: int) -> None:
        # Proper by construction; any clash here is a recursion bug.
        for u in self.adj[v]:
            if self.colors.get(u) == c:
                raise StructureError(f"color clash on edge {v}-{u}")
        self.colors[v] = c

    def _cut(self, u: int, color: int, floor: int) -> None:
        nm = self.masks[u] & ~(1 << color)
        if nm.bit_count() < floor:
            raise StructureError(
                f"list of vertex {u} fell below {floor}; invariant broken")
        self.masks[u] = nm

    def _fan(self, v: int, a: int, b: int, members: Set[int]) -> List[int]:
        """Neighbors of v strictly between cycle neighbors a and b, ordered
        as a chain from a's side to b's side."""
        ring = [self.emb.head(d) for d in self.rows[v]]
        ring = [u for u in ring if u in members]
        ia = ring.index(a)
        ring = ring[ia:] + ring[:ia]
        if ring[-1] == b:
            return ring[1:-1]
        if ring[1] == b:
            return list(reversed(ring[2:]))
        raise StructureError(
            f"cycle neighbors of {v} do not flank its remaining fan")

    def _orient(self, cycle: List[int]) -> Tuple[List[int], int]:
        p = len(cycle)
        colored = [v in self.colors for v in cycle]
        k = sum(colored)
        if k == p:
            return cycle, k
        starts = [s for s in range(p)
                  if colored[s] and not colored[(s - 1) % p]]
        if k < 2 or len(starts) != 1:
            raise StructureError("colored boundary is not one arc of size >= 2")
        s = starts[0]
        rot = [cycle[(s + t) % p] for t in range(p)]
        if not all(rot[t] in self.colors for t in range(k)):
            raise StructureError("colored boundary is not contiguous")
        return rot, k

    def _find_chord(self, cycle: List[int]) -> Optional[Tuple[int, int]]:
        p = len(cycle)
        pos = {v: i for i, v in enumerate(cycle)}
        for i in range(p - 2):
            best = None
            for u in self.adj[cycle[i]]:
                j = pos.get(u)
                if j is not None and j >= i + 2 and not (i == 0 and j == p - 1):
                    if best is None or j < best:
                        best = j
            if best is not None:
                return i, best
        return None

    def _chord_at(self, cycle: List[int], t: int) -> Optional[int]:
        """Smallest cycle position chorded to position t, or None."""
        p = len(cycle)
        pos = {v: i for i, v in enumerate(cycle)}
        out = None
        for u in self.adj[cycle[t]]:
            j = pos.get(u)
            if j is None or (j - t) % p in (1, p - 1):
                continue
            if out is None or j < out:
                out = j
        return out

    def _split(self, cycle: List[int], members: Set[int], i: int, j: int):
        p = len(cycle)
        side1 = cycle[i:j + 1]
        side2 = cycle[j:] + cycle[:i + 1]
        eids = set()
        for s in range(len(side1)):
            a, b = side1[s], side1[(s + 1) % len(side1)]
            eids.add(self.emb.edge_id(self.emb.dart_between(a, b)))
        dec = regions_of_complement(self.emb, set(side1), eids)
        if len(dec.regions) != 2:
            raise StructureError("chord cycle does not split the disc in two")
        marker = cycle[(j + 1) % p]
        inside1: Set[int] = set()
        for reg in dec.regions:
            if marker not in reg.interior_vertices:
                inside1 |= reg.interior_vertices
        members1 = set(side1) | (inside1 & members)
        members2 = (members - members1) | {cycle[i], cycle[j]}
        return (side1, members1), (side2, members2)

    def solve(self, cycle: List[int], members: Set[int]) -> None:
        cycle, k = self._orient(cycle)
        p = len(cycle)
        if k == p and len(members) == p:
            return
        if k >= 3:
            # Longer colored arcs arise from precolored short cycles.  A
            # chord at the arc end splits off first: the side holding the
            # rest of the arc carries every colored constraint of the shared
            # end, so it is solved before the other side.  Splitting away
            # from the arc end could instead color a shared vertex without
            # seeing its colored neighbours across the chord.
            at = self._chord_at(cycle, k - 1)
            if at is not None:
                i, j = sorted((k - 1, at))
                sides = self._split(cycle, members, i, j)
                counts = [sum(v in self.colors for v in c) for c, _ in sides]
                if counts[1] > counts[0]:
                    sides = (sides[1], sides[0])
                for cyc, mem in sides:
                    self.solve(cyc, mem)
                return
            # Peel the colored arc end; its color leaves the fan's lists.
            ve = cycle[k - 1]
            nxt = cycle[k % p]
            us = self._fan(ve, cycle[k - 2], nxt, members)
            cve = self.colors[ve]
            for u in us:
                self._cut(u, cve, 3)
            if nxt not in self.colors:
                self._cut(nxt, cve, 3)
            members.discard(ve)
            rest = cycle[:k - 1] + us + cycle[k:]
            if len(rest) < 3:
                if set(rest) != members:
                    raise StructureError("boundary degenerated with interior left")
                return
            self.solve(rest, members)
            return
        chord = self._find_chord(cycle)
        if chord is not None:
            # The side keeping the colored edge xy goes first; the other
            # side then starts from the freshly colored chord ends.
            (c1, m1), (c2, m2) = self._split(cycle, members, *chord)
            first1 = chord[0] == 0
            for cyc, mem in ((c1, m1), (c2, m2)) if first1 else ((c2, m2), (c1, m1)):
                self.solve(cyc, mem)
            return
        x, y = cycle[0], cycle[1]
        if p == 3 and len(members) == 3:
            t = cycle[2]
            m = self.masks.pop(t) & ~(1 << self.colors[x]) & ~(1 << self.colors[y])
            if not m:
                raise StructureError(f"no color left for final vertex {t}")
            self._assign(t, _lowest(m))
            return
        # Delete the uncolored boundary vertex next to x, keeping two of its
        # colors off the fan so one of them survives for it afterwards.
        vp = cycle[-1]
        us = self._fan(vp, cycle[-2], x, members)
        mask_vp = self.masks.pop(vp) & ~(1 << self.colors[x])
        if mask_vp.bit_count() < 2:
            raise StructureError(f"vertex {vp} cannot reserve two colors")
        c1 = _lowest(mask_vp)
        c2 = _lowest(mask_vp & ~(1 << c1))
        for u in us:
            self._cut(u, c1, 0)
            self._cut(u, c2, 3)
        members.discard(vp)
        self.solve(cycle[:-1] + us, members)
        avail = ((1 << c1) | (1 << c2)) & ~(1 << (self.colors[cycle[-2]]))
        if not avail:
            raise StructureError(f"reserved colors of {vp} both spent")
        self._assign(vp, _lowest(avail))


def _run_engine(emb: RotationEmbedding, outer: Sequence[int],
                lists: ListAssignment, colors: Coloring) -> Optional[Coloring]:
    """Normalize and run the recursion; None means normalization failed."""
    tri = _triangulated(emb, outer)
    if tri is None:
        return None
    masks = {v: lists.mask(v) for v in range(emb.n) if v not in colors}
    engine = _Engine(tri, masks, dict(colors))
    engine.solve(list(outer), set(range(emb.n)))
    return engine.colors


# ------------------------------------------------------------ public entry


def thomassen_extend(emb: RotationEmbedding, outer: Sequence[int],
                     xy: Tuple[int, int], lists: ListAssignment,
                     *, max_oracle_vertices: int = DEFAULT_MAX_ORACLE_VERTICES
                     ) -> Coloring:
    """Color a plane graph whose boundary cycle carries one colorable edge.

    `outer` must be a facial cycle and xy one of its edges. Vertices of the
    boundary other than x, y need lists of size three, interior vertices
    lists of size five, and the edge xy must admit a proper color pair. The
    returned coloring is verified before it is handed back; the smallest
    proper pair on xy is used, and ties inside the recursion break toward
    smaller colors, so reruns are reproducible.
    """
    _check_lists_cover(emb, lists)
    _check_facial_cycle(emb, outer)
    x, y = xy
    cycle = _rotate_to_edge(outer, x, y)
    _check_sizes(emb, lists, set(outer), {x, y})
    pair = None
    for cx in lists.colors(x):
        for cy in lists.colors(y):
            if cy != cx:
                pair = (cx, cy)
                break
        if pair:
            break
    if pair is None:
        raise HypothesisError(
            f"edge {x}-{y} admits no proper color pair",
            {"x": lists.colors(x), "y": lists.colors(y)})
    if emb.is_connected and emb.genus() != 0:
        raise HypothesisError("embedding is not planar")
    colors = {x: pair[0], y: pair[1]}
    solved = None
    if emb.is_connected:
        solved = _run_engine(emb, cycle, lists, colors)
    if solved is None:
        solved = oracle_extend(emb, lists, colors,
                               max_vertices=max_oracle_vertices)
    if solved is None:
        raise StructureError(
            "extension is guaranteed by the hypotheses but none was found")
    return _verify_full(emb, lists, solved)


def extend_short_cycle(emb: RotationEmbedding, cycle: Sequence[int],
                       lists: ListAssignment, phi: Coloring,
                       *, max_oracle_vertices: int = DEFAULT_MAX_ORACLE_VERTICES
                       ) -> Coloring:
    """Extend a proper coloring of a facial cycle of length <= 4.

    Interior vertices need 5-lists; phi must properly color the cycle's
    vertex set (chords included). Succeeds by peeling the colored boundary
    down to a single colored edge and rerunning the main recursion.
    """
    _check_lists_cover(emb, lists)
    _check_facial_cycle(emb, cycle)
    cyc = list(cycle)
    if not 3 <= len(cyc) <= 4:
        raise HypothesisError(f"cycle length {len(cyc)} outside 3..4")
    if set(phi) != set(cyc):
        raise HypothesisError("coloring domain is not the cycle vertex set")
    if not is_proper_partial(emb, lists, phi):
        raise HypothesisError("boundary coloring is not a proper list coloring")
    _check_sizes(emb, lists, set(cyc), set(cyc))
    if emb.is_connected and emb.genus() != 0:
        raise HypothesisError("embedding is not planar")
    solved = None
    if emb.is_connected:
        solved = _run_engine(emb, cyc, lists, dict(phi))
    if solved is None:
        solved = oracle_extend(emb, lists, dict(phi),
                               max_vertices=max_oracle_vertices)
    if solved is None:
        raise StructureError(
            "extension is guaranteed by the hypotheses but none was found")
    return _verify_full(emb, lists, solved)


def two_two_lists_color(emb: RotationEmbedding, outer: Sequence[int],
                        v: int, w: int, lists: ListAssignment,
                        *, max_oracle_vertices: int = DEFAULT_MAX_ORACLE_VERTICES
                        ) -> Coloring:
    """Color a plane graph whose boundary carries two 2-lists.

    v and w (distinct) sit on the boundary cycle with lists of size two;
    the rest of the boundary has 3-lists and the interior 5-lists. When v
    and w are boundary neighbors this runs the constructive recursion with
    their smallest proper pair; otherwise it branches on v's colors in
    front of the exact oracle, which is why instances beyond the oracle
    guard are rejected rather than guessed at.
    """
    _check_lists_cover(emb, lists)
    _check_facial_cycle(emb, outer)
    if v == w:
        raise HypothesisError("the two 2-list vertices must be distinct")
    if v not in set(outer) or w not in set(outer):
        raise HypothesisError("both 2-list vertices must lie on the boundary")
    for z in (v, w):
        if lists.size(z) < 2:
            raise HypothesisError(
                f"vertex {z} has a list of size {lists.size(z)} < 2")
    _check_sizes(emb, lists, set(outer), {v, w})
    cyc = list(outer)
    p = len(cyc)
    iv = cyc.index(v)
    if cyc[(iv + 1) % p] == w or cyc[(iv - 1) % p] == w:
        return thomassen_extend(emb, outer, (v, w), lists,
                                max_oracle_vertices=max_oracle_vertices)
    for cv in lists.colors(v):
        solved = oracle_extend(emb, lists, {v: cv},
                               max_vertices=max_oracle_vertices)
        if solved is not None:
            return _verify_full(emb, lists, solved)
    raise StructureError(
        "coloring is guaranteed by the hypotheses but none was found")


# -------------------------------------------------------------- obstructions


def _is_induced_path(adj: Dict[int, Set[int]], nverts: int) -> bool:
    if len(adj) != nverts:
        return False
    degs = sorted(len(ns) for ns in adj.values())
    if degs != [1, 1] + [2] * (nverts - 2):
        return False
    # connected: walk from one end
    start = next(v for v, ns in adj.items() if len(ns) == 1)
    seen = {start}
    cur = start
    while True:
        nxt = [u for u in adj[cur] if u not in seen]
        if not nxt:
            break
        cur = nxt[0]
        seen.add(cur)
    return len(seen) == nverts


def classify_obstruction(emb: RotationEmbedding, cycle: Sequence[int],
                         lists: ListAssignment, phi: Coloring,
                         *, max_oracle_vertices: int = DEFAULT_MAX_ORACLE_VERTICES
                         ) -> str:
    """Why a colored facial 5- or 6-cycle fails to extend, if it fails.

    Returns "extendable" when the exact oracle extends phi. Otherwise the
    graph minus the cycle must be one of three shapes, and the matching one
    is returned:

    - "case_i": a lone vertex adjacent to at least five cycle vertices
      (all five when the cycle is a pentagon) with no color left;
    - "case_ii": an edge whose ends see the same single leftover color and
      whose cycle neighborhoods induce three-edge paths;
    - "case_iii": a triangle whose corners see the same two leftover colors
      and whose cycle neighborhoods induce two-edge paths.

    A non-extendable instance matching none of these raises StructureError,
    since the guarantee says the list is exhaustive.
    """
    _check_lists_cover(emb, lists)
    _check_facial_cycle(emb, cycle)
    cyc = list(cycle)
    if not 5 <= len(cyc) <= 6:
        raise HypothesisError(f"cycle length {len(cyc)} outside 5..6")
    if not emb.is_connected:
        raise HypothesisError("embedding must be connected")
    if emb.genus() != 0:
        raise HypothesisError("embedding is not planar")
    if not is_short_inseparable(emb):
        raise HypothesisError("embedding is not short-inseparable")
    if set(phi) != set(cyc):
        raise HypothesisError("coloring domain is not the cycle vertex set")
    if not is_proper_partial(emb, lists, phi):
        raise HypothesisError("boundary coloring is not a proper list coloring")
    inner = [u for u in range(emb.n) if u not in set(cyc)]
    for u in inner:
        if lists.size(u) < 5:
            raise HypothesisError(
                f"interior vertex {u} has a list of size {lists.size(u)} < 5")
    if oracle_extend(emb, lists, dict(phi),
                     max_vertices=max_oracle_vertices) is not None:
        return "extendable"

    adj = emb.adjacency()
    cset = set(cyc)
    residuals = {u: residual_mask(emb, lists, phi, u) for u in inner}

    def cycle_nbhd(u: int) -> Dict[int, Set[int]]:
        return induced_adj(adj, adj[u] & cset)

    if len(inner) == 1:
        u = inner[0]
        # at least five cycle neighbors; on a pentagon that means all five
        if len(adj[u] & cset) >= 5 and residuals[u] == 0:
            return "case_i"
    if len(cyc) == 6 and len(inner) == 2:
        a, b = inner
        same = residuals[a] == residuals[b] and residuals[a].bit_count() == 1
        if (b in adj[a] and same
                and _is_induced_path(cycle_nbhd(a), 4)
                and _is_induced_path(cycle_nbhd(b), 4)):
            return "case_ii"
    if len(cyc) == 6 and len(inner) == 3:
        tri = all(b in adj[a] for a in inner for b in inner if a != b)
        masks = {residuals[u] for u in inner}
        if (tri and len(masks) == 1 and next(iter(masks)).bit_count() == 2
                and all(_is_induced_path(cycle_nbhd(u), 3) for u in inner)):
            return "case_iii"
    raise StructureError(
        "coloring does not extend and no obstruction shape matches: "
        f"interior={inner}, leftovers={ {u: mask_colors(residuals[u]) for u in inner} }")
