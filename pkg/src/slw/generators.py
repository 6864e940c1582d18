"""Deterministic and seeded instance factories.

Every structure the test suites quantify over is produced here: the torus
ladder family, wheels and broken wheels, triangulated strips, random and
exhaustively enumerated disc triangulations, collar instances, and the large
two-face torus instances used by the end-to-end connectors.

All randomness flows through :class:`slw.prng.SplitMix64`, so a fixed seed
gives bit-identical output. Every factory validates its own output (the
embedding constructor re-checks structure; factories assert the advertised
hypotheses).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .embedding import RotationEmbedding
from .errors import HypothesisError
from .graphs import bfs_distances, set_distance
from .io import Instance
from .listcolor import ListAssignment
from .prng import SplitMix64
from . import topology

__all__ = [
    "torus_ladder",
    "ladder_adjacency_rows",
    "wheel",
    "broken_wheel",
    "fan_strip",
    "torus_grid",
    "stacked_triangulation",
    "disc_triangulation",
    "ThomassenInstance",
    "thomassen_instance",
    "enumerate_disc_triangulations",
    "enumerate_stacked_triangulations",
    "is_stacked",
    "canonical_signature",
    "CollarInstance",
    "disc_collar",
    "TwoFaceInstance",
    "two_face_surface_instance",
]


# ---------------------------------------------------------------------------
# Torus ladder family


def _ladder_anchor_columns(k: int) -> Tuple[int, int]:
    """Anchor columns (m, m') for the handle vertex of torus_ladder(k).

    Chosen to maximize the length of the shortest noncontractible cycle,
    which runs through the anchor: min(m+2, m'-m+3, k-m'+3). The residue
    constraints keep the anchor's neighbors from spanning all three colors
    in the rigid ladder colorings, so colorability stays exactly
    "k not congruent to 1 mod 3".
    """
    r = k % 3

    def admissible(a: int, b: int) -> bool:
        if not 1 <= a < b <= k:
            return False
        if r == 0:
            return a % 3 != 0 and b % 3 != 1
        if r == 2:
            return a % 3 != 1 and b % 3 != 2
        return True

    best = None
    for a in range(1, k + 1):
        for b in range(a + 1, k + 1):
            if not admissible(a, b):
                continue
            score = min(a + 2, b - a + 3, k - b + 3)
            key = (-score, a, b)
            if best is None or key < best:
                best = key
    return best[1], best[2]


def ladder_adjacency_rows(k: int) -> List[Tuple[str, List[str]]]:
    """Human-readable adjacency table of torus_ladder(k), one row per vertex."""
    m, mp = _ladder_anchor_columns(k)
    rows = [("x", ["p1", "q1", "y", "z"]),
            ("y", ["pk", "qk", "x", "z"])]
    for i in range(1, k + 1):
        nb = []
        nb.append("x" if i == 1 else f"p{i - 1}")
        nb.append("y" if i == k else f"p{i + 1}")
        nb.append(f"q{i}")
        if i > 1:
            nb.append(f"q{i - 1}")
        if i == m:
            nb.append("z")
        rows.append((f"p{i}", nb))
    for i in range(1, k + 1):
        nb = []
        nb.append("x" if i == 1 else f"q{i - 1}")
        nb.append("y" if i == k else f"q{i + 1}")
        nb.append(f"p{i}")
        if i < k:
            nb.append(f"p{i + 1}")
        if i == mp:
            nb.append("z")
        rows.append((f"q{i}", nb))
    rows.append(("z", ["x", "y", f"p{m}", f"q{mp}"]))
    return rows


def torus_ladder(k: int) -> Tuple[RotationEmbedding, ListAssignment]:
    """The ladder-with-handle family on the torus, all lists {1, 2, 3}.

    Vertex numbering: x=0, y=1, p_i=2i, q_i=2i+1 (i = 1..k), and the handle
    anchor z=2k+2. The two rows p, q are joined by the rungs p_i q_i and the
    diagonals q_i p_{i+1}; x sees p_1, q_1 and y sees p_k, q_k; the edge xy
    crosses the handle. The anchor z (adjacent to x, y, p_m, q_m') pins the
    handle so the embedding is cellular: without it no rotation system of
    the bare ladder has edge width above 3, because the ladder's 2k
    triangles cannot all be faces (side budget 6k < 2|E|) and every
    contractible triangle must bound a face.

    The ladder subgraph forces color(x) = color(y) under uniform 3-lists
    whenever k = 1 (mod 3), so those instances are not colorable; all other
    k are colorable. Edge width grows like k/3 (strictly increasing over
    k in {3, 6, 9}).
    """
    if k < 3:
        raise HypothesisError(f"torus_ladder needs k >= 3, got {k}")

    def p(i: int) -> int:
        return 2 * i

    def q(i: int) -> int:
        return 2 * i + 1

    x, y = 0, 1
    z = 2 * k + 2
    m, mp = _ladder_anchor_columns(k)

    faces: List[Sequence[int]] = [(x, q(1), p(1))]
    for i in range(1, k):
        faces.append((q(i), q(i + 1), p(i + 1)))
        faces.append((q(i), p(i + 1), p(i)))
    faces.append((q(k), y, p(k)))
    faces.append((x, y, z))
    # Two big faces cover the handle region around z; their walks are forced
    # by the triangle faces up to one binary choice at z.
    big1 = ([x] + [p(i) for i in range(1, m + 1)] + [z]
            + [q(i) for i in range(mp, 0, -1)] + [x, z]
            + [p(i) for i in range(m, k + 1)] + [y])
    big2 = [z, y] + [q(i) for i in range(k, mp - 1, -1)]
    faces.append(tuple(big1))
    faces.append(tuple(big2))

    emb = RotationEmbedding.from_faces(faces)
    assert emb.n == 2 * k + 3 and emb.m == 4 * k + 6
    assert emb.genus() == 1, "torus ladder must be embedded on the torus"
    lists = ListAssignment.uniform(emb.vertices(), (1, 2, 3))
    return emb, lists


# ---------------------------------------------------------------------------
# Small planar families


def _listify(emb: RotationEmbedding, lists) -> Optional[ListAssignment]:
    if lists is None:
        return None
    if isinstance(lists, ListAssignment):
        return lists
    return ListAssignment.from_colors(dict(lists))


def wheel(n: int, lists=None) -> Instance:
    """Wheel: hub 0 joined to the rim cycle 1..n."""
    if n < 3:
        raise HypothesisError(f"wheel needs rim length >= 3, got {n}")
    faces: List[Sequence[int]] = [(0, i, i % n + 1) for i in range(1, n + 1)]
    faces.append(tuple(range(n, 0, -1)))
    emb = RotationEmbedding.from_faces(faces)
    assert emb.genus() == 0
    return Instance(emb, _listify(emb, lists))


def broken_wheel(l: int, lists=None) -> Instance:
    """Broken wheel: principal vertex 0 joined to the rim path 1..l.

    The principal path is 1, 0, l. broken_wheel(2) is a triangle.
    """
    if l < 2:
        raise HypothesisError(f"broken_wheel needs rim length >= 2, got {l}")
    faces: List[Sequence[int]] = [(0, i, i + 1) for i in range(1, l)]
    faces.append((0, l) + tuple(range(l - 1, 0, -1)))
    emb = RotationEmbedding.from_faces(faces)
    assert emb.genus() == 0
    return Instance(emb, _listify(emb, lists))


def fan_strip(n: int, lists=None) -> Instance:
    """Triangulated two-row strip: top row 0..n-1, bottom row n..2n-1.

    Columns are joined by rungs t_i b_i and diagonals b_i t_{i+1}; every
    inner face is a triangle and the outer face is the boundary cycle.
    """
    if n < 2:
        raise HypothesisError(f"fan_strip needs >= 2 columns, got {n}")

    def t(i: int) -> int:
        return i

    def b(i: int) -> int:
        return n + i

    faces: List[Sequence[int]] = []
    for i in range(n - 1):
        faces.append((b(i), b(i + 1), t(i + 1)))
        faces.append((b(i), t(i + 1), t(i)))
    faces.append(tuple(range(n)) + tuple(range(2 * n - 1, n - 1, -1)))
    emb = RotationEmbedding.from_faces(faces)
    assert emb.genus() == 0
    return Instance(emb, _listify(emb, lists))


def ridge_disc(fans: int, lists=None) -> Instance:
    """Triangulated disc with a row of `fans` interior apexes over the top arc.

    The boundary cycle is 0, 1, ..., 2*fans, b where b = 2*fans + 1 is a
    single bottom vertex. Apex w_i = 2*fans + 2 + i sits over the top
    vertices 2i, 2i+1, 2i+2; consecutive apexes share a top vertex and an
    edge, and b is joined to every apex. Apexes have at least two top
    neighbours each, so the path 0..2*fans has fans - 2 peaks not adjacent
    to its ends.
    """
    if fans < 2:
        raise HypothesisError(f"ridge_disc needs >= 2 fans, got {fans}")
    m = fans
    b = 2 * m + 1

    def w(i: int) -> int:
        return 2 * m + 2 + i

    faces: List[Sequence[int]] = []
    for i in range(m):
        faces.append((2 * i, 2 * i + 1, w(i)))
        faces.append((2 * i + 1, 2 * i + 2, w(i)))
    for i in range(m - 1):
        faces.append((2 * i + 2, w(i + 1), w(i)))
    faces.append((b, 0, w(0)))
    for i in range(m - 1):
        faces.append((b, w(i), w(i + 1)))
    faces.append((b, w(m - 1), 2 * m))
    faces.append((0, b) + tuple(range(2 * m, 0, -1)))
    emb = RotationEmbedding.from_faces(faces)
    assert emb.genus() == 0
    return Instance(emb, _listify(emb, lists))


def torus_grid(w: int, h: int) -> RotationEmbedding:
    """Triangulated w-by-h torus grid (6-regular; rows, columns, diagonals)."""
    if w < 3 or h < 3:
        raise HypothesisError(f"torus_grid needs w, h >= 3, got {w}x{h}")

    def v(i: int, j: int) -> int:
        return (i % w) * h + (j % h)

    faces: List[Sequence[int]] = []
    for i in range(w):
        for j in range(h):
            faces.append((v(i, j), v(i + 1, j), v(i + 1, j + 1)))
            faces.append((v(i, j), v(i + 1, j + 1), v(i, j + 1)))
    emb = RotationEmbedding.from_faces(faces)
    assert emb.genus() == 1
    return emb


# ---------------------------------------------------------------------------
# Random disc triangulations


def stacked_triangulation(n: int, seed: int) -> RotationEmbedding:
    """Random stacked (Apollonian) triangulation with n vertices.

    Starts from a triangle and repeatedly inserts a vertex into a uniformly
    chosen inner face, joined to its three corners. The outer face stays
    the base triangle (0, 2, 1).
    """
    if n < 3:
        raise HypothesisError(f"stacked_triangulation needs n >= 3, got {n}")
    rng = SplitMix64(seed)
    inner: List[Tuple[int, int, int]] = [(0, 1, 2)]
    for u in range(3, n):
        a, b, c = inner.pop(rng.randrange(len(inner)))
        inner.extend([(a, b, u), (b, c, u), (c, a, u)])
    faces: List[Sequence[int]] = list(inner)
    faces.append((0, 2, 1))
    emb = RotationEmbedding.from_faces(faces)
    assert emb.genus() == 0
    assert emb.n == n and emb.m == 3 * n - 6
    return emb


def disc_triangulation(outer_len: int, interior: int, seed: int,
                       flips: Optional[int] = None) -> RotationEmbedding:
    """Random near-triangulation of the disc: outer cycle 0..outer_len-1
    facial, `interior` vertices inside, every inner face a triangle.

    Built by a random ear decomposition of the polygon, random vertex
    insertions, and then `flips` random diagonal flips for variety (flips
    reach triangulations that stacking alone cannot, such as interior
    vertices of degree above three).
    """
    c = outer_len
    if c < 3:
        raise HypothesisError(f"disc_triangulation needs outer cycle >= 3, got {c}")
    if interior < 0:
        raise HypothesisError("interior count must be nonnegative")
    rng = SplitMix64(seed)

    adj: Dict[int, Set[int]] = {v: set() for v in range(c + interior)}

    def add_edge(a: int, b: int) -> None:
        adj[a].add(b)
        adj[b].add(a)

    for i in range(c):
        add_edge(i, (i + 1) % c)

    triangles: List[Tuple[int, int, int]] = []
    regions: List[List[int]] = [list(range(c))]
    while regions:
        reg = regions.pop()
        if len(reg) == 3:
            triangles.append(tuple(reg))
            continue
        # Random ear at the region's first edge.
        choices = [j for j in range(2, len(reg))
                   if (j == 2 or reg[j] not in adj[reg[1]])
                   and (j == len(reg) - 1 or reg[j] not in adj[reg[0]])]
        j = rng.choice(choices)
        w0, w1, wj = reg[0], reg[1], reg[j]
        if j > 2:
            add_edge(w1, wj)
            regions.append(reg[1:j + 1])
        if j < len(reg) - 1:
            add_edge(wj, w0)
            regions.append([reg[0]] + reg[j:])
        triangles.append((w0, w1, wj))

    for u in range(c, c + interior):
        a, b, d = triangles.pop(rng.randrange(len(triangles)))
        add_edge(a, u)
        add_edge(b, u)
        add_edge(d, u)
        triangles.extend([(a, b, u), (b, d, u), (d, a, u)])

    # Diagonal flips: replace the diagonal of a quad formed by two adjacent
    # triangles when the opposite diagonal is absent and the edge is not on
    # the outer cycle.
    by_edge: Dict[Tuple[int, int], List[int]] = {}

    def index_edges() -> None:
        by_edge.clear()
        for idx, (a, b, d) in enumerate(triangles):
            for u_, v_ in ((a, b), (b, d), (d, a)):
                by_edge.setdefault((min(u_, v_), max(u_, v_)), []).append(idx)

    nflips = 3 * (c + interior) if flips is None else flips
    for _ in range(nflips):
        index_edges()
        inner_edges = [e for e, fs in by_edge.items() if len(fs) == 2]
        if not inner_edges:
            break
        a, b = inner_edges[rng.randrange(len(inner_edges))]
        i1, i2 = by_edge[(a, b)]
        t1, t2 = triangles[i1], triangles[i2]
        u = next(v_ for v_ in t1 if v_ not in (a, b))
        w = next(v_ for v_ in t2 if v_ not in (a, b))
        if u == w or w in adj[u]:
            continue
        # Orientation-preserving flip: in t1 the corner order around (a, b)
        # fixes which way the new triangles wind.
        o1 = list(t1)
        while o1[0] != u:
            o1 = o1[1:] + o1[:1]
        _, s, t_ = o1  # triangle (u, s, t) with {s, t} == {a, b}
        adj[a].discard(b)
        adj[b].discard(a)
        add_edge(u, w)
        triangles[i1] = (u, s, w)
        triangles[i2] = (u, w, t_)

    faces: List[Sequence[int]] = list(triangles)
    faces.append((0,) + tuple(range(c - 1, 0, -1)))
    emb = RotationEmbedding.from_faces(faces)
    assert emb.genus() == 0
    assert emb.n == c + interior
    return emb


# ---------------------------------------------------------------------------
# Thomassen-style instances


@dataclass
class ThomassenInstance:
    """Plane near-triangulation with outer cycle, a precolored outer edge,
    3-lists on the rest of the outer cycle, and 5-lists inside."""

    emb: RotationEmbedding
    outer: Tuple[int, ...]
    xy: Tuple[int, int]
    lists: ListAssignment
    seed: int

    def instance(self) -> Instance:
        return Instance(self.emb, self.lists)


_PALETTE = tuple(range(1, 10))


def thomassen_instance(seed: int, n_max: int = 40) -> ThomassenInstance:
    """Seeded instance satisfying the 5-choosability extension hypotheses."""
    if n_max < 4:
        raise HypothesisError("n_max must allow at least 4 vertices")
    rng = SplitMix64(seed)
    c = rng.randint(3, 8)
    max_interior = max(1, n_max - c)
    interior = rng.randint(1, max_interior)
    emb = disc_triangulation(c, interior, rng.next_u64() & 0x7FFFFFFF)
    outer = tuple(range(c))
    x, y = 0, 1

    colors: Dict[int, List[int]] = {}
    cx = rng.choice(_PALETTE)
    cy = rng.choice([col for col in _PALETTE if col != cx])
    colors[x] = [cx]
    colors[y] = [cy]
    for v in outer[2:]:
        colors[v] = sorted(rng.sample(_PALETTE, 3))
    for v in range(c, emb.n):
        colors[v] = sorted(rng.sample(_PALETTE, 5))
    return ThomassenInstance(emb, outer, (x, y), ListAssignment.from_colors(colors), seed)


# ---------------------------------------------------------------------------
# Exhaustive enumeration of disc triangulations


def canonical_signature(emb: RotationEmbedding,
                        root_darts: Optional[Iterable[int]] = None) -> Tuple[int, ...]:
    """Canonical code of the map, invariant under relabeling and reflection.

    Standard rooted-map canonicalization: traverse darts breadth-first from
    a root, assigning new labels in discovery order via (rotation, twin)
    moves, and take the lexicographically least code over all roots and
    both orientations. Restricting `root_darts` roots the canonical form
    (e.g. to the outer face of a disc).
    """
    nd = emb.next_dart
    tw = emb.twin
    total = 2 * emb.m
    roots = list(root_darts) if root_darts is not None else list(range(total))
    prev = [0] * total
    for d in range(total):
        prev[nd[d]] = d

    best: Optional[List[int]] = None
    for succ in (nd, prev):
        for root in roots:
            label = {root: 0}
            order = [root]
            code: List[int] = []
            i = 0
            while i < len(order):
                d = order[i]
                i += 1
                for e in (succ[d], tw[d]):
                    if e not in label:
                        label[e] = len(order)
                        order.append(e)
                    code.append(label[e])
                if best is not None and code > best[: len(code)]:
                    break
            else:
                if best is None or code < best:
                    best = code
    return tuple(best)


def enumerate_disc_triangulations(outer_len: int, max_vertices: int
                                  ) -> Iterator[RotationEmbedding]:
    """All near-triangulations of the disc with facial outer cycle
    0..outer_len-1 and at most max_vertices vertices, one per isomorphism
    class (isomorphism fixing the outer face setwise).

    Recursion peels one triangle at a region's first boundary edge; the
    apex is either another region corner (adding chords) or a fresh
    interior vertex. Each labeled triangulation arises exactly once since
    the peeled triangle is determined by the result; unlabeled duplicates
    are removed by canonical signature.
    """
    c = outer_len
    if c < 3:
        raise HypothesisError(f"outer cycle needs length >= 3, got {c}")
    if max_vertices < c:
        return

    seen: Set[Tuple[int, ...]] = set()
    adj: Dict[int, Set[int]] = {v: set() for v in range(c)}
    for i in range(c):
        adj[i].add((i + 1) % c)
        adj[(i + 1) % c].add(i)

    triangles: List[Tuple[int, int, int]] = []

    def build() -> Optional[RotationEmbedding]:
        faces: List[Sequence[int]] = list(triangles)
        faces.append((0,) + tuple(range(c - 1, 0, -1)))
        emb = RotationEmbedding.from_faces(faces)
        outer_walk = faces[-1]
        # Mirror-closed root set: the outer walk darts and their twins, so
        # reflected copies canonicalize identically.
        root_darts = []
        for i in range(c):
            d = emb.dart_between(outer_walk[i], outer_walk[(i + 1) % c])
            root_darts.extend((d, emb.twin[d]))
        sig = canonical_signature(emb, root_darts)
        if sig in seen:
            return None
        seen.add(sig)
        return emb

    def rec(regions: List[List[int]], nverts: int) -> Iterator[RotationEmbedding]:
        if not regions:
            emb = build()
            if emb is not None:
                yield emb
            return
        reg = regions[-1]
        rest = regions[:-1]
        w0, w1 = reg[0], reg[1]
        f = len(reg)
        # The triangle on the region side of edge (w0, w1) in the finished
        # triangulation is unique, so enumerating its apex makes each
        # labeled triangulation arise exactly once. Apex = another region
        # corner (new chords must not duplicate existing edges) or a fresh
        # interior vertex.
        for j in range(2, f):
            wj = reg[j]
            need = []
            if j > 2:
                if wj in adj[w1]:
                    continue
                need.append((w1, wj))
            if j < f - 1:
                if wj in adj[w0]:
                    continue
                need.append((wj, w0))
            for a, b in need:
                adj[a].add(b)
                adj[b].add(a)
            triangles.append((w0, w1, wj))
            sub = []
            if j > 2:
                sub.append(reg[1:j + 1])
            if j < f - 1:
                sub.append([reg[0]] + reg[j:])
            yield from rec(rest + sub, nverts)
            triangles.pop()
            for a, b in need:
                adj[a].discard(b)
                adj[b].discard(a)
        if nverts < max_vertices:
            u = nverts
            adj[u] = {w0, w1}
            adj[w0].add(u)
            adj[w1].add(u)
            triangles.append((w0, w1, u))
            yield from rec(rest + [[reg[1]] + reg[2:] + [reg[0], u]], nverts + 1)
            triangles.pop()
            adj[w0].discard(u)
            adj[w1].discard(u)
            del adj[u]

    yield from rec([list(range(c))], c)


def is_stacked(emb: RotationEmbedding, outer: Sequence[int]) -> bool:
    """True when repeatedly deleting interior degree-3 vertices empties the
    interior (the defining reduction of stacked triangulations)."""
    outer_set = set(outer)
    adj = {v: set(emb.neighbors(v)) for v in emb.vertices()}
    interior = [v for v in emb.vertices() if v not in outer_set]
    changed = True
    remaining = set(interior)
    while changed:
        changed = False
        for v in list(remaining):
            if len(adj[v]) == 3:
                for u in adj[v]:
                    adj[u].discard(v)
                del adj[v]
                remaining.discard(v)
                changed = True
    return not remaining


def enumerate_stacked_triangulations(outer_len: int, max_vertices: int
                                     ) -> Iterator[RotationEmbedding]:
    """Disc triangulations whose interior is stacked, outer cycle 3 or 4."""
    if outer_len not in (3, 4):
        raise HypothesisError("stacked enumeration covers outer cycles of length 3 or 4")
    outer = tuple(range(outer_len))
    for emb in enumerate_disc_triangulations(outer_len, max_vertices):
        if is_stacked(emb, outer):
            yield emb


# ---------------------------------------------------------------------------
# Collar and connector instances


@dataclass
class CollarInstance:
    """Plane instance whose outer facial cycle C carries 3-lists and whose
    interior carries 5-lists."""

    emb: RotationEmbedding
    C: Tuple[int, ...]
    lists: ListAssignment
    seed: int

    def instance(self) -> Instance:
        return Instance(self.emb, self.lists)


def disc_collar(seed: int, outer_min: int = 6, outer_max: int = 10,
                interior_min: int = 3, interior_max: int = 8) -> CollarInstance:
    """Seeded planar collar: outer cycle with 3-lists, triangulated inside."""
    rng = SplitMix64(seed)
    c = rng.randint(outer_min, outer_max)
    interior = rng.randint(interior_min, interior_max)
    emb = disc_triangulation(c, interior, rng.next_u64() & 0x7FFFFFFF)
    colors: Dict[int, List[int]] = {}
    for v in range(c):
        colors[v] = sorted(rng.sample(_PALETTE, 3))
    for v in range(c, emb.n):
        colors[v] = sorted(rng.sample(_PALETTE, 5))
    return CollarInstance(emb, tuple(range(c)), ListAssignment.from_colors(colors), seed)


@dataclass
class TwoFaceInstance:
    """Torus instance with two distinguished triangle faces far apart and
    face-width at least six; the faces hold 3-lists, the rest 5-lists."""

    emb: RotationEmbedding
    faces: Tuple[Tuple[int, ...], ...]
    lists: ListAssignment
    d: int
    seed: int
    width: int
    height: int

    def instance(self) -> Instance:
        return Instance(self.emb, self.lists)


def two_face_surface_instance(seed: int, d: int = 34, *,
                              check_width: bool = True) -> TwoFaceInstance:
    """Triangulated torus grid with two faces at distance >= d.

    The grid is wide enough that two faces half the grid apart exceed the
    distance floor, and tall enough that the face width is at least six
    (verified with the truncated scanner when check_width is set).
    """
    rng = SplitMix64(seed)
    h = rng.randint(10, 14)
    # wide enough that the face distance clears d with slack for the
    # colored-path machinery run between the faces
    w = rng.randint(2 * d + 12, 2 * d + 20)
    emb = torus_grid(w, h)

    def corner(i: int, j: int) -> int:
        return (i % w) * h + (j % h)

    i0, j0 = rng.randrange(w), rng.randrange(h)
    i1 = (i0 + w // 2) % w
    j1 = (j0 + h // 2) % h
    f0 = (corner(i0, j0), corner(i0 + 1, j0), corner(i0 + 1, j0 + 1))
    f1 = (corner(i1, j1), corner(i1 + 1, j1), corner(i1 + 1, j1 + 1))
    assert emb.is_facial_cycle(f0) and emb.is_facial_cycle(f1)

    adj = emb.adjacency()
    dist = set_distance(adj, f0, f1)
    assert dist >= d + 4, f"face distance {dist} below floor {d} + 4"
    if check_width:
        assert topology.face_width_at_least(emb, 6)
    colors: Dict[int, List[int]] = {v: list(_PALETTE) for v in emb.vertices()}
    for face in (f0, f1):
        for v in face:
            colors[v] = sorted(rng.sample(_PALETTE, 3))
    lists = ListAssignment.from_colors(colors)
    return TwoFaceInstance(emb, (f0, f1), lists, d, seed, w, h)
