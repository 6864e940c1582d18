"""Combinatorial-map embeddings of simple graphs in orientable surfaces.

A map is stored as darts (directed edge ends) with three dense integer arrays:

* ``vertex_of[d]`` — the vertex a dart leaves;
* ``next_dart[d]`` — the next dart in the rotation around ``vertex_of[d]``;
* ``twin[d]``      — the opposite dart of the same edge (fixed-point-free
  involution).

Faces are the orbits of ``d -> next_dart[twin[d]]``; with V - E + F = 2 - 2g
this pins the (orientable) surface. Rotation systems cannot express
non-orientable maps, so orientability is structural rather than checked.

Graphs are simple (no loops, no parallel edges) per the standing assumption of
everything downstream; the radial-graph construction in :mod:`slw.topology`
is the one internal client that needs parallel edges and uses the private
``allow_multi`` escape hatch.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import StructureError
from .graphs import connected_components


@dataclass(frozen=True)
class FacialWalk:
    """One face of a map: the closed walk of darts along its boundary.

    ``vertices`` repeats a vertex whenever the boundary walk does; a facial
    *cycle* (simple boundary) is the common case but not guaranteed.
    """

    darts: Tuple[int, ...]
    vertices: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.darts)

    @property
    def is_cycle(self) -> bool:
        return len(self.vertices) >= 3 and len(set(self.vertices)) == len(self.vertices)

    def vertex_set(self) -> Set[int]:
        return set(self.vertices)

    def edge_list(self) -> List[frozenset]:
        vs = self.vertices
        return [frozenset((vs[i], vs[(i + 1) % len(vs)])) for i in range(len(vs))]


class RotationEmbedding:
    """Immutable embedded graph; vertices and darts are dense integers."""

    __slots__ = (
        "n", "m", "vertex_of", "next_dart", "twin",
        "_rot_rows", "_faces", "_face_of_dart", "_adj", "_dart_lookup",
        "_components", "_allow_multi", "_h1_cocycles",
    )

    def __init__(self, vertex_of: Sequence[int], next_dart: Sequence[int],
                 twin: Sequence[int], *, allow_multi: bool = False):
        self.vertex_of = list(vertex_of)
        self.next_dart = list(next_dart)
        self.twin = list(twin)
        self._allow_multi = allow_multi
        self.n = (max(self.vertex_of) + 1) if self.vertex_of else 0
        if len(self.vertex_of) % 2:
            raise StructureError("odd number of darts")
        self.m = len(self.vertex_of) // 2
        self._rot_rows: Optional[List[List[int]]] = None
        self._faces: Optional[List[FacialWalk]] = None
        self._face_of_dart: Optional[List[int]] = None
        self._adj: Optional[Dict[int, Set[int]]] = None
        self._dart_lookup: Optional[Dict[Tuple[int, int], int]] = None
        self._components: Optional[List[Set[int]]] = None
        self._h1_cocycles = None  # lazy cache used by topology
        self._validate()

    # ------------------------------------------------------------------ build

    @classmethod
    def from_rotations(cls, rotations: Sequence[Sequence[int]]) -> "RotationEmbedding":
        """Build from per-vertex cyclic neighbor lists.

        Unambiguous only for simple graphs: each neighbor may appear once per
        rotation, and u in rotations[v] must be matched by v in rotations[u].
        """
        n = len(rotations)
        offsets = []
        total = 0
        for v in range(n):
            offsets.append(total)
            total += len(rotations[v])
        vertex_of = [0] * total
        next_dart = [0] * total
        position: Dict[Tuple[int, int], int] = {}
        for v, row in enumerate(rotations):
            k = len(row)
            if k == 0:
                raise StructureError(f"vertex {v} is isolated; maps here have no isolated vertices")
            for i, u in enumerate(row):
                if not (0 <= u < n):
                    raise StructureError(f"rotation of {v} names unknown vertex {u}")
                if u == v:
                    raise StructureError(f"loop at vertex {v}")
                d = offsets[v] + i
                vertex_of[d] = v
                next_dart[d] = offsets[v] + (i + 1) % k
                if (v, u) in position:
                    raise StructureError(f"parallel edge {v}-{u} in rotation of {v}")
                position[(v, u)] = d
        twin = [-1] * total
        for (v, u), d in position.items():
            e = position.get((u, v))
            if e is None:
                raise StructureError(f"edge {v}-{u} missing from rotation of {u}")
            twin[d] = e
        return cls(vertex_of, next_dart, twin)

    @classmethod
    def from_faces(cls, faces: Sequence[Sequence[int]]) -> "RotationEmbedding":
        """Build from the full list of faces, each an oriented vertex cycle.

        Orientations must be consistent: every edge appears exactly once in
        each direction over all walks. The rotation at b is recovered from
        the walk rule next(b->a) = b->c for each corner a, b, c of a face.
        """
        dart_id: Dict[Tuple[int, int], int] = {}
        for walk in faces:
            k = len(walk)
            for i in range(k):
                a, b = walk[i], walk[(i + 1) % k]
                if a == b:
                    raise StructureError(f"loop {a}-{b} in face walk")
                if (a, b) in dart_id:
                    raise StructureError(f"directed edge {a}->{b} on two face walks")
                dart_id[(a, b)] = len(dart_id)
        vertex_of = [0] * len(dart_id)
        twin = [-1] * len(dart_id)
        next_dart = [-1] * len(dart_id)
        for (a, b), d in dart_id.items():
            vertex_of[d] = a
            rev = dart_id.get((b, a))
            if rev is None:
                raise StructureError(f"edge {a}-{b} traversed in only one direction")
            twin[d] = rev
        for walk in faces:
            k = len(walk)
            for i in range(k):
                a, b, c = walk[i], walk[(i + 1) % k], walk[(i + 2) % k]
                next_dart[dart_id[(b, a)]] = dart_id[(b, c)]
        return cls(vertex_of, next_dart, twin)

    def _validate(self) -> None:
        nd = len(self.vertex_of)
        if sorted(self.next_dart) != list(range(nd)):
            raise StructureError("next_dart is not a permutation of the darts")
        if nd and set(self.vertex_of) != set(range(self.n)):
            raise StructureError("vertex ids are not dense (isolated vertices are not allowed)")
        for d in range(nd):
            t = self.twin[d]
            if not (0 <= t < nd) or t == d or self.twin[t] != d:
                raise StructureError(f"twin is not a fixed-point-free involution at dart {d}")
            if self.vertex_of[t] == self.vertex_of[d]:
                raise StructureError(f"loop edge at dart {d}")
        # Each vertex's darts must form a single rotation cycle.
        seen = [False] * nd
        for row in self.rotation_rows():
            v = self.vertex_of[row[0]]
            for d in row:
                if self.vertex_of[d] != v:
                    raise StructureError(f"rotation at {v} strays to another vertex")
                if seen[d]:
                    raise StructureError(f"dart {d} visited twice in rotations")
                seen[d] = True
        if not all(seen):
            raise StructureError("rotation cycles do not cover all darts")
        if not self._allow_multi:
            edges = set()
            for d in range(nd):
                e = frozenset((self.vertex_of[d], self.vertex_of[self.twin[d]]))
                if d < self.twin[d]:
                    if e in edges:
                        raise StructureError(f"parallel edge {set(e)}")
                    edges.add(e)
        if self.euler_characteristic() % 2:
            raise StructureError("odd Euler characteristic; map is inconsistent")

    # ------------------------------------------------------------- structure

    def rotation_rows(self) -> List[List[int]]:
        """Darts grouped per vertex in rotation order (deterministic start)."""
        if self._rot_rows is None:
            first: Dict[int, int] = {}
            for d in range(len(self.vertex_of)):
                first.setdefault(self.vertex_of[d], d)
            rows = []
            for v in sorted(first):
                d0 = first[v]
                row = [d0]
                d = self.next_dart[d0]
                while d != d0:
                    row.append(d)
                    d = self.next_dart[d]
                rows.append(row)
            self._rot_rows = rows
        return self._rot_rows

    def vertices(self) -> range:
        return range(self.n)

    def degree(self, v: int) -> int:
        return len(self.rotation_rows()[v])

    def neighbors(self, v: int) -> List[int]:
        """Neighbors of v in rotation order."""
        return [self.vertex_of[self.twin[d]] for d in self.rotation_rows()[v]]

    def adjacency(self) -> Dict[int, Set[int]]:
        if self._adj is None:
            self._adj = {v: set(self.neighbors(v)) for v in range(self.n)}
        return self._adj

    def head(self, d: int) -> int:
        return self.vertex_of[self.twin[d]]

    def edge_id(self, d: int) -> int:
        """Canonical name of d's edge: the smaller dart of the pair. Works on
        multigraph maps, where vertex pairs do not identify edges."""
        t = self.twin[d]
        return d if d < t else t

    def dart_between(self, v: int, u: int) -> Optional[int]:
        """The dart from v to u, for simple maps."""
        if self._dart_lookup is None:
            self._dart_lookup = {
                (self.vertex_of[d], self.head(d)): d for d in range(len(self.vertex_of))
            }
        return self._dart_lookup.get((v, u))

    def has_edge(self, v: int, u: int) -> bool:
        return u in self.adjacency()[v]

    def edges(self) -> Set[frozenset]:
        return {frozenset((self.vertex_of[d], self.head(d))) for d in range(2 * self.m)}

    # ----------------------------------------------------------------- faces

    def faces(self) -> List[FacialWalk]:
        if self._faces is None:
            nd = len(self.vertex_of)
            face_of = [-1] * nd
            walks: List[FacialWalk] = []
            for d0 in range(nd):
                if face_of[d0] >= 0:
                    continue
                walk = []
                d = d0
                while face_of[d] < 0:
                    face_of[d] = len(walks)
                    walk.append(d)
                    d = self.next_dart[self.twin[d]]
                if d != d0:
                    raise StructureError("face tracing produced a rho-shaped orbit")
                walks.append(FacialWalk(tuple(walk), tuple(self.vertex_of[x] for x in walk)))
            self._faces = walks
            self._face_of_dart = face_of
        return self._faces

    def face_of_dart(self, d: int) -> int:
        self.faces()
        assert self._face_of_dart is not None
        return self._face_of_dart[d]

    def facial_cycle_containing(self, cycle: Sequence[int]) -> Optional[FacialWalk]:
        """The face whose boundary is exactly the given vertex cycle, if any."""
        want = set(cycle)
        for f in self.faces():
            if len(f.vertices) == len(cycle) and f.vertex_set() == want and f.is_cycle:
                return f
        return None

    def is_facial_cycle(self, cycle: Sequence[int]) -> bool:
        return self.facial_cycle_containing(cycle) is not None

    # -------------------------------------------------------------- topology

    def components(self) -> List[Set[int]]:
        if self._components is None:
            self._components = sorted(connected_components(self.adjacency()), key=min)
        return self._components

    @property
    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def euler_characteristic(self) -> int:
        return self.n - self.m + len(self.faces())

    def genus(self) -> int:
        if not self.is_connected:
            raise StructureError("genus of a disconnected map is per-component; see component_genera")
        return (2 - self.euler_characteristic()) // 2

    def component_genera(self) -> List[int]:
        out = []
        for comp in self.components():
            v = len(comp)
            e = sum(1 for edge in self.edges() if next(iter(edge)) in comp)
            f = sum(1 for face in self.faces() if face.vertices[0] in comp)
            out.append((2 - (v - e + f)) // 2)
        return out

    # ------------------------------------------------------------ restriction

    def subembedding(self, vertices: Optional[Iterable[int]] = None,
                     edges: Optional[Iterable[frozenset]] = None) -> "SubMap":
        """Restrict to a vertex set and/or edge set, preserving rotation order.

        The result may be disconnected; that is allowed and visible via
        ``is_connected`` on the returned map. Vertices left with no incident
        edges are dropped (maps have no isolated vertices).
        """
        keep_v = set(self.vertices()) if vertices is None else set(vertices)
        keep_e = None if edges is None else {frozenset(e) for e in edges}

        def keep_dart(d: int) -> bool:
            a, b = self.vertex_of[d], self.head(d)
            if a not in keep_v or b not in keep_v:
                return False
            return keep_e is None or frozenset((a, b)) in keep_e

        rows = []
        label_of = []
        for v in sorted(keep_v):
            row = [self.head(d) for d in self.rotation_rows()[v] if keep_dart(d)]
            if row:
                rows.append(row)
                label_of.append(v)
        to_sub = {v: i for i, v in enumerate(label_of)}
        sub_rows = [[to_sub[u] for u in row] for row in rows]
        emb = RotationEmbedding.from_rotations(sub_rows) if sub_rows else RotationEmbedding([], [], [])
        return SubMap(emb, to_sub, label_of)

    def induced_subembedding(self, vertices: Iterable[int]) -> "SubMap":
        return self.subembedding(vertices=vertices)

    def __repr__(self) -> str:  # pragma: no cover
        try:
            g = self.genus() if self.is_connected else "multi"
        except StructureError:
            g = "?"
        return f"<RotationEmbedding V={self.n} E={self.m} F={len(self.faces())} genus={g}>"


@dataclass
class SubMap:
    """A restricted embedding plus the vertex relabeling in both directions."""

    emb: RotationEmbedding
    to_sub: Dict[int, int]
    to_orig: List[int]

    def original_set(self, sub_vertices: Iterable[int]) -> Set[int]:
        return {self.to_orig[v] for v in sub_vertices}

    def map_coloring_back(self, coloring: Dict[int, int]) -> Dict[int, int]:
        return {self.to_orig[v]: c for v, c in coloring.items()}
