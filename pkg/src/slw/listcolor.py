"""List-coloring kernel: exact oracle, reduced lists, inert sets, reductions.

Color sets are 64-bit masks (colors are integers 0..63), so removing a
neighbor's color is one AND-NOT and list sizes are popcounts. The oracle is a
plain MRV backtracker — exactness and determinism are the contract; all sizes
it sees are guarded (default 64 vertices).

Vocabulary (used throughout the package):

* reduced lists ``L^S_phi``: delete the colored vertices outside S, keep the
  colored vertices inside S with singleton lists, and strike the deleted
  colors from their uncolored neighbors' lists;
* an *inert* set S under phi: however a proper extension of phi colors the
  neighborhood of S's uncolored part, that part can still be completed;
* a *reduction* (A, phi): phi colors part of A, A is inert, and every vertex
  just outside A keeps a list of size >= 3 unless it started below 5;
  *complete* if every vertex just outside A started with >= 5;
* a *consistent family* of reductions: unions stay proper, uncolored cores are
  pairwise far apart, and no outside vertex sees colored vertices in two
  different members.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import HypothesisError, OracleSizeError
from .graphs import as_adj, connected_components, induced_adj, set_distance

DEFAULT_MAX_ORACLE_VERTICES = 64

Coloring = Dict[int, int]


def color_mask(colors: Iterable[int]) -> int:
    m = 0
    for c in colors:
        if not (0 <= c < 64):
            raise ValueError(f"color {c} outside 0..63")
        m |= 1 << c
    return m


def mask_colors(mask: int) -> List[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


class ListAssignment:
    """Per-vertex admissible color sets, stored as bitmasks."""

    __slots__ = ("_masks",)

    def __init__(self, masks: Dict[int, int]):
        self._masks = dict(masks)

    @classmethod
    def from_colors(cls, lists: Dict[int, Iterable[int]]) -> "ListAssignment":
        return cls({v: color_mask(cs) for v, cs in lists.items()})

    @classmethod
    def uniform(cls, vertices: Iterable[int], colors: Iterable[int]) -> "ListAssignment":
        m = color_mask(colors)
        return cls({v: m for v in vertices})

    def mask(self, v: int) -> int:
        return self._masks[v]

    def colors(self, v: int) -> List[int]:
        return mask_colors(self._masks[v])

    def size(self, v: int) -> int:
        return self._masks[v].bit_count()

    def allows(self, v: int, c: int) -> bool:
        return bool(self._masks[v] >> c & 1)

    def vertices(self) -> Set[int]:
        return set(self._masks)

    def to_dict(self) -> Dict[int, List[int]]:
        return {v: mask_colors(m) for v, m in self._masks.items()}

    def with_masks(self, overrides: Dict[int, int]) -> "ListAssignment":
        masks = dict(self._masks)
        masks.update(overrides)
        return ListAssignment(masks)

    def restricted(self, vertices: Iterable[int]) -> "ListAssignment":
        return ListAssignment({v: self._masks[v] for v in vertices})

    def __contains__(self, v: int) -> bool:
        return v in self._masks

    def __eq__(self, other) -> bool:
        return isinstance(other, ListAssignment) and self._masks == other._masks

    def __repr__(self) -> str:  # pragma: no cover
        return f"ListAssignment({self.to_dict()!r})"


def residual_mask(g, L: ListAssignment, phi: Coloring, v: int) -> int:
    """Mask of L(v) minus the colors phi places on neighbors of v."""
    adj = as_adj(g)
    m = L.mask(v)
    for u in adj[v]:
        c = phi.get(u)
        if c is not None:
            m &= ~(1 << c)
    return m


def is_proper_partial(g, L: Optional[ListAssignment], phi: Coloring) -> bool:
    adj = as_adj(g)
    for v, c in phi.items():
        if L is not None and not L.allows(v, c):
            return False
        for u in adj[v]:
            if phi.get(u) == c:
                return False
    return True


class ColoringConflict(HypothesisError):
    """Two partial colorings cannot be merged; carries where and why."""

    def __init__(self, kind: str, where):
        self.kind = kind
        self.where = where
        super().__init__(f"colorings conflict ({kind}) at {where}")


def union_colorings(phi: Coloring, psi: Coloring, g=None) -> Coloring:
    """Merge two partial colorings; with a graph, also reject cross-edge clashes."""
    merged = dict(phi)
    for v, c in psi.items():
        if merged.get(v, c) != c:
            raise ColoringConflict("domain-disagreement", v)
        merged[v] = c
    if g is not None:
        adj = as_adj(g)
        for v, c in psi.items():
            if phi.get(v) is not None:
                continue
            for u in adj[v]:
                if merged.get(u) == c and u != v and phi.get(u) is not None:
                    raise ColoringConflict("cross-edge", (v, u))
    return merged


def sweep_coloring(g, L: ListAssignment, order: Sequence[int],
                   pinned: Coloring, protect: Iterable[int],
                   skip: Iterable[int] = (), *,
                   node_budget: int = 200000) -> Optional[Coloring]:
    """Backtracking coloring of `order` (left to right) extending pinned.

    Every vertex in `protect` must keep three residual colors throughout;
    residuals only shrink as colors land, so pruning on them is exact.
    Candidate colors that squeeze a protected neighbor are tried last.
    Returns the full coloring (pinned included) or None when the search
    space or the node budget runs out.
    """
    adj = as_adj(g)
    skip = set(skip)
    psi: Coloring = dict(pinned)
    seq = [v for v in order if v not in psi and v not in skip]
    protect = set(protect)
    watch: Dict[int, List[int]] = {v: [] for v in seq}
    for w in protect:
        for v in adj[w]:
            if v in watch:
                watch[v].append(w)

    def choices(v: int) -> List[int]:
        out = []
        for c in sorted(L.colors(v)):
            if any(psi.get(u) == c for u in adj[v]):
                continue
            cost = 0
            for w in watch[v]:
                m = residual_mask(adj, L, psi, w)
                if m & (1 << c) and (m & ~(1 << c)).bit_count() < 3:
                    cost += 1
            out.append((cost, c))
        out.sort()
        return [c for _, c in out]

    stack: List[List[int]] = []
    nodes = 0
    while True:
        nodes += 1
        if nodes > node_budget:
            return None
        if len(stack) == len(seq):
            return psi
        stack.append(choices(seq[len(stack)]))
        while stack:
            cands = stack[-1]
            v = seq[len(stack) - 1]
            advanced = False
            while cands:
                c = cands.pop(0)
                psi[v] = c
                if all(residual_mask(adj, L, psi, w).bit_count() >= 3
                       for w in watch[v]):
                    advanced = True
                    break
                del psi[v]
            if advanced:
                break
            stack.pop()
            if stack:
                prev = seq[len(stack) - 1]
                if prev in psi:
                    del psi[prev]
        else:
            return None


# --------------------------------------------------------------------- oracle


def _guard(vertices, limit: int, what: str) -> None:
    if len(vertices) > limit:
        raise OracleSizeError(len(vertices), limit, what)


def _prepared_masks(adj, L: ListAssignment, phi: Coloring, scope: Set[int]):
    """Residual masks for the uncolored vertices of `scope`.

    Returns None when some vertex is already wiped out. phi properness and
    list-membership over scope are validated here (exactness demands it).
    """
    masks: Dict[int, int] = {}
    for v in scope:
        c = phi.get(v)
        if c is not None:
            if v in L and not L.allows(v, c):
                raise HypothesisError(f"precolor {c} not in list of {v}")
            for u in adj[v]:
                if phi.get(u) == c:
                    raise HypothesisError(f"precoloring is improper on edge {v}-{u}")
            continue
        m = L.mask(v)
        for u in adj[v]:
            cu = phi.get(u)
            if cu is not None:
                m &= ~(1 << cu)
        masks[v] = m
        if m == 0:
            return None
    return masks


def _mrv_order_key(adj, masks):
    def key(v):
        return (masks[v].bit_count(), -len(adj[v]), v)
    return key


def _solve(adj, masks: Dict[int, int], *, count: bool, cap: Optional[int] = None):
    """Exact backtracking over the vertices of `masks` (all must be colored).

    MRV vertex choice, ties by higher degree then lowest index; colors tried
    ascending. Returns a witness coloring / None, or an exact count.
    """
    uncolored = set(masks)
    assignment: Coloring = {}
    key = _mrv_order_key(adj, masks)

    def rec() -> int:
        if not uncolored:
            return 1
        v = min(uncolored, key=key)
        uncolored.discard(v)
        total = 0
        m = masks[v]
        while m:
            b = m & -m
            m ^= b
            c = b.bit_length() - 1
            touched = []
            dead = False
            for u in adj[v]:
                if u in uncolored and masks[u] >> c & 1:
                    masks[u] &= ~(1 << c)
                    touched.append(u)
                    if masks[u] == 0:
                        dead = True
            if not dead:
                assignment[v] = c
                got = rec()
                if got and not count:
                    for u in touched:
                        masks[u] |= 1 << c
                    uncolored.add(v)
                    return 1
                total += got
                del assignment[v]
                if cap is not None and total >= cap:
                    for u in touched:
                        masks[u] |= 1 << c
                    break
            for u in touched:
                masks[u] |= 1 << c
        uncolored.add(v)
        return total

    got = rec()
    if count:
        return got
    return dict(assignment) if got else None


def oracle_extend(g, L: ListAssignment, phi: Optional[Coloring] = None, *,
                  max_vertices: int = DEFAULT_MAX_ORACLE_VERTICES) -> Optional[Coloring]:
    """A full proper L-coloring of g extending phi, or None. Exact."""
    adj = as_adj(g)
    phi = phi or {}
    scope = set(adj)
    _guard(scope, max_vertices, "oracle_extend instance")
    masks = _prepared_masks(adj, L, phi, scope)
    if masks is None:
        return None
    sol = _solve({v: adj[v] & set(masks) for v in masks}, masks, count=False)
    if sol is None:
        return None
    full = dict(phi)
    full.update(sol)
    assert is_proper_partial(adj, L, {v: c for v, c in full.items() if v in scope})
    return full


def oracle_count(g, L: ListAssignment, phi: Optional[Coloring] = None, *,
                 max_vertices: int = DEFAULT_MAX_ORACLE_VERTICES) -> int:
    """Exact number of full proper L-colorings of g extending phi."""
    adj = as_adj(g)
    phi = phi or {}
    scope = set(adj)
    _guard(scope, max_vertices, "oracle_count instance")
    masks = _prepared_masks(adj, L, phi, scope)
    if masks is None:
        return 0
    return _solve({v: adj[v] & set(masks) for v in masks}, masks, count=True)


def enumerate_colorings(g, L: ListAssignment, targets: Iterable[int],
                        phi: Optional[Coloring] = None, *,
                        max_vertices: int = DEFAULT_MAX_ORACLE_VERTICES):
    """Yield every proper coloring of `targets` (edges inside g) extending phi.

    Properness is enforced within `targets` and against phi-colored
    neighbors anywhere in g; vertices outside `targets` are not colored.
    """
    adj = as_adj(g)
    phi = phi or {}
    targets = sorted(set(targets) - set(phi))
    _guard(targets, max_vertices, "enumeration target set")
    masks = {}
    for v in targets:
        m = L.mask(v)
        for u in adj[v]:
            c = phi.get(u)
            if c is not None:
                m &= ~(1 << c)
        masks[v] = m
        if m == 0:
            return
    local = {v: adj[v] & set(targets) for v in targets}
    assignment: Coloring = {}

    def rec(i: int):
        if i == len(targets):
            yield dict(assignment)
            return
        v = targets[i]
        m = masks[v]
        while m:
            b = m & -m
            m ^= b
            c = b.bit_length() - 1
            if any(assignment.get(u) == c for u in local[v]):
                continue
            assignment[v] = c
            yield from rec(i + 1)
            del assignment[v]

    yield from rec(0)


# ------------------------------------------------------------- reduced lists


def reduce_lists(g, L: ListAssignment, phi: Coloring, S: Iterable[int]):
    """Reduced instance after committing phi outside S.

    Deletes the colored vertices not in S; keeps colored vertices inside S
    with singleton lists; strikes deleted colors from uncolored neighbors.
    Returns (adjacency of the reduced graph, reduced ListAssignment).
    """
    adj = as_adj(g)
    S = set(S)
    dom = set(phi)
    deleted = dom - S
    kept = set(adj) - deleted
    new_adj = induced_adj(adj, kept)
    masks = {}
    for v in kept:
        if v in dom:
            masks[v] = 1 << phi[v]
        else:
            m = L.mask(v)
            for u in adj[v] & deleted:
                m &= ~(1 << phi[u])
            masks[v] = m
    return new_adj, ListAssignment(masks)


# ----------------------------------------------------------------- inertness


@dataclass
class InertnessResult:
    inert: bool
    blocking: Optional[Coloring] = None  # boundary coloring with no completion
    stuck_component: Optional[frozenset] = None

    def __bool__(self) -> bool:
        return self.inert


def is_inert(g, L: ListAssignment, S: Iterable[int], phi: Coloring, *,
             mode: str = "minimal",
             max_vertices: int = DEFAULT_MAX_ORACLE_VERTICES) -> InertnessResult:
    """Decide whether S is inert under phi. Exact in both modes.

    ``minimal`` quantifies boundary colorings over exactly the neighborhood of
    S's uncolored part, component by component (completability of a component
    depends only on its own boundary coloring, so this is equivalent to
    quantifying over arbitrary larger domains). A locally blocking coloring is
    only reported after extending it to a proper coloring of the whole
    boundary, which keeps the answer exact rather than conservative.
    ``full`` quantifies over colorings of everything outside S's uncolored
    part; exponential, intended for small cross-validation instances.
    """
    adj = as_adj(g)
    S = set(S)
    phi = dict(phi)
    X = S - set(phi)
    if not X:
        return InertnessResult(True)
    boundary = set()
    for x in X:
        boundary |= adj[x]
    boundary -= X
    free_boundary = sorted(boundary - set(phi))

    if mode == "full":
        world = set(adj) - X
        free = sorted(world - set(phi))
        _guard(free, max_vertices, "inertness (full mode) boundary")
        for psi in enumerate_colorings(adj, L, free, phi, max_vertices=max_vertices):
            merged = {**phi, **psi}
            if _completes(adj, L, X, merged, max_vertices) is None:
                return InertnessResult(False, merged, frozenset(X))
        return InertnessResult(True)
    if mode != "minimal":
        raise ValueError(f"unknown inertness mode {mode!r}")

    _guard(free_boundary, max_vertices, "inertness boundary")
    for K in sorted(connected_components(induced_adj(adj, X)), key=min):
        frontier = set()
        for x in K:
            frontier |= adj[x]
        frontier -= X
        free_local = sorted(frontier - set(phi))
        for psi in enumerate_colorings(adj, L, free_local, phi, max_vertices=max_vertices):
            merged = {**phi, **psi}
            if _completes(adj, L, K, merged, max_vertices) is not None:
                continue
            # Blocking locally; confirm by extending over the rest of the boundary.
            rest = [v for v in free_boundary if v not in psi]
            blocker = _extend_boundary(adj, L, merged, rest, max_vertices)
            if blocker is not None:
                return InertnessResult(False, blocker, frozenset(K))
        # no realizable blocking coloring for this component
    return InertnessResult(True)


def _completes(adj, L, K: Set[int], colored: Coloring, max_vertices: int):
    masks = {}
    for v in sorted(K):
        m = L.mask(v)
        for u in adj[v]:
            c = colored.get(u)
            if c is not None:
                m &= ~(1 << c)
        masks[v] = m
        if m == 0:
            return None
    return _solve({v: adj[v] & K for v in K}, masks, count=False)


def _extend_boundary(adj, L, merged: Coloring, rest: List[int], max_vertices: int):
    if not rest:
        return dict(merged)
    for psi in enumerate_colorings(adj, L, rest, merged, max_vertices=max_vertices):
        return {**merged, **psi}
    return None


# ---------------------------------------------------------------- reductions


@dataclass
class ReductionCertificate:
    """Verified (A, phi): phi ⊆ A colored, A inert, boundary lists preserved."""

    A: frozenset
    phi: Coloring
    complete: bool
    boundary: frozenset = field(default_factory=frozenset)

    @property
    def ok(self) -> bool:
        return True


@dataclass
class ReductionRefutation:
    reason: str
    vertex: Optional[int] = None
    blocking: Optional[Coloring] = None

    @property
    def ok(self) -> bool:
        return False


def check_reduction(g, L: ListAssignment, A: Iterable[int], phi: Coloring, *,
                    require_complete: bool = False,
                    max_vertices: int = DEFAULT_MAX_ORACLE_VERTICES):
    """Verify that (A, phi) is a reduction; optionally that it is complete.

    Returns a certificate or a refutation naming the first failing clause.
    """
    adj = as_adj(g)
    A = set(A)
    if not set(phi) <= A:
        raise HypothesisError("colored vertices must lie inside A",
                              {"outside": sorted(set(phi) - A)})
    if not is_proper_partial(adj, L, phi):
        return ReductionRefutation("coloring-improper")
    boundary = set()
    for v in A:
        boundary |= adj[v]
    boundary -= A
    for v in sorted(boundary):
        if L.size(v) >= 5:
            if residual_mask(adj, L, phi, v).bit_count() < 3:
                return ReductionRefutation("boundary-list-below-3", vertex=v)
        elif require_complete:
            return ReductionRefutation("boundary-list-below-5", vertex=v)
    res = is_inert(adj, L, A, phi, max_vertices=max_vertices)
    if not res:
        return ReductionRefutation("not-inert", blocking=res.blocking)
    complete = all(L.size(v) >= 5 for v in boundary)
    return ReductionCertificate(frozenset(A), dict(phi), complete, frozenset(boundary))


@dataclass
class FamilyReport:
    ok: bool
    union: Optional[Coloring] = None
    failures: List[Tuple[str, object]] = field(default_factory=list)


def check_consistent_family(g, L: ListAssignment,
                            members: Sequence[Tuple[Iterable[int], Coloring]], *,
                            verify_members: bool = False,
                            max_vertices: int = DEFAULT_MAX_ORACLE_VERTICES) -> FamilyReport:
    """Check the three consistency clauses for a family of reductions.

    Members are (A_i, phi_i) pairs, each assumed (or verified) to be a
    reduction. Clauses: the union of the phi_i is a proper partial coloring;
    the uncolored cores are pairwise at distance > 1; every vertex just
    outside the union of the A_i sees colored vertices of only one member.
    """
    adj = as_adj(g)
    members = [(set(A), dict(phi)) for A, phi in members]
    failures: List[Tuple[str, object]] = []
    if verify_members:
        for i, (A, phi) in enumerate(members):
            res = check_reduction(adj, L, A, phi, max_vertices=max_vertices)
            if not res.ok:
                failures.append(("member-not-reduction", (i, res.reason)))
        if failures:
            return FamilyReport(False, None, failures)
    union: Coloring = {}
    try:
        for A, phi in members:
            union = union_colorings(union, phi, adj)
    except ColoringConflict as e:
        return FamilyReport(False, None, [("union-ill-defined", (e.kind, e.where))])
    cores = [A - set(phi) for A, phi in members]
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            if cores[i] and cores[j] and set_distance(adj, cores[i], cores[j]) <= 1:
                failures.append(("cores-too-close", (i, j)))
    big_union = set()
    for A, _ in members:
        big_union |= A
    dom_union = set(union)
    doms = [set(phi) for _, phi in members]
    outside = set()
    for v in big_union:
        outside |= adj[v]
    outside -= big_union
    for x in sorted(outside):
        colored_nbrs = adj[x] & dom_union
        if colored_nbrs and not any(colored_nbrs <= d for d in doms):
            failures.append(("outside-vertex-sees-two-members", x))
    return FamilyReport(not failures, union if not failures else union, failures)


def red_set(g, L: ListAssignment, H: Iterable[int], U: Iterable[int] = (), *,
            max_vertices: int = DEFAULT_MAX_ORACLE_VERTICES) -> List[Coloring]:
    """All colorings phi of H \\ U for which (H, phi) is a reduction.

    Colorings are proper on the induced subgraph G[H \\ U] (the definition
    asks for colorings of the vertex set, not of its neighborhood).
    """
    adj = as_adj(g)
    H = set(H)
    U = set(U)
    targets = sorted(H - U)
    out = []
    sub = induced_adj(adj, targets)
    for phi in enumerate_colorings(sub, L, targets, {}, max_vertices=max_vertices):
        if check_reduction(adj, L, H, phi, max_vertices=max_vertices).ok:
            out.append(phi)
    return out
