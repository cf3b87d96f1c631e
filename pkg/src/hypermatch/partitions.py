"""Ordered partitions and the branch-and-propagate partition lister.

Given a full lattice L in Z^d, ``list_partitions`` finds every ordered
partition of V(H) into d non-empty parts under which every edge has its index
vector in L.  Fullness makes propagation deterministic: once k-1 vertices of
an edge are placed, the last vertex has exactly one admissible part.  The
search only branches on *reliable* vertices, which keeps the tree small when
codegrees are high.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .errors import DegenerateInput, InvalidArgument
from .hypergraph import Hypergraph, codegree_threshold
from .lattice import EdgeLattice, is_full, k_vectors


class OrderedPartition:
    """Disjoint vertex parts in a fixed order; ``part_of`` maps vertex to index."""

    __slots__ = ("parts", "part_of")

    def __init__(self, parts):
        parts = tuple(tuple(sorted(p)) for p in parts)
        part_of = {}
        for j, p in enumerate(parts):
            for v in p:
                if v in part_of:
                    raise InvalidArgument(f"vertex {v} lies in two parts")
                part_of[v] = j
        self.parts = parts
        self.part_of = part_of

    @classmethod
    def from_assignment(cls, assignment: dict, d: int) -> "OrderedPartition":
        parts = [[] for _ in range(d)]
        for v, j in assignment.items():
            parts[j].append(v)
        return cls(parts)

    @property
    def d(self) -> int:
        return len(self.parts)

    @property
    def universe(self) -> tuple:
        return tuple(sorted(self.part_of))

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, j):
        return self.parts[j]

    def __eq__(self, other):
        if not isinstance(other, OrderedPartition):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"OrderedPartition({[list(p) for p in self.parts]})"

    def key(self) -> tuple:
        """Part indices listed in vertex order; a total order on partitions of one universe."""
        return tuple(self.part_of[v] for v in self.universe)

    def covers(self, vertices) -> bool:
        return set(self.part_of) == set(vertices)

    def has_empty_part(self) -> bool:
        return any(not p for p in self.parts)

    def restrict(self, vertices) -> "OrderedPartition":
        keep = set(vertices)
        return OrderedPartition([[v for v in p if v in keep] for p in self.parts])

    def to_json(self) -> list:
        return [list(p) for p in self.parts]


@dataclass
class AssignmentState:
    """Partial assignment during the search: placed vertices, the rest, and new arrivals."""

    assign: dict
    unassigned: set
    queue: deque = field(default_factory=deque)

    def copy(self) -> "AssignmentState":
        return AssignmentState(dict(self.assign), set(self.unassigned), deque(self.queue))

    def place(self, v, j):
        self.assign[v] = j
        self.unassigned.discard(v)
        self.queue.append(v)


@dataclass
class ListTrace:
    """Counters filled in by ``list_partitions``."""

    leaves: int = 0
    outputs: int = 0
    branch_points: int = 0
    fallback_branches: int = 0
    seed: tuple = ()
    root_degree: int = 0


def count_branches(trace: ListTrace) -> int:
    """Number of leaves of the search tree explored by a completed run."""
    return trace.leaves


def leaf_bound(d: int, k: int) -> int:
    return d ** (2 * k - 2)


def reliable_vertices(h: Hypergraph, state: AssignmentState, gamma) -> frozenset:
    """Unassigned x with d(x + B) >= (1/k + gamma) n for some (k-2)-set B of placed vertices."""
    thr = codegree_threshold(h, gamma)
    return frozenset(x for x in state.unassigned if _is_reliable(h, state.assign, x, thr))


def _is_reliable(h, assign, x, thr) -> bool:
    for e in h.incidence[x]:
        others = [v for v in e if v != x]
        for b in combinations(others, h.k - 2):
            if all(v in assign for v in b):
                a = tuple(sorted(b + (x,)))
                if h.codegrees.get(a, 0) >= thr:
                    return True
    return False


def _extension_table(L: EdgeLattice) -> dict:
    """For each (k-1)-vector v the unique part j with v + u_j in L."""
    table = {}
    members = set(L.k_vectors())
    for v in k_vectors(L.d, L.k - 1):
        js = [j for j in range(L.d) if tuple(x + (t == j) for t, x in enumerate(v)) in members]
        table[v] = js[0]
    return table


class _Search:
    def __init__(self, h, L, gamma, strict, allow_empty, use_queue, trace):
        self.h = h
        self.L = L
        self.d = L.d
        self.k = h.k
        self.thr = codegree_threshold(h, gamma)
        self.strict = strict
        self.allow_empty = allow_empty
        self.use_queue = use_queue
        self.trace = trace
        self.ext = _extension_table(L)
        self.members = set(L.k_vectors())
        self.found = {}

    def iv(self, vs, assign):
        out = [0] * self.d
        for v in vs:
            out[assign[v]] += 1
        return tuple(out)

    def propagate(self, st: AssignmentState) -> bool:
        """Apply every forced placement; False on a contradiction."""
        if self.use_queue:
            inc = self.h.incidence
            while st.queue:
                y = st.queue.popleft()
                for e in inc[y]:
                    if not self._settle_edge(e, st):
                        return False
            return True
        changed = True
        while changed:
            changed = False
            for e in self.h.sorted_edges:
                before = len(st.unassigned)
                if not self._settle_edge(e, st):
                    return False
                changed |= len(st.unassigned) != before
        st.queue.clear()
        return True

    def _settle_edge(self, e, st) -> bool:
        assign = st.assign
        free = [v for v in e if v not in assign]
        if not free:
            return self.iv(e, assign) in self.members
        if len(free) == 1:
            z = free[0]
            st.place(z, self.ext[self.iv([v for v in e if v != z], assign)])
        return True

    def choose(self, st):
        for x in sorted(st.unassigned):
            if _is_reliable(self.h, st.assign, x, self.thr):
                return x
        if self.strict:
            raise DegenerateInput(
                f"no reliable vertex with {len(st.unassigned)} vertices unassigned"
            )
        self.trace.fallback_branches += 1
        return min(st.unassigned)

    def run(self, st):
        stack = [st]
        while stack:
            st = stack.pop()
            if not self.propagate(st):
                self.trace.leaves += 1
                continue
            if not st.unassigned:
                self.trace.leaves += 1
                self.emit(st.assign)
                continue
            x = self.choose(st)
            self.trace.branch_points += 1
            # push in reverse so part 0 is explored first
            for j in reversed(range(self.d)):
                child = st.copy()
                child.place(x, j)
                stack.append(child)

    def emit(self, assign):
        if not self.allow_empty and len(set(assign.values())) < self.d:
            return
        for e in self.h.edges:
            assert self.iv(e, assign) in self.members, "emitted partition violates the lattice"
        key = tuple(assign[v] for v in self.h.vertices)
        if key not in self.found:
            self.found[key] = OrderedPartition.from_assignment(assign, self.d)


def list_partitions(
    h: Hypergraph,
    L: EdgeLattice,
    d: int = None,
    gamma=Fraction(1, 20),
    *,
    strict: bool = True,
    allow_empty: bool = False,
    use_queue: bool = True,
    trace: ListTrace = None,
) -> list:
    """Every ordered partition P of V(h) into d non-empty parts with i_P(e) in L for all edges.

    With ``strict=True`` (the default) a missing seed or a stall with no
    reliable vertex raises ``DegenerateInput``; with ``strict=False`` the
    search instead branches on the least unassigned vertex, which stays
    complete but loses the leaf bound.  Output is sorted by ``key()``.
    """
    d = L.d if d is None else d
    if d != L.d:
        raise InvalidArgument(f"lattice lives in Z^{L.d}, not Z^{d}")
    if L.k != h.k:
        raise InvalidArgument("lattice and hypergraph have different uniformity")
    if not is_full(L):
        raise InvalidArgument("list_partitions needs a full lattice")
    trace = ListTrace() if trace is None else trace
    if h.n == 0:
        return []
    search = _Search(h, L, gamma, strict, allow_empty, use_queue, trace)
    seed = _seed(h, search.thr)
    if seed is None:
        if strict:
            raise DegenerateInput("no (k-1)-set reaches the codegree threshold")
        seed = tuple(h.vertices[: min(h.k - 1, h.n)])
    trace.seed = seed
    trace.root_degree = d ** len(seed)
    roots = []
    for combo in product(range(d), repeat=len(seed)):
        st = AssignmentState({}, set(h.vertices))
        for v, j in zip(seed, combo):
            st.place(v, j)
        roots.append(st)
    for st in roots:
        search.run(st)
    trace.outputs = len(search.found)
    return [search.found[key] for key in sorted(search.found)]


def _seed(h, thr):
    best = None
    for a, c in h.codegrees.items():
        if c >= thr and (best is None or a < best):
            best = a
    return best
