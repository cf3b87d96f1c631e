"""k-uniform hypergraphs, degree statistics and the brute-force matching oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional

from .errors import InvalidArgument

Edge = tuple  # sorted tuple of k vertex labels
Matching = tuple  # tuple of pairwise-disjoint edges


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise InvalidArgument("thresholds must be exact rationals, not floats")
    return Fraction(x)


class Hypergraph:
    """A k-uniform hypergraph on an explicit vertex set.

    The usual constructor builds a hypergraph on ``[1..n]``.  Deleting vertices
    keeps the original labels, so ``vertices`` need not be contiguous; ``n`` is
    always the number of vertices still present.
    """

    __slots__ = ("k", "vertices", "edges", "__dict__")

    def __init__(self, n: int, k: int, edges: Iterable[Iterable[int]] = (), *, vertices=None):
        if k < 2:
            raise InvalidArgument(f"uniformity must be at least 2, got {k}")
        if vertices is None:
            if n < 0:
                raise InvalidArgument("vertex count must be non-negative")
            vertices = range(1, n + 1)
        vertices = tuple(sorted(vertices))
        if len(set(vertices)) != len(vertices):
            raise InvalidArgument("duplicate vertex labels")
        if n is not None and n != len(vertices):
            raise InvalidArgument(f"n={n} does not match {len(vertices)} vertices")
        vset = set(vertices)
        edge_set = set()
        for e in edges:
            t = tuple(sorted(e))
            if len(t) != k or len(set(t)) != k:
                raise InvalidArgument(f"edge {t} does not have {k} distinct vertices")
            if not vset.issuperset(t):
                raise InvalidArgument(f"edge {t} uses a vertex outside the vertex set")
            if t in edge_set:
                raise InvalidArgument(f"duplicate edge {t}")
            edge_set.add(t)
        self.k = k
        self.vertices = vertices
        self.edges = frozenset(edge_set)

    @classmethod
    def _trusted(cls, vertices, k, edges):
        h = cls.__new__(cls)
        h.k = k
        h.vertices = tuple(vertices)
        h.edges = frozenset(edges)
        return h

    @classmethod
    def complete(cls, n: int, k: int) -> "Hypergraph":
        return cls._trusted(range(1, n + 1), k, combinations(range(1, n + 1), k))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __len__(self):
        return len(self.edges)

    def __contains__(self, e):
        return tuple(sorted(e)) in self.edges

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.k, self.vertices, self.edges) == (other.k, other.vertices, other.edges)

    def __hash__(self):
        return hash((self.k, self.vertices, self.edges))

    def __repr__(self):
        return f"Hypergraph(n={self.n}, k={self.k}, m={len(self.edges)})"

    @cached_property
    def sorted_edges(self) -> tuple:
        """Edges in canonical (lexicographic) order."""
        return tuple(sorted(self.edges))

    @cached_property
    def incidence(self) -> dict:
        inc = {v: [] for v in self.vertices}
        for e in self.sorted_edges:
            for v in e:
                inc[v].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    @cached_property
    def codegrees(self) -> dict:
        """Degree of every (k-1)-set that lies in at least one edge."""
        counts: dict = {}
        for e in self.edges:
            for a in combinations(e, self.k - 1):
                counts[a] = counts.get(a, 0) + 1
        return counts

    def vertex_degree(self, v) -> int:
        return len(self.incidence[v])

    def min_degree(self) -> int:
        """The minimum vertex degree; 0 on the empty vertex set."""
        if not self.vertices:
            return 0
        return min(len(es) for es in self.incidence.values())

    def neighbourhood(self, a) -> frozenset:
        """Vertices v with a + {v} an edge, for a (k-1)-set a."""
        a = tuple(sorted(a))
        if len(a) != self.k - 1:
            raise InvalidArgument("neighbourhoods are defined for (k-1)-sets")
        if not a:
            return frozenset(v for e in self.edges for v in e)
        out = set()
        aset = set(a)
        for e in self.incidence.get(a[0], ()):
            if aset.issubset(e):
                out.update(v for v in e if v not in aset)
        return frozenset(out)

    def delete_vertices(self, s) -> "Hypergraph":
        """H - S: drop the vertices of S and every edge meeting them."""
        s = set(s)
        if not s:
            return self
        return Hypergraph._trusted(
            (v for v in self.vertices if v not in s),
            self.k,
            (e for e in self.edges if s.isdisjoint(e)),
        )

    def without_edges(self, removed) -> "Hypergraph":
        removed = {tuple(sorted(e)) for e in removed}
        return Hypergraph._trusted(self.vertices, self.k, self.edges - removed)

    @cached_property
    def _bits(self) -> dict:
        return {v: 1 << i for i, v in enumerate(self.vertices)}

    def mask(self, vs) -> int:
        bits = self._bits
        m = 0
        for v in vs:
            m |= bits[v]
        return m


def degree(h: Hypergraph, a) -> int:
    """Number of edges of ``h`` containing the vertex set ``a``."""
    a = tuple(sorted(set(a)))
    if len(a) > h.k:
        raise InvalidArgument(f"|A| = {len(a)} exceeds k = {h.k}")
    if not set(a).issubset(h.vertices):
        raise InvalidArgument("A is not a subset of V(H)")
    if not a:
        return len(h.edges)
    if len(a) == h.k - 1:
        return h.codegrees.get(a, 0)
    if len(a) == h.k:
        return int(a in h.edges)
    aset = set(a)
    pivot = min(a, key=h.vertex_degree)
    return sum(1 for e in h.incidence[pivot] if aset.issubset(e))


def min_codegree(h: Hypergraph) -> int:
    """Minimum degree over all (k-1)-subsets of the vertex set."""
    if h.n < h.k:
        raise InvalidArgument("min_codegree needs n >= k")
    cod = h.codegrees
    total = math.comb(h.n, h.k - 1)
    if len(cod) < total:
        return 0
    return min(cod.values())


def codegree_threshold(h: Hypergraph, gamma) -> Fraction:
    """The rational value (1/k + gamma) n."""
    return (Fraction(1, h.k) + _as_fraction(gamma)) * h.n


@dataclass(frozen=True)
class DeficiencyTable:
    """Codegree deficiencies t_A and the two potentials built from them.

    ``t`` maps every (k-1)-set to its deficiency; ``chi1`` is the sum of
    squares and ``chi2`` the vertex-degree shortfall below n^(k-1)/(3 k!).
    """

    gamma: Fraction
    threshold: Fraction
    rounding: str
    t: dict
    chi1: Fraction
    chi2: Fraction
    min_degree: int

    def positive(self) -> dict:
        return {a: v for a, v in self.t.items() if v > 0}


def deficiency_table(h: Hypergraph, gamma, rounding: str = "exact") -> DeficiencyTable:
    """Compute t_A = max(0, (1/k + gamma) n - d(A)) for every (k-1)-set A.

    ``rounding="exact"`` keeps the threshold rational; ``"ceil"`` rounds it up
    to an integer first.  Both give the same set of deficient A.
    """
    gamma = _as_fraction(gamma)
    if not 0 < gamma < 1:
        raise InvalidArgument("gamma must lie in (0, 1)")
    thr = codegree_threshold(h, gamma)
    if rounding == "ceil":
        thr_used = Fraction(math.ceil(thr))
    elif rounding == "exact":
        thr_used = thr
    else:
        raise InvalidArgument(f"unknown rounding {rounding!r}")
    cod = h.codegrees
    t = {}
    chi1 = Fraction(0)
    for a in combinations(h.vertices, h.k - 1):
        ta = thr_used - cod.get(a, 0)
        if ta < 0:
            ta = Fraction(0)
        t[a] = ta
        chi1 += ta * ta
    delta1 = h.min_degree()
    chi2 = max(Fraction(0), Fraction(h.n ** (h.k - 1), 3 * math.factorial(h.k)) - delta1)
    return DeficiencyTable(gamma, thr_used, rounding, t, chi1, chi2, delta1)


def is_matching(h: Hypergraph, m) -> bool:
    seen = set()
    for e in m:
        e = tuple(sorted(e))
        if e not in h.edges or not seen.isdisjoint(e):
            return False
        seen.update(e)
    return True


def is_perfect_matching(h: Hypergraph, m) -> bool:
    """True iff ``m`` is a matching of ``h`` covering every vertex."""
    if not is_matching(h, m):
        return False
    return sum(len(e) for e in m) == h.n


def _edges_by_low_vertex(h: Hypergraph) -> dict:
    by_low: dict = {}
    bits = h._bits
    for e in h.sorted_edges:
        by_low.setdefault(e[0], []).append((h.mask(e), e))
    return {bits[v]: es for v, es in by_low.items()}


def brute_force_pm(h: Hypergraph) -> Optional[Matching]:
    """Exhaustive perfect-matching search.

    Returns the lexicographically first perfect matching (as a sorted tuple of
    edges) or ``None``.  The search always covers the least uncovered vertex
    and memoises dead vertex subsets, so it is exact but exponential.
    """
    if h.n % h.k:
        raise InvalidArgument(f"k={h.k} does not divide n={h.n}")
    full = (1 << h.n) - 1
    by_low = _edges_by_low_vertex(h)
    dead = set()

    def solve(covered):
        if covered == full:
            return ()
        if covered in dead:
            return None
        free = ~covered & full
        low = free & -free
        for em, e in by_low.get(low, ()):
            if em & covered:
                continue
            rest = solve(covered | em)
            if rest is not None:
                return (e,) + rest
        dead.add(covered)
        return None

    return solve(0)


def maximum_matching(h: Hypergraph) -> Matching:
    """A maximum matching by exhaustive search (small instances only)."""
    full = (1 << h.n) - 1
    by_low = _edges_by_low_vertex(h)
    memo: dict = {}

    def best(decided):
        if decided == full:
            return ()
        if decided in memo:
            return memo[decided]
        free = ~decided & full
        low = free & -free
        result = best(decided | low)
        for em, e in by_low.get(low, ()):
            if em & decided:
                continue
            cand = (e,) + best(decided | em)
            if len(cand) > len(result):
                result = cand
        memo[decided] = result
        return result

    return best(0)


@dataclass(frozen=True)
class SetupReport:
    deg_ok: bool
    codeg_ok: bool
    bad_count: int


def check_setup(h: Hypergraph, gamma, eps) -> SetupReport:
    """Evaluate the minimum-degree and codegree hypotheses as predicates."""
    gamma, eps = _as_fraction(gamma), _as_fraction(eps)
    if gamma <= 0 or eps <= 0:
        raise InvalidArgument("gamma and eps must be positive")
    scale = h.n ** (h.k - 1)
    deg_ok = h.n > 0 and h.min_degree() >= gamma * scale
    thr = codegree_threshold(h, gamma)
    cod = h.codegrees
    bad = sum(1 for a in combinations(h.vertices, h.k - 1) if cod.get(a, 0) < thr)
    return SetupReport(deg_ok, bad <= eps * scale, bad)
