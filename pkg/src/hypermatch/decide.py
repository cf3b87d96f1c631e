"""Certificate search, solubility, verification and the top-level decision.

A certificate is a triple (S, P, L): an ordered partition P into d <= k-1
non-empty parts, a full lattice L in Z^d, and a small vertex set S meeting
every edge whose index vector falls outside L, such that no matching of at
most d-1 edges moves the index vector of the remaining vertices into L.
Such a triple rules out a perfect matching unconditionally.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from typing import Optional

from .errors import InvalidArgument
from .hypergraph import Hypergraph, brute_force_pm, _as_fraction
from .lattice import CosetGroup, EdgeLattice, coset_group, enumerate_full_lattices, index_vector, is_full
from .partitions import OrderedPartition, list_partitions

log = logging.getLogger(__name__)

DEFAULT_GAMMA = Fraction(1, 20)
DEFAULT_EPS = Fraction(1, 100) ** 2
BRUTE_WORK_BUDGET = 10 ** 7


def default_C(k: int) -> int:
    return 2 * k * (k - 3)


def default_brute_threshold(k: int, budget: int = BRUTE_WORK_BUDGET) -> int:
    """Smallest n at which C(n,k) * C(C(n,k), n/k) exceeds ``budget``.

    Instances with fewer vertices are decided by exhaustive search.
    """
    n = k
    while True:
        m = math.comb(n, k)
        if m * math.comb(m, n // k) > budget:
            return n
        n += 1


@dataclass(frozen=True)
class FullPair:
    partition: OrderedPartition
    lattice: EdgeLattice

    @property
    def d(self) -> int:
        return self.lattice.d


@dataclass(frozen=True)
class Certificate:
    far_set: tuple
    partition: OrderedPartition
    lattice: EdgeLattice
    C: int
    group: Optional[CosetGroup] = None
    group_json: Optional[dict] = field(default=None, compare=False)

    @property
    def pair(self) -> FullPair:
        return FullPair(self.partition, self.lattice)

    @property
    def refuted_matching_bound(self) -> int:
        return self.lattice.d - 1

    def to_json(self) -> dict:
        group = self.group if self.group is not None else coset_group(self.lattice)
        return {
            "C": self.C,
            "far_set": list(self.far_set),
            "partition": self.partition.to_json(),
            "lattice": self.lattice.to_json(),
            "group": group.to_json(),
            "refuted_matching_bound": self.refuted_matching_bound,
        }

    @classmethod
    def from_json(cls, obj) -> "Certificate":
        try:
            lattice = EdgeLattice.from_json(obj["lattice"])
            partition = OrderedPartition(obj["partition"])
            far_set = tuple(sorted(int(v) for v in obj["far_set"]))
            C = int(obj["C"])
            bound = int(obj.get("refuted_matching_bound", lattice.d - 1))
            group_json = obj.get("group")
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidArgument(f"malformed certificate JSON: {exc}") from None
        if bound != lattice.d - 1:
            raise InvalidArgument("refuted_matching_bound must equal d - 1")
        return cls(far_set, partition, lattice, C, None, group_json)


@dataclass(frozen=True)
class Decision:
    outcome: str  # "pm" or "no_pm"
    mode: str  # "brute" or "asymptotic"
    matching: Optional[tuple] = None
    certificate: Optional[Certificate] = None
    notes: tuple = ()
    trace: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.outcome == "pm" and (self.matching is None or self.certificate is not None):
            raise InvalidArgument("a pm decision carries exactly a matching")
        if self.outcome == "no_pm" and self.matching is not None:
            raise InvalidArgument("a no_pm decision carries no matching")
        if self.outcome not in ("pm", "no_pm") or self.mode not in ("brute", "asymptotic"):
            raise InvalidArgument(f"bad decision {self.outcome}/{self.mode}")

    @property
    def has_pm(self) -> bool:
        return self.outcome == "pm"


# -- solubility -------------------------------------------------------------

def _edge_index(e, part_of, d):
    iv = [0] * d
    for v in e:
        iv[part_of[v]] += 1
    return tuple(iv)


def off_lattice_edges(h: Hypergraph, pair: FullPair) -> tuple:
    """Edges of ``h`` whose index vector is outside the lattice, in canonical order."""
    members = set(pair.lattice.k_vectors())
    part_of, d = pair.partition.part_of, pair.d
    return tuple(e for e in h.sorted_edges if _edge_index(e, part_of, d) not in members)


def is_soluble(h: Hypergraph, pair: FullPair) -> Optional[tuple]:
    """A smallest matching M (|M| <= d-1) with i_P(V - V(M)) in L, or None.

    Only edges outside the lattice can help, so a smallest solution uses
    those alone; ties go to the lexicographically first edge list.  An empty
    tuple means the empty matching already works.
    """
    P, L = pair.partition, pair.lattice
    if h.n % h.k:
        return None
    cg = coset_group(L)
    G = cg.group
    target = cg.residue(index_vector(P, h.vertices))
    if target == G.zero:
        return ()
    off = off_lattice_edges(h, pair)
    res = [cg.residue(_edge_index(e, P.part_of, L.d)) for e in off]
    masks = [h.mask(e) for e in off]
    classes = sorted(set(res))
    reach = [{G.zero}]
    for _ in range(L.d - 1):
        reach.append({G.add(s, r) for s in reach[-1] for r in classes})

    def dfs(start, left, used, total, chosen):
        if left == 0:
            return tuple(chosen) if total == target else None
        if G.sub(target, total) not in reach[left]:
            return None
        for i in range(start, len(off) - left + 1):
            if masks[i] & used:
                continue
            chosen.append(off[i])
            found = dfs(i + 1, left - 1, used | masks[i], G.add(total, res[i]), chosen)
            if found is not None:
                return found
            chosen.pop()
        return None

    for size in range(1, L.d):
        found = dfs(0, size, 0, G.zero, [])
        if found is not None:
            return found
    return None


# -- hitting sets -----------------------------------------------------------

def _greedy_matching_size(masks, hit):
    used = hit
    count = 0
    for m in masks:
        if not m & used:
            used |= m
            count += 1
    return count


def min_hitting_set(edges, cap: int) -> Optional[tuple]:
    """The lexicographically least minimum vertex set meeting every edge, if of size <= cap."""
    edges = sorted(set(tuple(sorted(e)) for e in edges))
    verts = sorted({v for e in edges for v in e})
    bit = {v: 1 << i for i, v in enumerate(verts)}
    masks = [sum(bit[v] for v in e) for e in edges]
    for budget in range(cap + 1):
        leaves = []

        def branch(hit, left):
            unhit = next((m for m in masks if not m & hit), None)
            if unhit is None:
                leaves.append(hit)
                return
            if left == 0 or _greedy_matching_size(masks, hit) > left:
                return
            m = unhit
            while m:
                low = m & -m
                branch(hit | low, left - 1)
                m ^= low

        branch(0, budget)
        if leaves:
            return min(tuple(v for v in verts if hit & bit[v]) for hit in leaves)
    return None


def is_C_far(h: Hypergraph, pair: FullPair, C: int) -> Optional[tuple]:
    """A set of at most C vertices meeting every off-lattice edge, or None."""
    if C < 0:
        raise InvalidArgument("C must be non-negative")
    return min_hitting_set(off_lattice_edges(h, pair), C)


# -- certificate search -----------------------------------------------------

def _tasks(k):
    out = []
    for d in range(1, k):
        for li, L in enumerate(enumerate_full_lattices(d, k)):
            out.append((d, li, L))
    return out


def _level_zero(h, gamma, task):
    """Insoluble pairs with no off-lattice edge, for one lattice."""
    d, li, L = task
    for P in list_partitions(h, L, gamma=gamma, strict=False):
        if is_soluble(h, FullPair(P, L)) is None:
            return ((0, (), d, li, P.key()), P, L)
    return None


def _deep_search(h, C, task, best_tau):
    """Insoluble pairs needing a non-empty far set, for one lattice (d >= 3).

    Labels vertices in order; an edge is classified once its last vertex is
    labelled.  Branches die as soon as the off-lattice edges contain a
    matching whose residues already reach every group element (then every
    completion is soluble) or a matching larger than the far-set budget.
    """
    d, li, L = task
    cg = coset_group(L)
    G = cg.group
    elems = list(G.elements)
    idx = {g: i for i, g in enumerate(elems)}
    add = [[idx[G.add(a, b)] for b in elems] for a in elems]
    lab = [idx[g] for g in cg.labels]
    g0 = idx[cg.g0]
    # residue of an edge, given the running label sum s, is s - g0
    res_of = [idx[G.sub(g, cg.g0)] for g in elems]
    zero = idx[G.zero]
    # R(i_P(V)) = sum of labels - (n/k) g0
    mul_g0 = idx[G.neg(G.mul(h.n // h.k, cg.g0))]
    size = len(elems)
    full_mask = (1 << size) - 1
    shift = [[0] * (full_mask + 1) for _ in range(size)]
    for r in range(size):
        for m in range(full_mask + 1):
            out = m
            for a in range(size):
                if m >> a & 1:
                    out |= 1 << add[a][r]
            shift[r][m] = out
    verts = h.vertices
    pos = {v: i for i, v in enumerate(verts)}
    closing = [[] for _ in verts]
    for e in h.sorted_edges:
        closing[pos[e[-1]]].append((e, e[:-1], h.mask(e)))
    n = len(verts)
    best = [None]
    cap = [min(C, best_tau)]
    assign = {}
    labof = {}
    sizes = [0] * d
    k = h.k

    def visit(i, off, matched, count, sums):
        if i == n:
            if 0 in sizes or not off:
                return
            total = 0
            for v in verts:
                total = add[total][labof[v]]
            target = add[total][mul_g0]
            if target == zero or _soluble_indexed(off, target, add, zero, d - 1):
                return
            S = min_hitting_set([e for e, _, _ in off], cap[0])
            if S is None:
                return
            P = OrderedPartition.from_assignment(assign, d)
            key = (len(S), S, d, li, P.key())
            if best[0] is None or key < best[0][0]:
                best[0] = (key, P, L)
                cap[0] = min(cap[0], len(S))
            return
        v = verts[i]
        empty = sizes.count(0)
        for j in range(d):
            if empty - (sizes[j] == 0) > n - i - 1:
                continue
            assign[v] = j
            labof[v] = lab[j]
            sizes[j] += 1
            new_off = off
            new_matched, new_count, new_sums = matched, count, sums
            dead = False
            lj = lab[j]
            for e, head, m in closing[i]:
                t = lj
                for u in head:
                    t = add[t][labof[u]]
                if t == g0:
                    continue
                if new_off is off:
                    new_off = list(off)
                new_off.append((e, res_of[t], m))
                if not new_matched & m:
                    new_matched |= m
                    new_count += 1
                    new_sums = shift[res_of[t]][new_sums]
                    if new_sums == full_mask or new_count > cap[0]:
                        dead = True
                        break
            if not dead:
                visit(i + 1, new_off, new_matched, new_count, new_sums)
            sizes[j] -= 1
            del assign[v]
            del labof[v]

    visit(0, [], 0, 0, 1 << idx[G.zero])
    return best[0]


def _soluble_indexed(off, target, add, zero, max_edges):
    """Is there a matching of 1..max_edges entries of ``off`` whose residues sum to target?"""

    def dfs(start, left, used, total):
        for i in range(start, len(off)):
            _, r, m = off[i]
            if m & used:
                continue
            t = add[total][r]
            if t == target or (left > 1 and dfs(i + 1, left - 1, used | m, t)):
                return True
        return False

    return dfs(0, max_edges, 0, zero)


def _run_deep(args):
    h, C, task, best_tau = args
    return _deep_search(h, C, task, best_tau)


def _run_level_zero(args):
    h, gamma, task = args
    return _level_zero(h, gamma, task)


def _map(fn, jobs, parallelism):
    if parallelism > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            return list(pool.map(fn, jobs))
    return [fn(job) for job in jobs]


def find_certificate(
    h: Hypergraph,
    gamma=DEFAULT_GAMMA,
    C: int = None,
    *,
    method: str = "enumerate",
    parallelism: int = 1,
) -> Optional[Certificate]:
    """Search for an insoluble C-far full pair.

    Candidates are ranked by (|S|, S, d, lattice index, partition key) and
    the least one is returned, so the answer does not depend on the method
    or on parallelism.  ``method="loop"`` runs the direct loop over far sets
    S and is only practical for very small instances.
    """
    gamma = _as_fraction(gamma)
    k = h.k
    if k < 3:
        raise InvalidArgument("certificates need k >= 3")
    if h.n % k:
        raise InvalidArgument(f"k={k} does not divide n={h.n}")
    C = default_C(k) if C is None else C
    if C < 0:
        raise InvalidArgument("C must be non-negative")
    if method == "loop":
        found = _loop_search(h, gamma, C)
    elif method == "enumerate":
        found = _enumerate_search(h, gamma, C, parallelism)
    else:
        raise InvalidArgument(f"unknown method {method!r}")
    if found is None:
        return None
    key, P, L = found
    return Certificate(key[1], P, L, C, coset_group(L))


def _enumerate_search(h, gamma, C, parallelism):
    tasks = _tasks(h.k)
    results = _map(_run_level_zero, [(h, gamma, t) for t in tasks], parallelism)
    hits = [r for r in results if r is not None]
    if hits:
        return min(hits, key=lambda r: r[0])
    if C == 0:
        return None
    deep = [t for t in tasks if t[0] >= 3]
    results = _map(_run_deep, [(h, C, t, C) for t in deep], parallelism)
    hits = [r for r in results if r is not None]
    return min(hits, key=lambda r: r[0]) if hits else None


def _far_cap(C, k):
    # for prime d an insoluble pair has off-lattice matching number <= d-2
    d_max = k - 1
    composite = any(d >= 4 and any(d % p == 0 for p in range(2, d)) for d in range(1, d_max + 1))
    return C if composite else min(C, k * max(0, d_max - 2))


def _loop_search(h, gamma, C):
    tasks = _tasks(h.k)
    for size in range(_far_cap(C, h.k) + 1):
        for S in combinations(h.vertices, size):
            rest = h.delete_vertices(S)
            for d, li, L in tasks:
                cands = []
                for Q in list_partitions(rest, L, gamma=gamma, strict=False, allow_empty=True):
                    for place in product(range(d), repeat=size):
                        parts = [list(p) for p in Q.parts]
                        for v, j in zip(S, place):
                            parts[j].append(v)
                        P = OrderedPartition(parts)
                        if P.has_empty_part():
                            continue
                        if is_soluble(h, FullPair(P, L)) is None:
                            cands.append(P)
                if cands:
                    P = min(cands, key=OrderedPartition.key)
                    return ((size, S, d, li, P.key()), P, L)
    return None


# -- verification -----------------------------------------------------------

def _check_shape(h, cert):
    if not isinstance(cert, Certificate):
        raise InvalidArgument("not a certificate")
    P, L = cert.partition, cert.lattice
    if P.d != L.d:
        raise InvalidArgument("partition and lattice disagree on d")
    if L.k != h.k:
        raise InvalidArgument("lattice uniformity differs from the hypergraph")
    if not P.covers(h.vertices):
        raise InvalidArgument("partition does not cover exactly the vertex set")
    if P.has_empty_part():
        raise InvalidArgument("partition has an empty part")
    if not set(cert.far_set) <= set(h.vertices):
        raise InvalidArgument("far set contains unknown vertices")
    if cert.C < 0:
        raise InvalidArgument("C must be non-negative")


def verify_certificate(h: Hypergraph, cert: Certificate) -> bool:
    """Check a certificate from scratch.

    (a) the lattice is full and d <= k-1; (b) |S| <= C and every edge missing
    S has its index vector in L; (c) no matching of at most d-1 edges puts
    the index vector of the uncovered vertices into L.  Step (c) groups edges
    by index vector and tests lattice membership directly.
    """
    _check_shape(h, cert)
    P, L = cert.partition, cert.lattice
    d, k = L.d, h.k
    if d > k - 1 or k < 3 or not is_full(L):
        return False
    if len(cert.far_set) > cert.C:
        return False
    far = set(cert.far_set)
    classes: dict = {}
    for e in h.sorted_edges:
        iv = _edge_index(e, P.part_of, d)
        if far.isdisjoint(e) and iv not in L:
            return False
        classes.setdefault(iv, []).append(e)
    expected = coset_group(L).to_json()
    if cert.group_json is not None and cert.group_json != expected:
        return False
    if cert.group is not None and cert.group.to_json() != expected:
        return False
    target = index_vector(P, h.vertices)
    keys = sorted(classes)
    for size in range(d):
        for combo in combinations_with_replacement(keys, size):
            rest = tuple(t - sum(c[j] for c in combo) for j, t in enumerate(target))
            if rest in L and _realisable(h, classes, combo):
                return False
    return True


def _realisable(h, classes, combo):
    """Is there a matching using one edge from each listed class?"""

    def go(i, used, prev_class, prev_idx):
        if i == len(combo):
            return True
        cls = classes[combo[i]]
        start = prev_idx + 1 if combo[i] == prev_class else 0
        for j in range(start, len(cls)):
            m = h.mask(cls[j])
            if not m & used and go(i + 1, used | m, combo[i], j):
                return True
        return False

    return go(0, 0, None, -1)


# -- decisions --------------------------------------------------------------

def determine_pm(h: Hypergraph, gamma=DEFAULT_GAMMA, brute_threshold: int = None, C: int = None,
                 parallelism: int = 1) -> bool:
    """Decision only: brute force below the threshold, certificate search above it."""
    if h.n % h.k:
        return False
    threshold = default_brute_threshold(h.k) if brute_threshold is None else brute_threshold
    if h.n < threshold or h.k < 3:
        return brute_force_pm(h) is not None
    return find_certificate(h, gamma, C, parallelism=parallelism) is None


def decide_pm(
    h: Hypergraph,
    gamma=DEFAULT_GAMMA,
    brute_threshold: int = None,
    *,
    C: int = None,
    eps=DEFAULT_EPS,
    parallelism: int = 1,
    fallback: bool = True,
) -> Decision:
    """Decide whether ``h`` has a perfect matching and return the witness."""
    if h.n % h.k:
        raise InvalidArgument(f"k={h.k} does not divide n={h.n}")
    threshold = default_brute_threshold(h.k) if brute_threshold is None else brute_threshold
    if h.n < threshold or h.k < 3:
        m = brute_force_pm(h)
        if m is not None:
            return Decision("pm", "brute", matching=m)
        # a certificate is still worth reporting when one exists
        cert = find_certificate(h, gamma, C, parallelism=parallelism) if h.k >= 3 else None
        return Decision("no_pm", "brute", certificate=cert)
    cert = find_certificate(h, gamma, C, parallelism=parallelism)
    if cert is not None:
        log.info("certificate found: |S|=%d d=%d", len(cert.far_set), cert.lattice.d)
        return Decision("no_pm", "asymptotic", certificate=cert)
    from .search import extract_matching

    return extract_matching(h, gamma, eps, threshold, C=C, parallelism=parallelism, fallback=fallback)
