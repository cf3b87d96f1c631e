"""Generators for the classic matchless k-graphs and for random dense instances.

Vertices are laid out part by part starting from 1, so every generator also
returns (through the ``*_parts`` helpers) the ordered partition it was built
from.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional

from .errors import GenerationFailure, InvalidArgument
from .hypergraph import Hypergraph, min_codegree


def _layout(sizes):
    parts, start = [], 1
    for s in sizes:
        parts.append(tuple(range(start, start + s)))
        start += s
    return parts


def _k_sets(n, k, keep):
    return [e for e in combinations(range(1, n + 1), k) if keep(e)]


# -- parity -----------------------------------------------------------------

def parity_parts(size_A: int, size_B: int):
    return _layout((size_A, size_B))


def gen_parity(k: int, size_A: int, size_B: int) -> Hypergraph:
    """All k-sets meeting A in an even number of vertices, with |A| odd."""
    if k < 3:
        raise InvalidArgument("k must be at least 3")
    if size_A < 1 or size_A % 2 == 0 or size_B < 0:
        raise InvalidArgument("|A| must be odd and |B| non-negative")
    n = size_A + size_B
    return Hypergraph(n, k, _k_sets(n, k, lambda e: sum(v <= size_A for v in e) % 2 == 0))


# -- mod 3 ------------------------------------------------------------------

def mod3_sizes(n: int) -> tuple:
    """(|A|, |B|, |C|) with |A| = |B| + 2, each within 2 of n/3, as balanced as possible."""
    best = None
    for b in range(n + 1):
        a, c = b + 2, n - 2 * b - 2
        if c < 1:
            break
        sizes = (a, b, c)
        if b < 1 or any(abs(3 * s - n) > 6 for s in sizes):
            continue
        score = (sum(abs(3 * s - n) for s in sizes), sizes)
        if best is None or score < best:
            best = score
    if best is None:
        raise InvalidArgument(f"no admissible part sizes for n={n}")
    return best[1]


def mod3_parts(n: int):
    return _layout(mod3_sizes(n))


def gen_mod3(k: int, n: int) -> Hypergraph:
    """k-sets with |e n A| = |e n B| mod 3, plus x joined to any k-1 vertices of C.

    The special vertex x is vertex 1, the first vertex of A.
    """
    if k < 4:
        raise InvalidArgument("k must be at least 4")
    A, B, C = mod3_parts(n)
    in_A, in_B, in_C = set(A), set(B), set(C)
    x = A[0]
    edges = set(_k_sets(n, k, lambda e: (len(in_A.intersection(e)) - len(in_B.intersection(e))) % 3 == 0))
    for z in combinations(C, k - 1):
        edges.add((x,) + z)
    return Hypergraph(n, k, edges)


# -- nested parity ----------------------------------------------------------

def nested_sizes(k: int, n: int = None) -> tuple:
    """Balanced (|V11|, |V12|, |V21|, |V22|) with |W1| even and |V11 u V21| odd.

    Without ``n`` the smallest multiple of k, at least 2k, that admits such
    sizes is used (with n = k there is at most one edge).
    """
    if n is None:
        n = 2 * k
        while True:
            try:
                return nested_sizes(k, n)
            except InvalidArgument:
                n += k
    best = None
    for sizes in product(range(1, n), repeat=3):
        last = n - sum(sizes)
        if last < 1:
            continue
        s = sizes + (last,)
        if (s[0] + s[1]) % 2 or (s[0] + s[2]) % 2 == 0:
            continue
        key = (max(s) - min(s), tuple(-x for x in s))
        if best is None or key < best[0]:
            best = (key, s)
    if best is None:
        raise InvalidArgument(f"no admissible nested sizes for n={n}")
    return best[1]


def nested_parts(sizes):
    return _layout(sizes)


def gen_nested(k: int, sizes=None) -> Hypergraph:
    """k-sets even in W1 = V11 u V12 and even in V11 u V21."""
    if k < 5:
        raise InvalidArgument("k must be at least 5")
    sizes = nested_sizes(k) if sizes is None else tuple(sizes)
    if len(sizes) != 4 or any(s < 1 for s in sizes):
        raise InvalidArgument("need four non-empty parts V11, V12, V21, V22")
    if (sizes[0] + sizes[1]) % 2:
        raise InvalidArgument("|W1| must be even")
    if (sizes[0] + sizes[2]) % 2 == 0:
        raise InvalidArgument("|V11 u V21| must be odd")
    V11, V12, V21, V22 = nested_parts(sizes)
    W1 = set(V11) | set(V12)
    odd_side = set(V11) | set(V21)
    n = sum(sizes)
    return Hypergraph(n, k, _k_sets(
        n, k, lambda e: len(W1.intersection(e)) % 2 == 0 and len(odd_side.intersection(e)) % 2 == 0))


# -- general matchless construction -----------------------------------------

def general_nopm_sizes(k: int, n: int) -> tuple:
    """Sizes |A_1..A_{k-1}| within 2 of n/(k-1), sum j|A_j| = k-2 mod k-1, |A_1| >= k(k-2)-1."""
    m = k - 1
    core = k * (k - 2) - 1
    lo = max(1, math.ceil((n - 2 * m) / m))
    hi = (n + 2 * m) // m
    best = None
    for head in product(range(lo, hi + 1), repeat=m - 1):
        last = n - sum(head)
        sizes = head + (last,)
        if abs(m * last - n) > 2 * m or last < 1:
            continue
        if sizes[0] < core:
            continue
        if sum((j + 1) * s for j, s in enumerate(sizes)) % m != (k - 2) % m:
            continue
        key = (sum(abs(m * s - n) for s in sizes), sizes)
        if best is None or key < best:
            best = key
    if best is None:
        raise InvalidArgument(f"no admissible sizes for k={k}, n={n}")
    return best[1]


def general_nopm_min_n(k: int) -> int:
    n = k
    while True:
        try:
            general_nopm_sizes(k, n)
            return n
        except InvalidArgument:
            n += k


def general_nopm_parts(k: int, n: int):
    return _layout(general_nopm_sizes(k, n))


def general_nopm_core(k: int, n: int) -> tuple:
    """The set B: the first k(k-2)-1 vertices of A_1."""
    return general_nopm_parts(k, n)[0][: k * (k - 2) - 1]


def gen_general_nopm(k: int, n: int = None) -> Hypergraph:
    """k-sets with sum_j j|e n A_j| = 0 mod k-1, plus every k-subset of the core B."""
    if k < 4:
        raise InvalidArgument("k must be at least 4")
    n = general_nopm_min_n(k) if n is None else n
    if n % k:
        raise InvalidArgument(f"k={k} must divide n={n}")
    parts = general_nopm_parts(k, n)
    weight = {v: j + 1 for j, part in enumerate(parts) for v in part}
    edges = set(_k_sets(n, k, lambda e: sum(weight[v] for v in e) % (k - 1) == 0))
    edges.update(combinations(general_nopm_core(k, n), k))
    return Hypergraph(n, k, edges)


# -- space barrier ----------------------------------------------------------

def gen_space_barrier(k: int, n: int, s: int) -> Hypergraph:
    """All k-sets meeting S = {1..s}, with s < n/k."""
    if s < 0 or s * k >= n:
        raise InvalidArgument("need 0 <= s < n/k")
    return Hypergraph(n, k, _k_sets(n, k, lambda e: e[0] <= s))


def gen_complete(n: int, k: int) -> Hypergraph:
    return Hypergraph.complete(n, k)


# -- random dense -----------------------------------------------------------

def gen_random_dense(k: int, n: int, min_codeg_target: int, seed: int = 0, *,
                     attempts: int = 20, repair: bool = True) -> Hypergraph:
    """A reproducible random k-graph with every codegree at least the target.

    Each k-set is kept with a probability tuned to the target; with
    ``repair`` set, deficient (k-1)-sets then receive random extra edges
    until they reach the target.  Without repair the graph is resampled up
    to ``attempts`` times.
    """
    if k < 2 or n < k:
        raise InvalidArgument("need 2 <= k <= n")
    room = n - k + 1
    if not 0 <= min_codeg_target <= room:
        raise InvalidArgument(f"target must lie in [0, {room}]")
    rng = random.Random(seed)
    p = min(1.0, (min_codeg_target + 1.5) / room)
    all_sets = list(combinations(range(1, n + 1), k))
    for _ in range(attempts):
        edges = {e for e in all_sets if rng.random() < p}
        if repair:
            _repair(edges, n, k, min_codeg_target, rng)
        h = Hypergraph(n, k, edges)
        if min_codegree(h) >= min_codeg_target:
            return h
    raise GenerationFailure(f"no sample reached codegree {min_codeg_target} in {attempts} attempts")


def _repair(edges, n, k, target, rng):
    counts = {}
    for e in edges:
        for a in combinations(e, k - 1):
            counts[a] = counts.get(a, 0) + 1
    for a in combinations(range(1, n + 1), k - 1):
        missing = target - counts.get(a, 0)
        if missing <= 0:
            continue
        outside = [v for v in range(1, n + 1) if v not in a and tuple(sorted(a + (v,))) not in edges]
        for v in rng.sample(outside, missing):
            e = tuple(sorted(a + (v,)))
            edges.add(e)
            for b in combinations(e, k - 1):
                counts[b] = counts.get(b, 0) + 1


# -- dispatch ---------------------------------------------------------------

KINDS = ("parity", "mod3", "nested", "general_nopm", "space_barrier", "random_dense", "complete")


@dataclass(frozen=True)
class InstanceSpec:
    kind: str
    k: int
    n: Optional[int] = None
    sizes: Optional[tuple] = None
    s: Optional[int] = None
    target: Optional[int] = None
    seed: int = 0


def generate(spec: InstanceSpec) -> Hypergraph:
    kind, k = spec.kind, spec.k
    if kind == "parity":
        if spec.sizes is None or len(spec.sizes) != 2:
            raise InvalidArgument("parity needs sizes (|A|, |B|)")
        return gen_parity(k, *spec.sizes)
    if kind == "mod3":
        return gen_mod3(k, _need(spec.n, "n"))
    if kind == "nested":
        return gen_nested(k, spec.sizes)
    if kind == "general_nopm":
        return gen_general_nopm(k, spec.n)
    if kind == "space_barrier":
        return gen_space_barrier(k, _need(spec.n, "n"), _need(spec.s, "s"))
    if kind == "random_dense":
        return gen_random_dense(k, _need(spec.n, "n"), _need(spec.target, "target"), spec.seed)
    if kind == "complete":
        return gen_complete(_need(spec.n, "n"), k)
    raise InvalidArgument(f"unknown instance kind {kind!r}")


def _need(value, name):
    if value is None:
        raise InvalidArgument(f"this instance kind needs {name}")
    return value
