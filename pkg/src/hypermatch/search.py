"""Perfect-matching extraction by repeated removal of safe edges.

Each step deletes one edge (with its vertices) whose removal leaves a graph
that still has a perfect matching and still satisfies two potential bounds
built from codegree deficiencies.  Once the graph is below the brute-force
threshold the rest of the matching is found exhaustively.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .decide import (
    DEFAULT_EPS,
    DEFAULT_GAMMA,
    Decision,
    decide_pm,
    default_brute_threshold,
    determine_pm,
)
from .errors import InvalidArgument, RegimeViolation
from .hypergraph import (
    DeficiencyTable,
    Hypergraph,
    _as_fraction,
    brute_force_pm,
    deficiency_table,
    is_perfect_matching,
)

log = logging.getLogger(__name__)

# brute-force completion after a regime break is allowed up to this many vertices
BRUTE_FALLBACK_MAX_N = 30


def rational_sqrt(x) -> Fraction:
    """Exact square root of a rational that is a perfect square."""
    x = _as_fraction(x)
    if x < 0:
        raise InvalidArgument("negative number has no square root")
    p, q = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if p * p != x.numerator or q * q != x.denominator:
        raise InvalidArgument(f"{x} is not the square of a rational")
    return Fraction(p, q)


@dataclass(frozen=True)
class RegimeCheck:
    n: int
    chi1: Fraction
    chi2: Fraction
    cond_i: bool
    cond_ii: bool

    @property
    def ok(self) -> bool:
        return self.cond_i and self.cond_ii


def regime_conditions(h: Hypergraph, gamma, eps, table: DeficiencyTable = None) -> RegimeCheck:
    """Evaluate the two potential bounds exactly.

    (i)  chi1 < eps gamma^2 n^(k+1) / 4 + 3 k n^k
    (ii) chi2 + chi1 / (sqrt(eps) gamma^2 n^2) < sqrt(eps) n^(k-1)

    Both hold vacuously on the empty graph.
    """
    gamma, eps = _as_fraction(gamma), _as_fraction(eps)
    root = rational_sqrt(eps)
    n, k = h.n, h.k
    if n == 0:
        return RegimeCheck(0, Fraction(0), Fraction(0), True, True)
    table = deficiency_table(h, gamma) if table is None else table
    chi1, chi2 = table.chi1, table.chi2
    cond_i = chi1 < eps * gamma ** 2 * n ** (k + 1) / 4 + 3 * k * n ** k
    cond_ii = chi2 + chi1 / (root * gamma ** 2 * n ** 2) < root * n ** (k - 1)
    return RegimeCheck(n, chi1, chi2, cond_i, cond_ii)


def case2_score(h: Hypergraph, table: DeficiencyTable, e) -> Fraction:
    """sum over A of 2 t_A (|H(A) n e| - 1 - k gamma) - |A n e| t_A^2."""
    k, gamma = h.k, table.gamma
    es = set(e)
    total = Fraction(0)
    for a, t in table.t.items():
        if not t:
            continue
        inside = len(es.intersection(a))
        hits = sum(1 for v in e if v not in a and tuple(sorted(a + (v,))) in h.edges)
        total += 2 * t * (hits - 1 - k * gamma) - inside * t * t
    return total


def case2_bound(table: DeficiencyTable, n: int, k: int) -> Fraction:
    return -Fraction(k * (k + 1)) * table.chi1 / n


@dataclass
class RemovalState:
    h: Hypergraph
    gamma: Fraction
    eps: Fraction
    brute_threshold: int
    C: Optional[int] = None
    parallelism: int = 1
    removed: list = field(default_factory=list)
    require_regime: bool = True
    last_case: int = 0
    _table: Optional[DeficiencyTable] = None

    @property
    def deficiency(self) -> DeficiencyTable:
        if self._table is None:
            self._table = deficiency_table(self.h, self.gamma)
        return self._table

    def remove(self, e):
        self.removed.append(tuple(e))
        self.h = self.h.delete_vertices(e)
        self._table = None


def _is_safe(state: RemovalState, rest: Hypergraph) -> bool:
    return determine_pm(rest, state.gamma, state.brute_threshold, state.C, state.parallelism)


def safe_edges(h: Hypergraph, gamma=DEFAULT_GAMMA, brute_threshold: int = None, C: int = None) -> frozenset:
    """Edges e such that H - e still has a perfect matching."""
    threshold = default_brute_threshold(h.k) if brute_threshold is None else brute_threshold
    return frozenset(e for e in h.sorted_edges
                     if determine_pm(h.delete_vertices(e), gamma, threshold, C))


def removal_candidates(state: RemovalState):
    """(case, edges) in the order they are tried."""
    h, table = state.h, state.deficiency
    if table.chi2 > 0:
        low = table.min_degree
        x = min(v for v in h.vertices if h.vertex_degree(v) == low)
        return 1, list(h.incidence[x])
    bound = case2_bound(table, h.n, h.k)
    return 2, [e for e in h.sorted_edges if case2_score(h, table, e) <= bound]


def find_removal_edge(state: RemovalState):
    """The first candidate edge that is safe and keeps both bounds at n - k."""
    case, cands = removal_candidates(state)
    state.last_case = case
    for e in cands:
        rest = state.h.delete_vertices(e)
        if state.require_regime and not regime_conditions(rest, state.gamma, state.eps).ok:
            continue
        if _is_safe(state, rest):
            return e
    raise RegimeViolation(
        f"no qualifying edge at n={state.h.n} (case {case}, {len(cands)} candidates)",
        partial=tuple(state.removed),
    )


def _event(**fields):
    out = {k: (str(v) if isinstance(v, Fraction) else v) for k, v in fields.items()}
    log.info(json.dumps(out, sort_keys=True))
    return out


def extract_matching(
    h: Hypergraph,
    gamma=DEFAULT_GAMMA,
    eps=DEFAULT_EPS,
    brute_threshold: int = None,
    *,
    C: int = None,
    parallelism: int = 1,
    fallback: bool = True,
) -> Decision:
    """Run the removal loop and finish by brute force; see ``find_pm``."""
    gamma, eps = _as_fraction(gamma), _as_fraction(eps)
    rational_sqrt(eps)
    threshold = default_brute_threshold(h.k) if brute_threshold is None else brute_threshold
    state = RemovalState(h, gamma, eps, threshold, C, parallelism)
    events = []
    notes = []
    while state.h.n > 0 and state.h.n >= threshold:
        try:
            e = find_removal_edge(state)
        except RegimeViolation:
            if fallback and state.h.n <= BRUTE_FALLBACK_MAX_N:
                notes.append(f"regime fallback at n={state.h.n}")
                events.append(_event(event="regime_fallback", n=state.h.n, case=state.last_case))
                break
            raise
        table = state.deficiency
        events.append(_event(event="remove", n=state.h.n, case=state.last_case, edge=list(e),
                             chi1=table.chi1, chi2=table.chi2))
        state.remove(e)
    rest = brute_force_pm(state.h) if state.h.n else ()
    if rest is None:
        notes.append("dead end after removals; exhaustive search on the whole graph")
        events.append(_event(event="dead_end", n=state.h.n))
        whole = brute_force_pm(h)
        if whole is None:
            return Decision("no_pm", "brute", notes=tuple(notes), trace=tuple(events))
        return Decision("pm", "brute", matching=whole, notes=tuple(notes), trace=tuple(events))
    matching = tuple(sorted(state.removed + list(rest)))
    if not is_perfect_matching(h, matching):
        raise AssertionError("extracted matching is not perfect")
    return Decision("pm", "asymptotic", matching=matching, notes=tuple(notes), trace=tuple(events))


def find_pm(
    h: Hypergraph,
    gamma=DEFAULT_GAMMA,
    eps=DEFAULT_EPS,
    brute_threshold: int = None,
    *,
    C: int = None,
    parallelism: int = 1,
    fallback: bool = True,
) -> Decision:
    """Find a perfect matching or a certificate that none exists.

    Runs the certificate search; if it comes back empty, edges are removed
    one at a time while the graph has at least ``brute_threshold`` vertices
    and the remainder is matched exhaustively.  A regime break with a small
    remainder falls back to exhaustive search when ``fallback`` is set and
    otherwise raises ``RegimeViolation`` carrying the partial matching.
    """
    decision = decide_pm(h, gamma, brute_threshold, C=C, eps=eps, parallelism=parallelism,
                         fallback=fallback)
    if decision.has_pm and not is_perfect_matching(h, decision.matching):
        raise AssertionError("returned matching is not perfect")
    return decision
