"""Finite abelian groups, subgroups, subsequence sums and key subgroups.

Groups are given by invariant factors ``m1 | m2 | ... | mt`` and elements are
tuples of residues.  Everything here is exhaustive and intended for the tiny
groups (order at most k-1) that arise as coset groups of full lattices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from . import _intmat
from .errors import InvalidArgument, ResourceLimit

DEFAULT_SUBGROUP_BOUND = 64


class AbelianGroup:
    """Z_{m1} x ... x Z_{mt} with m1 | m2 | ... | mt."""

    def __init__(self, invariant_factors=()):
        factors = tuple(int(m) for m in invariant_factors)
        if any(m < 1 for m in factors):
            raise InvalidArgument(f"invariant factors must be >= 1: {factors}")
        factors = tuple(m for m in factors if m > 1)
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise InvalidArgument(f"{factors} is not a divisibility chain")
        self.invariant_factors = factors

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and self.invariant_factors == other.invariant_factors

    def __hash__(self):
        return hash(self.invariant_factors)

    def __repr__(self):
        if not self.invariant_factors:
            return "AbelianGroup(trivial)"
        return "AbelianGroup(" + " x ".join(f"Z{m}" for m in self.invariant_factors) + ")"

    @property
    def order(self) -> int:
        out = 1
        for m in self.invariant_factors:
            out *= m
        return out

    @property
    def zero(self) -> tuple:
        return (0,) * len(self.invariant_factors)

    @cached_property
    def elements(self) -> tuple:
        return tuple(product(*(range(m) for m in self.invariant_factors)))

    def element(self, x) -> tuple:
        """Normalise an integer tuple (or int, for cyclic groups) to an element."""
        if isinstance(x, int):
            x = (x,)
        x = tuple(x)
        if len(x) != len(self.invariant_factors):
            raise InvalidArgument(f"{x} has the wrong rank for {self}")
        return tuple(xi % m for xi, m in zip(x, self.invariant_factors))

    def is_element(self, x) -> bool:
        return (
            isinstance(x, tuple)
            and len(x) == len(self.invariant_factors)
            and all(isinstance(xi, int) and 0 <= xi < m for xi, m in zip(x, self.invariant_factors))
        )

    def add(self, a, b) -> tuple:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.invariant_factors))

    def neg(self, a) -> tuple:
        return tuple(-x % m for x, m in zip(a, self.invariant_factors))

    def sub(self, a, b) -> tuple:
        return tuple((x - y) % m for x, y, m in zip(a, b, self.invariant_factors))

    def mul(self, r: int, a) -> tuple:
        return tuple(r * x % m for x, m in zip(a, self.invariant_factors))

    def sum(self, items) -> tuple:
        total = self.zero
        for g in items:
            total = self.add(total, g)
        return total


def cyclic(m: int) -> AbelianGroup:
    return AbelianGroup((m,))


def _chains(n, base):
    # divisibility chains with product n whose first factor is a multiple of base
    if n == 1:
        yield ()
        return
    for m in range(base, n + 1, base):
        if m > 1 and n % m == 0:
            for rest in _chains(n // m, m):
                if not rest or rest[0] % m == 0:
                    yield (m,) + rest


def groups_of_order(n: int) -> list:
    """Every abelian group of order n, one per isomorphism class."""
    if n < 1:
        raise InvalidArgument("group order must be positive")
    chains = sorted(set(_chains(n, 1)), key=lambda c: (len(c), c))
    return [AbelianGroup(c) for c in chains]


@dataclass(frozen=True)
class Subgroup:
    elements: frozenset
    generators: tuple

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g):
        return g in self.elements


def closure(group: AbelianGroup, gens) -> frozenset:
    """The subgroup generated by ``gens``."""
    found = {group.zero}
    frontier = [group.zero]
    gens = [group.element(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = group.add(x, g)
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(found)


def subgroup(group: AbelianGroup, gens) -> Subgroup:
    gens = tuple(group.element(g) for g in gens)
    return Subgroup(closure(group, gens), gens)


def subgroups(group: AbelianGroup, bound: int = DEFAULT_SUBGROUP_BOUND) -> list:
    """All subgroups, each exactly once, sorted by order then elements."""
    if group.order > bound:
        raise ResourceLimit(f"|G| = {group.order} exceeds the subgroup bound {bound}")
    trivial = Subgroup(frozenset([group.zero]), ())
    seen = {trivial.elements: trivial}
    queue = [trivial]
    while queue:
        h = queue.pop()
        for g in group.elements:
            if g in h.elements:
                continue
            elems = closure(group, h.generators + (g,))
            if elems not in seen:
                sub = Subgroup(elems, h.generators + (g,))
                seen[elems] = sub
                queue.append(sub)
    return sorted(seen.values(), key=lambda s: (s.order, sorted(s.elements)))


def subsequence_sums(group: AbelianGroup, seq) -> frozenset:
    """Sums of all subsequences of ``seq``, including the empty one."""
    sums = {group.zero}
    for g in seq:
        g = group.element(g)
        sums |= {group.add(s, g) for s in sums}
    return frozenset(sums)


def is_union_of_cosets(group: AbelianGroup, subset, k_elements) -> bool:
    subset = frozenset(subset)
    return all(group.add(s, h) in subset for s in subset for h in k_elements)


def is_minimal_sequence(group: AbelianGroup, seq) -> bool:
    """True iff every proper subsequence has a strictly smaller sum set.

    Sum sets are monotone under inclusion, so single deletions suffice.
    """
    seq = list(seq)
    full = subsequence_sums(group, seq)
    return all(subsequence_sums(group, seq[:i] + seq[i + 1:]) != full for i in range(len(seq)))


def _generators_of(group: AbelianGroup, elems) -> tuple:
    gens = []
    span = frozenset([group.zero])
    for g in sorted(elems):
        if g not in span:
            gens.append(g)
            span = closure(group, gens)
    return tuple(gens)


def key_subgroup(group: AbelianGroup, seq) -> Subgroup:
    """The largest subgroup K with the sum set a union of K-cosets.

    That subgroup is the translation stabiliser of the sum set, which is
    computed directly.
    """
    sums = subsequence_sums(group, seq)
    anchor = next(iter(sums))
    stab = frozenset(
        g for g in (group.sub(s, anchor) for s in sums)
        if all(group.add(s, g) in sums for s in sums)
    )
    return Subgroup(stab, _generators_of(group, stab))


def quotient(group: AbelianGroup, sub) -> tuple:
    """Materialise G/K.  Returns ``(Q, proj)`` with ``proj`` a surjective hom G -> Q."""
    elements = sub.elements if isinstance(sub, Subgroup) else closure(group, sub)
    factors = group.invariant_factors
    rank = len(factors)
    relations = [[m if i == j else 0 for j in range(rank)] for i, m in enumerate(factors)]
    relations += [list(g) for g in _generators_of(group, elements)]
    if rank == 0:
        return AbelianGroup(()), lambda g: ()
    qf, transform, keep = _intmat.finite_quotient(relations, rank)
    q = AbelianGroup(qf)

    def proj(g):
        return _intmat.project(group.element(g), transform, keep, qf)

    return q, proj
