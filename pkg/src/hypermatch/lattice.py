"""Index vectors, edge-lattices, fullness, coset groups and full-lattice enumeration.

Lattices live in Z^d and are stored by a canonical Hermite basis, so lattice
equality is tuple equality.  Coset groups are computed with a Smith form of
the lattice basis written in coordinates of ``L_max = {x : sum(x) = 0 mod k}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from . import _intmat
from .abelian import AbelianGroup, groups_of_order
from .errors import InvalidArgument


def k_vectors(d: int, k: int):
    """All non-negative integer vectors of dimension d summing to k, in lex order."""
    if d == 0:
        if k == 0:
            yield ()
        return
    if d == 1:
        yield (k,)
        return
    for first in range(k, -1, -1):
        for rest in k_vectors(d - 1, k - first):
            yield (first,) + rest


def unit(d: int, j: int) -> tuple:
    return tuple(int(i == j) for i in range(d))


def _part_map(P) -> dict:
    part_of = getattr(P, "part_of", None)
    if part_of is not None:
        return part_of
    out = {}
    for j, part in enumerate(P):
        for v in part:
            out[v] = j
    return out


def _num_parts(P) -> int:
    parts = getattr(P, "parts", P)
    return len(parts)


def index_vector(P, S) -> tuple:
    """Coordinates |S n X| for the parts X of P, in part order."""
    part_of = _part_map(P)
    out = [0] * _num_parts(P)
    for v in S:
        try:
            out[part_of[v]] += 1
        except KeyError:
            raise InvalidArgument(f"vertex {v} is not covered by the partition") from None
    return tuple(out)


class EdgeLattice:
    """A sublattice of Z^d generated by k-vectors.

    ``generators`` is the sorted tuple of generating k-vectors and ``basis``
    the canonical Hermite basis.  Equality and hashing use ``(d, basis)``.
    """

    __slots__ = ("d", "k", "generators", "basis")

    def __init__(self, d: int, k: int, generators=(), *, basis=None):
        if d < 1 or k < 1:
            raise InvalidArgument("d and k must be positive")
        gens = set()
        for g in generators:
            g = tuple(g)
            if len(g) != d or any(not isinstance(x, int) or x < 0 for x in g) or sum(g) != k:
                raise InvalidArgument(f"{g} is not a {k}-vector in Z^{d}")
            gens.add(g)
        self.d = d
        self.k = k
        self.generators = tuple(sorted(gens, reverse=True))
        self.basis = _intmat.hermite_rows(self.generators if basis is None else basis, d)

    @classmethod
    def from_basis(cls, d: int, k: int, basis) -> "EdgeLattice":
        """Rebuild a lattice from any integer basis; generators become its k-vectors."""
        rows = []
        for r in basis:
            r = tuple(r)
            if len(r) != d or any(not isinstance(x, int) for x in r):
                raise InvalidArgument(f"basis row {r} is not an integer vector of length {d}")
            rows.append(r)
        lat = cls(d, k, (), basis=rows)
        lat.generators = tuple(v for v in k_vectors(d, k) if _intmat.in_span(lat.basis, v))
        return lat

    def __eq__(self, other):
        if not isinstance(other, EdgeLattice):
            return NotImplemented
        return self.d == other.d and self.basis == other.basis

    def __hash__(self):
        return hash((self.d, self.basis))

    def __repr__(self):
        return f"EdgeLattice(d={self.d}, k={self.k}, basis={list(map(list, self.basis))})"

    def __contains__(self, v):
        return contains(self, v)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def sort_key(self):
        return (self.d, self.basis)

    def k_vectors(self) -> tuple:
        """I = the k-vectors lying in the lattice."""
        return _members(self.d, self.k, self.basis)

    def to_json(self) -> dict:
        return {"d": self.d, "k": self.k, "basis": [list(r) for r in self.basis]}

    @classmethod
    def from_json(cls, obj) -> "EdgeLattice":
        try:
            return cls.from_basis(int(obj["d"]), int(obj["k"]), obj["basis"])
        except (KeyError, TypeError) as exc:
            raise InvalidArgument(f"malformed lattice JSON: {exc}") from None


@lru_cache(maxsize=4096)
def _members(d, k, basis):
    return tuple(v for v in k_vectors(d, k) if _intmat.in_span(basis, v))


def lattice_from_generators(gens, d: int, k: int) -> EdgeLattice:
    return EdgeLattice(d, k, gens)


def lattice_max(d: int, k: int) -> EdgeLattice:
    """L_max^d, generated by every k-vector."""
    return EdgeLattice(d, k, k_vectors(d, k))


def contains(L: EdgeLattice, v) -> bool:
    v = tuple(v)
    if len(v) != L.d:
        raise InvalidArgument(f"vector of length {len(v)} tested against a lattice in Z^{L.d}")
    return _intmat.in_span(L.basis, v)


def edge_lattice(h, P) -> EdgeLattice:
    """The lattice generated by the index vectors of the edges of ``h``."""
    part_of = _part_map(P)
    d = _num_parts(P)
    gens = set()
    for e in h.edges:
        iv = [0] * d
        for v in e:
            iv[part_of[v]] += 1
        gens.add(tuple(iv))
    return EdgeLattice(d, h.k, gens)


def is_transferral_free(L: EdgeLattice) -> bool:
    d = L.d
    for i in range(d):
        for j in range(d):
            if i != j:
                diff = tuple(int(t == i) - int(t == j) for t in range(d))
                if _intmat.in_span(L.basis, diff):
                    return False
    return True


def is_full(L: EdgeLattice, d: int = None, k: int = None) -> bool:
    """Transferral-free, and every (k-1)-vector extends by some unit vector into L."""
    d = L.d if d is None else d
    k = L.k if k is None else k
    if k < 3:
        raise InvalidArgument("fullness is only defined here for k >= 3")
    if d != L.d:
        raise InvalidArgument(f"lattice lives in Z^{L.d}, not Z^{d}")
    if not is_transferral_free(L):
        return False
    for v in k_vectors(d, k - 1):
        if not any(_intmat.in_span(L.basis, tuple(x + (t == j) for t, x in enumerate(v)))
                   for j in range(d)):
            return False
    return True


def project(v, P, P_coarse) -> tuple:
    """Sum the coordinates of ``v`` over the parts of P inside each part of P_coarse."""
    fine = getattr(P, "parts", P)
    coarse_of = _part_map(P_coarse)
    v = tuple(v)
    if len(v) != len(fine):
        raise InvalidArgument("vector dimension does not match the partition")
    out = [0] * _num_parts(P_coarse)
    for x, part in zip(v, fine):
        targets = {coarse_of.get(u) for u in part}
        if len(targets) > 1 or None in targets:
            raise InvalidArgument("the first partition does not refine the second")
        if targets:
            out[targets.pop()] += x
        elif x:
            raise InvalidArgument("an empty part carries a non-zero coordinate")
    return tuple(out)


@dataclass(frozen=True)
class CosetGroup:
    """G = L_max / L with a labelling of parts by group elements.

    ``labels[X]`` is the residue of u_X - u_0 and ``g0`` the residue of
    -k u_0; then a k-vector i lies in L iff ``sum i_X labels[X] == g0``.
    """

    group: AbelianGroup
    labels: tuple
    g0: tuple
    k: int

    @property
    def residue_of_unit(self) -> dict:
        return dict(enumerate(self.labels))

    def residue(self, i) -> tuple:
        """R(i) for i in L_max; zero exactly on L."""
        s = sum(i)
        if s % self.k:
            raise InvalidArgument(f"{tuple(i)} is not in L_max")
        g = self.group.sum(self.group.mul(x, lab) for x, lab in zip(i, self.labels))
        return self.group.sub(g, self.group.mul(s // self.k, self.g0))

    def to_json(self) -> dict:
        return {"invariant_factors": list(self.group.invariant_factors), "g0": list(self.g0)}


def coset_group(L: EdgeLattice) -> CosetGroup:
    """The coset group of a full lattice, with the labelling fixed by part 0."""
    return _coset_group(L.d, L.k, L.basis)


@lru_cache(maxsize=4096)
def _coset_group(d, k, basis):
    L = EdgeLattice(d, k, (), basis=basis)
    if k < 3 or not is_full(L):
        raise InvalidArgument("coset groups are computed for full lattices only")
    bmax = lattice_max(d, k).basis
    relations = [_intmat.coordinates(bmax, row) for row in L.basis]
    factors, transform, keep = _intmat.finite_quotient(relations, d)
    group = AbelianGroup(factors)

    def R(x):
        return _intmat.project(_intmat.coordinates(bmax, x), transform, keep, factors)

    u0 = unit(d, 0)
    labels = tuple(R(tuple(a - b for a, b in zip(unit(d, j), u0))) for j in range(d))
    g0 = R(tuple(-k * x for x in u0))
    return CosetGroup(group, labels, g0, k)


def lattice_of_group(G: AbelianGroup, g0, k: int, labels=None) -> EdgeLattice:
    """L(G, g0): generated by the k-vectors i with sum_g i_g g = g0.

    Coordinates are labelled by ``labels`` (default: ``G.elements`` in order),
    which must list every element of G exactly once.
    """
    if k < 3:
        raise InvalidArgument("k must be at least 3")
    labels = tuple(G.elements) if labels is None else tuple(G.element(g) for g in labels)
    if len(labels) != G.order or set(labels) != set(G.elements):
        raise InvalidArgument("labels must enumerate the group elements bijectively")
    g0 = G.element(g0)
    d = len(labels)
    gens = [i for i in k_vectors(d, k)
            if G.sum(G.mul(x, g) for x, g in zip(i, labels)) == g0]
    return EdgeLattice(d, k, gens)


@lru_cache(maxsize=None)
def _enumerate(d: int, k: int) -> tuple:
    found = {}
    for G in groups_of_order(d):
        for labels in permutations(G.elements):
            if labels[0] != G.zero:
                # translating every label by h gives the same lattice with g0 + k h
                continue
            for g0 in G.elements:
                L = lattice_of_group(G, g0, k, labels)
                found.setdefault(L.basis, L)
    return tuple(sorted(found.values(), key=EdgeLattice.sort_key))


def enumerate_full_lattices(d: int, k: int) -> list:
    """Every full lattice in Z^d for uniformity k, sorted by canonical basis."""
    if k < 3:
        raise InvalidArgument("k must be at least 3")
    if not 1 <= d <= k - 1:
        raise InvalidArgument(f"need 1 <= d <= k-1, got d={d}, k={k}")
    return list(_enumerate(d, k))
