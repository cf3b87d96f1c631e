"""Shared oracles and helpers for the test suite.

The oracles here are deliberately naive: they enumerate everything and share
no code with the search routines they check.
"""

from __future__ import annotations

from itertools import combinations, product

from hypermatch.lattice import k_vectors

# one "CRITERION n PASS/FAIL" line per acceptance check, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


def all_assignments(vertices, d):
    """Every map from ``vertices`` to part indices 0..d-1, as dicts."""
    vertices = list(vertices)
    for combo in product(range(d), repeat=len(vertices)):
        yield dict(zip(vertices, combo))


def index_of(e, assign, d):
    out = [0] * d
    for v in e:
        out[assign[v]] += 1
    return tuple(out)


def partitions_oracle(h, members, d, allow_empty=False):
    """Keys (part index per vertex) of every partition with all edges in ``members``."""
    members = set(members)
    out = set()
    for assign in all_assignments(h.vertices, d):
        if not allow_empty and len(set(assign.values())) < d:
            continue
        if all(index_of(e, assign, d) in members for e in h.edges):
            out.add(tuple(assign[v] for v in h.vertices))
    return out


def bounded_span(gens, d, coeff=6, norm=6):
    """Vectors of sup-norm <= norm reachable as integer combinations with |coeff| <= bound."""
    reach = {(0,) * d}
    for g in gens:
        nxt = set()
        for v in reach:
            for c in range(-coeff, coeff + 1):
                nxt.add(tuple(a + c * b for a, b in zip(v, g)))
        reach = nxt
    return {v for v in reach if max(map(abs, v), default=0) <= norm}


def all_matchings(h, max_size):
    """Every matching of at most ``max_size`` edges, as sorted edge tuples."""
    edges = h.sorted_edges
    for size in range(max_size + 1):
        for combo in combinations(edges, size):
            used = [v for e in combo for v in e]
            if len(used) == len(set(used)):
                yield combo


def perfect_matching_exists(h):
    """Independent oracle: try every set of n/k edges."""
    if h.n % h.k:
        return False
    for combo in combinations(h.sorted_edges, h.n // h.k):
        if len({v for e in combo for v in e}) == h.n:
            return True
    return False


def lattice_by_rule(d, k, rule):
    """The lattice generated by the k-vectors accepted by ``rule``."""
    from hypermatch.lattice import EdgeLattice

    return EdgeLattice(d, k, [v for v in k_vectors(d, k) if rule(v)])


def permute_lattice(L, order):
    """Reorder coordinates: new coordinate j is old coordinate order[j]."""
    from hypermatch.lattice import EdgeLattice

    return EdgeLattice(L.d, L.k, [tuple(g[i] for i in order) for g in L.generators])


def matches_shape(cert, expected_parts, expected_lattice, extra_ok=None):
    """Does the certificate equal (expected partition, lattice) up to part order?

    Vertices of the far set may sit in any part, so the comparison is made
    on the complement of S.
    """
    far = set(cert.far_set)
    got = [frozenset(p) - far for p in cert.partition.parts]
    want = [frozenset(p) - far for p in expected_parts]
    if len(got) != len(want):
        return False
    try:
        order = [got.index(w) for w in want]
    except ValueError:
        return False
    if sorted(order) != list(range(len(want))):
        return False
    return permute_lattice(cert.lattice, order) == expected_lattice


def full_lattices_by_filter(d, k):
    """Full lattices found by brute force: every set of k-vectors, kept if it generates a full lattice.

    A full lattice is generated by the k-vectors it contains, so ranging over
    all sets of k-vectors reaches every full lattice.
    """
    from hypermatch.lattice import EdgeLattice, is_full

    vecs = list(k_vectors(d, k))
    found = {}
    for mask in range(1 << len(vecs)):
        gens = [v for i, v in enumerate(vecs) if mask >> i & 1]
        L = EdgeLattice(d, k, gens)
        if L.basis not in found and is_full(L):
            found[L.basis] = L
    return found
