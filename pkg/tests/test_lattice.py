from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from hypermatch import _intmat
from hypermatch.abelian import AbelianGroup, cyclic, groups_of_order
from hypermatch.construct import gen_parity
from hypermatch.errors import InvalidArgument
from hypermatch.hypergraph import Hypergraph
from hypermatch.lattice import (
    EdgeLattice,
    contains,
    coset_group,
    edge_lattice,
    enumerate_full_lattices,
    index_vector,
    is_full,
    is_transferral_free,
    k_vectors,
    lattice_from_generators,
    lattice_max,
    lattice_of_group,
    project,
)

from conftest import bounded_span, full_lattices_by_filter, lattice_by_rule, permute_lattice

PARITY = lattice_from_generators({(2, 1), (0, 3)}, 2, 3)


def test_k_vectors_count_and_order():
    vecs = list(k_vectors(3, 4))
    assert len(vecs) == 15
    assert vecs[0] == (4, 0, 0) and vecs[-1] == (0, 0, 4)
    assert all(sum(v) == 4 for v in vecs)


def test_index_vector_examples():
    P = ((1, 2), (3, 4, 5))
    assert index_vector(P, ()) == (0, 0)
    assert index_vector(P, (1, 2, 3)) == (2, 1)
    with pytest.raises(InvalidArgument):
        index_vector(P, (6,))
    h = gen_parity(3, 3, 6)
    A, B = (1, 2, 3), (4, 5, 6, 7, 8, 9)
    assert all(index_vector((A, B), e)[0] % 2 == 0 for e in h.edges)


def test_generator_validation():
    with pytest.raises(InvalidArgument):
        EdgeLattice(2, 3, [(1, 1)])
    with pytest.raises(InvalidArgument):
        EdgeLattice(2, 3, [(4, -1)])


def test_membership_examples():
    assert contains(PARITY, (2, 4))
    assert not contains(PARITY, (1, 2))
    assert contains(PARITY, (2, 1))
    assert contains(PARITY, (0, 0))
    zero = lattice_from_generators(set(), 2, 3)
    assert contains(zero, (0, 0)) and not contains(zero, (0, 3))
    lmax = lattice_max(2, 3)
    assert contains(lmax, (1, 2)) and contains(lmax, (3, 0))
    with pytest.raises(InvalidArgument):
        contains(PARITY, (1, 2, 3))


def test_edge_lattice_examples():
    h = gen_parity(3, 3, 6)
    L = edge_lattice(h, ((1, 2, 3), (4, 5, 6, 7, 8, 9)))
    assert set(L.generators) == {(0, 3), (2, 1)}
    k6 = Hypergraph.complete(6, 3)
    L = edge_lattice(k6, ((1, 2, 3), (4, 5, 6)))
    assert len(L.generators) == 4 and L == lattice_max(2, 3)
    assert edge_lattice(Hypergraph(6, 3), ((1, 2, 3), (4, 5, 6))).rank == 0


def test_transferral_and_fullness_examples():
    assert not is_transferral_free(lattice_from_generators({(2, 1), (1, 2)}, 2, 3))
    assert is_transferral_free(PARITY)
    assert not is_transferral_free(lattice_max(2, 3))
    assert is_full(PARITY)
    assert not is_full(lattice_max(2, 3))
    assert not is_full(lattice_from_generators({(3, 0)}, 2, 3))
    with pytest.raises(InvalidArgument):
        is_full(lattice_from_generators({(2, 0)}, 2, 2))


def test_project_examples():
    P = ((1,), (2,), (3,))
    assert project((1, 2, 0), P, P) == (1, 2, 0)
    assert project((1, 2, 0), P, ((1, 2), (3,))) == (3, 0)
    with pytest.raises(InvalidArgument):
        project((1, 1), ((1, 2), (3,)), ((1,), (2, 3)))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_project_is_linear(a, b):
    P, Q = ((1,), (2,), (3,)), ((1, 3), (2,))
    s = tuple(x + y for x, y in zip(a, b))
    pa, pb = project(a, P, Q), project(b, P, Q)
    assert project(s, P, Q) == tuple(x + y for x, y in zip(pa, pb))


def test_coset_group_examples():
    assert coset_group(PARITY).group.invariant_factors == (2,)
    assert coset_group(EdgeLattice(1, 5, [(5,)])).group.order == 1
    mod3 = lattice_by_rule(3, 4, lambda v: (v[0] - v[1]) % 3 == 0)
    assert coset_group(mod3).group.invariant_factors == (3,)
    with pytest.raises(InvalidArgument):
        coset_group(lattice_max(2, 3))


def test_residue_kernel_is_the_lattice():
    for L in enumerate_full_lattices(3, 4):
        cg = coset_group(L)
        for v in product(range(-4, 5), repeat=3):
            if sum(v) % 4 == 0:
                assert (cg.residue(v) == cg.group.zero) == contains(L, v)


def test_lattice_of_group_examples():
    assert lattice_of_group(cyclic(2), 0, 3) == lattice_by_rule(2, 3, lambda v: v[1] % 2 == 0)
    assert set(lattice_of_group(cyclic(2), 0, 3).generators) == {(3, 0), (1, 2)}
    assert lattice_of_group(AbelianGroup(()), (), 3) == EdgeLattice(1, 3, [(3,)])
    mod3 = lattice_by_rule(3, 4, lambda v: (v[0] - v[1]) % 3 == 0)
    # coordinates of L(Z3, 0) are labelled 0, 1, 2 and that lattice is i_1 = i_2 mod 3
    assert permute_lattice(lattice_of_group(cyclic(3), 0, 4), (1, 2, 0)) == mod3


def test_enumeration_examples():
    for k in (3, 4, 5, 6):
        assert enumerate_full_lattices(1, k) == [EdgeLattice(1, k, [(k,)])]
    two = enumerate_full_lattices(2, 3)
    assert set(two) == {
        lattice_by_rule(2, 3, lambda v: v[0] % 2 == 0),
        lattice_by_rule(2, 3, lambda v: v[1] % 2 == 0),
    }
    with pytest.raises(InvalidArgument):
        enumerate_full_lattices(3, 3)
    with pytest.raises(InvalidArgument):
        enumerate_full_lattices(1, 2)


@pytest.mark.parametrize("d,k,count", [
    (1, 3, 1), (2, 3, 2), (2, 4, 2), (3, 4, 3), (2, 5, 2), (3, 5, 3), (4, 5, 16), (4, 6, 16), (5, 6, 30),
])
def test_enumeration_counts(d, k, count):
    lattices = enumerate_full_lattices(d, k)
    assert len(lattices) == count
    assert lattices == sorted(lattices, key=EdgeLattice.sort_key)


@pytest.mark.parametrize("d,k", [(2, 3), (2, 4), (3, 4)])
def test_enumeration_matches_filter(d, k):
    assert set(full_lattices_by_filter(d, k)) == {L.basis for L in enumerate_full_lattices(d, k)}


def test_json_round_trip():
    for L in enumerate_full_lattices(3, 5):
        assert EdgeLattice.from_json(L.to_json()) == L
    with pytest.raises(InvalidArgument):
        EdgeLattice.from_json({"d": 2})


@st.composite
def generator_sets(draw):
    d = draw(st.integers(1, 3))
    k = draw(st.integers(1, 4))
    vecs = list(k_vectors(d, k))
    gens = draw(st.lists(st.sampled_from(vecs), unique=True, max_size=4))
    return d, k, gens


@settings(max_examples=40, deadline=None)
@given(generator_sets())
def test_hermite_idempotent(args):
    d, k, gens = args
    L = EdgeLattice(d, k, gens)
    assert _intmat.hermite_rows(L.basis, d) == L.basis
    assert EdgeLattice(d, k, gens[::-1]) == L


@settings(max_examples=25, deadline=None)
@given(generator_sets())
def test_membership_matches_bounded_search(args):
    d, k, gens = args
    L = EdgeLattice(d, k, gens)
    reach = bounded_span(gens, d)
    for v in product(range(-6, 7), repeat=d):
        assert contains(L, v) == (v in reach)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_coset_group_order_and_round_trip(k):
    for d in range(1, min(4, k - 1) + 1):
        for L in enumerate_full_lattices(d, k):
            cg = coset_group(L)
            assert cg.group.order == d
            assert lattice_of_group(cg.group, cg.g0, k, labels=cg.labels) == L
            assert EdgeLattice(d, k, L.k_vectors()) == L


@pytest.mark.parametrize("k", [3, 4, 5])
def test_lattice_of_group_is_full(k):
    for order in range(1, 6):
        for G in groups_of_order(order):
            for g0 in G.elements:
                assert is_full(lattice_of_group(G, g0, k))


def test_no_full_lattice_contains_another():
    for d, k in [(2, 3), (2, 4), (3, 4), (3, 5), (4, 5)]:
        lattices = enumerate_full_lattices(d, k)
        for a in lattices:
            for b in lattices:
                if a != b:
                    assert not all(contains(a, row) for row in b.basis)
