"""Exhaustive checks of subsequence-sum facts over small abelian groups.

Sum sets do not depend on the order of a sequence, so sequences are
enumerated as multisets.
"""

from __future__ import annotations

from itertools import combinations, combinations_with_replacement, product
from math import prod

from hypermatch.abelian import (
    AbelianGroup,
    groups_of_order,
    is_minimal_sequence,
    is_union_of_cosets,
    key_subgroup,
    quotient,
    subgroup,
    subgroups,
    subsequence_sums,
)

SPOT_GROUPS = (AbelianGroup((2, 2)), AbelianGroup((8,)), AbelianGroup((2, 4)))


def groups_up_to(order):
    out = []
    for m in range(1, order + 1):
        out.extend(groups_of_order(m))
    return out


def suite_groups():
    seen = []
    for G in groups_up_to(6) + list(SPOT_GROUPS):
        if G not in seen:
            seen.append(G)
    return seen


def sequences(G, max_len):
    for length in range(max_len + 1):
        yield from combinations_with_replacement(G.elements, length)


def union_of_cosets_stated(G, a, x):
    """If adding x does not grow the sum set, the sum set is a union of <x>-cosets."""
    sums = subsequence_sums(G, a)
    if subsequence_sums(G, a + (x,)) != sums:
        return True
    return is_union_of_cosets(G, sums, subgroup(G, [x]).elements)


def monotone_stated(G, a, K, b):
    if not is_union_of_cosets(G, subsequence_sums(G, a), K.elements):
        return True
    return is_union_of_cosets(G, subsequence_sums(G, a + b), K.elements)


def minimal_sequence_stated(G, a, subs):
    if not is_minimal_sequence(G, a):
        return True
    return all(sum(1 for x in a if x in K) <= K.order - 1 for K in subs)


def key_subgroup_is_maximum(G, a, subs):
    sums = subsequence_sums(G, a)
    K = key_subgroup(G, a)
    good = [S for S in subs if is_union_of_cosets(G, sums, S.elements)]
    return K.elements in {S.elements for S in good} and all(S.elements <= K.elements for S in good)


def key_many_nonzero_stated(G, a):
    if G.order <= 1 or sum(1 for x in a if x != G.zero) < G.order - 1:
        return True
    return key_subgroup(G, a).order > 1


def key_quotient_trivial_stated(G, a):
    K = key_subgroup(G, a)
    Q, proj = quotient(G, K)
    return key_subgroup(Q, [proj(x) for x in a]).order == 1


def key_outside_count_stated(G, a):
    K = key_subgroup(G, a)
    index = G.order // K.order
    if index <= 1:
        return True
    return sum(1 for x in a if x not in K) <= index - 2


def pigeonhole_stated(G, a):
    """Any sequence has a subsequence of length <= |G|-1 with the same total."""
    total = G.sum(a)
    for size in range(min(len(a), G.order - 1) + 1):
        for idx in combinations(range(len(a)), size):
            if G.sum(a[i] for i in idx) == total:
                return True
    return False


def calc_f(x):
    t = len(x) - 1
    return (
        sum(prod(x[:j]) for j in range(1, t + 1))
        + sum(x)
        + sum(prod(x[j:]) for j in range(1, t + 1))
        - 4 * t
        - 2
    )


def calc_inequality_stated(x):
    return calc_f(x) <= 2 * (prod(x) - 2)


def run_group_suite(max_len=5, pigeon_order=5, pigeon_len=8):
    """Return a dict of check name -> number of cases; raise AssertionError on any failure."""
    counts = dict.fromkeys(
        ["union_of_cosets", "monotone", "minimal", "key_max", "key_i", "key_ii", "key_iii", "pigeonhole", "calc"], 0)
    for G in suite_groups():
        subs = subgroups(G)
        for a in sequences(G, max_len):
            for x in G.elements:
                assert union_of_cosets_stated(G, a, x), (G, a, x)
                counts["union_of_cosets"] += 1
            for K in subs:
                for b in sequences(G, 2):
                    assert monotone_stated(G, a, K, b), (G, a, K, b)
                    counts["monotone"] += 1
            assert minimal_sequence_stated(G, a, subs), (G, a)
            assert key_subgroup_is_maximum(G, a, subs), (G, a)
            assert key_many_nonzero_stated(G, a), (G, a)
            assert key_quotient_trivial_stated(G, a), (G, a)
            assert key_outside_count_stated(G, a), (G, a)
            for name in ("minimal", "key_max", "key_i", "key_ii", "key_iii"):
                counts[name] += 1
    for G in groups_up_to(pigeon_order):
        for a in sequences(G, pigeon_len):
            assert pigeonhole_stated(G, a), (G, a)
            counts["pigeonhole"] += 1
    for t in range(1, 4):
        for x in product(range(2, 7), repeat=t + 1):
            assert calc_inequality_stated(x), x
            counts["calc"] += 1
    return counts
