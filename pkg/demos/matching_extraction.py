"""Watch the removal loop build a perfect matching one edge at a time.

Each step removes an edge whose deletion keeps a perfect matching alive and
keeps two deficiency potentials small; the last few vertices are matched by
exhaustive search.  At this size the second potential bound only admits
graphs with chi1 = 0, so every step prints zero potentials; graphs with a
few deficient pairs fall back to exhaustive search instead.

    python demos/matching_extraction.py
"""

from fractions import Fraction

from hypermatch import find_pm, is_perfect_matching
from hypermatch.construct import gen_random_dense

gamma, eps = Fraction(1, 10), Fraction(1, 10**4)
h = gen_random_dense(3, 15, 10, seed=2)
print(f"graph: n={h.n}, {len(h.edges)} edges")

decision = find_pm(h, gamma, eps)
for event in decision.trace:
    if event["event"] == "remove":
        print(f"  n={event['n']:>2} case {event['case']} removes {tuple(event['edge'])}"
              f"  chi1={event['chi1']} chi2={event['chi2']}")
    else:
        print(f"  {event['event']} at n={event['n']}")
print("matching:", decision.matching)
print("perfect:", is_perfect_matching(h, decision.matching))
