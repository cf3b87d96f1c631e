"""Find a certificate that a dense 3-graph has no perfect matching, then check it.

The graph keeps every 3-set meeting a fixed odd set A in an even number of
vertices.  Every edge then covers an even number of vertices of A, so no
family of disjoint edges can cover all of A.  The certificate search
rediscovers A and the lattice behind this argument.

    python demos/certificate_walkthrough.py
"""

from hypermatch import decide_pm, gen_parity, verify_certificate
from hypermatch.io import certificate_to_text
from hypermatch.lattice import coset_group

h = gen_parity(3, 3, 6)
print(f"graph: n={h.n}, k={h.k}, {len(h.edges)} edges")

decision = decide_pm(h)
print(f"decision: {decision.outcome} (mode {decision.mode})")

cert = decision.certificate
print("partition:", cert.partition.parts)
print("lattice basis:", cert.lattice.basis)
print("far set:", cert.far_set)
print("coset group invariant factors:", coset_group(cert.lattice).group.invariant_factors)
print("independent check:", "valid" if verify_certificate(h, cert) else "invalid")
print("JSON form:", certificate_to_text(cert).strip())
