"""How the far-set budget C decides whether a certificate is found.

The general matchless construction for k=4 on 16 vertices hides its lattice
obstruction behind a core of k(k-2)-1 = 7 vertices whose internal edges break
the lattice rule.  Deleting 4 of them is enough to restore it, so a
certificate appears once C reaches 4 and not before.

    python demos/far_set_budget.py
"""

from hypermatch import find_certificate, verify_certificate
from hypermatch.construct import gen_general_nopm

h = gen_general_nopm(4)
print(f"graph: n={h.n}, {len(h.edges)} edges")
for C in range(6):
    cert = find_certificate(h, C=C)
    if cert is None:
        print(f"C={C}: no certificate")
    else:
        ok = verify_certificate(h, cert)
        print(f"C={C}: far set {cert.far_set}, {cert.partition.d} parts, verified={ok}")
