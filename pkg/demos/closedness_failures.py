"""Three ways mixture continuity can fail or nearly fail.

The Klee truncations stay closed but need ever larger separating margins.
The lexicographic order is independent but not closed. Herstein's comparator
is closed in a weak sense while breaking independence.
"""

from fractions import Fraction

from mixcone import corpus
from mixcone.linalg import format_vector

def show(v):
    return "(" + ", ".join(format_vector(v)) + ")"


for n in range(1, 7):
    k = corpus.klee_truncation(n)
    cert = k.exclusion_certificate()
    margin = corpus.klee_separation_margin(k)
    print(f"klee n={n}: b0 excluded={not cert.holds} witness={show(cert.witness)} margin={margin}")

w = corpus.lex_mc_witness(3)
order = corpus.LexOrder(3)
print("lex: segment points in cone:", all(order.positive(s) for s in w.samples))
print("lex: endpoint", show(w.v), "in cone:", order.positive(w.v))

h = corpus.herstein_fixture()
pts, alpha = h.wcon_witness()
print("herstein: weights for", show(pts), "form", alpha)
x, y, z, a = h.si_violation()
print(f"herstein: {x} >= {y}? {h.geq(x, y)}; after mixing with {z} at {a}: {h.geq(h.mix(x, z, a), h.mix(y, z, a))}")
print("herstein: 1/1000 in set:", Fraction(1, 1000) in alpha, " 0 in set:", 0 in alpha)
