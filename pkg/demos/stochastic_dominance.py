"""Stochastic dominance on three ordered outcomes, end to end.

Builds the preorder from two elementary comparisons, compares lotteries with
certificates, recovers a utility set that represents it, and picks a single
strictly increasing utility.
"""

from fractions import Fraction

from mixcone import corpus, mix
from mixcone.linalg import format_vector
from mixcone.mixture import embed_difference, vertex_values
from mixcone.representation import strict_functional, synthesize, verify

def show(v):
    return "(" + ", ".join(format_vector(v)) + ")"


p = corpus.fosd(3)
m = p.space
d1, d2, d3 = (m.outcome(o) for o in m.outcomes)

# The best outcome beats the worst, and the certificate says how.
fwd = p.certify(d3, d1)
print("d3 >= d1:", fwd.holds)
for c, g in zip(fwd.coefficients, fwd.generators):
    print(f"  {c} x {show(g)}")

# A 50/50 mix of d1 and d3 has the same mean as d2 but neither dominates.
half = mix(d1, d3, Fraction(1, 2))
print("half >= d2:", p.geq(half, d2), " d2 >= half:", p.geq(d2, half))
back = p.certify(d2, half)
print("  separating functional:", show(back.witness), "on", show(embed_difference(d2, half)))

# Upper-set indicators are exactly the utilities every decision maker agrees on.
u_set = synthesize(p)
print("representation:", ", ".join(show(vertex_values(u)) for u in u_set), "verified:", verify(p, u_set).holds)

u = strict_functional(p)
print("strict utility on outcomes:", show(vertex_values(u)))
