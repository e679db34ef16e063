"""How much more one comparison matters than another.

For the coordinatewise order on the plane there are four classes of strict
comparisons, one per subset of coordinates. The norm cone shows a preorder
with a single dominating comparison that still fails the Archimedean axiom.
"""

from mixcone import corpus
from mixcone.archimedean import arch_structure, check_axioms
from mixcone.linalg import format_vector
from mixcone.mixture import embed_difference
from mixcone.preorder import DominancePair

def show(v):
    return "(" + ", ".join(format_vector(v)) + ")"


p = corpus.pointwise_order(2)
m = p.space
arch = arch_structure(p)
for i, face in enumerate(arch.classes):
    print(f"class {i}: face dimension {face.dimension}, generators {', '.join(show(g) for g in face.generators) or 'none'}")
print(arch.to_dot())

# Improving both coordinates weakly dominates improving only the first.
both = DominancePair(m.point((1, 1)), m.point((0, 0)))
first = DominancePair(m.point((1, 0)), m.point((0, 0)))
verdict = p.dominance(both, first)
print("both dominates first:", verdict.holds, "alpha =", verdict.alpha)
print("first dominates both:", p.weak_dominates(first, both))

report = check_axioms(corpus.norm_cone_order(1))
print("norm cone: ar", report.ar, "sd", report.sd, "mc", report.mc)
print("  dominating difference:", show(embed_difference(*report.sd_witness)))
