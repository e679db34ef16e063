"""Archimedean structure and the axiom battery.

Archimedean classes of related pairs correspond one-to-one to the faces of
the positive cone: ``(x, y)`` and ``(s, t)`` are in the same class exactly
when ``x - y`` and ``s - t`` have the same smallest face.  Classes are ordered
by importance, so a *smaller* face is a *greater* class.  The lineality space
is the greatest class (the indifferent pairs) and the whole cone the least.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import cone as cones
from . import linalg
from .cone import DEFAULT_FACE_BUDGET
from .mixture import embed_difference
from .preorder import DominancePair, PreorderedSpace


@dataclass(frozen=True)
class ArchStructure:
    """Archimedean classes as faces, with the covering relation of the class order.

    ``hasse`` holds ``(upper, lower)`` index pairs where class ``upper``
    covers class ``lower``: its face is a maximal proper subface of the
    other's.
    """

    preorder: PreorderedSpace = field(repr=False)
    classes: tuple
    hasse: tuple

    def geq(self, i: int, j: int) -> bool:
        """Class ``i`` is at least as important as class ``j``."""
        return self.classes[i] <= self.classes[j]

    @property
    def maximum(self) -> int:
        return max(range(len(self.classes)), key=lambda i: len(self.classes[i].active_set))

    @property
    def minimum(self) -> int:
        return min(range(len(self.classes)), key=lambda i: len(self.classes[i].active_set))

    def class_of(self, pair: DominancePair) -> int:
        face = cones.smallest_face(self.preorder.cone, embed_difference(pair.x, pair.y))
        return self.classes.index(face)

    def representative(self, i: int) -> DominancePair:
        """A related pair whose difference lies in the relative interior of class ``i``'s face."""
        face = self.classes[i]
        point = linalg.combine([1] * len(face.generators), face.generators, face.cone.dim)
        x, y = self.preorder.space.realize_difference(linalg.primitive(point))
        return DominancePair(x, y)

    def to_dict(self) -> dict:
        return {
            "classes": [
                {
                    "index": i,
                    "active_set": sorted(f.active_set),
                    "dimension": f.dimension,
                    "generators": [linalg.format_vector(g) for g in f.generators],
                }
                for i, f in enumerate(self.classes)
            ],
            "hasse": [list(e) for e in self.hasse],
            "maximum": self.maximum,
            "minimum": self.minimum,
        }

    def to_dot(self) -> str:
        lines = ["digraph archimedean {", "  rankdir=BT;"]
        for i, f in enumerate(self.classes):
            label = f"dim {f.dimension}"
            if i == self.maximum:
                label += ", indifference"
            lines.append(f'  c{i} [label="{i}: {label}"];')
        for upper, lower in self.hasse:
            lines.append(f"  c{lower} -> c{upper};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def arch_structure(p: PreorderedSpace, budget: int = DEFAULT_FACE_BUDGET) -> ArchStructure:
    faces = cones.enumerate_faces(p.cone, budget=budget)
    hasse = []
    for i, fi in enumerate(faces):
        for j, fj in enumerate(faces):
            # i covers j: face_i strictly inside face_j with nothing in between
            if fi < fj and not any(fi < fk < fj for fk in faces):
                hasse.append((i, j))
    return ArchStructure(p, tuple(faces), tuple(sorted(hasse)))


@dataclass(frozen=True)
class AxiomReport:
    si: bool
    mc: bool
    ar: bool
    sd: bool
    cd: bool
    sd_witness: Optional[DominancePair]
    ar_violation: Optional[tuple]
    cofinal_dim: int
    class_count: int

    def to_dict(self) -> dict:
        def pair(pr):
            return [linalg.format_vector(pr.x.coords), linalg.format_vector(pr.y.coords)]

        return {
            "si": self.si,
            "mc": self.mc,
            "ar": self.ar,
            "sd": self.sd,
            "cd": self.cd,
            "sd_witness": pair(self.sd_witness) if self.sd_witness else None,
            "ar_violation": [pair(q) for q in self.ar_violation] if self.ar_violation else None,
            "cofinal_dim": self.cofinal_dim,
            "class_count": self.class_count,
        }


def check_axioms(p: PreorderedSpace, budget: int = DEFAULT_FACE_BUDGET) -> AxiomReport:
    """Evaluate SI, MC, Ar, SD and CD for a cone-generated preorder.

    SI and MC hold for every preorder this engine can represent.  SD always
    holds in finite dimension, witnessed by a pair whose difference is a
    relative-interior point of the cone.  When Ar fails, the violation is two
    related pairs from distinct atoms of the face lattice, so neither weakly
    dominates the other.
    """
    arch = arch_structure(p, budget=budget)
    c = p.cone
    x, y = p.space.realize_difference(linalg.primitive(cones.relint_point(c)))
    witness = DominancePair(x, y)
    ar = len(arch.classes) <= 2
    violation = None
    if not ar:
        atom_dim = c.lineality_dim + 1
        atoms = [i for i, f in enumerate(arch.classes) if f.dimension == atom_dim]
        violation = (arch.representative(atoms[0]), arch.representative(atoms[1]))
    return AxiomReport(
        si=True,
        mc=True,
        ar=ar,
        sd=True,
        cd=True,
        sd_witness=witness,
        ar_violation=violation,
        cofinal_dim=c.span_dim,
        class_count=len(arch.classes),
    )
