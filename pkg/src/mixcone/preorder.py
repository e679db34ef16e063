"""Preorders on mixture spaces generated by finitely many comparisons.

The positive cone is the conic hull of the embedded differences ``x - y``
over the input comparisons ``x >= y``; every query reduces to membership in
that cone.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from . import cone as cones
from . import linalg
from .cone import Cone, Interval, Membership
from .mixture import MixtureSpace, MPoint, embed_difference


class DominancePair(NamedTuple):
    """A pair ``(x, y)`` with ``x >= y``."""

    x: MPoint
    y: MPoint


class DominanceVerdict(NamedTuple):
    """Outcome of a weak-dominance query.

    When ``holds``, mixing with weight ``alpha`` gives ``x alpha t >= y alpha s``.
    Otherwise ``witness`` is a cone inequality that vanishes on ``x - y`` but
    is positive on ``s - t``.
    """

    holds: bool
    alpha: Optional[Fraction] = None
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.holds


class PreorderedSpace:
    """A mixture space with the smallest mixture-continuous preorder containing ``comparisons``."""

    def __init__(self, space: MixtureSpace, comparisons: Sequence = (), *, lazy: bool = False):
        pairs = []
        for x, y in comparisons:
            x, y = _as_point(space, x), _as_point(space, y)
            pairs.append(DominancePair(x, y))
        self.space = space
        self.comparisons = tuple(pairs)
        self.cone: Cone = cones.from_generators(
            space.dimension, [embed_difference(x, y) for x, y in pairs], lazy=lazy
        )

    @classmethod
    def from_cone(cls, space: MixtureSpace, c: Cone) -> "PreorderedSpace":
        """The preorder with positive cone ``c``, with one comparison per canonical generator."""
        if c.dim != space.dimension:
            raise ValueError(f"cone has dim {c.dim}, space has dimension {space.dimension}")
        return cls(space, [space.realize_difference(g) for g in c.generators])

    def __repr__(self):
        return f"PreorderedSpace({self.space!r}, {len(self.comparisons)} comparisons)"

    def _check(self, *points: MPoint):
        for p in points:
            if not isinstance(p, MPoint) or p.space != self.space:
                raise ValueError("point does not belong to this preordered space")

    def certify(self, x: MPoint, y: MPoint) -> Membership:
        """Whether ``x >= y``, with a combination of generators or a separating functional."""
        self._check(x, y)
        return cones.member(self.cone, embed_difference(x, y))

    def geq(self, x: MPoint, y: MPoint) -> bool:
        self._check(x, y)
        return self.cone.contains(embed_difference(x, y))

    def strict(self, x: MPoint, y: MPoint) -> bool:
        return self.geq(x, y) and not self.geq(y, x)

    def indiff(self, x: MPoint, y: MPoint) -> bool:
        return self.geq(x, y) and self.geq(y, x)

    def comparison_interval(self, x: MPoint, y: MPoint, z: MPoint, w: MPoint) -> Optional[Interval]:
        """``{a in [0, 1] : x a y >= z a w}`` as a closed interval, or None when empty."""
        self._check(x, y, z, w)
        return cones.segment_cone_interval(self.cone, embed_difference(x, z), embed_difference(y, w))

    def dominance(self, first: DominancePair, second: DominancePair) -> DominanceVerdict:
        """Whether ``first = (x, y)`` weakly dominates ``second = (s, t)``.

        Holds exactly when ``s - t`` lies in the smallest face of the cone
        containing ``x - y``.
        """
        (x, y), (s, t) = first, second
        self._check(x, y, s, t)
        if not self.geq(x, y) or not self.geq(s, t):
            raise ValueError("weak dominance is only defined between related pairs")
        c = self.cone
        v = [linalg.vec(a) for a in (embed_difference(x, y), embed_difference(s, t))]
        dv, dw = v
        # the largest step lam <= 1 keeping dv - lam * dw in the cone
        lam = Fraction(1)
        for a in c.inequalities:
            av, aw = linalg.dot(a, dv), linalg.dot(a, dw)
            if aw > 0:
                if av == 0:
                    return DominanceVerdict(False, witness=a)
                lam = min(lam, av / aw)
        # x a t >= y a s  <=>  (x - y) - ((1 - a) / a)(s - t) in C
        return DominanceVerdict(True, alpha=1 / (1 + lam))

    def weak_dominates(self, first: DominancePair, second: DominancePair) -> bool:
        return self.dominance(first, second).holds


def _as_point(space: MixtureSpace, p) -> MPoint:
    if isinstance(p, MPoint):
        if p.space != space:
            raise ValueError("point belongs to a different mixture space")
        return p
    return space.point(p)


def build(space: MixtureSpace, comparisons: Sequence = (), *, lazy: bool = False) -> PreorderedSpace:
    return PreorderedSpace(space, comparisons, lazy=lazy)


def geq(p: PreorderedSpace, x: MPoint, y: MPoint) -> bool:
    return p.geq(x, y)


def strict(p: PreorderedSpace, x: MPoint, y: MPoint) -> bool:
    return p.strict(x, y)


def indiff(p: PreorderedSpace, x: MPoint, y: MPoint) -> bool:
    return p.indiff(x, y)


def comparison_interval(p: PreorderedSpace, x, y, z, w) -> Optional[Interval]:
    return p.comparison_interval(x, y, z, w)


def weak_dominates(p: PreorderedSpace, first: DominancePair, second: DominancePair) -> bool:
    return p.weak_dominates(first, second)
