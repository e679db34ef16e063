"""Parameterized fixtures: standard preorders, Klee truncations and comparator counterexamples.

The lexicographic and Herstein fixtures are comparators rather than
:class:`PreorderedSpace` instances.  Their positive sets are not closed, so
the cone machinery cannot represent them; they carry their own evaluation
and axiom checks instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Optional, Sequence

from . import cone as cones
from . import linalg
from .cone import BudgetExceeded, Cone, Membership
from .linalg import Q, RVector
from .mixture import MixtureSpace, MPoint
from .preorder import PreorderedSpace

KLEE_BUDGET = 8


# --------------------------------------------------------------------------
# preorders


def fosd(n: int = 3) -> PreorderedSpace:
    """First-order stochastic dominance over outcomes ``d1 < d2 < ... < dn``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    m = MixtureSpace.simplex(n)
    pts = [m.outcome(o) for o in m.outcomes]
    return PreorderedSpace(m, [(pts[i + 1], pts[i]) for i in range(n - 1)])


def pointwise_order(n: int) -> PreorderedSpace:
    """The componentwise order on ``n``-vectors, generated by ``e_i >= 0``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    m = MixtureSpace.vectorspace(n)
    zero = m.base_point
    return PreorderedSpace(m, [(m.point(linalg.unit(n, i)), zero) for i in range(n)])


def norm_cone_order(d: int) -> PreorderedSpace:
    """``(v, a) >= (w, b)`` iff ``|v - w|_1 <= a - b`` on ``(d + 1)``-vectors."""
    if d < 1:
        raise ValueError("d must be at least 1")
    m = MixtureSpace.vectorspace(d + 1)
    zero = m.base_point
    top = linalg.unit(d + 1, d)
    comps = []
    for i in range(d):
        for sign in (1, -1):
            comps.append((m.point(linalg.add(linalg.scale(sign, linalg.unit(d + 1, i)), top)), zero))
    return PreorderedSpace(m, comps)


FACTOR_KINDS = ("given", "indifference", "incomparability")


def product_order(
    p1: PreorderedSpace,
    p2_kind: str = "indifference",
    p3_kind: str = "incomparability",
    dims: Optional[Sequence[int]] = None,
) -> PreorderedSpace:
    """Product of ``p1`` with two more factors, each given, indifferent or incomparable.

    ``dims`` lists the three factor dimensions; a ``given`` factor repeats
    ``p1`` and must have its dimension.  Indifferent and incomparable
    factors are vector spaces of the stated dimension.
    """
    d1 = p1.space.dimension
    dims = tuple(dims) if dims is not None else (d1, 1, 1)
    if len(dims) != 3:
        raise ValueError("dims lists exactly three factor dimensions")
    if dims[0] != d1:
        raise ValueError(f"first factor has dimension {d1}, not {dims[0]}")
    factors = [p1]
    for kind, d in zip((p2_kind, p3_kind), dims[1:]):
        if kind not in FACTOR_KINDS:
            raise ValueError(f"unknown factor kind {kind!r}")
        if kind == "given":
            if d != d1:
                raise ValueError(f"a given factor has dimension {d1}, not {d}")
            factors.append(p1)
            continue
        v = MixtureSpace.vectorspace(d)
        c = cones.full_space(d) if kind == "indifference" else cones.zero_cone(d)
        factors.append(PreorderedSpace.from_cone(v, c))
    space = MixtureSpace.product(*(f.space for f in factors))
    bases = [f.space.base_point.coords for f in factors]
    comps = []
    for k, f in enumerate(factors):
        for x, y in f.comparisons:
            lift = lambda coords: space.point(
                tuple(a for j, b in enumerate(bases) for a in (coords if j == k else b))
            )
            comps.append((lift(x.coords), lift(y.coords)))
    return PreorderedSpace(space, comps)


# --------------------------------------------------------------------------
# Klee truncations


@dataclass(frozen=True)
class KleeTruncation:
    """The cone generated by ``y_S + b0`` over nonempty ``S`` in ``{0..n-1}``.

    Coordinates are the ``n`` basis elements followed by ``b0``, and
    ``y_S = |S|**-2 * sum_{b in S} b``.
    """

    n: int
    cone: Cone = field(repr=False)

    @property
    def dim(self) -> int:
        return self.n + 1

    @property
    def b0(self) -> RVector:
        return linalg.unit(self.n + 1, self.n)

    def exclusion_certificate(self) -> Membership:
        """Membership of ``b0``; expected to fail with a separating functional."""
        return cones.member(self.cone, self.b0)

    def restricted(self, subset: Sequence[int]) -> Cone:
        """The truncation's generators with support inside ``subset``."""
        return cones.from_generators(self.dim, klee_generators(self.n, subset), lazy=True)

    def coordinate_section(self, subset: Sequence[int]) -> Cone:
        """The cone cut down to ``Span(subset + b0)`` with halfspace arithmetic."""
        zero_coords = [linalg.unit(self.dim, i) for i in range(self.n) if i not in set(subset)]
        return cones.intersect(self.materialized, cones.from_halfspaces(self.dim, [], zero_coords))

    @property
    def materialized(self) -> Cone:
        c = self.cone
        c.inequalities  # force the double description
        return c


def klee_generators(n: int, subset: Optional[Sequence[int]] = None) -> list[RVector]:
    idx = list(range(n)) if subset is None else sorted(set(subset))
    out = []
    for r in range(1, len(idx) + 1):
        for s in combinations(idx, r):
            w = Fraction(1, r * r)
            v = [Fraction(0)] * (n + 1)
            for b in s:
                v[b] = w
            v[n] = Fraction(1)
            out.append(tuple(v))
    return out


def klee_truncation(n: int, budget: int = KLEE_BUDGET) -> KleeTruncation:
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > budget:
        raise BudgetExceeded(f"Klee truncation n={n} exceeds the budget {budget}")
    return KleeTruncation(n, cones.from_generators(n + 1, klee_generators(n), lazy=True))


def klee_separation_margin(k: KleeTruncation) -> Fraction:
    """``min max_b f(b)`` over functionals ``f >= 0`` on the cone with ``f(b0) = -1``.

    Both bounds are checked exactly.  The generator for the full index set
    gives ``sum_b f(b) / n**2 >= 1``, so ``max_b f(b) >= n``.  The constant
    functional ``f(b) = n`` meets every generator constraint and attains it.
    """
    n = k.n
    gens = klee_generators(n)
    full = gens[-1]
    # lower bound from the single constraint of the full index set
    lower = (1 / full[0]) / n
    f = tuple(Fraction(n) for _ in range(n)) + (Fraction(-1),)
    if any(linalg.dot(f, g) < 0 for g in gens):
        raise ArithmeticError("the constant functional is not separating")
    upper = max(f[:n])
    if lower != upper:
        raise ArithmeticError(f"bounds disagree: {lower} < {upper}")
    return upper


# --------------------------------------------------------------------------
# lexicographic order


@dataclass(frozen=True)
class LexOrder:
    """Lexicographic order on ``n``-vectors: the first nonzero entry of ``f - g`` is positive."""

    n: int

    def positive(self, v: Sequence) -> bool:
        v = linalg.vec(v)
        if len(v) != self.n:
            raise ValueError(f"expected {self.n} coordinates")
        return next((a > 0 for a in v if a != 0), True)

    def geq(self, f: Sequence, g: Sequence) -> bool:
        return self.positive(linalg.sub(linalg.vec(f), linalg.vec(g)))

    def si_holds(self, f, g, h, alpha) -> bool:
        """Independence at one instance: ``f >= g`` iff ``f a h >= g a h`` for ``0 < a <= 1``."""
        alpha = Q(alpha)
        mixf = linalg.add(linalg.scale(alpha, linalg.vec(f)), linalg.scale(1 - alpha, linalg.vec(h)))
        mixg = linalg.add(linalg.scale(alpha, linalg.vec(g)), linalg.scale(1 - alpha, linalg.vec(h)))
        return self.geq(f, g) == self.geq(mixf, mixg)


class LexMCWitness(NamedTuple):
    """A half-open segment ``(v, w]`` inside the positive set whose endpoint ``v`` is outside."""

    v: RVector
    w: RVector
    samples: tuple
    verdict: str


def lex_mc_witness(n: int, samples: int = 16) -> LexMCWitness:
    """Certify that the lexicographic positive set is not algebraically closed."""
    if n < 2:
        raise ValueError("the lexicographic order on one coordinate is mixture continuous")
    order = LexOrder(n)
    v = (Fraction(0), Fraction(-1)) + linalg.zeros(n - 2)
    w = (Fraction(1), Fraction(-1)) + linalg.zeros(n - 2)
    ts = tuple(Fraction(1, 2**k) for k in range(samples)) + tuple(Fraction(k, samples) for k in range(1, samples + 1))
    pts = tuple(linalg.add(v, linalg.scale(t, linalg.sub(w, v))) for t in sorted(set(ts)))
    closed = not all(order.positive(p) for p in pts) or order.positive(v)
    verdict = "algebraically closed" if closed else "not algebraically closed"
    return LexMCWitness(v, w, pts, verdict)


# --------------------------------------------------------------------------
# Herstein comparator on [0, 1]


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    def __contains__(self, a) -> bool:
        a = Q(a)
        above = a > self.lo or (self.lo_closed and a == self.lo)
        below = a < self.hi or (self.hi_closed and a == self.hi)
        return above and below

    @property
    def closed(self) -> bool:
        return self.lo_closed and self.hi_closed

    def __str__(self):
        lo = linalg.format_rational(self.lo)
        hi = linalg.format_rational(self.hi)
        if self.lo == self.hi:
            return "{" + lo + "}"
        return ("[" if self.lo_closed else "(") + f"{lo},{hi}" + ("]" if self.hi_closed else ")")


@dataclass(frozen=True)
class IntervalSet:
    """A finite union of disjoint, sorted rational intervals."""

    parts: tuple = ()

    def __contains__(self, a) -> bool:
        return any(a in p for p in self.parts)

    @property
    def closed(self) -> bool:
        return all(p.closed for p in self.parts)

    def __str__(self):
        return " u ".join(map(str, self.parts)) if self.parts else "{}"


def _affine_below_one(c0: Fraction, slope: Fraction) -> Optional[RationalInterval]:
    """``{a in [0, 1] : c0 + slope * a < 1}``."""
    if slope == 0:
        return RationalInterval(Fraction(0), Fraction(1)) if c0 < 1 else None
    root = (1 - c0) / slope
    if slope > 0:  # a < root
        if root <= 0:
            return None
        return RationalInterval(Fraction(0), min(root, Fraction(1)), True, root > 1)
    if root >= 1:
        return None
    return RationalInterval(max(root, Fraction(0)), Fraction(1), root < 0, True)


def _affine_equals_one(c0: Fraction, slope: Fraction) -> Optional[RationalInterval]:
    if slope == 0:
        return RationalInterval(Fraction(0), Fraction(1)) if c0 == 1 else None
    root = (1 - c0) / slope
    return RationalInterval(root, root) if 0 <= root <= 1 else None


def _union(a: Optional[RationalInterval], b: Optional[RationalInterval]) -> IntervalSet:
    parts = sorted((p for p in (a, b) if p is not None), key=lambda p: (p.lo, not p.lo_closed))
    merged: list[RationalInterval] = []
    for p in parts:
        if merged:
            q = merged[-1]
            touches = p.lo < q.hi or (p.lo == q.hi and (q.hi_closed or p.lo_closed))
            if touches:
                if p.hi > q.hi or (p.hi == q.hi and p.hi_closed):
                    hi, hi_closed = p.hi, p.hi_closed or (p.hi == q.hi and q.hi_closed)
                else:
                    hi, hi_closed = q.hi, q.hi_closed
                lo_closed = q.lo_closed or (p.lo == q.lo and p.lo_closed)
                merged[-1] = RationalInterval(q.lo, hi, lo_closed, hi_closed)
                continue
        merged.append(p)
    return IntervalSet(tuple(merged))


@dataclass(frozen=True)
class HersteinFixture:
    """On ``[0, 1]``: ``1`` is strictly best and all points below ``1`` are indifferent."""

    @staticmethod
    def geq(x, y) -> bool:
        return Q(x) == 1 or Q(y) < 1

    def indiff(self, x, y) -> bool:
        return self.geq(x, y) and self.geq(y, x)

    @staticmethod
    def mix(x, y, alpha) -> Fraction:
        alpha = Q(alpha)
        return alpha * Q(x) + (1 - alpha) * Q(y)

    def alpha_set(self, x, y, z, w) -> IntervalSet:
        """``{a in [0, 1] : x a y >= z a w}`` with exact open and closed ends."""
        x, y, z, w = map(Q, (x, y, z, w))
        # x a y = y + a (x - y) equals one, or z a w = w + a (z - w) is below one
        return _union(_affine_equals_one(y, x - y), _affine_below_one(w, z - w))

    def independence_holds(self, x, y, z, alpha=Fraction(1, 2)) -> bool:
        """Indifference is preserved by mixing: ``x ~ y`` implies ``x a z ~ y a z``."""
        if not self.indiff(x, y):
            return True
        return self.indiff(self.mix(x, z, alpha), self.mix(y, z, alpha))

    def si_violation(self) -> tuple:
        """``(x, y, z, alpha)`` where mixing with ``z`` creates a preference ``x >= y`` lacks."""
        x, y, z, alpha = Fraction(0), Fraction(1), Fraction(0), Fraction(1, 2)
        assert not self.geq(x, y) and self.geq(self.mix(x, z, alpha), self.mix(y, z, alpha))
        return x, y, z, alpha

    def wcon_witness(self) -> tuple:
        """Points ``x = y = z = 0``, ``w = 1`` and their non-closed alpha set."""
        pts = (Fraction(0), Fraction(0), Fraction(0), Fraction(1))
        return pts, self.alpha_set(*pts)


def herstein_fixture() -> HersteinFixture:
    return HersteinFixture()


FIXTURES = {
    "fosd": fosd,
    "pointwise": pointwise_order,
    "norm-cone": norm_cone_order,
}
