"""Polyhedral convex cones in double description.

The canonical forms are:

* V-representation: a canonical basis of the lineality space plus the extreme
  rays of the pointed part, each ray projected onto the orthogonal complement
  of the lineality space and scaled to a primitive integer vector;
* H-representation: a canonical basis of the orthogonal complement of the
  span (``equalities``) plus the facet normals projected onto the span
  (``inequalities``).

The H-representation of a cone is the V-representation of its dual, so
:func:`dual` is a field swap.  Two cones are equal as sets exactly when their
canonical generator lists coincide.

One double description pass produces one side; the other side is read off
combinatorially from the tight-constraint incidences.  The pass itself runs
on Python integers.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Optional, Sequence

from . import linalg, lp
from .linalg import RVector

DEFAULT_FACE_BUDGET = 10_000

IntVec = tuple  # tuple[int, ...]


class BudgetExceeded(RuntimeError):
    """Raised when a computation would exceed its configured size budget."""


class FaceBudgetExceeded(BudgetExceeded):
    """Raised when face enumeration exceeds its configured budget."""


# --------------------------------------------------------------------------
# integer double description


def _idot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _reduce(v) -> IntVec:
    return linalg.primitive(v)


def _double_description(dim: int, constraints: Sequence[IntVec]):
    """Solve ``{x : a.x >= 0 for a in constraints}``.

    Returns ``(lineality, rays)``: integer bases of the lineality space and
    the extreme rays modulo lineality (not yet projected).
    """
    cons = sorted({c for c in constraints if any(c)})
    lin = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list[tuple[IntVec, int]] = []  # (ray, bitmask of tight constraints)
    for k, a in enumerate(cons):
        bit = 1 << k
        vals = [_idot(a, l) for l in lin]
        j = next((i for i, v in enumerate(vals) if v != 0), None)
        if j is not None:
            l0, s = lin[j], vals[j]
            if s < 0:
                l0, s = tuple(-x for x in l0), -s
            new_lin = []
            for i, l in enumerate(lin):
                if i == j:
                    continue
                v = vals[i]
                if v:
                    l = _reduce([s * x - v * y for x, y in zip(l, l0)])
                new_lin.append(l)
            new_rays = []
            for r, z in rays:
                v = _idot(a, r)
                if v:
                    r = _reduce([s * x - v * y for x, y in zip(r, l0)])
                new_rays.append((r, z | bit))
            new_rays.append((l0, bit - 1))
            lin, rays = new_lin, new_rays
            continue

        pos, zer, neg = [], [], []
        for r, z in rays:
            v = _idot(a, r)
            (pos if v > 0 else neg if v < 0 else zer).append((r, z, v))
        new = [(r, z) for r, z, _ in pos] + [(r, z | bit) for r, z, _ in zer]
        if pos and neg:
            needed = dim - len(lin) - 2
            everything = [z for _, z in rays]
            for rp, zp, vp in pos:
                for rn, zn, vn in neg:
                    common = zp & zn
                    if common.bit_count() < needed:
                        continue
                    # adjacent iff no third ray is tight on every common constraint
                    hits = 0
                    for z in everything:
                        if z & common == common:
                            hits += 1
                            if hits > 2:
                                break
                    if hits > 2:
                        continue
                    r = _reduce([vp * x - vn * y for x, y in zip(rn, rp)])
                    new.append((r, common | bit))
        rays = new
    return lin, [r for r, _ in rays]


class _Projector:
    """Orthogonal projection onto the complement of a subspace."""

    def __init__(self, basis: Sequence[IntVec]):
        self.basis = [linalg.vec(b) for b in basis]
        if self.basis:
            gram = [[linalg.dot(u, v) for v in self.basis] for u in self.basis]
            self.gram_inv = linalg.inverse(gram)

    def __call__(self, v) -> RVector:
        v = linalg.vec(v)
        if not self.basis:
            return v
        rhs = [linalg.dot(b, v) for b in self.basis]
        coeffs = linalg.matvec(self.gram_inv, rhs)
        return linalg.sub(v, linalg.combine(coeffs, self.basis, len(v)))


def _canonicalize(dim: int, raw: Sequence[IntVec], dual_lin: Sequence[IntVec], dual_rays: Sequence[IntVec]):
    """Canonical ``(lineality, rays)`` of ``cone(raw)`` given the canonical dual.

    The lineality space is spanned by the generators tight on every facet; a
    projected generator is extreme unless another one is tight on a superset
    of its facets.
    """
    lin_gens = [g for g in raw if all(_idot(a, g) == 0 for a in dual_rays)]
    lin_basis = linalg.subspace_basis(lin_gens, dim)
    proj = _Projector(lin_basis)
    cand = sorted({linalg.primitive(proj(g)) for g in raw} - {(0,) * dim})
    masks = []
    for g in cand:
        m = 0
        for i, a in enumerate(dual_rays):
            if _idot(a, g) == 0:
                m |= 1 << i
        masks.append(m)
    rays = tuple(
        g for i, g in enumerate(cand) if not any(j != i and mj & masks[i] == masks[i] for j, mj in enumerate(masks))
    )
    return tuple(lin_basis), rays


def _dd_canonical(dim: int, constraints: Sequence[IntVec]):
    """Canonical V-representation of ``{x : a.x >= 0}`` via double description."""
    lin, rays = _double_description(dim, constraints)
    lin_basis = linalg.subspace_basis(lin, dim)
    proj = _Projector(lin_basis)
    canon = sorted({linalg.primitive(proj(r)) for r in rays} - {(0,) * dim})
    return tuple(lin_basis), tuple(canon)


def _as_int_vectors(dim: int, vectors) -> list[IntVec]:
    out = []
    for v in vectors:
        if len(v) != dim:
            raise ValueError(f"dimension mismatch: expected {dim}, got {len(v)}")
        out.append(linalg.primitive(v))
    return out


def _with_negatives(vectors) -> list[IntVec]:
    return [x for v in vectors for x in (tuple(v), tuple(-a for a in v))]


# --------------------------------------------------------------------------
# cones


class Membership(NamedTuple):
    """Outcome of a membership query together with its certificate.

    When ``holds`` is true, ``coefficients`` are nonnegative weights on
    ``generators`` summing to the query vector.  Otherwise ``witness`` is a
    functional that is nonnegative on the cone and negative on the vector.
    """

    holds: bool
    coefficients: Optional[RVector] = None
    generators: Optional[tuple] = None
    witness: Optional[IntVec] = None

    def __bool__(self):
        return self.holds


class Interval(NamedTuple):
    """A closed rational interval ``[lo, hi]``."""

    lo: Fraction
    hi: Fraction

    def __contains__(self, x):
        return self.lo <= x <= self.hi


class Cone:
    """A polyhedral cone in ``dim`` coordinates.

    Build cones with :func:`from_generators` or :func:`from_halfspaces`.  A
    cone built with ``lazy=True`` keeps only its input generators until an
    operation needs the double description; membership queries on such a cone
    are answered by exact linear programming instead.
    """

    def __init__(self, dim: int, *, raw=None, vrep=None, hrep=None):
        self.dim = dim
        self._raw = raw
        self._vrep = vrep  # (lineality, rays)
        self._hrep = hrep  # (equalities, inequalities)
        self._lock = threading.RLock()

    def _materialize(self):
        with self._lock:
            if self._hrep is None:
                self._hrep = _dd_canonical(self.dim, self._raw)
            if self._vrep is None:
                self._vrep = _canonicalize(self.dim, self._raw, *self._hrep)

    @property
    def rep_state(self) -> frozenset:
        state = set()
        if self._raw is not None or self._vrep is not None:
            state.add("generators")
        if self._vrep is not None:
            state.add("canonical_generators")
        if self._hrep is not None:
            state.add("halfspaces")
        return frozenset(state)

    @property
    def lineality(self) -> tuple:
        """Canonical basis of the lineality space."""
        if self._vrep is None:
            self._materialize()
        return self._vrep[0]

    @property
    def rays(self) -> tuple:
        """Extreme rays modulo lineality, projected onto its orthogonal complement."""
        if self._vrep is None:
            self._materialize()
        return self._vrep[1]

    @property
    def equalities(self) -> tuple:
        if self._hrep is None:
            self._materialize()
        return self._hrep[0]

    @property
    def inequalities(self) -> tuple:
        if self._hrep is None:
            self._materialize()
        return self._hrep[1]

    @cached_property
    def generators(self) -> tuple:
        """Canonical generator list: extreme rays and both signs of the lineality basis."""
        return tuple(sorted(set(self.rays) | set(_with_negatives(self.lineality))))

    @property
    def raw_generators(self) -> tuple:
        """Generators as supplied (primitive, deduplicated); canonical ones if none were given."""
        if self._raw is not None:
            return tuple(self._raw)
        return self.generators

    @cached_property
    def _q_inequalities(self):
        return [linalg.vec(a) for a in self.inequalities]

    @property
    def span_dim(self) -> int:
        return self.dim - len(self.equalities)

    @property
    def lineality_dim(self) -> int:
        return len(self.lineality)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def is_zero(self) -> bool:
        return not self.rays and not self.lineality

    @property
    def is_full_space(self) -> bool:
        return len(self.lineality) == self.dim

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.dim:
            raise ValueError(f"dimension mismatch: cone has dim {self.dim}, vector {len(v)}")
        if self._hrep is None:
            return member(self, v).holds
        return all(_idot(e, v) == 0 for e in self.equalities) and all(
            _idot(a, v) >= 0 for a in self.inequalities
        )

    def __contains__(self, v):
        return self.contains(v)

    def __repr__(self):
        gens = self.generators if self._vrep is not None else self.raw_generators
        return f"Cone(dim={self.dim}, generators={[list(g) for g in gens]})"

    def to_halfspaces(self) -> tuple[tuple, tuple]:
        return self.inequalities, self.equalities


def from_generators(dim: int, rays: Sequence[Sequence], lazy: bool = False) -> Cone:
    """Conic hull of ``rays``; an empty list gives the zero cone."""
    gens = sorted(set(_as_int_vectors(dim, rays)) - {(0,) * dim})
    c = Cone(dim, raw=tuple(gens))
    if not lazy:
        c._materialize()
    return c


def from_halfspaces(dim: int, inequalities: Sequence[Sequence], equalities: Sequence[Sequence] = ()) -> Cone:
    """The cone ``{x : a.x >= 0, e.x == 0}``."""
    cons = _as_int_vectors(dim, inequalities) + _with_negatives(_as_int_vectors(dim, equalities))
    cons = sorted(set(cons) - {(0,) * dim})
    vrep = _dd_canonical(dim, cons)
    hrep = _canonicalize(dim, cons, *vrep)
    return Cone(dim, vrep=vrep, hrep=hrep)


def zero_cone(dim: int) -> Cone:
    return from_generators(dim, [])


def full_space(dim: int) -> Cone:
    return from_halfspaces(dim, [])


def to_halfspaces(c: Cone) -> tuple[tuple, tuple]:
    """``(inequalities, equalities)`` of the canonical H-representation."""
    return c.inequalities, c.equalities


def dual(c: Cone) -> Cone:
    """The dual cone ``{a : a.x >= 0 for all x in c}``."""
    return Cone(c.dim, vrep=(c.equalities, c.inequalities), hrep=(c.lineality, c.rays))


def intersect(a: Cone, b: Cone) -> Cone:
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    return from_halfspaces(a.dim, a.inequalities + b.inequalities, a.equalities + b.equalities)


def cone_equal(a: Cone, b: Cone) -> bool:
    """Set equality, decided by mutual membership of generators."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} != {b.dim}")
    return all(b.contains(g) for g in a.raw_generators) and all(a.contains(g) for g in b.raw_generators)


def member(c: Cone, v: Sequence) -> Membership:
    """Membership of ``v`` with a certificate either way."""
    v = linalg.vec(v)
    if len(v) != c.dim:
        raise ValueError(f"dimension mismatch: cone has dim {c.dim}, vector {len(v)}")
    if c._hrep is None:
        gens = c.raw_generators
        res = lp.conic_feasibility(gens, v)
        if res.feasible:
            return Membership(True, res.coefficients, gens)
        return Membership(False, witness=linalg.primitive(res.farkas))
    for e in c.equalities:
        s = _idot(e, v)
        if s != 0:
            return Membership(False, witness=e if s < 0 else tuple(-x for x in e))
    for a in c.inequalities:
        if _idot(a, v) < 0:
            return Membership(False, witness=a)
    return Membership(True, _combination(c, v), c.generators)


def _combination(c: Cone, v: RVector) -> RVector:
    gens = c.generators
    index = {g: i for i, g in enumerate(gens)}
    coeffs = [Fraction(0)] * len(gens)
    ineqs = c._q_inequalities
    w = v
    while True:
        vals = [linalg.dot(a, w) for a in ineqs]
        if all(x == 0 for x in vals):
            break
        active = [i for i, x in enumerate(vals) if x == 0]
        g = next(r for r in c.rays if all(_idot(c.inequalities[i], r) == 0 for i in active))
        t = min(vals[i] / _idot(a, g) for i, a in enumerate(c.inequalities) if _idot(a, g) > 0)
        coeffs[index[g]] += t
        w = linalg.sub(w, linalg.scale(t, g))
    if not linalg.is_zero(w):
        lin = [linalg.vec(l) for l in c.lineality]
        x = linalg.solve(linalg.transpose(lin), w)
        for l, xi in zip(c.lineality, x):
            if xi > 0:
                coeffs[index[l]] += xi
            elif xi < 0:
                coeffs[index[tuple(-a for a in l)]] += -xi
    return tuple(coeffs)


def check_certificate(c_dim: int, v: Sequence, cert: Membership, cone: Optional[Cone] = None) -> bool:
    """Re-validate a membership certificate by plain arithmetic.

    A positive certificate must reproduce ``v``; a negative one must be a
    functional negative on ``v`` and (when ``cone`` is given) nonnegative on
    every generator of the cone.
    """
    v = linalg.vec(v)
    if cert.holds:
        if any(x < 0 for x in cert.coefficients):
            return False
        return linalg.combine(cert.coefficients, cert.generators, c_dim) == v
    if _idot(cert.witness, v) >= 0:
        return False
    if cone is not None:
        return all(_idot(cert.witness, g) >= 0 for g in cone.raw_generators)
    return True


# --------------------------------------------------------------------------
# faces


@dataclass(frozen=True, eq=False)
class Face:
    """A face of ``cone``: the points where the inequalities in ``active_set`` are tight."""

    cone: Cone
    active_set: frozenset
    generator_indices: tuple = field(repr=False)

    @cached_property
    def face_cone(self) -> Cone:
        return from_generators(self.cone.dim, [self.cone.generators[i] for i in self.generator_indices])

    @property
    def generators(self) -> list:
        return [self.cone.generators[i] for i in self.generator_indices]

    @cached_property
    def dimension(self) -> int:
        return linalg.rank(self.generators) if self.generator_indices else 0

    def contains(self, v: Sequence) -> bool:
        return self.cone.contains(v) and all(_idot(self.cone.inequalities[i], v) == 0 for i in self.active_set)

    def __le__(self, other: "Face") -> bool:
        return self.active_set >= other.active_set

    def __lt__(self, other: "Face") -> bool:
        return self.active_set > other.active_set

    def __eq__(self, other):
        return isinstance(other, Face) and self.cone is other.cone and self.active_set == other.active_set

    def __hash__(self):
        return hash((id(self.cone), self.active_set))


def _tight_masks(c: Cone) -> list[int]:
    masks = []
    for g in c.generators:
        m = 0
        for i, a in enumerate(c.inequalities):
            if _idot(a, g) == 0:
                m |= 1 << i
        masks.append(m)
    return masks


def _face_from_mask(c: Cone, mask: int, masks: list[int]) -> Face:
    active = frozenset(i for i in range(len(c.inequalities)) if mask >> i & 1)
    idx = tuple(j for j, m in enumerate(masks) if m & mask == mask)
    return Face(c, active, idx)


def smallest_face(c: Cone, v: Sequence) -> Face:
    """The smallest face containing ``v``; ``v`` lies in its relative interior."""
    if not c.contains(v):
        raise ValueError("vector is not in the cone")
    mask = 0
    for i, a in enumerate(c.inequalities):
        if _idot(a, v) == 0:
            mask |= 1 << i
    return _face_from_mask(c, mask, _tight_masks(c))


def enumerate_faces(c: Cone, budget: int = DEFAULT_FACE_BUDGET) -> list[Face]:
    """All nonempty faces, from the cone itself down to its lineality space."""
    masks = _tight_masks(c)
    full = (1 << len(c.inequalities)) - 1

    def closure(s: int) -> int:
        out = full
        for m in masks:
            if m & s == s:
                out &= m
        return out

    start = closure(0)
    seen = {start}
    queue = [start]
    while queue:
        s = queue.pop()
        for i in range(len(c.inequalities)):
            if s >> i & 1:
                continue
            t = closure(s | 1 << i)
            if t not in seen:
                seen.add(t)
                if len(seen) > budget:
                    raise FaceBudgetExceeded(f"more than {budget} faces")
                queue.append(t)
    faces = [_face_from_mask(c, s, masks) for s in seen]
    faces.sort(key=lambda f: (len(f.active_set), sorted(f.active_set)))
    return faces


def relint_point(c: Cone) -> RVector:
    """Sum of the canonical generators, a point of the relative interior."""
    return linalg.combine([1] * len(c.generators), c.generators, c.dim)


def segment_cone_interval(c: Cone, p: Sequence, q: Sequence) -> Optional[Interval]:
    """``{a in [0, 1] : a p + (1 - a) q in c}`` as a closed interval, or None if empty."""
    if len(p) != c.dim or len(q) != c.dim:
        raise ValueError("dimension mismatch")
    lo, hi = Fraction(0), Fraction(1)
    # a.(alpha p + (1-alpha) q) = alpha (a.p - a.q) + a.q
    for a in c.equalities:
        slope = _idot(a, p) - _idot(a, q)
        const = _idot(a, q)
        if slope == 0:
            if const != 0:
                return None
        else:
            root = Fraction(-const) / slope
            lo, hi = max(lo, root), min(hi, root)
    for a in c.inequalities:
        slope = _idot(a, p) - _idot(a, q)
        const = _idot(a, q)
        if slope == 0:
            if const < 0:
                return None
        elif slope > 0:
            lo = max(lo, Fraction(-const) / slope)
        else:
            hi = min(hi, Fraction(-const) / slope)
    if lo > hi:
        return None
    return Interval(lo, hi)
