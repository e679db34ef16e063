"""Multi-representations: synthesis, verification, minimization, strictness, uniqueness.

A finite set of mixture-preserving functionals represents the preorder when
its linear parts generate the dual of the positive cone.  All decisions here
reduce to cone equality or cone membership.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence
from weakref import WeakKeyDictionary

from . import cone as cones
from . import linalg
from .mixture import AffineFunctional, MixtureSpace, MPoint, functional_from_values
from .preorder import DominancePair, PreorderedSpace


@dataclass(frozen=True)
class MultiRep:
    """A nonempty set of affine functionals on a common mixture space."""

    functionals: tuple

    def __post_init__(self):
        fs = tuple(self.functionals)
        if not fs:
            raise ValueError("a multi-representation must be nonempty")
        if any(f.space != fs[0].space for f in fs):
            raise ValueError("functionals live on different mixture spaces")
        object.__setattr__(self, "functionals", fs)

    @property
    def space(self) -> MixtureSpace:
        return self.functionals[0].space

    def __len__(self):
        return len(self.functionals)

    def __iter__(self):
        return iter(self.functionals)

    def unanimous(self, x: MPoint, y: MPoint) -> bool:
        """Every functional weakly prefers ``x`` to ``y``."""
        return all(u.difference(x, y) >= 0 for u in self.functionals)


class VerifyResult(NamedTuple):
    """Outcome of :func:`verify`.

    On failure ``kind`` is ``"violated"`` when ``pair`` is related but
    functional ``functional`` ranks it the wrong way, or ``"unrepresented"``
    when every functional ranks ``pair`` weakly upward although it is not
    related.
    """

    holds: bool
    kind: Optional[str] = None
    pair: Optional[DominancePair] = None
    functional: Optional[int] = None

    def __bool__(self):
        return self.holds


_synth_cache: "WeakKeyDictionary[PreorderedSpace, MultiRep]" = WeakKeyDictionary()
_synth_lock = threading.Lock()


def synthesize(p: PreorderedSpace) -> MultiRep:
    """Extreme rays of the dual cone, plus both signs of its lineality basis.

    The full-space cone (complete indifference) gets the constant zero.
    """
    with _synth_lock:
        cached = _synth_cache.get(p)
    if cached is not None:
        return cached
    c = p.cone
    linear = list(c.inequalities)
    for e in c.equalities:
        linear.append(e)
        linear.append(tuple(-a for a in e))
    if not linear:
        linear = [linalg.zeros(c.dim)]
    rep = MultiRep(tuple(AffineFunctional(p.space, l, 0) for l in linear))
    with _synth_lock:
        return _synth_cache.setdefault(p, rep)


def _check_space(p: PreorderedSpace, u_set: MultiRep):
    if u_set.space != p.space:
        raise ValueError("functionals live on a different mixture space")


def represented_cone(u_set: MultiRep) -> cones.Cone:
    """``{v : u.linear . v >= 0 for all u}``, the positive cone the set represents."""
    return cones.from_halfspaces(u_set.space.dimension, [u.linear for u in u_set])


def verify(p: PreorderedSpace, u_set: MultiRep) -> VerifyResult:
    """Whether ``u_set`` represents ``p``, with a separating pair when it does not."""
    _check_space(p, u_set)
    rep_cone = represented_cone(u_set)
    # related pairs that some functional ranks downward
    for pair in p.comparisons:
        for k, u in enumerate(u_set):
            if u.difference(pair.x, pair.y) < 0:
                return VerifyResult(False, "violated", pair, k)
    for g in p.cone.generators:
        for k, u in enumerate(u_set):
            if linalg.dot(u.linear, g) < 0:
                return VerifyResult(False, "violated", DominancePair(*p.space.realize_difference(g)), k)
    # unanimously ranked pairs outside the preorder
    for g in rep_cone.generators:
        if not p.cone.contains(g):
            return VerifyResult(False, "unrepresented", DominancePair(*p.space.realize_difference(g)))
    return VerifyResult(True)


def minimize(p: PreorderedSpace, u_set: MultiRep) -> MultiRep:
    """Drop functionals whose linear part is a conic combination of the others.

    Scanning from the last functional to the first leaves an irredundant
    subset generating the same cone, hence representing the same preorder.
    """
    if not verify(p, u_set):
        raise ValueError("the functional set does not represent the preorder")
    kept = list(u_set)
    for i in range(len(kept) - 1, -1, -1):
        if len(kept) == 1:
            break
        others = [u.linear for j, u in enumerate(kept) if j != i]
        if cones.from_generators(p.space.dimension, others, lazy=True).contains(kept[i].linear):
            del kept[i]
    return MultiRep(tuple(kept))


def strict_functional(p: PreorderedSpace) -> AffineFunctional:
    """A strictly increasing functional ``sum 2**-i L_i`` over the synthesized set.

    Each ``L_i`` is first scaled down so that its first ``i`` coordinates in
    the embedding basis have absolute value at most one.  The sum lies in the
    relative interior of the dual cone, so it is positive on every strictly
    positive difference and zero on indifferent ones.
    """
    d = p.space.dimension
    total = linalg.zeros(d)
    for i, u in enumerate(synthesize(p), start=1):
        head = [abs(a) for a in u.linear[: min(i, d)]]
        bound = max(head, default=Fraction(0))
        weight = Fraction(1, 2**i) / max(bound, Fraction(1))
        total = linalg.add(total, linalg.scale(weight, u.linear))
    return AffineFunctional(p.space, total, 0)


@dataclass(frozen=True)
class StrictFamily:
    """The family ``{base_strict + n u : n = 0, 1, 2, ..., u in amplifiers}``."""

    base_strict: AffineFunctional
    amplifiers: MultiRep

    def member(self, n: int, k: int) -> AffineFunctional:
        """The functional ``base_strict + n * amplifiers[k]``."""
        if n < 0:
            raise ValueError("n must be a natural number")
        u = self.amplifiers.functionals[k]
        return AffineFunctional(
            self.base_strict.space,
            linalg.add(self.base_strict.linear, linalg.scale(n, u.linear)),
            self.base_strict.constant + n * u.constant,
        )


def strict_family(p: PreorderedSpace) -> StrictFamily:
    return StrictFamily(strict_functional(p), synthesize(p))


def smr_holds(f: StrictFamily, x: MPoint, y: MPoint) -> bool:
    """Whether every member of the infinite family ranks ``x`` weakly above ``y``.

    ``u'(x) - u'(y) + n (u(x) - u(y))`` is nonnegative for all natural ``n``
    exactly when both terms are nonnegative.
    """
    return f.base_strict.difference(x, y) >= 0 and f.amplifiers.unanimous(x, y)


def _lifted_cone(u_set: MultiRep) -> cones.Cone:
    d = u_set.space.dimension
    gens = [tuple(u.linear) + (u.constant,) for u in u_set]
    gens.append(linalg.unit(d + 1, d))
    gens.append(linalg.scale(-1, linalg.unit(d + 1, d)))
    return cones.from_generators(d + 1, gens, lazy=True)


def same_preorder(m: MixtureSpace, u_set: MultiRep, v_set: MultiRep) -> bool:
    """Whether two functional sets represent the same preorder.

    Compares the conic hulls of ``(linear, constant)`` together with both
    constant functionals.
    """
    if u_set.space != m or v_set.space != m:
        raise ValueError("functionals live on a different mixture space")
    return cones.cone_equal(_lifted_cone(u_set), _lifted_cone(v_set))


def from_outcome_utilities(m: MixtureSpace, utilities: Sequence[Sequence]) -> MultiRep:
    """Functionals given by their values on the vertices (outcomes) of ``m``."""
    return MultiRep(tuple(functional_from_values(m, u) for u in utilities))
