"""Mixture spaces realized as convex sets, and their efficient embedding.

Every space is presented in native coordinates (probability vectors,
polytope coordinates, plain vectors, or concatenations of those for
products).  The embedding picks the first generating point as base point and
a rank-growing scan of differences as a basis of the ambient vector space,
so an element ``x`` is represented in the vector space by the coordinates of
``x - base_point`` in that basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from . import linalg
from .linalg import Q, RVector


class MixtureSpace:
    """A convex set with its mixing operation ``x a y = a x + (1 - a) y``.

    Use :meth:`simplex`, :meth:`polytope`, :meth:`vectorspace` or
    :meth:`product` to build one.
    """

    def __init__(self, kind: str, coordinate_dim: int, generating_points, *, outcomes=None, factors=None):
        self.kind = kind
        self.coordinate_dim = coordinate_dim
        self.outcomes = tuple(outcomes) if outcomes is not None else None
        self.factors = tuple(factors) if factors is not None else None
        self._generating = [linalg.vec(p) for p in generating_points]
        base = self._generating[0] if self._generating else linalg.zeros(coordinate_dim)
        diffs = [linalg.sub(p, base) for p in self._generating[1:]]
        if kind == "vectorspace":
            diffs = [linalg.unit(coordinate_dim, i) for i in range(coordinate_dim)]
        if kind == "product":
            diffs = _product_basis(self.factors)
        self.embedding_basis = tuple(diffs[i] for i in linalg.independent_subset(diffs))
        self._left_inverse = linalg.left_inverse(self.embedding_basis, coordinate_dim)
        self.base_point = MPoint(self, base, _checked=True)

    # -- constructors ------------------------------------------------------

    @classmethod
    def simplex(cls, outcomes) -> "MixtureSpace":
        """Lotteries over finitely many labeled outcomes; an int n gives labels d1..dn."""
        if isinstance(outcomes, int):
            outcomes = [f"d{i + 1}" for i in range(outcomes)]
        outcomes = [str(o) for o in outcomes]
        if not outcomes or len(set(outcomes)) != len(outcomes):
            raise ValueError("a simplex needs distinct, nonempty outcome labels")
        n = len(outcomes)
        return cls("simplex", n, [linalg.unit(n, i) for i in range(n)], outcomes=outcomes)

    @classmethod
    def polytope(cls, vertices) -> "MixtureSpace":
        vertices = [linalg.vec(v) for v in vertices]
        if not vertices:
            raise ValueError("a polytope needs at least one vertex")
        d = len(vertices[0])
        if any(len(v) != d for v in vertices):
            raise ValueError("vertices have unequal dimension")
        return cls("polytope", d, vertices)

    @classmethod
    def vectorspace(cls, dim: int) -> "MixtureSpace":
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        return cls("vectorspace", dim, [linalg.zeros(dim)])

    @classmethod
    def product(cls, *factors: "MixtureSpace") -> "MixtureSpace":
        if not factors:
            raise ValueError("a product needs at least one factor")
        base = tuple(a for f in factors for a in f.base_point.coords)
        return cls("product", len(base), [base], factors=factors)

    # -- structure ---------------------------------------------------------

    @cached_property
    def _key(self):
        if self.kind == "simplex":
            return ("simplex", self.outcomes)
        if self.kind == "polytope":
            return ("polytope", tuple(self._generating))
        if self.kind == "vectorspace":
            return ("vectorspace", self.coordinate_dim)
        return ("product", tuple(f._key for f in self.factors))

    def __eq__(self, other):
        return isinstance(other, MixtureSpace) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.kind == "simplex":
            return f"MixtureSpace.simplex({list(self.outcomes)})"
        if self.kind == "vectorspace":
            return f"MixtureSpace.vectorspace({self.coordinate_dim})"
        if self.kind == "polytope":
            return f"MixtureSpace.polytope({len(self._generating)} vertices in dim {self.coordinate_dim})"
        return f"MixtureSpace.product({', '.join(map(repr, self.factors))})"

    @property
    def vertices(self) -> list:
        if self.kind not in ("simplex", "polytope"):
            raise ValueError(f"a {self.kind} has no vertex list")
        return list(self._generating)

    @property
    def dimension(self) -> int:
        return len(self.embedding_basis)

    def contains_coords(self, coords: Sequence) -> bool:
        coords = linalg.vec(coords)
        if len(coords) != self.coordinate_dim:
            return False
        if self.kind == "vectorspace":
            return True
        if self.kind == "simplex":
            return all(c >= 0 for c in coords) and sum(coords) == 1
        if self.kind == "polytope":
            return self.convex_weights(coords) is not None
        offset = 0
        for f in self.factors:
            if not f.contains_coords(coords[offset : offset + f.coordinate_dim]):
                return False
            offset += f.coordinate_dim
        return True

    def convex_weights(self, coords: Sequence) -> Optional[RVector]:
        """Weights expressing ``coords`` as a convex combination of the vertices, if any."""
        from . import cone

        member = cone.member(self._homogenized_vertices, tuple(linalg.vec(coords)) + (Fraction(1),))
        if not member.holds:
            return None
        # generators are primitive forms of (v, 1), so g = g[-1] * (v, 1)
        slot = {}
        for j, v in enumerate(self._generating):
            slot.setdefault(linalg.primitive(tuple(v) + (Fraction(1),)), j)
        weights = [Fraction(0)] * len(self._generating)
        for c, g in zip(member.coefficients, member.generators):
            if c:
                weights[slot[g]] += c * g[-1]
        return tuple(weights)

    @cached_property
    def _homogenized_vertices(self):
        from . import cone

        return cone.from_generators(
            self.coordinate_dim + 1, [tuple(v) + (Fraction(1),) for v in self._generating], lazy=True
        )

    def point(self, coords) -> "MPoint":
        """Validated point from native coordinates (or an outcome label for simplices)."""
        if isinstance(coords, str):
            return self.outcome(coords)
        return MPoint(self, linalg.vec(coords))

    def outcome(self, label: str) -> "MPoint":
        if self.kind != "simplex":
            raise ValueError("only simplices have labeled outcomes")
        try:
            i = self.outcomes.index(label)
        except ValueError:
            raise ValueError(f"unknown outcome {label!r}") from None
        return MPoint(self, linalg.unit(self.coordinate_dim, i), _checked=True)

    def vertex(self, i: int) -> "MPoint":
        return MPoint(self, self._generating[i], _checked=True)

    def embed(self, w: Sequence) -> RVector:
        """Coordinates, in the embedding basis, of a native-coordinate difference vector."""
        w = linalg.vec(w)
        coords = linalg.matvec(self._left_inverse, w) if self._left_inverse else ()
        return coords

    def unembed(self, v: Sequence) -> RVector:
        """Native-coordinate vector with embedding coordinates ``v``."""
        if len(v) != self.dimension:
            raise ValueError(f"dimension mismatch: expected {self.dimension}, got {len(v)}")
        return linalg.combine(linalg.vec(v), self.embedding_basis, self.coordinate_dim)

    @cached_property
    def center(self) -> "MPoint":
        """A point of the relative interior: the vertex centroid, or the base point."""
        if self.kind in ("simplex", "polytope"):
            n = len(self._generating)
            c = linalg.scale(Fraction(1, n), linalg.combine([1] * n, self._generating, self.coordinate_dim))
            return MPoint(self, c, _checked=True)
        if self.kind == "vectorspace":
            return self.base_point
        coords = tuple(a for f in self.factors for a in f.center.coords)
        return MPoint(self, coords, _checked=True)

    def realize_difference(self, v: Sequence, max_halvings: int = 64) -> tuple["MPoint", "MPoint"]:
        """Points ``x, y`` with ``x - y`` a positive multiple ``2**-k v`` of ``v``.

        ``y`` is :attr:`center`; ``k`` is the least value for which ``x`` lies
        in the space.
        """
        w = self.unembed(v)
        y = self.center
        step = Fraction(1)
        for _ in range(max_halvings + 1):
            x = linalg.add(y.coords, linalg.scale(step, w))
            if self.contains_coords(x):
                return MPoint(self, x, _checked=True), y
            step /= 2
        raise ValueError("could not realize the difference inside the space")


def _product_basis(factors) -> list:
    total = sum(f.coordinate_dim for f in factors)
    out = []
    offset = 0
    for f in factors:
        for b in f.embedding_basis:
            v = [Fraction(0)] * total
            v[offset : offset + f.coordinate_dim] = b
            out.append(tuple(v))
        offset += f.coordinate_dim
    return out


@dataclass(frozen=True)
class MPoint:
    """An element of a mixture space, stored in native coordinates."""

    space: MixtureSpace
    coords: RVector
    _checked: bool = False

    def __post_init__(self):
        object.__setattr__(self, "coords", linalg.vec(self.coords))
        if not self._checked and not self.space.contains_coords(self.coords):
            raise ValueError(f"{linalg.format_vector(self.coords)} is not a point of {self.space!r}")

    def __eq__(self, other):
        return isinstance(other, MPoint) and self.space == other.space and self.coords == other.coords

    def __hash__(self):
        return hash((self.space, self.coords))

    def __repr__(self):
        return f"MPoint({linalg.format_vector(self.coords)})"


def _same_space(x: MPoint, y: MPoint):
    if x.space != y.space:
        raise ValueError("points belong to different mixture spaces")


def mix(x: MPoint, y: MPoint, alpha) -> MPoint:
    """The mixture ``x alpha y``: weight ``alpha`` on x and ``1 - alpha`` on y."""
    _same_space(x, y)
    alpha = Q(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError(f"mixing weight {alpha} is outside [0, 1]")
    coords = tuple(alpha * a + (1 - alpha) * b for a, b in zip(x.coords, y.coords))
    return MPoint(x.space, coords, _checked=True)


def embed_difference(x: MPoint, y: MPoint) -> RVector:
    """Coordinates of ``x - y`` in the embedding basis of the ambient vector space."""
    _same_space(x, y)
    return x.space.embed(linalg.sub(x.coords, y.coords))


def dimension(m: MixtureSpace) -> int:
    return m.dimension


@dataclass(frozen=True)
class AffineFunctional:
    """A mixture-preserving map ``x -> linear . embed(x - base_point) + constant``."""

    space: MixtureSpace
    linear: RVector
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "linear", linalg.vec(self.linear))
        object.__setattr__(self, "constant", Q(self.constant))
        if len(self.linear) != self.space.dimension:
            raise ValueError(f"linear part has length {len(self.linear)}, space has dimension {self.space.dimension}")

    def __call__(self, x: MPoint) -> Fraction:
        if x.space != self.space:
            raise ValueError("point belongs to a different mixture space")
        return linalg.dot(self.linear, embed_difference(x, self.space.base_point)) + self.constant

    def difference(self, x: MPoint, y: MPoint) -> Fraction:
        """``u(x) - u(y)``, which does not depend on the constant."""
        return linalg.dot(self.linear, embed_difference(x, y))

    def __repr__(self):
        return f"AffineFunctional({linalg.format_vector(self.linear)}, {linalg.format_rational(self.constant)})"


def extend_functional(m: MixtureSpace, linear_part: Sequence, constant=0) -> AffineFunctional:
    return AffineFunctional(m, linalg.vec(linear_part), Q(constant))


def functional_from_values(m: MixtureSpace, values: Sequence) -> AffineFunctional:
    """The affine functional taking the given values on the vertices (outcomes).

    Raises ValueError when no affine function interpolates the values.
    """
    verts = m.vertices
    values = linalg.vec(values)
    if len(values) != len(verts):
        raise ValueError(f"expected {len(verts)} values, got {len(values)}")
    base = m.base_point.coords
    rows = [m.embed(linalg.sub(v, base)) for v in verts]
    rhs = [val - values[0] for val in values]
    lin = linalg.solve(rows, rhs, ncols=m.dimension) if rows else ()
    if lin is None:
        raise ValueError("values are not those of an affine function on the vertices")
    return AffineFunctional(m, lin, values[0])


def vertex_values(u: AffineFunctional) -> RVector:
    return tuple(u(u.space.vertex(i)) for i in range(len(u.space.vertices)))
