"""Samplers and independent oracles shared by the test modules.

The oracles use sympy's rational matrices and brute-force enumeration, so
they share no code path with the double description or simplex routines
they check.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import sympy

from mixcone import linalg
from mixcone.mixture import MixtureSpace, MPoint, mix


def F(x) -> Fraction:
    return Fraction(x)


# -- sympy bridge ------------------------------------------------------------


def to_sympy(rows) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(Fraction(a).numerator, Fraction(a).denominator) for a in r] for r in rows])


def from_sympy(v) -> tuple:
    return tuple(Fraction(int(sympy.fraction(a)[0]), int(sympy.fraction(a)[1])) for a in v)


# -- membership by Caratheodory enumeration ------------------------------------


def brute_member(gens, v) -> bool:
    """``v`` is a nonnegative combination of ``gens``.

    By Caratheodory it suffices to try every linearly independent subset.
    """
    v = [Fraction(a) for a in v]
    if all(a == 0 for a in v):
        return True
    gens = [tuple(Fraction(a) for a in g) for g in gens]
    dim = len(v)
    target = to_sympy([v]).T
    for r in range(1, min(len(gens), dim) + 1):
        for sub in combinations(gens, r):
            b = to_sympy(sub).T
            if b.rank() < r:
                continue
            try:
                sol, params = b.gauss_jordan_solve(target)
            except ValueError:
                continue
            if params.shape[0]:
                continue
            if all(c >= 0 for c in sol):
                return True
    return False


def brute_facets(gens, dim) -> list:
    """Facet normals of a full-dimensional cone from hyperplanes through ``dim - 1`` generators."""
    gens = [tuple(Fraction(a) for a in g) for g in gens]
    out = set()
    for sub in combinations(gens, dim - 1):
        m = to_sympy(sub) if sub else sympy.zeros(0, dim)
        ns = m.nullspace() if sub else [sympy.eye(dim)[:, i] for i in range(dim)]
        if len(ns) != 1:
            continue
        a = from_sympy(ns[0])
        vals = [linalg.dot(a, g) for g in gens]
        if all(x >= 0 for x in vals):
            out.add(linalg.primitive(a))
        elif all(x <= 0 for x in vals):
            out.add(linalg.primitive(linalg.scale(-1, a)))
    return sorted(out)


def brute_face_count(gens, ineqs) -> int:
    """Distinct generator sets cut out by every subset of the inequalities."""
    sets = set()
    for r in range(len(ineqs) + 1):
        for sub in combinations(ineqs, r):
            sets.add(frozenset(g for g in gens if all(linalg.dot(a, g) == 0 for a in sub)))
    return len(sets)


# -- Klee linear program by vertex enumeration ---------------------------------


def klee_margin_oracle(n: int) -> Fraction:
    """Minimize ``t`` over ``f(b) <= t``, ``f(y_S + b0) >= 0``, ``f(b0) = -1``.

    Variables are ``f(b_1..b_n), t``.  The optimum sits at a vertex, so
    every choice of ``n + 1`` tight constraints is solved and checked.
    """
    rows, rhs = [], []
    for r in range(1, n + 1):
        for s in combinations(range(n), r):
            # sum_{b in s} f(b) / r^2 - 1 >= 0
            rows.append([Fraction(1, r * r) if i in s else Fraction(0) for i in range(n)] + [Fraction(0)])
            rhs.append(Fraction(1))
    for i in range(n):
        # t - f(b_i) >= 0
        rows.append([Fraction(-1) if j == i else Fraction(0) for j in range(n)] + [Fraction(1)])
        rhs.append(Fraction(0))
    best = None
    for sub in combinations(range(len(rows)), n + 1):
        a = to_sympy([rows[k] for k in sub])
        if a.det() == 0:
            continue
        x = from_sympy(a.solve(to_sympy([[rhs[k]] for k in sub])))
        if all(linalg.dot(rows[k], x) >= rhs[k] for k in range(len(rows))):
            if best is None or x[-1] < best:
                best = x[-1]
    return best


# -- point samplers ------------------------------------------------------------


def random_rational(rng: random.Random, lo=-4, hi=4, den=4) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))


def random_point(rng: random.Random, m: MixtureSpace) -> MPoint:
    if m.kind == "vectorspace":
        return m.point([random_rational(rng) for _ in range(m.coordinate_dim)])
    if m.kind in ("simplex", "polytope"):
        w = [rng.randint(0, 5) for _ in m.vertices]
        if rng.random() < 0.3:
            keep = rng.randrange(len(w))
            w = [a if i == keep or rng.random() < 0.3 else 0 for i, a in enumerate(w)]
        if sum(w) == 0:
            w[rng.randrange(len(w))] = 1
        total = sum(w)
        coords = linalg.combine([Fraction(a, total) for a in w], m.vertices, m.coordinate_dim)
        return MPoint(m, coords)
    return m.point(tuple(a for f in m.factors for a in random_point(rng, f).coords))


def random_alpha(rng: random.Random, open_zero=True) -> Fraction:
    den = rng.choice([2, 3, 4, 5, 7, 8, 16])
    lo = 1 if open_zero else 0
    return Fraction(rng.randint(lo, den), den)


def random_cone_element(rng: random.Random, gens, dim, sparse=True):
    coeffs = []
    for _ in gens:
        if sparse and rng.random() < 0.4:
            coeffs.append(Fraction(0))
        else:
            coeffs.append(Fraction(rng.randint(0, 4), rng.randint(1, 3)))
    return linalg.combine(coeffs, gens, dim)


def random_related_pair(rng: random.Random, p):
    """A pair ``(x, y)`` with ``x >= y``, built from a random cone element and a random mix."""
    m = p.space
    gens = list(p.cone.generators)
    v = random_cone_element(rng, gens, m.dimension)
    x, y = m.realize_difference(linalg.primitive(v)) if any(v) else (m.center, m.center)
    z = random_point(rng, m)
    a = random_alpha(rng)
    return mix(x, z, a), mix(y, z, a)


def random_pair(rng: random.Random, p):
    """Either an unconstrained random pair or a related one (either orientation)."""
    r = rng.random()
    if r < 0.4:
        return random_point(rng, p.space), random_point(rng, p.space)
    x, y = random_related_pair(rng, p)
    return (x, y) if r < 0.7 else (y, x)
