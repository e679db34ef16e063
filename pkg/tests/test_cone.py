import threading
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from helpers import brute_face_count, brute_facets, brute_member
from mixcone import cone as cones
from mixcone import linalg, lp
from mixcone.cone import (
    Interval,
    cone_equal,
    dual,
    enumerate_faces,
    from_generators,
    from_halfspaces,
    member,
    relint_point,
    segment_cone_interval,
    smallest_face,
    to_halfspaces,
)

QUADRANT = [(1, 0), (0, 1)]
NORM1 = [(1, 1), (-1, 1)]


def quadrant():
    return from_generators(2, QUADRANT)


def norm1():
    return from_generators(2, NORM1)


def grid(k=3):
    return [tuple(Fraction(a, 2) for a in p) for p in product(range(-2 * k, 2 * k + 1), repeat=2)]


def cones_strategy(max_dim=4, max_gens=6):
    return st.integers(1, max_dim).flatmap(
        lambda d: st.tuples(
            st.just(d),
            st.lists(st.tuples(*[st.integers(-3, 3)] * d), min_size=0, max_size=max_gens),
        )
    )


# -- construction and halfspaces ---------------------------------------------


def test_quadrant_and_zero_cone():
    q = quadrant()
    assert q.rays == ((0, 1), (1, 0)) and q.lineality == ()
    z = from_generators(2, [])
    assert z.is_zero and z.contains((0, 0)) and not z.contains((1, 0))
    assert z.equalities == ((0, 1), (1, 0))


def test_norm_cone_membership_matches_definition():
    c = norm1()
    for d, t in grid():
        assert c.contains((d, t)) == (abs(d) <= t)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        from_generators(2, [(1, 0, 0)])
    with pytest.raises(ValueError):
        member(quadrant(), (1, 2, 3))


def test_halfspaces_examples():
    assert to_halfspaces(quadrant()) == (((0, 1), (1, 0)), ())
    line = from_generators(2, [(1, 0), (-1, 0)])
    assert to_halfspaces(line) == ((), ((0, 1),))
    ineq, eq = to_halfspaces(norm1())
    assert eq == () and set(ineq) == {(-1, 1), (1, 1)}


def test_halfspaces_describe_same_set_on_grid():
    c = norm1()
    ineq, _ = to_halfspaces(c)
    for p in grid():
        assert c.contains(p) == all(linalg.dot(a, p) >= 0 for a in ineq) == (abs(p[0]) <= p[1])


def test_from_halfspaces_with_equalities():
    c = from_halfspaces(3, [(1, 0, 0)], [(0, 0, 1)])
    assert c.lineality == ((0, 1, 0),) and c.rays == ((1, 0, 0),)


# -- membership ----------------------------------------------------------------


def test_member_examples():
    q = quadrant()
    res = member(q, (1, 2))
    assert res.holds and cones.check_certificate(2, (1, 2), res, q)
    res = member(q, (-1, 0))
    assert not res.holds and res.witness == (1, 0)
    res = member(norm1(), (2, 1))
    assert not res.holds and res.witness == (-1, 1)
    assert linalg.dot(res.witness, (2, 1)) < 0


@given(cones_strategy(), st.data())
def test_member_agrees_with_caratheodory_oracle(gen_data, data):
    dim, gens = gen_data
    v = data.draw(st.tuples(*[st.integers(-4, 4)] * dim))
    for lazy in (False, True):
        c = from_generators(dim, gens, lazy=lazy)
        res = member(c, v)
        assert res.holds == brute_member(gens, v)
        assert cones.check_certificate(dim, v, res, c)


@given(cones_strategy(), st.data())
def test_lp_farkas_certificate(gen_data, data):
    dim, gens = gen_data
    assume(gens)
    v = data.draw(st.tuples(*[st.integers(-4, 4)] * dim))
    res = lp.conic_feasibility(gens, v)
    if res.feasible:
        assert all(c >= 0 for c in res.coefficients)
        assert linalg.combine(res.coefficients, gens, dim) == tuple(v)
    else:
        assert all(linalg.dot(res.farkas, g) >= 0 for g in gens)
        assert linalg.dot(res.farkas, v) < 0


# -- double description round trip --------------------------------------------


@given(cones_strategy())
def test_double_description_round_trip(gen_data):
    dim, gens = gen_data
    c = from_generators(dim, gens)
    ineq, eq = to_halfspaces(c)
    back = from_halfspaces(dim, ineq, eq)
    assert back.generators == c.generators
    assert dual(dual(c)).generators == c.generators
    for g in gens:
        assert all(linalg.dot(a, g) >= 0 for a in ineq)
        assert all(linalg.dot(e, g) == 0 for e in eq)


@given(cones_strategy(max_dim=3, max_gens=5))
def test_facets_match_brute_force(gen_data):
    dim, gens = gen_data
    c = from_generators(dim, gens)
    assume(c.span_dim == dim and c.is_pointed and c.rays)
    assert sorted(c.inequalities) == brute_facets(gens, dim)


@given(cones_strategy(max_dim=3))
def test_lazy_and_eager_agree(gen_data):
    dim, gens = gen_data
    eager = from_generators(dim, gens)
    lazy = from_generators(dim, gens, lazy=True)
    assert "halfspaces" not in lazy.rep_state
    for v in product(range(-2, 3), repeat=dim):
        assert eager.contains(v) == lazy.contains(v)
    assert lazy.generators == eager.generators
    assert lazy.rep_state == eager.rep_state


def test_dual_examples():
    assert dual(quadrant()).generators == quadrant().generators
    assert dual(cones.full_space(2)).is_zero
    assert cone_equal(dual(norm1()), norm1())


# -- equality ------------------------------------------------------------------


def test_cone_equal_examples():
    assert cone_equal(quadrant(), from_generators(2, [(1, 0), (0, 1), (1, 1)]))
    assert not cone_equal(quadrant(), from_halfspaces(2, [(0, 1)]))
    with pytest.raises(ValueError):
        cone_equal(quadrant(), from_generators(3, []))


@given(cones_strategy(max_dim=3))
def test_canonical_generators_independent_of_input_order(gen_data):
    dim, gens = gen_data
    a = from_generators(dim, gens)
    b = from_generators(dim, list(reversed(gens)) + [tuple(2 * x for x in g) for g in gens])
    assert a.generators == b.generators and a.inequalities == b.inequalities


# -- faces ---------------------------------------------------------------------


def test_smallest_face_examples():
    q = quadrant()
    f = smallest_face(q, (1, 0))
    assert f.generators == [(1, 0)]
    assert smallest_face(q, (1, 1)).active_set == frozenset()
    f0 = smallest_face(q, (0, 0))
    assert f0.generators == [] and f0.dimension == 0
    with pytest.raises(ValueError):
        smallest_face(q, (-1, 0))


def test_face_counts():
    assert len(enumerate_faces(quadrant())) == 4
    assert len(enumerate_faces(from_generators(2, []))) == 1
    assert len(enumerate_faces(norm1())) == 4
    assert len(enumerate_faces(cones.full_space(3))) == 1
    octant = from_generators(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert len(enumerate_faces(octant)) == 8


def test_face_budget():
    octant = from_generators(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    with pytest.raises(cones.FaceBudgetExceeded):
        enumerate_faces(octant, budget=5)


@given(cones_strategy(max_dim=3, max_gens=5))
def test_face_count_matches_brute_force(gen_data):
    dim, gens = gen_data
    c = from_generators(dim, gens)
    faces = enumerate_faces(c)
    assert len(faces) == brute_face_count(c.generators, c.inequalities)


@given(cones_strategy(max_dim=3, max_gens=5))
def test_faces_closed_under_intersection(gen_data):
    dim, gens = gen_data
    c = from_generators(dim, gens)
    faces = enumerate_faces(c)
    sets = {frozenset(f.generators) for f in faces}
    for f in faces:
        for g in faces:
            assert frozenset(f.generators) & frozenset(g.generators) in sets
    assert frozenset(c.generators) in sets
    lin = frozenset(g for g in c.generators if linalg.primitive([-a for a in g]) in c.generators)
    assert lin in sets
    for f in faces:
        # each face is the smallest face of its relative-interior point
        assert smallest_face(c, relint_point(f.face_cone)) == f
        assert all(c.contains(g) for g in f.face_cone.generators)


def _barker_steps(c, v, w):
    """Candidate lambdas: the breakpoints a.v / a.w, their halves, and 1."""
    out = {Fraction(1)}
    for a in c.inequalities:
        aw = linalg.dot(a, w)
        if aw > 0:
            r = Fraction(linalg.dot(a, v)) / aw
            if r > 0:
                out |= {r, r / 2}
    return out


@given(cones_strategy(max_dim=3, max_gens=5), st.data())
def test_smallest_face_barker_characterization(gen_data, data):
    dim, gens = gen_data
    assume(gens)
    c = from_generators(dim, gens)
    pick = st.lists(st.integers(0, 3), min_size=len(c.generators), max_size=len(c.generators))
    v = linalg.combine(data.draw(pick), c.generators, dim)
    w = linalg.combine(data.draw(pick), c.generators, dim)
    in_face = smallest_face(c, v).contains(w)
    reachable = any(c.contains(linalg.sub(v, linalg.scale(lam, w))) for lam in _barker_steps(c, v, w))
    assert in_face == reachable


@given(cones_strategy(max_dim=3, max_gens=5), st.data())
def test_algebraically_closed(gen_data, data):
    dim, gens = gen_data
    c = from_generators(dim, gens)
    p = data.draw(st.tuples(*[st.integers(-3, 3)] * dim))
    q = data.draw(st.tuples(*[st.integers(-3, 3)] * dim))
    iv = segment_cone_interval(c, p, q)
    if iv is None:
        return
    for a in (iv.lo, iv.hi, (iv.lo + iv.hi) / 2):
        assert c.contains(linalg.add(linalg.scale(a, p), linalg.scale(1 - a, q)))
    # points of [0, 1] just outside the interval are outside the cone
    for a in (iv.lo - Fraction(1, 97), iv.hi + Fraction(1, 97)):
        if 0 <= a <= 1:
            assert not c.contains(linalg.add(linalg.scale(a, p), linalg.scale(1 - a, q)))


def test_relint_point_examples():
    assert relint_point(quadrant()) == (1, 1)
    assert relint_point(from_generators(2, [(1, 0)])) == (1, 0)
    assert relint_point(from_generators(2, [])) == (0, 0)
    c = norm1()
    assert smallest_face(c, relint_point(c)).active_set == frozenset()


def test_segment_interval_examples():
    q = quadrant()
    assert segment_cone_interval(q, (1, 1), (-1, 1)) == Interval(Fraction(1, 2), Fraction(1))
    assert segment_cone_interval(q, (2, 3), (2, 3)) == Interval(Fraction(0), Fraction(1))
    assert segment_cone_interval(q, (-1, -1), (-2, -1)) is None


def test_concurrent_materialization():
    gens = [(1, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1), (1, 1, 1, 9), (1, 1, 0, 4)]
    c = from_generators(4, gens, lazy=True)
    results = []

    def work():
        results.append((c.inequalities, c.generators))

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(results)) == 1
