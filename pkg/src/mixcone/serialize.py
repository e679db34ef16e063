"""JSON formats for spaces, points, cones, functional sets and problem files.

Rationals are strings ``"p/q"`` or ``"p"``; integers are accepted on input,
floats never.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

from . import cone as cones
from . import linalg
from .cone import Cone, Membership
from .linalg import Q
from .mixture import AffineFunctional, MixtureSpace, MPoint, functional_from_values, vertex_values
from .preorder import PreorderedSpace
from .representation import MultiRep


class FormatError(ValueError):
    """Raised for input that does not match the documented JSON formats."""


def parse_rational(x):
    if isinstance(x, float):
        raise FormatError(f"floating-point number {x!r} is not allowed; write it as a string \"p/q\"")
    try:
        return Q(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"not a rational: {x!r}") from exc


def parse_vector(obj) -> tuple:
    if not isinstance(obj, list):
        raise FormatError(f"expected a list of rationals, got {obj!r}")
    return tuple(parse_rational(a) for a in obj)


def rational_json(x) -> str:
    return linalg.format_rational(x)


def vector_json(v) -> list:
    return linalg.format_vector(v)


def _require(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise FormatError(f"{where} must be an object")
    if key not in obj:
        raise FormatError(f"{where} is missing {key!r}")
    return obj[key]


# -- spaces and points -----------------------------------------------------


def space_from_json(obj) -> MixtureSpace:
    kind = _require(obj, "type", "space")
    if kind == "simplex":
        outcomes = _require(obj, "outcomes", "simplex space")
        if not isinstance(outcomes, list) or not all(isinstance(o, str) for o in outcomes):
            raise FormatError("simplex outcomes must be a list of strings")
        return MixtureSpace.simplex(outcomes)
    if kind == "polytope":
        vertices = [parse_vector(v) for v in _require(obj, "vertices", "polytope space")]
        dim = obj.get("dim")
        if dim is not None and any(len(v) != dim for v in vertices):
            raise FormatError(f"polytope vertices must have {dim} coordinates")
        return MixtureSpace.polytope(vertices)
    if kind == "vectorspace":
        dim = _require(obj, "dim", "vectorspace space")
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
            raise FormatError("vectorspace dim must be a nonnegative integer")
        return MixtureSpace.vectorspace(dim)
    if kind == "product":
        return MixtureSpace.product(*(space_from_json(f) for f in _require(obj, "factors", "product space")))
    raise FormatError(f"unknown space type {kind!r}")


def space_json(m: MixtureSpace) -> dict:
    if m.kind == "simplex":
        return {"type": "simplex", "outcomes": list(m.outcomes)}
    if m.kind == "polytope":
        return {"type": "polytope", "dim": m.coordinate_dim, "vertices": [vector_json(v) for v in m.vertices]}
    if m.kind == "vectorspace":
        return {"type": "vectorspace", "dim": m.coordinate_dim}
    return {"type": "product", "factors": [space_json(f) for f in m.factors]}


def point_from_json(m: MixtureSpace, obj) -> MPoint:
    """A point from a coordinate list, or from an outcome label on a simplex."""
    if isinstance(obj, str):
        return m.outcome(obj)
    coords = parse_vector(obj)
    if len(coords) != m.coordinate_dim:
        raise FormatError(f"point needs {m.coordinate_dim} coordinates, got {len(coords)}")
    return m.point(coords)


def point_json(x: MPoint) -> list:
    return vector_json(x.coords)


# -- cones and certificates ------------------------------------------------


def cone_json(c: Cone) -> dict:
    return {
        "dim": c.dim,
        "generators": [vector_json(g) for g in c.generators],
        "inequalities": [vector_json(a) for a in c.inequalities],
        "equalities": [vector_json(e) for e in c.equalities],
    }


def cone_from_json(obj) -> Cone:
    dim = _require(obj, "dim", "cone")
    gens = [parse_vector(g) for g in _require(obj, "generators", "cone")]
    c = cones.from_generators(dim, gens)
    if "inequalities" in obj:
        given = cones.from_halfspaces(
            dim, [parse_vector(a) for a in obj["inequalities"]], [parse_vector(e) for e in obj.get("equalities", [])]
        )
        if not cones.cone_equal(c, given):
            raise FormatError("cone inequalities do not describe the cone of its generators")
    return c


def membership_json(v, cert: Membership) -> dict:
    out: dict[str, Any] = {"vector": vector_json(v), "holds": cert.holds}
    if cert.holds:
        pairs = [(c, g) for c, g in zip(cert.coefficients, cert.generators) if c]
        out["combination"] = [{"coefficient": rational_json(c), "generator": vector_json(g)} for c, g in pairs]
    else:
        out["witness"] = vector_json(cert.witness)
    return out


def membership_from_json(obj) -> tuple[tuple, Membership]:
    v = parse_vector(_require(obj, "vector", "certificate"))
    if _require(obj, "holds", "certificate"):
        combo = _require(obj, "combination", "certificate")
        coeffs = tuple(parse_rational(t["coefficient"]) for t in combo)
        gens = tuple(parse_vector(t["generator"]) for t in combo)
        return v, Membership(True, coeffs, gens)
    return v, Membership(False, witness=parse_vector(_require(obj, "witness", "certificate")))


# -- functional sets -------------------------------------------------------


def functional_from_json(m: MixtureSpace, obj) -> AffineFunctional:
    if isinstance(obj, dict) and "values" in obj:
        return functional_from_values(m, parse_vector(obj["values"]))
    linear = parse_vector(_require(obj, "linear", "functional"))
    if len(linear) != m.dimension:
        raise FormatError(f"functional needs {m.dimension} linear coefficients, got {len(linear)}")
    return AffineFunctional(m, linear, parse_rational(obj.get("constant", "0")))


def functional_json(u: AffineFunctional) -> dict:
    out = {"linear": vector_json(u.linear), "constant": rational_json(u.constant)}
    if u.space.kind in ("simplex", "polytope"):
        out["values"] = vector_json(vertex_values(u))
    return out


def multirep_from_json(m: MixtureSpace, obj) -> MultiRep:
    fs = _require(obj, "functionals", "functional set")
    if not isinstance(fs, list) or not fs:
        raise FormatError("a functional set needs a nonempty list of functionals")
    return MultiRep(tuple(functional_from_json(m, f) for f in fs))


def multirep_json(u_set: MultiRep) -> dict:
    return {"functionals": [functional_json(u) for u in u_set]}


# -- problem files ---------------------------------------------------------


@dataclass
class Problem:
    preorder: PreorderedSpace
    functional_sets: dict = field(default_factory=dict)
    queries: list = field(default_factory=list)

    @property
    def space(self) -> MixtureSpace:
        return self.preorder.space


def problem_from_json(obj) -> Problem:
    m = space_from_json(_require(obj, "space", "problem"))
    comps = []
    for item in obj.get("comparisons", []):
        pair = _require(item, "geq", "comparison")
        if not isinstance(pair, list) or len(pair) != 2:
            raise FormatError("a comparison is {\"geq\": [x, y]}")
        comps.append((point_from_json(m, pair[0]), point_from_json(m, pair[1])))
    p = PreorderedSpace(m, comps)
    sets = {}
    raw_sets = obj.get("functional_sets", {})
    if not isinstance(raw_sets, dict):
        raise FormatError("functional_sets must map names to functional sets")
    for name in raw_sets:
        sets[name] = multirep_from_json(m, raw_sets[name])
    queries = []
    for q in obj.get("queries", []):
        queries.append((point_from_json(m, _require(q, "x", "query")), point_from_json(m, _require(q, "y", "query"))))
    return Problem(p, sets, queries)


def problem_json(p: PreorderedSpace, functional_sets: Optional[dict] = None, queries=()) -> dict:
    out: dict[str, Any] = {
        "space": space_json(p.space),
        "comparisons": [{"geq": [point_json(x), point_json(y)]} for x, y in p.comparisons],
    }
    if functional_sets:
        out["functional_sets"] = {k: multirep_json(v) for k, v in functional_sets.items()}
    if queries:
        out["queries"] = [{"x": point_json(x), "y": point_json(y)} for x, y in queries]
    return out


def load_problem(path: str) -> Problem:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON: {exc}") from exc
    return problem_from_json(obj)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
