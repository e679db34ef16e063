"""Batch front end: read a problem file, run one analysis, print a JSON report.

Exit codes: 0 on success, 2 on invalid input, 3 when a size budget is
exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import archimedean, cone as cones, corpus, linalg, representation
from .cone import BudgetExceeded, DEFAULT_FACE_BUDGET
from .mixture import embed_difference
from .preorder import DominancePair
from .serialize import (
    FormatError,
    Problem,
    dumps,
    functional_json,
    load_problem,
    membership_from_json,
    membership_json,
    multirep_json,
    parse_vector,
    point_from_json,
    point_json,
    problem_json,
    rational_json,
    vector_json,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BUDGET = 3


def _point(problem: Problem, text: str):
    """A point from an outcome label, a JSON list, or comma-separated rationals."""
    text = text.strip()
    if text.startswith("["):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"bad point {text!r}: {exc}") from exc
        return point_from_json(problem.space, [str(a) if isinstance(a, int) else a for a in obj])
    if problem.space.kind == "simplex" and text in problem.space.outcomes:
        return problem.space.outcome(text)
    return point_from_json(problem.space, [a.strip() for a in text.split(",")])


def _functional_set(problem: Problem, name: Optional[str], position: int = 0):
    sets = problem.functional_sets
    if name is None:
        if len(sets) <= position:
            raise FormatError(f"the problem file needs at least {position + 1} functional set(s)")
        name = sorted(sets)[position]
    if name not in sets:
        raise FormatError(f"no functional set named {name!r}")
    return name, sets[name]


def _pair_json(pair: DominancePair) -> list:
    return [point_json(pair.x), point_json(pair.y)]


def _query_report(problem: Problem, x, y) -> dict:
    p = problem.preorder
    fwd = p.certify(x, y)
    back = p.certify(y, x)
    return {
        "x": point_json(x),
        "y": point_json(y),
        "geq": fwd.holds,
        "leq": back.holds,
        "strict": fwd.holds and not back.holds,
        "indiff": fwd.holds and back.holds,
        "certificate": membership_json(embed_difference(x, y), fwd),
        "reverse_certificate": membership_json(embed_difference(y, x), back),
    }


def cmd_query(args, problem: Problem):
    if args.x is None and args.y is None:
        if not problem.queries:
            raise FormatError("give --x and --y or list queries in the problem file")
        return {"queries": [_query_report(problem, x, y) for x, y in problem.queries]}
    if args.x is None or args.y is None:
        raise FormatError("query needs both --x and --y")
    return _query_report(problem, _point(problem, args.x), _point(problem, args.y))


def cmd_interval(args, problem: Problem):
    pts = [_point(problem, getattr(args, k)) for k in "xyzw"]
    iv = problem.preorder.comparison_interval(*pts)
    return {
        "interval": None if iv is None else [rational_json(iv.lo), rational_json(iv.hi)],
        "closed": True,
        "empty": iv is None,
    }


def cmd_dominance(args, problem: Problem):
    x, y, s, t = (_point(problem, getattr(args, k)) for k in "xyst")
    verdict = problem.preorder.dominance(DominancePair(x, y), DominancePair(s, t))
    out = {"weakly_dominates": verdict.holds}
    if verdict.holds:
        out["alpha"] = rational_json(verdict.alpha)
    else:
        out["witness"] = vector_json(verdict.witness)
    return out


def cmd_arch(args, problem: Problem):
    arch = archimedean.arch_structure(problem.preorder, budget=args.budget)
    if args.dot:
        return arch.to_dot()
    return arch.to_dict()


def cmd_axioms(args, problem: Problem):
    return archimedean.check_axioms(problem.preorder, budget=args.budget).to_dict()


def cmd_represent(args, problem: Problem):
    return multirep_json(representation.synthesize(problem.preorder))


def cmd_verify_rep(args, problem: Problem):
    name, u_set = _functional_set(problem, args.set)
    res = representation.verify(problem.preorder, u_set)
    out = {"set": name, "represents": res.holds}
    if not res.holds:
        out["kind"] = res.kind
        out["pair"] = _pair_json(res.pair)
        if res.functional is not None:
            out["functional"] = res.functional
    return out


def cmd_minimize_rep(args, problem: Problem):
    name, u_set = _functional_set(problem, args.set)
    return {"set": name, **multirep_json(representation.minimize(problem.preorder, u_set))}


def cmd_strict(args, problem: Problem):
    return functional_json(representation.strict_functional(problem.preorder))


def cmd_same_rep(args, problem: Problem):
    u_name, u_set = _functional_set(problem, args.u, 0)
    v_name, v_set = _functional_set(problem, args.v, 1)
    return {"u": u_name, "v": v_name, "same_preorder": representation.same_preorder(problem.space, u_set, v_set)}


def cmd_check_cert(args, problem: Problem):
    with open(args.report, encoding="utf-8") as fh:
        report = json.load(fh)
    certs = []

    def collect(obj):
        if isinstance(obj, dict):
            if "vector" in obj and "holds" in obj:
                certs.append(obj)
            for v in obj.values():
                collect(v)
        elif isinstance(obj, list):
            for v in obj:
                collect(v)

    collect(report)
    dim = problem.space.dimension
    gens = [embed_difference(x, y) for x, y in problem.preorder.comparisons]
    results = []
    for c in certs:
        v, cert = membership_from_json(c)
        ok = cones.check_certificate(dim, v, cert)
        if ok and cert.holds:
            # every generator used must lie in the cone of the input differences
            ok = all(cones.from_generators(dim, gens, lazy=True).contains(g) for g in cert.generators)
        elif ok:
            ok = all(linalg.dot(cert.witness, g) >= 0 for g in gens)
        results.append({"vector": c["vector"], "holds": c["holds"], "valid": ok})
    return {"certificates": results, "all_valid": all(r["valid"] for r in results)}


FIXTURE_NAMES = ("fosd", "pointwise", "norm-cone", "product", "klee", "lex", "herstein")


def cmd_fixture(args, problem: Optional[Problem]):
    name, params = args.name, args.params
    ints = [int(a) for a in params]
    if name == "fosd":
        return problem_json(corpus.fosd(*(ints or [3])))
    if name == "pointwise":
        return problem_json(corpus.pointwise_order(*(ints or [2])))
    if name == "norm-cone":
        return problem_json(corpus.norm_cone_order(*(ints or [1])))
    if name == "product":
        return problem_json(corpus.product_order(corpus.fosd(3)))
    if name == "klee":
        n = ints[0] if ints else 2
        k = corpus.klee_truncation(n)
        cert = k.exclusion_certificate()
        return {
            "n": n,
            "generators": [vector_json(g) for g in k.cone.raw_generators],
            "b0_excluded": not cert.holds,
            "certificate": membership_json(k.b0, cert),
            "separation_margin": rational_json(corpus.klee_separation_margin(k)),
        }
    if name == "lex":
        n = ints[0] if ints else 2
        w = corpus.lex_mc_witness(n)
        return {"n": n, "v": vector_json(w.v), "w": vector_json(w.w), "verdict": w.verdict}
    if name == "herstein":
        h = corpus.herstein_fixture()
        pts, alpha = h.wcon_witness()
        grid = [linalg.Q(f"{i}/4") for i in range(5)]
        ind = all(h.independence_holds(a, b, c) for a in grid for b in grid for c in grid)
        return {
            "wcon_points": vector_json(pts),
            "wcon_alpha_set": str(alpha),
            "wcon_closed": alpha.closed,
            "si_violation": vector_json(h.si_violation()),
            "independence_on_grid": ind,
        }
    raise FormatError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixcone", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_text, needs_file=True, **kw):
        sp = sub.add_parser(name, help=help_text, **kw)
        if needs_file:
            sp.add_argument("problem", help="problem file (JSON)")
        sp.set_defaults(func=func, needs_file=needs_file)
        return sp

    sp = add("query", cmd_query, "compare two points")
    sp.add_argument("--x")
    sp.add_argument("--y")
    sp = add("interval", cmd_interval, "mixing weights a with x a y >= z a w")
    for k in "xyzw":
        sp.add_argument(f"--{k}", required=True)
    sp = add("dominance", cmd_dominance, "whether (x, y) weakly dominates (s, t)")
    for k in "xyst":
        sp.add_argument(f"--{k}", required=True)
    for name, func, text in (("arch", cmd_arch, "Archimedean classes"), ("axioms", cmd_axioms, "axiom report")):
        sp = add(name, func, text)
        sp.add_argument("--budget", type=int, default=DEFAULT_FACE_BUDGET)
        if name == "arch":
            sp.add_argument("--dot", action="store_true", help="emit the Hasse diagram in DOT format")
    add("represent", cmd_represent, "synthesize a multi-representation")
    add("verify-rep", cmd_verify_rep, "check a functional set").add_argument("--set")
    add("minimize-rep", cmd_minimize_rep, "drop redundant functionals").add_argument("--set")
    add("strict", cmd_strict, "a strictly increasing functional")
    sp = add("same-rep", cmd_same_rep, "whether two functional sets represent the same preorder")
    sp.add_argument("--u")
    sp.add_argument("--v")
    sp = add("fixture", cmd_fixture, "emit a fixture problem or run its self-checks", needs_file=False)
    sp.add_argument("name", help=", ".join(FIXTURE_NAMES))
    sp.add_argument("params", nargs="*")
    sp = sub.add_parser("check-cert")
    sp.add_argument("problem")
    sp.add_argument("report")
    sp.set_defaults(func=cmd_check_cert, needs_file=True)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        problem = load_problem(args.problem) if args.needs_file else None
        result = args.func(args, problem)
    except OSError as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except FormatError as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, TypeError, KeyError) as exc:
        print(f"error: validation failed: {exc}", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(result if isinstance(result, str) else dumps(result))
    return EXIT_OK
