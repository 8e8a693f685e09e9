"""JSON in, JSON out command line front end.

Usage: ``artifact SUBCOMMAND [--input FILE] [--output FILE] [--pretty] [--parallel N]``.
The input is a problem file ``{"function": ..., "query": {...}}``; see
``docs/format.md``.  Exit status 0 on success, 2 for malformed input or a
size bound, 3 when a mathematical precondition fails.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Optional, Sequence

from . import checks, closedforms, cpwl, graphgeo, secondorder
from .cones import covered_by_union
from .corpus import corpus
from .errors import ArtifactError, CapabilityError, ContractError, MathError
from .jsonio import (
    cone_json,
    dumps,
    function_from_json,
    index_json,
    parse_vector,
    rational,
    union_json,
    vector_json,
)

log = logging.getLogger(__name__)

SUBCOMMANDS = (
    "eval",
    "activity",
    "subdiff",
    "decompose",
    "prenormal",
    "precoderivative",
    "normal-cone",
    "dom2",
    "value2",
    "aiqc",
    "sum-rule",
    "closed-form",
    "verify",
)
FAMILIES = ("cmax", "infnorm", "box", "onenorm")


class _Problem:
    def __init__(self, data: Any, need_function: bool = True):
        if not isinstance(data, dict):
            raise ContractError("problem file must be a JSON object")
        self.query = data.get("query", {})
        if not isinstance(self.query, dict):
            raise ContractError("query must be a JSON object")
        self.options = self.query.get("options", {}) or {}
        self.f = function_from_json(data["function"]) if "function" in data else None
        if need_function and self.f is None:
            raise ContractError("problem file has no function")

    def vec(self, key: str, dim: Optional[int] = None):
        if key not in self.query:
            raise ContractError(f"query is missing {key!r}")
        if dim is None and self.f is not None:
            dim = self.f.dim
        return parse_vector(self.query[key], dim, key)

    def point(self) -> graphgeo.GraphPoint:
        return graphgeo.graph_point(self.f, self.vec("x"), self.vec("v"))


def _witness_json(w: cpwl.SubgradientWitness) -> dict:
    return {
        "v1": vector_json(w.v1),
        "v2": vector_json(w.v2),
        "lambda": {str(i): rational(c) for i, c in w.lam},
        "mu": {str(t): rational(c) for t, c in w.mu},
        "J1": index_json(w.J1),
        "J2": index_json(w.J2),
    }


def _quad_json(q: secondorder.IndexQuadruple) -> dict:
    return {"P1": index_json(q.P1), "Q1": index_json(q.Q1), "P2": index_json(q.P2), "Q2": index_json(q.Q2)}


def cmd_eval(p: _Problem, args) -> dict:
    return {"value": rational(cpwl.evaluate(p.f, p.vec("x")))}


def cmd_activity(p: _Problem, args) -> dict:
    pat = cpwl.activity(p.f, p.vec("x"))
    return {"K": index_json(pat.K), "I": index_json(pat.I)}


def cmd_subdiff(p: _Problem, args) -> dict:
    s = cpwl.subdifferential(p.f, p.vec("x"))
    return {"hull_points": [vector_json(a) for a in s.hull_points], "rays": [vector_json(d) for d in s.ray_gens]}


def cmd_decompose(p: _Problem, args) -> dict:
    return _witness_json(cpwl.decompose_subgradient(p.f, p.vec("x"), p.vec("v")))


def cmd_prenormal(p: _Problem, args) -> dict:
    return cone_json(graphgeo.prenormal_cone_graph(p.point()))


def cmd_precoderivative(p: _Problem, args) -> dict:
    value = graphgeo.precoderivative(p.point(), p.vec("u"))
    return {"value": None if value is None else cone_json(value)}


def cmd_normal_cone(p: _Problem, args) -> dict:
    g = p.point()
    members = []
    for q in secondorder.enumerate_A(g, args.parallel):
        prod = cone_json(secondorder._product(g, q))
        members.append({"quadruple": _quad_json(q), **prod})
    return {"members": members}


def cmd_dom2(p: _Problem, args) -> dict:
    g = p.point()
    fs = secondorder.feature_sets(g)
    return {
        "domain": cone_json(secondorder.second_order_domain(g)),
        "gamma1": index_json(fs.gamma1),
        "gamma2": index_json(fs.gamma2),
    }


def cmd_value2(p: _Problem, args) -> dict:
    g = p.point()
    u = p.vec("u")
    union = secondorder.second_order_value(g, u, args.parallel)
    out = {"union": union_json(union), "in_domain": bool(union.members)}
    if not union.members:
        out["upper_estimate"] = None
        out["status"] = "outside domain"
        return out
    est = secondorder.value_upper_estimate(g, u)
    out["upper_estimate"] = cone_json(est)
    if secondorder.aiqc(g.f, g.x):
        out["status"] = "exact"
    elif covered_by_union(est, list(union.members)):
        out["status"] = "equality certified"
    else:
        out["status"] = "upper estimate only"
    return out


def cmd_aiqc(p: _Problem, args) -> dict:
    return {"aiqc": secondorder.aiqc(p.f, p.vec("x"))}


def cmd_sum_rule(p: _Problem, args) -> dict:
    g = p.point()
    u = p.vec("u")
    ok = secondorder.sum_rule_check(g, u)
    return {"sum_rule": ok, "value": cone_json(secondorder.value_exact(g, u))}


def cmd_closed_form(p: _Problem, args) -> dict:
    fam = args.family
    if fam is None:
        raise ContractError("closed-form needs --family")
    if fam == "cmax":
        x = p.vec("x")
        return {"value": cone_json(closedforms.component_max_value(x, p.vec("v", len(x)), p.vec("u", len(x))))}
    if fam == "infnorm":
        v = p.vec("v")
        cone, flag = closedforms.inf_norm_value_bound(v, p.vec("u", len(v)), literal=bool(p.options.get("literal", False)))
        return {"domain": cone_json(closedforms.inf_norm_domain(v)), "value": cone_json(cone), "equality": flag}
    if fam == "box":
        v = p.vec("v")
        dom, val, _ = closedforms.box_indicator_domain_and_value(v, p.vec("x", len(v)), p.vec("u", len(v)))
        return {"domain": cone_json(dom), "value": None if val is None else cone_json(val)}
    x = p.vec("x")
    dom, val, _ = closedforms.one_norm_domain_and_value(x, p.vec("v", len(x)), p.vec("w", len(x)))
    return {"domain": cone_json(dom), "value": None if val is None else cone_json(val)}


def _check_json(cs: Sequence, **where) -> list:
    return [{"name": c.name, "passed": c.passed, "detail": c.detail, **where} for c in cs]


def cmd_verify(p: _Problem, args) -> dict:
    probes = int(p.options.get("probes", 50))
    out = []
    if p.f is None:
        if not p.query.get("corpus", False):
            raise ContractError("verify needs a function or query.corpus = true")
        for name, f, pts in corpus():
            for x, v in pts:
                out += _check_json(checks.run_point_checks(f, x, v, probes, args.parallel), instance=name, x=vector_json(x), v=vector_json(v))
    else:
        raw = p.query.get("points") or [{"x": p.query.get("x"), "v": p.query.get("v")}]
        for pt in raw:
            x = parse_vector(pt.get("x"), p.f.dim, "x")
            v = parse_vector(pt.get("v"), p.f.dim, "v")
            out += _check_json(checks.run_point_checks(p.f, x, v, probes, args.parallel), x=vector_json(x), v=vector_json(v))
    return {"checks": out, "all_passed": all(c["passed"] for c in out)}


HANDLERS = {
    "eval": cmd_eval,
    "activity": cmd_activity,
    "subdiff": cmd_subdiff,
    "decompose": cmd_decompose,
    "prenormal": cmd_prenormal,
    "precoderivative": cmd_precoderivative,
    "normal-cone": cmd_normal_cone,
    "dom2": cmd_dom2,
    "value2": cmd_value2,
    "aiqc": cmd_aiqc,
    "sum-rule": cmd_sum_rule,
    "closed-form": cmd_closed_form,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="artifact", description="Exact first- and second-order objects of convex piecewise linear functions.")
    parser.add_argument("command", choices=SUBCOMMANDS)
    parser.add_argument("--input", "-i", default="-", help="problem file (default: stdin)")
    parser.add_argument("--output", "-o", default="-", help="result file (default: stdout)")
    parser.add_argument("--pretty", action="store_true", help="indent the JSON output")
    parser.add_argument("--parallel", type=int, default=1, metavar="N", help="worker processes for quadruple enumeration")
    parser.add_argument("--family", choices=FAMILIES, help="closed-form family")
    parser.add_argument("--verbose", "-v", action="store_true")
    return parser


def _read(path: str) -> Any:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return json.loads(text)


def _write(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def run(argv: Optional[Sequence[str]] = None) -> tuple:
    """Execute one command; returns ``(exit_code, payload)`` without writing anything."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if args.parallel < 1:
        return 2, {"error": {"code": "contract", "message": "--parallel must be at least 1"}}
    try:
        data = _read(args.input)
    except (OSError, UnicodeDecodeError) as exc:
        return 2, {"error": {"code": "io", "message": str(exc)}}
    except json.JSONDecodeError as exc:
        return 2, {"error": {"code": "parse", "message": str(exc)}}
    try:
        need_function = args.command not in ("closed-form", "verify")
        problem = _Problem(data, need_function)
        return 0, HANDLERS[args.command](problem, args)
    except (ContractError, CapabilityError) as exc:
        return 2, {"error": {"code": exc.code, "message": str(exc)}}
    except MathError as exc:
        return 3, {"error": {"code": exc.code, "message": str(exc)}}
    except ArtifactError as exc:
        return 2, {"error": {"code": exc.code, "message": str(exc)}}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    code, payload = run(argv)
    _write(args.output, dumps(payload, args.pretty))
    return code


if __name__ == "__main__":
    sys.exit(main())
