"""JSON encoding of rationals, vectors, functions and cones.

Rationals are strings ``"p/q"`` (or ``"p"``); bare JSON integers are accepted
on input.  Index sets are sorted lists of 1-based integers.  Cones in output
are canonicalised: generators are scaled to coprime integers, span
generators get a positive leading entry, zero and repeated generators are
dropped, and lists are sorted.
"""

from __future__ import annotations

import json
import math
from typing import Any, Iterable, Sequence

from .cones import ConeProduct, ConeUnion, GeneratedCone, HalfspaceCone
from .cpwl import CpwlFunction
from .errors import ContractError
from .exactla import format_rational, is_zero, neg, primitive, to_rational


def rational(q) -> str:
    if q == math.inf:
        return "inf"
    return format_rational(q)


def parse_vector(data: Any, dim: int | None = None, name: str = "vector") -> tuple:
    if not isinstance(data, list):
        raise ContractError(f"{name} must be a JSON list")
    v = tuple(to_rational(x) for x in data)
    if dim is not None and len(v) != dim:
        raise ContractError(f"{name} has dimension {len(v)}, expected {dim}")
    return v


def vector_json(v: Sequence) -> list:
    return [rational(x) for x in v]


def index_json(s: Iterable[int]) -> list:
    return sorted(int(i) for i in s)


def function_from_json(data: Any) -> CpwlFunction:
    if not isinstance(data, dict):
        raise ContractError("function must be a JSON object")
    try:
        dim = data["dim"]
        pieces = data["pieces"]
    except KeyError as exc:
        raise ContractError(f"function is missing field {exc.args[0]!r}") from None
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ContractError("dim must be a positive integer")
    if not isinstance(pieces, list) or not pieces:
        raise ContractError("pieces must be a nonempty list")
    cons = data.get("constraints", [])
    if not isinstance(cons, list):
        raise ContractError("constraints must be a list")
    try:
        parsed_pieces = [(parse_vector(p["a"], dim, "a"), to_rational(p["alpha"])) for p in pieces]
        parsed_cons = [(parse_vector(c["d"], dim, "d"), to_rational(c["beta"])) for c in cons]
    except (KeyError, TypeError) as exc:
        raise ContractError(f"malformed piece or constraint: {exc}") from None
    return CpwlFunction(dim, parsed_pieces, parsed_cons)


def function_json(f: CpwlFunction) -> dict:
    return {
        "dim": f.dim,
        "pieces": [{"a": vector_json(a), "alpha": rational(alpha)} for a, alpha in f.pieces],
        "constraints": [{"d": vector_json(d), "beta": rational(beta)} for d, beta in f.constraints],
    }


def _canonical_rays(vs: Iterable[Sequence]) -> list:
    return sorted({primitive(v) for v in vs if not is_zero(v)})


def _canonical_lines(vs: Iterable[Sequence]) -> list:
    out = set()
    for v in vs:
        if is_zero(v):
            continue
        p = primitive(v)
        if next(c for c in p if c != 0) < 0:
            p = neg(p)
        out.add(p)
    return sorted(out)


def generated_json(c: GeneratedCone) -> dict:
    return {
        "span": [vector_json(v) for v in _canonical_lines(c.span_gens)],
        "rays": [vector_json(v) for v in _canonical_rays(c.ray_gens)],
    }


def halfspace_json(c: HalfspaceCone) -> dict:
    return {
        "eq": [vector_json(v) for v in _canonical_lines(c.eq_normals)],
        "ineq": [vector_json(v) for v in _canonical_rays(c.ineq_normals)],
    }


def cone_json(c) -> dict:
    if isinstance(c, GeneratedCone):
        return generated_json(c)
    if isinstance(c, HalfspaceCone):
        return halfspace_json(c)
    if isinstance(c, ConeProduct):
        return {"first": generated_json(c.first), "second": halfspace_json(c.second)}
    raise TypeError(f"not a cone: {c!r}")


def _canonical_key(c) -> tuple:
    if isinstance(c, GeneratedCone):
        return (tuple(_canonical_lines(c.span_gens)), tuple(_canonical_rays(c.ray_gens)))
    if isinstance(c, HalfspaceCone):
        return (tuple(_canonical_lines(c.eq_normals)), tuple(_canonical_rays(c.ineq_normals)))
    return (_canonical_key(c.first), _canonical_key(c.second))


def union_json(u: ConeUnion) -> list:
    """Members as canonical JSON objects, deduplicated and sorted by their canonical generators."""
    keyed = {_canonical_key(m): m for m in u.members}
    return [cone_json(keyed[k]) for k in sorted(keyed)]


def generated_from_json(data: Any, dim: int) -> GeneratedCone:
    return GeneratedCone(dim, [parse_vector(v, dim) for v in data.get("span", [])], [parse_vector(v, dim) for v in data.get("rays", [])])


def halfspace_from_json(data: Any, dim: int) -> HalfspaceCone:
    return HalfspaceCone(dim, [parse_vector(v, dim) for v in data.get("eq", [])], [parse_vector(v, dim) for v in data.get("ineq", [])])


def dumps(obj: Any, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"
