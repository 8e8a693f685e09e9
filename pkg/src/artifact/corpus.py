"""Small handcrafted instances in one and two dimensions, with graph points.

Used by the test suite and by ``artifact verify --corpus``.  Each instance
comes with a deterministic list of points ``(x, v)`` on the subdifferential
graph: for every realisable activity stratum, one interior witness ``x`` and
a few subgradients built from the active gradients and normals there.
"""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Sequence

from .cpwl import CpwlFunction, box_indicator, component_max, inf_norm, one_norm, staircase
from .exactla import add, scale, vector
from .secondorder import _subsets, h_nonempty


def _f(dim, pieces, constraints=()):
    return CpwlFunction(dim, [(vector(a), Q(al)) for a, al in pieces], [(vector(d), Q(b)) for d, b in constraints])


def instances() -> dict:
    """Name to function, in a fixed order."""
    one = [
        ("staircase", staircase()),
        ("abs", _f(1, [((1,), 0), ((-1,), 0)])),
        ("relu_halfline", _f(1, [((1,), 0), ((0,), 0)], [((-1,), 1)])),
        ("interval_indicator", _f(1, [((0,), 0)], [((1,), 1), ((-1,), 0)])),
        ("three_slopes", _f(1, [((-1,), 0), ((0,), 0), ((1,), -1)])),
        ("duplicate_piece", _f(1, [((1,), 0), ((1,), 0), ((-1,), 0)])),
        ("duplicate_constraint", _f(1, [((2,), 0), ((1,), 1)], [((1,), 3), ((2,), 6), ((-1,), 3)])),
        ("interior_slope", _f(1, [((-1,), 0), ((0,), 0), ((1,), 0)])),
    ]
    two = [
        ("inf_norm", inf_norm(2)),
        ("one_norm", one_norm(2)),
        ("component_max", component_max(2)),
        ("box_indicator", box_indicator(2)),
        ("boxed_max", _f(2, [((1, 0), 0), ((0, 1), 0)], [((1, 0), 1), ((0, 1), 1), ((-1, 0), 1), ((0, -1), 1)])),
        ("max_with_zero", _f(2, [((1, 0), 0), ((0, 1), 0), ((0, 0), 0)])),
        ("simplex_indicator", _f(2, [((0, 0), 0)], [((-1, 0), 0), ((0, -1), 0), ((1, 1), 1)])),
        ("abs_on_halfplane", _f(2, [((1, 0), 0), ((-1, 0), 0)], [((0, 1), 0)])),
        ("pyramid", _f(2, [((1, 0), 0), ((0, 1), 0), ((-1, -1), 0)])),
        ("hull_midpoint", _f(2, [((1, 0), 0), ((-1, 0), 0), ((0, 0), 0)])),
        ("linear_on_quadrant", _f(2, [((1, 2), 0)], [((-1, 0), 0), ((0, -1), 0)])),
        ("shifted_pieces", _f(2, [((1, 0), -1), ((0, 1), 0), ((-1, -1), -1)], [((1, 0), 2)])),
        ("max_on_triangle", _f(2, [((1, 0), 0), ((0, 1), 0)], [((-1, 0), 0), ((0, -1), 0), ((1, 1), 2)])),
        ("wedge_domain", _f(2, [((1, 0), 0)], [((1, -1), 0), ((-1, -1), 0)])),
        ("repeated_normal", _f(2, [((0, 1), 0), ((0, -1), 0)], [((1, 0), 0), ((2, 0), 0)])),
    ]
    return dict(one + two)


def _candidates(f: CpwlFunction, Q1, Q2) -> list:
    grads = [f.a(i) for i in sorted(Q1)]
    normals = [f.d(t) for t in sorted(Q2)]
    centre = scale(Q(1, len(grads)), _sum(grads, f.dim))
    out = [centre] + grads
    for d in normals:
        out.append(add(centre, d))
        out.append(add(grads[0], scale(Q(1, 2), d)))
    if len(normals) > 1:
        out.append(add(centre, _sum(normals, f.dim)))
    return out


def _sum(vs: Sequence, dim: int):
    total = vector([0] * dim)
    for v in vs:
        total = add(total, v)
    return total


def graph_points(f: CpwlFunction, limit: int = 8) -> list:
    """Deterministic graph points ``(x, v)``, biased towards the most degenerate strata."""
    strata = []
    for Q1 in _subsets(sorted(f.T1)):
        for Q2 in _subsets(sorted(f.T2)):
            x = h_nonempty(f, Q1, Q2)
            if x is not None:
                strata.append((-(len(Q1) + len(Q2)), sorted(Q1), sorted(Q2), x))
    strata.sort()
    queues = [[(x, v) for v in _candidates(f, Q1, Q2)] for _, Q1, Q2, x in strata]
    out, seen = [], set()
    depth = 0
    while len(out) < limit and any(depth < len(q) for q in queues):
        for q in queues:
            if depth < len(q) and q[depth] not in seen and len(out) < limit:
                seen.add(q[depth])
                out.append(q[depth])
        depth += 1
    return out


def corpus(limit: int = 8) -> list:
    """``(name, function, points)`` triples for every instance."""
    return [(name, f, graph_points(f, limit)) for name, f in instances().items()]
