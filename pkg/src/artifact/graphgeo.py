"""Cones attached to a point of the subdifferential graph.

Everything here is computed from one subgradient decomposition at the base
point.  The cones do not depend on which decomposition is used, and
:func:`invariance_check` tests exactly that.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .cones import (
    ConeProduct,
    GeneratedCone,
    HalfspaceCone,
    cones_equal,
    member_halfspace,
)
from .cpwl import (
    ActivityPattern,
    CpwlFunction,
    SubgradientWitness,
    _vec,
    activity,
    decompose_subgradient,
    witness_from_multipliers,
)
from .errors import ContractError
from .exactla import neg, sub


@dataclass(frozen=True)
class GraphPoint:
    """A pair ``(x, v)`` with ``v`` a subgradient at ``x``, plus its decomposition and activity."""

    f: CpwlFunction
    x: tuple
    v: tuple
    witness: SubgradientWitness
    pattern: ActivityPattern


def graph_point(f: CpwlFunction, x: Sequence, v: Sequence, witness: Optional[SubgradientWitness] = None) -> GraphPoint:
    x, v = _vec(x, f.dim), _vec(v, f.dim)
    pattern = activity(f, x)
    if witness is None:
        witness = decompose_subgradient(f, x, v)
    return GraphPoint(f, x, v, witness, pattern)


def _index_set(s: Iterable[int]) -> frozenset:
    return frozenset(int(i) for i in s)


def _check_chain(f: CpwlFunction, p1, q1, p2, q2):
    p1, q1, p2, q2 = map(_index_set, (p1, q1, p2, q2))
    if not (p1 <= q1 <= f.T1):
        raise ContractError("piece index sets must satisfy P1 ⊆ Q1 ⊆ T1")
    if not (p2 <= q2 <= f.T2):
        raise ContractError("constraint index sets must satisfy P2 ⊆ Q2 ⊆ T2")
    return p1, q1, p2, q2


def _cone_data(f: CpwlFunction, p1, q1, p2, q2):
    """Span part and conic part shared by the generated and the halfspace cone."""
    p1, q1, p2, q2 = _check_chain(f, p1, q1, p2, q2)
    span, rays = [], []
    ordered = sorted(p1)
    if ordered:
        ref = f.a(ordered[0])
        span += [sub(f.a(i), ref) for i in ordered[1:]]
    rays += [sub(f.a(i), f.a(j)) for i in sorted(q1 - p1) for j in ordered]
    span += [f.d(t) for t in sorted(p2)]
    rays += [f.d(t) for t in sorted(q2 - p2)]
    return span, rays


def build_F(f: CpwlFunction, p1, q1, p2, q2) -> GeneratedCone:
    """Span of gradient differences inside P1 and constraint normals in P2, plus
    the cone of differences from Q1\\P1 into P1 and of normals in Q2\\P2."""
    span, rays = _cone_data(f, p1, q1, p2, q2)
    return GeneratedCone(f.dim, span, rays)


def build_G(f: CpwlFunction, p1, q1, p2, q2) -> HalfspaceCone:
    """The same vectors read as equality and inequality normals; the polar of :func:`build_F`."""
    span, rays = _cone_data(f, p1, q1, p2, q2)
    return HalfspaceCone(f.dim, span, rays)


def _reference_sets(g: GraphPoint):
    return g.witness.J1, g.pattern.K, g.witness.J2, g.pattern.I


def normal_cone_at_subgradient(g: GraphPoint) -> HalfspaceCone:
    return build_G(g.f, *_reference_sets(g))


def tangent_cone_at_subgradient(g: GraphPoint) -> GeneratedCone:
    return build_F(g.f, *_reference_sets(g))


def prenormal_cone_graph(g: GraphPoint) -> ConeProduct:
    """Regular normal cone to the graph: tangent cone times normal cone of the subgradient set."""
    return ConeProduct(tangent_cone_at_subgradient(g), normal_cone_at_subgradient(g))


def precoderivative(g: GraphPoint, u: Sequence) -> Optional[GeneratedCone]:
    """The regular coderivative value at ``u``, or None when ``u`` is outside its domain."""
    u = _vec(u, g.f.dim)
    if member_halfspace(neg(u), normal_cone_at_subgradient(g)):
        return tangent_cone_at_subgradient(g)
    return None


def _tangent_via_decomposition(g: GraphPoint) -> GeneratedCone:
    """Tangent cone of the active hull at v1, plus the domain normal cone, plus the ray -v2."""
    f = g.f
    rays = [sub(f.a(i), g.witness.v1) for i in sorted(g.pattern.K)]
    rays += [f.d(t) for t in sorted(g.pattern.I)]
    rays.append(neg(g.witness.v2))
    return GeneratedCone(f.dim, (), rays)


def random_witnesses(g: GraphPoint, trials: int, seed: int = 0) -> list:
    """Up to ``trials`` distinct decompositions of ``g.v``: random vertices and their midpoints."""
    rng = random.Random(seed)
    found = [g.witness]
    keys = {(g.witness.lam, g.witness.mu)}

    def add(w):
        key = (w.lam, w.mu)
        if key not in keys:
            keys.add(key)
            found.append(w)

    for _ in range(6 * trials):
        if len(found) >= trials:
            break
        add(decompose_subgradient(g.f, g.x, g.v, rng=rng))
        if len(found) >= 2 and len(found) < trials:
            a, b = rng.sample(found, 2)
            K = [i for i, _ in a.lam]
            I = [t for t, _ in a.mu]
            lam = [(p + q) / 2 for (_, p), (_, q) in zip(a.lam, b.lam)]
            mu = [(p + q) / 2 for (_, p), (_, q) in zip(a.mu, b.mu)]
            add(witness_from_multipliers(g.f, K, I, lam, mu))
    return found


def invariance_check(g: GraphPoint, trials: int = 4, seed: int = 0) -> bool:
    """Whether the tangent and normal cones agree across several decompositions of ``g.v``."""
    if trials < 2:
        raise ContractError("invariance needs at least two trials")
    ref_F, ref_G = tangent_cone_at_subgradient(g), normal_cone_at_subgradient(g)
    for w in random_witnesses(g, trials, seed)[1:]:
        other = GraphPoint(g.f, g.x, g.v, w, g.pattern)
        if not cones_equal(ref_F, tangent_cone_at_subgradient(other)):
            return False
        if not cones_equal(ref_G, normal_cone_at_subgradient(other)):
            return False
    return True
