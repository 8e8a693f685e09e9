"""Limiting normal cones to the subdifferential graph and second-order subdifferentials.

The central object is the family of nested index quadruples
``(P1, Q1, P2, Q2)`` with ``P1 ⊆ Q1 ⊆ K`` and ``P2 ⊆ Q2 ⊆ I`` such that the
base subgradient is representable over ``(P1, P2)`` and some point has
activity pattern exactly ``(Q1, Q2)``.  The limiting normal cone is the union
of the product cones attached to these quadruples, and the second-order
subdifferential is read off from it through the coderivative sign
convention ``(w, -u) ∈ N``.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from . import lp
from .cones import (
    ConeProduct,
    ConeUnion,
    GeneratedCone,
    HalfspaceCone,
    cones_equal,
    double_description,
    member_generated,
    member_halfspace,
    minkowski_sum,
)
from .cpwl import CpwlFunction, _vec, activity, hull_cone_member
from .errors import DomainError, QualificationError
from .exactla import dot, neg, rank, sub
from .graphgeo import GraphPoint, build_F, build_G, graph_point

log = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class IndexQuadruple:
    P1: frozenset
    Q1: frozenset
    P2: frozenset
    Q2: frozenset

    def sets(self):
        return self.P1, self.Q1, self.P2, self.Q2


@dataclass(frozen=True)
class FeatureSets:
    gamma1: frozenset
    gamma2: frozenset


@dataclass(frozen=True)
class DirectionActivity:
    i01: frozenset
    igt1: frozenset
    i02: frozenset
    igt2: frozenset


def d_member(f: CpwlFunction, v: Sequence, P1, P2) -> bool:
    """Whether ``v`` lies in the hull of the gradients in P1 plus the cone of normals in P2."""
    return hull_cone_member(_vec(v, f.dim), [f.a(i) for i in sorted(P1)], [f.d(t) for t in sorted(P2)])


def stratum_system(f: CpwlFunction, Q1, Q2) -> lp.LinearSystem:
    """Points whose maximising pieces are exactly Q1 and whose active constraints are exactly Q2."""
    Q1, Q2 = sorted(Q1), set(Q2)
    ref = Q1[0]
    eq, lt = [], []
    for i in Q1[1:]:
        eq.append((sub(f.a(i), f.a(ref)), f.alpha(i) - f.alpha(ref)))
    for k in sorted(f.T1 - set(Q1)):
        lt.append((sub(f.a(k), f.a(ref)), f.alpha(k) - f.alpha(ref)))
    for t in sorted(f.T2):
        (eq if t in Q2 else lt).append((f.d(t), f.beta(t)))
    return lp.LinearSystem(f.dim, eq_rows=eq, lt_rows=lt)


@lru_cache(maxsize=None)
def _h_cached(f: CpwlFunction, Q1: frozenset, Q2: frozenset):
    if not Q1:
        return None
    return lp.strictly_feasible(stratum_system(f, Q1, Q2))


def h_nonempty(f: CpwlFunction, Q1, Q2) -> Optional[tuple]:
    """A point with activity pattern exactly (Q1, Q2), or None."""
    return _h_cached(f, frozenset(Q1), frozenset(Q2))


def _subsets(items: Sequence) -> list:
    """All subsets of ``items`` in increasing bitmask order."""
    return [frozenset(x for k, x in enumerate(items) if mask >> k & 1) for mask in range(1 << len(items))]


def _d_task(args):
    f, v, P1, P2 = args
    return d_member(f, v, P1, P2)


def _h_task(args):
    f, Q1, Q2 = args
    return h_nonempty(f, Q1, Q2) is not None


@lru_cache(maxsize=4096)
def _family(f: CpwlFunction, x: tuple, v: tuple, parallel: int) -> tuple:
    pat = activity(f, x)
    K, I = sorted(pat.K), sorted(pat.I)
    sub_K, sub_I = _subsets(K), _subsets(I)
    pairs = [(A, B) for A in sub_K for B in sub_I]
    d_args = [(f, v, A, B) for A, B in pairs]
    h_args = [(f, A, B) for A, B in pairs]
    if parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            d_ok = list(pool.map(_d_task, d_args, chunksize=8))
            h_ok = list(pool.map(_h_task, h_args, chunksize=8))
    else:
        d_ok = [_d_task(a) for a in d_args]
        h_ok = [_h_task(a) for a in h_args]
    rep = {p for p, ok in zip(pairs, d_ok) if ok}
    strata = {p for p, ok in zip(pairs, h_ok) if ok}
    out = []
    for (P1, P2) in pairs:
        if (P1, P2) not in rep:
            continue
        for (Q1, Q2) in pairs:
            if P1 <= Q1 and P2 <= Q2 and (Q1, Q2) in strata:
                out.append(IndexQuadruple(P1, Q1, P2, Q2))
    log.debug("quadruple family at %s: %d members", x, len(out))
    return tuple(out)


def enumerate_A(g: GraphPoint, parallel: int = 1) -> list:
    """All admissible quadruples at ``g``, in lexicographic bitmask order."""
    return list(_family(g.f, g.x, g.v, max(1, int(parallel))))


def _product(g: GraphPoint, quad: IndexQuadruple) -> ConeProduct:
    return ConeProduct(build_F(g.f, *quad.sets()), build_G(g.f, *quad.sets()))


def limiting_normal_cone(g: GraphPoint, parallel: int = 1) -> ConeUnion:
    return ConeUnion([_product(g, q) for q in enumerate_A(g, parallel)])


def cone_sort_key(c) -> tuple:
    if isinstance(c, GeneratedCone):
        return (sorted(c.span_gens), sorted(c.ray_gens))
    return (sorted(c.eq_normals), sorted(c.ineq_normals))


def second_order_value(g: GraphPoint, u: Sequence, parallel: int = 1) -> ConeUnion:
    """Members are the generated cones of the quadruples whose halfspace cone contains ``-u``.

    An empty union means ``u`` is outside the domain.
    """
    u = _vec(u, g.f.dim)
    members = {}
    for quad in enumerate_A(g, parallel):
        if member_halfspace(neg(u), build_G(g.f, *quad.sets())):
            c = build_F(g.f, *quad.sets())
            members[c] = None
    return ConeUnion(sorted(members, key=cone_sort_key))


def witness_quadruple(g: GraphPoint, u: Sequence) -> IndexQuadruple:
    """The quadruple whose generated cone is the upper estimate at ``u``."""
    act = direction_activity(g, u)
    return IndexQuadruple(act.i01, act.i01 | act.igt1, act.i02, act.i02 | act.igt2)


def feature_sets(g: GraphPoint) -> FeatureSets:
    """Indices whose gradient differences (or normals) vanish on the reference halfspace cone.

    A functional vanishes on a cone exactly when it and its negative lie in
    the polar, which is the reference generated cone.
    """
    f, w, pat = g.f, g.witness, g.pattern
    ref = build_F(f, w.J1, pat.K, w.J2, pat.I)

    def vanishes(c):
        return member_generated(c, ref) and member_generated(neg(c), ref)

    gamma1 = frozenset(i for i in pat.K if all(vanishes(sub(f.a(i), f.a(j))) for j in w.J1))
    gamma2 = frozenset(t for t in pat.I if vanishes(f.d(t)))
    return FeatureSets(gamma1, gamma2)


def second_order_domain(g: GraphPoint) -> HalfspaceCone:
    fs = feature_sets(g)
    f = g.f
    eq = []
    ordered = sorted(fs.gamma1)
    if ordered:
        eq += [sub(f.a(i), f.a(ordered[0])) for i in ordered[1:]]
    eq += [f.d(t) for t in sorted(fs.gamma2)]
    return HalfspaceCone(f.dim, eq, ())


def direction_activity(g: GraphPoint, u: Sequence) -> DirectionActivity:
    """Split active indices by the sign of their functional at ``u``; negative ones go nowhere."""
    f, w, pat = g.f, g.witness, g.pattern
    u = _vec(u, f.dim)
    if not member_halfspace(u, second_order_domain(g)):
        raise DomainError("direction lies outside the second-order domain")
    vals = {i: [dot(sub(f.a(i), f.a(j)), u) for j in w.J1] for i in pat.K}
    i01 = frozenset(i for i, vs in vals.items() if all(s == 0 for s in vs))
    igt1 = frozenset(i for i, vs in vals.items() if all(s > 0 for s in vs))
    i02 = frozenset(t for t in pat.I if dot(f.d(t), u) == 0)
    igt2 = frozenset(t for t in pat.I if dot(f.d(t), u) > 0)
    return DirectionActivity(i01, igt1, i02, igt2)


def value_upper_estimate(g: GraphPoint, u: Sequence) -> GeneratedCone:
    return build_F(g.f, *witness_quadruple(g, u).sets())


def aiqc(f: CpwlFunction, x: Sequence) -> bool:
    """Linear independence of the lifted active gradients (a_i, 1) and normals (d_t, 0)."""
    pat = activity(f, x)
    vecs = [f.a(i) + (Fraction(1),) for i in sorted(pat.K)]
    vecs += [f.d(t) + (Fraction(0),) for t in sorted(pat.I)]
    return rank(vecs) == len(vecs)


def value_exact(g: GraphPoint, u: Sequence) -> GeneratedCone:
    if not aiqc(g.f, g.x):
        raise QualificationError("active gradients and normals are not affinely independent")
    return value_upper_estimate(g, u)


def sum_rule_check(g: GraphPoint, u: Sequence) -> bool:
    """Whether the exact value splits into the max-affine part plus the domain-indicator part."""
    total = value_exact(g, u)
    g_max = graph_point(g.f.pieces_only(), g.x, g.witness.v1)
    g_dom = graph_point(g.f.domain_indicator(), g.x, g.witness.v2)
    return cones_equal(total, minkowski_sum(value_exact(g_max, u), value_exact(g_dom, u)))


def difference_identity_check(g: GraphPoint) -> bool:
    """Halfspace cone on the feature sets versus the difference of the reference cone with itself."""
    f, w, pat = g.f, g.witness, g.pattern
    fs = feature_sets(g)
    left = build_G(f, w.J1, fs.gamma1, w.J2, fs.gamma2)
    ref = double_description(build_G(f, w.J1, pat.K, w.J2, pat.I))
    difference = GeneratedCone(f.dim, list(ref.span_gens) + list(ref.ray_gens), ())
    return cones_equal(left, difference)
