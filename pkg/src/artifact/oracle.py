"""Brute-force geometry of the subdifferential graph for small dimensions.

The graph is assembled as a finite union of polyhedra ``X × V`` (one per
realisable activity pattern) and its normal cones are computed with two
classical facts only: the regular normal cone to a polyhedron is generated
by its active rows, and the regular normal cone to a finite union at a
common point is the intersection of the members' cones.  Limiting normal
cones come from enumerating the cells of the central hyperplane arrangement
formed by the rows active at the base point.

Nothing here uses the quadruple family or the index-set cones of the
formula modules; it exists to check them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from . import lp
from .cones import ConeUnion, GeneratedCone, HalfspaceCone, double_description, intersect, polar_of_generated, to_halfspace
from .cpwl import CpwlFunction, _vec, activity
from .errors import CapabilityError, DomainError
from .exactla import Vector, dot, neg, primitive, sub, zeros

ORACLE_DIMENSION_BOUND = 2


@dataclass(frozen=True)
class GraphStratum:
    """Closure of the points with activity ``(q1, q2)`` paired with their common subdifferential."""

    q1: frozenset
    q2: frozenset
    x_block: lp.LinearSystem
    v_block: lp.LinearSystem

    def contains(self, x: Sequence, v: Sequence) -> bool:
        return self.x_block.satisfied_by(x) and self.v_block.satisfied_by(v)

    def lifted_rows(self) -> tuple:
        """Equality and inequality rows of the product polyhedron in (x, v) space."""
        n = self.x_block.dim
        pad = zeros(n)
        eq = [(r + pad, b) for r, b in self.x_block.eq_rows] + [(pad + r, b) for r, b in self.v_block.eq_rows]
        le = [(r + pad, b) for r, b in self.x_block.le_rows] + [(pad + r, b) for r, b in self.v_block.le_rows]
        return eq, le


def hull_hrep(points: Sequence, rays: Sequence, dim: int) -> lp.LinearSystem:
    """Inequality description of ``co(points) + cone(rays)``.

    The set is the slice at height one of the cone generated by the points
    lifted to height one and the rays lifted to height zero; the rows come
    from the generators of that cone's polar.
    """
    lifted = [tuple(p) + (Fraction(1),) for p in points] + [tuple(r) + (Fraction(0),) for r in rays]
    polar = double_description(polar_of_generated(GeneratedCone(dim + 1, (), lifted)))
    eq, le = [], []
    for h in polar.span_gens:
        if any(h[:dim]):
            eq.append((h[:dim], -h[dim]))
    for h in polar.ray_gens:
        if any(h[:dim]):
            le.append((h[:dim], -h[dim]))
    return lp.LinearSystem(dim, eq_rows=eq, le_rows=le)


def _closure_rows(f: CpwlFunction, q1, q2):
    q1 = sorted(q1)
    ref = q1[0]
    eq, le = [], []
    for i in q1[1:]:
        eq.append((sub(f.a(i), f.a(ref)), f.alpha(i) - f.alpha(ref)))
    for k in sorted(f.T1 - set(q1)):
        le.append((sub(f.a(k), f.a(ref)), f.alpha(k) - f.alpha(ref)))
    for t in sorted(f.T2):
        (eq if t in q2 else le).append((f.d(t), f.beta(t)))
    return eq, le


def _realisable(f: CpwlFunction, q1, q2) -> bool:
    eq, le = _closure_rows(f, q1, q2)
    return lp.strictly_feasible(lp.LinearSystem(f.dim, eq_rows=eq, lt_rows=le)) is not None


@lru_cache(maxsize=256)
def graph_strata(f: CpwlFunction) -> tuple:
    out = []
    pieces, cons = sorted(f.T1), sorted(f.T2)
    for m1 in range(1, 1 << len(pieces)):
        q1 = frozenset(p for k, p in enumerate(pieces) if m1 >> k & 1)
        for m2 in range(1 << len(cons)):
            q2 = frozenset(t for k, t in enumerate(cons) if m2 >> k & 1)
            if not _realisable(f, q1, q2):
                continue
            eq, le = _closure_rows(f, q1, q2)
            x_block = lp.LinearSystem(f.dim, eq_rows=eq, le_rows=le)
            v_block = hull_hrep([f.a(i) for i in sorted(q1)], [f.d(t) for t in sorted(q2)], f.dim)
            out.append(GraphStratum(q1, q2, x_block, v_block))
    return tuple(out)


def graph_member(f: CpwlFunction, x: Sequence, v: Sequence) -> bool:
    x, v = _vec(x, f.dim), _vec(v, f.dim)
    return any(s.contains(x, v) for s in graph_strata(f))


def _normal_cone_of_union(strata: Sequence, z: Sequence) -> Optional[HalfspaceCone]:
    """Regular normal cone at ``z`` to the union of the stratum products, or None off the union."""
    n2 = len(z)
    cones = []
    for s in strata:
        eq, le = s.lifted_rows()
        if not (all(dot(r, z) == b for r, b in eq) and all(dot(r, z) <= b for r, b in le)):
            continue
        active = [r for r, b in le if dot(r, z) == b]
        cones.append(to_halfspace(GeneratedCone(n2, [r for r, _ in eq], active)))
    if not cones:
        return None
    return intersect(*cones)


def _check_dim(f: CpwlFunction, bound: int):
    if f.dim > bound:
        raise CapabilityError(f"the graph oracle is limited to dimension {bound}, got {f.dim}")


def prenormal_oracle(f: CpwlFunction, x: Sequence, v: Sequence, bound: int = ORACLE_DIMENSION_BOUND) -> HalfspaceCone:
    """Regular normal cone to the graph at (x, v), in (x, v) space of dimension 2n."""
    _check_dim(f, bound)
    x, v = _vec(x, f.dim), _vec(v, f.dim)
    out = _normal_cone_of_union(graph_strata(f), x + v)
    if out is None:
        raise DomainError("point is not on the subdifferential graph")
    return out


def _canonical(h: Vector) -> tuple:
    """Primitive representative of the line through ``h`` and the sign relating them."""
    p = primitive(h)
    lead = next(c for c in p if c != 0)
    if lead < 0:
        return neg(p), -1
    return p, 1


def limiting_oracle(f: CpwlFunction, x: Sequence, v: Sequence, bound: int = ORACLE_DIMENSION_BOUND) -> ConeUnion:
    """Limiting normal cone to the graph at (x, v) as a union of halfspace cones in (x, v) space.

    Every cell of the arrangement of rows active at the base point is
    visited (pruned to cells that meet the graph); one exact point of each
    cell, close enough that no other row changes sign, contributes its
    regular normal cone.
    """
    _check_dim(f, bound)
    x, v = _vec(x, f.dim), _vec(v, f.dim)
    z0 = x + v
    strata = graph_strata(f)
    here = [s for s in strata if s.contains(x, v)]
    if not here:
        raise DomainError("point is not on the subdifferential graph")

    planes: list = []
    index: dict = {}
    # per stratum: list of (plane, kind, sign) where kind is "eq" or "le"
    local = []
    for s in here:
        eq, le = s.lifted_rows()
        rows = []
        for kind, group in (("eq", eq), ("le", le)):
            for r, b in group:
                if dot(r, z0) != b or not any(r):
                    continue
                key, sign = _canonical(r)
                if key not in index:
                    index[key] = len(planes)
                    planes.append(key)
                rows.append((index[key], kind, sign))
        local.append(rows)

    def compatible(rows, signs) -> bool:
        for p, kind, sign in rows:
            if p >= len(signs):
                continue
            if kind == "eq" and signs[p] != 0:
                return False
            if kind == "le" and sign * signs[p] > 0:
                return False
        return True

    def realise(signs) -> Optional[Vector]:
        eq = [(planes[p], 0) for p, s in enumerate(signs) if s == 0]
        lt = [(planes[p] if s < 0 else neg(planes[p]), 0) for p, s in enumerate(signs) if s != 0]
        return lp.strictly_feasible(lp.LinearSystem(len(z0), eq_rows=eq, lt_rows=lt))

    cells = []
    stack = [()]
    while stack:
        signs = stack.pop()
        if not any(compatible(rows, signs) for rows in local):
            continue
        d = realise(signs)
        if d is None:
            continue
        if len(signs) == len(planes):
            cells.append(d)
            continue
        for s in (1, 0, -1):
            stack.append(signs + (s,))

    members = {}
    for d in cells:
        z = _nearby_point(strata, z0, d)
        cone = _normal_cone_of_union(strata, z)
        if cone is not None:
            members[cone] = None
    return ConeUnion(sorted(members, key=lambda c: (sorted(c.eq_normals), sorted(c.ineq_normals))))


def _nearby_point(strata: Sequence, z0: Vector, d: Vector) -> Vector:
    """``z0 + t d`` with ``t > 0`` small enough that no row inactive at ``z0`` becomes active.

    Rows strict at ``z0`` stay strict, and for every stratum missing ``z0``
    one violated row stays violated.
    """
    if not any(d):
        return z0
    t = Fraction(1)
    for s in strata:
        eq, le = s.lifted_rows()
        inside = all(dot(r, z0) == b for r, b in eq) and all(dot(r, z0) <= b for r, b in le)
        if inside:
            for r, b in le:
                slack = b - dot(r, z0)
                rate = dot(r, d)
                if slack > 0 and rate > 0:
                    t = min(t, slack / rate / 2)
        else:
            violated = [(r, b) for r, b in eq if dot(r, z0) != b] + [(r, b) for r, b in le if dot(r, z0) > b]
            r, b = violated[0]
            gap = abs(dot(r, z0) - b)
            rate = abs(dot(r, d))
            if rate > 0:
                t = min(t, gap / rate / 2)
    return tuple(a + t * c for a, c in zip(z0, d))


def subgradient_polyhedron_hrep(f: CpwlFunction, x: Sequence) -> lp.LinearSystem:
    """Inequality description of the subdifferential at ``x`` (dimension at most 4)."""
    if f.dim > 4:
        raise CapabilityError("subdifferential H-representation is limited to dimension 4")
    pat = activity(f, _vec(x, f.dim))
    return hull_hrep([f.a(i) for i in sorted(pat.K)], [f.d(t) for t in sorted(pat.I)], f.dim)


def polyhedron_normal_cone(poly: lp.LinearSystem, point: Sequence) -> GeneratedCone:
    """Normal cone of a polyhedron at one of its points: equality rows span, active rows generate."""
    if not poly.satisfied_by(point):
        raise DomainError("point is not in the polyhedron")
    active = [r for r, b in poly.le_rows if dot(r, point) == b]
    return GeneratedCone(poly.dim, [r for r, _ in poly.eq_rows], active)


def polyhedron_tangent_cone(poly: lp.LinearSystem, point: Sequence) -> HalfspaceCone:
    return polar_of_generated(polyhedron_normal_cone(poly, point))
