"""Cross-checks between the formula modules and the brute-force oracle.

Each check returns a ``Check`` record; ``run_point_checks`` bundles them
for one graph point and is what ``artifact verify`` reports.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cones import (
    ConeProduct,
    HalfspaceCone,
    as_generated,
    contains,
    cones_equal,
    covered_by_union,
    double_description,
    member,
    member_halfspace,
    negate_halfspace,
    polar_of_generated,
    to_halfspace,
    unions_equal,
)
from .cpwl import CpwlFunction, activity, hull_cone_member, in_cell, subdifferential
from .exactla import add, neg, scale, zeros
from .graphgeo import GraphPoint, build_G, graph_point, invariance_check, normal_cone_at_subgradient, prenormal_cone_graph, tangent_cone_at_subgradient
from .oracle import ORACLE_DIMENSION_BOUND, limiting_oracle, polyhedron_normal_cone, prenormal_oracle, subgradient_polyhedron_hrep
from .secondorder import (
    _subsets,
    aiqc,
    difference_identity_check,
    enumerate_A,
    h_nonempty,
    limiting_normal_cone,
    second_order_domain,
    second_order_value,
    sum_rule_check,
    value_exact,
    value_upper_estimate,
)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


def lift_product(prod: ConeProduct) -> HalfspaceCone:
    """The product cone as one halfspace cone in (x, v) space."""
    n = prod.first.dim
    pad = zeros(n)
    first = to_halfspace(prod.first)
    eq = [h + pad for h in first.eq_normals] + [pad + h for h in prod.second.eq_normals]
    ineq = [h + pad for h in first.ineq_normals] + [pad + h for h in prod.second.ineq_normals]
    return HalfspaceCone(2 * n, eq, ineq)


def prenormal_agrees(g: GraphPoint) -> bool:
    return cones_equal(prenormal_oracle(g.f, g.x, g.v), lift_product(prenormal_cone_graph(g)))


def _probes(members: Sequence, dim: int, count: int, rng: random.Random) -> list:
    out = []
    gens = [as_generated(m) for m in members]
    for k in range(count):
        if k % 2 == 0 or not gens:
            out.append(tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(dim)))
            continue
        c = rng.choice(gens)
        w = zeros(dim)
        for s in c.span_gens:
            w = add(w, scale(Fraction(rng.randint(-3, 3), rng.randint(1, 2)), s))
        for r in c.ray_gens:
            w = add(w, scale(Fraction(rng.randint(0, 3), rng.randint(1, 2)), r))
        out.append(w)
    return out


def limiting_agrees(g: GraphPoint, probes: int = 50, seed: int = 0, parallel: int = 1) -> tuple:
    """Set equality of the two unions plus agreement on random probes; returns (passed, probes used)."""
    oracle = limiting_oracle(g.f, g.x, g.v).members
    formula = [lift_product(m) for m in limiting_normal_cone(g, parallel).members]
    if not unions_equal(oracle, formula):
        return False, 0
    rng = random.Random(seed)
    pts = _probes(list(oracle) + formula, 2 * g.f.dim, probes, rng)
    for m in list(oracle) + formula:
        gen = as_generated(m)
        pts += list(gen.span_gens) + [neg(s) for s in gen.span_gens] + list(gen.ray_gens)
    for w in pts:
        if any(member(w, m) for m in oracle) != any(member(w, m) for m in formula):
            return False, len(pts)
    return True, len(pts)


def subdifferential_normal_agrees(g: GraphPoint) -> bool:
    """Active rows of the subdifferential's inequality description versus the normal cone formula."""
    poly = subgradient_polyhedron_hrep(g.f, g.x)
    nc = polyhedron_normal_cone(poly, g.v)
    if not cones_equal(nc, normal_cone_at_subgradient(g)):
        return False
    return cones_equal(polar_of_generated(nc), tangent_cone_at_subgradient(g))


def domain_spanning_set(g: GraphPoint) -> list:
    """Plus and minus a basis of the second-order domain, and the zero direction."""
    dom = double_description(second_order_domain(g))
    basis = list(dom.span_gens)
    return [zeros(g.f.dim)] + basis + [neg(b) for b in basis]


def domain_consistent(g: GraphPoint) -> bool:
    """Domain subspace versus directions with a nonempty value, both ways.

    Every spanning direction must give a nonempty value, and every direction
    admitted by some quadruple (the negated halfspace cone) must lie in the
    subspace.
    """
    dom = second_order_domain(g)
    if any(not second_order_value(g, u).members for u in domain_spanning_set(g)):
        return False
    for quad in enumerate_A(g):
        admitted = double_description(negate_halfspace(build_G(g.f, *quad.sets())))
        if not all(member_halfspace(w, dom) for w in admitted.generators()):
            return False
    return True


def upper_estimate_sound(g: GraphPoint) -> bool:
    for u in domain_spanning_set(g):
        est = value_upper_estimate(g, u)
        if not all(contains(est, m) for m in second_order_value(g, u).members):
            return False
    return True


def exact_value_agrees(g: GraphPoint) -> Optional[bool]:
    """Under the qualification condition: exact value equals the union and the sum rule holds; None otherwise."""
    if not aiqc(g.f, g.x):
        return None
    for u in domain_spanning_set(g):
        exact = value_exact(g, u)
        union = second_order_value(g, u).members
        if not (all(contains(exact, m) for m in union) and covered_by_union(exact, list(union))):
            return False
        if not sum_rule_check(g, u):
            return False
    return True


def safe_radius(f: CpwlFunction, x: Sequence) -> Fraction:
    """An L-infinity radius around ``x`` inside which no inactive piece or constraint can become active."""
    pat = activity(f, x)
    slacks = []
    ref = min(pat.K)
    top = f.piece_value(ref, x)
    slacks += [top - f.piece_value(k, x) for k in sorted(f.T1 - pat.K)]
    slacks += [f.beta(t) - sum(a * b for a, b in zip(f.d(t), x)) for t in sorted(f.T2 - pat.I)]
    if not slacks:
        return Fraction(1)
    norm_a = max(sum(abs(c) for c in f.a(i)) for i in f.T1)
    norm_d = max((sum(abs(c) for c in f.d(t)) for t in f.T2), default=0)
    return min(slacks) / (1 + 2 * norm_a + norm_d)


def local_structure_holds(g: GraphPoint, steps: Sequence = (Fraction(1), Fraction(1, 2), Fraction(1, 7))) -> bool:
    """Nearby points (towards each stratum witness, scaled into the safe radius) keep the local structure.

    Their subdifferential sits inside the base one, and when it contains
    the base subgradient they lie in every cell of the support pieces.
    """
    f, x0 = g.f, g.x
    r = safe_radius(f, x0)
    base = subdifferential(f, x0)
    for Q1 in _subsets(sorted(f.T1)):
        for Q2 in _subsets(sorted(f.T2)):
            w = h_nonempty(f, Q1, Q2)
            if w is None:
                continue
            d = tuple(a - b for a, b in zip(w, x0))
            size = max((abs(c) for c in d), default=Fraction(0))
            if size == 0:
                continue
            for s in steps:
                x = tuple(a + s * r * c / size / 2 for a, c in zip(x0, d))
                if not f.in_domain(x):
                    continue
                here = subdifferential(f, x)
                if not all(base.contains(p) for p in here.hull_points):
                    return False
                if not all(_ray_in(base, ray, f) for ray in here.ray_gens):
                    return False
                if here.contains(g.v) and not all(in_cell(f, i, x) for i in g.witness.J1):
                    return False
    return True


def _ray_in(base, ray, f) -> bool:
    # a recession direction of the nearby set must recede in the base set
    return hull_cone_member(ray, [zeros(f.dim)], list(base.ray_gens))


def run_point_checks(f: CpwlFunction, x: Sequence, v: Sequence, probes: int = 50, parallel: int = 1) -> list:
    g = graph_point(f, x, v)
    out = []
    if f.dim <= ORACLE_DIMENSION_BOUND:
        out.append(Check("prenormal_oracle", prenormal_agrees(g)))
        ok, used = limiting_agrees(g, probes, parallel=parallel)
        out.append(Check("limiting_oracle", ok, f"{used} probes"))
    else:
        out.append(Check("prenormal_oracle", True, "skipped: dimension above oracle bound"))
        out.append(Check("limiting_oracle", True, "skipped: dimension above oracle bound"))
    if f.dim <= 4:
        out.append(Check("subdifferential_normal_cone", subdifferential_normal_agrees(g)))
    out.append(Check("invariance", invariance_check(g, trials=4)))
    out.append(Check("domain_consistency", domain_consistent(g)))
    out.append(Check("upper_estimate", upper_estimate_sound(g)))
    exact = exact_value_agrees(g)
    out.append(Check("exact_value_and_sum_rule", exact is not False, "skipped: qualification fails" if exact is None else ""))
    out.append(Check("difference_identity", difference_identity_check(g)))
    out.append(Check("local_structure", local_structure_holds(g)))
    return out
