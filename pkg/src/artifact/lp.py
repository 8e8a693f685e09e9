"""Exact linear programming over the rationals.

A dense two-phase simplex method with Bland's anti-cycling rule.  Variables
are free; a row of the form ``-x_j <= 0`` is recognised and turns ``x_j`` into
a sign-constrained column instead of splitting it, which keeps the tableau
small for the multiplier systems used throughout the package.

Strict inequalities never reach the simplex: :func:`strictly_feasible`
maximises a gap variable instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ContractError
from .exactla import Vector, dot

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

Row = tuple  # (coefficients, rhs)


def _rows(rows, dim: int) -> tuple:
    out = []
    for coeffs, rhs in rows:
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != dim:
            raise ContractError(f"row of length {len(coeffs)} in a system of dimension {dim}")
        out.append((coeffs, Fraction(rhs)))
    return tuple(out)


@dataclass(frozen=True)
class LinearSystem:
    """Equalities, weak inequalities and strict inequalities in ``dim`` variables."""

    dim: int
    eq_rows: tuple = ()
    le_rows: tuple = ()
    lt_rows: tuple = ()

    def __post_init__(self):
        if self.dim < 0:
            raise ContractError("dimension must be nonnegative")
        object.__setattr__(self, "eq_rows", _rows(self.eq_rows, self.dim))
        object.__setattr__(self, "le_rows", _rows(self.le_rows, self.dim))
        object.__setattr__(self, "lt_rows", _rows(self.lt_rows, self.dim))

    def satisfied_by(self, x: Sequence) -> bool:
        return (
            all(dot(r, x) == b for r, b in self.eq_rows)
            and all(dot(r, x) <= b for r, b in self.le_rows)
            and all(dot(r, x) < b for r, b in self.lt_rows)
        )


@dataclass(frozen=True)
class LpOutcome:
    status: str
    witness: Optional[Vector] = None
    optimum: Optional[Fraction] = None

    @property
    def ok(self) -> bool:
        return self.status == FEASIBLE


class _Tableau:
    def __init__(self, rows: list, rhs: list, basis: list):
        self.t = [r + [b] for r, b in zip(rows, rhs)]
        self.basis = basis
        self.z: list = []

    def set_objective(self, costs: list):
        # z_j = c_B B^-1 A_j - c_j ; optimal for maximisation when all z_j >= 0
        z = [-c for c in costs] + [Fraction(0)]
        for r, b in enumerate(self.basis):
            cb = costs[b]
            if cb:
                row = self.t[r]
                z = [zj + cb * tj for zj, tj in zip(z, row)]
        self.z = z

    def pivot(self, r: int, c: int):
        row = self.t[r]
        p = row[c]
        if p != 1:
            row = [x / p for x in row]
            self.t[r] = row
        for i, other in enumerate(self.t):
            if i != r:
                f = other[c]
                if f:
                    self.t[i] = [a - f * b if b else a for a, b in zip(other, row)]
        f = self.z[c]
        if f:
            self.z = [a - f * b if b else a for a, b in zip(self.z, row)]
        self.basis[r] = c

    def run(self, allowed: int) -> str:
        """Iterate with Bland's rule over columns ``0..allowed-1``."""
        while True:
            enter = next((j for j in range(allowed) if self.z[j] < 0), None)
            if enter is None:
                return FEASIBLE
            best = None
            for r, row in enumerate(self.t):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], enter)


def _solve(sys: LinearSystem, objective: Optional[Sequence]) -> LpOutcome:
    if sys.lt_rows:
        raise ContractError("strict rows must go through strictly_feasible")
    n = sys.dim

    nonneg = set()
    le_rows = []
    for coeffs, rhs in sys.le_rows:
        nz = [j for j, c in enumerate(coeffs) if c]
        if rhs == 0 and len(nz) == 1 and coeffs[nz[0]] < 0:
            nonneg.add(nz[0])
        else:
            le_rows.append((coeffs, rhs))

    # structural columns: positive part of every variable, negative part of free ones
    pos_col = list(range(n))
    neg_col: dict[int, int] = {}
    ncol = n
    for j in range(n):
        if j not in nonneg:
            neg_col[j] = ncol
            ncol += 1
    n_struct = ncol
    n_slack = len(le_rows)
    ncol += n_slack

    def expand(coeffs):
        out = [Fraction(0)] * ncol
        for j, c in enumerate(coeffs):
            if c:
                out[pos_col[j]] = c
                if j in neg_col:
                    out[neg_col[j]] = -c
        return out

    rows, rhs, basis = [], [], []
    for coeffs, b in sys.eq_rows:
        row = expand(coeffs)
        if b < 0:
            row, b = [-x for x in row], -b
        rows.append(row)
        rhs.append(b)
        basis.append(None)
    for k, (coeffs, b) in enumerate(le_rows):
        row = expand(coeffs)
        row[n_struct + k] = Fraction(1)
        if b < 0:
            row, b = [-x for x in row], -b
            basis.append(None)
        else:
            basis.append(n_struct + k)
        rows.append(row)
        rhs.append(b)

    art_rows = [r for r, b in enumerate(basis) if b is None]
    n_art = len(art_rows)
    total = ncol + n_art
    for r in range(len(rows)):
        rows[r] = rows[r] + [Fraction(0)] * n_art
    for k, r in enumerate(art_rows):
        rows[r][ncol + k] = Fraction(1)
        basis[r] = ncol + k

    tab = _Tableau(rows, rhs, basis)
    if n_art:
        tab.set_objective([Fraction(0)] * ncol + [Fraction(-1)] * n_art)
        tab.run(total)
        if tab.z[-1] < 0:
            return LpOutcome(INFEASIBLE)
        # drive remaining (zero-valued) artificials out of the basis
        r = 0
        while r < len(tab.t):
            if tab.basis[r] >= ncol:
                c = next((j for j in range(ncol) if tab.t[r][j] != 0), None)
                if c is None:
                    del tab.t[r]
                    del tab.basis[r]
                    continue
                tab.pivot(r, c)
            r += 1
        tab.t = [row[:ncol] + [row[-1]] for row in tab.t]

    costs = [Fraction(0)] * ncol
    if objective is not None:
        for j, c in enumerate(objective):
            c = Fraction(c)
            costs[pos_col[j]] = c
            if j in neg_col:
                costs[neg_col[j]] = -c
    tab.set_objective(costs)
    status = tab.run(ncol) if objective is not None else FEASIBLE
    if status == UNBOUNDED:
        return LpOutcome(UNBOUNDED)

    values = [Fraction(0)] * ncol
    for r, b in enumerate(tab.basis):
        values[b] = tab.t[r][-1]
    x = tuple(values[pos_col[j]] - (values[neg_col[j]] if j in neg_col else 0) for j in range(n))
    opt = tab.z[-1] if objective is not None else None
    return LpOutcome(FEASIBLE, x, opt)


def feasible(sys: LinearSystem) -> LpOutcome:
    """A vertex witness of ``sys`` or an infeasibility verdict."""
    return _solve(sys, None)


def maximize(objective: Sequence, sys: LinearSystem) -> LpOutcome:
    if len(objective) != sys.dim:
        raise ContractError("objective has the wrong dimension")
    return _solve(sys, objective)


def strictly_feasible(sys: LinearSystem) -> Optional[Vector]:
    """A point satisfying every row, the strict ones strictly; None if there is none."""
    if not sys.lt_rows:
        out = feasible(sys)
        return out.witness if out.ok else None
    n = sys.dim
    zero = (Fraction(0),)
    lifted = LinearSystem(
        n + 1,
        eq_rows=[(r + zero, b) for r, b in sys.eq_rows],
        le_rows=[(r + zero, b) for r, b in sys.le_rows]
        + [(r + (Fraction(1),), b) for r, b in sys.lt_rows]
        + [((Fraction(0),) * n + (Fraction(1),), Fraction(1))],
    )
    out = maximize((Fraction(0),) * n + (Fraction(1),), lifted)
    if not out.ok or out.optimum <= 0:
        return None
    return out.witness[:n]
