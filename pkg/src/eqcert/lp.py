"""Exact linear programming and vertex enumeration over the rationals.

The solver is a two-phase primal simplex with Bland's anti-cycling rule.
The working tableau is kept in integer form with one shared positive
denominator (integer pivoting), so every pivot is exact integer arithmetic;
results are reported as `Fraction`s.  Ties in the leaving-variable test are
broken by lowest basis index, which together with Bland's entering rule
makes every answer a deterministic function of the input.

`PolytopeSolver` factors the phase-1 work out of repeated optimization over
one feasible system; singleton tests and coordinate bounds re-optimize many
objectives against the same basis.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

LESS_EQUAL = "<="
EQUAL = "=="
GREATER_EQUAL = ">="
_RELATIONS = (LESS_EQUAL, EQUAL, GREATER_EQUAL)

PIVOT_LIMIT_ENV = "EQCERT_LP_PIVOT_LIMIT"


class LpError(ValueError):
    """Malformed linear program input."""


class PivotLimitExceeded(RuntimeError):
    """The simplex hit the iteration cap from EQCERT_LP_PIVOT_LIMIT."""


class VertexEnumerationError(ValueError):
    """Vertex enumeration was asked for an unbounded or oversized region."""


@dataclass(frozen=True)
class LinearConstraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction
    label: str = ""

    def __post_init__(self):
        if self.relation not in _RELATIONS:
            raise LpError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        return sum((c * x for c, x in zip(self.coeffs, point)), Fraction(0))

    def satisfied_by(self, point: Sequence[Fraction]) -> bool:
        lhs = self.evaluate(point)
        if self.relation == LESS_EQUAL:
            return lhs <= self.rhs
        if self.relation == GREATER_EQUAL:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class ConstraintSystem:
    """Linear constraints plus optional per-variable bounds (None = unbounded side)."""

    num_vars: int
    constraints: tuple[LinearConstraint, ...]
    lower: tuple[Fraction | None, ...] = ()
    upper: tuple[Fraction | None, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        lower = self.lower if self.lower else (None,) * self.num_vars
        upper = self.upper if self.upper else (None,) * self.num_vars
        lower = tuple(None if b is None else Fraction(b) for b in lower)
        upper = tuple(None if b is None else Fraction(b) for b in upper)
        if len(lower) != self.num_vars or len(upper) != self.num_vars:
            raise LpError("bounds must list one entry per variable")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        for row in self.constraints:
            if len(row.coeffs) != self.num_vars:
                raise LpError("constraint width disagrees with num_vars")

    def contains(self, point: Sequence[Fraction]) -> bool:
        if len(point) != self.num_vars:
            return False
        for x, lo, up in zip(point, self.lower, self.upper):
            if lo is not None and x < lo:
                return False
            if up is not None and x > up:
                return False
        return all(row.satisfied_by(point) for row in self.constraints)


def nonneg_system(num_vars: int, constraints: Iterable[LinearConstraint]) -> ConstraintSystem:
    """Constraint system with every variable bounded below by zero."""
    zeros = (Fraction(0),) * num_vars
    return ConstraintSystem(num_vars, tuple(constraints), zeros, (None,) * num_vars)


@dataclass(frozen=True)
class LinearProgram:
    system: ConstraintSystem
    objective: tuple[Fraction, ...]
    maximize: bool = True

    def __post_init__(self):
        object.__setattr__(self, "objective", tuple(Fraction(c) for c in self.objective))
        if len(self.objective) != self.system.num_vars:
            raise LpError("objective width disagrees with num_vars")


OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpOutcome:
    status: str
    value: Fraction | None = None
    point: tuple[Fraction, ...] | None = None


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise AssertionError("integer pivot lost exact divisibility")
    return q


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class _StandardForm:
    """min c.y, T y = b, y >= 0 over an integer tableau with common denominator."""

    def __init__(self, system: ConstraintSystem):
        self.system = system
        self.pivot_limit = int(os.environ.get(PIVOT_LIMIT_ENV, "0") or 0)
        self.pivots_used = 0
        # Variable substitutions: each original var becomes one or two
        # nonnegative columns.  kind is one of "shift", "flip", "split".
        self.var_map: list[tuple] = []
        col = 0
        extra_rows: list[LinearConstraint] = []
        for j in range(system.num_vars):
            lo, up = system.lower[j], system.upper[j]
            if lo is not None:
                self.var_map.append(("shift", col, lo))
                col += 1
                if up is not None:
                    coeffs = [Fraction(0)] * system.num_vars
                    coeffs[j] = Fraction(1)
                    extra_rows.append(LinearConstraint(tuple(coeffs), LESS_EQUAL, up))
            elif up is not None:
                self.var_map.append(("flip", col, up))
                col += 1
            else:
                self.var_map.append(("split", col, col + 1))
                col += 2
        self.num_y = col

        rows_frac: list[tuple[list[Fraction], str, Fraction]] = []
        for row in tuple(system.constraints) + tuple(extra_rows):
            coeffs_y = [Fraction(0)] * self.num_y
            rhs = row.rhs
            for j, c in enumerate(row.coeffs):
                if c == 0:
                    continue
                kind = self.var_map[j]
                if kind[0] == "shift":
                    coeffs_y[kind[1]] += c
                    rhs -= c * kind[2]
                elif kind[0] == "flip":
                    coeffs_y[kind[1]] -= c
                    rhs -= c * kind[2]
                else:
                    coeffs_y[kind[1]] += c
                    coeffs_y[kind[2]] -= c
            rows_frac.append((coeffs_y, row.relation, rhs))

        # Normalize signs, scale to integers, lay out columns as
        # [y vars | slacks/surpluses | artificials].
        m = len(rows_frac)
        self.num_slack = sum(1 for _, rel, _ in rows_frac if rel != EQUAL)
        slack_base = self.num_y
        art_base = self.num_y + self.num_slack
        scaled: list[tuple[list[int], str, int]] = []
        for coeffs_y, rel, rhs in rows_frac:
            denom = rhs.denominator
            for c in coeffs_y:
                denom = _lcm(denom, c.denominator)
            ints = [int(c * denom) for c in coeffs_y]
            b = int(rhs * denom)
            if b < 0:
                ints = [-v for v in ints]
                b = -b
                rel = {LESS_EQUAL: GREATER_EQUAL, GREATER_EQUAL: LESS_EQUAL, EQUAL: EQUAL}[rel]
            scaled.append((ints, rel, b))

        self.rows: list[list[int]] = []
        self.basis: list[int] = []
        self.det = 1
        self.artificials: list[int] = []
        slack_idx = slack_base
        art_idx = art_base
        ncols_guess = art_base + m  # upper bound; trimmed after phase 1
        for ints, rel, b in scaled:
            row = ints + [0] * (ncols_guess - self.num_y) + [b]
            if rel == LESS_EQUAL:
                row[slack_idx] = 1
                self.basis.append(slack_idx)
                slack_idx += 1
            elif rel == GREATER_EQUAL:
                row[slack_idx] = -1
                slack_idx += 1
                row[art_idx] = 1
                self.basis.append(art_idx)
                self.artificials.append(art_idx)
                art_idx += 1
            else:
                row[art_idx] = 1
                self.basis.append(art_idx)
                self.artificials.append(art_idx)
                art_idx += 1
            self.rows.append(row)
        self.ncols = art_idx
        for row in self.rows:
            del row[self.ncols:-1]
        self.z: list[int] = [0] * (self.ncols + 1)

    # -- tableau mechanics ------------------------------------------------

    def _pivot(self, p: int, q: int) -> None:
        if self.pivot_limit and self.pivots_used >= self.pivot_limit:
            raise PivotLimitExceeded(
                f"simplex exceeded {self.pivot_limit} pivots ({PIVOT_LIMIT_ENV})"
            )
        self.pivots_used += 1
        rows, det = self.rows, self.det
        prow = rows[p]
        pval = prow[q]
        if pval <= 0:
            raise AssertionError("pivot entry must be positive")
        width = len(prow)
        for r, row in enumerate(itertools.chain(rows, (self.z,))):
            if r == p:
                continue
            factor = row[q]
            if factor == 0 and pval == det:
                continue
            for c in range(width):
                row[c] = _exact_div(row[c] * pval - factor * prow[c], det)
        self.basis[p] = q
        self.det = pval

    def _load_objective(self, cost: Sequence[Fraction]) -> None:
        """Reduced-cost row for `cost` (per y column) at the current basis."""
        denom = 1
        for c in cost:
            denom = _lcm(denom, Fraction(c).denominator)
        ints = [int(Fraction(c) * denom) for c in cost] + [0] * (self.ncols - len(cost))
        z = [v * self.det for v in ints] + [0]
        for row, bvar in zip(self.rows, self.basis):
            cb = ints[bvar]
            if cb == 0:
                continue
            for c in range(len(z)):
                z[c] -= cb * row[c]
        self.z = z

    def _bland_min(self) -> str:
        """Minimize the loaded objective from the current feasible basis."""
        rows, basis = self.rows, self.basis
        rhs = self.ncols
        while True:
            entering = -1
            z = self.z
            for j in range(self.ncols):
                if z[j] < 0:
                    entering = j
                    break
            if entering < 0:
                return OPTIMAL
            leaving = -1
            best_num = best_den = 0
            for r, row in enumerate(rows):
                coeff = row[entering]
                if coeff <= 0:
                    continue
                num = row[rhs]
                if leaving < 0 or num * best_den < best_num * coeff or (
                    num * best_den == best_num * coeff and basis[r] < basis[leaving]
                ):
                    leaving, best_num, best_den = r, num, coeff
            if leaving < 0:
                return UNBOUNDED
            self._pivot(leaving, entering)

    # -- phases -----------------------------------------------------------

    def phase1(self) -> bool:
        """Find a feasible basis; returns False when the system is infeasible."""
        if self.artificials:
            art_cost = [Fraction(0)] * self.num_y
            cost = art_cost + [Fraction(0)] * (self.ncols - self.num_y)
            for a in self.artificials:
                cost[a] = Fraction(1)
            self._load_objective(cost)
            status = self._bland_min()
            if status != OPTIMAL:
                raise AssertionError("phase 1 cannot be unbounded")
            art_set = set(self.artificials)
            for r, bvar in enumerate(self.basis):
                if bvar in art_set and self.rows[r][self.ncols] > 0:
                    return False
            # Drive zero-level artificials out of the basis.
            drop_rows = []
            for r in range(len(self.rows)):
                if self.basis[r] not in art_set:
                    continue
                row = self.rows[r]
                entering = -1
                for j in range(self.num_y + self.num_slack):
                    if row[j] != 0:
                        entering = j
                        break
                if entering < 0:
                    drop_rows.append(r)
                    continue
                if row[entering] < 0:
                    self.rows[r] = [-v for v in row]
                self._pivot(r, entering)
            for r in reversed(drop_rows):
                del self.rows[r]
                del self.basis[r]
        # Trim the artificial block.
        keep = self.num_y + self.num_slack
        if self.ncols > keep:
            for r in range(len(self.rows)):
                row = self.rows[r]
                self.rows[r] = row[:keep] + [row[-1]]
            self.ncols = keep
            self.z = [0] * (self.ncols + 1)
        return True

    def optimize(self, cost_y: Sequence[Fraction]) -> str:
        self._load_objective(cost_y)
        return self._bland_min()

    # -- solution readout ---------------------------------------------------

    def y_values(self) -> list[Fraction]:
        values = [Fraction(0)] * self.ncols
        rhs = self.ncols
        for row, bvar in zip(self.rows, self.basis):
            values[bvar] = Fraction(row[rhs], self.det)
        return values

    def point(self) -> tuple[Fraction, ...]:
        y = self.y_values()
        out = []
        for kind in self.var_map:
            if kind[0] == "shift":
                out.append(kind[2] + y[kind[1]])
            elif kind[0] == "flip":
                out.append(kind[2] - y[kind[1]])
            else:
                out.append(y[kind[1]] - y[kind[2]])
        return tuple(out)

    def cost_for(self, objective: Sequence[Fraction], maximize: bool) -> list[Fraction]:
        """Translate an objective over original vars into min-form y costs."""
        sign = Fraction(-1) if maximize else Fraction(1)
        cost = [Fraction(0)] * self.num_y
        for j, c in enumerate(objective):
            c = sign * Fraction(c)
            if c == 0:
                continue
            kind = self.var_map[j]
            if kind[0] == "shift":
                cost[kind[1]] += c
            elif kind[0] == "flip":
                cost[kind[1]] -= c
            else:
                cost[kind[1]] += c
                cost[kind[2]] -= c
        return cost


class PolytopeSolver:
    """Re-optimizes many objectives over one constraint system, exactly.

    Phase 1 runs once at construction; each `optimize` call warm-starts from
    the previous optimal basis.
    """

    def __init__(self, system: ConstraintSystem):
        self.system = system
        self._form = _StandardForm(system)
        self.feasible = self._form.phase1()

    def feasible_point(self) -> tuple[Fraction, ...] | None:
        if not self.feasible:
            return None
        return self._form.point()

    def optimize(self, objective: Sequence[Fraction], maximize: bool) -> LpOutcome:
        if not self.feasible:
            return LpOutcome(INFEASIBLE)
        if len(objective) != self.system.num_vars:
            raise LpError("objective width disagrees with num_vars")
        status = self._form.optimize(self._form.cost_for(objective, maximize))
        if status == UNBOUNDED:
            return LpOutcome(UNBOUNDED)
        point = self._form.point()
        value = sum((Fraction(c) * x for c, x in zip(objective, point)), Fraction(0))
        return LpOutcome(OPTIMAL, value, point)


def solve(lp: LinearProgram) -> LpOutcome:
    """Exact optimum of a rational LP; the reported point is a basic solution."""
    return PolytopeSolver(lp.system).optimize(lp.objective, lp.maximize)


# -- vertex enumeration ----------------------------------------------------


def _echelon_add(state: list[tuple[int, tuple[Fraction, ...], Fraction]],
                 row: Sequence[Fraction], rhs: Fraction) -> tuple[str, tuple]:
    """Reduce (row, rhs) against an echelon state; classify the result."""
    row = list(row)
    for pivot_col, prow, prhs in state:
        factor = row[pivot_col]
        if factor == 0:
            continue
        scale = factor / prow[pivot_col]
        for c in range(pivot_col, len(row)):
            row[c] -= scale * prow[c]
        rhs -= scale * prhs
    for c, v in enumerate(row):
        if v != 0:
            return "independent", (c, tuple(row), rhs)
    if rhs != 0:
        return "inconsistent", ()
    return "dependent", ()


def _solve_echelon(state: list[tuple[int, tuple[Fraction, ...], Fraction]],
                   num_vars: int) -> tuple[Fraction, ...]:
    x = [Fraction(0)] * num_vars
    for pivot_col, row, rhs in sorted(state, key=lambda item: -item[0]):
        total = rhs
        for c in range(pivot_col + 1, num_vars):
            total -= row[c] * x[c]
        x[pivot_col] = total / row[pivot_col]
    return tuple(x)


def enumerate_vertices(system: ConstraintSystem, max_dim: int = 12) -> list[tuple[Fraction, ...]]:
    """All vertices of a bounded polyhedron, exactly.

    Enumerates full-rank subsets of tight constraints, so the cost is
    combinatorial in the constraint count; refuse anything above `max_dim`
    variables.  Raises on unbounded regions; returns [] when infeasible.
    """
    n = system.num_vars
    if n > max_dim:
        raise VertexEnumerationError(f"{n} variables exceeds the cap of {max_dim}")

    solver = PolytopeSolver(system)
    if not solver.feasible:
        return []
    for j in range(n):
        unit = [Fraction(0)] * n
        unit[j] = Fraction(1)
        for maximize in (True, False):
            if solver.optimize(unit, maximize).status == UNBOUNDED:
                raise VertexEnumerationError("region is unbounded; vertices are not exhaustive")

    eqs: list[tuple[tuple[Fraction, ...], Fraction]] = []
    ineqs: list[tuple[tuple[Fraction, ...], Fraction]] = []  # normalized to <=
    for row in system.constraints:
        if row.relation == EQUAL:
            eqs.append((row.coeffs, row.rhs))
        elif row.relation == LESS_EQUAL:
            ineqs.append((row.coeffs, row.rhs))
        else:
            ineqs.append((tuple(-c for c in row.coeffs), -row.rhs))
    for j in range(n):
        unit = [Fraction(0)] * n
        unit[j] = Fraction(1)
        if system.lower[j] is not None:
            ineqs.append((tuple(-c for c in unit), -system.lower[j]))
        if system.upper[j] is not None:
            ineqs.append((tuple(unit), system.upper[j]))

    state: list[tuple[int, tuple[Fraction, ...], Fraction]] = []
    for coeffs, rhs in eqs:
        kind, payload = _echelon_add(state, coeffs, rhs)
        if kind == "independent":
            state.append(payload)
        elif kind == "inconsistent":
            return []

    found: set[tuple[Fraction, ...]] = set()

    def dfs(start: int, state: list, depth_needed: int) -> None:
        if depth_needed == 0:
            x = _solve_echelon(state, n)
            if system.contains(x):
                found.add(x)
            return
        for idx in range(start, len(ineqs) - depth_needed + 1):
            coeffs, rhs = ineqs[idx]
            kind, payload = _echelon_add(state, coeffs, rhs)
            if kind == "independent":
                state.append(payload)
                dfs(idx + 1, state, depth_needed - 1)
                state.pop()

    dfs(0, state, n - len(state))
    return sorted(found)
