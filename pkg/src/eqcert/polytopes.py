"""Equilibrium polytopes over the joint-distribution simplex.

Correlated equilibria (CE), coarse correlated equilibria (CCE), and
individually rational correlated profiles (IRCP) are each a finite list of
linear incentive rows over profile probabilities.  This module builds those
systems, decides membership with exact violation reports, computes
coordinate bounds, decides singleton-ness with explicit witnesses, and
checks extremality plus the support bound that extreme points obey.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import zerosum
from .games import Game, JointDistribution, MixedAction, Profile
from .lp import (
    EQUAL,
    GREATER_EQUAL,
    OPTIMAL,
    ConstraintSystem,
    LinearConstraint,
    PolytopeSolver,
    _echelon_add,
)

CONCEPTS = ("ce", "cce", "ircp")


class PolytopeError(ValueError):
    """Bad inputs to a polytope operation."""


class SolverInvariantError(RuntimeError):
    """An internal consistency check failed; results cannot be trusted."""


@dataclass(frozen=True)
class IncentiveInfo:
    """Provenance of one incentive row: who deviates, from what, to what."""

    kind: str
    player: int
    recommended: int | None
    deviation: int | None
    label: str


@dataclass(frozen=True)
class PolytopeSpec:
    game: Game
    concept: str
    system: ConstraintSystem
    incentive_info: tuple[IncentiveInfo, ...]
    maximin_values: tuple[Fraction, ...] = ()


@dataclass(frozen=True)
class Violation:
    info: IncentiveInfo
    shortfall: Fraction


@dataclass(frozen=True)
class MembershipResult:
    is_member: bool
    violations: tuple[Violation, ...]


@dataclass(frozen=True)
class SingletonResult:
    """Either the unique member, or two distinct members as witnesses."""

    point: JointDistribution | None
    witnesses: tuple[JointDistribution, JointDistribution] | None

    @property
    def is_singleton(self) -> bool:
        return self.point is not None


@dataclass(frozen=True)
class WinklerReport:
    support_size: int
    active_incentive_rank: int
    bound_holds: bool


def _cce_row(game: Game, player: int, deviation: int) -> tuple[Fraction, ...]:
    coeffs = [Fraction(0)] * game.num_profiles
    for profile in game.profiles():
        others = tuple(a for j, a in enumerate(profile) if j != player)
        gain = game.u(player, profile) - game.u(
            player, game.insert_action(player, deviation, others))
        coeffs[game.profile_index(profile)] = gain
    return tuple(coeffs)


def _ce_row(game: Game, player: int, recommended: int, deviation: int) -> tuple[Fraction, ...]:
    coeffs = [Fraction(0)] * game.num_profiles
    for others in game.opponent_profiles(player):
        profile = game.insert_action(player, recommended, others)
        gain = game.u(player, profile) - game.u(
            player, game.insert_action(player, deviation, others))
        coeffs[game.profile_index(profile)] = gain
    return tuple(coeffs)


def build_polytope(game: Game, concept: str) -> PolytopeSpec:
    """Constraint system of one solution concept, incentive rows first."""
    if concept not in CONCEPTS:
        raise PolytopeError(f"unknown concept {concept!r}; pick one of {CONCEPTS}")
    rows: list[LinearConstraint] = []
    info: list[IncentiveInfo] = []
    maximin_values: tuple[Fraction, ...] = ()
    if concept == "ce":
        for i in range(game.num_players):
            for rec in range(game.shape[i]):
                for dev in range(game.shape[i]):
                    if dev == rec:
                        continue
                    label = f"ce:p{i}:{game.actions[i][rec]}->{game.actions[i][dev]}"
                    rows.append(LinearConstraint(
                        _ce_row(game, i, rec, dev), GREATER_EQUAL, Fraction(0), label))
                    info.append(IncentiveInfo("ce", i, rec, dev, label))
    elif concept == "cce":
        for i in range(game.num_players):
            for dev in range(game.shape[i]):
                label = f"cce:p{i}->{game.actions[i][dev]}"
                rows.append(LinearConstraint(
                    _cce_row(game, i, dev), GREATER_EQUAL, Fraction(0), label))
                info.append(IncentiveInfo("cce", i, None, dev, label))
    else:
        levels = []
        for i in range(game.num_players):
            level = zerosum.maximin(game, i).value
            levels.append(level)
            label = f"ircp:p{i}"
            rows.append(LinearConstraint(
                tuple(game.payoffs[i]), GREATER_EQUAL, level, label))
            info.append(IncentiveInfo("ircp", i, None, None, label))
        maximin_values = tuple(levels)
    rows.append(LinearConstraint(
        (Fraction(1),) * game.num_profiles, EQUAL, Fraction(1), "simplex"))
    system = ConstraintSystem(
        num_vars=game.num_profiles,
        constraints=tuple(rows),
        lower=(Fraction(0),) * game.num_profiles,
        upper=(None,) * game.num_profiles,
    )
    return PolytopeSpec(game, concept, system, tuple(info), maximin_values)


def membership(spec: PolytopeSpec, mu: JointDistribution) -> MembershipResult:
    """Exact membership; each violation reports the offending row and shortfall."""
    vector = mu.as_vector(spec.game)
    violations = []
    for row, info in zip(spec.system.constraints, spec.incentive_info):
        lhs = row.evaluate(vector)
        if lhs < row.rhs:
            violations.append(Violation(info, row.rhs - lhs))
    return MembershipResult(not violations, tuple(violations))


def _distribution(spec: PolytopeSpec, point: Sequence[Fraction]) -> JointDistribution:
    return JointDistribution.from_vector(spec.game, point)


def coordinate_bounds(spec: PolytopeSpec, profile: Sequence[int],
                      solver: PolytopeSolver | None = None) -> tuple[Fraction, Fraction]:
    """Exact min and max probability the polytope allows on one profile."""
    solver = solver or PolytopeSolver(spec.system)
    if not solver.feasible:
        raise SolverInvariantError(f"{spec.concept} polytope is unexpectedly empty")
    k = spec.game.profile_index(profile)
    unit = [Fraction(0)] * spec.game.num_profiles
    unit[k] = Fraction(1)
    low = solver.optimize(unit, maximize=False)
    high = solver.optimize(unit, maximize=True)
    if low.status != OPTIMAL or high.status != OPTIMAL:
        raise SolverInvariantError("coordinate bound LP failed on a bounded polytope")
    return low.value, high.value


def singleton_over_system(game: Game, system: ConstraintSystem,
                          what: str = "polytope") -> SingletonResult:
    """Singleton decision with constructive witnesses.

    Find one member mu; show every coordinate outside supp(mu) is identically
    zero (one LP); then cap each support coordinate at its mu value (one LP
    each).  Any slack produces a second, distinct member.  The system's
    variables must be joint-distribution coordinates over `game`.
    """
    solver = PolytopeSolver(system)
    if not solver.feasible:
        raise SolverInvariantError(f"{what} is unexpectedly empty")
    base_point = solver.feasible_point()
    base = JointDistribution.from_vector(game, base_point)
    num = game.num_profiles
    support = {game.profile_index(p) for p in base.support()}

    outside = [Fraction(1) if k not in support else Fraction(0) for k in range(num)]
    if any(c != 0 for c in outside):
        outcome = solver.optimize(outside, maximize=True)
        if outcome.status != OPTIMAL:
            raise SolverInvariantError("support LP failed on a bounded polytope")
        if outcome.value > 0:
            return SingletonResult(
                None, (base, JointDistribution.from_vector(game, outcome.point)))

    for k in sorted(support):
        unit = [Fraction(0)] * num
        unit[k] = Fraction(1)
        outcome = solver.optimize(unit, maximize=True)
        if outcome.status != OPTIMAL:
            raise SolverInvariantError("support LP failed on a bounded polytope")
        if outcome.value > base_point[k]:
            return SingletonResult(
                None, (base, JointDistribution.from_vector(game, outcome.point)))
    return SingletonResult(base, None)


def is_singleton(spec: PolytopeSpec) -> SingletonResult:
    """Singleton decision for a solution-concept polytope; see singleton_over_system."""
    return singleton_over_system(spec.game, spec.system, f"{spec.concept} polytope")


def _active_rows(spec: PolytopeSpec, vector: Sequence[Fraction]) -> list[tuple[Fraction, ...]]:
    rows: list[tuple[Fraction, ...]] = []
    for row in spec.system.constraints:
        if row.relation == EQUAL or row.evaluate(vector) == row.rhs:
            rows.append(row.coeffs)
    num = len(vector)
    for k, x in enumerate(vector):
        if x == 0:
            unit = [Fraction(0)] * num
            unit[k] = Fraction(1)
            rows.append(tuple(unit))
    return rows


def _rank(rows: list[tuple[Fraction, ...]]) -> int:
    state: list = []
    for row in rows:
        kind, payload = _echelon_add(state, row, Fraction(0))
        if kind == "independent":
            state.append(payload)
    return len(state)


def is_extreme_point(spec: PolytopeSpec, mu: JointDistribution) -> bool:
    """True iff the rows active at mu have full column rank."""
    if not membership(spec, mu).is_member:
        raise PolytopeError("mu is not a member of the polytope")
    vector = mu.as_vector(spec.game)
    return _rank(_active_rows(spec, vector)) == spec.game.num_profiles


def winkler_support_bound(spec: PolytopeSpec, mu: JointDistribution) -> WinklerReport:
    """Support bound for extreme points: |supp(mu)| <= k + 1.

    k counts linearly independent incentive rows active at mu; the simplex
    itself contributes the +1.  Requires mu to be an extreme point.
    """
    if not is_extreme_point(spec, mu):
        raise PolytopeError("support bound applies to extreme points only")
    vector = mu.as_vector(spec.game)
    active = []
    for row, _ in zip(spec.system.constraints, spec.incentive_info):
        if row.evaluate(vector) == row.rhs:
            active.append(row.coeffs)
    k = _rank(active)
    support_size = len(mu.support())
    return WinklerReport(support_size, k, support_size <= k + 1)


def enumerate_pure_ne(game: Game) -> list[tuple[Profile, bool]]:
    """All pure Nash equilibria with a strictness flag, in lexicographic order."""
    results = []
    for profile in game.profiles():
        is_ne = True
        strict = True
        for i in range(game.num_players):
            base = game.u(i, profile)
            others = tuple(a for j, a in enumerate(profile) if j != i)
            for dev in range(game.shape[i]):
                if dev == profile[i]:
                    continue
                alt = game.u(i, game.insert_action(i, dev, others))
                if alt > base:
                    is_ne = False
                    break
                if alt == base:
                    strict = False
            if not is_ne:
                break
        if is_ne:
            results.append((profile, strict))
    return results


class Degenerate2x2Error(ValueError):
    """The 2x2 game has ties that allow non-isolated equilibrium components."""


def mixed_ne_2x2(game: Game) -> list[tuple[MixedAction, MixedAction]]:
    """Complete NE list of a nondegenerate 2x2 game, exactly.

    Pure equilibria come from enumeration; the fully mixed one from the
    closed-form indifference system.  Games in which a player is exactly
    indifferent against one of the opponent's pure actions (or against all
    mixtures) can carry equilibrium segments, and are reported as degenerate
    rather than silently truncated to a finite list.
    """
    if game.shape != (2, 2):
        raise PolytopeError("closed-form NE solver only covers 2x2 games")
    u = game.u
    # Player 1's indifference as a linear equation alpha1*q = beta1 in
    # q = P(opponent plays action 0), and symmetrically for player 2.
    alpha1 = (u(0, (0, 0)) - u(0, (1, 0))) - (u(0, (0, 1)) - u(0, (1, 1)))
    beta1 = u(0, (1, 1)) - u(0, (0, 1))
    alpha2 = (u(1, (0, 0)) - u(1, (0, 1))) - (u(1, (1, 0)) - u(1, (1, 1)))
    beta2 = u(1, (1, 1)) - u(1, (1, 0))
    if (alpha1 == 0 and beta1 == 0) or (alpha2 == 0 and beta2 == 0):
        raise Degenerate2x2Error("a player is indifferent against every opponent mixture")
    for i, j in ((0, 1), (1, 0)):
        for x_j in range(2):
            fixed = (x_j,) if i == 0 else (x_j,)
            a = u(i, game.insert_action(i, 0, fixed))
            b = u(i, game.insert_action(i, 1, fixed))
            if a == b:
                raise Degenerate2x2Error(
                    f"player {i} is indifferent against the pure action "
                    f"{game.actions[j][x_j]} of player {j}")
    ne: list[tuple[MixedAction, MixedAction]] = []
    for profile, _ in enumerate_pure_ne(game):
        ne.append((MixedAction.point_mass(0, profile[0]),
                   MixedAction.point_mass(1, profile[1])))
    if alpha1 != 0 and alpha2 != 0:
        q = beta1 / alpha1  # player 2's weight on action 0
        p = beta2 / alpha2  # player 1's weight on action 0
        if 0 < p < 1 and 0 < q < 1:
            ne.append((MixedAction(0, {0: p, 1: 1 - p}),
                       MixedAction(1, {0: q, 1: 1 - q})))
    return ne
