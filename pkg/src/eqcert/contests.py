"""Two-player contests with exact rational evaluation.

Success shares are ratio-based: player 1's share is f(a_1/a_2) for a
share function f with f(t) + f(1/t) = 1, which covers Tullock contests
t^r/(1+t^r) and the admissible band around them.  Utilities are
u_i(a) = v_i p_i(a) - c_i(a_i).  Everything evaluates exactly on rational
grids or raises EvaluationDomainError; discretized grid games feed the
uniqueness certification pipeline with the proof weights 1/v_i.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .certify import Refutation, UniquenessCertificate, certify_unique_pure_cce
from .games import Game
from .rational import format_rational, fraction_power, parse_rational


class EvaluationDomainError(ValueError):
    """Evaluation requested outside the exactly-evaluable domain."""


# -- cost functions ------------------------------------------------------------


@dataclass(frozen=True)
class LinearCost:
    slope: Fraction

    def __post_init__(self):
        object.__setattr__(self, "slope", Fraction(self.slope))
        if self.slope < 0:
            raise EvaluationDomainError("cost slope must be nonnegative")

    def at(self, x: Fraction) -> Fraction:
        return self.slope * x


@dataclass(frozen=True)
class PowerCost:
    coefficient: Fraction
    exponent: int

    def __post_init__(self):
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))
        if self.coefficient < 0:
            raise EvaluationDomainError("cost coefficient must be nonnegative")
        if not isinstance(self.exponent, int) or self.exponent < 1:
            raise EvaluationDomainError("cost exponent must be an integer >= 1")

    def at(self, x: Fraction) -> Fraction:
        return self.coefficient * x ** self.exponent


# -- share functions -----------------------------------------------------------


@dataclass(frozen=True)
class TullockRatio:
    """f(t) = t^r / (1 + t^r); exact whenever t^r is rational."""

    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        if self.r <= 0:
            raise EvaluationDomainError("tullock exponent must be positive")

    def at(self, t: Fraction) -> Fraction:
        if t <= 0:
            raise EvaluationDomainError("share functions take positive ratios")
        power = fraction_power(t, self.r)
        if power is None:
            raise EvaluationDomainError(
                f"{format_rational(t)}^{format_rational(self.r)} is not rational")
        return power / (1 + power)


@dataclass(frozen=True)
class BandUpper:
    """Upper envelope of the admissible band: equality on the right edge."""

    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        if not 0 < self.c <= Fraction(1, 2):
            raise EvaluationDomainError("band parameter must lie in (0, 1/2]")

    def at(self, t: Fraction) -> Fraction:
        if t <= 0:
            raise EvaluationDomainError("share functions take positive ratios")
        if t <= 1:
            return Fraction(1, 2) - self.c + self.c * t
        return Fraction(1, 2) + self.c - self.c / t


@dataclass(frozen=True)
class BandLower:
    """Lower envelope: equality on the left edge, clipped to [0, 1]."""

    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        if not 0 < self.c <= Fraction(1, 2):
            raise EvaluationDomainError("band parameter must lie in (0, 1/2]")

    def at(self, t: Fraction) -> Fraction:
        if t <= 0:
            raise EvaluationDomainError("share functions take positive ratios")
        if t <= 1:
            return max(Fraction(0), Fraction(1, 2) + self.c - self.c / t)
        return min(Fraction(1), Fraction(1, 2) - self.c + self.c * t)


@dataclass(frozen=True)
class MixRatio:
    """alpha-mix of two share functions; stays a share function."""

    alpha: Fraction
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "components", tuple(self.components))
        if not 0 <= self.alpha <= 1:
            raise EvaluationDomainError("mix weight must lie in [0, 1]")
        if len(self.components) != 2:
            raise EvaluationDomainError("mix takes exactly two components")

    def at(self, t: Fraction) -> Fraction:
        f, g = self.components
        return self.alpha * f.at(t) + (1 - self.alpha) * g.at(t)


# -- contest specifications ----------------------------------------------------


@dataclass(frozen=True)
class ContestSpec:
    success: object
    values: tuple[Fraction, Fraction]
    costs: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))
        object.__setattr__(self, "costs", tuple(self.costs))
        if len(self.values) != 2 or len(self.costs) != 2:
            raise EvaluationDomainError("contests have exactly two players")
        if any(v <= 0 for v in self.values):
            raise EvaluationDomainError("prize values must be positive")

    def utility(self, i: int, a: Sequence[Fraction]) -> Fraction:
        a1, a2 = Fraction(a[0]), Fraction(a[1])
        if a1 <= 0 or a2 <= 0:
            raise EvaluationDomainError("contest efforts must be positive")
        share1 = self.success.at(a1 / a2)
        share = share1 if i == 0 else 1 - share1
        effort = a1 if i == 0 else a2
        return self.values[i] * share - self.costs[i].at(effort)

    def proof_weights(self) -> tuple[Fraction, Fraction]:
        return (1 / self.values[0], 1 / self.values[1])


@dataclass(frozen=True)
class CournotSpec:
    """Linear-demand duopoly u_i = a_i (alpha - beta (a_1 + a_2)) - c_i(a_i)."""

    alpha: Fraction
    beta: Fraction
    costs: tuple

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        object.__setattr__(self, "costs", tuple(self.costs))
        if self.beta <= 0:
            raise EvaluationDomainError("demand slope must be positive")
        if len(self.costs) != 2:
            raise EvaluationDomainError("contests have exactly two players")

    def utility(self, i: int, a: Sequence[Fraction]) -> Fraction:
        a1, a2 = Fraction(a[0]), Fraction(a[1])
        if a1 < 0 or a2 < 0:
            raise EvaluationDomainError("quantities must be nonnegative")
        own = a1 if i == 0 else a2
        return own * (self.alpha - self.beta * (a1 + a2)) - self.costs[i].at(own)

    def proof_weights(self) -> tuple[Fraction, Fraction]:
        return (Fraction(1), Fraction(1))


def contest_utility(spec, i: int, a: Sequence[Fraction]) -> Fraction:
    """Exact utility of player i at effort pair a."""
    if i not in (0, 1):
        raise EvaluationDomainError("player index must be 0 or 1")
    return spec.utility(i, a)


def local_potential(spec, a_star: Sequence[Fraction], a: Sequence[Fraction],
                    gamma: Sequence[Fraction]) -> Fraction:
    """Phi(a) = sum_i gamma_i (u_i(a) - u_i(a_i*, a_-i)); zero at a = a*."""
    a_star = tuple(Fraction(x) for x in a_star)
    a = tuple(Fraction(x) for x in a)
    total = Fraction(0)
    for i in range(2):
        unilateral = (a_star[0], a[1]) if i == 0 else (a[0], a_star[1])
        total += Fraction(gamma[i]) * (spec.utility(i, a) - spec.utility(i, unilateral))
    return total


# -- the standard Tullock closed form -----------------------------------------


def tullock_equilibrium(r: Fraction) -> tuple[Fraction, Fraction]:
    """Strict NE (r/4, r/4) of the unit-value, unit-cost Tullock contest."""
    r = Fraction(r)
    if not 0 < r <= 2:
        raise EvaluationDomainError("closed-form equilibrium needs r in (0, 2]")
    return (r / 4, r / 4)


def tullock_term(x: Fraction) -> Fraction:
    """One summand of the r=1 potential: 3/4 - x - 1/(1+4x), maximized at 1/4."""
    x = Fraction(x)
    if x <= 0:
        raise EvaluationDomainError("the term is evaluated at positive efforts")
    return Fraction(3, 4) - x - 1 / (1 + 4 * x)


@dataclass(frozen=True)
class TullockTermCertificate:
    quadratic: tuple[Fraction, Fraction, Fraction]  # c0 + c1 x + c2 x^2
    leading: Fraction
    root: Fraction


def tullock_term_certificate() -> TullockTermCertificate:
    """Exact sign analysis: (3/4 - x - 1/(1+4x)) (1+4x) = -4 (x - 1/4)^2.

    Expands the left side symbolically and factors the quadratic; a zero
    discriminant and negative leading coefficient prove the term is <= 0
    with equality only at x = 1/4.
    """
    # (3/4 - x)(1 + 4x) - 1, coefficients in ascending degree
    lin = (Fraction(3, 4), Fraction(-1))
    fac = (Fraction(1), Fraction(4))
    quad = [Fraction(0)] * 3
    for i, p in enumerate(lin):
        for j, q in enumerate(fac):
            quad[i + j] += p * q
    quad[0] -= 1
    c0, c1, c2 = quad
    if c1 * c1 - 4 * c0 * c2 != 0 or c2 >= 0:
        raise EvaluationDomainError("the quadratic lost its double root")
    root = -c1 / (2 * c2)
    if (c2, -2 * c2 * root, c2 * root * root) != (c2, c1, c0):
        raise EvaluationDomainError("factored form disagrees with the expansion")
    return TullockTermCertificate((c0, c1, c2), c2, root)


# -- Proposition 3 grid verification -------------------------------------------


@dataclass(frozen=True)
class Prop3Report:
    a_star: tuple[Fraction, Fraction]
    gamma: tuple[Fraction, Fraction]
    grids: tuple[tuple[Fraction, ...], tuple[Fraction, ...]]
    # (player, deviation effort, payoff gain >= 0)
    strict_ne_violations: tuple[tuple[int, Fraction, Fraction], ...]
    # (effort profile, potential value >= 0)
    potential_violations: tuple[tuple[tuple[Fraction, Fraction], Fraction], ...]

    @property
    def ok(self) -> bool:
        return not self.strict_ne_violations and not self.potential_violations


def _normalize_grids(grids) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    if len(grids) == 2 and not isinstance(grids[0], (int, Fraction, str)):
        pair = (grids[0], grids[1])
    else:
        pair = (grids, grids)
    out = []
    for grid in pair:
        efforts = sorted({Fraction(x) for x in grid})
        if not efforts:
            raise EvaluationDomainError("effort grids must be nonempty")
        out.append(tuple(efforts))
    return tuple(out)


def verify_prop3(spec, a_star: Sequence[Fraction], grids,
                 gamma: Sequence[Fraction] | None = None) -> Prop3Report:
    """Strict-NE inequalities plus Phi < 0 on a grid, with the proof weights.

    An empty violation list is a complete uniqueness proof for the induced
    grid game and necessary-condition sampling for the continuum claim.
    """
    grid1, grid2 = _normalize_grids(grids)
    a_star = (Fraction(a_star[0]), Fraction(a_star[1]))
    if a_star[0] not in grid1 or a_star[1] not in grid2:
        raise EvaluationDomainError("the anchor profile must lie on the grid")
    if gamma is None:
        gamma = spec.proof_weights()
    gamma = (Fraction(gamma[0]), Fraction(gamma[1]))

    base = (spec.utility(0, a_star), spec.utility(1, a_star))
    ne_violations = []
    for i, grid in enumerate((grid1, grid2)):
        for x in grid:
            if x == a_star[i]:
                continue
            profile = (x, a_star[1]) if i == 0 else (a_star[0], x)
            gain = spec.utility(i, profile) - base[i]
            if gain >= 0:
                ne_violations.append((i, x, gain))

    potential_violations = []
    for x in grid1:
        for y in grid2:
            if (x, y) == a_star:
                continue
            value = local_potential(spec, a_star, (x, y), gamma)
            if value >= 0:
                potential_violations.append(((x, y), value))

    return Prop3Report(a_star, gamma, (grid1, grid2),
                       tuple(ne_violations), tuple(potential_violations))


# -- the admissible band (Eq. 5) ----------------------------------------------


def band_functions(c: Fraction) -> tuple[BandUpper, BandLower]:
    """Envelope pair of the band that makes (c, c) a strict NE."""
    return BandUpper(c), BandLower(c)


def ratio_band_check(f, c: Fraction, grid: Sequence[Fraction]) -> bool:
    """Strict band inequalities at every grid ratio t in (0, 1).

    Also requires f(1) = 1/2 and the share identity f(t) + f(1/t) = 1 at
    the grid points.  Envelope functions themselves fail: the band is open.
    """
    c = Fraction(c)
    if not 0 < c <= Fraction(1, 2):
        raise EvaluationDomainError("band parameter must lie in (0, 1/2]")
    if f.at(Fraction(1)) != Fraction(1, 2):
        return False
    for t in grid:
        t = Fraction(t)
        if not 0 < t < 1:
            raise EvaluationDomainError("band grid ratios must lie in (0, 1)")
        value = f.at(t)
        if f.at(1 / t) != 1 - value:
            return False
        if not Fraction(1, 2) + c * (1 - 1 / t) < value < Fraction(1, 2) - c * (1 - t):
            return False
    return True


# -- discretization ------------------------------------------------------------


def discretize(spec, grids, name: str | None = None) -> Game:
    """Finite game with payoffs contest_utility at all grid profiles."""
    grid1, grid2 = _normalize_grids(grids)
    actions = (tuple(format_rational(x) for x in grid1),
               tuple(format_rational(x) for x in grid2))
    u1, u2 = [], []
    for x in grid1:
        for y in grid2:
            u1.append(spec.utility(0, (x, y)))
            u2.append(spec.utility(1, (x, y)))
    return Game(actions, (tuple(u1), tuple(u2)),
                name or f"contest {len(grid1)}x{len(grid2)}")


def discretize_and_certify(spec, a_star: Sequence[Fraction], grids,
                           name: str | None = None
                           ) -> tuple[Game, UniquenessCertificate | Refutation]:
    """Grid game plus its unique-CCE decision, seeded with the proof weights."""
    grid1, grid2 = _normalize_grids(grids)
    a_star = (Fraction(a_star[0]), Fraction(a_star[1]))
    if a_star[0] not in grid1 or a_star[1] not in grid2:
        raise EvaluationDomainError("the anchor profile must lie on the grid")
    game = discretize(spec, (grid1, grid2), name)
    result = certify_unique_pure_cce(game, gamma_hint=spec.proof_weights())
    return game, result


# -- serialization -------------------------------------------------------------


def success_to_dict(f) -> dict:
    if isinstance(f, TullockRatio):
        return {"kind": "tullock", "r": format_rational(f.r)}
    if isinstance(f, BandUpper):
        return {"kind": "band_upper", "c": format_rational(f.c)}
    if isinstance(f, BandLower):
        return {"kind": "band_lower", "c": format_rational(f.c)}
    if isinstance(f, MixRatio):
        return {"kind": "mix", "alpha": format_rational(f.alpha),
                "components": [success_to_dict(g) for g in f.components]}
    raise EvaluationDomainError(f"unknown share function {type(f).__name__}")


def success_from_dict(data: dict):
    kind = data.get("kind")
    if kind == "tullock":
        return TullockRatio(parse_rational(data["r"]))
    if kind == "band_upper":
        return BandUpper(parse_rational(data["c"]))
    if kind == "band_lower":
        return BandLower(parse_rational(data["c"]))
    if kind == "mix":
        components = tuple(success_from_dict(d) for d in data["components"])
        return MixRatio(parse_rational(data["alpha"]), components)
    if kind == "ratio":
        # generic wrapper around a named share descriptor
        return success_from_dict(data["f"])
    raise EvaluationDomainError(f"unknown share function kind {kind!r}")


def cost_to_dict(cost) -> dict:
    if isinstance(cost, LinearCost):
        return {"kind": "linear", "slope": format_rational(cost.slope)}
    if isinstance(cost, PowerCost):
        return {"kind": "power", "coefficient": format_rational(cost.coefficient),
                "exponent": cost.exponent}
    raise EvaluationDomainError(f"unknown cost function {type(cost).__name__}")


def cost_from_dict(data: dict):
    kind = data.get("kind")
    if kind == "linear":
        return LinearCost(parse_rational(data["slope"]))
    if kind == "power":
        return PowerCost(parse_rational(data["coefficient"]), int(data["exponent"]))
    raise EvaluationDomainError(f"unknown cost function kind {kind!r}")


def contest_to_dict(spec: ContestSpec) -> dict:
    return {
        "success": success_to_dict(spec.success),
        "values": [format_rational(v) for v in spec.values],
        "costs": [cost_to_dict(c) for c in spec.costs],
    }


def contest_from_dict(data: dict) -> ContestSpec:
    try:
        return ContestSpec(
            success_from_dict(data["success"]),
            tuple(parse_rational(v) for v in data["values"]),
            tuple(cost_from_dict(c) for c in data["costs"]),
        )
    except (KeyError, TypeError) as exc:
        raise EvaluationDomainError(f"malformed contest descriptor: {exc}") from exc


def save_contest(spec: ContestSpec) -> bytes:
    return json.dumps(contest_to_dict(spec), indent=2).encode("utf-8")


def load_contest(data: bytes | str) -> ContestSpec:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise EvaluationDomainError(f"invalid contest JSON: {exc}") from exc
    return contest_from_dict(raw)


def load_grid(data: bytes | str):
    """Grid file: a list of rationals, or a pair of per-player lists."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise EvaluationDomainError(f"invalid grid JSON: {exc}") from exc
    if isinstance(raw, dict):
        raw = raw.get("grids", raw.get("grid"))
    if not isinstance(raw, list) or not raw:
        raise EvaluationDomainError("grid file must hold a nonempty list")
    if isinstance(raw[0], list):
        if len(raw) != 2:
            raise EvaluationDomainError("per-player grids come as two lists")
        return _normalize_grids((
            [parse_rational(x) for x in raw[0]],
            [parse_rational(x) for x in raw[1]],
        ))
    return _normalize_grids([parse_rational(x) for x in raw])
