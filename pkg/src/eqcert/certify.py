"""Uniqueness certificates, refutations, and structure tests.

A uniqueness certificate for a profile a* consists of positive welfare
weights gamma such that the gamma-weighted payoff gains relative to a*
are strictly negative at every other profile (for IRCP uniqueness, gains
are measured against a* itself; for unique pure CCE, against unilateral
switches to a_i*).  Certificates are found by solving a small zero-sum
game between a profile chooser and a player chooser; refutations always
carry explicit polytope members that anyone can re-check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import polytopes, zerosum
from .games import (
    Game,
    JointDistribution,
    MixedAction,
    Profile,
    affine_transform,
    cce_reduction,
    is_symmetric,
    product_distribution,
)
from .lp import (
    EQUAL,
    GREATER_EQUAL,
    OPTIMAL,
    ConstraintSystem,
    LinearConstraint,
    PolytopeSolver,
    enumerate_vertices,
)
from .polytopes import SolverInvariantError
from .rational import format_rational, parse_rational


class CertificationError(ValueError):
    """Bad inputs to a certification operation."""


# -- enforcement-form checks -------------------------------------------------


@dataclass(frozen=True)
class EnforcementCheck:
    """Condition-by-condition test of the self-enforcing normal form.

    A game is in enforcement form at a* when every player gets zero at a*,
    no unilateral opponent change pushes a player below zero, and total
    payoff is strictly negative everywhere else.
    """

    a_star: Profile | None
    zero_at_star: bool
    unilateral_guarantee: bool
    welfare_negative_elsewhere: bool

    @property
    def holds(self) -> bool:
        return (self.a_star is not None and self.zero_at_star
                and self.unilateral_guarantee and self.welfare_negative_elsewhere)


def _check_enforcement_at(game: Game, a_star: Profile) -> EnforcementCheck:
    zero = all(x == 0 for x in game.payoff_vector(a_star))
    guarantee = True
    for i in range(game.num_players):
        for others in game.opponent_profiles(i):
            if game.u(i, game.insert_action(i, a_star[i], others)) < 0:
                guarantee = False
                break
        if not guarantee:
            break
    negative = all(
        sum(game.payoff_vector(p), Fraction(0)) < 0
        for p in game.profiles() if p != a_star
    )
    return EnforcementCheck(a_star, zero, guarantee, negative)


def check_enforcement(game: Game) -> EnforcementCheck:
    """Locate the self-enforcing profile, if any.

    At most one profile can qualify: the welfare condition makes every
    other profile strictly welfare-negative, while a qualifying profile has
    welfare zero.  Candidates are scanned in lexicographic order and the
    first full match is returned; with no match, the first all-zero-payoff
    profile (if any) is reported with its failing conditions.
    """
    first_zero: EnforcementCheck | None = None
    for profile in game.profiles():
        if any(x != 0 for x in game.payoff_vector(profile)):
            continue
        check = _check_enforcement_at(game, profile)
        if check.holds:
            return check
        if first_zero is None:
            first_zero = check
    if first_zero is not None:
        return first_zero
    return EnforcementCheck(None, False, False, False)


# -- certificates and refutations --------------------------------------------


@dataclass(frozen=True)
class UniquenessCertificate:
    concept: str  # "ircp" | "cce"
    a_star: Profile
    gamma: tuple[Fraction, ...]
    slack: Fraction
    transformed_game: Game


@dataclass(frozen=True)
class Refutation:
    concept: str
    reason: str
    witnesses: tuple[JointDistribution, ...]  # two members, or one mixed CCE


def _normalize(gamma: Sequence[Fraction]) -> tuple[Fraction, ...]:
    total = sum((Fraction(g) for g in gamma), Fraction(0))
    return tuple(Fraction(g) / total for g in gamma)


def _weighted_slack(gamma: Sequence[Fraction],
                    deltas: dict[Profile, tuple[Fraction, ...]]) -> Fraction | None:
    """min over a != a* of -sum_i gamma_i * delta_i(a); None if some sum >= 0."""
    slack: Fraction | None = None
    for delta in deltas.values():
        weighted = sum((g * d for g, d in zip(gamma, delta)), Fraction(0))
        if weighted >= 0:
            return None
        margin = -weighted
        if slack is None or margin < slack:
            slack = margin
    return slack


def _ircp_deltas(game: Game, a_star: Profile) -> dict[Profile, tuple[Fraction, ...]]:
    base = game.payoff_vector(a_star)
    return {
        p: tuple(game.u(i, p) - base[i] for i in range(game.num_players))
        for p in game.profiles() if p != a_star
    }


def _certificate(concept: str, a_star: Profile,
                 gamma: Sequence[Fraction], slack: Fraction,
                 base_game: Game) -> UniquenessCertificate:
    """Assemble and re-verify a certificate; the transform must be enforcement form."""
    gamma = _normalize(gamma)
    beta = tuple(-g * base_game.u(i, a_star) for i, g in enumerate(gamma))
    transformed = affine_transform(base_game, gamma, beta)
    check = _check_enforcement_at(transformed, a_star)
    if not check.holds:
        raise SolverInvariantError("certificate transform failed the enforcement check")
    return UniquenessCertificate(concept, tuple(a_star), gamma, slack, transformed)


def _pure_guarantee(game: Game, player: int, action: int) -> Fraction:
    return min(
        game.u(player, game.insert_action(player, action, others))
        for others in game.opponent_profiles(player)
    )


def _verify_witnesses(game: Game, concept: str,
                      witnesses: Sequence[JointDistribution]) -> None:
    spec = polytopes.build_polytope(game, concept)
    for w in witnesses:
        if not polytopes.membership(spec, w).is_member:
            raise SolverInvariantError("refutation witness failed membership re-check")
    if len(witnesses) == 2 and witnesses[0] == witnesses[1]:
        raise SolverInvariantError("refutation witnesses are not distinct")


def _verify_ircp_singleton(game: Game, a_star: Profile) -> None:
    spec = polytopes.build_polytope(game, "ircp")
    singleton = polytopes.is_singleton(spec)
    if (not singleton.is_singleton
            or singleton.point != JointDistribution.point_mass(a_star)):
        raise SolverInvariantError(
            "certificate disagrees with the polytope singleton test")


def certify_unique_ircp(game: Game, gamma_hint: Sequence[Fraction] | None = None,
                        _verify: bool = True) -> UniquenessCertificate | Refutation:
    """Certify or refute that the IRCP polytope is one point.

    A singleton IRCP forces a profile of unique pure maximin actions with
    on-profile payoffs at the security levels; given that, the sign of the
    profile-vs-player comparison game decides the question, yielding either
    positive welfare weights (certificate) or a second polytope member
    (refutation).  `gamma_hint` supplies candidate weights to try before the
    zero-sum solve; invalid hints are ignored.
    """
    n = game.num_players
    maximins = [zerosum.maximin(game, i) for i in range(n)]

    # Every player needs a pure action attaining the security level.
    pure_options: list[list[int]] = []
    for i in range(n):
        level = maximins[i].value
        pure_options.append(
            [a for a in range(game.shape[i]) if _pure_guarantee(game, i, a) == level]
        )
    for i in range(n):
        if not pure_options[i]:
            nu = [m.strategy for m in maximins]
            base = product_distribution(game, nu)
            gaps = _deviation_payoffs(game, i, nu)
            best = max(range(game.shape[i]), key=lambda a: (gaps[a], -a))
            swapped = nu.copy()
            swapped[i] = MixedAction.point_mass(i, best)
            other = product_distribution(game, swapped)
            witnesses = (base, other)
            if _verify:
                _verify_witnesses(game, "ircp", witnesses)
            return Refutation(
                "ircp",
                f"player {i} has no pure maximin action, so no single profile "
                "can pin the polytope",
                witnesses,
            )
    for i in range(n):
        if len(pure_options[i]) > 1:
            a_star = tuple(opts[0] for opts in pure_options)
            alt = list(a_star)
            alt[i] = pure_options[i][1]
            witnesses = (JointDistribution.point_mass(a_star),
                         JointDistribution.point_mass(tuple(alt)))
            if _verify:
                _verify_witnesses(game, "ircp", witnesses)
            return Refutation(
                "ircp",
                f"player {i} has several pure maximin actions; swapping them "
                "gives distinct point-mass members",
                witnesses,
            )

    a_star = tuple(opts[0] for opts in pure_options)
    for i in range(n):
        level = maximins[i].value
        if game.u(i, a_star) > level:
            # Mix a little of a deviation into player i's action; everyone
            # still clears the security levels.
            dev = 0 if a_star[i] != 0 else 1
            dev_profile = game.insert_action(
                i, dev, tuple(a for j, a in enumerate(a_star) if j != i))
            dev_payoff = game.u(i, dev_profile)
            if dev_payoff >= level:
                eps = Fraction(1, 2)
            else:
                eps = (game.u(i, a_star) - level) / (2 * (game.u(i, a_star) - dev_payoff))
            witnesses = (
                JointDistribution.point_mass(a_star),
                JointDistribution({a_star: 1 - eps, dev_profile: eps}),
            )
            if _verify:
                _verify_witnesses(game, "ircp", witnesses)
            return Refutation(
                "ircp",
                f"player {i} earns strictly above the security level at the "
                "candidate profile, leaving room for a second member",
                witnesses,
            )

    deltas = _ircp_deltas(game, a_star)
    certificate: UniquenessCertificate | None = None
    if gamma_hint is not None and len(gamma_hint) == n and all(
            Fraction(g) > 0 for g in gamma_hint):
        slack = _weighted_slack(_normalize(gamma_hint), deltas)
        if slack is not None:
            certificate = _certificate("ircp", a_star, gamma_hint, slack, game)
    if certificate is None and is_symmetric(game):
        uniform = (Fraction(1, n),) * n
        slack = _weighted_slack(uniform, deltas)
        if slack is not None:
            certificate = _certificate("ircp", a_star, uniform, slack, game)
    if certificate is not None:
        if _verify:
            _verify_ircp_singleton(game, a_star)
        return certificate

    aux = zerosum.build_theorem1_auxiliary(game, a_star)
    value, row_strategy, col_strategy = zerosum.matrix_value(aux)
    if value < 0:
        gamma = _normalize(col_strategy)
        if any(g <= 0 for g in gamma):
            raise SolverInvariantError(
                "negative-value comparison game produced a boundary weight vector")
        slack = _weighted_slack(gamma, deltas)
        if slack is None or slack != -value:
            raise SolverInvariantError("certificate slack disagrees with the game value")
        if _verify:
            _verify_ircp_singleton(game, a_star)
        return _certificate("ircp", a_star, gamma, slack, game)

    mu = JointDistribution(
        {p: w for p, w in zip(aux.row_keys, row_strategy) if w != 0})
    witnesses = (JointDistribution.point_mass(a_star), mu)
    if _verify:
        _verify_witnesses(game, "ircp", witnesses)
    return Refutation(
        "ircp",
        "the profile-vs-player comparison game has nonnegative value, and its "
        "maximizing distribution is a second member",
        witnesses,
    )


def _deviation_payoffs(game: Game, player: int,
                       mixed: Sequence[MixedAction]) -> list[Fraction]:
    """Expected payoff to each pure action of `player` against the others' mix."""
    out = []
    others_mix = [m for j, m in enumerate(mixed) if j != player]
    others_support = [m.support() for m in others_mix]
    for action in range(game.shape[player]):
        total = Fraction(0)
        for combo in itertools.product(*others_support):
            w = Fraction(1)
            for m, a in zip(others_mix, combo):
                w *= m.prob(a)
            total += w * game.u(player, game.insert_action(player, action, combo))
        out.append(total)
    return out


def certify_unique_pure_cce(game: Game, gamma_hint: Sequence[Fraction] | None = None
                            ) -> UniquenessCertificate | Refutation:
    """Certify or refute that the CCE polytope is a single pure profile.

    A unique pure CCE must sit at a strict pure NE, and uniqueness there is
    equivalent to IRCP uniqueness of the reduced game v_i(a) = u_i(a) -
    u_i(a_i*, a_{-i}).  Refutations carry two CCE members, or the single
    mixed CCE when the polytope is a mixed singleton.
    """
    candidates = [p for p, strict in polytopes.enumerate_pure_ne(game) if strict]
    if len(candidates) >= 2:
        witnesses = (JointDistribution.point_mass(candidates[0]),
                     JointDistribution.point_mass(candidates[1]))
        _verify_witnesses(game, "cce", witnesses)
        return Refutation(
            "cce",
            "two strict pure equilibria exist and each is a coarse correlated "
            "equilibrium on its own",
            witnesses,
        )
    if len(candidates) == 1:
        a_star = candidates[0]
        reduced = cce_reduction(game, a_star)
        result = certify_unique_ircp(reduced, gamma_hint=gamma_hint, _verify=False)
        if isinstance(result, UniquenessCertificate):
            if result.a_star != a_star:
                raise SolverInvariantError(
                    "reduced-game certificate landed on a different profile")
            return _certificate("cce", a_star, result.gamma, result.slack, reduced)

    spec = polytopes.build_polytope(game, "cce")
    singleton = polytopes.is_singleton(spec)
    if not singleton.is_singleton:
        witnesses = singleton.witnesses
        _verify_witnesses(game, "cce", witnesses)
        return Refutation("cce", "the polytope holds two distinct members", witnesses)
    mu = singleton.point
    if len(mu.support()) == 1:
        raise SolverInvariantError(
            "polytope collapsed to a pure point that certification rejected")
    _verify_witnesses(game, "cce", (mu,))
    return Refutation("cce", "the unique coarse correlated equilibrium is mixed",
                      (mu,))


# -- classification ----------------------------------------------------------


UNIQUE_PURE = "unique_pure"
UNIQUE_MIXED_2X2 = "unique_mixed_2x2"
NOT_UNIQUE = "not_unique"


@dataclass(frozen=True)
class CceClassification:
    variant: str
    point: JointDistribution | None = None
    certificate: UniquenessCertificate | None = None
    mixers: tuple[int, int] | None = None
    subgame: Game | None = None
    ne: tuple[MixedAction, ...] | None = None
    witnesses: tuple[JointDistribution, ...] | None = None


def is_matching_pennies_type(game: Game) -> bool:
    """True iff some per-player relabeling shows the strict cyclic pattern
    that forces a unique, fully mixed equilibrium in a 2x2 game."""
    if game.shape != (2, 2):
        return False
    for swap1 in (False, True):
        for swap2 in (False, True):
            def at(i, r, c):
                rr = 1 - r if swap1 else r
                cc = 1 - c if swap2 else c
                return game.u(i, (rr, cc))
            if (at(0, 0, 0) > at(0, 1, 0) and at(0, 1, 1) > at(0, 0, 1)
                    and at(1, 0, 1) > at(1, 0, 0) and at(1, 1, 0) > at(1, 1, 1)):
                return True
    return False


def _induced_2x2(game: Game, mu: JointDistribution) -> tuple[tuple[int, int], Game]:
    """Subgame spanned by the two mixing players' supports, others fixed."""
    marginals = [mu.marginal(game, i) for i in range(game.num_players)]
    mixers = [i for i, m in enumerate(marginals) if not m.is_pure]
    if len(mixers) != 2 or any(len(marginals[i].support()) != 2 for i in mixers):
        raise SolverInvariantError(
            "mixed singleton CCE must have exactly two players mixing over two actions")
    i, j = mixers
    supp_i, supp_j = marginals[i].support(), marginals[j].support()
    fixed = [m.support()[0] for m in marginals]
    actions = (tuple(game.actions[i][a] for a in supp_i),
               tuple(game.actions[j][a] for a in supp_j))
    u1, u2 = [], []
    for a in supp_i:
        for b in supp_j:
            profile = list(fixed)
            profile[i], profile[j] = a, b
            u1.append(game.u(i, profile))
            u2.append(game.u(j, profile))
    name = f"{game.name}|p{i},p{j}" if game.name else None
    return (i, j), Game(actions, (tuple(u1), tuple(u2)), name)


def classify_unique_cce(game: Game) -> CceClassification:
    """Decide singleton-ness of the CCE polytope and name what the point is.

    A singleton is either a pure profile backed by a uniqueness certificate
    or a product where exactly two players mix over two actions and the
    induced 2x2 subgame shows the strict cyclic pattern; any other shape
    signals a solver bug and raises rather than degrades.
    """
    spec = polytopes.build_polytope(game, "cce")
    singleton = polytopes.is_singleton(spec)
    if not singleton.is_singleton:
        return CceClassification(NOT_UNIQUE, witnesses=singleton.witnesses)
    mu = singleton.point
    if len(mu.support()) == 1:
        certificate = certify_unique_pure_cce(game)
        if not isinstance(certificate, UniquenessCertificate):
            raise SolverInvariantError(
                "pure singleton CCE must admit a uniqueness certificate")
        return CceClassification(UNIQUE_PURE, point=mu, certificate=certificate)
    if not mu.is_product(game):
        raise SolverInvariantError("mixed singleton CCE must be a product distribution")
    if is_symmetric(game):
        raise SolverInvariantError(
            "a symmetric game cannot have a mixed singleton CCE")
    if not is_quasi_strict(game, mu):
        raise SolverInvariantError("a singleton CCE must be a quasi-strict NE")
    mixers, subgame = _induced_2x2(game, mu)
    if not is_matching_pennies_type(subgame):
        raise SolverInvariantError(
            "induced 2x2 subgame lacks the strict cyclic pattern")
    ne = (mu.marginal(game, mixers[0]), mu.marginal(game, mixers[1]))
    pairs = [pair for pair in polytopes.mixed_ne_2x2(subgame)
             if not pair[0].is_pure and not pair[1].is_pure]
    if len(pairs) != 1 or any(
            pairs[0][k].prob(s) != ne[k].prob(a)
            for k in (0, 1) for s, a in enumerate(ne[k].support())):
        raise SolverInvariantError(
            "singleton point disagrees with the subgame's mixed equilibrium")
    return CceClassification(UNIQUE_MIXED_2X2, point=mu, mixers=mixers,
                             subgame=subgame, ne=ne)


# -- quasi-strictness and extremality ----------------------------------------


def _require_product(game: Game, nu: JointDistribution) -> list[MixedAction]:
    if not nu.is_product(game):
        raise CertificationError("expected a product distribution over profiles")
    return [nu.marginal(game, i) for i in range(game.num_players)]


def is_nash(game: Game, nu: JointDistribution) -> bool:
    """Exact best-response check for a product distribution."""
    mixed = _require_product(game, nu)
    for i in range(game.num_players):
        payoffs = _deviation_payoffs(game, i, mixed)
        expected = nu.expected_utility(game, i)
        if any(p > expected for p in payoffs):
            return False
    return True


def is_quasi_strict(game: Game, nu: JointDistribution) -> bool:
    """NE where every action outside the support loses strictly."""
    mixed = _require_product(game, nu)
    for i in range(game.num_players):
        payoffs = _deviation_payoffs(game, i, mixed)
        expected = nu.expected_utility(game, i)
        support = set(mixed[i].support())
        for a, p in enumerate(payoffs):
            if p > expected:
                return False
            if a not in support and p == expected:
                return False
    return True


@dataclass(frozen=True)
class QuasiStrictCertificate:
    eta: tuple[Fraction, ...]
    sigma: tuple[MixedAction, ...]


def quasi_strictness_certificate(game: Game, mu: JointDistribution) -> QuasiStrictCertificate:
    """Factor a strict-complementary strategy of the profile-vs-deviation game.

    For a unique CCE mu, the maximal-support optimal column strategy tau
    factors as tau(i, a_i) = eta(i) * sigma_i(a_i) with every eta(i) > 0 and
    sigma equal to mu's marginals, which exhibits mu as a quasi-strict NE.
    Factorization failure means mu is not a unique CCE.
    """
    aux = zerosum.build_lemma3_auxiliary(game)
    tau = zerosum.strict_complementary_strategy(aux)
    eta = [Fraction(0)] * game.num_players
    per_player: list[dict[int, Fraction]] = [dict() for _ in range(game.num_players)]
    for col, (i, a) in enumerate(aux.col_keys):
        w = tau.prob(col)
        if w > 0:
            eta[i] += w
            per_player[i][a] = w
    if any(e == 0 for e in eta):
        raise CertificationError(
            "factorization failed: some player never appears in the "
            "strict-complementary strategy; mu cannot be a unique CCE")
    sigma = tuple(
        MixedAction(i, {a: w / eta[i] for a, w in per_player[i].items()})
        for i in range(game.num_players)
    )
    for i in range(game.num_players):
        if sigma[i].weights != mu.marginal(game, i).weights:
            raise CertificationError(
                "factorization failed: recovered strategies disagree with mu; "
                "mu cannot be a unique CCE")
    if product_distribution(game, sigma) != mu:
        raise CertificationError(
            "factorization failed: mu is not the product of the recovered strategies")
    return QuasiStrictCertificate(tuple(eta), sigma)


def combinatorics_bound(support_sizes: Sequence[int]) -> bool:
    """Support-count test for the mixing players of an extreme NE.

    Takes the support sizes of the mixing players only (each >= 2) and
    tests product <= 1 + sum; only {2,2} and {2,3} survive with two or
    more mixers, which pins the shapes an extreme quasi-strict NE can have.
    """
    if any(k < 2 for k in support_sizes):
        raise CertificationError("support sizes of mixing players are at least 2")
    product = 1
    for k in support_sizes:
        product *= k
    return product <= 1 + sum(support_sizes)


@dataclass(frozen=True)
class ExtremeNeReport:
    support_sizes: tuple[int, ...]
    predicted_extreme: bool
    measured_extreme: bool


def classify_extreme_ne(game: Game, nu: JointDistribution) -> ExtremeNeReport:
    """Compare the shape rule for extremality against the rank computation.

    The shape rule: a quasi-strict NE is extreme in the CCE polytope iff it
    is pure or exactly two players mix, each over two actions.
    """
    if not is_quasi_strict(game, nu):
        raise CertificationError("extremality classification needs a quasi-strict NE")
    mixed = _require_product(game, nu)
    sizes = tuple(len(m.support()) for m in mixed)
    mixing = [k for k in sizes if k >= 2]
    predicted = len(mixing) == 0 or (len(mixing) == 2 and all(k == 2 for k in mixing))
    spec = polytopes.build_polytope(game, "cce")
    measured = polytopes.is_extreme_point(spec, nu)
    return ExtremeNeReport(sizes, predicted, measured)


# -- hull comparison ----------------------------------------------------------


HULL_EQUAL = "equal"
HULL_PROPER_SUBSET = "proper_subset"
HULL_INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class HullComparison:
    status: str
    witness: JointDistribution | None = None


def conv_ne_vs_ircp(game: Game, ne_list: Sequence[JointDistribution],
                    max_dim: int = 12) -> HullComparison:
    """Is the convex hull of the given equilibria the whole IRCP polytope?

    Every IRCP vertex is tested for hull membership by a small feasibility
    LP; the first vertex outside the hull is returned as a witness.  Games
    with more profiles than `max_dim` are declared inconclusive because the
    vertex oracle is combinatorial.
    """
    for nu in ne_list:
        if not is_nash(game, nu):
            raise CertificationError("conv_ne_vs_ircp expects Nash equilibria")
    spec = polytopes.build_polytope(game, "ircp")
    for nu in ne_list:
        if not polytopes.membership(spec, nu).is_member:
            raise SolverInvariantError("an equilibrium fell outside the IRCP polytope")
    if game.num_profiles > max_dim:
        return HullComparison(HULL_INCONCLUSIVE)
    vertices = enumerate_vertices(spec.system, max_dim=max_dim)
    ne_vectors = [nu.as_vector(game) for nu in ne_list]
    for vertex in vertices:
        rows = []
        for k in range(game.num_profiles):
            coeffs = tuple(vec[k] for vec in ne_vectors)
            rows.append(LinearConstraint(coeffs, EQUAL, vertex[k]))
        rows.append(LinearConstraint((Fraction(1),) * len(ne_list), EQUAL, Fraction(1)))
        system = ConstraintSystem(len(ne_list), tuple(rows),
                                  (Fraction(0),) * len(ne_list),
                                  (None,) * len(ne_list))
        if not PolytopeSolver(system).feasible:
            return HullComparison(
                HULL_PROPER_SUBSET,
                JointDistribution.from_vector(game, vertex))
    return HullComparison(HULL_EQUAL)


# -- guaranteed-utility efficiency --------------------------------------------


def _unilateral_guarantee(game: Game, a_star: Profile) -> bool:
    for i in range(game.num_players):
        target = game.u(i, a_star)
        for others in game.opponent_profiles(i):
            if game.u(i, game.insert_action(i, a_star[i], others)) < target:
                return False
    return True


def is_gue(game: Game, a_star: Sequence[int]) -> bool:
    """Pareto optimal among pure profiles plus the unilateral guarantee."""
    a_star = tuple(a_star)
    if not _unilateral_guarantee(game, a_star):
        return False
    base = game.payoff_vector(a_star)
    for profile in game.profiles():
        if profile == a_star:
            continue
        other = game.payoff_vector(profile)
        if all(o >= b for o, b in zip(other, base)) and any(
                o > b for o, b in zip(other, base)):
            return False
    return True


def is_strict_fractional_gue(game: Game, a_star: Sequence[int]) -> bool:
    """Pareto optimal among lotteries, uniquely so in utilities, plus the guarantee.

    Three exact checks: the unilateral guarantee, a zero-value improvement
    LP over all lotteries, and a singleton test on the lotteries that match
    a_star's utility profile exactly.
    """
    a_star = tuple(a_star)
    if not _unilateral_guarantee(game, a_star):
        return False
    n, num = game.num_players, game.num_profiles
    base = game.payoff_vector(a_star)
    # Improvement LP: mu in the simplex, s_i >= 0, E_mu[u_i] >= u_i(a*) + s_i.
    rows = []
    for i in range(n):
        coeffs = list(game.payoffs[i]) + [Fraction(0)] * n
        coeffs[num + i] = Fraction(-1)
        rows.append(LinearConstraint(tuple(coeffs), GREATER_EQUAL, base[i]))
    rows.append(LinearConstraint(
        tuple([Fraction(1)] * num + [Fraction(0)] * n), EQUAL, Fraction(1)))
    system = ConstraintSystem(num + n, tuple(rows),
                              (Fraction(0),) * (num + n), (None,) * (num + n))
    objective = tuple([Fraction(0)] * num + [Fraction(1)] * n)
    outcome = PolytopeSolver(system).optimize(objective, maximize=True)
    if outcome.status != OPTIMAL:
        raise SolverInvariantError("improvement LP must be solvable")
    if outcome.value > 0:
        return False
    # Strictness: only delta(a*) achieves exactly the a* utility profile.
    rows = [LinearConstraint(tuple(game.payoffs[i]), EQUAL, base[i]) for i in range(n)]
    rows.append(LinearConstraint((Fraction(1),) * num, EQUAL, Fraction(1)))
    system = ConstraintSystem(num, tuple(rows), (Fraction(0),) * num, (None,) * num)
    singleton = polytopes.singleton_over_system(game, system)
    return (singleton.is_singleton
            and singleton.point == JointDistribution.point_mass(a_star))


# -- serialization ------------------------------------------------------------


def distribution_to_dict(game: Game, mu: JointDistribution) -> dict[str, str]:
    return {str(game.profile_index(p)): format_rational(w)
            for p, w in sorted(mu.weights.items())}


def distribution_from_dict(game: Game, data: dict) -> JointDistribution:
    weights = {}
    for key, value in data.items():
        profile = game.profile_from_index(int(key))
        weights[profile] = parse_rational(value)
    return JointDistribution(weights)


def certificate_to_dict(cert: UniquenessCertificate) -> dict:
    return {
        "concept": cert.concept,
        "a_star": list(cert.a_star),
        "gamma": [format_rational(g) for g in cert.gamma],
        "slack": format_rational(cert.slack),
    }


def refutation_to_dict(game: Game, ref: Refutation) -> dict:
    return {
        "concept": ref.concept,
        "reason": ref.reason,
        "witnesses": [distribution_to_dict(game, w) for w in ref.witnesses],
    }


def verify_certificate(game: Game, data: dict) -> list[str]:
    """Re-check a serialized certificate against a game; returns problems found."""
    problems = []
    concept = data.get("concept")
    if concept not in ("ircp", "cce"):
        return [f"unknown certificate concept {concept!r}"]
    try:
        a_star = tuple(int(x) for x in data["a_star"])
        gamma = [parse_rational(g) for g in data["gamma"]]
        slack = parse_rational(data["slack"])
    except Exception as exc:  # malformed fields
        return [f"unreadable certificate: {exc}"]
    if len(gamma) != game.num_players:
        return ["gamma length disagrees with the player count"]
    if any(g <= 0 for g in gamma):
        problems.append("gamma must be strictly positive")
    if slack <= 0:
        problems.append("slack must be strictly positive")
    reference = game if concept == "ircp" else cce_reduction(game, a_star)
    deltas = _ircp_deltas(reference, a_star)
    recomputed = _weighted_slack(gamma, deltas)
    if recomputed is None:
        problems.append("weighted gains are not strictly negative everywhere")
    elif recomputed != slack:
        problems.append(
            f"slack mismatch: certificate says {slack}, recomputation gives {recomputed}")
    if concept == "ircp":
        # Weighted negativity pins the polytope only together with the levels.
        for i in range(game.num_players):
            if zerosum.maximin(game, i).value != game.u(i, a_star):
                problems.append(
                    f"player {i}'s security level differs from the certified payoff")
    else:
        pure = dict(polytopes.enumerate_pure_ne(game))
        if not pure.get(a_star, False):
            problems.append("certified profile is not a strict pure NE")
    return problems


def verify_refutation(game: Game, data: dict) -> list[str]:
    """Re-check a serialized refutation; witnesses must be genuine members."""
    problems = []
    concept = data.get("concept")
    if concept not in ("ircp", "cce"):
        return [f"unknown refutation concept {concept!r}"]
    try:
        witnesses = [distribution_from_dict(game, w) for w in data["witnesses"]]
    except Exception as exc:
        return [f"unreadable witnesses: {exc}"]
    spec = polytopes.build_polytope(game, concept)
    for idx, w in enumerate(witnesses):
        result = polytopes.membership(spec, w)
        if not result.is_member:
            problems.append(f"witness {idx} is not a {concept.upper()} member")
    if len(witnesses) == 2:
        if witnesses[0] == witnesses[1]:
            problems.append("witnesses are identical")
    elif len(witnesses) == 1:
        if concept != "cce":
            problems.append("single-witness refutations only apply to the CCE concept")
        elif len(witnesses[0].support()) == 1:
            problems.append("a lone pure witness cannot refute pure uniqueness")
    else:
        problems.append("refutations carry one or two witnesses")
    return problems
