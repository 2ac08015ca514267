"""Solution-concept polytopes: builders, membership, singletons, extremality."""

import itertools
import random
from fractions import Fraction

import pytest

from eqcert import generators
from eqcert.games import (
    JointDistribution,
    MixedAction,
    affine_transform,
    product_distribution,
    strategic_transform,
)
from eqcert.lp import enumerate_vertices
from eqcert.polytopes import (
    Degenerate2x2Error,
    PolytopeError,
    build_polytope,
    coordinate_bounds,
    enumerate_pure_ne,
    is_extreme_point,
    is_singleton,
    membership,
    mixed_ne_2x2,
    winkler_support_bound,
)

from conftest import F


def _uniform_product(game):
    mixes = [MixedAction(i, {a: Fraction(1, game.shape[i])
                             for a in range(game.shape[i])})
             for i in range(game.num_players)]
    return product_distribution(game, mixes)


def _rps_diagonal():
    return JointDistribution({(0, 0): F(1, 3), (1, 1): F(1, 3), (2, 2): F(1, 3)})


def test_incentive_row_counts():
    rps = generators.rock_paper_scissors()
    assert len(build_polytope(rps, "cce").incentive_info) == 6
    assert len(build_polytope(rps, "ce").incentive_info) == 12
    ircp = build_polytope(rps, "ircp")
    assert len(ircp.incentive_info) == 2
    assert ircp.maximin_values == (F(0), F(0))
    with pytest.raises(PolytopeError):
        build_polytope(rps, "nash")


def test_rps_diagonal_uniform_is_cce_not_ce():
    rps = generators.rock_paper_scissors()
    mu = _rps_diagonal()
    assert membership(build_polytope(rps, "cce"), mu).is_member
    result = membership(build_polytope(rps, "ce"), mu)
    assert not result.is_member
    # conditioned on any recommendation, deviating one step up gains 1
    assert all(v.shortfall > 0 for v in result.violations)


def test_rps_antidiagonal_pair_is_ircp_not_cce():
    rps = generators.rock_paper_scissors()
    mu = JointDistribution({(0, 1): F(1, 2), (1, 0): F(1, 2)})
    assert membership(build_polytope(rps, "ircp"), mu).is_member
    assert not membership(build_polytope(rps, "cce"), mu).is_member


def test_nash_equilibria_belong_to_every_polytope():
    for g in (generators.matching_pennies(), generators.prisoners_dilemma(),
              generators.rock_paper_scissors()):
        if g.shape == (2, 2):
            profiles = [product_distribution(g, pair)
                        for pair in mixed_ne_2x2(g)]
        else:
            profiles = [_uniform_product(g)]
        for mu in profiles:
            for concept in ("ce", "cce", "ircp"):
                assert membership(build_polytope(g, concept), mu).is_member


def test_membership_reports_pd_cooperation_violations():
    pd = generators.prisoners_dilemma()
    spec = build_polytope(pd, "cce")
    result = membership(spec, JointDistribution.point_mass((0, 0)))
    assert not result.is_member
    assert len(result.violations) == 2
    for v in result.violations:
        assert v.shortfall == 1  # defecting against c pays 3 instead of 2
        assert v.info.deviation == 1
    assert membership(build_polytope(pd, "ircp"),
                      JointDistribution.point_mass((0, 0))).is_member


def test_membership_uniform_matching_pennies():
    mp = generators.matching_pennies()
    assert membership(build_polytope(mp, "cce"), _uniform_product(mp)).is_member


def test_coordinate_bounds_matching_pennies():
    spec = build_polytope(generators.matching_pennies(), "cce")
    for p in spec.game.profiles():
        assert coordinate_bounds(spec, p) == (F(1, 4), F(1, 4))


def test_coordinate_bounds_pd_collapses_to_defection():
    spec = build_polytope(generators.prisoners_dilemma(), "cce")
    assert coordinate_bounds(spec, (1, 1)) == (F(1), F(1))
    assert coordinate_bounds(spec, (0, 0)) == (F(0), F(0))


def test_coordinate_bounds_table2_off_diagonal_zero():
    spec = build_polytope(generators.table2(), "ircp")
    assert coordinate_bounds(spec, (0, 1)) == (F(0), F(0))


def test_singleton_matching_pennies_cce():
    res = is_singleton(build_polytope(generators.matching_pennies(), "cce"))
    assert res.is_singleton
    assert res.point.weights == {p: F(1, 4) for p in
                                 generators.matching_pennies().profiles()}


def test_singleton_rps_cce_refuted_with_two_members():
    spec = build_polytope(generators.rock_paper_scissors(), "cce")
    res = is_singleton(spec)
    assert not res.is_singleton
    a, b = res.witnesses
    assert a != b
    assert membership(spec, a).is_member and membership(spec, b).is_member


def test_singleton_parking_ircp():
    g = generators.parking(3, 1, F(1, 4), F(3, 5))
    res = is_singleton(build_polytope(g, "ircp"))
    assert res.is_singleton
    assert res.point.weights == {(0, 0): F(1)}


def test_extreme_points():
    pd = generators.prisoners_dilemma()
    assert is_extreme_point(build_polytope(pd, "cce"),
                            JointDistribution.point_mass((1, 1)))
    mp = generators.matching_pennies()
    assert is_extreme_point(build_polytope(mp, "cce"), _uniform_product(mp))
    rps = generators.rock_paper_scissors()
    assert not is_extreme_point(build_polytope(rps, "ircp"),
                                _uniform_product(rps))
    with pytest.raises(PolytopeError):
        is_extreme_point(build_polytope(pd, "cce"),
                         JointDistribution.point_mass((0, 0)))


def test_rps_uniform_decomposes_inside_ircp():
    # direct witness for non-extremality: nu +- eps*(delta_rr - delta_pp)
    rps = generators.rock_paper_scissors()
    spec = build_polytope(rps, "ircp")
    nu = _uniform_product(rps).weights
    eps = F(1, 18)
    up = dict(nu)
    up[(0, 0)] += eps
    up[(1, 1)] -= eps
    down = dict(nu)
    down[(0, 0)] -= eps
    down[(1, 1)] += eps
    for w in (up, down):
        assert membership(spec, JointDistribution(w)).is_member


def test_winkler_bound_point_mass():
    pd = generators.prisoners_dilemma()
    report = winkler_support_bound(build_polytope(pd, "cce"),
                                   JointDistribution.point_mass((1, 1)))
    assert report.support_size == 1
    assert report.bound_holds


def test_winkler_bound_matching_pennies_ne():
    mp = generators.matching_pennies()
    report = winkler_support_bound(build_polytope(mp, "cce"),
                                   _uniform_product(mp))
    assert report.support_size == 4
    assert report.active_incentive_rank >= 3
    assert report.bound_holds


def test_winkler_bound_rejects_non_extreme():
    rps = generators.rock_paper_scissors()
    with pytest.raises(PolytopeError):
        winkler_support_bound(build_polytope(rps, "ircp"),
                              _uniform_product(rps))


def test_winkler_bound_on_every_rps_cce_vertex():
    rps = generators.rock_paper_scissors()
    spec = build_polytope(rps, "cce")
    for vert in enumerate_vertices(spec.system):
        mu = JointDistribution.from_vector(rps, vert)
        assert winkler_support_bound(spec, mu).bound_holds


def test_enumerate_pure_ne():
    assert enumerate_pure_ne(generators.prisoners_dilemma()) == [((1, 1), True)]
    assert enumerate_pure_ne(generators.matching_pennies()) == []
    # (a1,a2) is strict (each deviation drops 1 to 0); (b1,b2) ties both ways
    assert enumerate_pure_ne(generators.table2()) == [
        ((0, 0), True), ((1, 1), False)]


def test_mixed_ne_2x2_matching_pennies():
    (pair,) = mixed_ne_2x2(generators.matching_pennies())
    assert pair[0].weights == {0: F(1, 2), 1: F(1, 2)}
    assert pair[1].weights == {0: F(1, 2), 1: F(1, 2)}


def test_mixed_ne_2x2_pd_and_coordination(coordination):
    (pair,) = mixed_ne_2x2(generators.prisoners_dilemma())
    assert pair[0].is_pure and pair[0].support() == (1,)
    assert pair[1].is_pure and pair[1].support() == (1,)
    ne = mixed_ne_2x2(coordination)
    assert len(ne) == 3
    mixed = [p for p in ne if not p[0].is_pure]
    assert len(mixed) == 1


def test_mixed_ne_2x2_mp_type_family():
    for seed in range(6):
        g = generators.random_mp_type(seed=seed)
        ne = mixed_ne_2x2(g)
        assert len(ne) == 1
        p1, p2 = ne[0]
        assert not p1.is_pure and not p2.is_pure
        # indifference: both actions of each player pay the same
        for i, mix in ((0, p2), (1, p1)):
            payoffs = []
            for a in range(2):
                total = sum(
                    w * g.u(i, g.insert_action(i, a, (b,)))
                    for b, w in mix.weights.items())
                payoffs.append(total)
            assert payoffs[0] == payoffs[1]


def test_mixed_ne_2x2_guards(zero_game):
    with pytest.raises(Degenerate2x2Error):
        mixed_ne_2x2(zero_game)
    with pytest.raises(PolytopeError):
        mixed_ne_2x2(generators.rock_paper_scissors())


def _random_distribution(game, rng):
    raw = [rng.randint(0, 4) for _ in range(game.num_profiles)]
    if sum(raw) == 0:
        raw[0] = 1
    total = sum(raw)
    weights = {p: Fraction(x, total)
               for p, x in zip(game.profiles(), raw) if x}
    return JointDistribution(weights)


def test_inclusion_chain_on_random_games():
    rng = random.Random(11)
    shapes = [(2, 2), (2, 3), (2, 2, 2), (2, 2), (2, 3), (2, 2, 2), (3, 3)]
    for trial, shape in enumerate(shapes):
        g = generators.random_game(shape, seed=trial)
        specs = {c: build_polytope(g, c) for c in ("ce", "cce", "ircp")}
        if shape != (3, 3):
            # CE vertex enumeration on 3x3 is combinatorially heavy; the
            # random-point chain below still covers that shape.
            for v in enumerate_vertices(specs["ce"].system):
                mu = JointDistribution.from_vector(g, v)
                assert membership(specs["cce"], mu).is_member
        for v in enumerate_vertices(specs["cce"].system):
            mu = JointDistribution.from_vector(g, v)
            assert membership(specs["ircp"], mu).is_member
        # random points obey the chain as well
        for _ in range(5):
            mu = _random_distribution(g, rng)
            if membership(specs["ce"], mu).is_member:
                assert membership(specs["cce"], mu).is_member
            if membership(specs["cce"], mu).is_member:
                assert membership(specs["ircp"], mu).is_member


def test_product_cce_members_are_nash():
    grid = [F(0), F(1, 4), F(1, 2), F(3, 4), F(1)]
    for seed in range(6):
        g = generators.random_game((2, 2), seed=seed + 100)
        spec = build_polytope(g, "cce")
        for p, q in itertools.product(grid, repeat=2):
            mixes = (MixedAction(0, {0: p, 1: 1 - p}),
                     MixedAction(1, {0: q, 1: 1 - q}))
            mu = product_distribution(g, mixes)
            if not membership(spec, mu).is_member:
                continue
            # best-response check: no pure deviation beats the profile
            for i, mix in enumerate(mixes):
                expected = mu.expected_utility(g, i)
                for a in range(2):
                    other = mixes[1 - i]
                    dev = sum(w * g.u(i, g.insert_action(i, a, (b,)))
                              for b, w in other.weights.items())
                    assert dev <= expected


def test_two_action_games_ce_equals_cce():
    for seed in range(4):
        for shape in ((2, 2), (2, 2, 2)):
            g = generators.random_game(shape, seed=seed + 40)
            ce = build_polytope(g, "ce")
            cce = build_polytope(g, "cce")
            for v in enumerate_vertices(ce.system):
                assert membership(cce, JointDistribution.from_vector(g, v)).is_member
            for v in enumerate_vertices(cce.system):
                assert membership(ce, JointDistribution.from_vector(g, v)).is_member


def test_singleton_agrees_with_vertex_oracle():
    cases = [generators.matching_pennies(), generators.prisoners_dilemma(),
             generators.table2()]
    cases += [generators.random_game((2, 2), seed=s) for s in range(6)]
    cases += [generators.random_game((2, 2, 2), seed=s) for s in range(2)]
    for g in cases:
        for concept in ("ce", "cce", "ircp"):
            spec = build_polytope(g, concept)
            verts = enumerate_vertices(spec.system)
            assert is_singleton(spec).is_singleton == (len(verts) == 1)


def test_cce_membership_invariant_under_strategic_transform():
    rng = random.Random(5)
    for seed in range(5):
        g = generators.random_game((2, 2), seed=seed + 60)
        offsets = [{opp: Fraction(rng.randint(-3, 3))
                    for opp in g.opponent_profiles(i)} for i in range(2)]
        h = strategic_transform(
            g, (Fraction(2), Fraction(3)),
            tuple((lambda opp, i=i: offsets[i][opp]) for i in range(2)))
        for concept in ("ce", "cce"):
            spec_g = build_polytope(g, concept)
            spec_h = build_polytope(h, concept)
            for _ in range(6):
                mu = _random_distribution(g, rng)
                assert (membership(spec_g, mu).is_member
                        == membership(spec_h, mu).is_member)


def test_ircp_membership_invariant_under_affine_transform():
    rng = random.Random(6)
    for seed in range(5):
        g = generators.random_game((2, 2), seed=seed + 70)
        h = affine_transform(g, (Fraction(3), Fraction(1, 2)),
                             (Fraction(-2), Fraction(5)))
        spec_g = build_polytope(g, "ircp")
        spec_h = build_polytope(h, "ircp")
        for _ in range(8):
            mu = _random_distribution(g, rng)
            assert (membership(spec_g, mu).is_member
                    == membership(spec_h, mu).is_member)


def test_cce_equals_ircp_under_all_strategic_transforms():
    # a non-CCE point is expelled from IRCP by zeroing the gainful deviation
    rng = random.Random(9)
    for seed in range(6):
        g = generators.random_game((2, 2), seed=seed + 80)
        cce = build_polytope(g, "cce")
        for _ in range(6):
            mu = _random_distribution(g, rng)
            result = membership(cce, mu)
            if result.is_member:
                continue
            worst = max(result.violations, key=lambda v: v.shortfall)
            i, dev = worst.info.player, worst.info.deviation
            beta = [lambda opp: Fraction(0), lambda opp: Fraction(0)]
            beta[i] = lambda opp, i=i, dev=dev: -g.u(
                i, g.insert_action(i, dev, opp))
            h = strategic_transform(g, (Fraction(1), Fraction(1)), tuple(beta))
            assert not membership(build_polytope(h, "ircp"), mu).is_member
