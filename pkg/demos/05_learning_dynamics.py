"""No-regret learning as a numerical cross-check on the exact polytopes.

Multiplicative weights drives external regret to zero, so long-run
empirical play approaches the CCE polytope; when that polytope is a
single point, the whole trajectory must collapse onto it.  Regret
matching on conditional regrets does the same for the CE polytope.  Play
is sampled in floats, but the empirical distribution is exact, so the
final regrets below are exact rationals.
"""

from fractions import Fraction

from eqcert.contests import ContestSpec, LinearCost, TullockRatio, discretize_and_certify
from eqcert.dynamics import EXTERNAL_MW, INTERNAL_RM, run
from eqcert.games import JointDistribution, total_variation
from eqcert.generators import prisoners_dilemma, rock_paper_scissors

F = Fraction
STEPS, SEED, RATE = 20000, 1, 5.0

pd = prisoners_dilemma()
out = run(pd, EXTERNAL_MW, STEPS, SEED, RATE)
target = JointDistribution.point_mass((1, 1))
print(f"{pd.name}, multiplicative weights, {STEPS} steps:")
print(f"  TV distance to the unique CCE: "
      f"{float(total_variation(out.empirical, target)):.5f}")
print(f"  max external regret (exact): {out.max_external_regret} "
      f"= {float(out.max_external_regret):.6f}")
print()

contest = ContestSpec(TullockRatio(1), (1, 1), (LinearCost(1), LinearCost(1)))
grid = [F(k, 16) for k in range(1, 17)]
game, cert = discretize_and_certify(contest, (F(1, 4), F(1, 4)), grid,
                                    "lottery 16x16")
target = JointDistribution.point_mass(cert.a_star)
print(f"{game.name} (256 profiles, certified unique CCE at "
      f"{game.profile_label(cert.a_star)}):")
for steps in (STEPS, 4 * STEPS):
    out = run(game, EXTERNAL_MW, steps, SEED, RATE)
    print(f"  {steps:6d} steps: TV to the certificate "
          f"{float(total_variation(out.empirical, target)):.5f}, "
          f"max external regret {float(out.max_external_regret):.6f}")
print()

rps = rock_paper_scissors()
out = run(rps, INTERNAL_RM, STEPS, SEED)
print(f"{rps.name}, regret matching on conditional regrets, {STEPS} steps:")
print(f"  max internal regret: {float(out.max_internal_regret):.6f}")
print(f"  max external regret: {float(out.max_external_regret):.6f}")
print(f"  empirical weight on the diagonal: "
      f"{float(sum(out.empirical.weights.get((a, a), F(0)) for a in range(3))):.4f}")
