"""Ratio-form contests: closed forms, grid proofs, and the share band.

Two players spend effort; player 1 wins a prize with probability
f(a1/a2).  For the standard lottery contest f(t) = t/(1+t) the unique
equilibrium is known in closed form, and a local potential argument
certifies that the discretized game has a unique coarse correlated
equilibrium on ANY effort grid containing it.
"""

from fractions import Fraction

from eqcert.contests import (
    ContestSpec,
    LinearCost,
    PowerCost,
    TullockRatio,
    band_functions,
    discretize_and_certify,
    local_potential,
    ratio_band_check,
    tullock_equilibrium,
    tullock_term,
    tullock_term_certificate,
    verify_prop3,
)

F = Fraction
standard = ContestSpec(TullockRatio(1), (1, 1), (LinearCost(1), LinearCost(1)))
a_star = tullock_equilibrium(1)
print(f"standard lottery contest: equilibrium {tuple(str(x) for x in a_star)}")

# The potential splits into one term per player, and the term has an
# exact sign certificate: multiplied through, it is -4 (x - 1/4)^2.
cert = tullock_term_certificate()
print(f"term quadratic {tuple(str(c) for c in cert.quadratic)}, "
      f"double root at {cert.root}, leading {cert.leading}")
phi = local_potential(standard, a_star, (F(1, 8), F(1, 8)), (F(1), F(1)))
print(f"potential at (1/8, 1/8): {phi} "
      f"(= 2 x term {tullock_term(F(1, 8))})")
print()

# Grid verification: strict NE on the grid plus negative potential off it.
grid = [F(k, 16) for k in range(1, 17)]
report = verify_prop3(standard, a_star, grid)
print(f"16-point grid check: ok = {report.ok}")
game, result = discretize_and_certify(standard, a_star, grid, "lottery 16x16")
print(f"discretized game certificate: unique CCE at "
      f"{game.profile_label(result.a_star)}, slack {result.slack}")
print()

# The same works for asymmetric prizes and curved costs; the proof
# weights are always the reciprocal prize values.
asymmetric = ContestSpec(TullockRatio(1), (2, 1),
                         (LinearCost(F(8, 9)), PowerCost(F(16, 9), 2)))
grids = ([F(k, 8) for k in range(1, 9)], [F(k, 16) for k in range(1, 9)])
report = verify_prop3(asymmetric, (F(1, 2), F(1, 4)), grids)
game, result = discretize_and_certify(asymmetric, (F(1, 2), F(1, 4)), grids)
print(f"asymmetric contest (prizes 2 and 1): grid ok = {report.ok}, "
      f"certified at {game.profile_label(result.a_star)}, "
      f"gamma = {tuple(str(g) for g in result.gamma)}")
print()

# Which success functions behave like this?  Anything inside an explicit
# band around 1/2.  The lottery share fits the c = 1/4 band strictly; the
# band edges themselves do not (the band is open).
upper, lower = band_functions(F(1, 4))
ratios = [F(k, 100) for k in range(1, 100)]
print(f"lottery share inside c=1/4 band: "
      f"{ratio_band_check(TullockRatio(1), F(1, 4), ratios)}")
print(f"upper envelope inside its own band: "
      f"{ratio_band_check(upper, F(1, 4), ratios)}")
print(f"band at t = 1/3: [{lower.at(F(1, 3))}, {upper.at(F(1, 3))}], "
      f"lottery share there: {TullockRatio(1).at(F(1, 3))}")
