"""Monotone brackets around xi_f(alpha), and the pair F-signature."""

from fractions import Fraction

from fxi import bracket_sequences, pair_fsignature_estimate, parse_polynomial

f = parse_polynomial("x^2 + y^3", 2, 2)
alpha = Fraction(1, 3)
for e, lower, upper in bracket_sequences(f, 8, alpha):
    width = None if upper is None else float(upper - lower)
    print(e, lower, upper, width)

# s(R, f^t) for x*y matches (1 - t)^2 at grid points t < 1; at t = 1 one monomial survives
g = parse_polynomial("x*y", 2, 2)
for k in range(9):
    t = Fraction(k, 8)
    print(t, pair_fsignature_estimate(g, 3, t), (1 - t) ** 2)
