"""Closed forms for monomials, checked against the linear algebra engine."""

from fractions import Fraction

from fxi import MonomialSpec, classify, closed_form_length, length_table, xi_polynomial
from fxi.monomial import left_limit_at_fpt, limsup_at_fpt

spec = MonomialSpec((1, 2, 3), 2)
poly = xi_polynomial(spec)
print("xi =", poly.coefficients, "on [0,", poly.valid_below, ")")
print("left limit at fpt:", left_limit_at_fpt(spec), "=", poly(Fraction(1, 3)))

for e in range(5):
    table = length_table(spec.polynomial(), e)
    oracle = [closed_form_length(spec, e, t) for t in range(table.q)]
    print(e, table.padded() == oracle)

# the value at the threshold oscillates when p is not 1 mod 3
for p in (2, 7):
    s = MonomialSpec((1, 3), p)
    c = classify(s)
    print(p, c.limit_exists_at_fpt, c.analysis.cycle, limsup_at_fpt(s))
