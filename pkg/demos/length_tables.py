"""Length tables and the step functions they define."""

from fractions import Fraction

from fxi import c_value, length_table, parse_polynomial, xi_step

f = parse_polynomial("x*y", 2, 2)

for e in range(1, 5):
    table = length_table(f, e)
    print(e, table.lengths, "mu =", table.mu, "sum =", sum(table.lengths))

# the step function at level 3, with exact values
step = xi_step(length_table(f, 3))
for x, y in step.breakpoints():
    print(f"{str(x):>5}  {str(y):>6}")

# the cusp behaves differently at p = 5: f^4 already vanishes
cusp = parse_polynomial("x^2 + y^3", 2, 5)
table = length_table(cusp, 1)
print(table.lengths, [c_value(table, t) for t in range(5)])
print(step(Fraction(1, 3)))
