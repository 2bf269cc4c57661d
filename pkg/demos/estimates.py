"""Finite-e estimates of e_HK, the F-signature and the F-pure threshold."""

from fxi import ehk_estimates, fpt_estimates, fsig_estimates, parse_polynomial

for text, p, e_max in [("x*y", 2, 6), ("x^2+y^3", 2, 6), ("x^2+y^3", 5, 3), ("x^3+y^3", 7, 2)]:
    f = parse_polynomial(text, 2, p)
    print(f"f = {text}, p = {p}")
    for seq in (ehk_estimates(f, e_max), fsig_estimates(f, e_max), fpt_estimates(f, e_max)):
        vals = ", ".join(str(v) for _, v in seq.values)
        print(f"  {seq.kind:5s} ({seq.monotonicity}, monotone={seq.is_monotone()}): {vals}")
    for note in seq.notes:
        print("   note:", note)

# fpt values only bound the threshold from above; x^2 at p=3 tends to 1/2
x2 = fpt_estimates(parse_polynomial("x^2", 2, 3), 6)
print([float(v) for _, v in x2.values])
