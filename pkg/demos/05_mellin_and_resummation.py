"""
Two ways to write the same prime sum
====================================

F(s, C) = sum_p ([Frob_p in C] - |C|/|G|) log p * p^-s, truncated at X.

Partial summation turns it into an integral against the step function
delta_C(x):  F = s * int_1^X delta_C(x) x^(-s-1) dx + delta_C(X) X^(-s).
Separately, delta_C(x) itself can be rebuilt from the character sums
S_chi(x) = sum_p chi(Frob_p) log p using orthogonality of columns.
"""

from cheblab.chebstats import mellin_check, resum_by_class
from cheblab.frobenius import make_scenario

sc = make_scenario("cyclo:3")
for s in (1.1, 1.5, 3.0):
    r = mellin_check(sc, s, 10**5)
    print(f"s = {s}: series {r.series:+.15f}  integral {r.integral:+.15f}  rel diff {r.rel_diff:.1e}")

print()
for spec in ("cyclo:5", "cubic:2", "biquad:-1,5"):
    rep = resum_by_class(make_scenario(spec), 10**5)
    print(f"{spec}: psi = {rep.psi:.3f}")
    for name, d, v in zip(rep.class_names, rep.direct, rep.via_characters):
        print(f"  {name:8s} direct {d:+12.6f}   from characters {v.real:+12.6f}")
    print(f"  worst mismatch {rep.max_error:.2e}")
