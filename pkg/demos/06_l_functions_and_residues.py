"""
L-functions, zeros and contour residues
=======================================

Dirichlet L-functions are evaluated through the Hurwitz zeta function
(Euler-Maclaurin with a rigorous remainder bound).  A zero is located by a
scan plus Newton and certified by the argument principle.  Integrating the
class-weighted log-derivative H(s, C) around the zero recovers the residue
predicted from the vanishing orders.
"""

from cheblab.frobenius import make_scenario
from cheblab.lfun import contour_residue_H, dirichlet_L, find_zero, tail_check

# L(2, chi_4) is Catalan's constant
v = dirichlet_L(4, 1, 2)
print("L(2, chi_4) =", v.value.real, "+/-", v.error)

# three evaluation routes at s = 3, chi mod 5
for method in ("hurwitz", "dirichlet-series", "euler-product"):
    ev = dirichlet_L(5, 1, 3, method=method)
    print(f"  {method:17s} {ev.value:.15f}  error <= {ev.error:.1e}")

# the first zero of L(s, chi_4) above the real axis
z = find_zero(4, 1, (5, 7))
print()
print("zero at", z.s0, " |L| =", z.abs_value, " winding =", round(z.winding, 6))

# residues of H(s, C) at that zero, one per class
sc = make_scenario("cyclo:4")
total = 0.0
for c, name in enumerate(sc.class_names):
    r = contour_residue_H(sc, c, z.s0)
    total += sc.group.n / sc.group.class_sizes[c] * abs(r.contour) ** 2
    print(f"  class {name}: contour {r.contour.real:+.12f}  predicted {r.prediction.real:+.1f}")
print("  sum |G|/|C| |res|^2 =", round(total, 9), "(orders:", r.ords, ")")

# away from zeros the contour integral vanishes
r = contour_residue_H(make_scenario("cyclo:5"), "all", complex(0.5, 3.3))
print("  zero-free point:", abs(r.contour))

# H and F differ by the prime powers p^k, k >= 2
print()
for row in tail_check(make_scenario("cubic:2"), 1.5, 10**5):
    print(f"  {row.class_name:8s} H - F = {row.h_minus_f.real:+.15f}  tail = {row.tail.real:+.15f}")
