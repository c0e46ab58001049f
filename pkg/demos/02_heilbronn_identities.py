"""
Residues, orders and the Heilbronn character
============================================

Suppose each nontrivial L(s, chi) of a Galois extension vanishes to order
ord_chi at some point s0.  Character orthogonality then pins down the
residues of the class-weighted log-derivative there.  This script checks
those identities on synthetic order vectors with exact arithmetic.
"""

import random

from cheblab.groups import build_group
from cheblab.heilbronn import (
    OrdVector,
    check_cyclic_nonneg,
    euler_column_identity,
    heilbronn_theta,
    random_ords,
    residues_from_ords,
    verify_eq4_equality,
    verify_foote_murty,
    zeta_quotient_order,
)

G = build_group("S4")
table = G.character_table
print(G.name, "classes:", [c.name for c in G.classes])
print("degrees:", table.degrees)

# one order per nontrivial character
ords = OrdVector(G, (0, 1, 2, 0))
res = residues_from_ords(table, ords)
print()
print("ords          :", ords.ord)
print("residues      :", [str(v) for v in res.values])

# the weighted residue norm equals the sum of squared orders
lhs, rhs = verify_eq4_equality(table, ords)
print("sum |G|/|C| |res|^2 =", lhs, " sum ord^2 =", rhs)

# and at the identity class the residue is minus the order of zeta_L / zeta_K, over |G|
print("zeta quotient order :", zeta_quotient_order(table, ords))

# many random vectors, still exact
rng = random.Random(3)
for _ in range(200):
    verify_eq4_equality(table, random_ords(G, rng))
print("200 random order vectors: equality holds")

# theta = sum ord_chi chi restricts to genuine characters on cyclic subgroups
theta = heilbronn_theta(table, OrdVector(G, (1, 0, 2, 1)))
print()
print("theta         :", [str(v) for v in theta.values])
print("cyclic test   :", check_cyclic_nonneg(theta).ok)
rep = verify_foote_murty(theta)
print("theta(1) =", rep.theta_at_1, " <theta,theta> =", rep.norm, " bound theta(1)^2 =", rep.norm_bound)

# column identity: sum_chi chi(1) chi(g^k) = |G| [g^k = 1]
print()
for c, cls in enumerate(G.classes):
    row = [euler_column_identity(table, c, k)[0] for k in range(1, 7)]
    print(f"  {cls.name:12s} k=1..6:", [str(v) for v in row])
