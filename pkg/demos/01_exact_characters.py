"""
Exact character tables
======================

Character values live in a cyclotomic field Q(zeta_m).  Every identity below
is checked with exact rational arithmetic, never with floats.
"""

from cheblab.exactalg import Cyclotomic, complex_embed
from cheblab.groups import build_group, inner_product, orthogonality_report, restrict_to_cyclic

# zeta_3 satisfies 1 + zeta + zeta^2 = 0 exactly
z = Cyclotomic.zeta(3)
print("1 + z + z^2 =", Cyclotomic.rational(3, 1) + z + z * z)
print("z embedded  =", complex_embed(z))

# S3 has three classes and three irreducible characters
S3 = build_group("S3")
table = S3.character_table
print()
print("class sizes:", S3.class_sizes)
for name, chi in zip(table.names, table.irreducibles):
    print(f"  {name:9s}", [str(v) for v in chi.values])

# row and column orthogonality, exactly
report = orthogonality_report(S3)
print("orthogonality failures:", report["failures"])

# the regular character decomposes with multiplicity chi(1)
reg = table.regular_character()
print("<reg, chi> =", [str(inner_product(reg, chi)) for chi in table.irreducibles])

# restricting the 2-dimensional character to the cyclic group generated by a 3-cycle
std = table.irreducibles[2]
print("std on <(1 2 3)>:", restrict_to_cyclic(std, S3.classes[2].representative))

# a larger table: Q8 and its 2-dimensional character
Q8 = build_group("Q8")
print()
print("Q8 degrees:", Q8.character_table.degrees, " failures:", orthogonality_report(Q8)["failures"])
