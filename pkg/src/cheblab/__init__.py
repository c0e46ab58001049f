"""Exact character identities and Chebotarev-type prime statistics.

Modules:

* ``exactalg``  - exact arithmetic in Q and cyclotomic fields
* ``groups``    - finite groups as tables, conjugacy classes, character tables
* ``heilbronn`` - residue formula, norm identity, Heilbronn characters
* ``frobenius`` - Frobenius classes of primes in explicit Galois extensions
* ``chebstats`` - sieve-driven psi_C(x) statistics
* ``lfun``      - truncated prime sums, Dirichlet L-functions, zeros, residues
* ``cli``       - the ``cheblab`` command
"""

__version__ = "0.1.0"

from .errors import ClassificationError, VerificationError
from .exactalg import Cyclotomic, complex_embed, cyclotomic_poly
from .groups import CharacterTable, ClassFunction, GroupTable, build_group, inner_product, restrict_to_cyclic
from .frobenius import Scenario, factor_pattern, kronecker_symbol, make_scenario

__all__ = [
    "__version__",
    "ClassificationError",
    "VerificationError",
    "Cyclotomic",
    "complex_embed",
    "cyclotomic_poly",
    "CharacterTable",
    "ClassFunction",
    "GroupTable",
    "build_group",
    "inner_product",
    "restrict_to_cyclic",
    "Scenario",
    "factor_pattern",
    "kronecker_symbol",
    "make_scenario",
]
