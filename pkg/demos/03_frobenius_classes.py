"""
Frobenius classes from factorization patterns
=============================================

For an unramified prime p the Frobenius class of p in a Galois group is
read off from how a defining polynomial factors mod p.  Four families are
built in: cyclotomic, quadratic, biquadratic and pure cubic fields.
"""

from collections import Counter

from cheblab.chebstats import sieve_primes
from cheblab.frobenius import discriminant, factor_pattern, kronecker_symbol, make_scenario

# x^3 - 2 over a few primes
f = [-2, 0, 0, 1]
print("disc(x^3 - 2) =", discriminant(f))
for p in (5, 7, 11, 31, 43):
    print(f"  p = {p:2d}: degrees {factor_pattern(f, p)}")

# the pure cubic field: pattern -> class of S3
sc = make_scenario("cubic:2")
print()
print(sc.name, "classes", sc.class_names, "ramified", sorted(sc.ramified))
for p in (5, 7, 31):
    print(f"  Frob_{p} =", sc.class_names[sc.classify(p)])

# quadratic fields split by a Kronecker symbol
q = make_scenario("quad:-23")
print()
print(q.name, [(p, q.class_names[q.classify(p)], kronecker_symbol(-23, p)) for p in (2, 3, 5, 7, 59)])

# class frequencies among the first primes already look like |C|/|G|
primes = sieve_primes(10**5)
for spec in ("cyclo:5", "biquad:-1,2", "cubic:2"):
    sc = make_scenario(spec)
    counts = Counter(sc.classify_many(primes).tolist())
    total = sum(v for k, v in counts.items() if k >= 0)
    shares = {sc.class_names[k]: round(v / total, 4) for k, v in sorted(counts.items()) if k >= 0}
    print(f"{spec:12s}", shares)
