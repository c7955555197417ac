"""
Random relations in a finite admissible Γ-group
================================================

The closed-form product against exact enumeration, then a seeded
Monte-Carlo histogram of quotient classes.
"""

import math

from gammapres import groups as G
from gammapres.instances import inversion_gamma_group, z3_on_klein
from gammapres.randmodel import (decompose, exhaustive_generation_probability,
                                 exhaustive_quotient_distribution, generation_probability,
                                 sample_quotients)

f = inversion_gamma_group(G.elementary_abelian(3, 2))
everything = range(f.g.order)
d = decompose(f, everything)
print(d.to_dict())

for k in range(1, 5):
    closed = generation_probability(d, k)
    exact = exhaustive_generation_probability(f, everything, k)
    print(f"n+u={k}: closed {closed}  enumerated {exact}")

# Z/3 permuting the involutions of V4: the endomorphism field is F_4
w2 = G.direct_product_gamma(z3_on_klein(), z3_on_klein())
dw = decompose(w2, range(w2.g.order))
print([generation_probability(dw, k) for k in range(1, 5)])

draws = 100_000
hist = sample_quotients(f, 2, draws, seed=7)
law = exhaustive_quotient_distribution(f, 2)
for b, row in zip(hist.buckets, sorted(law, key=lambda r: r["order"])):
    p = row["probability"]
    sigma = math.sqrt(draws * p * (1 - p))
    print(f"|F/R| = {b['order']:2d}  count {b['count']:6d}  expected {float(draws * p):9.1f}  ±{sigma:.1f}")
