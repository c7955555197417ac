"""
Multiplicities of a simple module in a presentation kernel
===========================================================

Z/2 acts on Z/3 by inversion.  We compare the cohomological count with a
finite cover built from the free Γ-group on one generator.
"""

from gammapres import groups as G
from gammapres.instances import inversion_gamma_group, sign_module
from gammapres.modules import FpModule
from gammapres.presentations import (multiplicity_formula, multiplicity_oracle,
                                     multiplicity_terms, relation_cover, relator_rank)

h = inversion_gamma_group(G.cyclic(3))
sd = h.semidirect.group
print("|G ⋊ Γ| =", sd.order)

# the generator coming from Γ acts by -1, the one from G trivially
gamma_gen = sd.generators[-1]
sign = sign_module(sd, 3, [gamma_gen])
trivial = FpModule.trivial(sd, 3)

for name, a in (("sign", sign), ("trivial", trivial)):
    t = multiplicity_terms(1, h, a)
    print(f"{name:8s} xi={t.xi} H1={t.h1} H2={t.h2} h={t.h}  m={multiplicity_formula(1, h, a)}")

# a concrete cover with kernel a power of the sign module
omega = relation_cover(h, 1, sign)
print("cover order:", omega.source.g.order, " oracle m:", multiplicity_oracle(omega, sign))

for n in (1, 2, 3):
    print("n =", n, " formula m =", multiplicity_formula(n, h, sign))

print("relator rank (lower bound):", relator_rank(1, h)["value"])
