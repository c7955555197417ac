"""
Varieties, completions and socle heights
=========================================
"""

from gammapres import groups as G
from gammapres.varieties import (VarietySpec, height, height_hat, height_hat_of_variety,
                                 pro_c_completion, socle_series, variety_contains)


def T(g):
    return G.GammaGroup.trivial_action(g)


c = VarietySpec((T(G.symmetric(3)),))
for g in (G.cyclic(6), G.alternating(4), G.symmetric(4), G.dihedral(4), G.elementary_abelian(3, 2)):
    m = variety_contains(c, T(g))
    q, _ = pro_c_completion(T(g), c)
    print(f"{g.name:8s} in var(S3): {m.contains!s:5s} ({m.status}); completion order {q.g.order}")

s4 = G.symmetric(4)
print("socle series of S4:", [len(x) for x in socle_series(s4)], " height", height(s4))

for g in (G.cyclic(8), G.quaternion(), G.elementary_abelian(2, 3)):
    print(g.name, "hhat =", height_hat(g))

print("hhat of var(Z/8, S3):", height_hat_of_variety(VarietySpec((T(G.cyclic(8)), T(G.symmetric(3))))))
