"""
Closed-form multiplicity bounds
================================

All Galois-cohomological dimensions are inputs.
"""

from gammapres.arith import (LocalData, delta_ff, delta_nf_bound, mult_bound_main,
                             mult_bound_other_signatures, mult_bound_roots_of_unity)

# function field, genus 0, A = F_3 with one-dimensional coinvariants
print(delta_ff(LocalData(ell=3, dim_a=1, field="ff", genus=0, dim_coinv=1)))

# Q with A = F_ℓ and with a two-dimensional module
print(delta_nf_bound(LocalData(ell=5, dim_a=1, module_kind="trivial", dim_inv=1, ell_adic_ords=(1,))))
print(delta_nf_bound(LocalData(ell=5, dim_a=2, ell_adic_ords=(1,))))

# imaginary quadratic parameterization
for n in range(4):
    data = LocalData(ell=5, dim_a=2, dim_a_gamma=1, r1=1, eps=2, real_place_fixed_dims=(1,))
    print(n, mult_bound_other_signatures(n, data), mult_bound_main(n, data, "admissible"))

# Q(ζ_7): one place above 7 with ord_v(7) = 6, r2 = 3
data = LocalData(ell=7, dim_a=2, dim_a_gamma=0, r2=3, ell_adic_ords=(6,))
print([mult_bound_roots_of_unity(n, data) for n in range(4)])
