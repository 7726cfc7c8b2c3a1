"""Exact symbolic layer: Schur determinants and flag-bundle push-forwards.

Everything here is integer arithmetic; two independent routes (the
determinantal push-forward rule and the divided-difference oracle) must
agree monomial by monomial.

Run with:  python3 demos/04_pushforward_identities.py
"""

from chernweil import (FlagType, SymPoly, complete_flag_oracle, dp_nu,
                       dp_pushforward, enumerate_partitions, expand_in_roots,
                       gschur_in_segre, jacobi_trudi_check, schur_in_chern,
                       segre_to_chern)

# partitions of weight 3 with parts <= 3, and their Schur determinants
print("partitions (3,3):", enumerate_partitions(3, 3))
for sigma in enumerate_partitions(3, 3):
    print(f"S_{sigma} =", schur_in_chern(sigma, 3).pretty("c1 c2 c3".split()))

# the headline identity: pushing xi1^4 xi2^2 down the complete rank-3 flag
# gives the generalized Schur polynomial s_(-2,1,4), whose Chern expansion
# is exactly S_(2,1,0) = c1 c2 - c3
flag = FlagType.complete(3)
print("\nflag type rho:", flag.rho, "| nu:", dp_nu(flag),
      "| fiber dimension:", flag.relative_dimension)
pushed = dp_pushforward(SymPoly.monomial((4, 2, 0)), flag)
print("pushed s-polynomial:", pushed.pretty("s1 s2 s3 s4".split()))
print("equals s_(-2,1,4):", pushed == gschur_in_segre((-2, 1, 4)))
print("in Chern variables:",
      segre_to_chern(pushed, 3).pretty("c1 c2 c3".split()))

# cross-check against the divided-difference oracle in root variables
left = expand_in_roots(pushed, 3, "s")
right = complete_flag_oracle(SymPoly.monomial((4, 2, 0)), 3)
print("oracle agrees:", left == right)

# the rank-2 companion identity: xi1^4 xi2^2 -> s_(1,4) = c1 c2^2
pushed2 = dp_pushforward(SymPoly.monomial((4, 2)), FlagType.complete(2))
print("\nrank-2 push-forward:",
      segre_to_chern(pushed2, 2).pretty("c1 c2".split()))

# Jacobi-Trudi duality holds for every partition in the sweep
ok = all(jacobi_trudi_check(sigma, r)
         for k in range(1, 7) for r in range(1, 5)
         for sigma in enumerate_partitions(k, r))
print("Jacobi-Trudi sweep (weight <= 6, rank <= 4):", ok)

# partial flags compose: rank-2 front block, then the (0,1,3) flag
two_step = dp_pushforward(SymPoly.monomial((0, 0, 2)), FlagType((0, 1, 3)))
print("\n(0,1,3) push-forward of xi3^2:", two_step.pretty("s1 s2".split()))
