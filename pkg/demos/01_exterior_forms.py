"""Tour of the exterior-algebra layer: building (p,q)-forms on C^n,
wedging and conjugating them, and reading off volume pairings.

Run with:  python3 demos/01_exterior_forms.py
"""

import numpy as np

from chernweil import (ExteriorForm, decomposable, evaluate_pairing,
                       hermitian_gram, one_form, volume_coefficient, wedge)

n = 4

# a (1,0)-covector from coefficients, and basis monomials by index tuples
alpha = one_form([1.0, 0.0, 2.0j, 0.0])
e12 = ExteriorForm.basis(n, (1, 2), ())
e34 = ExteriorForm.basis(n, (3, 4), ())

print("alpha =", sorted(alpha.items()))
print("bidegree of e12 ^ conj(e34):", wedge(e12, e34.conjugate()).bidegree)

# xi = e12 + e34 is the classical non-decomposable (2,0)-form: its wedge
# square is nonzero, while squares of decomposable forms always vanish
xi = e12 + e34
print("\nxi ^ xi =", sorted(wedge(xi, xi).items()))
eta = decomposable([[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 1.0, 0.0]])
print("eta ^ eta =", sorted(wedge(eta, eta).items()))

# i^{p^2} xi ^ conj(xi) is a real (2,2)-form; its pairing with a pair of
# tangent vectors is the squared modulus of a 2x2 minor combination
u = xi.wedge(xi.conjugate()) * (1j) ** 4
print("\nu is real:", u.is_real())
vectors = [np.array([1.0, 0.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0, 0.0])]
print("u paired with span(e1, e2):", evaluate_pairing(u, vectors))

# the Gram matrix of u against complementary test forms is PSD here
G, basis = hermitian_gram(u)
print("\nGram eigenvalues:", np.round(np.linalg.eigvalsh(G), 12))
print("Gram basis:", basis)

# top-degree forms reduce to a multiple of the standard volume form
top = wedge(u, u)
print("\nvolume coefficient of u ^ u:", volume_coefficient(top))
