"""The three positivity cones and their certificates and witnesses.

Strongly positive <= Hermitian positive <= weakly positive; all three
coincide for (p,p)-forms with p in {0, 1, n-1, n}, and differ in between.

Run with:  python3 demos/03_positivity_cones.py
"""

import numpy as np

from chernweil import (ExteriorForm, SearchBudget, check_hermitian_positive,
                       check_positive, check_strongly_positive, decomposable,
                       gram_witness_form, reconstruct_certificate,
                       volume_coefficient)
from chernweil.exterior import ipow

budget = SearchBudget(random_starts=32, local_iters=100)

# the standard Kaehler form is strongly positive; the NNLS certificate
# reconstructs it from decomposable squares
n = 2
omega = ExteriorForm(n, 1, 1, {((j,), (j,)): 1j for j in range(1, n + 1)})
sp = check_strongly_positive(omega, budget)
back = reconstruct_certificate(sp, n, 1)
print("omega strongly positive:", sp.status.value,
      "| reconstruction gap:", (back - omega).max_abs())

# an indefinite diagonal is refuted by all three checks; the weak witness
# is a concrete tangent vector, the Hermitian witness a dual test form
u = ExteriorForm(n, 1, 1, {((1,), (1,)): 1j, ((2,), (2,)): -1j})
wp = check_positive(u, budget)
print("\nindefinite form:", wp.status.value, "margin", wp.margin)
print("weak witness vector:", np.round(wp.witness["vectors"][0], 6))
hp = check_hermitian_positive(u)
beta = gram_witness_form(hp, n, n - 1)
dual = beta.wedge(beta.conjugate()) * ipow((n - 1) ** 2)
print("Hermitian witness replays:", volume_coefficient(u.wedge(dual)))

# the classical separator between the cones at bidegree (2,2) on C^4:
# xi = e12 + e34 squares to a Hermitian-positive form that is NOT strongly
# positive (no nonnegative decomposable-square representation exists)
n = 4
e12 = decomposable([list(np.eye(n)[0]), list(np.eye(n)[1])])
e34 = decomposable([list(np.eye(n)[2]), list(np.eye(n)[3])])
xi = e12 + e34
u = xi.wedge(xi.conjugate()) * ipow(4)
print("\nsquare of e12+e34:")
print("  weakly positive:   ", check_positive(u, budget).status.value)
print("  Hermitian positive:", check_hermitian_positive(u).status.value)
sp = check_strongly_positive(u, budget)
print("  strongly positive: ", sp.status.value, f"({sp.detail})")
