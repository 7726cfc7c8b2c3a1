"""Membership tests for the positivity cones of real (p,p)-forms.

Three nested cones, ordered strongly <= Hermitian <= weakly positive:

* weak positivity: pairing against every decomposable test tuple is
  nonnegative.  Tested by multistart alternating minimization over tuples of
  unit vectors; refutations are exact (the witness value replays), while
  certifications are heuristic and labeled as such.
* Hermitian positivity: the Gram matrix against decomposable (q,0) basis
  forms is positive semidefinite.  Exact up to floating point.
* strong positivity: membership in the cone generated by decomposable
  squares.  Certified by a nonnegative-least-squares fit against a sampled
  dictionary of squares; refuted through the Hermitian dual (any negative
  Gram eigenvalue produces a dual witness), otherwise Unknown.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np
import scipy.optimize

from .curvature import SearchBudget
from .exterior import (ExteriorForm, NotReal, decomposable, evaluate_pairing,
                       hermitian_gram, ipow, multi_indices, volume_coefficient)


class Status(Enum):
    CERTIFIED = "certified"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class PositivityVerdict:
    status: Status
    margin: float
    witness: dict | None = None
    heuristic: bool = False
    detail: str = ""


# ---------------------------------------------------------------------------
# weak positivity: search over decomposable test tuples

def _index_tables(n: int, p: int):
    """Static maps for expanding a wedge by one vector.

    For each size-p index set K (0-based positions into the size-(p-1) list)
    the table holds (slot of K minus a, sign, a) for each a in K.
    """
    small = {c: i for i, c in enumerate(itertools.combinations(range(n), p - 1))}
    table = []
    for K in itertools.combinations(range(n), p):
        rows = []
        for pos, a in enumerate(K):
            rest = tuple(x for x in K if x != a)
            rows.append((small[rest], -1.0 if pos % 2 else 1.0, a))
        table.append(rows)
    return table


def _wedge_vectors(ws: np.ndarray) -> np.ndarray:
    """Plucker coordinates of w_1 ^ ... ^ w_p for a stack ws[s, i, :].

    Built by repeated one-vector extension; the overall sign convention
    cancels in every quadratic use below.
    """
    s, p, n = ws.shape
    cur = np.ones((s, 1), dtype=complex)
    for t in range(1, p + 1):
        table = _index_tables(n, t)
        nxt = np.zeros((s, len(table)), dtype=complex)
        for idx, rows in enumerate(table):
            acc = np.zeros(s, dtype=complex)
            for slot, sign, a in rows:
                acc += sign * ws[:, t - 1, a] * cur[:, slot]
            nxt[:, idx] = acc
        cur = nxt
    return cur


def _dense_matrix(u: ExteriorForm) -> np.ndarray:
    combos = {c: i for i, c in enumerate(multi_indices(u.n, u.p))}
    N = len(combos)
    U = np.zeros((N, N), dtype=complex)
    for (I, J), c in u.coeffs.items():
        U[combos[I], combos[J]] = c
    return U


def check_positive(u: ExteriorForm, budget: SearchBudget = SearchBudget()) -> PositivityVerdict:
    """Weak positivity by multistart alternating minimization.

    Minimizes the pairing over tuples of p unit vectors; each coordinate
    update is an exact minimal-eigenvector step in one vector with the
    others fixed.  Refutations replay through evaluate_pairing; a Certified
    answer is heuristic (no refutation found within budget).
    """
    p = u.p
    if u.q != p:
        raise ValueError(f"bidegree {u.bidegree} is not of the form (p,p)")
    if not u.is_real():
        raise NotReal("form is not real within tolerance")
    if p == 0:
        val = float(u.get((), ()).real)
        status = Status.REFUTED if val < -budget.tol else Status.CERTIFIED
        witness = {"vectors": [], "value": val} if status is Status.REFUTED else None
        return PositivityVerdict(status, val, witness, heuristic=False)
    if u.is_zero():
        return PositivityVerdict(Status.CERTIFIED, 0.0, None, heuristic=True,
                                 detail="zero form")

    n = u.n
    U = _dense_matrix(u)
    phase = ipow(-p * p)
    scale = max(1.0, float(np.max(np.abs(U))))
    s = max(1, budget.random_starts)
    rng = np.random.default_rng(np.random.SeedSequence(budget.rng_seed))
    ws = rng.standard_normal((s, p, n)) + 1j * rng.standard_normal((s, p, n))
    ws /= np.linalg.norm(ws, axis=2, keepdims=True)

    ext_table = _index_tables(n, p)

    def values(ws):
        W = _wedge_vectors(ws)
        return np.real(phase * np.einsum("sa,ab,sb->s", W, U, W.conj()))

    prev = values(ws)
    for _ in range(budget.local_iters):
        for i in range(p):
            others = np.concatenate([ws[:, :i, :], ws[:, i + 1:, :]], axis=1)
            if p == 1:
                V = np.ones((s, 1), dtype=complex)
            else:
                V = _wedge_vectors(others)
            # B[s, K, a] = d(wedge)/d(w_i)_a, up to a global sign that cancels
            B = np.zeros((s, len(ext_table), n), dtype=complex)
            for idx, rows in enumerate(ext_table):
                for slot, sign, a in rows:
                    B[:, idx, a] = sign * V[:, slot]
            C = phase * np.einsum("ska,kl,slb->sab", B, U, B.conj())
            _, z = _min_eig(C)
            ws[:, i, :] = z.conj()
        vals = values(ws)
        if np.max(prev - vals) < 1e-13 * scale:
            prev = vals
            break
        prev = vals

    best = int(np.argmin(prev))
    witness_vecs = [ws[best, i, :].copy() for i in range(p)]
    margin = evaluate_pairing(u, witness_vecs)
    if margin < -budget.tol:
        witness = {"vectors": [[complex(x) for x in w] for w in witness_vecs],
                   "value": margin}
        return PositivityVerdict(Status.REFUTED, margin, witness)
    return PositivityVerdict(Status.CERTIFIED, float(np.min(prev)), None,
                             heuristic=True,
                             detail=f"{s} starts, no refutation")


def _min_eig(C: np.ndarray):
    """Minimum of sum C[a,b] x_a conj(x_b) over unit x, batched.

    The quadratic form equals z^H C z at z = conj(x); returns (value, z) so
    callers conjugate once more to recover x.
    """
    H = 0.5 * (C + np.conj(np.swapaxes(C, -1, -2)))
    w, V = np.linalg.eigh(H)
    return w[..., 0], V[..., :, 0]


# ---------------------------------------------------------------------------
# Hermitian positivity: exact Gram eigenvalue test

def check_hermitian_positive(u: ExteriorForm, tol: float = 1e-9) -> PositivityVerdict:
    """PSD test of the Gram matrix; exact up to floating point.

    A negative eigenvalue yields the dual witness beta with
    vol(u ^ i^{q^2} beta ^ conj(beta)) = lambda_min < 0.
    """
    G, basis = hermitian_gram(u)
    if G.size == 0:
        return PositivityVerdict(Status.CERTIFIED, 0.0, None)
    scale = max(1.0, float(np.max(np.abs(G))))
    w, V = np.linalg.eigh(G)
    lam = float(w[0])
    if lam < -tol * scale:
        x = V[:, 0]
        # quadratic form at coefficients v equals conj(v)^H G conj(v)
        beta = x.conj()
        witness = {"beta": {str(I): complex(b) for I, b in zip(basis, beta)},
                   "basis": [list(I) for I in basis],
                   "beta_coeffs": [complex(b) for b in beta],
                   "value": lam}
        return PositivityVerdict(Status.REFUTED, lam, witness)
    return PositivityVerdict(Status.CERTIFIED, lam, None)


def gram_witness_form(verdict: PositivityVerdict, n: int, q: int) -> ExteriorForm:
    """Rebuild the (q,0)-form beta from a Hermitian refutation payload."""
    if verdict.witness is None:
        raise ValueError("verdict carries no witness")
    basis = [tuple(I) for I in verdict.witness["basis"]]
    coeffs = verdict.witness["beta_coeffs"]
    out = {}
    for I, c in zip(basis, coeffs):
        if c != 0:
            out[(I, ())] = c
    return ExteriorForm(n, q, 0, out)


# ---------------------------------------------------------------------------
# strong positivity: dictionary certificates and the Hermitian dual

def _real_coords(u: ExteriorForm, basis: list) -> np.ndarray:
    """Real coordinates of a real (p,p)-form: diag entry then (Re, Im) pairs."""
    p = u.p
    vec = []
    for a, I in enumerate(basis):
        c = u.coeffs.get((I, I), 0.0 + 0.0j)
        vec.append(c.real if p % 2 == 0 else c.imag)
    for a, I in enumerate(basis):
        for J in basis[a + 1:]:
            c = u.coeffs.get((I, J), 0.0 + 0.0j)
            vec.append(c.real)
            vec.append(c.imag)
    return np.asarray(vec)


def check_strongly_positive(u: ExteriorForm, budget: SearchBudget = SearchBudget(),
                            dictionary: Sequence[Sequence[Sequence[complex]]] | None = None,
                            dictionary_size: int | None = None) -> PositivityVerdict:
    """Strong positivity via NNLS against a dictionary of decomposable squares.

    Certified when the fit reproduces u with small relative residual; the
    certificate lists weights and covector factors.  Refuted when the
    Hermitian Gram matrix has a negative eigenvalue (its eigenvector gives a
    Hermitian-positive dual form pairing negatively with u).  Otherwise
    Unknown: u sits outside the sampled cone but no dual witness was found.
    """
    p = u.p
    if u.q != p:
        raise ValueError(f"bidegree {u.bidegree} is not of the form (p,p)")
    if not u.is_real():
        raise NotReal("form is not real within tolerance")
    n = u.n
    if p in (0, n):
        # scalar and volume cases coincide with weak positivity
        val = float(u.get((), ()).real) if p == 0 else volume_coefficient(u)
        if val < -budget.tol:
            return PositivityVerdict(Status.REFUTED, val, {"value": val})
        atoms = [] if val == 0 else \
            [[[complex(x) for x in np.eye(n)[i]] for i in range(p)]]
        cert = {"weights": [val] if val else [], "atoms": atoms, "residual": 0.0}
        return PositivityVerdict(Status.CERTIFIED, val, cert)

    # refutation via the Hermitian dual
    herm = check_hermitian_positive(u, tol=budget.tol)
    if herm.status is Status.REFUTED:
        q = n - p
        beta = gram_witness_form(herm, n, q)
        dual = (beta.wedge(beta.conjugate())) * ipow(q * q)
        value = volume_coefficient(u.wedge(dual))
        witness = dict(herm.witness)
        witness["dual_value"] = value
        return PositivityVerdict(Status.REFUTED, value, witness,
                                 detail="Hermitian-positive dual witness")

    basis = multi_indices(n, p)
    dim = len(basis) ** 2
    rng = np.random.default_rng(np.random.SeedSequence(budget.rng_seed))
    if dictionary is None:
        size = dictionary_size if dictionary_size is not None else 20 * dim
        dictionary = []
        for _ in range(size):
            vecs = rng.standard_normal((p, n)) + 1j * rng.standard_normal((p, n))
            vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
            dictionary.append([list(v) for v in vecs])
    atoms = []
    phase = ipow(p * p)
    for factors in dictionary:
        alpha = decomposable(factors)
        atoms.append(alpha.wedge(alpha.conjugate()) * phase)
    target = _real_coords(u, basis)
    A = np.stack([_real_coords(a, basis) for a in atoms], axis=1)
    weights, rnorm = scipy.optimize.nnls(A, target, maxiter=10 * A.shape[1])
    rel = rnorm / max(1.0, float(np.linalg.norm(target)))
    if rel <= 1e-8:
        used = [(float(w), dictionary[i]) for i, w in enumerate(weights) if w > 0]
        cert = {"weights": [w for w, _ in used],
                "atoms": [[list(map(complex, f)) for f in fs] for _, fs in used],
                "residual": float(rel)}
        return PositivityVerdict(Status.CERTIFIED, float(rel), cert)
    return PositivityVerdict(Status.UNKNOWN, float(rel), None,
                             detail=f"NNLS relative residual {rel:.3e}")


def reconstruct_certificate(verdict: PositivityVerdict, n: int, p: int) -> ExteriorForm:
    """Rebuild sum_i w_i i^{p^2} alpha_i ^ conj(alpha_i) from a certificate."""
    if verdict.witness is None or "weights" not in verdict.witness:
        raise ValueError("verdict carries no strong-positivity certificate")
    phase = ipow(p * p)
    out = ExteriorForm.zero(n, p, p)
    for w, factors in zip(verdict.witness["weights"], verdict.witness["atoms"]):
        alpha = decomposable(factors) if factors else ExteriorForm.scalar(n, 1.0)
        out = out + (alpha.wedge(alpha.conjugate()) * phase) * w
    return out
