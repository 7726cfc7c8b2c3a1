"""Pointwise complex exterior algebra on C^n.

A form of bidegree (p, q) is stored sparsely as a coefficient map keyed by
pairs of strictly increasing 1-based multi-indices (I, J).  The key stands
for the basis form

    e_{i1}^v ^ ... ^ e_{ip}^v ^ conj(e_{j1}^v) ^ ... ^ conj(e_{jq}^v),

holomorphic factors first.  Coefficients are complex floats; exact zeros are
pruned, nothing else is ever rounded away.

Sign conventions (the single source of truth for the whole package):

* ``wedge`` shuffles the concatenated index lists back to increasing order,
  picking up the Koszul sign of the shuffle plus ``(-1)**(v.p * u.q)`` from
  moving v's holomorphic block past u's antiholomorphic block;
* ``conjugate`` maps the coefficient at (I, J) to its complex conjugate at
  (J, I) times ``(-1)**(p*q)``.  This makes ``i e^v ^ conj(e^v)`` real and
  conjugation multiplicative over wedge.

Key entry points: :class:`ExteriorForm`, :func:`wedge`, :func:`conjugate` is
a method, :func:`volume_coefficient`, :func:`evaluate_pairing`,
:func:`restrict`, :func:`decomposable`, :func:`hermitian_gram`.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

import numpy as np

_I_POW = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)


def ipow(k: int) -> complex:
    """i**k for integer k (negative allowed), exact."""
    return _I_POW[k % 4]


class DimensionMismatch(ValueError):
    """Operands live on different C^n or have incompatible bidegree."""


class NotTopDegree(ValueError):
    """A volume coefficient was requested from a non-(n,n) form."""


class NotReal(ValueError):
    """A real number was requested but the imaginary part is above tolerance."""


def multi_indices(n: int, k: int) -> list[tuple[int, ...]]:
    """All strictly increasing k-tuples with entries in 1..n."""
    return list(itertools.combinations(range(1, n + 1), k))


def _merge(a: tuple[int, ...], b: tuple[int, ...]):
    """Merge two increasing index tuples.

    Returns ``(sign, merged)`` where sign is the Koszul sign of the shuffle,
    or ``(0, None)`` when the tuples share an index.
    """
    if not a:
        return 1, b
    if not b:
        return 1, a
    sign = 1
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return 0, None
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            # b[j] jumps over the remaining len(a) - i entries of a
            if (len(a) - i) % 2:
                sign = -sign
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return sign, tuple(out)


def _check_index(I: tuple[int, ...], n: int, k: int) -> tuple[int, ...]:
    I = tuple(int(i) for i in I)
    if len(I) != k:
        raise ValueError(f"multi-index {I} does not have length {k}")
    if any(not 1 <= i <= n for i in I):
        raise ValueError(f"multi-index {I} has entries outside 1..{n}")
    if any(I[t] >= I[t + 1] for t in range(len(I) - 1)):
        raise ValueError(f"multi-index {I} is not strictly increasing")
    return I


class ExteriorForm:
    """A (p, q)-form at a point of C^n, sparse over basis index pairs.

    Treat instances as immutable; all operations return new forms.
    """

    __slots__ = ("n", "p", "q", "coeffs", "annihilated")

    def __init__(self, n: int, p: int, q: int,
                 coeffs: Mapping | None = None, *, annihilated: bool = False):
        if n < 0 or p < 0 or q < 0 or p > n or q > n:
            raise ValueError(f"invalid bidegree ({p},{q}) on C^{n}")
        self.n = int(n)
        self.p = int(p)
        self.q = int(q)
        self.annihilated = bool(annihilated)
        data: dict[tuple[tuple[int, ...], tuple[int, ...]], complex] = {}
        if coeffs:
            for (I, J), c in coeffs.items():
                c = complex(c)
                if c == 0:
                    continue
                key = (_check_index(I, n, p), _check_index(J, n, q))
                data[key] = data.get(key, 0.0 + 0.0j) + c
        self.coeffs = {k: v for k, v in data.items() if v != 0}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int, p: int, q: int) -> "ExteriorForm":
        return cls(n, p, q)

    @classmethod
    def scalar(cls, n: int, value: complex) -> "ExteriorForm":
        return cls(n, 0, 0, {((), ()): value})

    @classmethod
    def basis(cls, n: int, holo: Sequence[int], anti: Sequence[int],
              value: complex = 1.0) -> "ExteriorForm":
        holo = tuple(holo)
        anti = tuple(anti)
        return cls(n, len(holo), len(anti), {(holo, anti): value})

    # -- bookkeeping -------------------------------------------------------

    @property
    def bidegree(self) -> tuple[int, int]:
        return (self.p, self.q)

    def is_zero(self) -> bool:
        return not self.coeffs

    def max_abs(self) -> float:
        return max((abs(c) for c in self.coeffs.values()), default=0.0)

    def _tol(self, tol: float | None) -> float:
        # default tolerance scales with the largest coefficient
        return 1e-9 * self.max_abs() if tol is None else float(tol)

    def _same_shape(self, other: "ExteriorForm"):
        if self.n != other.n or self.p != other.p or self.q != other.q:
            raise DimensionMismatch(
                f"({self.p},{self.q}) on C^{self.n} vs "
                f"({other.p},{other.q}) on C^{other.n}")

    # -- linear structure --------------------------------------------------

    def __add__(self, other: "ExteriorForm") -> "ExteriorForm":
        if not isinstance(other, ExteriorForm):
            return NotImplemented
        self._same_shape(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, 0.0 + 0.0j) + c
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        return ExteriorForm(self.n, self.p, self.q, out)

    def __sub__(self, other: "ExteriorForm") -> "ExteriorForm":
        if not isinstance(other, ExteriorForm):
            return NotImplemented
        return self + (-1.0) * other

    def __neg__(self) -> "ExteriorForm":
        return (-1.0) * self

    def __mul__(self, scalar) -> "ExteriorForm":
        if isinstance(scalar, ExteriorForm):
            return NotImplemented
        s = complex(scalar)
        return ExteriorForm(self.n, self.p, self.q,
                            {k: s * c for k, c in self.coeffs.items()})

    __rmul__ = __mul__

    # -- core operations ---------------------------------------------------

    def wedge(self, other: "ExteriorForm") -> "ExteriorForm":
        """Exterior product, canonical basis order restored with Koszul signs.

        Bidegree overflow (p or q beyond n) is not an error: the product is
        the zero form with bidegree clamped to n, flagged ``annihilated``.
        """
        if self.n != other.n:
            raise DimensionMismatch(f"C^{self.n} vs C^{other.n}")
        n = self.n
        p = self.p + other.p
        q = self.q + other.q
        if p > n or q > n:
            return ExteriorForm(n, min(p, n), min(q, n), annihilated=True)
        # sign from moving other's holomorphic block past self's
        # antiholomorphic block
        block = -1 if (other.p * self.q) % 2 else 1
        out: dict = {}
        for (I1, J1), c1 in self.coeffs.items():
            for (I2, J2), c2 in other.coeffs.items():
                sI, I = _merge(I1, I2)
                if sI == 0:
                    continue
                sJ, J = _merge(J1, J2)
                if sJ == 0:
                    continue
                key = (I, J)
                s = out.get(key, 0.0 + 0.0j) + block * sI * sJ * c1 * c2
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        return ExteriorForm(n, p, q, out)

    def conjugate(self) -> "ExteriorForm":
        sign = -1 if (self.p * self.q) % 2 else 1
        return ExteriorForm(
            self.n, self.q, self.p,
            {(J, I): sign * c.conjugate() for (I, J), c in self.coeffs.items()})

    def is_real(self, tol: float | None = None) -> bool:
        """True when conjugate(u) == u within tolerance."""
        diff = self.conjugate() - self if self.p == self.q else None
        if diff is None:
            return False
        return diff.max_abs() <= self._tol(tol)

    # -- plumbing ----------------------------------------------------------

    def items(self):
        return sorted(self.coeffs.items())

    def get(self, I: Sequence[int], J: Sequence[int]) -> complex:
        return self.coeffs.get((tuple(I), tuple(J)), 0.0 + 0.0j)

    def __repr__(self) -> str:
        if self.is_zero():
            return f"ExteriorForm({self.n}, {self.p}, {self.q}, 0)"
        terms = ", ".join(f"{I}|{J}: {c:.4g}" for (I, J), c in self.items())
        return f"ExteriorForm({self.n}, {self.p}, {self.q}, {{{terms}}})"


def wedge(u: ExteriorForm, v: ExteriorForm) -> ExteriorForm:
    return u.wedge(v)


def wedge_all(forms: Iterable[ExteriorForm]) -> ExteriorForm:
    forms = list(forms)
    if not forms:
        raise ValueError("empty wedge")
    out = forms[0]
    for f in forms[1:]:
        out = out.wedge(f)
    return out


def wedge_power(u: ExteriorForm, k: int) -> ExteriorForm:
    if k < 0:
        raise ValueError("negative wedge power")
    out = ExteriorForm.scalar(u.n, 1.0)
    for _ in range(k):
        out = out.wedge(u)
    return out


def one_form(components: Sequence[complex]) -> ExteriorForm:
    """(1,0)-form sum_j components[j] * e_{j+1}^v."""
    comp = [complex(c) for c in components]
    n = len(comp)
    return ExteriorForm(n, 1, 0,
                        {((j + 1,), ()): c for j, c in enumerate(comp) if c})


def decomposable(factors: Sequence[Sequence[complex]]) -> ExteriorForm:
    """Wedge of (1,0)-forms given by their component vectors."""
    if not factors:
        raise ValueError("need at least one factor")
    return wedge_all(one_form(f) for f in factors)


def hermitian_one_one(m: np.ndarray) -> ExteriorForm:
    """The real (1,1)-form i * sum_{jk} m[j,k] e_j^v ^ conj(e_k^v).

    ``m`` must be Hermitian for the result to be real; not checked here.
    """
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("matrix must be square")
    coeffs = {}
    for j in range(n):
        for k in range(n):
            if m[j, k] != 0:
                coeffs[((j + 1,), (k + 1,))] = 1j * m[j, k]
    return ExteriorForm(n, 1, 1, coeffs)


def one_one_matrix(u: ExteriorForm) -> np.ndarray:
    """Inverse of :func:`hermitian_one_one`: m[j,k] = -i * coefficient."""
    if u.bidegree != (1, 1):
        raise ValueError("not a (1,1)-form")
    m = np.zeros((u.n, u.n), dtype=complex)
    for (I, J), c in u.coeffs.items():
        m[I[0] - 1, J[0] - 1] = -1j * c
    return m


def top_coefficient(u: ExteriorForm) -> complex:
    """Complex tau with u = tau * (i e_1^v ^ conj e_1^v) ^ ... ^ (i e_n^v ^ conj e_n^v).

    The unit volume form equals i**(n*n) e_{1..n}^v ^ conj(e_{1..n}^v) after
    reordering, hence tau = (-i)**(n*n) times the coefficient at the full
    index pair.
    """
    n = u.n
    if u.bidegree != (n, n):
        raise NotTopDegree(f"bidegree {u.bidegree} on C^{n} is not ({n},{n})")
    full = tuple(range(1, n + 1))
    return ipow(-n * n) * u.coeffs.get((full, full), 0.0 + 0.0j)


def volume_coefficient(u: ExteriorForm, tol: float | None = None) -> float:
    """Real volume coefficient of an (n,n)-form; NotReal if it is not real."""
    tau = top_coefficient(u)
    limit = u._tol(tol)
    if abs(tau.imag) > max(limit, 1e-12 * max(1.0, abs(tau))):
        raise NotReal(f"volume coefficient {tau} has non-negligible imaginary part")
    return tau.real


def _det_sub(vectors: np.ndarray, I: tuple[int, ...]) -> complex:
    # vectors: p columns stacked as (p, n); rows I (1-based) picked out
    sub = vectors[:, [i - 1 for i in I]]
    if sub.shape[0] == 0:
        return 1.0 + 0.0j
    return complex(np.linalg.det(sub.T))


def evaluate_pairing(u: ExteriorForm, vectors: Sequence[Sequence[complex]],
                     tol: float | None = None) -> float:
    """(-i)**(p*p) * u(w_1, ..., w_p, conj w_1, ..., conj w_p) for real (p,p) u.

    Evaluation reduces to sum_{I,J} u_{IJ} det(W_I) conj(det(W_J)) with
    W_I the rows-I minor of the column matrix of the w's.
    """
    p = u.p
    if u.q != p:
        raise ValueError(f"bidegree {u.bidegree} is not of the form (p,p)")
    if not u.is_real(tol):
        raise NotReal("form is not real within tolerance")
    vectors = list(vectors)
    if len(vectors) != p:
        raise DimensionMismatch(f"expected {p} vectors, got {len(vectors)}")
    W = (np.asarray([list(w) for w in vectors], dtype=complex)
         if p else np.zeros((0, u.n), dtype=complex))
    if W.shape != (p, u.n):
        raise DimensionMismatch(
            f"expected {p} vectors in C^{u.n}, got shape {W.shape}")
    dets: dict[tuple[int, ...], complex] = {}
    total = 0.0 + 0.0j
    for (I, J), c in u.coeffs.items():
        if I not in dets:
            dets[I] = _det_sub(W, I)
        if J not in dets:
            dets[J] = _det_sub(W, J)
        total += c * dets[I] * dets[J].conjugate()
    val = ipow(-p * p) * total
    if abs(val.imag) > max(u._tol(tol), 1e-10 * max(1.0, abs(val))):
        raise NotReal(f"pairing value {val} has non-negligible imaginary part")
    return val.real


def pullback(u: ExteriorForm, vectors: Sequence[Sequence[complex]]) -> ExteriorForm:
    """Pull u back along the map C^k -> C^n sending basis vectors to the columns."""
    vectors = list(vectors)
    S = (np.asarray([list(w) for w in vectors], dtype=complex).T
         if vectors else np.zeros((u.n, 0), dtype=complex))  # n x k
    if S.ndim != 2 or S.shape[0] != u.n:
        raise DimensionMismatch("vectors must live in C^n")
    k = S.shape[1]
    if u.p > k or u.q > k:
        return ExteriorForm(k, min(u.p, k), min(u.q, k), annihilated=True)
    holo_idx = multi_indices(k, u.p)
    anti_idx = multi_indices(k, u.q)

    def minor(I, K):
        sub = S[np.ix_([i - 1 for i in I], [c - 1 for c in K])]
        if sub.shape[0] == 0:
            return 1.0 + 0.0j
        return complex(np.linalg.det(sub))

    out: dict = {}
    for (I, J), c in u.coeffs.items():
        for K in holo_idx:
            dIK = minor(I, K)
            if dIK == 0:
                continue
            for L in anti_idx:
                dJL = minor(J, L)
                if dJL == 0:
                    continue
                key = (K, L)
                s = out.get(key, 0.0 + 0.0j) + c * dIK * dJL.conjugate()
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
    return ExteriorForm(k, u.p, u.q, out)


def restrict(u: ExteriorForm, vectors: Sequence[Sequence[complex]],
             tol: float | None = None) -> float:
    """Volume coefficient of the restriction of real (p,p) u to span(vectors).

    The p vectors must be linearly independent; they become the basis of the
    subspace, so the answer matches :func:`evaluate_pairing` on the same
    tuple (different code path, useful as a cross-check).
    """
    p = u.p
    vectors = list(vectors)
    W = (np.asarray([list(w) for w in vectors], dtype=complex)
         if vectors else np.zeros((0, u.n), dtype=complex))
    if W.shape != (p, u.n):
        raise DimensionMismatch(f"expected {p} vectors in C^{u.n}")
    if p and np.linalg.matrix_rank(W) < p:
        raise ValueError("restriction vectors are linearly dependent")
    if not u.is_real(tol):
        raise NotReal("form is not real within tolerance")
    return volume_coefficient(pullback(u, vectors), tol)


def hermitian_gram(u: ExteriorForm, tol: float | None = None):
    """Gram matrix of real (p,p) u against decomposable (q,0) basis forms.

    Entry (I, J) is the complex volume coefficient of
    ``u ^ i**(q*q) e_I^v ^ conj(e_J^v)`` with q = n - p.  Returns
    ``(G, basis)`` where G is a Hermitian numpy array over the length-q
    multi-indices in ``basis``.  Positive semidefiniteness of G is the
    Hermitian positivity test for u.
    """
    if u.p != u.q:
        raise ValueError(f"bidegree {u.bidegree} is not of the form (p,p)")
    if not u.is_real(tol):
        raise NotReal("form is not real within tolerance")
    n = u.n
    q = n - u.p
    basis = multi_indices(n, q)
    iq = ipow(q * q)
    N = len(basis)
    G = np.zeros((N, N), dtype=complex)
    for a, I in enumerate(basis):
        beta_I = ExteriorForm.basis(n, I, ())
        left = u.wedge(beta_I) * iq
        for b, J in enumerate(basis):
            eta_J = ExteriorForm.basis(n, J, ()).conjugate()
            G[a, b] = top_coefficient(left.wedge(eta_J))
    herm_defect = float(np.max(np.abs(G - G.conj().T))) if N else 0.0
    limit = max(u._tol(tol), 1e-12)
    if herm_defect > limit * max(1.0, float(np.max(np.abs(G))) if N else 1.0):
        raise NotReal(f"gram matrix deviates from Hermitian by {herm_defect}")
    G = 0.5 * (G + G.conj().T)
    return G, basis
