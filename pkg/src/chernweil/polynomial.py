"""Exact multivariate polynomials over the integers.

Sparse representation: ``terms`` maps exponent tuples (one slot per
variable) to nonzero Python ints.  No floats anywhere; this module is the
arithmetic bedrock for the symbolic Schur calculus and must stay exact.
"""

from __future__ import annotations

import itertools
import operator
from typing import Mapping, Sequence


class ExactDivisionError(ArithmeticError):
    """Polynomial division left a remainder that should not exist."""


class SymPoly:
    """Polynomial in ``nvars`` variables with integer coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, int] | None = None):
        self.nvars = int(nvars)
        data: dict[tuple[int, ...], int] = {}
        if terms:
            for e, c in terms.items():
                c = operator.index(c)  # exact module: reject floats loudly
                if c == 0:
                    continue
                e = tuple(operator.index(x) for x in e)
                if len(e) != self.nvars or any(x < 0 for x in e):
                    raise ValueError(f"bad exponent tuple {e} for {self.nvars} variables")
                data[e] = data.get(e, 0) + c
        self.terms = {e: c for e, c in data.items() if c}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "SymPoly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c: int) -> "SymPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> "SymPoly":
        return cls.const(nvars, 1)

    @classmethod
    def variable(cls, i: int, nvars: int) -> "SymPoly":
        """The variable in slot i (0-based)."""
        if not 0 <= i < nvars:
            raise ValueError(f"variable slot {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> "SymPoly":
        exps = tuple(exps)
        return cls(len(exps), {exps: coeff})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def pad(self, nvars: int) -> "SymPoly":
        """Same polynomial viewed in a larger alphabet (extra trailing slots)."""
        if nvars < self.nvars:
            raise ValueError("cannot shrink the alphabet")
        if nvars == self.nvars:
            return self
        tail = (0,) * (nvars - self.nvars)
        return SymPoly(nvars, {e + tail: c for e, c in self.terms.items()})

    @staticmethod
    def _aligned(a: "SymPoly", b: "SymPoly"):
        m = max(a.nvars, b.nvars)
        return a.pad(m), b.pad(m)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "SymPoly":
        if isinstance(other, int):
            other = SymPoly.const(self.nvars, other)
        if not isinstance(other, SymPoly):
            return NotImplemented
        a, b = SymPoly._aligned(self, other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return SymPoly(a.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "SymPoly":
        return SymPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "SymPoly":
        if isinstance(other, int):
            other = SymPoly.const(self.nvars, other)
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "SymPoly":
        return (-self) + other

    def __mul__(self, other) -> "SymPoly":
        if isinstance(other, int):
            return SymPoly(self.nvars, {e: other * c for e, c in self.terms.items()})
        if not isinstance(other, SymPoly):
            return NotImplemented
        a, b = SymPoly._aligned(self, other)
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return SymPoly(a.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SymPoly":
        if k < 0:
            raise ValueError("negative power")
        result = SymPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = SymPoly.const(self.nvars, other)
        if not isinstance(other, SymPoly):
            return NotImplemented
        a, b = SymPoly._aligned(self, other)
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- substitution and symmetry -----------------------------------------

    def substitute(self, values: Sequence["SymPoly"]) -> "SymPoly":
        """Replace variable i by values[i]; all values share one alphabet."""
        if len(values) != self.nvars:
            raise ValueError(f"need {self.nvars} replacement polynomials")
        if not values:
            # constant polynomial in the empty alphabet
            return SymPoly(0, dict(self.terms))
        m = max(v.nvars for v in values)
        values = [v.pad(m) for v in values]
        powers: list[dict[int, SymPoly]] = [{0: SymPoly.one(m)} for _ in values]

        def power(i: int, k: int) -> SymPoly:
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * values[i]
            return cache[k]

        out = SymPoly.zero(m)
        for e, c in self.terms.items():
            term = SymPoly.const(m, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def permute_variables(self, perm: Sequence[int]) -> "SymPoly":
        """Apply x_i -> x_{perm[i]} (0-based slots)."""
        if sorted(perm) != list(range(self.nvars)):
            raise ValueError("not a permutation of the variable slots")
        out: dict[tuple[int, ...], int] = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            for i, k in enumerate(e):
                ne[perm[i]] = k
            out[tuple(ne)] = out.get(tuple(ne), 0) + c
        return SymPoly(self.nvars, out)

    # -- display -----------------------------------------------------------

    def pretty(self, names: Sequence[str] | None = None) -> str:
        if self.is_zero():
            return "0"
        if names is None:
            names = [f"x{i+1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = [f"{names[i]}^{k}" if k > 1 else names[i]
                       for i, k in enumerate(e) if k]
            body = "*".join(factors) if factors else "1"
            parts.append(f"{'+' if c >= 0 else '-'} {abs(c)}*{body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else text

    def __repr__(self) -> str:
        return f"SymPoly({self.pretty()})"


def antisymmetrize(p: SymPoly) -> SymPoly:
    """sum over permutations w of sign(w) * w(p), over all variable slots."""
    out = SymPoly.zero(p.nvars)
    for perm in itertools.permutations(range(p.nvars)):
        sign = _parity(perm)
        out = out + sign * p.permute_variables(perm)
    return out


def _parity(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def vandermonde(nvars: int) -> SymPoly:
    """prod_{i<j} (x_i - x_j)."""
    out = SymPoly.one(nvars)
    for i in range(nvars):
        for j in range(i + 1, nvars):
            out = out * (SymPoly.variable(i, nvars) - SymPoly.variable(j, nvars))
    return out


def divide_exact(num: SymPoly, den: SymPoly) -> SymPoly:
    """Exact division; raises ExactDivisionError on any remainder.

    Plain lexicographic reduction against a single divisor.  Sufficient here
    because every use divides an antisymmetric polynomial by the Vandermonde
    determinant, where divisibility is a theorem; a failure indicates an
    internal bug upstream and must surface loudly.
    """
    num, den = SymPoly._aligned(num, den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lt_den = max(den.terms)
    cd = den.terms[lt_den]
    quotient = SymPoly.zero(num.nvars)
    rem = num
    while not rem.is_zero():
        lt = max(rem.terms)
        diff = tuple(a - b for a, b in zip(lt, lt_den))
        if any(d < 0 for d in diff):
            raise ExactDivisionError(f"leading term {lt} not divisible by {lt_den}")
        c = rem.terms[lt]
        if c % cd:
            raise ExactDivisionError(f"coefficient {c} not divisible by {cd}")
        qt = SymPoly.monomial(diff, c // cd)
        quotient = quotient + qt
        rem = rem - qt * den
    return quotient


def elementary_symmetric(k: int, nvars: int) -> SymPoly:
    """e_k(x_1..x_nvars)."""
    if k < 0 or k > nvars:
        return SymPoly.zero(nvars)
    out = SymPoly.zero(nvars)
    for combo in itertools.combinations(range(nvars), k):
        e = [0] * nvars
        for i in combo:
            e[i] = 1
        out = out + SymPoly.monomial(tuple(e))
    return out


def complete_homogeneous(k: int, nvars: int) -> SymPoly:
    """h_k(x_1..x_nvars), all monomials of degree k."""
    if k < 0:
        return SymPoly.zero(nvars)
    out = SymPoly.zero(nvars)
    for e in _compositions(k, nvars):
        out = out + SymPoly.monomial(e)
    return out


def _compositions(k: int, slots: int):
    if slots == 0:
        if k == 0:
            yield ()
        return
    for first in range(k + 1):
        for rest in _compositions(k - first, slots - 1):
            yield (first,) + rest
