"""Truncated power series of iterates of f(z) = lambda*z + b*z^2 + z^3.

Coefficients are polynomials in b over Q(zeta_q), so the identity for the
(q+1)-st coefficient of the q-th iterate can be checked exactly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cyclotomic import CyclotomicField, CyclotomicNumber, root_of_unity


@dataclass(frozen=True)
class BPoly:
    """Polynomial in b with cyclotomic coefficients, constant term first."""

    field: CyclotomicField
    coeffs: tuple[CyclotomicNumber, ...]

    @classmethod
    def make(cls, field, coeffs) -> "BPoly":
        cs = [c if isinstance(c, CyclotomicNumber) else field(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        return cls(field, tuple(cs))

    @classmethod
    def constant(cls, c: CyclotomicNumber) -> "BPoly":
        return cls.make(c.field, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "BPoly") -> "BPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.zero()
        a = self.coeffs + (z,) * (n - len(self.coeffs))
        b = other.coeffs + (z,) * (n - len(other.coeffs))
        return BPoly.make(self.field, [x + y for x, y in zip(a, b)])

    def __neg__(self) -> "BPoly":
        return BPoly.make(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: "BPoly") -> "BPoly":
        return self + (-other)

    def __mul__(self, other) -> "BPoly":
        if not isinstance(other, BPoly):
            return BPoly.make(self.field, [c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return BPoly.make(self.field, [])
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, c in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * c
        return BPoly.make(self.field, out)

    __rmul__ = __mul__

    def times_b(self) -> "BPoly":
        if self.is_zero():
            return self
        return BPoly.make(self.field, (self.field.zero(),) + self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, BPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, b: complex) -> complex:
        value = 0j
        for c in reversed(self.coeffs):
            value = value * b + complex(c)
        return value

    def numeric_coefficients(self) -> list[complex]:
        return [complex(c) for c in self.coeffs]

    def roots(self) -> np.ndarray:
        if self.degree < 1:
            return np.array([], dtype=complex)
        return np.roots(self.numeric_coefficients()[::-1])

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            text = str(c)
            if not c.is_rational() and k:
                text = f"({text})"
            mono = "" if k == 0 else ("b" if k == 1 else f"b^{k}")
            if mono:
                if text == "1":
                    text = mono
                elif text == "-1":
                    text = "-" + mono
                else:
                    text = f"{text}*{mono}"
            parts.append(text)
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class PowerSeriesPoly:
    """sum_{k=1}^{N} c_k z^k with c_k in Q(zeta_q)[b]; coeffs[k-1] is c_k."""

    field: CyclotomicField
    order: int
    coeffs: tuple[BPoly, ...]

    def coefficient(self, k: int) -> BPoly:
        if not 1 <= k <= self.order:
            raise IndexError(f"coefficient {k} is outside 1..{self.order}")
        return self.coeffs[k - 1]

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs, 1):
            mono = "z" if k == 1 else f"z^{k}"
            terms.append(f"({c})*{mono}")
        return " + ".join(terms)


def _series_mul(a: list[BPoly], b: list[BPoly], order: int, field) -> list[BPoly]:
    # a, b indexed from z^1; the product starts at z^2
    out = [BPoly.make(field, []) for _ in range(order)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            k = i + j + 2
            if k > order:
                break
            out[k - 1] = out[k - 1] + x * y
    return out


def compose_series(p: int, q: int, N: int, iterations: int | None = None) -> PowerSeriesPoly:
    """Truncation to order N of the ``iterations``-fold iterate (default q) of f_b."""
    if N < 1:
        raise ValueError("N must be positive")
    lam = root_of_unity(p, q)
    field = lam.field
    n_iter = q if iterations is None else iterations
    zero = BPoly.make(field, [])
    lam_p = BPoly.constant(lam)
    b_p = BPoly.make(field, [0, 1])
    S = [BPoly.make(field, [1])] + [zero] * (N - 1)
    for _ in range(n_iter):
        S2 = _series_mul(S, S, N, field)
        S3 = _series_mul(S2, S, N, field)
        S = [lam_p * s + b_p * s2 + s3 for s, s2, s3 in zip(S, S2, S3)]
    return PowerSeriesPoly(field, N, tuple(S))


@dataclass(frozen=True)
class TpqResult:
    p: int
    q: int
    poly: BPoly
    roots: np.ndarray


def tpq(p: int, q: int) -> TpqResult:
    """The z^(q+1) coefficient of f_b^q at the p/q-parabolic fixed point, and its zeros."""
    S = compose_series(p, q, q + 1)
    if S.coefficient(1) != BPoly.make(S.field, [1]):
        raise ArithmeticError("multiplier of the q-th iterate is not 1")
    for k in range(2, q + 1):
        if not S.coefficient(k).is_zero():
            raise ArithmeticError(f"coefficient of z^{k} does not vanish")
    T = S.coefficient(q + 1)
    if T.is_zero():
        raise ArithmeticError("T_{p/q} vanishes identically")
    return TpqResult(p, q, T, T.roots())
