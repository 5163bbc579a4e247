"""Exact arithmetic in the cyclotomic fields Q(zeta_m).

Elements are coefficient vectors in the power basis 1, z, ..., z^(phi(m)-1)
with z = exp(2*pi*i/m); products are reduced modulo the cyclotomic
polynomial Phi_m.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

Scalar = Union[int, Fraction]


def _poly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Division of polynomials given as low-to-high coefficient lists."""
    num = list(num)
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        c = num[-1] / den[-1]
        q[shift] = c
        for i, d in enumerate(den):
            num[i + shift] -= c * d
        while num and num[-1] == 0:
            num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[Fraction, ...]:
    """Phi_m as a low-to-high coefficient tuple, by dividing x^m - 1 by Phi_d for d | m."""
    if m < 1:
        raise ValueError("m must be positive")
    poly = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    return tuple(poly)


class CyclotomicField:
    def __init__(self, m: int):
        self.m = m
        self.modulus = cyclotomic_polynomial(m)
        self.dim = len(self.modulus) - 1

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclotomicField) and other.m == self.m

    def __hash__(self) -> int:
        return hash(("cyclotomic", self.m))

    def __repr__(self) -> str:
        return f"CyclotomicField({self.m})"

    def __call__(self, value: Scalar) -> "CyclotomicNumber":
        return CyclotomicNumber(self, [Fraction(value)])

    def zero(self) -> "CyclotomicNumber":
        return self(0)

    def one(self) -> "CyclotomicNumber":
        return self(1)

    def zeta(self, k: int = 1) -> "CyclotomicNumber":
        """exp(2*pi*i*k/m)."""
        k %= self.m
        return CyclotomicNumber(self, [Fraction(0)] * k + [Fraction(1)])

    def reduce(self, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
        _, rem = _poly_divmod(coeffs, list(self.modulus))
        rem = rem + [Fraction(0)] * (self.dim - len(rem))
        return tuple(rem[: self.dim])


def root_of_unity(p: int, q: int) -> "CyclotomicNumber":
    """exp(2*pi*i*p/q) in Q(zeta_q) for coprime p, q."""
    if q < 1 or gcd(p, q) != 1:
        raise ValueError("need q >= 1 and gcd(p, q) == 1")
    return CyclotomicField(q).zeta(p)


class CyclotomicNumber:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: CyclotomicField, coeffs):
        self.field = field
        self.coeffs = field.reduce([Fraction(c) for c in coeffs])

    def _lift(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return CyclotomicNumber(self.field, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        prod = [Fraction(0)] * (2 * self.field.dim)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CyclotomicNumber(self.field, prod)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result, base = self.field.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field.m, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.field.m)
        return complex(sum(float(c) * z ** i for i, c in enumerate(self.coeffs)))

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}" if mono else str(c))
        if not terms:
            return "0"
        text = " + ".join(terms).replace("+ -", "- ")
        return text

    def __repr__(self) -> str:
        return f"CyclotomicNumber(m={self.field.m}, {self})"
