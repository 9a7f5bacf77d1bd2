from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple

from sympy import Poly, Symbol, cyclotomic_poly, totient

from .errors import NotPrimitive

_X = Symbol("x")


def euler_phi(d: int) -> int:
    if d < 1:
        raise ValueError("euler_phi needs d >= 1")
    return int(totient(d))


@lru_cache(maxsize=None)
def cyclotomic_coefficients(d: int) -> Tuple[int, ...]:
    """Coefficients of Phi_d, lowest degree first."""
    coeffs = Poly(cyclotomic_poly(d, _X), _X).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def cyclotomic_polynomial(d: int) -> Poly:
    return Poly(cyclotomic_poly(d, _X), _X)


def _reduce(coeffs: Sequence[int], d: int) -> Tuple[int, ...]:
    """Schoolbook reduction modulo the monic Phi_d."""
    phi = cyclotomic_coefficients(d)
    deg = len(phi) - 1
    work = list(coeffs)
    for top in range(len(work) - 1, deg - 1, -1):
        c = work[top]
        if c:
            shift = top - deg
            for i, a in enumerate(phi):
                work[shift + i] -= c * a
    work = work[:deg] + [0] * max(0, deg - len(work))
    return tuple(work)


@dataclass(frozen=True)
class CyclotomicElement:
    """An element of Z[zeta_d] in the power basis 1, zeta, ..., zeta^(phi(d)-1)."""

    conductor: int
    coefficients: Tuple[int, ...]

    @classmethod
    def from_coefficients(cls, d: int, coeffs: Sequence[int]) -> "CyclotomicElement":
        return cls(d, _reduce(coeffs, d))

    @classmethod
    def zeta_power(cls, d: int, k: int) -> "CyclotomicElement":
        e = k % d
        return cls.from_coefficients(d, [0] * e + [1])

    @classmethod
    def one(cls, d: int) -> "CyclotomicElement":
        return cls.zeta_power(d, 0)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __add__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        self._check(other)
        return CyclotomicElement(self.conductor,
                                 tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> "CyclotomicElement":
        return CyclotomicElement(self.conductor, tuple(-a for a in self.coefficients))

    def __sub__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        return self + (-other)

    def __mul__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        self._check(other)
        prod = [0] * (len(self.coefficients) + len(other.coefficients))
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    prod[i + j] += a * b
        return CyclotomicElement.from_coefficients(self.conductor, prod)

    def conjugate(self) -> "CyclotomicElement":
        """Complex conjugation zeta -> zeta^-1."""
        d = self.conductor
        full = [0] * d
        for i, a in enumerate(self.coefficients):
            full[(-i) % d] += a
        return CyclotomicElement.from_coefficients(d, full)

    def _check(self, other: "CyclotomicElement") -> None:
        if other.conductor != self.conductor:
            raise ValueError(f"conductors differ: {self.conductor} vs {other.conductor}")

    def __str__(self) -> str:
        terms = []
        for i, a in enumerate(self.coefficients):
            if not a:
                continue
            mono = "1" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if i and abs(a) == 1:
                terms.append(("-" if a < 0 else "+") + mono)
            else:
                terms.append(f"{a:+d}" + ("" if i == 0 else "*" + mono))
        if not terms:
            return "0"
        s = "".join(terms)
        return s[1:] if s.startswith("+") else s


def primitive_exponents(d: int) -> Tuple[int, ...]:
    return tuple(k for k in range(1, d + 1) if math.gcd(k, d) == 1)


def check_primitive(d: int, k: int) -> None:
    if math.gcd(k, d) != 1:
        raise NotPrimitive(f"zeta_{d}^{k} is not a primitive {d}-th root (gcd={math.gcd(k, d)})")
