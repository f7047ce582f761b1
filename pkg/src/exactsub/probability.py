"""Exact probabilities of the form ``coeff * (2m)^(-j/2)``."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


class HalfPowerProb:
    """A non-negative rational multiple of a half-integer power of ``2m``.

    Products add exponents. Sums need equal exponent parity and align to the
    larger exponent. Comparisons are exact: both sides are squared, which
    turns every value into a rational.
    """

    __slots__ = ("coeff", "half_exponent", "two_m")

    def __init__(self, coeff: Rational, half_exponent: int, two_m: int):
        coeff = Fraction(coeff)
        if coeff < 0:
            raise ValueError("probabilities are non-negative")
        if half_exponent < 0:
            raise ValueError("half_exponent must be >= 0")
        if two_m < 1:
            raise ValueError("two_m must be >= 1")
        self.coeff = coeff
        self.half_exponent = half_exponent
        self.two_m = two_m

    @classmethod
    def power(cls, two_m: int, half_exponent: int) -> HalfPowerProb:
        """``(2m)^(-half_exponent/2)``."""
        return cls(1, half_exponent, two_m)

    @classmethod
    def rational(cls, value: Rational, two_m: int) -> HalfPowerProb:
        return cls(value, 0, two_m)

    def _check(self, other: HalfPowerProb) -> None:
        if self.two_m != other.two_m:
            raise ValueError(f"mixing 2m={self.two_m} with 2m={other.two_m}")

    def squared(self) -> Fraction:
        return self.coeff * self.coeff / Fraction(self.two_m) ** self.half_exponent

    def rescaled(self, half_exponent: int) -> HalfPowerProb:
        """Same value with the given exponent (which must share parity)."""
        delta = half_exponent - self.half_exponent
        if delta % 2:
            raise ValueError("cannot rescale across exponent parity")
        factor = Fraction(self.two_m) ** (delta // 2)
        return HalfPowerProb(self.coeff * factor, half_exponent, self.two_m)

    def __mul__(self, other: HalfPowerProb | Rational) -> HalfPowerProb:
        if isinstance(other, HalfPowerProb):
            self._check(other)
            return HalfPowerProb(
                self.coeff * other.coeff, self.half_exponent + other.half_exponent, self.two_m
            )
        return HalfPowerProb(self.coeff * Fraction(other), self.half_exponent, self.two_m)

    __rmul__ = __mul__

    def __add__(self, other: HalfPowerProb) -> HalfPowerProb:
        if not isinstance(other, HalfPowerProb):
            return NotImplemented
        self._check(other)
        if other.coeff == 0:
            return self
        if self.coeff == 0:
            return other
        j = max(self.half_exponent, other.half_exponent)
        a, b = self.rescaled(j), other.rescaled(j)
        return HalfPowerProb(a.coeff + b.coeff, j, self.two_m)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, HalfPowerProb):
            return self.two_m == other.two_m and self.squared() == other.squared()
        if isinstance(other, (int, Fraction)):
            return other >= 0 and self.squared() == Fraction(other) ** 2
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.two_m, self.squared()))

    def __lt__(self, other: HalfPowerProb | Rational) -> bool:
        if isinstance(other, HalfPowerProb):
            self._check(other)
            return self.squared() < other.squared()
        return self.squared() < Fraction(other) ** 2

    def __le__(self, other: HalfPowerProb | Rational) -> bool:
        return self == other or self < other

    def __gt__(self, other: HalfPowerProb | Rational) -> bool:
        return not self <= other

    def __ge__(self, other: HalfPowerProb | Rational) -> bool:
        return not self < other

    def __float__(self) -> float:
        return float(self.coeff) * math.pow(self.two_m, -self.half_exponent / 2)

    def __repr__(self) -> str:
        return f"HalfPowerProb({self.coeff}, {self.half_exponent}, two_m={self.two_m})"

    def __str__(self) -> str:
        if self.half_exponent == 0:
            return str(self.coeff)
        exp = Fraction(self.half_exponent, 2)
        head = "" if self.coeff == 1 else f"{self.coeff}*"
        return f"{head}(2m)^(-{exp}) [2m={self.two_m}]"

    def as_dict(self) -> dict:
        return {
            "coeff": str(self.coeff),
            "half_exponent": self.half_exponent,
            "two_m": self.two_m,
            "value": float(self),
        }
