"""Rank-two value group in additive coordinates.

An element ``GammaVal(flat, eps)`` stands for the multiplicative value
``|p|**flat * (1 - eps_inf)**eps``, where ``eps_inf`` is a positive
infinitesimal.  Additively, larger values mean smaller absolute values, and
the order is lexicographic with the flat part first.
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "DomainError",
    "is_prime",
    "Rat",
    "INF",
    "Infinity",
    "Cmp",
    "GammaVal",
    "as_rat",
    "parse_rat",
    "format_rat",
    "gv_add",
    "gv_cmp",
    "gv_scale",
]

Rat = Fraction


class DomainError(ValueError):
    """Input parses but violates a mathematical precondition."""


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


RatLike = Union[Fraction, int, str]


@functools.total_ordering
class Infinity:
    """Additive valuation of zero; compares above every rational and GammaVal."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("ramlab.inf")

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()


def as_rat(x: RatLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rat(s: str) -> Fraction:
    """Parse ``"num/den"`` or ``"num"``; floats are rejected to keep exactness."""
    s = s.strip()
    if not s or any(c in s for c in ".eE"):
        raise ValueError(f"not an exact rational string: {s!r}")
    return Fraction(s)


def format_rat(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Cmp(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True, order=True)
class GammaVal:
    """Element of the rank-two value group, ordered lexicographically."""

    flat: Fraction = Fraction(0)
    eps: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "flat", as_rat(self.flat))
        object.__setattr__(self, "eps", as_rat(self.eps))

    def __add__(self, other: GammaVal) -> GammaVal:
        if not isinstance(other, GammaVal):
            return NotImplemented
        return GammaVal(self.flat + other.flat, self.eps + other.eps)

    def __sub__(self, other: GammaVal) -> GammaVal:
        if not isinstance(other, GammaVal):
            return NotImplemented
        return GammaVal(self.flat - other.flat, self.eps - other.eps)

    def __neg__(self) -> GammaVal:
        return GammaVal(-self.flat, -self.eps)

    def scale(self, q: RatLike) -> GammaVal:
        q = as_rat(q)
        return GammaVal(self.flat * q, self.eps * q)

    def is_positive(self) -> bool:
        return self > ZERO

    def to_json(self) -> dict:
        return {"flat": format_rat(self.flat), "eps": format_rat(self.eps)}

    @classmethod
    def from_json(cls, obj: dict) -> GammaVal:
        return cls(as_rat(obj["flat"]), as_rat(obj["eps"]))

    def __repr__(self):
        return f"GammaVal({format_rat(self.flat)}, {format_rat(self.eps)})"


ZERO = GammaVal()


def gv_add(a: GammaVal, b: GammaVal) -> GammaVal:
    return a + b


def gv_cmp(a: GammaVal, b: GammaVal) -> Cmp:
    if a < b:
        return Cmp.LT
    if a == b:
        return Cmp.EQ
    return Cmp.GT


def gv_scale(a: GammaVal, q: RatLike) -> GammaVal:
    return a.scale(q)


def value_to_json(v) -> Union[str, dict]:
    """Serialize a Rat, GammaVal or INF."""
    if v is INF:
        return "inf"
    if isinstance(v, GammaVal):
        return v.to_json()
    return format_rat(as_rat(v))
