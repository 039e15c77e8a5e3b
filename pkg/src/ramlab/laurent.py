"""Laurent polynomials known through the valuations of their coefficients.

A radius ``r`` is carried by ``rho = val(r)``, so ``r = |p|**rho`` and the
annulus ``{a <= |xi| <= b}`` becomes the interval ``[val(b), val(a)]``.
The uniformizer is normalized to valuation 1.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Tuple, Union

from .valgroup import INF, DomainError, GammaVal, Infinity, as_rat, format_rat

__all__ = [
    "Side",
    "LaurentVal",
    "RadiusInterval",
    "NotUnit",
    "Impossible",
    "UnitDecomposition",
    "gauss_val",
    "sup_val",
    "spectral_value",
    "unit_decompose",
    "pth_root_shrink",
]


class Side(enum.Enum):
    """Which of the two Gauss points over a radius: ``eta(r)`` or ``eta'(r)``."""

    INNER = 1
    OUTER = -1

    @classmethod
    def parse(cls, s: Union[str, "Side"]) -> "Side":
        if isinstance(s, Side):
            return s
        return cls[s.strip().upper()]


class NotUnit(ArithmeticError):
    """No single monomial dominates at both ends of the interval."""


class Impossible(ArithmeticError):
    """No admissible shrink of the interval brings the series under the p-th root bound."""


@dataclass(frozen=True)
class LaurentVal:
    """Finite Laurent polynomial as ``degree -> coefficient valuation``.

    Missing degrees have zero coefficient.  ``terms`` is stored sorted by
    degree, so equal polynomials compare and hash equal.
    """

    terms: Tuple[Tuple[int, Fraction], ...] = ()

    def __init__(self, terms: Union[Mapping[int, object], Iterable[Tuple[int, object]]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for k, v in items:
            if v is INF:
                continue
            if int(k) in clean:
                raise ValueError(f"duplicate degree {k}")
            clean[int(k)] = as_rat(v)
        object.__setattr__(self, "terms", tuple(sorted(clean.items())))

    @classmethod
    def monomial(cls, degree: int, val=0) -> "LaurentVal":
        return cls({degree: val})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> list:
        return [k for k, _ in self.terms]

    def __add__(self, other: "LaurentVal") -> "LaurentVal":
        # Generic sum: coefficient valuations combine by min; cancellation is not modeled.
        out = self.as_dict()
        for k, v in other.terms:
            out[k] = min(out[k], v) if k in out else v
        return LaurentVal(out)

    def __mul__(self, other: "LaurentVal") -> "LaurentVal":
        """Tropical (min-plus) product of the coefficient valuations."""
        out: dict = {}
        for i, a in self.terms:
            for j, b in other.terms:
                v = a + b
                k = i + j
                if k not in out or v < out[k]:
                    out[k] = v
        return LaurentVal(out)

    def to_json(self) -> dict:
        return {"terms": {str(k): format_rat(v) for k, v in self.terms}}

    @classmethod
    def from_json(cls, obj: Mapping) -> "LaurentVal":
        terms = obj["terms"] if "terms" in obj else obj
        return cls({int(k): as_rat(v) for k, v in terms.items()})

    def __repr__(self):
        body = ", ".join(f"{k}: {format_rat(v)}" for k, v in self.terms)
        return f"LaurentVal({{{body}}})"


@dataclass(frozen=True)
class RadiusInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rat(self.lo))
        object.__setattr__(self, "hi", as_rat(self.hi))
        if self.lo > self.hi:
            raise DomainError(f"empty radius interval [{self.lo}, {self.hi}]")

    @property
    def half_width(self) -> Fraction:
        return (self.hi - self.lo) / 2

    def to_json(self) -> dict:
        return {"lo": format_rat(self.lo), "hi": format_rat(self.hi)}

    @classmethod
    def from_json(cls, obj: Mapping) -> "RadiusInterval":
        return cls(as_rat(obj["lo"]), as_rat(obj["hi"]))


def gauss_val(f: LaurentVal, rho, side=Side.INNER) -> Union[GammaVal, Infinity]:
    """Valuation of ``f`` at the Gauss point of radius ``|p|**rho``.

    The inner point gives ``xi`` the value ``(rho, 1)``, the outer one
    ``(rho, -1)``; the result is the lexicographic minimum over monomials.
    """
    rho = as_rat(rho)
    s = Side.parse(side).value
    return min((GammaVal(v + i * rho, s * i) for i, v in f.terms), default=INF)


def sup_val(f: LaurentVal, interval: RadiusInterval) -> Union[Fraction, Infinity]:
    # each monomial is linear in rho, so its minimum sits at an endpoint
    lo, hi = interval.lo, interval.hi
    return min((min(v + i * lo, v + i * hi) for i, v in f.terms), default=INF)


def spectral_value(coeffs: Sequence[Tuple[int, object]]) -> Union[GammaVal, Infinity]:
    """Spectral value of a monic polynomial from ``(i, w(a_i))`` pairs.

    ``a_i`` is the coefficient of ``T**(m - i)``; the answer is
    ``min_i w(a_i) / i``.  Zero coefficients may be omitted or passed as INF.
    """
    seen = set()
    best: Union[GammaVal, Infinity] = INF
    for i, w in coeffs:
        if i < 1 or i in seen:
            raise ValueError(f"coefficient indices must be distinct and >= 1, got {i}")
        seen.add(i)
        if w is INF:
            continue
        cand = w.scale(Fraction(1, i))
        if cand < best:
            best = cand
    return best


@dataclass(frozen=True)
class UnitDecomposition:
    """``u = gamma * xi**n * (1 + h)`` with ``val(gamma) = c``."""

    n: int
    c: Fraction
    h: LaurentVal


def unit_decompose(u: LaurentVal, interval: RadiusInterval) -> UnitDecomposition:
    if u.is_zero():
        raise ValueError("zero is not a unit")

    def dominant(rho):
        vals = sorted((v + i * rho, i) for i, v in u.terms)
        if len(vals) > 1 and vals[0][0] == vals[1][0]:
            return None
        return vals[0][1]

    n_lo = dominant(interval.lo)
    n_hi = dominant(interval.hi)
    if n_lo is None or n_hi is None or n_lo != n_hi:
        raise NotUnit(f"no monomial of {u!r} strictly dominates on [{interval.lo}, {interval.hi}]")
    c = u.as_dict()[n_lo]
    h = LaurentVal({k - n_lo: v - c for k, v in u.terms if k != n_lo})
    return UnitDecomposition(n_lo, c, h)


def pth_root_shrink(h: LaurentVal, interval: RadiusInterval, p: int) -> Tuple[Fraction, bool]:
    """Smallest shrink ``sigma`` making ``1 + h`` admit a p-th root.

    The criterion is ``sup_val(h, [lo + sigma, hi - sigma]) > 1/(p-1)``.  It is
    strict, so when shrinking is needed the returned ``sigma`` is an infimum
    (``strict=True``): every larger shrink works.  ``(0, False)`` means the
    interval already qualifies.
    """
    bound = Fraction(1, p - 1)
    lo, hi = interval.lo, interval.hi
    need: Fraction | None = None
    for k, v in h.terms:
        if k == 0:
            if v <= bound:
                raise Impossible(f"constant term of valuation {v} <= 1/(p-1)")
            continue
        # the monomial is smallest at the endpoint it decreases towards
        edge = lo if k > 0 else hi
        s = (bound - v - k * edge) / abs(k)
        if need is None or s > need:
            need = s
    if need is None or need < 0:
        return Fraction(0), False
    if need > interval.half_width:
        raise Impossible(f"shrink {need} exceeds half-width {interval.half_width}")
    return need, True
