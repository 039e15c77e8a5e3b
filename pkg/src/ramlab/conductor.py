"""Break profiles of local systems near the puncture and their conductor functions.

A :class:`BreakProfile` is a weighted family of break curves: each curve is
the additive break value as a PL function of ``rho = -log r``, weighted by the
length of its break component.  Everything else is derived from it: the
discriminant function, Swan conductors, the Newton break function and the
asymptotic ``(slope, offset, multiplicity)`` data.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Mapping, Sequence, Tuple

from .plfun import PLFun
from .ramify import DomainError, p_adic_val
from .valgroup import as_rat, format_rat, is_prime

__all__ = [
    "Curve",
    "BreakProfile",
    "NewtonBreak",
    "profile_kummer_char",
    "profile_LQ",
    "delta_LQ",
    "delta_from_profile",
    "swan_at",
    "swan_limit",
    "is_bounded",
    "f_qc",
    "beta_function",
    "beta_closed_form",
    "newton_breaks",
    "shift_profile",
    "tensor_profile_bound",
    "direct_sum",
]


@dataclass(frozen=True)
class Curve:
    f: PLFun
    m: int
    upper_bound: bool = False

    def to_json(self) -> dict:
        obj = {"f": self.f.to_json(), "m": self.m}
        if self.upper_bound:
            obj["bound"] = True
        return obj


@dataclass(frozen=True)
class BreakProfile:
    curves: Tuple[Curve, ...]
    l: int = 1

    def __post_init__(self):
        curves = tuple(c if isinstance(c, Curve) else Curve(*c) for c in self.curves)
        object.__setattr__(self, "curves", curves)
        if self.l < 1:
            raise DomainError("ring length must be positive")
        for c in curves:
            if c.m < 1:
                raise DomainError("curve weights must be positive")
            if any(y < 0 for _, y in c.f.nodes()) or c.f.final_slope < 0:
                raise DomainError("break curves must be non-negative")
            if c.f.pieces and c.f.pieces[-1][1] > c.f.final_slope:
                raise DomainError("break curves must be convex on their eventual segment")

    @property
    def rank(self) -> int:
        return sum(c.m for c in self.curves)

    @property
    def linearity_onset(self) -> Fraction:
        """First ``rho`` past which every curve is linear."""
        return max((c.f.linearity_onset for c in self.curves), default=Fraction(0))

    def to_json(self) -> dict:
        return {"l": self.l, "curves": [c.to_json() for c in self.curves]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "BreakProfile":
        curves = [Curve(PLFun.from_json(c["f"]), int(c["m"]), bool(c.get("bound", False)))
                  for c in obj.get("curves", [])]
        return cls(tuple(curves), int(obj.get("l", 1)))


@dataclass(frozen=True, order=False)
class NewtonBreak:
    q: Fraction
    c: Fraction
    mu: int

    def sort_key(self):
        # slopes descending, then offsets ascending
        return (-self.q, self.c)

    def to_json(self) -> dict:
        return {"q": format_rat(self.q), "c": format_rat(self.c), "mu": self.mu}


def direct_sum(*profiles: BreakProfile) -> BreakProfile:
    ls = {pr.l for pr in profiles}
    if len(ls) > 1:
        raise DomainError("profiles over different rings")
    return BreakProfile(tuple(c for pr in profiles for c in pr.curves), ls.pop() if ls else 1)


def profile_kummer_char(p: int, j: int, l: int = 1) -> BreakProfile:
    """Rank-one Kummer sheaf of a character of order ``p**j``: constant break ``j + 1/(p-1)``."""
    if j < 0:
        raise DomainError("j must be >= 0")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    level = Fraction(0) if j == 0 else j + Fraction(1, p - 1)
    return BreakProfile((Curve(PLFun.constant(level), l),), l)


def _lq_params(nq: int, mq: int, p: int):
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if nq <= 0 or mq <= 0 or math.gcd(nq, mq) != 1:
        raise DomainError(f"invalid slope {nq}/{mq}: need coprime positive integers")
    a = p_adic_val(nq, p)
    return Fraction(nq, mq), a, nq // p**a


def delta_LQ(nq: int, mq: int, p: int, l: int = 1) -> PLFun:
    """Discriminant function of the model sheaf of slope ``q = nq/mq``.

    Zero up to ``1/(q(p-1))``; with ``nq = p**a * N`` the right slope is
    ``l*N`` until ``1/q``, then ``l*p**j*N`` on ``[j/q, (j+1)/q)`` and finally
    ``l*nq`` from ``a/q`` on.
    """
    q, a, N = _lq_params(nq, mq, p)
    start = 1 / (q * (p - 1))
    if a == 0:
        return PLFun(0, [(start, 0)], l * nq)
    # segments (end, slope), skipping the empty first one when p = 2
    pieces = [(start, Fraction(0))]
    if 1 / q > start:
        pieces.append((1 / q, Fraction(l * N)))
    for j in range(1, a):
        pieces.append(((j + 1) / q, Fraction(l * p**j * N)))
    return PLFun(0, pieces, l * nq)


def profile_LQ(nq: int, mq: int, p: int, l: int = 1) -> BreakProfile:
    """Profile of the model sheaf of slope ``nq/mq``: one break curve of weight ``l * mq``."""
    delta = delta_LQ(nq, mq, p, l)
    w = l * mq
    return BreakProfile((Curve(delta.scale(Fraction(1, w)), w),), l)


def delta_from_profile(pr: BreakProfile) -> PLFun:
    out = PLFun()
    for c in pr.curves:
        out = out + c.f.scale(c.m)
    return out


def swan_at(pr: BreakProfile, rho) -> Fraction:
    return delta_from_profile(pr).right_slope(rho)


def swan_limit(pr: BreakProfile) -> Fraction:
    return delta_from_profile(pr).eventual_slope


def is_bounded(pr: BreakProfile) -> Tuple[bool, Fraction]:
    """Profiles are finite PL data, so always bounded; returns the limiting Swan conductor too."""
    return True, swan_limit(pr)


def f_qc(pr: BreakProfile, q, c) -> PLFun:
    """``sum_i m_i * max(f_i(rho), q*rho - c)``."""
    q, c = as_rat(q), as_rat(c)
    line = PLFun.linear(-c, q)
    out = PLFun()
    for cur in pr.curves:
        out = out + cur.f.maximum(line).scale(cur.m)
    return out


def beta_closed_form(pr: BreakProfile, q) -> Fraction:
    q = as_rat(q)
    return sum((c.m * max(q, c.f.eventual_slope) for c in pr.curves), Fraction(0))


def beta_function(pr: BreakProfile) -> PLFun:
    """Break function ``q -> sum_i m_i * max(q, tau_i)``, ``tau_i`` the eventual slopes."""
    ident = PLFun.linear(0, 1)
    out = PLFun()
    for c in pr.curves:
        out = out + ident.maximum(PLFun.constant(c.f.eventual_slope)).scale(c.m)
    return out


def newton_breaks(pr: BreakProfile) -> List[NewtonBreak]:
    groups = defaultdict(int)
    for c in pr.curves:
        groups[(c.f.eventual_slope, c.f.eventual_intercept)] += c.m
    out = [NewtonBreak(q, c, mu) for (q, c), mu in groups.items()]
    return sorted(out, key=NewtonBreak.sort_key)


def shift_profile(pr: BreakProfile, s) -> BreakProfile:
    s = as_rat(s)
    return BreakProfile(tuple(Curve(c.f.shift(s), c.m, c.upper_bound) for c in pr.curves), pr.l)


def tensor_profile_bound(prA: BreakProfile, prB: BreakProfile) -> BreakProfile:
    """Upper-bound profile for the tensor product.

    Curve pairs with different eventual data combine to their pointwise
    maximum, exactly.  Pairs with equal eventual data only admit an upper
    bound, so the combined curve is flagged.  A component of length
    ``m_i`` tensored with one of length ``m_j`` has length ``m_i*m_j/l``.
    """
    if prA.l != prB.l:
        raise DomainError("profiles over different rings")
    l = prA.l
    curves = []
    for a in prA.curves:
        for b in prB.curves:
            if (a.m * b.m) % l:
                raise DomainError("curve weights must be multiples of the ring length")
            same = (a.f.eventual_slope, a.f.eventual_intercept) == (b.f.eventual_slope, b.f.eventual_intercept)
            # two tame (zero) components stay tame: that case is exact
            tame = a.f == PLFun() and b.f == PLFun()
            flagged = (same and not tame) or a.upper_bound or b.upper_bound
            curves.append(Curve(a.f.maximum(b.f), a.m * b.m // l, flagged))
    return BreakProfile(tuple(curves), l)


def parse_profile(obj: Mapping, default_p=None) -> BreakProfile:
    """Build a profile from JSON: explicit curves, a generator, or a direct sum."""
    if "sum" in obj:
        return direct_sum(*(parse_profile(o, default_p) for o in obj["sum"]))
    gen = obj.get("generator")
    if gen is None:
        return BreakProfile.from_json(obj)
    p = int(obj.get("p", default_p if default_p is not None else 0))
    l = int(obj.get("l", 1))
    if gen == "LQ":
        return profile_LQ(int(obj["nq"]), int(obj.get("mq", 1)), p, l)
    if gen == "kummer":
        return profile_kummer_char(p, int(obj["j"]), l)
    raise KeyError(f"unknown generator {gen!r}")
