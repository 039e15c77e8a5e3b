"""Randomized invariant suites and independent oracles.

Each ``check_*`` function returns a :class:`CheckResult`; :func:`run_all`
aggregates them for the ``check`` subcommand.  Generators take an explicit
``random.Random`` so every run is reproducible from a seed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from . import breakdec as bd
from .conductor import (
    BreakProfile,
    Curve,
    beta_closed_form,
    beta_function,
    delta_from_profile,
    direct_sum,
    f_qc,
    newton_breaks,
    profile_kummer_char,
    profile_LQ,
    shift_profile,
    swan_at,
    tensor_profile_bound,
)
from .laurent import (
    Impossible,
    LaurentVal,
    NotUnit,
    RadiusInterval,
    Side,
    gauss_val,
    pth_root_shrink,
    sup_val,
    unit_decompose,
)
from .plfun import PLFun
from .ramify import (
    ClassFun,
    artin_flat,
    artin_nat,
    delta_value,
    inner,
    p_adic_val,
    permutation_character,
    phi_upper,
    ram_from_kummer,
    swan_nat,
)
from .valgroup import INF, GammaVal

__all__ = ["CheckResult", "run_all", "SUITES"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    detail: str = ""

    def to_json(self) -> dict:
        obj = {"name": self.name, "passed": self.passed, "cases": self.cases}
        if self.detail:
            obj["detail"] = self.detail
        return obj


# -- random generators -------------------------------------------------------

def rand_rat(rng: random.Random, lo: int = -3, hi: int = 3, max_den: int = 6) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def rand_gamma(rng: random.Random) -> GammaVal:
    return GammaVal(rand_rat(rng), rand_rat(rng))


def rand_laurent(rng: random.Random, max_terms: int = 8, deg: int = 5) -> LaurentVal:
    k = rng.randint(1, max_terms)
    degs = rng.sample(range(-deg, deg + 1), k)
    return LaurentVal({d: rand_rat(rng) for d in degs})


def rand_convex_plfun(rng: random.Random, nonneg: bool = True, max_pieces: int = 4) -> PLFun:
    k = rng.randint(0, max_pieces)
    xs = sorted({rand_rat(rng, 0, 4, 4) for _ in range(k)} - {Fraction(0)})
    slopes = sorted(rand_rat(rng, 0 if nonneg else -2, 3, 3) for _ in range(len(xs) + 1))
    at0 = rand_rat(rng, 0, 2, 3) if nonneg else rand_rat(rng)
    return PLFun(at0, list(zip(xs, slopes)), slopes[-1])


def rand_profile(rng: random.Random, max_curves: int = 4) -> BreakProfile:
    """Random valid profile: each curve convex, non-negative, non-decreasing."""
    curves = []
    for _ in range(rng.randint(1, max_curves)):
        curves.append(Curve(rand_convex_plfun(rng), rng.randint(1, 3)))
    return BreakProfile(tuple(curves), 1)


# -- oracles -----------------------------------------------------------------

def shrink_oracle(h: LaurentVal, interval: RadiusInterval, p: int):
    """Brute-force infimum shrink by scanning candidate breakpoints.

    Candidates are 0, the half-width and every shrink at which some monomial's
    value on a shrunken endpoint equals the threshold.  Feasibility is
    monotone in the shrink, so the answer is the first candidate from which
    a slightly larger shrink is feasible.  Returns ``(sigma, strict)`` or the
    string ``"impossible"``.
    """
    t = Fraction(1, p - 1)
    lo, hi = interval.lo, interval.hi
    half = interval.half_width

    def ok(s):
        if s <= half:
            return sup_val(h, RadiusInterval(lo + s, hi - s)) > t
        # past the half-width the interval is empty; extend each monomial's
        # value at its decreasing endpoint linearly to decide how far off we are
        vals = [v + k * (lo + s if k > 0 else hi - s) if k else v for k, v in h.terms]
        return min(vals, default=INF) > t

    if ok(Fraction(0)):
        return Fraction(0), False
    cands = {Fraction(0), half}
    for k, v in h.terms:
        if k:
            for edge in (lo, hi):
                # v + k*(edge +- s) = t
                for sign in (1, -1):
                    s = (t - v - k * edge) / (k * sign)
                    if s >= 0:
                        cands.add(s)
    cands = sorted(cands)
    for a, b in zip(cands, cands[1:] + [cands[-1] + 2]):
        if ok((a + b) / 2):
            return "impossible" if a > half else (a, True)
    return "impossible"


def fuehrer_oracle(n: int, p: int, rho) -> Fraction:
    """Flat valuation of the Kummer discriminant ``n**n * xi**(n-1)``, renormalized.

    The discriminant of ``T**n - xi`` in the basis ``1, t, ..., t**(n-1)`` is
    computed at the Gauss point; dividing by the squared norms of the basis
    vectors subtracts ``2 * sum_{i<n} i*rho/n``.
    """
    rho = Fraction(rho)
    disc = LaurentVal({n - 1: n * p_adic_val(n, p)})
    v = gauss_val(disc, rho, Side.INNER)
    return v.flat - 2 * sum(Fraction(i, n) * rho for i in range(n))


def rational_grid(k: int, hi: int = 6) -> List[Fraction]:
    return [Fraction(hi * j, k - 1) for j in range(k)]


# -- fixtures ----------------------------------------------------------------

def fixture_profiles() -> Dict[str, BreakProfile]:
    fx = {
        "L(1),p=3": profile_LQ(1, 1, 3),
        "L(1/2),p=3": profile_LQ(1, 2, 3),
        "L(3),p=5": profile_LQ(3, 1, 5),
        "L(2/3),p=3": profile_LQ(2, 3, 3),
        "L(3),p=3": profile_LQ(3, 1, 3),
        "L(9/2),p=3": profile_LQ(9, 2, 3),
        "L(4),p=2": profile_LQ(4, 1, 2),
        "K(j=1),p=3": profile_kummer_char(3, 1),
        "K(j=2),p=2": profile_kummer_char(2, 2),
        "trivial": profile_kummer_char(3, 0, 3),
    }
    fx["L(1)+K(j=1),p=3"] = direct_sum(fx["L(1),p=3"], fx["K(j=1),p=3"])
    return fx


# -- suites ------------------------------------------------------------------

def _result(name, failures, cases):
    return CheckResult(name, not failures, cases, "; ".join(failures[:3]))


def check_valgroup(rng: random.Random, trials: int = 1000) -> CheckResult:
    fails = []
    for _ in range(trials):
        a, b, c = rand_gamma(rng), rand_gamma(rng), rand_gamma(rng)
        if a < b and not (a + c < b + c):
            fails.append(f"order/addition {a} {b} {c}")
        q = rand_rat(rng)
        if q and a.scale(q).scale(1 / q) != a:
            fails.append(f"scale {a} {q}")
        if sum((a < b, a == b, a > b)) != 1:
            fails.append(f"trichotomy {a} {b}")
        if a < b < c and not a < c:
            fails.append(f"transitivity {a} {b} {c}")
    return _result("valgroup.order_and_scaling", fails, trials)


def _unique_min_pair(f: LaurentVal, g: LaurentVal, rho, side) -> bool:
    s = Side.parse(side).value
    vals = sorted(GammaVal(a + b + (i + j) * rho, s * (i + j)) for i, a in f.terms for j, b in g.terms)
    return len(vals) < 2 or vals[0] != vals[1]


def check_gauss_multiplicative(rng: random.Random, trials: int = 1000) -> CheckResult:
    fails, done = [], 0
    while done < trials:
        f, g = rand_laurent(rng), rand_laurent(rng)
        rho, side = rand_rat(rng), rng.choice([Side.INNER, Side.OUTER])
        if not _unique_min_pair(f, g, rho, side):
            continue
        done += 1
        if gauss_val(f * g, rho, side) != gauss_val(f, rho, side) + gauss_val(g, rho, side):
            fails.append(f"{f} * {g} at {rho}")
    return _result("laurent.gauss_multiplicative", fails, trials)


def possible_sum(f: LaurentVal, g: LaurentVal, rng: random.Random) -> LaurentVal:
    """Coefficient valuations of some true sum ``f + g``.

    Where the two valuations differ the sum has the smaller one; where they
    agree, cancellation may raise it arbitrarily (or kill the term).
    """
    fd, gd = f.as_dict(), g.as_dict()
    out = {}
    for k in set(fd) | set(gd):
        a, b = fd.get(k, INF), gd.get(k, INF)
        if a != b:
            out[k] = min(a, b)
        elif rng.random() < 0.8:
            out[k] = a + Fraction(rng.randint(0, 4), rng.randint(1, 3))
    return LaurentVal(out)


def check_ultrametric(rng: random.Random, trials: int = 1000) -> CheckResult:
    fails = []
    for _ in range(trials):
        f, g = rand_laurent(rng), rand_laurent(rng)
        if rng.random() < 0.3:
            g = LaurentVal({k: v for k, v in f.terms if rng.random() < 0.5} | g.as_dict())
        rho, side = rand_rat(rng), rng.choice([Side.INNER, Side.OUTER])
        h = possible_sum(f, g, rng)
        vf, vg, vh = gauss_val(f, rho, side), gauss_val(g, rho, side), gauss_val(h, rho, side)
        if vh < min(vf, vg):
            fails.append(f"ultrametric {f} {g}")
        if vf != vg and vh != min(vf, vg):
            fails.append(f"strict equality {f} {g}")
    return _result("laurent.ultrametric", fails, trials)


def check_gauss_scaling(rng: random.Random, trials: int = 300) -> CheckResult:
    fails = []
    for _ in range(trials):
        k, v = rng.randint(-5, 5), rand_rat(rng)
        rho, rho2 = rand_rat(rng), rand_rat(rng)
        side = rng.choice([Side.INNER, Side.OUTER])
        f = LaurentVal.monomial(k, v)
        if gauss_val(f, rho2, side) != gauss_val(f, rho, side) + GammaVal((rho2 - rho) * k, 0):
            fails.append(f"scaling {k} {v}")
        g = rand_laurent(rng)
        vals = sorted(a + i * rho for i, a in g.terms)
        if len(vals) == 1 or vals[0] != vals[1]:
            if sup_val(g, RadiusInterval(rho, rho)) != gauss_val(g, rho, Side.INNER).flat:
                fails.append(f"sup at circle {g} {rho}")
    return _result("laurent.scaling_and_circle", fails, trials)


def rand_unit(rng: random.Random):
    """Random (unit, interval) pair that unit_decompose accepts."""
    while True:
        lo = rand_rat(rng, 0, 2, 4)
        iv = RadiusInterval(lo, lo + rand_rat(rng, 0, 2, 4))
        u = rand_laurent(rng, max_terms=5, deg=4)
        try:
            unit_decompose(u, iv)
        except NotUnit:
            continue
        return u, iv


def check_riemann_step(rng: random.Random, trials: int = 50) -> CheckResult:
    fails = []
    for _ in range(trials):
        u, iv = rand_unit(rng)
        p = rng.choice([2, 3, 5, 7])
        dec = unit_decompose(u, iv)
        if not sup_val(dec.h, iv) > 0:
            fails.append(f"|h|_sup >= 1 for {u}")
        try:
            got = pth_root_shrink(dec.h, iv, p)
        except Impossible:
            got = "impossible"
        want = shrink_oracle(dec.h, iv, p)
        if got != want:
            fails.append(f"{u} on [{iv.lo},{iv.hi}] p={p}: {got} != {want}")
    return _result("laurent.riemann_step", fails, trials)


def check_plfun(rng: random.Random, trials: int = 500) -> CheckResult:
    fails = []
    for _ in range(trials):
        f, g = rand_convex_plfun(rng, nonneg=False), rand_convex_plfun(rng, nonneg=False)
        if not (f + g).is_convex() or not f.maximum(g).is_convex():
            fails.append(f"convexity {f} {g}")
        for _ in range(3):
            x = rand_rat(rng, 0, 6, 5)
            # integrate slopes segment by segment
            acc, prev = f.at0, Fraction(0)
            for b, s in f.pieces:
                seg_end = min(b, x)
                if seg_end > prev:
                    acc += s * (seg_end - prev)
                prev = max(prev, b)
            if x > prev:
                acc += f.final_slope * (x - prev)
            if acc != f(x):
                fails.append(f"integration {f} at {x}")
            if f.maximum(g)(x) != max(f(x), g(x)) or (f + g)(x) != f(x) + g(x):
                fails.append(f"pointwise {f} {g} at {x}")
        raw = PLFun(f.at0, list(f.pieces), f.final_slope)
        if raw != f:
            fails.append(f"canonical idempotence {f}")
    return _result("plfun.calculus", fails, trials)


def check_herbrand(rng: random.Random, trials: int = 200) -> CheckResult:
    fails = []
    for _ in range(trials):
        rp = ram_from_kummer(rng.randint(1, 16), rng.choice([2, 3, 5]))
        w1 = GammaVal(abs(rand_rat(rng)), rand_rat(rng))
        w2 = GammaVal(abs(rand_rat(rng)), rand_rat(rng))
        if w1 < GammaVal() or w2 < GammaVal():
            continue
        a, b = sorted((w1, w2))
        if a < b and not phi_upper(rp, a) < phi_upper(rp, b):
            fails.append(f"monotone n={rp.group.order}")
        if phi_upper(rp, GammaVal()) != GammaVal():
            fails.append("phi(0) != 0")
    return _result("ramify.herbrand_monotone", fails, trials)


def check_kummer_characters(max_n: int = 24) -> CheckResult:
    fails, cases = [], 0
    for p in (2, 3, 5, 7):
        for n in range(1, max_n + 1):
            rp = ram_from_kummer(n, p)
            G = rp.group
            cases += 1
            if swan_nat(rp) != artin_nat(rp) - ClassFun.augmentation(G):
                fails.append(f"swan two ways n={n} p={p}")
            af = artin_flat(rp)
            for d in range(1, n + 1):
                if n % d:
                    continue
                H = [k for k in range(n) if k % (n // d) == 0]
                lhs = inner(af, permutation_character(G, H))
                if lhs != delta_value(ram_from_kummer(n // d, p)):
                    fails.append(f"Fuehrer subgroups n={n} d={d} p={p}")
                if lhs < 0:
                    fails.append(f"positivity n={n} d={d}")
    return _result("ramify.kummer_characters", fails, cases)


def check_fuehrer_oracle(max_n: int = 12) -> CheckResult:
    fails, cases = [], 0
    for p in (2, 3, 5):
        for n in range(1, max_n + 1):
            for rho in (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2)):
                cases += 1
                if delta_value(ram_from_kummer(n, p, rho)) != fuehrer_oracle(n, p, rho):
                    fails.append(f"n={n} p={p} rho={rho}")
    return _result("ramify.fuehrer_oracle", fails, cases)


def check_profiles(rng: random.Random, trials: int = 200) -> CheckResult:
    fails = []
    profiles = list(fixture_profiles().values()) + [rand_profile(rng) for _ in range(trials)]
    grid = rational_grid(25)
    for pr in profiles:
        d = delta_from_profile(pr)
        if not d.is_convex():
            fails.append(f"delta not convex {pr}")
        sw = [swan_at(pr, x) for x in grid]
        if any(a > b for a, b in zip(sw, sw[1:])):
            fails.append(f"swan decreasing {pr}")
    return _result("conductor.convex_monotone", fails, len(profiles))


def check_beta(rng: random.Random, trials: int = 200) -> CheckResult:
    fails = []
    profiles = list(fixture_profiles().values()) + [rand_profile(rng) for _ in range(trials)]
    qs = rational_grid(20, 5)
    for pr in profiles:
        beta = beta_function(pr)
        for q in qs:
            want = beta_closed_form(pr, q)
            if beta(q) != want:
                fails.append(f"beta closed form at {q}")
            for c in (Fraction(0), Fraction(-3, 2), Fraction(7, 3)):
                if f_qc(pr, q, c).eventual_slope != want:
                    fails.append(f"f_qc oracle q={q} c={c}")
        if sum(b.mu for b in newton_breaks(pr)) != pr.rank:
            fails.append("multiplicities != rank")
        big = max(c.f.eventual_slope for c in pr.curves) + 1
        if beta(big) != big * pr.rank or beta.final_slope != pr.rank:
            fails.append("eventual linearity")
        if any(beta(q) < q * pr.rank for q in qs):
            fails.append("beta below q*rank")
        if beta_function(shift_profile(pr, rand_rat(rng, 0, 3))) != beta:
            fails.append("shift invariance")
    return _result("conductor.beta_oracle", fails, len(profiles))


def check_tensor_profiles(rng: random.Random, trials: int = 100) -> CheckResult:
    fails = []
    grid = rational_grid(25)
    for _ in range(trials):
        A, B = rand_profile(rng), rand_profile(rng)
        T = tensor_profile_bound(A, B)
        dA, dB, dT = delta_from_profile(A), delta_from_profile(B), delta_from_profile(T)
        for x in grid:
            if dT(x) > A.rank * B.rank * max(dA(x), dB(x)):
                fails.append(f"tensor bound at {x}")
    return _result("conductor.tensor_bound", fails, trials)


BREAK_SETTINGS = [
    # (group order, p, ell)
    (2, 2, 3), (2, 2, 5), (4, 2, 3), (4, 2, 5), (3, 3, 5), (9, 3, 5),
]


def check_breakdec(rng: random.Random, trials: int = 100, max_dim: int = 6) -> CheckResult:
    fails, cases = [], 0
    for k, p, ell in BREAK_SETTINGS:
        for n in (1, 2):
            ring = bd.FinRing(ell, n)
            for _ in range(trials):
                rep = bd.random_rep(k, p, ring, max_dim, rng)
                cases += 1
                reports = [bd.verify_break_props(rep), bd.hom_vanishing_check(rep, rng, trials=1)]
                if n >= 2:
                    reports.append(bd.base_change_check(rep))
                for r in reports:
                    if not r.passed:
                        bad = [c for c, ok in r.checks.items() if not ok]
                        fails.append(f"Z/{k} ell={ell} n={n}: {bad}")
    return _result("breakdec.decomposition", fails, cases)


def check_tensor_breaks(rng: random.Random, trials: int = 100) -> CheckResult:
    fails = []
    settings = [(k, p, ell, n) for k, p, ell in BREAK_SETTINGS for n in (1, 2)]
    for t in range(trials):
        k, p, ell, n = settings[t % len(settings)]
        ring = bd.FinRing(ell, n)
        A = bd.random_rep(k, p, ring, 4, rng)
        B = bd.random_rep(k, p, ring, 4, rng)
        r = bd.tensor_breaks_check(A, B)
        if not r.passed:
            fails.append(f"Z/{k} ell={ell} n={n}: {[c for c, ok in r.checks.items() if not ok]}")
    return _result("breakdec.tensor_rules", fails, trials)


SUITES: Dict[str, Callable[[random.Random], CheckResult]] = {
    "valgroup": check_valgroup,
    "gauss_multiplicative": check_gauss_multiplicative,
    "ultrametric": check_ultrametric,
    "gauss_scaling": check_gauss_scaling,
    "riemann_step": check_riemann_step,
    "plfun": check_plfun,
    "herbrand": check_herbrand,
    "kummer_characters": lambda rng: check_kummer_characters(),
    "fuehrer_oracle": lambda rng: check_fuehrer_oracle(),
    "profiles": check_profiles,
    "beta": check_beta,
    "tensor_profiles": check_tensor_profiles,
    "breakdec": check_breakdec,
    "tensor_breaks": check_tensor_breaks,
}


def run_all(seed: int = 0, only: Optional[List[str]] = None) -> List[CheckResult]:
    out = []
    for name, suite in SUITES.items():
        if only and name not in only:
            continue
        # one independent stream per suite keeps results stable when suites are skipped
        out.append(suite(random.Random(f"{seed}:{name}")))
    return out
