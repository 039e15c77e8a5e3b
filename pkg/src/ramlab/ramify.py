"""Higher ramification data of a finite stabilizer group.

A :class:`RamPoint` records, for each non-trivial ``sigma``, the additive value
of ``i(sigma)`` in the rank-two value group, together with ``gamma0``, the
additive value of the largest element of the value group below 1.  From it
we build lower and upper jumps, the Artin and Swan class functions and the
discriminant value.

Filtration convention: at a jump ``w`` the subgroup ``P(w)`` is the set of
``sigma`` with ``val(i(sigma)) >= w``, together with the identity.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .valgroup import DomainError, is_prime, GammaVal, as_rat, format_rat

__all__ = [
    "DomainError",
    "FiniteGroup",
    "RamPoint",
    "ClassFun",
    "jumps_lower",
    "jumps_upper",
    "phi_upper",
    "artin_flat",
    "artin_nat",
    "swan_nat",
    "induce",
    "inner",
    "different_val",
    "delta_value",
    "ram_from_kummer",
    "p_adic_val",
]


def p_adic_val(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _is_prime_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


class FiniteGroup:
    """Group on ``0..order-1`` given by its Cayley table; 0 is the identity."""

    def __init__(self, table: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None,
                 *, validate: bool = True):
        n = len(table)
        if n == 0:
            raise DomainError("empty Cayley table")
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = n
        self.labels = tuple(labels) if labels is not None else None
        if validate:
            self._validate()
        self.inverses = tuple(self.table[g].index(0) for g in range(n))

    def _validate(self):
        n, t = self.order, self.table
        for row in t:
            if len(row) != n or sorted(row) != list(range(n)):
                raise DomainError("Cayley table rows must be permutations of the elements")
        for j in range(n):
            if sorted(t[i][j] for i in range(n)) != list(range(n)):
                raise DomainError("Cayley table columns must be permutations of the elements")
        if t[0] != tuple(range(n)) or any(t[g][0] != g for g in range(n)):
            raise DomainError("element 0 must be the identity")
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise DomainError(f"table is not associative at ({a}, {b}, {c})")

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls([[(i + j) % n for j in range(n)] for i in range(n)], validate=False)

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls([[0]])

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, t: int, g: int) -> int:
        """``t^-1 g t``."""
        return self.table[self.table[self.inverses[t]][g]][t]

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.table[x][g]
            k += 1
        return k

    @cached_property
    def classes(self) -> Tuple[Tuple[int, ...], ...]:
        """Conjugacy classes, each sorted, ordered by least element."""
        seen, out = set(), []
        for g in range(self.order):
            if g in seen:
                continue
            cl = tuple(sorted({self.conj(t, g) for t in range(self.order)}))
            seen.update(cl)
            out.append(cl)
        return tuple(out)

    @cached_property
    def class_index(self) -> Tuple[int, ...]:
        idx = [0] * self.order
        for k, cl in enumerate(self.classes):
            for g in cl:
                idx[g] = k
        return tuple(idx)

    def is_subgroup(self, elts) -> bool:
        s = set(elts)
        if 0 not in s:
            return False
        return all(self.table[a][self.inverses[b]] in s for a in s for b in s)

    def is_normal(self, elts) -> bool:
        s = set(elts)
        return self.is_subgroup(s) and all(self.conj(t, g) in s for t in range(self.order) for g in s)

    def generated(self, gens) -> frozenset:
        out = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in out:
                    out.add(y)
                    frontier.append(y)
        return frozenset(out)

    def to_json(self) -> dict:
        obj = {"order": self.order, "table": [list(r) for r in self.table]}
        if self.labels is not None:
            obj["labels"] = list(self.labels)
        return obj

    @classmethod
    def from_json(cls, obj: Mapping) -> "FiniteGroup":
        if "cyclic" in obj:
            return cls.cyclic(int(obj["cyclic"]))
        g = cls(obj["table"], obj.get("labels"))
        if "order" in obj and int(obj["order"]) != g.order:
            raise DomainError("declared order does not match table size")
        return g

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


@dataclass(frozen=True, eq=False)
class ClassFun:
    """Rational class function, stored as one value per element."""

    group: FiniteGroup
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(as_rat(v) for v in self.values)
        if len(vals) != self.group.order:
            raise ValueError("one value per group element expected")
        for cl in self.group.classes:
            if len({vals[g] for g in cl}) > 1:
                raise DomainError(f"values not constant on class {cl}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_callable(cls, group: FiniteGroup, fn) -> "ClassFun":
        return cls(group, tuple(fn(g) for g in range(group.order)))

    @classmethod
    def regular(cls, group: FiniteGroup) -> "ClassFun":
        return cls.from_callable(group, lambda g: group.order if g == 0 else 0)

    @classmethod
    def trivial(cls, group: FiniteGroup) -> "ClassFun":
        return cls.from_callable(group, lambda g: 1)

    @classmethod
    def augmentation(cls, group: FiniteGroup) -> "ClassFun":
        return cls.regular(group) - cls.trivial(group)

    @classmethod
    def zero(cls, group: FiniteGroup) -> "ClassFun":
        return cls.from_callable(group, lambda g: 0)

    def __call__(self, g: int) -> Fraction:
        return self.values[g]

    def _check(self, other: "ClassFun"):
        if self.group != other.group:
            raise DomainError("class functions live on different groups")

    def __add__(self, other: "ClassFun") -> "ClassFun":
        self._check(other)
        return ClassFun(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "ClassFun") -> "ClassFun":
        self._check(other)
        return ClassFun(self.group, tuple(a - b for a, b in zip(self.values, other.values)))

    def scale(self, c) -> "ClassFun":
        c = as_rat(c)
        return ClassFun(self.group, tuple(c * v for v in self.values))

    def __eq__(self, other):
        return isinstance(other, ClassFun) and self.group == other.group and self.values == other.values

    def __hash__(self):
        return hash((self.group, self.values))

    def by_class(self) -> List[Tuple[Tuple[int, ...], Fraction]]:
        return [(cl, self.values[cl[0]]) for cl in self.group.classes]

    def to_json(self) -> list:
        return [{"class": list(cl), "value": format_rat(v)} for cl, v in self.by_class()]


def induce(cf: ClassFun, G: FiniteGroup, embedding: Optional[Sequence[int]] = None) -> ClassFun:
    """Induce ``cf`` from its group ``H`` to ``G`` along ``embedding: H -> G``."""
    H = cf.group
    if embedding is None:
        if H != G:
            raise DomainError("an embedding is required when the groups differ")
        embedding = list(range(H.order))
    emb = [int(e) for e in embedding]
    if len(emb) != H.order or len(set(emb)) != H.order:
        raise DomainError("embedding is not injective")
    for a in range(H.order):
        for b in range(H.order):
            if emb[H.mul(a, b)] != G.mul(emb[a], emb[b]):
                raise DomainError("embedding is not a homomorphism")
    back = {g: h for h, g in enumerate(emb)}
    vals = []
    for g in range(G.order):
        tot = Fraction(0)
        for t in range(G.order):
            c = G.conj(t, g)
            if c in back:
                tot += cf(back[c])
        vals.append(tot / H.order)
    return ClassFun(G, tuple(vals))


def inner(cf1: ClassFun, cf2: ClassFun) -> Fraction:
    cf1._check(cf2)
    G = cf1.group
    return sum((cf1(g) * cf2(G.inv(g)) for g in range(G.order)), Fraction(0)) / G.order


def subgroup_as_group(G: FiniteGroup, elts) -> Tuple[FiniteGroup, List[int]]:
    """Re-index a subgroup as a standalone group; returns it with its embedding."""
    emb = sorted(elts)
    pos = {g: k for k, g in enumerate(emb)}
    table = [[pos[G.mul(a, b)] for b in emb] for a in emb]
    return FiniteGroup(table, validate=False), emb


def permutation_character(G: FiniteGroup, elts) -> ClassFun:
    """``Ind_H^G 1_H`` for the subgroup ``H`` with the given elements."""
    H, emb = subgroup_as_group(G, elts)
    return induce(ClassFun.trivial(H), G, emb)


@dataclass(eq=False)
class RamPoint:
    """Stabilizer group with its ramification function ``i`` and ``gamma0``."""

    group: FiniteGroup
    i_map: Dict[int, GammaVal]
    gamma0: GammaVal
    p: int
    rho: Optional[Fraction] = None

    def __post_init__(self):
        self.i_map = {int(k): v for k, v in self.i_map.items()}
        self.validate()

    def validate(self):
        G = self.group
        if set(self.i_map) != set(range(1, G.order)):
            raise DomainError("i_map must cover exactly the non-identity elements")
        if not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")
        if not (self.gamma0.flat == 0 and self.gamma0.eps > 0):
            raise DomainError("gamma0 must have flat part 0 and positive eps part")
        for g, v in self.i_map.items():
            if not v.is_positive():
                raise DomainError(f"i({g}) must be positive")
            if v < self.gamma0:
                raise DomainError(f"i({g}) lies below gamma0")
        for cl in G.classes:
            if len({self.i_map[g] for g in cl if g != 0}) > 1:
                raise DomainError(f"i_map not constant on class {cl}")
        for w in set(self.i_map.values()):
            for strict in (False, True):
                elts = {0} | {g for g, v in self.i_map.items() if (v > w if strict else v >= w)}
                if not G.is_normal(elts):
                    raise DomainError(f"ramification set at {w!r} is not a normal subgroup")
        wild = G.generated(g for g, v in self.i_map.items() if v.flat > 0)
        if not _is_prime_power(len(wild), self.p):
            raise DomainError("wild part does not generate a p-group")

    def subgroup_at(self, w: GammaVal) -> frozenset:
        return frozenset({0} | {g for g, v in self.i_map.items() if v >= w})

    def to_json(self) -> dict:
        return {
            "order": self.group.order,
            "table": [list(r) for r in self.group.table],
            "i_map": {str(g): v.to_json() for g, v in sorted(self.i_map.items())},
            "gamma0": self.gamma0.to_json(),
            "p": self.p,
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "RamPoint":
        G = FiniteGroup.from_json(obj)
        return cls(
            G,
            {int(k): GammaVal.from_json(v) for k, v in obj["i_map"].items()},
            GammaVal.from_json(obj["gamma0"]),
            int(obj["p"]),
            as_rat(obj["rho"]) if "rho" in obj else None,
        )


def jumps_lower(rp: RamPoint) -> List[GammaVal]:
    """Distinct positive ``i``-values, ascending additively."""
    return sorted({v for v in rp.i_map.values() if v.is_positive()})


def phi_upper(rp: RamPoint, w: GammaVal) -> GammaVal:
    """Herbrand function in additive form: ``w + sum_{g != 1} min(w, i(g) - gamma0)``."""
    if w < GammaVal():
        raise DomainError("phi_upper needs a non-negative argument")
    out = w
    for v in rp.i_map.values():
        out = out + min(w, v - rp.gamma0)
    return out


def jumps_upper(rp: RamPoint) -> List[GammaVal]:
    return [phi_upper(rp, w) for w in jumps_lower(rp)]


def _induced_augmentation(rp: RamPoint, elts) -> ClassFun:
    H, emb = subgroup_as_group(rp.group, elts)
    return induce(ClassFun.augmentation(H), rp.group, emb)


def artin_flat(rp: RamPoint) -> ClassFun:
    """Flat Artin character as a sum over the lower jumps."""
    out = ClassFun.zero(rp.group)
    prev = Fraction(0)
    for w in jumps_lower(rp):
        P = rp.subgroup_at(w)
        step = w.flat - prev
        if step:
            out = out + _induced_augmentation(rp, P).scale(len(P) * step)
        prev = w.flat
    return out


def swan_nat(rp: RamPoint) -> ClassFun:
    """Infinitesimal Swan character; the jump chain starts at ``gamma0``."""
    out = ClassFun.zero(rp.group)
    prev = rp.gamma0.eps
    for w in jumps_lower(rp):
        P = rp.subgroup_at(w)
        step = w.eps - prev
        if step:
            out = out + _induced_augmentation(rp, P).scale(len(P) * step)
        prev = w.eps
    return out


def artin_flat_direct(rp: RamPoint) -> ClassFun:
    """Flat Artin character straight from ``i``: ``-o * flat(i(sigma))`` off the identity."""
    o = rp.group.order

    def value(g):
        if g == 0:
            return o * sum((v.flat for v in rp.i_map.values()), Fraction(0))
        return -o * rp.i_map[g].flat

    return ClassFun.from_callable(rp.group, value)


def artin_nat(rp: RamPoint) -> ClassFun:
    """Infinitesimal Artin character ``o * (i(sigma)^-1)^nat``, balanced at the identity."""
    o = rp.group.order

    def value(g):
        if g == 0:
            return o * sum((v.eps for v in rp.i_map.values()), Fraction(0))
        return -o * rp.i_map[g].eps

    return ClassFun.from_callable(rp.group, value)


def different_val(rp: RamPoint) -> GammaVal:
    return sum(rp.i_map.values(), GammaVal())


def delta_value(rp: RamPoint) -> Fraction:
    """Discriminant value ``<a_flat, reg>``, which is ``a_flat(1)``."""
    return artin_flat(rp)(0)


def kummer_i_value(order: int, n: int, p: int) -> GammaVal:
    """Additive ``|1 - zeta| * gamma0`` for ``zeta`` of the given order in ``mu_n``."""
    eps = Fraction(1, n)
    j = p_adic_val(order, p) if order > 1 else 0
    if j >= 1 and order == p**j:
        return GammaVal(Fraction(1, p ** (j - 1) * (p - 1)), eps)
    # 1 - zeta is a unit unless zeta has p-power order
    return GammaVal(0, eps)


def ram_from_kummer(n: int, p: int, rho=0) -> RamPoint:
    """Ramification point of the Kummer covering ``xi -> xi**n``; radius-independent."""
    if n < 1:
        raise DomainError("Kummer degree must be >= 1")
    G = FiniteGroup.cyclic(n)
    i_map = {k: kummer_i_value(n // math.gcd(n, k), n, p) for k in range(1, n)}
    return RamPoint(G, i_map, GammaVal(0, Fraction(1, n)), p, as_rat(rho))
