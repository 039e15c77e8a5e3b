"""Break decomposition of modules over ``Z/ell^n`` under a filtered p-group.

For a chain ``P = P_0 >= P_1 >= ... >= P_n = {1}`` of normal subgroups, the
averaging elements ``e_i = |P_i|^-1 * sum(P_i)`` are central idempotents and

    pi_{-1} = e_0,   pi_i = e_{i+1} (1 - e_i)   (0 <= i < n)

cut the module into ``M_{-1} = M^P, M_0, ..., M_{n-1}``.  Ranks are read off
modulo ``ell``: projector images over the local ring are free.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from . import modmat
from .ramify import DomainError, FiniteGroup, p_adic_val
from .valgroup import is_prime

__all__ = [
    "FinRing",
    "FilteredRep",
    "BreakDecomp",
    "Report",
    "idempotent",
    "break_decompose",
    "fixed_rank",
    "verify_break_props",
    "tensor_breaks_check",
    "base_change_check",
    "hom_vanishing_check",
    "random_rep",
]


@dataclass(frozen=True)
class FinRing:
    """The ring ``Z/ell^n``."""

    ell: int
    n: int

    def __post_init__(self):
        if not is_prime(self.ell):
            raise DomainError(f"ell = {self.ell} is not prime")
        if self.n < 1:
            raise DomainError("exponent n must be >= 1")

    @property
    def modulus(self) -> int:
        return self.ell**self.n

    def inverse(self, a: int) -> int:
        return pow(a % self.modulus, -1, self.modulus)

    def reduced(self) -> "FinRing":
        return FinRing(self.ell, self.n - 1)


class FilteredRep:
    """Representation ``H -> GL_d(Z/ell^n)`` with a filtration of its p-Sylow.

    ``chain`` lists ``P_0 ⊇ P_1 ⊇ ... ⊇ P_n``; the trailing trivial group is
    appended when missing.
    """

    def __init__(self, group: FiniteGroup, chain: Sequence[Sequence[int]], ring: FinRing,
                 action: Mapping[int, object], p: int, *, check_hom: Optional[bool] = None):
        self.group = group
        self.ring = ring
        self.p = p
        m = ring.modulus
        self.action = {int(g): np.asarray(a, dtype=np.int64) % m for g, a in action.items()}
        chain = [frozenset(int(x) for x in c) for c in chain]
        if not chain or chain[-1] != frozenset({0}):
            chain.append(frozenset({0}))
        self.chain: Tuple[frozenset, ...] = tuple(chain)
        self._validate(check_hom)

    @property
    def dim(self) -> int:
        return self.action[0].shape[0]

    def _validate(self, check_hom):
        G, m = self.group, self.ring.modulus
        if not is_prime(self.p):
            raise DomainError(f"p = {self.p} is not prime")
        if self.ring.ell == self.p:
            raise DomainError("ell must differ from the residue characteristic p")
        if set(self.action) != set(range(G.order)):
            raise DomainError("action must give a matrix for every group element")
        d = self.action[0].shape
        if len(d) != 2 or d[0] != d[1]:
            raise DomainError("action matrices must be square")
        if any(a.shape != d for a in self.action.values()):
            raise DomainError("action matrices must share one size")
        if not np.array_equal(self.action[0], np.eye(d[0], dtype=np.int64) % m):
            raise DomainError("identity must act trivially")
        for prev, cur in zip(self.chain, self.chain[1:]):
            if not cur <= prev:
                raise DomainError("chain must be descending")
        for P in self.chain:
            if not G.is_normal(P):
                raise DomainError(f"chain member {sorted(P)} is not a normal subgroup")
            o = len(P)
            if self.p ** p_adic_val(o, self.p) != o:
                raise DomainError("chain members must be p-groups")
            if o % self.ring.ell == 0:
                raise DomainError("chain orders must be invertible in the ring")
        if check_hom is None:
            check_hom = G.order <= 64
        if check_hom:
            pairs = itertools.product(range(G.order), repeat=2)
        else:
            rng = random.Random(0)
            pairs = ((rng.randrange(G.order), rng.randrange(G.order)) for _ in range(200))
        for a, b in pairs:
            lhs = self.action[G.mul(a, b)]
            rhs = modmat.matmul_mod(self.action[a], self.action[b], m)
            if not np.array_equal(lhs, rhs):
                raise DomainError(f"action is not a homomorphism at ({a}, {b})")

    def with_ring(self, ring: FinRing) -> "FilteredRep":
        return FilteredRep(self.group, self.chain, ring, self.action, self.p, check_hom=False)

    def to_json(self) -> dict:
        return {
            "ell": self.ring.ell,
            "n": self.ring.n,
            "p": self.p,
            "group": self.group.to_json(),
            "chain": [sorted(c) for c in self.chain],
            "action": {str(g): a.tolist() for g, a in sorted(self.action.items())},
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "FilteredRep":
        return cls(
            FiniteGroup.from_json(obj["group"]),
            obj["chain"],
            FinRing(int(obj["ell"]), int(obj["n"])),
            {int(k): v for k, v in obj["action"].items()},
            int(obj["p"]),
        )


def _eye(rep: FilteredRep) -> np.ndarray:
    return np.eye(rep.dim, dtype=np.int64)


def _average(rep: FilteredRep, elts) -> np.ndarray:
    m = rep.ring.modulus
    total = sum((rep.action[g] for g in elts), np.zeros((rep.dim, rep.dim), dtype=np.int64)) % m
    return (total * rep.ring.inverse(len(elts))) % m


def idempotent(rep: FilteredRep, i: int) -> np.ndarray:
    """Averaging projector of ``P_i``."""
    return _average(rep, rep.chain[i])


@dataclass
class BreakDecomp:
    """Break components ``(index, projector, rank)`` with index -1 first."""

    components: List[Tuple[int, np.ndarray, int]]
    modulus: int

    def projector(self, i: int) -> np.ndarray:
        for k, pr, _ in self.components:
            if k == i:
                return pr
        raise KeyError(i)

    def ranks(self) -> Dict[int, int]:
        return {k: r for k, _, r in self.components}

    def to_json(self) -> dict:
        return {"components": [{"index": k, "rank": r} for k, _, r in self.components]}


@dataclass
class Report:
    checks: Dict[str, bool] = field(default_factory=dict)

    def record(self, name: str, ok: bool):
        self.checks[name] = self.checks.get(name, True) and bool(ok)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": dict(sorted(self.checks.items()))}


def break_decompose(rep: FilteredRep) -> BreakDecomp:
    m, ell = rep.ring.modulus, rep.ring.ell
    E = [idempotent(rep, i) for i in range(len(rep.chain))]
    one = _eye(rep)
    projs = [(-1, E[0])]
    for i in range(len(rep.chain) - 1):
        projs.append((i, modmat.matmul_mod(E[i + 1], (one - E[i]) % m, m)))
    return BreakDecomp([(k, P, modmat.rank_mod_prime(P, ell)) for k, P in projs], m)


def fixed_rank(rep: FilteredRep, subgroup) -> int:
    elts = frozenset(int(x) for x in subgroup)
    if not rep.group.is_subgroup(elts):
        raise DomainError("not a subgroup")
    if len(elts) % rep.ring.ell == 0:
        raise DomainError("subgroup order is not invertible in the ring")
    return modmat.rank_mod_prime(_average(rep, elts), rep.ring.ell)


def verify_break_props(rep: FilteredRep, decomp: Optional[BreakDecomp] = None) -> Report:
    """Check the defining properties of the break components by matrix identities."""
    m = rep.ring.modulus
    dec = decomp if decomp is not None else break_decompose(rep)
    rep_ = Report()
    zero = np.zeros((rep.dim, rep.dim), dtype=np.int64)
    mul = lambda a, b: modmat.matmul_mod(a, b, m)
    total = sum((pr for _, pr, _ in dec.components), zero.copy()) % m
    rep_.record("complete", np.array_equal(total, _eye(rep) % m))
    for (i, a, _), (j, b, _) in itertools.product(dec.components, repeat=2):
        rep_.record("orthogonal_idempotent", np.array_equal(mul(a, b), a if i == j else zero))
    avgs = [idempotent(rep, k) for k in range(len(rep.chain))]
    for i, pr, _ in dec.components:
        if i == -1:
            rep_.record("M_-1_is_P_invariant", np.array_equal(mul(avgs[0], pr), pr))
            continue
        rep_.record("M_i_has_no_P_i_invariants", np.array_equal(mul(avgs[i], pr), zero))
        for j in range(i + 1, len(rep.chain)):
            rep_.record("M_i_fixed_by_P_j", np.array_equal(mul(avgs[j], pr), pr))
    rep_.record("rank_additivity", sum(r for _, _, r in dec.components) == rep.dim)
    return rep_


def _reynolds(rep: FilteredRep, X: np.ndarray, other: Optional[FilteredRep] = None) -> np.ndarray:
    """``|H|^-1 sum_g rho(g) X sigma(g)^-1``: projection of X onto equivariant maps."""
    other = other or rep
    G, m = rep.group, rep.ring.modulus
    acc = np.zeros(X.shape, dtype=np.int64)
    for g in range(G.order):
        acc = (acc + modmat.matmul_mod(modmat.matmul_mod(rep.action[g], X, m),
                                       other.action[G.inv(g)], m)) % m
    return (acc * rep.ring.inverse(G.order)) % m


def hom_vanishing_check(rep: FilteredRep, rng: random.Random, trials: int = 3) -> Report:
    """Equivariant maps between distinct break components vanish and endomorphisms commute."""
    if rep.group.order % rep.ring.ell == 0:
        raise DomainError("group order must be invertible for the averaging check")
    m = rep.ring.modulus
    dec = break_decompose(rep)
    zero = np.zeros((rep.dim, rep.dim), dtype=np.int64)
    out = Report()
    for _ in range(trials):
        X = np.array([[rng.randrange(m) for _ in range(rep.dim)] for _ in range(rep.dim)], dtype=np.int64)
        phi = _reynolds(rep, X)
        for i, a, _ in dec.components:
            out.record("endomorphisms_commute",
                       np.array_equal(modmat.matmul_mod(phi, a, m), modmat.matmul_mod(a, phi, m)))
            for j, b, _ in dec.components:
                if i == j:
                    continue
                Y = modmat.matmul_mod(modmat.matmul_mod(a, X, m), b, m)
                out.record("hom_vanishing", np.array_equal(_reynolds(rep, Y), zero))
    return out


def _combined(repA: FilteredRep, repB: FilteredRep, hom: bool) -> FilteredRep:
    m = repA.ring.modulus
    G = repA.group
    action = {}
    for g in range(G.order):
        if hom:
            # Hom(M, N) with row-major vec: X -> B(g) X A(g)^-1
            action[g] = np.kron(repB.action[g], repA.action[G.inv(g)].T) % m
        else:
            action[g] = np.kron(repA.action[g], repB.action[g]) % m
    return FilteredRep(G, repA.chain, repA.ring, action, repA.p, check_hom=False)


def _same_setting(repA: FilteredRep, repB: FilteredRep):
    if repA.group != repB.group or repA.chain != repB.chain or repA.ring != repB.ring or repA.p != repB.p:
        raise DomainError("representations must share group, chain, ring and p")


def tensor_breaks_check(repA: FilteredRep, repB: FilteredRep) -> Report:
    """Tensor and Hom containment rules between break components.

    ``M_i (x) N_j`` lies in break ``max(i, j)`` when ``i != j`` and in breaks
    ``<= i`` when ``i == j``; the same holds for ``Hom(M_i, N_j)``.
    """
    _same_setting(repA, repB)
    m = repA.ring.modulus
    decA, decB = break_decompose(repA), break_decompose(repB)
    out = Report()
    for hom in (False, True):
        label = "hom" if hom else "tensor"
        big = break_decompose(_combined(repA, repB, hom))
        zero = np.zeros((big.components[0][1].shape), dtype=np.int64)
        for (i, a, _), (j, b, _) in itertools.product(decA.components, decB.components):
            piece = (np.kron(b, a.T) if hom else np.kron(a, b)) % m
            for k, pr, _ in big.components:
                allowed = (k == max(i, j)) if i != j else (k <= i)
                if not allowed:
                    out.record(f"{label}_containment",
                               np.array_equal(modmat.matmul_mod(pr, piece, m), zero))
    return out


def base_change_check(rep: FilteredRep) -> Report:
    """Decomposition commutes with reduction ``Z/ell^n -> Z/ell^(n-1)``."""
    if rep.ring.n < 2:
        raise DomainError("base change check needs n >= 2")
    small = rep.with_ring(rep.ring.reduced())
    m_small = small.ring.modulus
    big, red = break_decompose(rep), break_decompose(small)
    out = Report()
    for (i, a, ra), (j, b, rb) in zip(big.components, red.components):
        out.record("indices_match", i == j)
        out.record("projectors_reduce", np.array_equal(a % m_small, b))
        out.record("ranks_match", ra == rb)
    return out


# -- random fixtures ---------------------------------------------------------

def _cyclic_block_generators(k: int, m: int) -> List[np.ndarray]:
    """Matrices ``A`` with ``A**k = 1`` from which cyclic representations are assembled."""
    blocks = []
    for d in range(1, k + 1):
        if k % d == 0:
            perm = np.zeros((d, d), dtype=np.int64)
            for r in range(d):
                perm[(r + 1) % d, r] = 1
            blocks.append(perm)
    if k % 2 == 0:
        blocks.append(np.array([[m - 1]], dtype=np.int64))
    # scalars of exact order dividing k
    for a in range(2, m):
        if pow(a, k, m) == 1 and a != m - 1:
            blocks.append(np.array([[a]], dtype=np.int64))
    return blocks


def _random_invertible(dim: int, ring: FinRing, rng: random.Random) -> Tuple[np.ndarray, np.ndarray]:
    m = ring.modulus
    while True:
        S = np.array([[rng.randrange(m) for _ in range(dim)] for _ in range(dim)], dtype=np.int64)
        if modmat.rank_mod_prime(S, ring.ell) == dim:
            return S, modmat.inv_mod(S, ring.ell, m)


def random_rep(k: int, p: int, ring: FinRing, max_dim: int, rng: random.Random,
               chain: Optional[Sequence[Sequence[int]]] = None) -> FilteredRep:
    """Random representation of ``Z/k`` (a p-group) over ``ring``, conjugated by a random change of basis.

    The default chain is the maximal one ``Z/k ⊇ Z/(k/p) ⊇ ... ⊇ {1}``.
    """
    m = ring.modulus
    G = FiniteGroup.cyclic(k)
    gens = _cyclic_block_generators(k, m)
    blocks: List[np.ndarray] = []
    dim = 0
    target = rng.randint(1, max_dim)
    while dim < target:
        cands = [b for b in gens if dim + b.shape[0] <= target]
        b = rng.choice(cands)
        blocks.append(b)
        dim += b.shape[0]
    A = np.zeros((dim, dim), dtype=np.int64)
    pos = 0
    for b in blocks:
        s = b.shape[0]
        A[pos:pos + s, pos:pos + s] = b
        pos += s
    S, Sinv = _random_invertible(dim, ring, rng)
    gen = modmat.matmul_mod(modmat.matmul_mod(S, A, m), Sinv, m)
    action = {0: np.eye(dim, dtype=np.int64)}
    for g in range(1, k):
        action[g] = modmat.matmul_mod(action[g - 1], gen, m)
    if chain is None:
        chain, order = [], k
        while order > 1:
            chain.append([x for x in range(k) if x % (k // order) == 0])
            order //= p
        chain.append([0])
    return FilteredRep(G, chain, ring, action, p, check_hom=False)
