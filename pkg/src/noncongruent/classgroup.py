"""2-primary invariants of class groups of Q(sqrt(-m)), m odd square-free.

Class numbers come from counting reduced forms; the 4-rank from the nullity
of the generalized Redei matrix; the 8-rank from three routes that must agree:
the ternary-equation procedure on the Redei matrix, quartic-symbol criteria
for the two families, and the Jung-Yue formula for the P-part.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .arith import Factored, factor_squarefree, hilbert, phi_map, quartic, v2
from .descent import p_v_split
from .errors import (
    BadInput,
    BudgetExceeded,
    NotSquarefree,
    SearchExhausted,
    UnsupportedFourRank,
    UnsupportedSplit,
)
from .gf2 import BitMatrix, nullspace, rank, solve

H_BUDGET = 1 << 40
TERNARY_HARD_LIMIT = 1 << 20


@dataclass(frozen=True)
class Discriminant:
    m: int
    D: int

    @property
    def abs(self) -> int:
        return -self.D


@dataclass(frozen=True)
class ClassNumberResult:
    disc: Discriminant
    h: int
    v2: int


@dataclass(frozen=True)
class RedeiData:
    disc: Discriminant
    prime_list: tuple[int, ...]
    R: BitMatrix
    four_rank: int

    @property
    def m0(self) -> int:
        return math.prod(self.prime_list)


@dataclass(frozen=True)
class TernaryWitness:
    d: int
    x: int
    y: int
    z: int

    def check(self, D: int) -> bool:
        return (self.x ** 2 - 4 * self.d * self.y ** 2 - D * self.z ** 2 == 0
                and math.gcd(self.x, self.y, self.z) == 1)


def discriminant(m: int | Factored) -> Discriminant:
    """Fundamental discriminant of Q(sqrt(-m)): -4m if m = 1 mod 4, else -m."""
    mm = m.n if isinstance(m, Factored) else int(m)
    if mm < 3 or mm % 2 == 0:
        raise BadInput(f"{mm} must be odd and >= 3")
    if not isinstance(m, Factored):
        try:
            factor_squarefree(mm)
        except NotSquarefree as exc:
            raise BadInput(str(exc)) from exc
    return Discriminant(mm, -4 * mm if mm % 4 == 1 else -mm)


def class_number(disc: Discriminant | int, budget: int = H_BUDGET,
                 backend: str | None = None) -> ClassNumberResult:
    """h(D) by enumerating reduced primitive forms (a, b, c), b^2 - 4ac = D."""
    if not isinstance(disc, Discriminant):
        disc = discriminant(disc)
    if disc.abs > budget:
        raise BudgetExceeded(f"|D| = {disc.abs} exceeds the class-number budget {budget}")
    h = kernels.class_number_count(disc.abs, backend=backend)
    return ClassNumberResult(disc, h, v2(h))


def _redei_primes(disc: Discriminant, m: Factored) -> tuple[int, ...]:
    return ((2,) if disc.D % 4 == 0 else ()) + m.primes


def redei(m: int | Factored) -> RedeiData:
    """Generalized Redei matrix R_ij = phi((l_j, D)_{l_i}) and the 4-rank."""
    f = m if isinstance(m, Factored) else factor_squarefree(m)
    disc = discriminant(f)
    ells = _redei_primes(disc, f)
    R = BitMatrix.from_rows([[phi_map(hilbert(lj, disc.D, li)) for lj in ells] for li in ells])
    return RedeiData(disc, ells, R, len(ells) - rank(R) - 1)


def k_set(rd: RedeiData) -> list[int]:
    """Square-free d | m0 whose prime-indicator vector lies in null(R)."""
    basis = nullspace(rd.R)
    vecs = {tuple([0] * len(rd.prime_list))}
    for b in basis:
        vecs |= {tuple(x ^ y for x, y in zip(v, b)) for v in vecs}
    return sorted(math.prod(l for l, e in zip(rd.prime_list, v) if e) for v in vecs)


def ternary_witnesses(d: int, disc: Discriminant, count: int = 1, cap: int | None = None,
                      backend: str | None = None) -> list[TernaryWitness]:
    """First ``count`` primitive positive solutions of x^2 - 4dy^2 - Dz^2 = 0
    in (z, y) order, escalating the cap x4 until found or the hard limit."""
    if cap is None:
        cap = math.isqrt(disc.abs) + 2
    while True:
        rows = kernels.ternary_search(d, disc.abs, cap, cap, count, backend=backend)
        if len(rows) >= count:
            return [TernaryWitness(d, *r) for r in rows]
        if cap >= TERNARY_HARD_LIMIT:
            raise SearchExhausted(f"no {count} witnesses for d={d}, D={disc.D} up to {cap}")
        cap = min(4 * cap, TERNARY_HARD_LIMIT)


def ternary_solve(d: int, disc: Discriminant, cap: int | None = None,
                  backend: str | None = None) -> TernaryWitness:
    return ternary_witnesses(d, disc, 1, cap, backend)[0]


def waterhouse_vector(rd: RedeiData, witness: TernaryWitness) -> tuple[int, ...]:
    """C_d = (phi((y_d, D)_{l_i}))_i for a ternary witness."""
    return tuple(phi_map(hilbert(witness.y, rd.disc.D, l)) for l in rd.prime_list)


def waterhouse_solvable(rd: RedeiData, witness: TernaryWitness) -> bool:
    return solve(rd.R, waterhouse_vector(rd, witness)) is not None


def eight_rank_waterhouse(rd: RedeiData, cap: int | None = None, witness_index: int = 0,
                          backend: str | None = None) -> int:
    """8-rank (0 or 1) when the 4-rank is 1.

    K = {1, m, d1, d2}; the systems for 1 and m are always consistent, so the
    8-rank is 1 exactly when R v = C_{d1} has a solution.
    """
    if rd.four_rank != 1:
        raise UnsupportedFourRank(f"4-rank is {rd.four_rank}; only 4-rank 1 is handled")
    d1 = next(d for d in k_set(rd) if d not in (1, rd.disc.m))
    wit = ternary_witnesses(d1, rd.disc, witness_index + 1, cap, backend)[witness_index]
    return 1 if waterhouse_solvable(rd, wit) else 0


def _as_primes(P: Factored | Sequence[int] | int) -> tuple[int, ...]:
    if isinstance(P, Factored):
        return P.primes
    if isinstance(P, int):
        return factor_squarefree(P).primes
    return tuple(sorted(P))


def eight_rank_quartic_5557(P: Factored | Sequence[int], q: int) -> int:
    """r8(-Pq) for the q = 7 mod 8 family: 1 iff (q/P)_4 = -1."""
    return 1 if quartic(q, _as_primes(P)) == -1 else 0


def eight_rank_quartic_553(P: Factored | Sequence[int], q: int) -> int:
    """r8(-Pq) for the q = 3 mod 8 family: 1 iff (q/P)_4 = +1."""
    return 1 if quartic(q, _as_primes(P)) == 1 else 0


def eight_rank_jung_yue(P: Factored | Sequence[int], split: tuple[int, int] | None = None) -> int:
    """r8(-P) for P a product of primes = 1 mod 4 with 4-rank 1.

    The split P = P1 P2 defaults to :func:`noncongruent.descent.p_v_split`.
    """
    ps = _as_primes(P)
    Pn = math.prod(ps)
    P1, P2 = split if split is not None else p_v_split(ps)
    if P1 * P2 != Pn:
        raise BadInput("split does not multiply to P")
    if P1 % 8 != P2 % 8 or P1 % 8 not in (1, 5):
        raise UnsupportedSplit(f"P1 = {P1} and P2 = {P2} are not congruent to 1 or 5 mod 8")
    primes1 = [p for p in ps if P1 % p == 0]
    primes2 = [p for p in ps if P2 % p == 0]
    s = quartic(2 * P1, primes2) * quartic(2 * P2, primes1)
    # both residue classes of the split lead to the same rule
    if Pn % 16 == 9:
        return 1 if s == -1 else 0
    if Pn % 16 == 1:
        return 1 if s == 1 else 0
    raise UnsupportedSplit(f"P = {Pn} is not 1 mod 8")
