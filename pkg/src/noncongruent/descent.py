"""2-descent on y^2 = x^3 - n^2 x for odd square-free n.

Divisor pairs (u, u') of n are encoded as F2 vectors over the ascending
primes of n. The Monsky matrix's nullspace, pulled back through that
encoding, is the set of everywhere-locally-solvable pairs; its dimension is
the 2-Selmer rank.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import NamedTuple, Sequence

from . import kernels
from .arith import Factored, legendre, phi_map
from .errors import CapExceeded, NoSolution, NotDivisor
from .gf2 import BitMatrix, Vector, block_assemble, nullspace, rank, solve

Z_SET_CAP = 20
WITNESS_BOUND = 10_000


class DivisorPair(NamedTuple):
    u: int
    u_prime: int


@dataclass(frozen=True)
class MonskyData:
    factored: Factored
    A: BitMatrix
    D2: BitMatrix
    Dm2: BitMatrix
    M: BitMatrix
    selmer_rank: int


@dataclass(frozen=True)
class SolutionTuple:
    pair: DivisorPair
    n: int
    x: int
    y: int
    z: int
    w: int

    def check(self) -> bool:
        u, up = self.pair
        lhs = u * up * self.x ** 2
        return (lhs + self.n * self.y ** 2 == u * self.z ** 2
                and lhs - self.n * self.y ** 2 == up * self.w ** 2)


def _primes(n: Factored | Sequence[int]) -> tuple[int, ...]:
    return n.primes if isinstance(n, Factored) else tuple(n)


def divisor_group(n: Factored) -> list[int]:
    """All 2^r positive divisors of n, ascending."""
    divs = [1]
    for p in n.primes:
        divs += [d * p for d in divs]
    return sorted(divs)


def _check_divisor(u: int, n: int) -> None:
    if u < 1 or n % u:
        raise NotDivisor(f"{u} does not divide {n}")


def star(u: int, u_prime: int, n: int | None = None) -> int:
    """Group law on divisors: u u' / gcd(u, u')^2."""
    if n is not None:
        _check_divisor(u, n)
        _check_divisor(u_prime, n)
    g = math.gcd(u, u_prime)
    return (u // g) * (u_prime // g)


def varphi(u: int, n: Factored) -> Vector:
    """Indicator vector of the primes of n dividing u."""
    _check_divisor(u, n.n)
    return tuple(1 if u % p == 0 else 0 for p in n.primes)


def varphi_inverse(v: Sequence[int], n: Factored) -> int:
    return math.prod(p for p, b in zip(n.primes, v) if b)


def psi(pair: tuple[int, int], n: Factored) -> Vector:
    u, up = pair
    return varphi(u, n) + varphi(up, n)


def psi_inverse(v: Sequence[int], n: Factored) -> DivisorPair:
    r = len(n.primes)
    return DivisorPair(varphi_inverse(v[:r], n), varphi_inverse(v[r:], n))


def build_A(n: Factored | Sequence[int]) -> BitMatrix:
    """a_ij = phi((p_j / p_i)) off the diagonal, a_ii = row sum of the rest.

    A single prime gives the 1x1 zero matrix.
    """
    ps = _primes(n)
    r = len(ps)
    rows = []
    for i, pi in enumerate(ps):
        row = [phi_map(legendre(pj, pi)) if j != i else 0 for j, pj in enumerate(ps)]
        row[i] = sum(row) % 2
        rows.append(row)
    return BitMatrix.from_rows(rows, r)


def monsky(n: Factored) -> MonskyData:
    ps = n.primes
    A = build_A(n)
    D2 = BitMatrix.diagonal([phi_map(legendre(2, p)) for p in ps])
    Dm2 = BitMatrix.diagonal([phi_map(legendre(-2, p)) for p in ps])
    M = block_assemble([[A + D2, D2], [D2, A + Dm2]])
    return MonskyData(n, A, D2, Dm2, M, 2 * len(ps) - rank(M))


def z_set(n: Factored, cap: int = Z_SET_CAP, data: MonskyData | None = None) -> list[DivisorPair]:
    """Every pair whose encoding lies in null(M); 2^s_n pairs, (1, 1) first."""
    data = data or monsky(n)
    basis = nullspace(data.M)
    if len(basis) > cap:
        raise CapExceeded(f"Selmer rank {len(basis)} above enumeration cap {cap}")
    pairs = []
    for coeffs in product((0, 1), repeat=len(basis)):
        v = [0] * (2 * len(n.primes))
        for c, b in zip(coeffs, basis):
            if c:
                v = [x ^ y for x, y in zip(v, b)]
        pairs.append(psi_inverse(v, n))
    return sorted(pairs)


def odd_local_ok(pair: tuple[int, int], n: Factored) -> bool:
    """Solvability of the homogeneous-space system at every odd p | n."""
    u, up = pair
    _check_divisor(u, n.n)
    _check_divisor(up, n.n)
    N = n.n
    for p in n.primes:
        in_u, in_up = u % p == 0, up % p == 0
        if not in_u and not in_up:
            pair_syms = (u, up)
        elif in_u and not in_up:
            pair_syms = (2 * N // u, 2 * up)
        elif not in_u and in_up:
            pair_syms = (2 * u, -2 * N // up)
        else:
            pair_syms = (N // u, -N // up)
        if any(legendre(a, p) != 1 for a in pair_syms):
            return False
    return True


def p_v_split(P: Factored | Sequence[int]) -> tuple[int, int]:
    """Solve A_P v = 1 canonically and split P as (prod p_i^v_i, rest)."""
    ps = _primes(P)
    v = solve(build_A(ps), [1] * len(ps))
    if v is None:
        raise NoSolution("the all-ones vector is not in the image of A_P")
    pv = math.prod(p for p, b in zip(ps, v) if b)
    return pv, math.prod(ps) // pv


def witness_search(pair: tuple[int, int], n: Factored, bound: int = WITNESS_BOUND,
                   backend: str | None = None) -> SolutionTuple | None:
    """Bounded search for a primitive global solution of the pair's system.

    ``None`` only means nothing turned up with x, y <= bound.
    """
    u, up = pair
    _check_divisor(u, n.n)
    _check_divisor(up, n.n)
    hit = kernels.witness_loop(u, up, n.n, bound, backend=backend)
    if hit is None:
        return None
    return SolutionTuple(DivisorPair(u, up), n.n, *hit)
