"""Integer primitives: primality, square-free factorisation, residue symbols.

Signs are plain ints in {+1, -1}; :func:`phi_map` sends them to F2 bits.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

from .errors import (
    BadModulus,
    DivisibleInput,
    EvenInput,
    FactorizationTimeout,
    NotCoprime,
    NotQuadraticResidue,
    NotSquarefree,
    ZeroInput,
)

Sign = Literal[1, -1]

MAX_INPUT = 1 << 63
TRIAL_BOUND = 1000
# strong-pseudoprime bases sufficient for every n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = [p for p in range(3, TRIAL_BOUND) if all(p % d for d in range(2, math.isqrt(p) + 1))]


@dataclass(frozen=True)
class Factored:
    """Odd square-free n with its ascending prime factors."""

    n: int
    primes: tuple[int, ...]

    def __post_init__(self):
        if math.prod(self.primes) != self.n:
            raise ValueError(f"primes {self.primes} do not multiply to {self.n}")
        if any(b <= a for a, b in zip(self.primes, self.primes[1:])):
            raise ValueError("primes must be strictly increasing")
        if any(p == 2 or not is_prime(p) for p in self.primes):
            raise ValueError(f"{self.primes} contains a non-odd-prime entry")

    @classmethod
    def from_primes(cls, primes: Iterable[int]) -> "Factored":
        ps = tuple(sorted(primes))
        if len(set(ps)) != len(ps):
            raise NotSquarefree(f"repeated prime in {ps}")
        return cls(math.prod(ps), ps)

    @property
    def residues8(self) -> tuple[int, ...]:
        return tuple(p % 8 for p in self.primes)

    @property
    def r(self) -> int:
        return len(self.primes)

    def __len__(self) -> int:
        return len(self.primes)


def is_prime(m: int) -> bool:
    """Deterministic Miller-Rabin for every m below 2^64 (and well beyond)."""
    if m < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if m % p == 0:
            return m == p
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, m)
        if x == 1 or x == m - 1:
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def _rho(m: int, rng: random.Random, max_steps: int) -> int | None:
    """Brent's variant of Pollard rho; returns a proper factor or None."""
    y, c = rng.randrange(1, m), rng.randrange(1, m)
    batch, g, r, q = 128, 1, 1, 1
    steps = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % m
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(batch, r - k)):
                y = (y * y + c) % m
                q = q * abs(x - y) % m
            g = math.gcd(q, m)
            k += batch
        r *= 2
        steps += r
        if steps > max_steps:
            return None
    if g == m:
        while True:
            ys = (ys * ys + c) % m
            g = math.gcd(abs(x - ys), m)
            if g > 1:
                break
    return g if g != m else None


def _split(m: int, rng: random.Random, budget: int) -> list[int]:
    if is_prime(m):
        return [m]
    r = math.isqrt(m)
    if r * r == m:
        return _split(r, rng, budget) * 2
    for _ in range(64):
        g = _rho(m, rng, budget)
        if g is not None:
            return _split(g, rng, budget) + _split(m // g, rng, budget)
    raise FactorizationTimeout(f"could not split {m} within the work budget")


def factor_squarefree(m: int, budget: int = 1 << 22, seed: int = 0) -> Factored:
    """Factor an odd square-free m >= 3.

    Trial division by primes below 1000, then seeded Brent rho; every factor
    is certified prime with :func:`is_prime`.
    """
    m = int(m)
    if m % 2 == 0:
        raise EvenInput(f"{m} is even")
    if m < 3 or m >= MAX_INPUT:
        raise ValueError(f"{m} outside [3, 2^63)")
    primes: list[int] = []
    rest = m
    for p in _SMALL_PRIMES:
        if p * p > rest:
            break
        if rest % p == 0:
            rest //= p
            if rest % p == 0:
                raise NotSquarefree(f"{p}^2 divides {m}")
            primes.append(p)
    if rest > 1:
        primes.extend(_split(rest, random.Random(seed), budget))
    primes.sort()
    if len(set(primes)) != len(primes):
        raise NotSquarefree(f"{m} has a repeated prime factor")
    return Factored(m, tuple(primes))


def legendre(a: int, p: int) -> Sign:
    """Legendre symbol (a/p) by Euler's criterion."""
    a %= p
    if a == 0:
        raise DivisibleInput(f"{p} divides the argument")
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def jacobi(a: int, m: int) -> Sign:
    """Jacobi symbol (a/m) for odd m >= 1 via the reciprocity loop."""
    if m < 1 or m % 2 == 0:
        raise ValueError("modulus must be odd and positive")
    a %= m
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    if m != 1:
        raise NotCoprime("arguments share a factor")
    return result


def _prime_list(L: int | Sequence[int] | Factored) -> Sequence[int]:
    if isinstance(L, Factored):
        return L.primes
    if isinstance(L, int):
        return () if L == 1 else factor_squarefree(L).primes
    return tuple(L)


def quartic(a: int, L: int | Sequence[int] | Factored) -> Sign:
    """Quartic residue symbol (a/L)_4, multiplicative over the primes of L.

    Each prime must be 1 mod 4 and ``a`` a quadratic residue modulo it.
    """
    result = 1
    for l in _prime_list(L):
        if l % 4 != 1:
            raise BadModulus(f"{l} is not 1 mod 4")
        if legendre(a, l) != 1:
            raise NotQuadraticResidue(f"{a} is not a square mod {l}")
        if pow(a % l, (l - 1) // 4, l) != 1:
            result = -result
    return result


def _eps(x: int) -> int:
    return ((x - 1) // 2) % 2


def _omega(x: int) -> int:
    return ((x * x - 1) // 8) % 2


def _split_off(a: int, p: int) -> tuple[int, int]:
    k = 0
    while a % p == 0:
        a //= p
        k += 1
    return k, a


def hilbert(a: int, b: int, p: int) -> Sign:
    """Hilbert symbol (a, b)_p for nonzero integers and a prime p (2 allowed).

    epsilon and omega are applied to negative odd units too, reduced mod 2.
    """
    if a == 0 or b == 0:
        raise ZeroInput("Hilbert symbol of zero")
    alpha, u = _split_off(a, p)
    beta, v = _split_off(b, p)
    if p == 2:
        e = alpha * _omega(v) + beta * _omega(u) + _eps(u) * _eps(v)
        return -1 if e % 2 else 1
    s = -1 if (alpha * beta * _eps(p)) % 2 else 1
    if beta % 2:
        s *= legendre(u, p)
    if alpha % 2:
        s *= legendre(v, p)
    return s


def phi_map(s: int) -> int:
    """+1 -> 0, -1 -> 1."""
    if s == 1:
        return 0
    if s == -1:
        return 1
    raise ValueError(f"{s} is not a sign")


def v2(h: int) -> int:
    """2-adic valuation of a positive integer."""
    return (h & -h).bit_length() - 1
