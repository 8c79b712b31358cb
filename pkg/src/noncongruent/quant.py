"""Counting heuristics for the q = 7 mod 8 family and their empirical check."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .arith import legendre, phi_map
from .errors import DomainError
from .scan import count_family, primes_in_class

DEFAULT_SEED = 20240101
MC_PRIME_BOUND = 100_000


def p_rank_prob(t: int) -> Fraction:
    """Probability that a random symmetric zero-row-sum t x t matrix over F2
    has rank t - 1: the product of (1 - 2^-i) over odd i <= t - 1."""
    if t < 1:
        raise DomainError("t must be >= 1")
    out = Fraction(1)
    for i in range(1, t, 2):
        out *= 1 - Fraction(1, 2 ** i)
    return out


def pi_k_asymptotic(x: float, k: int) -> float:
    """x (log log x)^(k-1) / ((k-1)! log x), the leading term for the count
    of k-almost-primes with distinct factors up to x."""
    if k < 1:
        raise DomainError("k must be >= 1")
    if x < 16:
        raise DomainError(f"x = {x} is below 16")
    lx = math.log(x)
    return x * math.log(lx) ** (k - 1) / (math.factorial(k - 1) * lx)


def predicted_count(t: int, x: float) -> float:
    return pi_k_asymptotic(x, t + 1) * float(p_rank_prob(t)) / 2 ** (2 * t + 3)


def monte_carlo_rank_frequency(t: int, samples: int = 2000, seed: int = DEFAULT_SEED,
                               prime_bound: int = MC_PRIME_BOUND,
                               backend: str | None = None) -> float:
    """Fraction of random P (t distinct primes = 5 mod 8 below ``prime_bound``)
    with rank(A_P) = t - 1."""
    if t < 1:
        raise DomainError("t must be >= 1")
    pool = [int(p) for p in primes_in_class(prime_bound, 5)]
    rng = random.Random(seed)
    mats = np.zeros((samples, t, 1), dtype=np.uint64)
    for s in range(samples):
        ps = rng.sample(pool, t)
        for i, pi in enumerate(ps):
            word = 0
            diag = 0
            for j, pj in enumerate(ps):
                if j != i and phi_map(legendre(pj, pi)):
                    word |= 1 << j
                    diag ^= 1
            mats[s, i, 0] = word | (diag << i)
    ranks = kernels.rank_batch(mats, backend)
    return float(np.mean(ranks == t - 1))


@dataclass(frozen=True)
class DensityReport:
    t: int
    x: int
    empirical: int
    predicted: float
    ratio: float
    seed: int
    members: int
    mc_rank_frequency: float


def empirical_scan(t: int, x: int, jobs: int = 1, seed: int = DEFAULT_SEED,
                   mc_samples: int = 2000, backend: str | None = None) -> DensityReport:
    """Count members of the q = 7 mod 8 family up to x that meet both
    hypotheses and have (q/P)_4 = +1, i.e. 8-rank 0.

    The Monte-Carlo rank frequency uses ``seed`` and is reported alongside.
    """
    if t % 2 == 0:
        raise DomainError("the q = 7 mod 8 family needs odd t")
    counts = count_family("5557", t, int(x), jobs=jobs, backend=backend)
    predicted = predicted_count(t, x)
    mc = monte_carlo_rank_frequency(t, mc_samples, seed, backend=backend) if mc_samples else float("nan")
    return DensityReport(t, int(x), counts.quartic_plus, predicted,
                         counts.quartic_plus / predicted, seed, counts.members, mc)
