"""Enumeration of family members n = p_1 ... p_t q <= x and range scans.

Members come from nested loops over sieved primes in the right residue
classes. Work is split across processes by the index of the smallest prime;
results are merged in ascending n so output does not depend on ``jobs``.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import kernels
from .arith import Factored
from .descent import build_A
from .errors import BudgetExceeded, NonCongruentError
from .gf2 import rank
from .theorems import Certificate, certify

SCAN_BUDGET = 2_000_000_000
Q_RESIDUE = {"5557": 7, "553": 3}


@lru_cache(maxsize=8)
def primes_upto(limit: int) -> np.ndarray:
    """Sieve of Eratosthenes returning int64 primes <= limit."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if sieve[p]:
            sieve[p * p::2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def primes_in_class(limit: int, residue: int, modulus: int = 8) -> np.ndarray:
    ps = primes_upto(limit)
    return ps[ps % modulus == residue]


def _check_family(family: str, t: int) -> int:
    if family not in Q_RESIDUE:
        raise ValueError(f"unknown family {family!r}")
    if t < 1 or (family == "5557") != (t % 2 == 1):
        raise ValueError(f"t = {t} has the wrong parity for family {family}")
    return Q_RESIDUE[family]


def _p_tuples(fives: np.ndarray, t: int, bound: int, start: int = 0,
              prefix: tuple[int, ...] = (), prod: int = 1) -> Iterator[tuple[int, ...]]:
    """Increasing t-tuples from ``fives`` whose product stays <= bound."""
    if t == 0:
        yield prefix
        return
    for i in range(start, len(fives)):
        p = int(fives[i])
        # the remaining t-1 primes are all larger than p
        if prod * p ** t > bound:
            break
        yield from _p_tuples(fives, t - 1, bound, i + 1, prefix + (p,), prod * p)


def _setup(family: str, t: int, max_n: int):
    if max_n > SCAN_BUDGET:
        raise BudgetExceeded(f"max_n = {max_n} above the scan budget {SCAN_BUDGET}")
    qres = _check_family(family, t)
    qmin = 3 if qres == 3 else 7
    fives = primes_in_class(max(max_n // qmin, 5), 5)
    qs = primes_in_class(max(max_n // 5, 7), qres)
    return fives, qs


def _outer_chunks(fives: np.ndarray, t: int, max_n: int, qmin: int, jobs: int) -> list[list[int]]:
    top = [i for i in range(len(fives)) if int(fives[i]) ** t * qmin <= max_n]
    return [top[k::jobs] for k in range(jobs)]


def family_members(family: str, t: int, max_n: int) -> list[tuple[tuple[int, ...], int]]:
    """All (P primes, q) with n = P q <= max_n in the family, sorted by n."""
    fives, qs = _setup(family, t, max_n)
    out = []
    for P in _p_tuples(fives, t, max_n // (3 if family == "553" else 7)):
        Pn = math.prod(P)
        for q in qs[qs <= max_n // Pn]:
            out.append((P, int(q)))
    out.sort(key=lambda m: math.prod(m[0]) * m[1])
    return out


# ------------------------------------------------------------ counting


@dataclass(frozen=True)
class ScanCounts:
    members: int
    rank_ok: int
    hyp_ok: int
    quartic_plus: int


def _rank_ok(P: tuple[int, ...]) -> bool:
    return rank(build_A(P)) == len(P) - 1


def _count_chunk(args) -> tuple[int, int, int, int]:
    family, t, max_n, idx, backend = args
    fives, qs = _setup(family, t, max_n)
    qmin = 3 if family == "553" else 7
    members = rank_ok = hyp_ok = plus = 0
    for i in idx:
        p0 = int(fives[i])
        for rest in _p_tuples(fives, t - 1, max_n // (qmin * p0), i + 1):
            P = (p0,) + rest
            Pn = math.prod(P)
            cand = qs[qs <= max_n // Pn]
            members += cand.size
            if cand.size == 0 or not _rank_ok(P):
                continue
            rank_ok += cand.size
            good = np.ones(cand.size, dtype=bool)
            sign = np.ones(cand.size, dtype=np.int64)
            for p in P:
                # (p/q) = (q/p) since p = 1 mod 4
                good &= kernels.powmod_vec(cand, (p - 1) // 2, p, backend) == 1
                sign *= np.where(kernels.powmod_vec(cand, (p - 1) // 4, p, backend) == 1, 1, -1)
            hyp_ok += int(good.sum())
            plus += int((good & (sign == 1)).sum())
    return members, rank_ok, hyp_ok, plus


def count_family(family: str, t: int, max_n: int, jobs: int = 1,
                 backend: str | None = None) -> ScanCounts:
    """Counts of members, rank-condition members, full-hypothesis members and
    full-hypothesis members with (q/P)_4 = +1."""
    fives, _ = _setup(family, t, max_n)
    qmin = 3 if family == "553" else 7
    chunks = _outer_chunks(fives, t, max_n, qmin, max(1, jobs))
    tasks = [(family, t, max_n, c, backend) for c in chunks]
    if jobs <= 1:
        parts = [_count_chunk(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_count_chunk, tasks))
    return ScanCounts(*(sum(col) for col in zip(*parts)))


# ------------------------------------------------------- certificate rows


@dataclass(frozen=True)
class ScanRow:
    n: int
    P_primes: tuple[int, ...]
    q: int
    certificate: Certificate | None
    skipped: str | None = None


def _certify_chunk(args) -> list[ScanRow]:
    members, budget_h, backend = args
    rows = []
    for P, q in members:
        f = Factored.from_primes(P + (q,))
        try:
            cert = certify(f, budget_h=budget_h, backend=backend)
        except (BudgetExceeded, NonCongruentError) as exc:
            rows.append(ScanRow(f.n, P, q, None, f"{type(exc).__name__}: {exc}"))
            continue
        rows.append(ScanRow(f.n, P, q, cert))
    return rows


def scan_certificates(family: str, t: int, max_n: int, jobs: int = 1,
                      budget_h: int | None = None, backend: str | None = None) -> list[ScanRow]:
    """Certificate for every family member <= max_n, sorted by n."""
    from .classgroup import H_BUDGET

    members = family_members(family, t, max_n)
    budget_h = H_BUDGET if budget_h is None else budget_h
    jobs = max(1, jobs)
    tasks = [(members[k::jobs], budget_h, backend) for k in range(jobs)]
    if jobs == 1:
        parts = [_certify_chunk(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_certify_chunk, tasks))
    return sorted((r for part in parts for r in part), key=lambda r: r.n)
