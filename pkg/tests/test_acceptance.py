"""Acceptance criteria 1-13, one test each.

Every test records a PASS/FAIL line in RESULTS; conftest prints them in the
terminal summary, and ``python tests/test_acceptance.py`` prints them directly.
Set NONCONGRUENT_SKIP_BIG_TUNNELL=1 to skip the 2.8e9 Tunnell row.
"""
from __future__ import annotations

import math
import os
import random
import sys
import time
from functools import lru_cache

import numpy as np
import pytest

from noncongruent.arith import Factored, factor_squarefree, quartic, v2
from noncongruent.classgroup import (
    class_number, discriminant, eight_rank_jung_yue, eight_rank_waterhouse, redei,
)
from noncongruent.descent import monsky, odd_local_ok, p_v_split, z_set
from noncongruent.fixtures import load_rows
from noncongruent.gf2 import BitMatrix, block_assemble, inverse, rank, schur_rank
from noncongruent.quant import empirical_scan, monte_carlo_rank_frequency, p_rank_prob, predicted_count
from noncongruent.scan import family_members
from noncongruent.theorems import (
    Family, Method, Verdict, certify, check_hypotheses, detect_family, tunnell_check,
)

RESULTS: dict[int, tuple[bool, str]] = {}
ROWS = load_rows()
SEED = 20240101
FAMILY_BOUND = 10**6


def record(k: int, ok: bool, detail: str) -> None:
    RESULTS[k] = (ok, detail)
    print(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def rows_of(table: str):
    return [r for r in ROWS if r.table_id == table]


@lru_cache(maxsize=None)
def hyp_members(family: str) -> tuple[tuple[Factored, tuple[int, ...], int], ...]:
    """Every member <= 10^6 (all admissible t) meeting hypotheses (a) and (b)."""
    ts = (1, 3, 5) if family == "5557" else (2, 4)
    out = []
    for t in ts:
        for P, q in family_members(family, t, FAMILY_BOUND):
            f = Factored.from_primes(P + (q,))
            if all(check_hypotheses(detect_family(f))):
                out.append((f, P, q))
    return tuple(out)


# --------------------------------------------------------------------- 1


def test_criterion_01_golden_class_numbers():
    t0 = time.perf_counter()
    bad = []
    for r in ROWS:
        if class_number(r.n).h != r.expected_h_n:
            bad.append(r.n)
        if r.expected_h_P is not None and class_number(math.prod(r.P_primes)).h != r.expected_h_P:
            bad.append(("P", r.n))
    # Remark values, stated separately from the rows
    extra = {42090427: 704, 70115: 88, 185: 16}
    bad += [m for m, h in extra.items() if class_number(m).h != h]
    assert discriminant(185).D == -740
    dt = time.perf_counter() - t0
    record(1, not bad and dt <= 120,
           f"{len(ROWS)} rows + 3 remark values in {dt:.1f}s; mismatches: {bad or 'none'}")


# --------------------------------------------------------------------- 2


def test_criterion_02_divisibility_rows():
    bad = []
    for r in rows_of("1"):
        c = certify(r.n)
        if not (c.hyp_rank_ok and c.hyp_qr_ok and c.h_n % 32 == 0):
            bad.append(("table 1", r.n, c.h_n))
    for r in rows_of("2"):
        c = certify(r.n)
        if not (c.hyp_rank_ok and c.hyp_qr_ok and c.h_n % 32 and c.verdict is Verdict.NON_CONGRUENT):
            bad.append(("table 2", r.n, c.h_n))
    record(2, not bad, f"19 rows checked; failing rows (table, n, h): {bad or 'none'}")


# --------------------------------------------------------------------- 3


def test_criterion_03_congruence_rows():
    bad = []
    for r in rows_of("3"):
        c = certify(r.n)
        if (c.h_n - c.h_P - 8) % 16:
            bad.append(r.n)
    for r in rows_of("4"):
        c = certify(r.n)
        if (c.h_n - c.h_P - 8) % 16 == 0 or c.verdict is not Verdict.CONDITIONAL:
            bad.append(r.n)
    record(3, not bad, f"21 rows checked; mismatches: {bad or 'none'}")


# --------------------------------------------------------------------- 4


def test_criterion_04_selmer_kernel_identity():
    t0 = time.perf_counter()
    rng = random.Random(SEED)
    seen, bad = set(), []
    while len(seen) < 250:
        n = rng.randrange(3, 10**5, 2)
        if n in seen:
            continue
        try:
            f = factor_squarefree(n)
        except ValueError:
            continue
        seen.add(n)
        md = monsky(f)
        Z = z_set(f, data=md)
        if len(Z) != 2 ** (2 * f.r - rank(md.M)) or not all(odd_local_ok(p, f) for p in Z):
            bad.append(n)
    dt = time.perf_counter() - t0
    record(4, not bad and dt <= 30, f"{len(seen)} random n <= 1e5 in {dt:.1f}s; failures: {bad or 'none'}")


# --------------------------------------------------------------------- 5


def test_criterion_05_z_sets():
    bad = []
    counts = {}
    for fam in ("5557", "553"):
        mem = hyp_members(fam)
        counts[fam] = len(mem)
        for f, P_primes, q in mem:
            md = monsky(f)
            P = math.prod(P_primes)
            if fam == "5557":
                want = {(1, 1), (P, P), (q, 1), (f.n, P)}
            else:
                pv, pvp = p_v_split(P_primes)
                want = {(1, 1), (P, P), (pv, pvp), (pvp, pv)}
            if md.selmer_rank != 2 or set(z_set(f, data=md)) != want:
                bad.append(f.n)
    ok = not bad and min(counts.values()) >= 100
    record(5, ok, f"members checked per family {counts}; mismatches: {bad[:10] or 'none'}")


# --------------------------------------------------------------------- 6


def _random_laplacian(rng: np.random.Generator, r: int) -> np.ndarray:
    while True:
        upper = np.triu(rng.integers(0, 2, (r, r)), 1)
        A = upper + upper.T
        A[np.diag_indices(r)] = A.sum(axis=1) % 2
        if rank(BitMatrix.from_array(A)) == r - 1:
            return A


def test_criterion_06_square_rank():
    rng = np.random.default_rng(SEED)
    bad = []
    for k in range(500):
        r = 2 + k % 15
        A = _random_laplacian(rng, r)
        A2 = (A @ A) % 2
        want = r - 1 if r % 2 else r - 2
        if rank(BitMatrix.from_array(A2)) != want:
            bad.append((r, A.tolist()))
    record(6, not bad, f"500 matrices, sizes 2-16; failures: {len(bad)}")


# --------------------------------------------------------------------- 7


def test_criterion_07_schur_rank():
    rng = np.random.default_rng(SEED + 7)
    bad = 0
    for _ in range(500):
        k, c, d = (int(v) for v in rng.integers(1, 9, 3))
        while True:
            C1 = BitMatrix.from_array(rng.integers(0, 2, (k, k)))
            if rank(C1) == k:
                break
        C2 = BitMatrix.from_array(rng.integers(0, 2, (k, c)))
        C3 = BitMatrix.from_array(rng.integers(0, 2, (d, k)))
        C4 = BitMatrix.from_array(rng.integers(0, 2, (d, c)))
        inverse(C1)
        bad += schur_rank(C1, C2, C3, C4) != rank(block_assemble([[C1, C2], [C3, C4]]))
    record(7, bad == 0, f"500 block instances; disagreements: {bad}")


# --------------------------------------------------------------------- 8


def test_criterion_08_four_rank():
    bad, total = [], 0
    for fam in ("5557", "553"):
        for f, _, _ in hyp_members(fam):
            total += 1
            rd = redei(f)
            if len(rd.prime_list) - rank(rd.R) != 2 or rd.four_rank != 1:
                bad.append(f.n)
    record(8, not bad, f"{total} members; Redei nullity != 2 for: {bad[:10] or 'none'}")


# --------------------------------------------------------------------- 9


def test_criterion_09_eight_rank_bridge():
    bad = []
    n5557 = n553 = nP = 0
    for f, P, q in hyp_members("5557"):
        t = len(P)
        n5557 += 1
        if (quartic(q, P) == -1) != (class_number(f).v2 >= t + 2):
            bad.append(("5557", f.n))
    Ps = set()
    for f, P, q in hyp_members("553"):
        t = len(P)
        n553 += 1
        if (quartic(q, P) == 1) != (class_number(f).v2 >= t + 2):
            bad.append(("553", f.n))
        Ps.add(P)
    for P in sorted(Ps):
        nP += 1
        hP = class_number(discriminant(Factored.from_primes(P)))
        assert hP.disc.D == -4 * math.prod(P)
        if (eight_rank_jung_yue(P) == 1) != (hP.v2 >= len(P) + 2):
            bad.append(("P", math.prod(P)))
    ok = not bad and n5557 >= 100 and n553 >= 100
    record(9, ok, f"F5557 {n5557}, F553 {n553}, distinct P {nP}; mismatches: {bad[:10] or 'none'}")


# -------------------------------------------------------------------- 10


def test_criterion_10_waterhouse():
    t0 = time.perf_counter()
    picks = []
    for fam in ("5557", "553"):
        mem = hyp_members(fam)
        step = max(1, len(mem) // 30)
        picks += [(fam, m) for m in mem[::step][:30]]
    bad, checked = [], 0
    for fam, (f, P, q) in picks:
        rd = redei(f)
        if rd.disc.abs > 10**7:
            continue
        checked += 1
        fast = certify(f, Method.QUARTIC).eight_rank_n
        vals = {eight_rank_waterhouse(rd, witness_index=i) for i in range(3)}
        if vals != {fast}:
            bad.append((f.n, sorted(vals), fast))
    dt = time.perf_counter() - t0
    ok = not bad and checked >= 50 and dt <= 60
    record(10, ok, f"{checked} members, 3 witnesses each, {dt:.1f}s; mismatches: {bad or 'none'}")


# -------------------------------------------------------------------- 11


def test_criterion_11_tunnell():
    skip_big = os.environ.get("NONCONGRUENT_SKIP_BIG_TUNNELL") == "1"
    bad, done, slow = [], 0, 0.0
    for r in ROWS:
        if r.table_id not in ("1", "2", "3", "4"):
            continue
        if skip_big and r.n > 10**9:
            continue
        t0 = time.perf_counter()
        res = tunnell_check(r.n)
        dt = time.perf_counter() - t0
        if r.n > 10**9:
            slow = dt
        done += 1
        if (res.A == 2 * res.B) != (r.table_id in ("1", "3")):
            bad.append(r.n)
    ok = not bad and done >= 39 and slow <= 60
    record(11, ok, f"{done} rows (largest took {slow:.1f}s); mismatches: {bad or 'none'}")


# -------------------------------------------------------------------- 12


def test_criterion_12_density():
    t0 = time.perf_counter()
    rep = empirical_scan(1, 5 * 10**6, mc_samples=0)
    dt = time.perf_counter() - t0
    assert rep.predicted == predicted_count(1, 5 * 10**6)
    ok = 0.6 <= rep.ratio <= 1.4 and dt <= 300
    record(12, ok, f"empirical {rep.empirical}, predicted {rep.predicted:.1f}, "
                   f"ratio {rep.ratio:.3f}, {dt:.1f}s")


# -------------------------------------------------------------------- 13


def test_criterion_13_monte_carlo():
    parts, ok = [], True
    for t in (2, 3, 4):
        freq = monte_carlo_rank_frequency(t, 2000, seed=SEED)
        exact = float(p_rank_prob(t))
        ok &= abs(freq - exact) <= 0.05
        parts.append(f"t={t}: {freq:.4f} vs {exact:.4f}")
    record(13, ok, "; ".join(parts) + f" (seed {SEED})")


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for fn in tests:
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
