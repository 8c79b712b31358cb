"""Hot integer kernels, each in a numba loop form and a vectorised numpy form.

Public wrappers pick the backend from :mod:`noncongruent._accel` unless a
``backend`` argument overrides it. Both forms return identical results; the
test-suite and ``benchmarks/bench_kernels.py`` compare them directly.

All kernels work in int64/uint64. Callers guard magnitudes (see ``INT64_SAFE``)
and fall back to exact Python integers when a guard fails.
"""
from __future__ import annotations

import math

import numpy as np

from . import _accel
from ._accel import njit

INT64_SAFE = 1 << 62


def _resolve(backend: str | None) -> str:
    if backend is None:
        return _accel.BACKEND
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    return backend


# ---------------------------------------------------------------- helpers


@njit
def _isqrt64(v):
    r = np.int64(math.sqrt(v))
    while r * r > v:
        r -= 1
    while (r + 1) * (r + 1) <= v:
        r += 1
    return r


@njit
def _gcd64(a, b):
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


def _isqrt_vec(v: np.ndarray) -> np.ndarray:
    r = np.floor(np.sqrt(v.astype(np.float64))).astype(np.int64)
    r -= (r * r > v).astype(np.int64)
    r += ((r + 1) * (r + 1) <= v).astype(np.int64)
    return r


# ------------------------------------------------------- class numbers


@njit
def _class_number_loop(abs_d):
    parity = abs_d & 1
    amax = _isqrt64(abs_d // 3)
    h = 0
    for a in range(1, amax + 1):
        four_a = 4 * a
        b = parity
        while b <= a:
            num = b * b + abs_d
            if num % four_a == 0:
                c = num // four_a
                if c >= a and _gcd64(_gcd64(a, b), c) == 1:
                    if b == 0 or b == a or a == c:
                        h += 1
                    else:
                        h += 2
            b += 2
    return h


def _class_number_numpy(abs_d: int) -> int:
    parity = abs_d & 1
    amax = math.isqrt(abs_d // 3)
    h = 0
    for a in range(1, amax + 1):
        b = np.arange(parity, a + 1, 2, dtype=np.int64)
        num = b * b + abs_d
        hit = num % (4 * a) == 0
        if not hit.any():
            continue
        b = b[hit]
        c = num[hit] // (4 * a)
        keep = (c >= a) & (np.gcd(np.gcd(b, a), c) == 1)
        b, c = b[keep], c[keep]
        single = (b == 0) | (b == a) | (c == a)
        h += 2 * b.size - int(single.sum())
    return h


def class_number_count(abs_d: int, backend: str | None = None) -> int:
    """Number of reduced primitive forms of discriminant ``-abs_d``."""
    if abs_d <= 0 or abs_d % 4 not in (0, 3):
        raise ValueError(f"-{abs_d} is not a negative discriminant")
    if _resolve(backend) == "numba":
        return int(_class_number_loop(np.int64(abs_d)))
    return _class_number_numpy(abs_d)


# ------------------------------------------------------ Tunnell counts


@njit
def _tunnell_loop(n):
    # n odd: x odd, then (n - x^2)/2 = y^2 + 4z^2 (A) or y^2 + 16z^2 (B)
    count_a = 0
    count_b = 0
    xmax = _isqrt64(n)
    for x in range(1, xmax + 1, 2):
        m = (n - x * x) // 2
        if m % 4 >= 2:
            continue
        zmax = _isqrt64(m // 4)
        for z in range(zmax + 1):
            r = m - 4 * z * z
            y = _isqrt64(r)
            if y * y == r:
                w = 1 if y == 0 else 2
                if z:
                    w *= 2
                count_a += w
                if z % 2 == 0:
                    # y^2 + 16 (z/2)^2
                    count_b += w
    return 2 * count_a, 2 * count_b


def _tunnell_numpy(n: int) -> tuple[int, int]:
    count_a = 0
    count_b = 0
    for x in range(1, math.isqrt(n) + 1, 2):
        m = (n - x * x) // 2
        if m % 4 >= 2:
            continue
        z = np.arange(math.isqrt(m // 4) + 1, dtype=np.int64)
        r = m - 4 * z * z
        y = _isqrt_vec(r)
        hit = y * y == r
        if not hit.any():
            continue
        w = np.where(y[hit] == 0, 1, 2) * np.where(z[hit] == 0, 1, 2)
        count_a += int(w.sum())
        count_b += int(w[z[hit] % 2 == 0].sum())
    return 2 * count_a, 2 * count_b


def tunnell_counts(n: int, backend: str | None = None) -> tuple[int, int]:
    """Return ``(#{x^2+2y^2+8z^2=n}, #{x^2+2y^2+32z^2=n})`` over Z^3, n odd.

    Both counts share one loop: ``32 z^2 = 8 (2z)^2``, so B is the part of A
    with an even z-coordinate.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError("tunnell_counts needs odd positive n")
    if _resolve(backend) == "numba":
        a, b = _tunnell_loop(np.int64(n))
        return int(a), int(b)
    return _tunnell_numpy(n)


# ------------------------------------------------------- GF(2) ranks


@njit
def _rank_words_loop(mat):
    m = mat.copy()
    rows, nw = m.shape
    rank = 0
    one = np.uint64(1)
    for col in range(nw * 64):
        if rank == rows:
            break
        w = col // 64
        bit = one << np.uint64(col % 64)
        piv = -1
        for r in range(rank, rows):
            if m[r, w] & bit:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for k in range(nw):
                tmp = m[piv, k]
                m[piv, k] = m[rank, k]
                m[rank, k] = tmp
        for r in range(rows):
            if r != rank and (m[r, w] & bit):
                for k in range(nw):
                    m[r, k] ^= m[rank, k]
        rank += 1
    return rank


@njit
def _rank_batch_loop(mats):
    out = np.empty(mats.shape[0], dtype=np.int64)
    for i in range(mats.shape[0]):
        out[i] = _rank_words_loop(mats[i])
    return out


def _rank_words_numpy(mat: np.ndarray) -> int:
    m = mat.copy()
    rows, nw = m.shape
    rank = 0
    for col in range(nw * 64):
        if rank == rows:
            break
        w, bit = divmod(col, 64)
        bit = np.uint64(1) << np.uint64(bit)
        below = (m[rank:, w] & bit) != 0
        if not below.any():
            continue
        piv = rank + int(np.argmax(below))
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        hit = (m[:, w] & bit) != 0
        hit[rank] = False
        m[hit] ^= m[rank]
        rank += 1
    return rank


def rank_words(mat: np.ndarray, backend: str | None = None) -> int:
    """Rank over F2 of a (rows, words) uint64 bit-packed matrix."""
    if mat.shape[0] == 0 or mat.shape[1] == 0:
        return 0
    if _resolve(backend) == "numba":
        return int(_rank_words_loop(mat))
    return _rank_words_numpy(mat)


def rank_batch(mats: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Ranks of a stack of bit-packed matrices, shape (batch, rows, words)."""
    if _resolve(backend) == "numba":
        return _rank_batch_loop(mats)
    return np.array([_rank_words_numpy(m) for m in mats], dtype=np.int64)


# ----------------------------------------------------- modular powers


@njit
def _powmod_loop(bases, e, m):
    out = np.empty(bases.shape[0], dtype=np.int64)
    for i in range(bases.shape[0]):
        b = bases[i] % m
        r = np.int64(1)
        k = e
        while k:
            if k & 1:
                r = r * b % m
            b = b * b % m
            k >>= 1
        out[i] = r
    return out


def _powmod_numpy(bases: np.ndarray, e: int, m: int) -> np.ndarray:
    b = bases % m
    r = np.ones_like(b)
    while e:
        if e & 1:
            r = r * b % m
        b = b * b % m
        e >>= 1
    return r


def powmod_vec(bases, e: int, m: int, backend: str | None = None) -> np.ndarray:
    """Elementwise ``bases**e mod m`` for a fixed exponent and modulus < 2^31."""
    bases = np.asarray(bases, dtype=np.int64)
    if m >= 1 << 31:
        return np.array([pow(int(b), e, m) for b in bases], dtype=np.int64)
    if _resolve(backend) == "numba":
        return _powmod_loop(bases, np.int64(e), np.int64(m))
    return _powmod_numpy(bases, e, m)


# ------------------------------------------- ternary x^2 - 4dy^2 - Dz^2


@njit
def _ternary_loop(four_d, abs_d, zcap, ycap, want, out):
    found = 0
    for z in range(1, zcap + 1):
        t = abs_d * z * z
        y = _isqrt64(t // four_d)
        if y < 1:
            y = 1
        while y <= ycap:
            v = four_d * y * y - t
            if v > 0:
                x = _isqrt64(v)
                if x * x == v and _gcd64(_gcd64(x, y), z) == 1:
                    out[found, 0] = x
                    out[found, 1] = y
                    out[found, 2] = z
                    found += 1
                    if found == want:
                        return found
            y += 1
    return found


def _ternary_numpy(four_d, abs_d, zcap, ycap, want):
    rows = []
    for z in range(1, zcap + 1):
        t = abs_d * z * z
        y0 = max(1, math.isqrt(t // four_d))
        if y0 > ycap:
            continue
        y = np.arange(y0, ycap + 1, dtype=np.int64)
        v = four_d * y * y - t
        pos = v > 0
        y, v = y[pos], v[pos]
        x = _isqrt_vec(v)
        hit = (x * x == v) & (np.gcd(np.gcd(x, y), z) == 1)
        for xi, yi in zip(x[hit], y[hit]):
            rows.append((int(xi), int(yi), z))
            if len(rows) == want:
                return rows
    return rows


def _ternary_python(four_d, abs_d, zcap, ycap, want):
    rows = []
    for z in range(1, zcap + 1):
        t = abs_d * z * z
        for y in range(max(1, math.isqrt(t // four_d)), ycap + 1):
            v = four_d * y * y - t
            if v <= 0:
                continue
            x = math.isqrt(v)
            if x * x == v and math.gcd(x, y, z) == 1:
                rows.append((x, y, z))
                if len(rows) == want:
                    return rows
    return rows


def ternary_search(d: int, abs_d: int, zcap: int, ycap: int, want: int = 1,
                   backend: str | None = None) -> list[tuple[int, int, int]]:
    """First ``want`` primitive positive solutions of x^2 - 4dy^2 + |D|z^2 = 0,
    in lexicographic (z, y) order with z <= zcap and y <= ycap."""
    four_d = 4 * d
    if four_d * ycap * ycap >= INT64_SAFE or abs_d * zcap * zcap >= INT64_SAFE:
        return _ternary_python(four_d, abs_d, zcap, ycap, want)
    if _resolve(backend) == "numba":
        out = np.zeros((want, 3), dtype=np.int64)
        k = _ternary_loop(np.int64(four_d), np.int64(abs_d), np.int64(zcap),
                          np.int64(ycap), np.int64(want), out)
        return [tuple(int(v) for v in row) for row in out[:k]]
    return _ternary_numpy(four_d, abs_d, zcap, ycap, want)


# ------------------------------------ homogeneous-space witness search


@njit
def _witness_loop(u, up, n, bound):
    uu = u * up
    for x in range(bound + 1):
        s = uu * x * x
        for y in range(bound + 1):
            if x == 0 and y == 0:
                continue
            t = n * y * y
            rhs = s - t
            if rhs < 0:
                break
            lhs = s + t
            if lhs % u:
                continue
            z2 = lhs // u
            z = _isqrt64(z2)
            if z * z != z2:
                continue
            if rhs % up:
                continue
            w2 = rhs // up
            w = _isqrt64(w2)
            if w * w != w2:
                continue
            if _gcd64(_gcd64(x, y), _gcd64(z, w)) == 1:
                return x, y, z, w
    return -1, -1, -1, -1


def _witness_python(u, up, n, bound):
    uu = u * up
    for x in range(bound + 1):
        s = uu * x * x
        for y in range(bound + 1):
            if x == 0 and y == 0:
                continue
            t = n * y * y
            rhs = s - t
            if rhs < 0:
                break
            lhs = s + t
            if lhs % u:
                continue
            z = math.isqrt(lhs // u)
            if z * z * u != lhs:
                continue
            if rhs % up:
                continue
            w = math.isqrt(rhs // up)
            if w * w * up != rhs:
                continue
            if math.gcd(x, y, z, w) == 1:
                return x, y, z, w
    return None


def witness_loop(u: int, up: int, n: int, bound: int,
                 backend: str | None = None) -> tuple[int, int, int, int] | None:
    """First primitive non-negative (x, y, z, w) with uu'x^2 + ny^2 = uz^2 and
    uu'x^2 - ny^2 = u'w^2, scanning x then y up to ``bound``."""
    big = (u * up + n) * bound * bound
    if big >= INT64_SAFE or _resolve(backend) == "numpy":
        # the search exits early on the first hit, so the numpy path reuses
        # exact Python integers rather than materialising bound^2 candidates
        return _witness_python(u, up, n, bound)
    x, y, z, w = _witness_loop(np.int64(u), np.int64(up), np.int64(n), np.int64(bound))
    if x < 0:
        return None
    return int(x), int(y), int(z), int(w)
