"""Modular arithmetic kernels: seeded primes, mod-p rank profiles, resultants.

Primes are drawn deterministically from a PRNG seed in the half-open range
(2^31, isqrt(2^63)], so any product of two residues fits in a signed 64-bit
integer.  The seed comes from the AKFORGE_PRIME_SEED environment variable
when set, else from DEFAULT_PRIME_SEED, which makes every modular result
reproducible byte for byte.

The two hot kernels, dense row elimination and batched univariate
resultants, are compiled with numba when available.  AKFORGE_BACKEND=numpy
forces the pure-numpy fallbacks; AKFORGE_BACKEND=numba insists on the
compiled path.  Both backends produce identical output.
"""

from __future__ import annotations

import os
import random

import numpy as np

from .errors import InvalidInput

try:
    from numba import njit

    _HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without the extra
    _HAS_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap


DEFAULT_PRIME_SEED = 1729

_PRIME_LO = 2**31
_PRIME_HI = 3037000499  # isqrt(2^63): keeps (p-1)^2 inside int64


def _is_prime(n: int) -> bool:
    # Miller-Rabin with bases 2, 3, 5, 7 is deterministic below 3215031751,
    # which covers the whole candidate range.
    for q in (2, 3, 5, 7):
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_seed() -> int:
    raw = os.environ.get("AKFORGE_PRIME_SEED")
    if raw is None:
        return DEFAULT_PRIME_SEED
    try:
        return int(raw.strip())
    except ValueError:
        raise InvalidInput(
            f"AKFORGE_PRIME_SEED must be a decimal integer, got {raw!r}"
        ) from None


def primes_from_seed(count: int = 2, seed: int | None = None) -> tuple[int, ...]:
    """Deterministic distinct primes in (2^31, isqrt(2^63)]."""
    if seed is None:
        seed = prime_seed()
    rng = random.Random(seed)
    found: list[int] = []
    while len(found) < count:
        c = rng.randrange(_PRIME_LO + 1, _PRIME_HI) | 1
        while c <= _PRIME_HI and not _is_prime(c):
            c += 2
        if c <= _PRIME_HI and c not in found:
            found.append(c)
    return tuple(found)


def use_numba() -> bool:
    env = os.environ.get("AKFORGE_BACKEND", "").strip().lower()
    if env == "numba":
        if not _HAS_NUMBA:
            raise InvalidInput("AKFORGE_BACKEND=numba but numba is not importable")
        return True
    if env == "numpy":
        return False
    if env:
        raise InvalidInput("AKFORGE_BACKEND must be 'numba' or 'numpy'")
    return _HAS_NUMBA


def backend_name() -> str:
    return "numba" if use_numba() else "numpy"


# -- rank profile ----------------------------------------------------------


@njit(cache=True)
def _powmod_nb(b, e, m):  # pragma: no cover - compiled
    b %= m
    r = 1
    while e:
        if e & 1:
            r = r * b % m
        b = b * b % m
        e >>= 1
    return r


@njit(cache=True)
def _rank_profile_nb(a, p):  # pragma: no cover - compiled
    nrows, ncols = a.shape
    pivots = np.empty(min(nrows, ncols), np.int64)
    npiv = 0
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = -1
        for i in range(r, nrows):
            if a[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(ncols):
                t = a[r, j]
                a[r, j] = a[pr, j]
                a[pr, j] = t
        inv = _powmod_nb(a[r, c], p - 2, p)
        for i in range(r + 1, nrows):
            lead = a[i, c]
            if lead == 0:
                continue
            f = lead * inv % p
            for j in range(c, ncols):
                if a[r, j] != 0:
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        pivots[npiv] = c
        npiv += 1
        r += 1
    return pivots[:npiv]


def _rank_profile_np(a: np.ndarray, p: int) -> list[int]:
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        below = a[r + 1 :, c]
        mask = below != 0
        if mask.any():
            f = below[mask] * inv % p
            block = a[r + 1 :][mask]
            a[r + 1 :][mask] = (block - f[:, None] * a[r][None, :]) % p
        pivots.append(c)
        r += 1
    return pivots


def rank_profile_mod_p(mat: np.ndarray, p: int) -> list[int]:
    """Pivot columns of an integer matrix over GF(p); the input is copied."""
    a = np.ascontiguousarray(np.asarray(mat, dtype=np.int64) % p)
    if a.size == 0:
        return []
    if use_numba():
        return [int(c) for c in _rank_profile_nb(a, p)]
    return _rank_profile_np(a, p)


# -- batched univariate resultants over GF(p) ------------------------------
#
# A bivariate integer polynomial enters as a dense int64 matrix C[b, i]:
# the coefficient of y^b x^i.  Evaluating the x-variable at many sample
# points turns Res_y into one univariate Euclidean resultant per point.


def eval_x_batch(c_mat: np.ndarray, points: np.ndarray, p: int) -> np.ndarray:
    """Horner-evaluate every y-layer at every sample point, mod p."""
    c = np.asarray(c_mat, dtype=np.int64) % p
    t = np.asarray(points, dtype=np.int64) % p
    nb, nx = c.shape
    out = np.zeros((nb, t.size), dtype=np.int64)
    for i in range(nx - 1, -1, -1):
        out = (out * t[None, :] + c[:, i][:, None]) % p
    return out


@njit(cache=True)
def _resultant_batch_nb(fv, gv, p):  # pragma: no cover - compiled
    # fv, gv: (ny, npoints) value tables, row b = coefficient of y^b.
    npoints = fv.shape[1]
    out = np.zeros(npoints, np.int64)
    maxd = fv.shape[0] + gv.shape[0]
    a = np.zeros(maxd, np.int64)
    b = np.zeros(maxd, np.int64)
    for tix in range(npoints):
        for i in range(fv.shape[0]):
            a[i] = fv[i, tix]
        da = -1
        for i in range(fv.shape[0]):
            if a[i] != 0:
                da = i
        for i in range(gv.shape[0]):
            b[i] = gv[i, tix]
        db = -1
        for i in range(gv.shape[0]):
            if b[i] != 0:
                db = i
        if da < 0 or db < 0:
            out[tix] = 0
            continue
        res = 1
        ok = True
        while db > 0:
            # remainder a mod b
            binv = _powmod_nb(b[db], p - 2, p)
            for top in range(da, db - 1, -1):
                lead = a[top]
                if lead == 0:
                    continue
                f = lead * binv % p
                sh = top - db
                for i in range(db + 1):
                    a[sh + i] = (a[sh + i] - f * b[i]) % p
            dr = -1
            for i in range(db):
                if a[i] != 0:
                    dr = i
            if dr < 0:
                res = 0
                ok = False
                break
            if (da * db) & 1:
                res = p - res
            res = res * _powmod_nb(b[db], da - dr, p) % p
            tmp = a
            a = b
            b = tmp
            da, db = db, dr
        if ok:
            res = res * _powmod_nb(b[0], da, p) % p
        out[tix] = res
    return out


def _resultant_batch_np(fv: np.ndarray, gv: np.ndarray, p: int) -> np.ndarray:
    npoints = fv.shape[1]
    out = np.zeros(npoints, dtype=np.int64)
    for tix in range(npoints):
        a = [int(v) for v in fv[:, tix]]
        b = [int(v) for v in gv[:, tix]]
        while a and a[-1] == 0:
            a.pop()
        while b and b[-1] == 0:
            b.pop()
        if not a or not b:
            out[tix] = 0
            continue
        da, db = len(a) - 1, len(b) - 1
        res = 1
        while db > 0:
            binv = pow(b[-1], p - 2, p)
            for top in range(da, db - 1, -1):
                lead = a[top]
                if lead == 0:
                    continue
                f = lead * binv % p
                sh = top - db
                for i in range(db + 1):
                    a[sh + i] = (a[sh + i] - f * b[i]) % p
            r = a[:db]
            while r and r[-1] == 0:
                r.pop()
            if not r:
                res = 0
                break
            dr = len(r) - 1
            if (da * db) & 1:
                res = p - res
            res = res * pow(b[-1], da - dr, p) % p
            a, b = b, r
            da, db = db, dr
        else:
            res = res * pow(b[0], da, p) % p
        out[tix] = res
    return out


def resultant_batch(fv: np.ndarray, gv: np.ndarray, p: int) -> np.ndarray:
    """Res_y at each sample point, from value tables produced by eval_x_batch."""
    if use_numba():
        return _resultant_batch_nb(
            np.ascontiguousarray(fv), np.ascontiguousarray(gv), p
        )
    return _resultant_batch_np(fv, gv, p)


def interpolate_monomial(points: np.ndarray, values: np.ndarray, p: int) -> np.ndarray:
    """Coefficients (low degree first) of the interpolating polynomial mod p.

    Newton divided differences, then expansion to the monomial basis.  The
    sample points must be distinct small non-negative integers; difference
    inverses are served from one batch table.
    """
    x = np.asarray(points, dtype=np.int64)
    coef = (np.asarray(values, dtype=np.int64) % p).copy()
    n = x.size
    span = int(x.max() - x.min()) if n else 0
    inv_table = np.zeros(span + 1, dtype=np.int64)
    for v in range(1, span + 1):
        inv_table[v] = pow(v, p - 2, p)
    for j in range(1, n):
        diff = x[j:] - x[:-j]
        coef[j:] = (coef[j:] - coef[j - 1 : -1]) % p * inv_table[diff] % p
    # Horner expansion: poly = (...((c_{n-1})(X - x_{n-2}) + c_{n-2})...).
    out = np.zeros(n, dtype=np.int64)
    out[0] = coef[n - 1]
    deg = 0
    for j in range(n - 2, -1, -1):
        shifted = np.zeros(n, dtype=np.int64)
        shifted[1 : deg + 2] = out[: deg + 1]
        shifted[: deg + 1] = (shifted[: deg + 1] - int(x[j]) * out[: deg + 1]) % p
        deg += 1
        shifted[0] = (shifted[0] + coef[j]) % p
        out = shifted
    return out % p
