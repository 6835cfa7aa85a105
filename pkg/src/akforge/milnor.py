"""Milnor-number oracles for isolated plane-curve singularities.

Two independent methods are provided so results can be cross-checked
without trusting a single code path.

Truncated local algebra: D(M) is the codimension of the span of truncated
multiples of the two partial derivatives inside polynomials of total degree
below M.  D is non-decreasing in M, and one consecutive equality
D(M+1) = D(M) pins the value exactly: it forces the M-th power of the
maximal ideal into the Jacobian ideal, after which nothing new can appear.

Resultant valuation: after an origin-fixing shear that pushes all other
critical points off the line x = 0, the Milnor number at the origin is the
order of vanishing in x of the resultant of the two partials with respect
to y.  The resultant is recovered by evaluation at integer sample points
and interpolation, either exactly or modulo two independent primes.
"""

from __future__ import annotations

import random
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from ._exactrank import det_bareiss, rank_profile_sparse, sylvester_matrix
from ._modp import (
    eval_x_batch,
    interpolate_monomial,
    primes_from_seed,
    rank_profile_mod_p,
    resultant_batch,
)
from .errors import (
    GenericityFailure,
    InvalidInput,
    NonIsolated,
    NonIsolatedSuspected,
    PreconditionViolated,
)
from .poly import SparsePoly

TRUNCATED_METHOD = "truncated-local-algebra"
RESULTANT_METHOD = "resultant"

# Above this degree bound for the interpolated resultant, the exact
# Sylvester-determinant path is replaced by the two-prime modular one.
_EXACT_RESULTANT_LIMIT = 300

# Largest dense relation matrix (entries) the modular rank path will build;
# larger problems stay on the sparse exact elimination.
_DENSE_ENTRY_LIMIT = 50_000_000

_SHEAR_ATTEMPTS = 8


@dataclass(frozen=True)
class MilnorReport:
    mu: int
    method: str
    stabilized_at: int
    arithmetic: str


def _col_index(i: int, j: int) -> int:
    # Monomials ordered by total degree, then by x-exponent within a degree.
    deg = i + j
    return deg * (deg + 1) // 2 + i


def _relation_rows(fx: SparsePoly, fy: SparsePoly, m_top: int) -> list[dict[int, int]]:
    """Rows spanning {monomial * partial, truncated below degree m_top}."""
    rows: list[dict[int, int]] = []
    for g in (fx, fy):
        if g.is_zero:
            continue
        den = 1
        for _, c in g.terms():
            den = lcm(den, c.denominator)
        terms = [((m.ex, m.ey), int(c * den)) for m, c in g.terms()]
        og = min(tx + ty for (tx, ty), _ in terms)
        for du in range(m_top - og):
            for a in range(du + 1):
                b = du - a
                row = {}
                for (tx, ty), c in terms:
                    if a + tx + b + ty < m_top:
                        row[_col_index(a + tx, b + ty)] = c
                if row:
                    rows.append(row)
    return rows


def _profile_to_dims(profile: list[int], m_top: int) -> list[int]:
    # D(m) for m = 0..m_top from one left-to-right rank profile: within the
    # first ncols(m) columns, the pivot count is the rank of that prefix.
    dims = []
    for m in range(m_top + 1):
        nc = m * (m + 1) // 2
        dims.append(nc - bisect_left(profile, nc))
    return dims


def _dimension_profile(
    fx: SparsePoly, fy: SparsePoly, m_top: int, arithmetic: str
) -> tuple[list[int], str]:
    """D(m) for all m <= m_top, plus the arithmetic that actually verified it."""
    rows = _relation_rows(fx, fy, m_top)
    ncols = m_top * (m_top + 1) // 2
    if arithmetic == "exact":
        profile = rank_profile_sparse(rows, ncols)
        return _profile_to_dims(profile, m_top), "exact"
    if arithmetic != "modular":
        raise InvalidInput(f"unknown arithmetic {arithmetic!r}")
    if max(len(rows), 1) * ncols > _DENSE_ENTRY_LIMIT:
        # The modular fast path densifies the relation matrix; past this
        # size the sparse exact elimination is the safer route.
        profile = rank_profile_sparse(rows, ncols)
        return _profile_to_dims(profile, m_top), "exact"
    p1, p2 = primes_from_seed(2)
    dense = np.zeros((max(len(rows), 1), ncols), dtype=np.int64)
    for r, row in enumerate(rows):
        for c, v in row.items():
            dense[r, c] = v % p1
    d1 = _profile_to_dims(rank_profile_mod_p(dense, p1), m_top)
    for r, row in enumerate(rows):
        for c, v in row.items():
            dense[r, c] = v % p2
    d2 = _profile_to_dims(rank_profile_mod_p(dense, p2), m_top)
    if d1 != d2:
        # An unlucky prime can only lower a rank; disagreement means at
        # least one was unlucky, so settle it exactly.
        profile = rank_profile_sparse(rows, ncols)
        return _profile_to_dims(profile, m_top), "exact"
    return d1, f"two-prime-modular({p1},{p2})"


def _require_no_constant(f: SparsePoly) -> None:
    if f.coefficient(0, 0) != 0:
        raise PreconditionViolated("the germ must vanish at the origin")


def milnor_truncated(f: SparsePoly, M: int, *, arithmetic: str = "exact") -> int:
    """D(M): local-algebra dimension truncated below total degree M."""
    if M < 1:
        raise InvalidInput("truncation degree must be positive")
    _require_no_constant(f)
    dims, _ = _dimension_profile(f.diff("x"), f.diff("y"), M, arithmetic)
    return dims[M]


def milnor_number(
    f: SparsePoly,
    M_cap: int | None = None,
    *,
    expected: int | None = None,
    arithmetic: str = "exact",
) -> MilnorReport:
    """Milnor number via stabilization of the truncated local algebra."""
    _require_no_constant(f)
    if M_cap is None:
        M_cap = 2 * expected + 8 if expected is not None else 256
    if M_cap < 1:
        raise InvalidInput("M_cap must be positive")
    fx, fy = f.diff("x"), f.diff("y")
    m_run = min(max(expected + 3 if expected is not None else 16, 2), M_cap + 1)
    while True:
        dims, arith_used = _dimension_profile(fx, fy, m_run, arithmetic)
        assert all(a <= b for a, b in zip(dims, dims[1:])), "D(M) must be monotone"
        for m in range(1, m_run):
            if dims[m + 1] == dims[m]:
                return MilnorReport(dims[m], TRUNCATED_METHOD, m, arith_used)
        if m_run >= M_cap + 1:
            raise NonIsolatedSuspected(
                f"no stabilization up to M={M_cap}; the singularity may not be isolated"
            )
        m_run = min(2 * m_run, M_cap + 1)


# -- resultant-valuation oracle --------------------------------------------


def _scale_integer(p: SparsePoly) -> SparsePoly:
    den = 1
    for _, c in p.terms():
        den = lcm(den, c.denominator)
    return p.scale(den) if den != 1 else p


def _restriction_y(p: SparsePoly) -> list[Fraction]:
    """Coefficient list (low to high) of p(0, y)."""
    out: list[Fraction] = []
    for m, c in p.terms():
        if m.ex == 0:
            if len(out) <= m.ey:
                out.extend([Fraction(0)] * (m.ey + 1 - len(out)))
            out[m.ey] = c
    while out and out[-1] == 0:
        out.pop()
    return out


def _gcd_univariate(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = list(a), list(b)
    while b:
        # remainder a mod b
        da, db = len(a) - 1, len(b) - 1
        inv = 1 / b[-1]
        for top in range(da, db - 1, -1):
            f = a[top] * inv
            if f:
                sh = top - db
                for i in range(db + 1):
                    a[sh + i] -= f * b[i]
        del a[db:]
        while a and a[-1] == 0:
            a.pop()
        a, b = b, a
    return a


def _is_monomial_univ(c: list[Fraction]) -> bool:
    return sum(1 for v in c if v) == 1


def _lc_y_poly(p: SparsePoly) -> dict[int, int]:
    """Integer x-coefficients of the leading y-layer."""
    dy = p.degree_in("y")
    layer = p.coeffs_in_y()[dy]
    return {i: int(c) for i, c in layer.items()}


def _eval_int_poly(coeffs: dict[int, int], t: int) -> int:
    return sum(c * t**i for i, c in coeffs.items())


def _dense_y_matrix(p: SparsePoly) -> list[list[int]]:
    """C[b][i] = integer coefficient of y^b x^i."""
    dy, dx = p.degree_in("y"), p.degree_in("x")
    mat = [[0] * (dx + 1) for _ in range(dy + 1)]
    for m, c in p.terms():
        mat[m.ey][m.ex] = int(c)
    return mat


def _exact_resultant_values(
    P: SparsePoly, Q: SparsePoly, points: list[int]
) -> list[int]:
    py, qy = P.degree_in("y"), Q.degree_in("y")
    pc = P.coeffs_in_y()
    qc = Q.coeffs_in_y()

    def layer_values(layers, dy, t):
        return [
            sum(int(c) * t**i for i, c in layers.get(b, {}).items())
            for b in range(dy + 1)
        ]

    values = []
    for t in points:
        pv = layer_values(pc, py, t)
        qv = layer_values(qc, qy, t)
        if py == 0 and qy == 0:
            values.append(1)
        elif py == 0:
            values.append(pv[0] ** qy)
        elif qy == 0:
            values.append(qv[0] ** py)
        else:
            values.append(det_bareiss(sylvester_matrix(pv, qv)))
    return values


def _interp_valuation_exact(points: list[int], values: list[int]) -> int | None:
    """Order of vanishing at 0 of the degree < len(points) interpolant."""
    n = len(points)
    coef = [Fraction(v) for v in values]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (points[i] - points[i - j])
    poly = [coef[n - 1]]
    for j in range(n - 2, -1, -1):
        xj = points[j]
        nxt = [Fraction(0)] * (len(poly) + 1)
        for i, v in enumerate(poly):
            nxt[i + 1] += v
            nxt[i] -= xj * v
        nxt[0] += coef[j]
        poly = nxt
    for i, v in enumerate(poly):
        if v:
            return i
    return None


def _good_points_exact(P, Q, count: int) -> list[int]:
    py, qy = P.degree_in("y"), Q.degree_in("y")
    lcp = _lc_y_poly(P) if py > 0 else None
    lcq = _lc_y_poly(Q) if qy > 0 else None
    pts: list[int] = []
    t = 1
    while len(pts) < count:
        if (lcp is None or _eval_int_poly(lcp, t) != 0) and (
            lcq is None or _eval_int_poly(lcq, t) != 0
        ):
            pts.append(t)
        t += 1
    return pts


def _modular_valuation(P, Q, bound: int, p: int) -> int | None:
    py, qy = P.degree_in("y"), Q.degree_in("y")
    lcp = _lc_y_poly(P) if py > 0 else None
    lcq = _lc_y_poly(Q) if qy > 0 else None
    pts: list[int] = []
    t = 1
    while len(pts) < bound + 1:
        ok = True
        if lcp is not None and _eval_int_poly(lcp, t) % p == 0:
            ok = False
        if ok and lcq is not None and _eval_int_poly(lcq, t) % p == 0:
            ok = False
        if ok:
            pts.append(t)
        t += 1
    pts_arr = np.array(pts, dtype=np.int64)
    pmat = np.array([[c % p for c in row] for row in _dense_y_matrix(P)], dtype=np.int64)
    qmat = np.array([[c % p for c in row] for row in _dense_y_matrix(Q)], dtype=np.int64)
    if py == 0 and qy == 0:
        vals = np.ones(len(pts), dtype=np.int64)
    elif py == 0:
        base = eval_x_batch(pmat, pts_arr, p)[0]
        vals = np.array([pow(int(v), qy, p) for v in base], dtype=np.int64)
    elif qy == 0:
        base = eval_x_batch(qmat, pts_arr, p)[0]
        vals = np.array([pow(int(v), py, p) for v in base], dtype=np.int64)
    else:
        fv = eval_x_batch(pmat, pts_arr, p)
        gv = eval_x_batch(qmat, pts_arr, p)
        vals = resultant_batch(fv, gv, p)
    coeffs = interpolate_monomial(pts_arr, vals, p)
    nz = np.nonzero(coeffs)[0]
    return int(nz[0]) if nz.size else None


def _shear_values(seed: int) -> list[int]:
    rng = random.Random(seed)
    out = [0]
    while len(out) < _SHEAR_ATTEMPTS:
        v = rng.randrange(1, 100)
        if v not in out:
            out.append(v)
    return out


def milnor_resultant(
    f: SparsePoly, shear_seed: int = 0, *, arithmetic: str = "auto"
) -> MilnorReport:
    """Milnor number as the x-valuation of Res_y of the two partials.

    Tries the identity shear first, then up to seven seeded shears
    (x, y) -> (x + t*y, y) until the genericity conditions hold: other
    critical points stay off the line x = 0 and neither partial drops
    y-degree there.
    """
    if arithmetic not in ("auto", "exact", "modular"):
        raise InvalidInput(f"unknown arithmetic {arithmetic!r}")
    fx, fy = f.diff("x"), f.diff("y")
    if fx.is_zero and fy.is_zero:
        raise NonIsolated("the gradient vanishes identically")
    if fx.is_zero or fy.is_zero:
        g = fy if fx.is_zero else fx
        if g.coefficient(0, 0) != 0:
            return MilnorReport(0, RESULTANT_METHOD, 0, "exact")
        raise NonIsolated("the critical locus contains a curve through the origin")
    for var in ("x", "y"):
        if all(m[0 if var == "x" else 1] >= 1 for m, _ in fx.terms()) and all(
            m[0 if var == "x" else 1] >= 1 for m, _ in fy.terms()
        ):
            raise NonIsolated(f"the {var} = 0 axis lies in the critical locus")

    xv, yv = SparsePoly.variable("x"), SparsePoly.variable("y")
    for t in _shear_values(shear_seed):
        if t == 0:
            P, Q = _scale_integer(fx), _scale_integer(fy)
        else:
            g = f.compose(xv + yv.scale(t), yv)
            P, Q = _scale_integer(g.diff("x")), _scale_integer(g.diff("y"))
        py, qy = P.degree_in("y"), Q.degree_in("y")
        if py > 0 and _lc_y_poly(P).get(0, 0) == 0:
            continue
        if qy > 0 and _lc_y_poly(Q).get(0, 0) == 0:
            continue
        gcd0 = _gcd_univariate(_restriction_y(P), _restriction_y(Q))
        if not _is_monomial_univ(gcd0):
            continue
        bound = qy * P.degree_in("x") + py * Q.degree_in("x")
        mode = arithmetic
        if mode == "auto":
            mode = "exact" if bound <= _EXACT_RESULTANT_LIMIT else "modular"
        if mode == "exact":
            pts = _good_points_exact(P, Q, bound + 1)
            val = _interp_valuation_exact(pts, _exact_resultant_values(P, Q, pts))
            arith_used = "exact"
        else:
            p1, p2 = primes_from_seed(2)
            v1 = _modular_valuation(P, Q, bound, p1)
            v2 = _modular_valuation(P, Q, bound, p2)
            if v1 != v2:
                pts = _good_points_exact(P, Q, bound + 1)
                val = _interp_valuation_exact(pts, _exact_resultant_values(P, Q, pts))
                arith_used = "exact"
            else:
                val = v1
                arith_used = f"two-prime-modular({p1},{p2})"
        if val is None:
            raise NonIsolated("the partials share a factor: resultant is identically zero")
        return MilnorReport(val, RESULTANT_METHOD, val, arith_used)
    raise GenericityFailure(
        f"no admissible shear found in {_SHEAR_ATTEMPTS} attempts"
    )
