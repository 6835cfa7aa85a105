"""Weighted-truncated power series in two variables, read as (x, z).

A TruncatedSeries fixes a contract: positive integer weights for the two
variables and a cutoff.  Only terms whose weighted degree wx*i + wz*j stays
at or below the cutoff are kept; everything heavier is discarded.  Because
weights are positive, truncation commutes with ring operations, so all
arithmetic here is exact modulo the stated window.

Two substitution engines back the heavy operations.  The grouped engine
stores a series as {z-degree: dense integer coefficient list over x} and
multiplies lists with Kronecker-packed big-integer convolution; it requires
integer coefficients and is fast enough for windows with x-range in the
thousands.  The generic engine works directly on rational sparse
polynomials and exists both as a fallback and as an independent
cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, NamedTuple

from ._kronecker import conv_trunc
from .errors import InvalidInput, MismatchedContract, PreconditionViolated
from .poly import SparsePoly


class Weights(NamedTuple):
    wx: int
    wz: int


def truncate_by_weight(p: SparsePoly, weights: Weights, cutoff: int) -> SparsePoly:
    """Drop every term of p with weighted degree above the cutoff."""
    wx, wz = weights
    return SparsePoly(
        [((m.ex, m.ey), c) for m, c in p.terms() if wx * m.ex + wz * m.ey <= cutoff]
    )


@dataclass(frozen=True)
class TruncatedSeries:
    """A polynomial known exactly up to weighted degree `cutoff`."""

    body: SparsePoly
    weights: Weights
    cutoff: int

    def __post_init__(self):
        wx, wz = self.weights
        if wx < 1 or wz < 1:
            raise InvalidInput("series weights must be positive integers")
        if self.cutoff < 0:
            raise InvalidInput("series cutoff must be non-negative")
        object.__setattr__(self, "weights", Weights(int(wx), int(wz)))
        for m, _ in self.body.terms():
            if wx * m.ex + wz * m.ey > self.cutoff:
                raise InvalidInput(
                    "series body contains a term beyond the cutoff; "
                    "use TruncatedSeries.from_poly to truncate"
                )

    @classmethod
    def from_poly(cls, p: SparsePoly, weights: Weights, cutoff: int) -> "TruncatedSeries":
        weights = Weights(*weights)
        return cls(truncate_by_weight(p, weights, cutoff), weights, cutoff)

    # -- accessors ---------------------------------------------------------

    def coefficient(self, i: int, j: int) -> Fraction:
        return self.body.coefficient(i, j)

    def terms(self):
        return self.body.terms()

    def truncate(self, cutoff: int) -> "TruncatedSeries":
        """Shrink the window. The cutoff may only decrease."""
        if cutoff > self.cutoff:
            raise InvalidInput("cannot enlarge a truncation window")
        return TruncatedSeries.from_poly(self.body, self.weights, cutoff)

    # -- ring operations ---------------------------------------------------

    def _require_same_contract(self, other: "TruncatedSeries") -> None:
        if self.weights != other.weights or self.cutoff != other.cutoff:
            raise MismatchedContract(
                f"series contracts differ: weights {tuple(self.weights)} cutoff "
                f"{self.cutoff} vs weights {tuple(other.weights)} cutoff {other.cutoff}"
            )

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._require_same_contract(other)
        return TruncatedSeries(self.body + other.body, self.weights, self.cutoff)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._require_same_contract(other)
        return TruncatedSeries(self.body - other.body, self.weights, self.cutoff)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(-self.body, self.weights, self.cutoff)

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries(self.body.scale(c), self.weights, self.cutoff)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._require_same_contract(other)
        a, da = _clear_denominators(self.body, self.weights, self.cutoff)
        b, db = _clear_denominators(other.body, self.weights, self.cutoff)
        prod = _mul_groups(a, b, self.weights, self.cutoff)
        return TruncatedSeries(
            _groups_to_poly(prod, da * db), self.weights, self.cutoff
        )

    def __pow__(self, e: int) -> "TruncatedSeries":
        if e < 0:
            raise InvalidInput("negative power of a truncated series")
        result = TruncatedSeries(SparsePoly.one(), self.weights, self.cutoff)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


# -- grouped integer engine ------------------------------------------------
#
# groups: dict z-degree -> dense list of int coefficients over x-degree.
# Lists are kept stripped of trailing zeros and empty groups are removed,
# so two grouped forms are equal as dicts iff the series are equal.

Groups = "dict[int, list[int]]"


def _strip(groups: dict[int, list[int]]) -> dict[int, list[int]]:
    out = {}
    for j, lst in groups.items():
        n = len(lst)
        while n and lst[n - 1] == 0:
            n -= 1
        if n:
            out[j] = lst[:n] if n != len(lst) else lst
    return out


def _add_groups(a: dict[int, list[int]], b: dict[int, list[int]]) -> dict[int, list[int]]:
    out = {j: list(lst) for j, lst in a.items()}
    for j, lst in b.items():
        cur = out.get(j)
        if cur is None:
            out[j] = list(lst)
            continue
        if len(cur) < len(lst):
            cur.extend([0] * (len(lst) - len(cur)))
        for i, v in enumerate(lst):
            if v:
                cur[i] += v
    return _strip(out)


def _mul_groups(
    a: dict[int, list[int]],
    b: dict[int, list[int]],
    weights: Weights,
    cutoff: int,
) -> dict[int, list[int]]:
    wx, wz = weights
    out: dict[int, list[int]] = {}
    for j, p in a.items():
        for l, q in b.items():
            t = j + l
            rem = cutoff - wz * t
            if rem < 0:
                continue
            c = conv_trunc(p, q, rem // wx + 1)
            cur = out.get(t)
            if cur is None:
                out[t] = c
            else:
                if len(cur) < len(c):
                    cur.extend([0] * (len(c) - len(cur)))
                for i, v in enumerate(c):
                    if v:
                        cur[i] += v
    return _strip(out)


def _grouped_powers(
    base: dict[int, list[int]],
    exponents: set[int],
    weights: Weights,
    cutoff: int,
) -> dict[int, dict[int, list[int]]]:
    """Powers of a grouped series for each requested exponent, sharing squarings."""
    out: dict[int, dict[int, list[int]]] = {}
    if 0 in exponents:
        out[0] = {0: [1]}
    top = max(exponents, default=0)
    if top == 0:
        return out
    squares = [base]
    while (1 << len(squares)) <= top:
        squares.append(_mul_groups(squares[-1], squares[-1], weights, cutoff))
    for e in exponents:
        if e == 0:
            continue
        acc = None
        bit, ee = 0, e
        while ee:
            if ee & 1:
                acc = squares[bit] if acc is None else _mul_groups(acc, squares[bit], weights, cutoff)
            ee >>= 1
            bit += 1
        out[e] = acc
    return out


def _poly_to_groups(
    p: SparsePoly, weights: Weights, cutoff: int
) -> dict[int, list[int]]:
    """Integer-coefficient polynomial to grouped dense form, truncating by weight."""
    wx, wz = weights
    groups: dict[int, list[int]] = {}
    for m, c in p.terms():
        if wx * m.ex + wz * m.ey > cutoff:
            continue
        lst = groups.get(m.ey)
        if lst is None:
            lst = []
            groups[m.ey] = lst
        if len(lst) <= m.ex:
            lst.extend([0] * (m.ex + 1 - len(lst)))
        lst[m.ex] = int(c)
    return _strip(groups)


def _groups_to_poly(groups: dict[int, list[int]], denom: int = 1) -> SparsePoly:
    terms = []
    for j, lst in groups.items():
        for i, v in enumerate(lst):
            if v:
                terms.append(((i, j), Fraction(v, denom)))
    return SparsePoly(terms)


def _clear_denominators(
    p: SparsePoly, weights: Weights, cutoff: int
) -> tuple[dict[int, list[int]], int]:
    d = 1
    for _, c in p.terms():
        d = lcm(d, c.denominator)
    scaled = p.scale(d) if d != 1 else p
    return _poly_to_groups(scaled, weights, cutoff), d


# -- coordinate-change inversion -------------------------------------------


def _check_inversion_input(A: SparsePoly, weights: Weights, cutoff: int) -> None:
    if A.order() < 2:
        raise PreconditionViolated(
            "the perturbation must vanish to order 2 at the origin"
        )
    if weights.wz > cutoff:
        raise InvalidInput("cutoff is too small to represent the new variable")


def invert_change(
    A: SparsePoly, weights: Weights, cutoff: int, *, engine: str = "auto"
) -> TruncatedSeries:
    """Solve y = z + A(x, y) for y as a truncated series in (x, z).

    This inverts the substitution z = y - A(x, y).  A must vanish to
    order 2 at the origin, which makes the fixed-point iteration
    y <- z + A(x, y) gain at least one unit of weighted order per pass.
    """
    weights = Weights(*weights)
    _check_inversion_input(A, weights, cutoff)
    if engine not in ("auto", "grouped", "generic"):
        raise InvalidInput(f"unknown engine {engine!r}")
    if engine == "grouped" and not A.has_integer_coefficients():
        raise InvalidInput("grouped engine requires integer coefficients")
    if engine == "auto":
        engine = "grouped" if A.has_integer_coefficients() else "generic"

    if engine == "generic":
        z = SparsePoly.variable("y")
        phi = z
        for _ in range(cutoff + 2):
            nxt = truncate_by_weight(
                z + _subst_second_truncated(A, phi, weights, cutoff), weights, cutoff
            )
            if nxt == phi:
                return TruncatedSeries(phi, weights, cutoff)
            phi = nxt
        raise RuntimeError("fixed-point iteration failed to converge")

    ygroups = {
        b: [int(xs.get(i, 0)) for i in range(max(xs) + 1)]
        for b, xs in A.coeffs_in_y().items()
    }
    exps = set(ygroups)
    z_units = {1: [1]}
    phi = dict(z_units)
    for _ in range(cutoff + 2):
        pows = _grouped_powers(phi, exps, weights, cutoff)
        acc: dict[int, list[int]] = {}
        for b, ab in ygroups.items():
            acc = _add_groups(acc, _mul_groups(pows[b], {0: ab}, weights, cutoff))
        nxt = _add_groups(z_units, acc)
        if nxt == phi:
            return TruncatedSeries(_groups_to_poly(phi), weights, cutoff)
        phi = nxt
    raise RuntimeError("fixed-point iteration failed to converge")


def _subst_second_truncated(
    F: SparsePoly, r: SparsePoly, weights: Weights, cutoff: int
) -> SparsePoly:
    """F(x, r) with truncation applied after every product (generic engine)."""
    layers: dict[int, list] = {}
    for m, c in F.terms():
        layers.setdefault(m.ey, []).append(((m.ex, 0), c))
    if not layers:
        return SparsePoly.zero()
    polys = {
        e: truncate_by_weight(SparsePoly(ts), weights, cutoff)
        for e, ts in layers.items()
    }
    exps = sorted(polys, reverse=True)
    acc = polys[exps[0]]
    for prev, e in zip(exps, exps[1:]):
        for _ in range(prev - e):
            acc = truncate_by_weight(acc * r, weights, cutoff)
        acc = acc + polys[e]
    for _ in range(exps[-1]):
        acc = truncate_by_weight(acc * r, weights, cutoff)
    return acc


def compose_curve(
    F: SparsePoly, y_series: TruncatedSeries, *, engine: str = "auto"
) -> TruncatedSeries:
    """Substitute the series for the second variable of F, truncating on the fly."""
    weights, cutoff = y_series.weights, y_series.cutoff
    if engine not in ("auto", "grouped", "generic"):
        raise InvalidInput(f"unknown engine {engine!r}")
    body_int = y_series.body.has_integer_coefficients()
    if engine == "grouped" and not body_int:
        raise InvalidInput("grouped engine requires an integer series body")
    if engine == "auto":
        engine = "grouped" if body_int else "generic"

    if engine == "generic":
        return TruncatedSeries(
            _subst_second_truncated(F, y_series.body, weights, cutoff), weights, cutoff
        )

    denom = 1
    for _, c in F.terms():
        denom = lcm(denom, c.denominator)
    scaled = F.scale(denom) if denom != 1 else F
    fgroups = {
        b: [int(xs.get(i, 0)) for i in range(max(xs) + 1)]
        for b, xs in scaled.coeffs_in_y().items()
    }
    sgroups = _poly_to_groups(y_series.body, weights, cutoff)
    pows = _grouped_powers(sgroups, set(fgroups), weights, cutoff)
    acc: dict[int, list[int]] = {}
    for b, fb in fgroups.items():
        acc = _add_groups(acc, _mul_groups(pows[b], {0: fb}, weights, cutoff))
    return TruncatedSeries(_groups_to_poly(acc, denom), weights, cutoff)
