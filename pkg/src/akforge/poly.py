"""Exact sparse bivariate polynomials over the rationals.

A polynomial is a map from exponent pairs to nonzero ``Fraction``
coefficients.  The two variables are positional; they print as ``x`` and
``y`` by default but are reinterpreted as ``(x, z)`` by the series layer.

Canonical term order is graded lexicographic with x > y, listed leading
term first.  Serialization (text and JSON) always uses this order, so equal
polynomials serialize identically.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Union

from .errors import NegativeExponent, PolySyntaxError

Rational = Fraction
Scalar = Union[int, Fraction]


class Monomial(NamedTuple):
    ex: int
    ey: int

    @property
    def degree(self) -> int:
        return self.ex + self.ey


def _grlex_key(m: Monomial) -> tuple[int, int]:
    # Sort key for descending graded-lex with x > y.
    return (-(m.ex + m.ey), -m.ex)


def _var_index(var: str) -> int:
    if var == "x":
        return 0
    if var == "y":
        return 1
    raise ValueError(f"unknown variable {var!r}; expected 'x' or 'y'")


class SparsePoly:
    """Immutable sparse polynomial in two variables with Fraction coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict | Iterable[tuple[tuple[int, int], Scalar]] = ()):
        data: dict[Monomial, Fraction] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for (ex, ey), c in items:
            if ex < 0 or ey < 0:
                raise ValueError("monomial exponents must be non-negative")
            c = Fraction(c)
            if c:
                m = Monomial(int(ex), int(ey))
                c = data.get(m, _ZERO) + c
                if c:
                    data[m] = c
                elif m in data:
                    del data[m]
        self._terms = data

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "SparsePoly":
        return _POLY_ZERO

    @classmethod
    def one(cls) -> "SparsePoly":
        return _POLY_ONE

    @classmethod
    def constant(cls, c: Scalar) -> "SparsePoly":
        return cls({(0, 0): c})

    @classmethod
    def variable(cls, var: str) -> "SparsePoly":
        return _POLY_X if _var_index(var) == 0 else _POLY_Y

    @classmethod
    def term(cls, ex: int, ey: int, c: Scalar = 1) -> "SparsePoly":
        return cls({(ex, ey): c})

    # -- inspection --------------------------------------------------------

    def terms(self) -> Iterator[tuple[Monomial, Fraction]]:
        """Yield (monomial, coefficient) pairs in canonical order."""
        for m in sorted(self._terms, key=_grlex_key):
            yield m, self._terms[m]

    def coefficient(self, ex: int, ey: int) -> Fraction:
        return self._terms.get(Monomial(ex, ey), _ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def total_degree(self) -> int:
        """Maximum term degree; -1 for the zero polynomial."""
        return max((m.degree for m in self._terms), default=-1)

    def degree_in(self, var: str) -> int:
        i = _var_index(var)
        return max((m[i] for m in self._terms), default=-1)

    def order(self) -> int | float:
        """Minimum term degree (m-adic order); +inf for zero."""
        return min((m.degree for m in self._terms), default=math.inf)

    def weighted_order(self, wx: int, wy: int) -> int | float:
        """Minimum of wx*ex + wy*ey over terms; +inf for the zero polynomial."""
        if wx < 1 or wy < 1:
            raise ValueError("weights must be positive")
        return min((wx * m.ex + wy * m.ey for m in self._terms), default=math.inf)

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    # -- arithmetic --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SparsePoly):
            return self._terms == other._terms
        return NotImplemented

    def __neg__(self) -> "SparsePoly":
        out = SparsePoly()
        out._terms = {m: -c for m, c in self._terms.items()}
        return out

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        if not isinstance(other, SparsePoly):
            return NotImplemented
        data = dict(self._terms)
        for m, c in other._terms.items():
            s = data.get(m, _ZERO) + c
            if s:
                data[m] = s
            elif m in data:
                del data[m]
        out = SparsePoly()
        out._terms = data
        return out

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + (-other)

    def __mul__(self, other: "SparsePoly | Scalar") -> "SparsePoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        data: dict[Monomial, Fraction] = {}
        for (ax, ay), ac in self._terms.items():
            for (bx, by), bc in other._terms.items():
                m = Monomial(ax + bx, ay + by)
                s = data.get(m, _ZERO) + ac * bc
                if s:
                    data[m] = s
                elif m in data:
                    del data[m]
        out = SparsePoly()
        out._terms = data
        return out

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "SparsePoly":
        c = Fraction(c)
        if not c:
            return _POLY_ZERO
        out = SparsePoly()
        out._terms = {m: v * c for m, v in self._terms.items()}
        return out

    def __pow__(self, e: int) -> "SparsePoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = _POLY_ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, dx: int, dy: int) -> "SparsePoly":
        """Multiply by x^dx * y^dy."""
        out = SparsePoly()
        out._terms = {Monomial(m.ex + dx, m.ey + dy): c for m, c in self._terms.items()}
        return out

    def diff(self, var: str) -> "SparsePoly":
        """Formal partial derivative with respect to 'x' or 'y'."""
        i = _var_index(var)
        data: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                nm = Monomial(m.ex - 1, m.ey) if i == 0 else Monomial(m.ex, m.ey - 1)
                data[nm] = c * e
        out = SparsePoly()
        out._terms = data
        return out

    def subst(self, var: str, r: "SparsePoly") -> "SparsePoly":
        """Replace one variable by a polynomial, fully expanded.

        Horner evaluation over the substituted variable's exponents keeps the
        number of polynomial products proportional to the exponent range.
        """
        i = _var_index(var)
        layers: dict[int, SparsePoly] = {}
        for m, c in self._terms.items():
            e = m[i]
            rest = Monomial(0, m.ey) if i == 0 else Monomial(m.ex, 0)
            layer = layers.get(e)
            if layer is None:
                layer = SparsePoly()
                layer._terms = {}
                layers[e] = layer
            layer._terms[rest] = c
        if not layers:
            return _POLY_ZERO
        exps = sorted(layers, reverse=True)
        acc = layers[exps[0]]
        for prev, e in zip(exps, exps[1:]):
            acc = acc * r ** (prev - e) + layers[e]
        return acc * r ** exps[-1]

    def compose(self, px: "SparsePoly", py: "SparsePoly") -> "SparsePoly":
        """Simultaneous substitution x -> px, y -> py."""
        xpows = _power_table(px, {m.ex for m in self._terms})
        ypows = _power_table(py, {m.ey for m in self._terms})
        acc = _POLY_ZERO
        for m, c in self._terms.items():
            acc = acc + (xpows[m.ex] * ypows[m.ey]).scale(c)
        return acc

    def evaluate(self, vx: Scalar, vy: Scalar) -> Fraction:
        vx, vy = Fraction(vx), Fraction(vy)
        total = _ZERO
        for m, c in self._terms.items():
            total += c * vx**m.ex * vy**m.ey
        return total

    def coeffs_in_y(self) -> dict[int, dict[int, Fraction]]:
        """Group terms by y-exponent: {ey: {ex: coeff}}."""
        out: dict[int, dict[int, Fraction]] = {}
        for m, c in self._terms.items():
            out.setdefault(m.ey, {})[m.ex] = c
        return out

    # -- serialization -----------------------------------------------------

    def to_text(self, var_names: tuple[str, str] = ("x", "y")) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for m, c in self.terms():
            factors = []
            mag = abs(c)
            if mag != 1 or m.degree == 0:
                factors.append(format_rational(mag))
            for name, e in zip(var_names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    def to_json_dict(self, var_names: tuple[str, str] = ("x", "y")) -> dict:
        return {
            "vars": list(var_names),
            "terms": [
                {"e": [m.ex, m.ey], "c": f"{c.numerator}/{c.denominator}"}
                for m, c in self.terms()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SparsePoly":
        vars_ = data.get("vars")
        if not isinstance(vars_, list) or len(vars_) != 2:
            raise ValueError("polynomial JSON must carry exactly two variables")
        terms = []
        for entry in data.get("terms", []):
            e = entry["e"]
            terms.append(((int(e[0]), int(e[1])), Fraction(entry["c"])))
        return cls(terms)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"SparsePoly({self.to_text()!r})"


def _power_table(base: SparsePoly, exponents: set[int]) -> dict[int, SparsePoly]:
    table = {0: _POLY_ONE}
    top = max(exponents, default=0)
    prev = _POLY_ONE
    for e in range(1, top + 1):
        prev = prev * base
        table[e] = prev
    return table


def format_rational(q: Fraction) -> str:
    """Render a rational without a denominator when it is integral."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


_ZERO = Fraction(0)
_POLY_ZERO = SparsePoly()
_POLY_ONE = SparsePoly({(0, 0): 1})
_POLY_X = SparsePoly({(1, 0): 1})
_POLY_Y = SparsePoly({(0, 1): 1})


# -- parsing ---------------------------------------------------------------
#
# expr   := term (('+'|'-') term)*
# term   := factor ('*' factor)*
# factor := ('+'|'-')* power
# power  := atom ('^' non-negative-integer)?
# atom   := rational-literal | 'x' | 'y' | '(' expr ')'
#
# Rational literals are contiguous, e.g. 3 or 22/7.  Implicit multiplication
# is rejected: "2x" is a syntax error.

_NUM, _VAR, _OP, _LPAR, _RPAR, _END = range(6)


def _tokenize(text: str) -> list[tuple[int, object, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            num = int(text[start:i])
            if i < n and text[i] == "/" and i + 1 < n and text[i + 1].isdigit():
                i += 1
                dstart = i
                while i < n and text[i].isdigit():
                    i += 1
                den = int(text[dstart:i])
                if den == 0:
                    raise PolySyntaxError("zero denominator in rational literal", dstart)
                tokens.append((_NUM, Fraction(num, den), start))
            else:
                tokens.append((_NUM, Fraction(num), start))
            continue
        if ch in "xy":
            tokens.append((_VAR, ch, i))
            i += 1
            continue
        if ch in "+-*^":
            tokens.append((_OP, ch, i))
            i += 1
            continue
        if ch == "(":
            tokens.append((_LPAR, ch, i))
            i += 1
            continue
        if ch == ")":
            tokens.append((_RPAR, ch, i))
            i += 1
            continue
        raise PolySyntaxError(f"unexpected character {ch!r}", i)
    tokens.append((_END, None, n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str):
        raise PolySyntaxError(message, self.peek()[2])

    def parse(self) -> SparsePoly:
        node = self.expr()
        kind, _, pos = self.peek()
        if kind != _END:
            self.fail("unexpected trailing input")
        return node

    def expr(self) -> SparsePoly:
        node = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == _OP and val in "+-":
                self.advance()
                rhs = self.term()
                node = node + rhs if val == "+" else node - rhs
            else:
                return node

    def term(self) -> SparsePoly:
        node = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == _OP and val == "*":
                self.advance()
                node = node * self.factor()
            else:
                return node

    def factor(self) -> SparsePoly:
        sign = 1
        while True:
            kind, val, _ = self.peek()
            if kind == _OP and val in "+-":
                self.advance()
                if val == "-":
                    sign = -sign
            else:
                break
        node = self.power()
        return node if sign > 0 else -node

    def power(self) -> SparsePoly:
        node = self.atom()
        kind, val, _ = self.peek()
        if kind == _OP and val == "^":
            self.advance()
            kind, val, pos = self.peek()
            if kind == _OP and val == "-":
                raise NegativeExponent("exponent must be non-negative", pos)
            if kind != _NUM:
                self.fail("expected integer exponent after '^'")
            if val.denominator != 1:
                self.fail("exponent must be an integer")
            self.advance()
            node = node ** int(val)
        return node

    def atom(self) -> SparsePoly:
        kind, val, _ = self.peek()
        if kind == _NUM:
            self.advance()
            return SparsePoly.constant(val)
        if kind == _VAR:
            self.advance()
            return SparsePoly.variable(val)
        if kind == _LPAR:
            self.advance()
            node = self.expr()
            kind, _, _ = self.peek()
            if kind != _RPAR:
                self.fail("expected ')'")
            self.advance()
            return node
        self.fail("expected a number, variable, or '('")


def parse_poly(text: str) -> SparsePoly:
    """Parse polynomial text into canonical form.

    Raises PolySyntaxError (with position) on malformed input and
    NegativeExponent for a negative power.
    """
    return _Parser(text).parse()


def weighted_order(p: SparsePoly, wx: int, wy: int) -> int | float:
    """Module-level alias for SparsePoly.weighted_order."""
    return p.weighted_order(wx, wy)
