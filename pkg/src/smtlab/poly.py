"""Exact homogeneous polynomials over Q and over Q(z).

Monomials are plain tuples of exponents.  ``Poly`` carries ``Fraction``
coefficients, ``MovingPoly`` carries ``RationalFunction`` coefficients in the
single moving parameter ``z``.  Both are immutable and homogeneous; the zero
polynomial keeps an explicit degree tag.
"""

from __future__ import annotations

import enum
import re
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Monomial = Tuple[int, ...]
Number = Union[int, Fraction]

PARAMETER = "z"


class Order(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def grevlex_key(m: Monomial) -> tuple:
    """Sort key realising grevlex with x0 > x1 > ... > xN."""
    return (sum(m), tuple(-e for e in reversed(m)))


def grevlex_compare(a: Monomial, b: Monomial) -> Order:
    if len(a) != len(b):
        raise ValueError(f"monomial length mismatch: {len(a)} != {len(b)}")
    ka, kb = grevlex_key(a), grevlex_key(b)
    if ka > kb:
        return Order.GREATER
    if ka < kb:
        return Order.LESS
    return Order.EQUAL


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_of_degree(nvars: int, degree: int) -> list:
    """All exponent vectors of the given total degree, grevlex descending."""
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(prefix + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + (e,), left - e, slots - 1)

    if nvars == 0:
        return [()] if degree == 0 else []
    rec((), degree, nvars)
    out.sort(key=grevlex_key, reverse=True)
    return out


# ---------------------------------------------------------------------------
# univariate polynomials in z


class UPoly:
    """Dense univariate polynomial in z with rational coefficients (low to high)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c: Number) -> "UPoly":
        return cls([c])

    @classmethod
    def z(cls) -> "UPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> "UPoly":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        return UPoly(c / lc for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UPoly.constant(other)
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("UPoly", self.coeffs))

    def __repr__(self):
        return f"UPoly({self})"

    def __str__(self):
        return format_upoly(self)

    def __neg__(self):
        return UPoly(-c for c in self.coeffs)

    def __add__(self, other):
        other = _as_upoly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_upoly(other))

    def __rsub__(self, other):
        return _as_upoly(other) - self

    def __mul__(self, other):
        other = _as_upoly(other)
        if not self.coeffs or not other.coeffs:
            return UPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = UPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: "UPoly") -> Tuple["UPoly", "UPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        lc = other.lead
        for k in range(len(rem) - dq - 1, -1, -1):
            c = rem[k + dq] / lc
            quot[k] = c
            if c:
                for j, oc in enumerate(other.coeffs):
                    rem[k + j] -= c * oc
        return UPoly(quot), UPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(_as_upoly(other))[0]

    def __mod__(self, other):
        return self.divmod(_as_upoly(other))[1]

    def derivative(self) -> "UPoly":
        return UPoly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(x, (int, Fraction)) else float(c))
        return acc


def _as_upoly(x) -> UPoly:
    if isinstance(x, UPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return UPoly.constant(x)
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial in z")


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd; gcd(0, 0) is 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(p: UPoly) -> list:
    """Yun's algorithm: returns [(s_k, k)] with p = lc * prod s_k^k, s_k monic squarefree."""
    if p.degree < 1:
        return []
    out = []
    a = p.monic()
    b = a.derivative()
    c = upoly_gcd(a, b)
    w = a // c
    y = b // c
    k = 1
    while w.degree > 0:
        z = y - w.derivative()
        g = upoly_gcd(w, z)
        if g.degree > 0:
            out.append((g, k))
        w = w // g
        y = z // g
        k += 1
    return out


def format_upoly(p: UPoly, name: str = PARAMETER) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = _format_fraction(a)
        else:
            power = name if i == 1 else f"{name}^{i}"
            body = power if a == 1 else f"{_format_fraction(a)}*{power}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def _format_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# rational functions in z


class PoleError(ZeroDivisionError):
    """A rational function was evaluated at one of its poles."""


class RationalFunction:
    """Reduced quotient num/den of polynomials in z, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_upoly(num)
        den = UPoly.constant(1) if den is None else _as_upoly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = UPoly(), UPoly.constant(1)
            return
        g = upoly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        lc = den.lead
        self.num = UPoly(c / lc for c in num.coeffs)
        self.den = den.monic()

    @classmethod
    def constant(cls, c: Number) -> "RationalFunction":
        return cls(UPoly.constant(c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} depends on {PARAMETER}")
        return self.num.coeffs[0] if self.num.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.constant(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RF", self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.den.degree == 0:
            return format_upoly(self.num)
        return f"({format_upoly(self.num)})/({format_upoly(self.den)})"

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __add__(self, other):
        other = as_ratfun(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-as_ratfun(other))

    def __rsub__(self, other):
        return as_ratfun(other) - self

    def __mul__(self, other):
        other = as_ratfun(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_ratfun(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return as_ratfun(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RationalFunction.constant(1) / (self ** -k)
        return RationalFunction(self.num ** k, self.den ** k)

    def __call__(self, z0: Number) -> Fraction:
        z0 = Fraction(z0)
        d = self.den(z0)
        if d == 0:
            raise PoleError(f"{self} has a pole at {PARAMETER}={z0}")
        return self.num(z0) / d


def as_ratfun(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, UPoly):
        return RationalFunction(x)
    if isinstance(x, (int, Fraction)):
        return RationalFunction.constant(x)
    raise TypeError(f"cannot use {type(x).__name__} as a rational function")


# ---------------------------------------------------------------------------
# homogeneous polynomials


class _Homogeneous:
    __slots__ = ("terms", "degree", "nvars")

    _zero = Fraction(0)

    @classmethod
    def _coerce(cls, c):
        raise NotImplementedError

    def __init__(self, terms: Mapping[Monomial, object], degree: int | None = None,
                 nvars: int | None = None):
        clean: Dict[Monomial, object] = {}
        for m, c in terms.items():
            m = tuple(int(e) for e in m)
            c = self._coerce(c)
            if c == 0:
                continue
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
            clean[m] = clean[m] + c if m in clean else c
            if clean[m] == 0:
                del clean[m]
        lengths = {len(m) for m in clean}
        if nvars is None:
            if len(lengths) != 1:
                raise ValueError("cannot infer the variable count of an empty polynomial")
            nvars = lengths.pop()
        elif lengths - {nvars}:
            raise ValueError(f"monomial lengths {sorted(lengths)} do not match nvars={nvars}")
        degrees = {sum(m) for m in clean}
        if len(degrees) > 1:
            raise ValueError(f"polynomial is not homogeneous (degrees {sorted(degrees)})")
        if degrees:
            d = degrees.pop()
            if degree is not None and degree != d:
                raise ValueError(f"declared degree {degree} but terms have degree {d}")
            degree = d
        elif degree is None:
            raise ValueError("zero polynomial needs an explicit degree")
        self.terms = clean
        self.degree = int(degree)
        self.nvars = int(nvars)

    # construction helpers
    @classmethod
    def zero(cls, nvars: int, degree: int):
        return cls({}, degree=degree, nvars=nvars)

    @classmethod
    def variable(cls, i: int, nvars: int):
        m = [0] * nvars
        m[i] = 1
        return cls({tuple(m): 1}, nvars=nvars)

    @classmethod
    def monomial(cls, m: Monomial, coeff=1):
        return cls({tuple(m): coeff}, nvars=len(m), degree=sum(m))

    def is_zero(self) -> bool:
        return not self.terms

    def monomials(self) -> list:
        return sorted(self.terms, key=grevlex_key, reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=grevlex_key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def coefficient(self, m: Monomial):
        return self.terms.get(tuple(m), self._zero)

    def _check_compatible(self, other):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} != {other.nvars}")

    def _promote(self, other):
        if isinstance(other, _Homogeneous):
            if isinstance(self, MovingPoly) or isinstance(other, MovingPoly):
                return MovingPoly
            return Poly
        return type(self)

    def __add__(self, other):
        if not isinstance(other, _Homogeneous):
            return NotImplemented
        self._check_compatible(other)
        if self.degree != other.degree:
            raise ValueError(f"cannot add polynomials of degrees {self.degree} and {other.degree}")
        cls = self._promote(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return cls(terms, degree=self.degree, nvars=self.nvars)

    def __neg__(self):
        return type(self)({m: -c for m, c in self.terms.items()}, degree=self.degree, nvars=self.nvars)

    def __sub__(self, other):
        if not isinstance(other, _Homogeneous):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, _Homogeneous):
            self._check_compatible(other)
            cls = self._promote(other)
            terms: Dict[Monomial, object] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = mono_mul(m1, m2)
                    v = c1 * c2
                    terms[m] = terms[m] + v if m in terms else v
            return cls(terms, degree=self.degree + other.degree, nvars=self.nvars)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, _Homogeneous):
            return NotImplemented
        return self.scale(other)

    def __pow__(self, k: int):
        result = type(self)({(0,) * self.nvars: 1}, nvars=self.nvars, degree=0)
        for _ in range(k):
            result = result * self
        return result

    def scale(self, s):
        if isinstance(s, (RationalFunction, UPoly)) and not isinstance(self, MovingPoly):
            return MovingPoly(self.terms, degree=self.degree, nvars=self.nvars).scale(s)
        return type(self)({m: c * s for m, c in self.terms.items()}, degree=self.degree, nvars=self.nvars)

    def shift(self, m: Monomial):
        """Multiply by the monomial ``m``."""
        return type(self)({mono_mul(k, m): c for k, c in self.terms.items()},
                          degree=self.degree + sum(m), nvars=self.nvars)

    def __eq__(self, other):
        if not isinstance(other, _Homogeneous):
            return NotImplemented
        return (self.nvars == other.nvars and self.degree == other.degree
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        names = [f"x{i}" for i in range(self.nvars)]
        return f"{type(self).__name__}({format_poly(self, names)!r}, degree={self.degree})"


class Poly(_Homogeneous):
    """Homogeneous polynomial with rational coefficients."""

    __slots__ = ()

    @classmethod
    def _coerce(cls, c):
        if isinstance(c, RationalFunction):
            return c.constant_value()
        return Fraction(c)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading_coefficient())

    def to_moving(self) -> "MovingPoly":
        return MovingPoly(self.terms, degree=self.degree, nvars=self.nvars)


class MovingPoly(_Homogeneous):
    """Homogeneous polynomial whose coefficients are rational functions of z."""

    __slots__ = ()

    _zero = RationalFunction.constant(0)

    @classmethod
    def _coerce(cls, c):
        return as_ratfun(c)

    def is_constant(self) -> bool:
        return all(c.is_constant() for c in self.terms.values())

    def to_fixed(self) -> Poly:
        """The same polynomial as a ``Poly``; fails if any coefficient depends on z."""
        return Poly({m: c.constant_value() for m, c in self.terms.items()},
                    degree=self.degree, nvars=self.nvars)

    def evaluate(self, z0: Number) -> Poly:
        return evaluate_moving(self, z0)


def as_moving(p) -> MovingPoly:
    if isinstance(p, MovingPoly):
        return p
    if isinstance(p, Poly):
        return p.to_moving()
    raise TypeError(f"expected a polynomial, got {type(p).__name__}")


def evaluate_moving(q, z0: Number) -> Poly:
    """Specialise the moving coefficients at ``z = z0``."""
    if isinstance(q, Poly):
        return q
    terms = {}
    for m, c in q.terms.items():
        try:
            terms[m] = c(z0)
        except PoleError:
            raise PoleError(f"coefficient {c} of monomial {m} has a pole at {PARAMETER}={z0}") from None
    return Poly(terms, degree=q.degree, nvars=q.nvars)


def poly_arith(op: str, a: _Homogeneous, b) -> _Homogeneous:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown operation {op!r}")


def format_poly(p: _Homogeneous, variables: Sequence[str]) -> str:
    """Render in the textual grammar accepted by :func:`parse_poly`."""
    if p.is_zero():
        return "0"
    pieces = []
    for m in p.monomials():
        c = p.terms[m]
        mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(variables, m) if e)
        if isinstance(c, RationalFunction) and not c.is_constant():
            pieces.append(("+", f"({c})" + (f"*{mono}" if mono else "")))
            continue
        if isinstance(c, RationalFunction):
            c = c.constant_value()
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = _format_fraction(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_fraction(a)}*{mono}"
        pieces.append((sign, body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# parser


class PolyParseError(ValueError):
    """Base class for parse failures; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class PolySyntaxError(PolyParseError):
    pass


class UnknownVariableError(PolyParseError):
    pass


class NonHomogeneousError(PolyParseError):
    pass


class ZeroDenominatorError(PolyParseError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None or mt.end() == pos:
            break
        if mt.group(1):
            tokens.append(("INT", int(mt.group(1)), mt.start(1)))
        elif mt.group(2):
            tokens.append(("NAME", mt.group(2), mt.start(2)))
        elif mt.group(3):
            ch = mt.group(3)
            if ch not in "+-*/^()":
                raise PolySyntaxError(f"unexpected character {ch!r}", mt.start(3))
            tokens.append((ch, ch, mt.start(3)))
        pos = mt.end()
    tokens.append(("EOF", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.vars = {v: i for i, v in enumerate(variables)}
        self.nvars = len(variables)
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def take(self, kind=None):
        t = self.tok
        if kind is not None and t[0] != kind:
            want = "end of input" if kind == "EOF" else repr(kind)
            got = "end of input" if t[0] == "EOF" else repr(t[1])
            raise PolySyntaxError(f"expected {want}, found {got}", t[2])
        self.i += 1
        return t

    # polynomial level
    def parse(self):
        terms = []
        sign = 1
        if self.tok[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        terms.append(self.term(sign))
        while self.tok[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            terms.append(self.term(sign))
        self.take("EOF")
        degrees = {}
        for start, mono, _ in terms:
            degrees.setdefault(sum(mono), start)
        if len(degrees) > 1:
            first, *rest = sorted(degrees.items(), key=lambda kv: kv[1])
            raise NonHomogeneousError(
                f"polynomial is not homogeneous: degree {first[0]} and degree {rest[0][0]}",
                rest[0][1])
        acc: Dict[Monomial, RationalFunction] = {}
        for _, mono, coeff in terms:
            acc[mono] = acc[mono] + coeff if mono in acc else coeff
        degree = next(iter(degrees))
        return MovingPoly(acc, degree=degree, nvars=self.nvars)

    def term(self, sign):
        start = self.tok[2]
        coeff = RationalFunction.constant(sign)
        exps = [0] * self.nvars
        kind = self.tok[0]
        if kind == "INT":
            coeff = coeff * self.rational_literal()
            if self.tok[0] != "*":
                return start, tuple(exps), coeff
            self.take("*")
            self.factor(exps)
        elif kind == "(":
            self.take("(")
            coeff = coeff * self.rexpr()
            self.take(")")
            if self.tok[0] != "*":
                return start, tuple(exps), coeff
            self.take("*")
            self.factor(exps)
        else:
            self.factor(exps)
        while self.tok[0] == "*":
            self.take("*")
            self.factor(exps)
        return start, tuple(exps), coeff

    def rational_literal(self) -> Fraction:
        num = self.take("INT")[1]
        if self.tok[0] == "/":
            slash = self.take("/")
            t = self.take("INT")
            if t[1] == 0:
                raise ZeroDenominatorError("zero denominator in coefficient", slash[2])
            return Fraction(num, t[1])
        return Fraction(num)

    def factor(self, exps):
        t = self.tok
        if t[0] != "NAME":
            got = "end of input" if t[0] == "EOF" else repr(t[1])
            raise PolySyntaxError(f"expected a variable, found {got}", t[2])
        self.take()
        if t[1] not in self.vars:
            raise UnknownVariableError(f"unknown variable {t[1]!r}", t[2])
        power = 1
        if self.tok[0] == "^":
            self.take("^")
            power = self.take("INT")[1]
        exps[self.vars[t[1]]] += power

    # coefficient level: rational functions in z
    def rexpr(self) -> RationalFunction:
        sign = 1
        if self.tok[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.rterm() * sign
        while self.tok[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.rterm()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def rterm(self) -> RationalFunction:
        acc = self.rpow()
        while self.tok[0] in ("*", "/"):
            op = self.take()
            rhs = self.rpow()
            if op[0] == "*":
                acc = acc * rhs
            else:
                if rhs.is_zero():
                    raise ZeroDenominatorError("division by zero in coefficient", op[2])
                acc = acc / rhs
        return acc

    def rpow(self) -> RationalFunction:
        base = self.ratom()
        if self.tok[0] == "^":
            self.take("^")
            base = base ** self.take("INT")[1]
        return base

    def ratom(self) -> RationalFunction:
        t = self.tok
        if t[0] == "INT":
            self.take()
            return RationalFunction.constant(t[1])
        if t[0] == "NAME":
            self.take()
            if t[1] != PARAMETER:
                raise UnknownVariableError(
                    f"unknown name {t[1]!r} in coefficient (only {PARAMETER!r} is allowed)", t[2])
            return RationalFunction(UPoly.z())
        if t[0] == "(":
            self.take("(")
            v = self.rexpr()
            self.take(")")
            return v
        got = "end of input" if t[0] == "EOF" else repr(t[1])
        raise PolySyntaxError(f"expected a coefficient expression, found {got}", t[2])


def parse_poly(text: str, variables: Sequence[str]) -> MovingPoly:
    """Parse ``text`` into a homogeneous polynomial over the given variables.

    Coefficients are integers, ``int/uint`` fractions, or a parenthesised
    rational function of ``z``; there is no implicit multiplication.
    """
    variables = list(variables)
    if not variables:
        raise ValueError("variable list must be nonempty")
    if len(set(variables)) != len(variables):
        raise ValueError(f"variable names must be distinct: {variables}")
    if PARAMETER in variables:
        raise ValueError(f"{PARAMETER!r} is reserved for the moving parameter")
    return _Parser(text, variables).parse()


def parse_fixed(text: str, variables: Sequence[str]) -> Poly:
    """Like :func:`parse_poly` but insists on constant coefficients."""
    q = parse_poly(text, variables)
    if not q.is_constant():
        raise PolyParseError(f"{text!r} has coefficients depending on {PARAMETER}")
    return q.to_fixed()


def parse_upoly(text: str) -> UPoly:
    """Parse a polynomial in z, e.g. ``"3/2*z^2 - z + 1"``."""
    p = _Parser(text, [])
    rf = p.rexpr()
    p.take("EOF")
    if rf.den.degree > 0:
        raise PolyParseError(f"{text!r} is not a polynomial in {PARAMETER}")
    return UPoly(c / rf.den.lead for c in rf.num.coeffs)


def lcm_int(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out
