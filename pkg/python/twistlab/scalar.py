"""Exact scalars: the rationals and the cyclotomic fields Q(zeta_n).

Q(zeta_n) is stored as Q[x]/(Phi_n(x)) in the power basis 1, z, z^2, ...,
z^(phi(n)-1). The text form is

    [sign] term (sign term)*      term := INT | INT/INT | z^K | INT*z^K | INT/INT*z^K

printed with ascending powers of z, zero terms omitted and ``0`` for zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal, Union

import sympy
from sympy import QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.polyclasses import ANP

from .errors import DivisionByZero, FieldMismatch, ParseError

Number = Union[int, Fraction]


@lru_cache(maxsize=None)
def _cyclotomic_tables(n: int) -> tuple[int, tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """(degree, Phi_n coefficients low to high, x^k mod Phi_n for 0 <= k < n)."""
    x = sympy.Symbol("x")
    phi = [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs())]
    degree = len(phi) - 1
    assert degree == int(sympy.totient(n))
    powers = []
    current = [0] * degree
    current[0] = 1
    for _ in range(n):
        powers.append(tuple(current))
        top = current[-1]
        current = [0] + current[:-1]
        if top:
            current = [c - top * p for c, p in zip(current, phi[:-1])]
    return degree, tuple(phi), tuple(powers)


@lru_cache(maxsize=None)
def _sympy_domain(field: FieldSpec) -> Domain:
    if field.degree == 1:
        return QQ
    n = field.order
    domain = QQ.algebraic_field(sympy.exp(2 * sympy.pi * sympy.I / n))
    _, phi, _ = _cyclotomic_tables(n)
    if domain.mod.to_list() != [QQ(c) for c in reversed(phi)] or domain.ext.rep.to_list() != [QQ.one, QQ.zero]:
        raise FieldMismatch(f"sympy does not present Q(zeta_{n}) in the power basis of zeta_{n}")
    return domain


@dataclass(frozen=True)
class FieldSpec:
    kind: Literal["rational", "cyclotomic"] = "rational"
    order: int = 1

    def __post_init__(self):
        if self.kind == "rational":
            if self.order != 1:
                raise FieldMismatch("rational field takes no order")
        elif self.kind == "cyclotomic":
            if self.order < 2:
                raise FieldMismatch(f"cyclotomic order must be >= 2, got {self.order}")
        else:
            raise FieldMismatch(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> FieldSpec:
        return cls("rational", 1)

    @classmethod
    def cyclotomic(cls, n: int) -> FieldSpec:
        return cls("cyclotomic", n)

    @classmethod
    def from_string(cls, text: str) -> FieldSpec:
        """``rational`` or ``cyclotomic:N``."""
        text = text.strip()
        if text == "rational":
            return cls.rational()
        kind, _, order = text.partition(":")
        if kind != "cyclotomic" or not order.strip().isdigit():
            raise FieldMismatch(f"invalid field {text!r}; use 'rational' or 'cyclotomic:N'")
        return cls.cyclotomic(int(order))

    def __str__(self) -> str:
        return "rational" if self.kind == "rational" else f"cyclotomic:{self.order}"

    @property
    def degree(self) -> int:
        if self.kind == "rational":
            return 1
        return _cyclotomic_tables(self.order)[0]

    @property
    def zero(self) -> Scalar:
        return _constant(self, Fraction(0))

    @property
    def one(self) -> Scalar:
        return _constant(self, Fraction(1))

    @property
    def domain(self) -> Domain:
        """The sympy domain that linear algebra over this field runs in."""
        return _sympy_domain(self)

    def from_domain(self, value) -> Scalar:
        domain = self.domain
        if domain is QQ:
            return _constant(self, _fraction(value))
        rep = [_fraction(c) for c in reversed(value.to_list())]
        return Scalar(self, tuple(rep) + (Fraction(0),) * (self.degree - len(rep)))

    def zeta_power(self, k: int) -> Scalar:
        if self.kind == "rational":
            raise FieldMismatch("z is not defined over the rationals")
        _, _, powers = _cyclotomic_tables(self.order)
        return Scalar(self, tuple(Fraction(c) for c in powers[k % self.order]))

    def __call__(self, value: Scalar | Number | str) -> Scalar:
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"scalar over {value.field} used over {self}")
            return value
        if isinstance(value, str):
            return scalar_parse(value, self)
        return _constant(self, Fraction(value))


def _fraction(value) -> Fraction:
    return Fraction(int(QQ.numer(value)), int(QQ.denom(value)))


@lru_cache(maxsize=1024)
def _constant(field: FieldSpec, value: Fraction) -> Scalar:
    return Scalar(field, (value,) + (Fraction(0),) * (field.degree - 1))


class Scalar:
    """An immutable element of a FieldSpec."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FieldSpec, coeffs: tuple[Fraction, ...]):
        if len(coeffs) != field.degree:
            raise FieldMismatch(f"{field} scalars have {field.degree} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _coerce(self, other: object) -> Scalar | None:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine {self.field} with {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return _constant(self.field, Fraction(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> Scalar:
        return Scalar(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.field.degree == 1:
            return Scalar(self.field, (self.coeffs[0] * o.coeffs[0],))
        n = self.field.order
        acc = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        acc[(i + j) % n] += a * b
        return _reduce(self.field, acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> Scalar:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> Scalar:
        if not self:
            raise DivisionByZero("inverse of zero")
        if self.field.degree == 1:
            return Scalar(self.field, (1 / self.coeffs[0],))
        domain = self.field.domain
        return self.field.from_domain(domain.revert(self.to_domain()))

    def to_domain(self):
        """This scalar as an element of ``field.domain``."""
        domain = self.field.domain
        if domain is QQ:
            c = self.coeffs[0]
            return QQ(c.numerator, c.denominator)
        rep = [QQ(c.numerator, c.denominator) for c in reversed(self.coeffs)]
        while rep and not rep[0]:
            rep.pop(0)
        return domain.convert(ANP(rep, domain.mod.to_list(), QQ))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if not any(self.coeffs[1:]):
                h = hash(self.coeffs[0])
            else:
                h = hash((self.field, self.coeffs))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def as_fraction(self) -> Fraction | None:
        """The value as a rational number, if it is one."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def __str__(self) -> str:
        return scalar_print(self)

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r}, {self.field})"


def _reduce(field: FieldSpec, acc: list[Fraction]) -> Scalar:
    degree, _, powers = _cyclotomic_tables(field.order)
    out = [Fraction(0)] * degree
    for k, c in enumerate(acc):
        if c:
            if k < degree:
                out[k] += c
            else:
                for j, p in enumerate(powers[k % field.order]):
                    if p:
                        out[j] += c * p
    return Scalar(field, tuple(out))


def scalar_arith(op: Literal["add", "sub", "mul", "neg"], a: Scalar, b: Scalar | None = None) -> Scalar:
    if op == "neg":
        return -a
    if b is None:
        raise TypeError(f"{op} needs two operands")
    if a.field != b.field:
        raise FieldMismatch(f"cannot combine {a.field} with {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def scalar_inv(a: Scalar) -> Scalar:
    return a.inverse()


def scalar_print(a: Scalar) -> str:
    terms = []
    for k, c in enumerate(a.coeffs):
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
        elif c == 1:
            terms.append(f"z^{k}")
        elif c == -1:
            terms.append(f"-z^{k}")
        else:
            terms.append(f"{c}*z^{k}")
    if not terms:
        return "0"
    out = terms[0]
    for term in terms[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


_MINUS = ("-", "−")


class _Parser:
    def __init__(self, text: str, field: FieldSpec):
        self.text = text
        self.field = field
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, len(self.text[: self.pos].encode("utf-8")))

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])

    def zpow(self) -> Scalar:
        if self.field.kind == "rational":
            raise FieldMismatch(f"'z' used over the rational field in {self.text!r}")
        self.pos += 1
        k = 1
        if self.peek() == "^":
            self.pos += 1
            k = self.integer()
        return self.field.zeta_power(k)

    def term(self) -> Scalar:
        c = self.peek()
        if c == "z":
            return self.zpow()
        if not c.isdigit():
            raise self.error("expected a number or 'z'")
        value = Fraction(self.integer())
        if self.peek() == "/":
            self.pos += 1
            den = self.integer()
            if den == 0:
                raise self.error("zero denominator")
            value /= den
        coeff = _constant(self.field, value)
        if self.peek() == "*":
            self.pos += 1
            if self.peek() != "z":
                raise self.error("expected 'z' after '*'")
            return coeff * self.zpow()
        return coeff

    def parse(self) -> Scalar:
        total = self.field.zero
        sign = 1
        if self.peek() in _MINUS:
            sign = -1
            self.pos += 1
        elif self.peek() == "+":
            self.pos += 1
        while True:
            t = self.term()
            total = total + t if sign > 0 else total - t
            c = self.peek()
            if c == "":
                return total
            if c in _MINUS:
                sign = -1
            elif c == "+":
                sign = 1
            else:
                raise self.error(f"unexpected character {c!r}")
            self.pos += 1


def scalar_parse(text: str, field: FieldSpec) -> Scalar:
    return _Parser(text, field).parse()
