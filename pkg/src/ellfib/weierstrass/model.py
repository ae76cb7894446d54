"""Weierstrass models ``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`` over k[t]."""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil

from ..algebra.field import FiniteField
from ..algebra.parse import parse_poly
from ..algebra.poly import Polynomial
from ..errors import FieldError, ParseError, SingularModelError

INDICES = (1, 2, 3, 4, 6)
NAMES = ("a1", "a2", "a3", "a4", "a6")


def _c(F: FiniteField, n: int) -> int:
    """The image of the integer ``n`` in ``F``."""
    return F.from_prime(n % F.p)


def b_invariants(a):
    """``(b2, b4, b6, b8)`` from the integral formulas, reduced into the field.

    Works for any tuple of ring elements supporting ``+``, ``*`` and scaling.
    """
    a1, a2, a3, a4, a6 = a
    F = a1.field
    b2 = a1 * a1 + a2.scale(_c(F, 4))
    b4 = a4.scale(_c(F, 2)) + a1 * a3
    b6 = a3 * a3 + a6.scale(_c(F, 4))
    b8 = (
        a1 * a1 * a6
        + (a2 * a6).scale(_c(F, 4))
        - a1 * a3 * a4
        + a2 * a3 * a3
        - a4 * a4
    )
    return b2, b4, b6, b8


def discriminant_of(a) -> Polynomial:
    b2, b4, b6, b8 = b_invariants(a)
    F = b2.field
    return (
        -(b2 * b2 * b8)
        - (b4 * b4 * b4).scale(_c(F, 8))
        - (b6 * b6).scale(_c(F, 27))
        + (b2 * b4 * b6).scale(_c(F, 9))
    )


def c4_of(a) -> Polynomial:
    b2, b4, _, _ = b_invariants(a)
    return b2 * b2 - b4.scale(_c(b2.field, 24))


@dataclass(frozen=True)
class Place:
    """A closed point of P^1: a field element, or ``None`` for infinity."""

    alpha: int | None
    field: FiniteField

    @property
    def is_infinite(self) -> bool:
        return self.alpha is None

    @property
    def label(self) -> str:
        return "inf" if self.alpha is None else str(self.alpha)

    def __str__(self):
        return self.label

    @classmethod
    def parse(cls, text: str, field: FiniteField) -> "Place":
        text = text.strip().lower()
        if text in ("inf", "infinity", "oo"):
            return cls(None, field)
        if not text.isdigit():
            raise ParseError(f"bad place {text!r}")
        a = int(text)
        if a >= field.order:
            raise ParseError(f"place {a} is not an element of {field!r}")
        return cls(a, field)


@dataclass(frozen=True)
class JInvariant:
    """``j = c4^3 / Δ``; ``zero`` is set when ``c4`` vanishes identically."""

    numerator: Polynomial
    denominator: Polynomial

    @property
    def zero(self) -> bool:
        return not self.numerator

    def __str__(self):
        if self.zero:
            return "0"
        g = self.numerator.gcd(self.denominator)
        num, den = self.numerator // g, self.denominator // g
        lc = den.lead()
        F = num.field
        num, den = num.scale(F.inv(lc)), den.scale(F.inv(lc))
        return f"({num})/({den})" if den.degree > 0 else f"{num}"


@dataclass(frozen=True)
class WeierstrassModel:
    """Five coefficients ``a1, a2, a3, a4, a6`` in k[t]."""

    field: FiniteField
    a: tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.a) != 5:
            raise ParseError("a Weierstrass model has five coefficients")
        coeffs = []
        for c in self.a:
            if isinstance(c, int):
                c = Polynomial.constant(self.field, c)
            if c.field != self.field:
                raise FieldError("coefficients lie in different fields")
            coeffs.append(Polynomial(self.field, c.coeffs, "t"))
        object.__setattr__(self, "a", tuple(coeffs))

    @classmethod
    def from_strings(cls, field: FiniteField, **kw) -> "WeierstrassModel":
        """``WeierstrassModel.from_strings(GF2, a3="t^3", a6="t")``; missing ones are zero."""
        unknown = set(kw) - set(NAMES)
        if unknown:
            raise ParseError(f"unknown coefficient(s) {sorted(unknown)}")
        return cls(field, tuple(parse_poly(kw.get(n, "0"), field) for n in NAMES))

    a1 = property(lambda self: self.a[0])
    a2 = property(lambda self: self.a[1])
    a3 = property(lambda self: self.a[2])
    a4 = property(lambda self: self.a[3])
    a6 = property(lambda self: self.a[4])

    def b_invariants(self):
        return b_invariants(self.a)

    def discriminant(self) -> Polynomial:
        return discriminant_of(self.a)

    def check_nonsingular(self) -> Polynomial:
        d = self.discriminant()
        if not d:
            raise SingularModelError("discriminant vanishes: not an elliptic fibration")
        return d

    def j_invariant(self) -> JInvariant:
        c4 = c4_of(self.a)
        return JInvariant(c4 * c4 * c4, self.check_nonsingular())

    def frobenius_pullback(self) -> "WeierstrassModel":
        """Base change along ``t -> t^p``."""
        p = self.field.p
        return WeierstrassModel(self.field, tuple(c.substitute_power(p) for c in self.a))

    def embed(self, field: FiniteField) -> "WeierstrassModel":
        if field == self.field:
            return self
        phi = self.field.embedding(field)
        return WeierstrassModel(field, tuple(c.map_coeffs(phi, field) for c in self.a))

    def scale_coordinates(self, u: Polynomial) -> "WeierstrassModel":
        """The model obtained from ``(x, y) -> (u^2 x, u^3 y)``: ``a_i -> u^i a_i``."""
        return WeierstrassModel(self.field, tuple(c * u ** i for c, i in zip(self.a, INDICES)))

    def infinity_weight(self) -> int:
        """``e = ⌈max deg(a_i)/i⌉``, the twist used in the chart at infinity."""
        return max((ceil(c.degree / i) for c, i in zip(self.a, INDICES) if c), default=0)

    def local_coefficients(self, place: Place) -> tuple[Polynomial, ...]:
        """Coefficients in a uniformiser at ``place`` (``t - α``, or ``s = 1/t``)."""
        if place.field != self.field:
            raise FieldError("place and model lie in different fields")
        if place.alpha is None:
            e = self.infinity_weight()
            return tuple(c.reverse(i * e) if c else c for c, i in zip(self.a, INDICES))
        if place.alpha == 0:
            return self.a
        return tuple(c.translate(place.alpha) for c in self.a)

    # -- text format ----------------------------------------------------------
    def format(self) -> str:
        lines = [f"p = {self.field.p}", f"m = {self.field.m}"]
        if self.field.m > 1:
            lines.append(f"modulus = {self.field.modulus}")
        for n, c in zip(NAMES, self.a):
            lines.append(f"{n} = {c if c else 0}")
        return "\n".join(lines) + "\n"


def parse_wsurf(text: str) -> WeierstrassModel:
    """Read a ``.wsurf`` file: ``p``, ``m``, optional ``modulus``, then ``a1 .. a6``."""
    data: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected 'key = value'")
        k, v = (s.strip() for s in line.split("=", 1))
        if k in data:
            raise ParseError(f"line {lineno}: duplicate key {k!r}")
        data[k] = v
    allowed = {"p", "m", "modulus", *NAMES}
    extra = set(data) - allowed
    if extra:
        raise ParseError(f"unknown key(s): {', '.join(sorted(extra))}")
    try:
        p = int(data.get("p", "2"))
        m = int(data.get("m", "1"))
        modulus = int(data["modulus"]) if "modulus" in data else None
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    field = FiniteField(p, m, modulus)
    return WeierstrassModel(field, tuple(parse_poly(data.get(n, "0"), field) for n in NAMES))
