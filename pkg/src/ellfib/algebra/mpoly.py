"""Sparse multivariate polynomials over a finite field."""

from __future__ import annotations

from .field import FiniteField
from ..errors import FieldError


class MPoly:
    """Polynomial in named variables stored as ``{exponent tuple: coefficient}``."""

    __slots__ = ("field", "vars", "terms")

    def __init__(self, field: FiniteField, variables, terms=None):
        self.field = field
        self.vars = tuple(variables)
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    # -- constructors ---------------------------------------------------
    @classmethod
    def var(cls, field, variables, name):
        variables = tuple(variables)
        e = tuple(1 if v == name else 0 for v in variables)
        if sum(e) != 1:
            raise KeyError(name)
        return cls(field, variables, {e: 1})

    @classmethod
    def constant(cls, field, variables, c):
        return cls(field, variables, {(0,) * len(tuple(variables)): c})

    def new(self, terms) -> "MPoly":
        return MPoly(self.field, self.vars, terms)

    def gens(self) -> list["MPoly"]:
        return [MPoly.var(self.field, self.vars, v) for v in self.vars]

    # -- properties -----------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def order(self) -> float | int:
        """Lowest total degree of a term (``inf`` for zero)."""
        return min((sum(e) for e in self.terms), default=float("inf"))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def __eq__(self, other):
        if isinstance(other, int):
            other = MPoly.constant(self.field, self.vars, other)
        return (
            isinstance(other, MPoly)
            and self.field == other.field
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            factors = []
            for v, k in zip(self.vars, e):
                if k == 1:
                    factors.append(v)
                elif k > 1:
                    factors.append(f"{v}^{k}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.field != self.field or other.vars != self.vars:
                raise FieldError("mixed rings in polynomial arithmetic")
            return other
        if isinstance(other, int):
            return MPoly.constant(self.field, self.vars, self.field.check(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = F.add(out.get(e, 0), c)
        return self.new(out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return self.new({e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def mul(self, other, trunc: int | None = None) -> "MPoly":
        """Product, dropping terms of total degree ``>= trunc`` when given."""
        other = self._coerce(other)
        F = self.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if trunc is not None and d1 + sum(e2) >= trunc:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = F.add(out.get(e, 0), F.mul(c1, c2))
        return self.new(out)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.mul(other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MPoly.constant(self.field, self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def pow_trunc(self, k: int, trunc: int) -> "MPoly":
        out = MPoly.constant(self.field, self.vars, 1)
        for _ in range(k):
            out = out.mul(self, trunc)
        return out

    def scale(self, c: int) -> "MPoly":
        F = self.field
        return self.new({e: F.mul(c, x) for e, x in self.terms.items()})

    def truncate(self, n: int) -> "MPoly":
        return self.new({e: c for e, c in self.terms.items() if sum(e) < n})

    def diff(self, i: int) -> "MPoly":
        """Partial derivative in variable ``i`` with characteristic-p rules."""
        F = self.field
        out: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            if k % F.p == 0:
                continue
            e2 = e[:i] + (k - 1,) + e[i + 1:]
            out[e2] = F.add(out.get(e2, 0), F.mul(F.from_prime(k), c))
        return self.new(out)

    def frobenius_power(self) -> "MPoly":
        """``f^p``, computed termwise (valid in characteristic p)."""
        F = self.field
        p = F.p
        return self.new(
            {tuple(p * x for x in e): F.frobenius(c) for e, c in self.terms.items()}
        )

    def substitute(self, values: dict[str, "MPoly"], trunc: int | None = None) -> "MPoly":
        """Replace variables by polynomials (possibly in another ring)."""
        sample = next(iter(values.values()))
        ring_one = MPoly.constant(sample.field, sample.vars, 1)
        out = ring_one.new({})
        for e, c in self.terms.items():
            term = ring_one.scale(c)
            for v, k in zip(self.vars, e):
                if k:
                    base = values[v] if v in values else MPoly.var(sample.field, sample.vars, v)
                    term = term.mul(base.pow_trunc(k, trunc) if trunc else base ** k, trunc)
            out = out + term
        return out

    def evaluate(self, point: dict[str, int]) -> int:
        F = self.field
        acc = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(self.vars, e):
                if k:
                    term = F.mul(term, F.pow(point[v], k))
            acc = F.add(acc, term)
        return acc

    def vanishes_on_line(self, direction) -> bool:
        """Whether ``f(s * direction)`` is identically zero in ``s``."""
        F = self.field
        by_degree: dict[int, int] = {}
        for e, c in self.terms.items():
            val = c
            for x, k in zip(direction, e):
                if k:
                    val = F.mul(val, F.pow(x, k))
            d = sum(e)
            by_degree[d] = F.add(by_degree.get(d, 0), val)
        return not any(by_degree.values())

    def monomials(self):
        return sorted(self.terms)

    def map_coeffs(self, phi, field) -> "MPoly":
        return MPoly(field, self.vars, {e: phi(c) for e, c in self.terms.items()})
