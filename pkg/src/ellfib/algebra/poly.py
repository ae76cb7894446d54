"""Univariate polynomials over a finite field."""

from __future__ import annotations

from .field import FiniteField
from ..errors import FieldError

INF_DEGREE = -1  # degree of the zero polynomial


class Polynomial:
    """Immutable polynomial in one variable, constant term first.

    Integers appearing in arithmetic are read as field elements, so ``f + 1``
    adds the unit and ``3 * f`` scales by the element encoded as ``3``.
    """

    __slots__ = ("field", "coeffs", "var")

    def __init__(self, field: FiniteField, coeffs=(), var: str = "t"):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)
        self.var = var

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, field, var="t"):
        return cls(field, (), var)

    @classmethod
    def constant(cls, field, c, var="t"):
        return cls(field, (c,), var)

    @classmethod
    def monomial(cls, field, k, c=1, var="t"):
        return cls(field, [0] * k + [c], var)

    # -- basic properties -----------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
                continue
            mono = self.var if k == 1 else f"{self.var}^{k}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise FieldError(f"mixed fields {self.field!r} and {other.field!r}")
            return other
        if isinstance(other, int):
            return Polynomial(self.field, (self.field.check(other),), self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Polynomial(F, out, self.var)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial(F, [F.neg(c) for c in self.coeffs], self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial(F, (), self.var)
        out = [0] * (len(a) + len(b) - 1)
        add, mul = F.add, F.mul
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return Polynomial(F, out, self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = Polynomial(self.field, (1,), self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: int) -> "Polynomial":
        F = self.field
        return Polynomial(F, [F.mul(c, x) for x in self.coeffs], self.var)

    def shift_up(self, k: int) -> "Polynomial":
        """Multiply by ``t^k``."""
        if not self.coeffs:
            return self
        return Polynomial(self.field, (0,) * k + self.coeffs, self.var)

    def divmod(self, other: "Polynomial"):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        b = other.coeffs
        inv = F.inv(b[-1])
        q = [0] * max(len(r) - len(b) + 1, 0)
        while len(r) >= len(b):
            c = F.mul(r[-1], inv)
            s = len(r) - len(b)
            q[s] = c
            for i, y in enumerate(b):
                r[i + s] = F.sub(r[i + s], F.mul(c, y))
            while r and r[-1] == 0:
                r.pop()
        return Polynomial(F, q, self.var), Polynomial(F, r, self.var)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other) -> "Polynomial":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divide_by_t_power(self, k: int) -> "Polynomial":
        """Exact division by ``t^k``."""
        if any(self.coeffs[:k]):
            raise ArithmeticError(f"t^{k} does not divide {self}")
        return Polynomial(self.field, self.coeffs[k:], self.var)

    def monic(self) -> "Polynomial":
        return self.scale(self.field.inv(self.lead())) if self.coeffs else self

    def gcd(self, other) -> "Polynomial":
        a, b = self, self._coerce(other)
        while b:
            a, b = b, a % b
        return a.monic()

    # -- evaluation and substitution ------------------------------------
    def __call__(self, x):
        if isinstance(x, Polynomial):
            return self.compose(x)
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def compose(self, g: "Polynomial") -> "Polynomial":
        g = self._coerce(g)
        acc = Polynomial(self.field, (), self.var)
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def substitute_power(self, k: int) -> "Polynomial":
        """The substitution ``t -> t^k``."""
        out = [0] * (k * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[k * i] = c
        return Polynomial(self.field, out, self.var)

    def translate(self, alpha: int) -> "Polynomial":
        """The polynomial ``f(t + alpha)``."""
        return self.compose(Polynomial(self.field, (alpha, 1), self.var))

    def reverse(self, n: int) -> "Polynomial":
        """``t^n f(1/t)``; requires ``n >= deg f``."""
        if self.degree > n:
            raise ValueError("reversal degree below polynomial degree")
        out = [0] * (n + 1)
        for i, c in enumerate(self.coeffs):
            out[n - i] = c
        return Polynomial(self.field, out, self.var)

    def derivative(self) -> "Polynomial":
        F = self.field
        out = []
        for k in range(1, len(self.coeffs)):
            c = self.coeffs[k]
            out.append(F.mul(F.from_prime(k), c) if c else 0)
        return Polynomial(F, out, self.var)

    def valuation(self, alpha: int | None = 0) -> float | int:
        """Order of vanishing at ``t = alpha``; ``None`` means infinity (returns ``-deg``).

        The zero polynomial has valuation ``float('inf')``.
        """
        if not self.coeffs:
            return float("inf")
        if alpha is None:
            return -self.degree
        f = self if alpha == 0 else self.translate(alpha)
        for k, c in enumerate(f.coeffs):
            if c:
                return k
        return float("inf")  # pragma: no cover

    def order(self) -> float | int:
        return self.valuation(0)

    def truncate(self, n: int) -> "Polynomial":
        return Polynomial(self.field, self.coeffs[:n], self.var)

    def map_coeffs(self, phi, field: FiniteField) -> "Polynomial":
        return Polynomial(field, [phi(c) for c in self.coeffs], self.var)

    def frobenius_root(self) -> "Polynomial":
        """The square root of a square in characteristic 2."""
        F = self.field
        if F.p != 2:
            raise FieldError("square roots of polynomials need characteristic 2")
        if any(self.coeffs[1::2]):
            raise ArithmeticError(f"{self} is not a square")
        return Polynomial(F, [F.sqrt(c) for c in self.coeffs[::2]], self.var)

    # -- roots ------------------------------------------------------------
    def roots(self) -> list[tuple[int, int]]:
        """All roots in the current field with multiplicities, by exhaustive search."""
        if not self.coeffs:
            raise ValueError("the zero polynomial has every element as a root")
        out = []
        f = self
        for a in self.field.elements():
            if f.degree < 1:
                break
            k = 0
            while f.degree >= 1 and f(a) == 0:
                f = f.exact_div(Polynomial(self.field, (self.field.neg(a), 1), self.var))
                k += 1
            if k:
                out.append((a, k))
        return out

    def splitting_degree(self) -> int:
        """Smallest d such that this polynomial splits over GF(q^d).

        Uses distinct-degree factorisation of the squarefree part.
        """
        from .field import lcm

        F = self.field
        f = self.monic()
        if f.degree <= 0:
            return 1
        # squarefree part: strip repeated factors via gcd with derivative
        sq = _squarefree_kernel(f)
        degs = _distinct_degrees(sq)
        d = 1
        for k in degs:
            d = lcm(d, k)
        return d


def _squarefree_kernel(f: Polynomial) -> Polynomial:
    """Product of the distinct monic irreducible factors of ``f``."""
    F = f.field
    p = F.p
    df = f.derivative()
    if df.is_zero():
        # f is a p-th power: f = g(t^p) with g's coefficients p-th powers
        root = Polynomial(
            F, [F.pow(c, F.order // p) for c in f.coeffs[::p]], f.var
        )
        return _squarefree_kernel(root)
    g = f.gcd(df)
    if g.degree == 0:
        return f
    return _lcm_poly(_squarefree_kernel(f.exact_div(g)), _squarefree_kernel(g))


def _lcm_poly(a: Polynomial, b: Polynomial) -> Polynomial:
    return (a * b).exact_div(a.gcd(b)).monic()


def _distinct_degrees(f: Polynomial) -> list[int]:
    F = f.field
    q = F.order
    degrees = []
    x = Polynomial(F, (0, 1), f.var)
    h = x
    d = 0
    rest = f
    while rest.degree >= 1:
        d += 1
        if 2 * d > rest.degree:
            degrees.append(rest.degree)
            break
        h = _powmod(h, q, rest)
        g = (h - x).gcd(rest)
        if g.degree >= 1:
            degrees.append(d)
            rest = rest.exact_div(g)
            h = h % rest if rest.degree >= 1 else h
    return degrees


def _powmod(a: Polynomial, e: int, mod: Polynomial) -> Polynomial:
    result = Polynomial(a.field, (1,), a.var)
    base = a % mod
    while e:
        if e & 1:
            result = result * base % mod
        base = base * base % mod
        e >>= 1
    return result
