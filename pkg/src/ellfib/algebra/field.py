"""Finite fields GF(p^m) with integer-encoded elements.

An element is a nonnegative integer below ``p**m`` whose base-``p`` digits are
its coordinates in the basis ``1, g, ..., g^(m-1)``, where ``g`` is the class of
the variable modulo the defining polynomial.  The same encoding is used for the
modulus itself (digits of a monic polynomial of degree ``m``, leading digit
included), so ``x^2 + x + 1`` over GF(2) is ``0b111 == 7``.
"""

from __future__ import annotations

import os
from functools import lru_cache
from itertools import product
from math import gcd

from ..errors import FieldError

# Primitive trinomials/pentanomials over GF(2); the same table ships with most
# GF(2^m) libraries.
CONWAY_LIKE_GF2 = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100010001000011,
    15: 0b1000000000000011,
    16: 0b10001000000001011,
}

_TABLE_LIMIT = 1 << 16


def max_field_degree() -> int:
    """Cap on the total extension degree used by automatic field extension."""
    return int(os.environ.get("EF_MAX_FIELD_DEG", "16"))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# --- dense polynomials over the prime field, as coefficient lists (low first) ---

def _digits(n: int, p: int) -> list[int]:
    out = []
    while n:
        n, r = divmod(n, p)
        out.append(r)
    return out


def _undigits(ds, p: int) -> int:
    n = 0
    for d in reversed(ds):
        n = n * p + d
    return n


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv = pow(b[-1], p - 2, p)
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * inv % p
        q[shift] = c
        for i, bi in enumerate(b):
            a[i + shift] = (a[i + shift] - c * bi) % p
    return _trim(q), a


def _format_prime_poly(a: list[int]) -> str:
    terms = []
    for e in range(len(a) - 1, -1, -1):
        c = a[e]
        if not c:
            continue
        mono = "1" if e == 0 else ("x" if e == 1 else f"x^{e}")
        if c != 1:
            mono = f"{c}" if e == 0 else f"{c}*{mono}"
        terms.append(mono)
    return "+".join(terms) or "0"


def factor_prime_poly(a: list[int], p: int) -> list[tuple[list[int], int]]:
    """Factor a monic polynomial over GF(p) by trial division.

    Adequate for the degrees used as field moduli (at most 16 over GF(2)).
    """
    a = _trim(list(a))
    factors: list[tuple[list[int], int]] = []
    deg = 1
    while len(a) - 1 >= 2 * deg:
        for tail in product(range(p), repeat=deg):
            cand = list(tail) + [1]
            e = 0
            while True:
                q, r = _pdivmod(a, cand, p)
                if r:
                    break
                a, e = q, e + 1
            if e:
                factors.append((cand, e))
        deg += 1
    if len(a) > 1:
        # whatever is left has no factor of degree <= half its degree
        for i, (f, e) in enumerate(factors):
            if f == a:
                factors[i] = (f, e + 1)
                break
        else:
            factors.append((a, 1))
    return factors


def _format_factorization(factors) -> str:
    parts = []
    for f, e in factors:
        s = f"({_format_prime_poly(f)})"
        parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts)


class FiniteField:
    """The field GF(p^m).

    Parameters
    ----------
    p : int
        Characteristic (a prime).
    m : int
        Extension degree.
    modulus : int, optional
        Digit-encoded monic irreducible polynomial of degree ``m``.  For
        ``p == 2`` and ``m <= 16`` a built-in primitive polynomial is used when
        omitted.
    """

    __slots__ = ("p", "m", "modulus", "order", "_mod_digits", "_exp", "_log")

    def __init__(self, p: int = 2, m: int = 1, modulus: int | None = None):
        if not _is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if m < 1:
            raise FieldError("extension degree must be at least 1")
        if modulus is None:
            if p == 2 and m in CONWAY_LIKE_GF2:
                modulus = CONWAY_LIKE_GF2[m]
            elif m == 1:
                modulus = p  # the polynomial x
            else:
                modulus = _search_irreducible(p, m)
        digits = _digits(modulus, p)
        if len(digits) != m + 1 or digits[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {m}")
        factors = factor_prime_poly(digits, p)
        if len(factors) != 1 or factors[0][1] != 1:
            raise FieldError(f"reducible: {_format_factorization(factors)}")
        self.p = p
        self.m = m
        self.modulus = modulus
        self.order = p ** m
        self._mod_digits = digits
        self._exp = None
        self._log = None

    # -- identity -------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    @property
    def gen(self) -> int:
        return self.p if self.m > 1 else 1

    def elements(self):
        return range(self.order)

    def check(self, a: int) -> int:
        if not (0 <= a < self.order):
            raise FieldError(f"{a} is not an element of {self!r}")
        return a

    # -- arithmetic -----------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        return _undigits(self._vadd(_digits(a, self.p), _digits(b, self.p), 1), self.p)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.m == 1:
            return (-a) % self.p
        return _undigits([(-d) % self.p for d in _digits(a, self.p)], self.p)

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def _vadd(self, a, b, s):
        n = max(len(a), len(b))
        a = a + [0] * (n - len(a))
        b = b + [0] * (n - len(b))
        return [(x + s * y) % self.p for x, y in zip(a, b)]

    def _raw_mul(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        if m == 1:
            return a * b % p
        if p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> m & 1:
                    a ^= self.modulus
            return r
        da, db = _digits(a, p), _digits(b, p)
        prod = [0] * (len(da) + len(db))
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        _, r = _pdivmod(prod, self._mod_digits, p)
        return _undigits(r, p)

    def _tables(self):
        if self._exp is None:
            q = self.order
            for h in range(1, q):
                exp = [1] * (q - 1)
                x = 1
                ok = True
                for i in range(1, q - 1):
                    x = self._raw_mul(x, h)
                    if x == 1:
                        ok = False
                        break
                    exp[i] = x
                if ok:
                    log = [0] * q
                    for i, e in enumerate(exp):
                        log[e] = i
                    self._exp, self._log = exp, log
                    break
        return self._exp, self._log

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self.m == 1:
            return a * b % self.p
        if self.order <= _TABLE_LIMIT:
            exp, log = self._tables()
            return exp[(log[a] + log[b]) % (self.order - 1)]
        return self._raw_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        if self.order <= _TABLE_LIMIT:
            exp, log = self._tables()
            return exp[(-log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        if self.m > 1 and self.order <= _TABLE_LIMIT:
            exp, log = self._tables()
            return exp[log[a] * e % (self.order - 1)]
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def frobenius(self, a: int, k: int = 1) -> int:
        return self.pow(a, self.p ** k)

    def sqrt(self, a: int) -> int:
        """Square root in characteristic 2 (inverse of the Frobenius)."""
        if self.p != 2:
            raise FieldError("sqrt is only implemented in characteristic 2")
        return self.pow(a, self.order // 2)

    def is_square(self, a: int) -> bool:
        if self.p == 2 or a == 0:
            return True
        return self.pow(a, (self.order - 1) // 2) == 1

    def from_prime(self, c: int) -> int:
        return c % self.p

    # -- extensions -----------------------------------------------------
    def extension(self, d: int) -> "FiniteField":
        """The field of degree ``d`` over this one, with the default modulus."""
        total = self.m * d
        if total > max_field_degree():
            raise FieldError(
                f"field extension to degree {total} exceeds cap {max_field_degree()}"
            )
        return FiniteField(self.p, total)

    def embedding(self, other: "FiniteField"):
        """A field homomorphism ``self -> other`` as a callable on elements."""
        return _embedding(self, other)


@lru_cache(maxsize=64)
def _embedding(src: FiniteField, dst: FiniteField):
    if src.p != dst.p or dst.m % src.m:
        raise FieldError(f"{src!r} does not embed into {dst!r}")
    if src == dst:
        return _Identity()
    p = src.p
    coeffs = src._mod_digits
    root = None
    # a root of the modulus of src inside dst; brute force is fine at these sizes
    for cand in range(1 if src.m == 1 else p, dst.order):
        acc = 0
        for c in reversed(coeffs):
            acc = dst.add(dst.mul(acc, cand), dst.from_prime(c))
        if acc == 0:
            root = cand
            break
    if root is None:  # pragma: no cover - cannot happen for a genuine extension
        raise FieldError("no root of the modulus found")
    powers = [1]
    for _ in range(src.m - 1):
        powers.append(dst.mul(powers[-1], root))
    return _Embedding(src, dst, tuple(powers))


class _Identity:
    def __call__(self, a):
        return a


class _Embedding:
    def __init__(self, src, dst, powers):
        self.src, self.dst, self.powers = src, dst, powers

    def __call__(self, a: int) -> int:
        dst = self.dst
        r = 0
        for i, d in enumerate(_digits(a, self.src.p)):
            if d:
                r = dst.add(r, dst.mul(dst.from_prime(d), self.powers[i]))
        return r


def _search_irreducible(p: int, m: int) -> int:
    for tail in product(range(p), repeat=m):
        digits = list(reversed(tail)) + [1]
        if digits[0] == 0:
            continue
        fs = factor_prime_poly(digits, p)
        if len(fs) == 1 and fs[0][1] == 1:
            return _undigits(digits, p)
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")  # pragma: no cover


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


GF2 = FiniteField(2, 1)
