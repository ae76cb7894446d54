"""Tate's algorithm at one place of k[t], any residue characteristic.

The local ring is ``k[π]`` localised at ``π = 0`` and every coefficient is kept
as an honest polynomial in ``π``: translations use polynomial ``r, s, t`` and a
non-minimal equation is divided by ``π^i`` exactly.  Only multiple roots of
residue polynomials are ever needed, and those are rational over a perfect
residue field, so no extension of ``k`` happens here.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..algebra.poly import Polynomial
from ..errors import InconsistencyError, SingularModelError
from .model import Place, WeierstrassModel, _c, b_invariants, discriminant_of

REDUCED_TYPES = ("II", "III", "IV")

# (kodaira, v, delta) -> Lang type, split by whether j vanishes identically
LANG_TABLE = {
    False: {
        ("II", 4, 2): "1A",
        ("II", 6, 4): "1B",
        ("II", 7, 5): "1C",
        ("III", 4, 1): "2A",
        ("III", 6, 3): "2B",
        ("IV", 4, 0): "3",
    },
    True: {
        ("II", 4, 2): "9A",
        ("II", 8, 6): "9B",
        ("II", 12, 10): "9C",
        ("III", 4, 1): "10A",
        ("III", 8, 5): "10B",
        ("III", 12, 9): "10C",
        ("IV", 4, 0): "11",
    },
}


def lang_type(kodaira: str, v: int, delta: int, j_zero: bool) -> str | None:
    return LANG_TABLE[j_zero].get((kodaira, v, delta))


@dataclass(frozen=True)
class FiberReport:
    """Kodaira type and Ogg invariants of one fiber.

    ``minimal`` holds the minimal local equation; its singular point (if any)
    sits at ``x = y = 0`` over ``π = 0``.
    """

    place: str
    kodaira: str
    v: int
    m: int
    delta: int
    lam: int
    lang: str | None = None
    minimal: tuple = dc_field(default=(), compare=False, repr=False)

    @property
    def smooth(self) -> bool:
        return self.kodaira == "I0"

    @property
    def semistable(self) -> bool:
        return self.kodaira.startswith("I") and not self.kodaira.endswith("*") and self.kodaira[1:].isdigit()

    @property
    def unstable(self) -> bool:
        return not self.semistable

    @property
    def reduced(self) -> bool:
        return self.semistable or self.kodaira in REDUCED_TYPES

    @property
    def conductor(self) -> int:
        """Exponent ``f = v - m + 1`` of the conductor."""
        if self.smooth:
            return 0
        return 1 if self.semistable else self.v - self.m + 1

    def ogg_holds(self) -> bool:
        if self.smooth:
            return self.v == 0
        if self.semistable:
            return self.delta == 0 and self.v == self.m
        return self.v == 2 + self.delta + (self.m - 1)

    def line(self) -> str:
        return (
            f"place={self.place} kodaira={self.kodaira} v={self.v} m={self.m} "
            f"delta={self.delta} lambda={self.lam} lang={self.lang or '-'}"
        )

    def as_dict(self) -> dict:
        return {
            "place": self.place,
            "kodaira": self.kodaira,
            "v": self.v,
            "m": self.m,
            "delta": self.delta,
            "lambda": self.lam,
            "lang": self.lang,
        }

    def with_lang(self, lang: str | None) -> "FiberReport":
        return FiberReport(self.place, self.kodaira, self.v, self.m, self.delta, self.lam, lang, self.minimal)


# --------------------------------------------------------------- helpers ----

def _val(f: Polynomial):
    return f.order()


def _res(f: Polynomial) -> int:
    """Residue ``f mod π``."""
    return f[0]


def _div(f: Polynomial, k: int) -> Polynomial:
    return f.divide_by_t_power(k)


def change(a, r=None, s=None, t=None):
    """Apply ``x -> x + r, y -> y + s x + t`` (``u = 1``) to ``(a1, a2, a3, a4, a6)``."""
    a1, a2, a3, a4, a6 = a
    F = a1.field
    zero = Polynomial.zero(F)
    r = zero if r is None else r
    s = zero if s is None else s
    t = zero if t is None else t
    two, three = _c(F, 2), _c(F, 3)
    n1 = a1 + s.scale(two)
    n2 = a2 - s * a1 + r.scale(three) - s * s
    n3 = a3 + r * a1 + t.scale(two)
    n4 = a4 - s * a3 + (r * a2).scale(two) - (t + r * s) * a1 + (r * r).scale(three) - (s * t).scale(two)
    n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1
    return (n1, n2, n3, n4, n6)


def _const(F, c) -> Polynomial:
    return Polynomial.constant(F, c)


def _pi_power(F, k) -> Polynomial:
    return Polynomial.monomial(F, k, 1)


def _singular_point(a):
    """Residues ``(x0, y0)`` of the singular point of the reduced cubic."""
    a1, a2, a3, a4, a6 = (_res(c) for c in a)
    F = a[0].field
    if F.p == 2:
        if a1:
            x0 = F.div(a3, a1)
            y0 = F.div(F.add(F.mul(x0, x0), a4), a1)
        else:
            x0 = F.sqrt(a4)
            rhs = F.add(F.add(F.pow(x0, 3), F.mul(a2, F.mul(x0, x0))), F.add(F.mul(a4, x0), a6))
            y0 = F.sqrt(rhs)
        return x0, y0
    # odd p: complete the square, then the double root of 4x^3 + b2 x^2 + 2 b4 x + b6
    b2, b4, b6, _ = (_res(c) for c in b_invariants(a))
    cubic = Polynomial(F, (b6, F.mul(_c(F, 2), b4), b2, _c(F, 4)))
    x0 = _multiple_root(cubic)
    y0 = F.neg(F.div(F.add(F.mul(a1, x0), a3), _c(F, 2)))
    return x0, y0


def _multiple_root(P: Polynomial) -> int:
    g = P.gcd(P.derivative()) if P.derivative() else P.monic()
    if g.degree < 1:
        raise InconsistencyError("expected a multiple root")
    roots = g.roots()
    if not roots:
        raise InconsistencyError("multiple root is not rational over a perfect field")
    return roots[0][0]


def _cubic_roots_shape(F, a, b, c):
    """Root shape of ``T^3 + aT^2 + bT + c``: ``("distinct",)``, ``("double", α)`` or ``("triple", α)``."""
    if F.p == 2:
        if F.add(F.mul(a, b), c):
            return ("distinct",)
        alpha = F.sqrt(b)
        return ("triple", alpha) if alpha == a else ("double", alpha)
    P = Polynomial(F, (c, b, a, 1))
    dP = P.derivative()
    g = P.gcd(dP) if dP else P.monic()
    if g.degree < 1:
        return ("distinct",)
    alpha = g.roots()[0][0]
    return ("triple", alpha) if g.degree == 2 or not dP else ("double", alpha)


def _quadratic_double_root(F, b, c):
    """Root of ``Y^2 + bY + c`` when it is a double root, else ``None``."""
    if F.p == 2:
        return None if b else F.sqrt(c)
    disc = F.sub(F.mul(b, b), F.mul(_c(F, 4), c))
    return None if disc else F.neg(F.div(b, _c(F, 2)))


# -------------------------------------------------------------- algorithm ---

def tate_local(a, place: str = "0", j_zero: bool | None = None) -> FiberReport:
    """Run Tate's algorithm on local coefficients (polynomials in ``π``)."""
    a = tuple(a)
    F = a[0].field
    pi = _pi_power(F, 1)
    lam = 0
    while True:
        delta_poly = discriminant_of(a)
        if not delta_poly:
            raise SingularModelError("discriminant vanishes: not an elliptic fibration")
        v = _val(delta_poly)
        if v == 0:
            return _report(place, "I0", 0, 1, lam, a, j_zero)
        # step 2: singular point to the origin
        x0, y0 = _singular_point(a)
        a = change(a, r=_const(F, x0), t=_const(F, y0))
        if any(_res(c) for c in (a[2], a[3], a[4])):
            raise InconsistencyError("singular point not moved to the origin")
        b2 = b_invariants(a)[0]
        if _res(b2):
            return _report(place, f"I{v}", v, v, lam, a, j_zero)
        # steps 3 to 5
        if _val(a[4]) < 2:
            return _report(place, "II", v, 1, lam, a, j_zero)
        b2, b4, b6, b8 = b_invariants(a)
        if _val(b8) < 3:
            return _report(place, "III", v, 2, lam, a, j_zero)
        if _val(b6) < 3:
            return _report(place, "IV", v, 3, lam, a, j_zero)
        # step 6: π | a1, a2; π^2 | a3, a4; π^3 | a6
        a = _normalize_step6(a)
        a1, a2, a3, a4, a6 = a
        if not (_val(a1) >= 1 and _val(a2) >= 1 and _val(a3) >= 2 and _val(a4) >= 2 and _val(a6) >= 3):
            raise InconsistencyError("step 6 normalisation failed")
        shape = _cubic_roots_shape(F, _res(_div(a2, 1)), _res(_div(a4, 2)), _res(_div(a6, 3)))
        if shape[0] == "distinct":
            return _report(place, "I0*", v, 5, lam, a, j_zero)
        if shape[0] == "double":
            a = change(a, r=pi.scale(shape[1]))
            return _step7(a, place, v, lam, j_zero)
        # step 8: triple root moved to 0
        a = change(a, r=pi.scale(shape[1]))
        a1, a2, a3, a4, a6 = a
        if not (_val(a2) >= 2 and _val(a4) >= 3 and _val(a6) >= 4):
            raise InconsistencyError("triple root translation failed")
        y = _quadratic_double_root(F, _res(_div(a3, 2)), F.neg(_res(_div(a6, 4))))
        if y is None:
            return _report(place, "IV*", v, 7, lam, a, j_zero)
        a = change(a, t=_pi_power(F, 2).scale(y))
        a1, a2, a3, a4, a6 = a
        if not (_val(a3) >= 3 and _val(a6) >= 5):
            raise InconsistencyError("step 8 translation failed")
        if _val(a4) < 4:
            return _report(place, "III*", v, 8, lam, a, j_zero)
        if _val(a6) < 6:
            return _report(place, "II*", v, 9, lam, a, j_zero)
        # step 11: not minimal
        a = tuple(_div(c, i) for c, i in zip(a, (1, 2, 3, 4, 6)))
        lam += 1


def _normalize_step6(a):
    F = a[0].field
    if F.p == 2:
        s = _const(F, F.sqrt(_res(a[1])))
        a = change(a, s=s)
        c = _res(_div(a[4], 2))
        a = change(a, t=_pi_power(F, 1).scale(F.sqrt(c)))
        return a
    # odd p: complete the square
    half = F.inv(_c(F, 2))
    a = change(a, s=a[0].scale(F.neg(half)))
    a = change(a, t=a[2].scale(F.neg(half)))
    return a


def _step7(a, place, v, lam, j_zero):
    F = a[0].field
    ix = iy = 3
    mx = my = 2  # exponents of π
    while True:
        a1, a2, a3, a4, a6 = a
        a3t = _res(_div(a3, my))
        a6t = _res(_div(a6, mx + my))
        y = _quadratic_double_root(F, a3t, F.neg(a6t))
        if y is None:
            break
        a = change(a, t=_pi_power(F, my).scale(y))
        iy += 1
        my += 1
        a1, a2, a3, a4, a6 = a
        a2t = _res(_div(a2, 1))
        a4t = _res(_div(a4, mx + 1))
        a6t = _res(_div(a6, 2 * mx + 1))
        if not a2t:
            raise InconsistencyError("I_n* loop lost the simple root")
        x = _quadratic_double_root(F, F.div(a4t, a2t), F.div(a6t, a2t))
        if x is None:
            break
        a = change(a, r=_pi_power(F, mx).scale(x))
        ix += 1
        mx += 1
    n = ix + iy - 5
    return _report(place, f"I{n}*", v, n + 5, lam, a, j_zero)


def _report(place, kodaira, v, m, lam, a, j_zero) -> FiberReport:
    semistable = kodaira.startswith("I") and kodaira[1:].isdigit()
    delta = 0 if semistable or kodaira == "I0" else v - m - 1
    lang = None
    if j_zero is not None and kodaira in REDUCED_TYPES:
        lang = lang_type(kodaira, v, delta, j_zero)
    return FiberReport(place, kodaira, v, m, delta, lam, lang, tuple(a))


def tate(W: WeierstrassModel, place: Place) -> FiberReport:
    """Kodaira type, Ogg invariants, λ and Lang type of the fiber of ``W`` at ``place``."""
    W.check_nonsingular()
    j_zero = W.j_invariant().zero
    return tate_local(W.local_coefficients(place), place.label, j_zero)
