"""Colengths of ideals in power-series rings by truncation.

``dim k[x]/(I + m^N)`` is computed by linear algebra on the monomials of degree
below ``N``.  When the value at ``N`` equals the value at ``N + 1`` we have
``m^N ⊆ I + m^(N+1)``, hence ``m^N ⊆ I`` in the local ring by Nakayama's lemma,
and the truncated value is the exact colength.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import product

from .field import FiniteField
from .linalg import Subspace
from .mpoly import MPoly

log = logging.getLogger(__name__)

DEFAULT_START = 12
DEFAULT_CEILING = 64


class _Infinite:
    """Sentinel for an infinite colength."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    __str__ = __repr__

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()


def truncation_ceiling() -> int:
    return int(os.environ.get("EF_MAX_TRUNCATION", str(DEFAULT_CEILING)))


def monomial_budget() -> int:
    """Largest monomial basis the linear algebra is allowed to touch."""
    return int(os.environ.get("EF_MAX_MONOMIALS", "20000"))


@lru_cache(maxsize=64)
def monomials_below(nvars: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of total degree ``< n``, ordered by degree."""
    out = []
    for d in range(n):
        out.extend(_monomials_of_degree(nvars, d))
    return tuple(out)


def _monomials_of_degree(nvars, d):
    if nvars == 1:
        return [(d,)]
    res = []
    for first in range(d, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, d - first):
            res.append((first,) + rest)
    return res


@lru_cache(maxsize=256)
def _monomial_index(nvars: int, n: int) -> dict:
    return {e: i for i, e in enumerate(monomials_below(nvars, n))}


@dataclass(frozen=True)
class TruncatedLocalRing:
    """``k[[x_1..x_n]] / (relations)`` handled through truncations ``mod m^N``."""

    field: FiniteField
    variables: tuple[str, ...]
    relations: tuple[MPoly, ...] = ()
    start: int = DEFAULT_START
    ceiling: int = dc_field(default_factory=truncation_ceiling)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def poly(self, terms) -> MPoly:
        return MPoly(self.field, self.variables, terms)

    def gens(self) -> list[MPoly]:
        return MPoly.constant(self.field, self.variables, 0).gens()

    def ideal_space(self, gens, n: int) -> "TruncatedIdeal":
        return TruncatedIdeal(self, tuple(self.relations) + tuple(gens), n)

    def colength(self, gens) -> "int | _Infinite":
        return colength(self, gens)


class TruncatedIdeal:
    """The image of an ideal in ``k[x]/m^n`` as a linear subspace."""

    def __init__(self, ring: TruncatedLocalRing, gens, n: int):
        self.ring = ring
        self.n = n
        self.monos = monomials_below(ring.nvars, n)
        self.index = _monomial_index(ring.nvars, n)
        self.space = Subspace(ring.field)
        fast = ring.field.p == 2 and ring.field.m == 1
        for f in gens:
            o = f.order()
            if o >= n:
                continue
            terms = [(e, sum(e), c) for e, c in f.terms.items()]
            for u in self.monos:
                du = sum(u)
                if du + o >= n:
                    break  # monomials are ordered by degree
                if fast:
                    bits = 0
                    for e, de, c in terms:
                        if du + de < n:
                            bits ^= 1 << self.index[tuple(a + b for a, b in zip(u, e))]
                    if bits:
                        self.space.add_raw_gf2(bits)
                else:
                    vec = {}
                    for e, de, c in terms:
                        if du + de < n:
                            vec[self.index[tuple(a + b for a, b in zip(u, e))]] = c
                    if vec:
                        self.space.add(vec)

    @property
    def quotient_dimension(self) -> int:
        return len(self.monos) - self.space.rank

    def vector(self, f: MPoly) -> dict[int, int]:
        return {self.index[e]: c for e, c in f.terms.items() if sum(e) < self.n}

    def contains(self, f: MPoly) -> bool:
        return self.space.contains(self.vector(f))

    def solve_scalar(self, a: MPoly, b: MPoly):
        return self.space.solve_scalar(self.vector(a), self.vector(b))


def _obviously_infinite(ring: TruncatedLocalRing, gens) -> str | None:
    """Cheap certificates that the quotient is infinite dimensional.

    If every generator vanishes identically on a line through the origin with
    direction defined over the prime field, that line lies in the zero locus.
    """
    allgens = [g for g in tuple(ring.relations) + tuple(gens) if g]
    if not allgens:
        return "zero ideal"
    if any(g.constant_term() for g in allgens):
        return None
    n = ring.nvars
    p = ring.field.p
    for direction in product(range(p), repeat=n):
        if not any(direction):
            continue
        # one representative per projective point: first nonzero entry is 1
        first = next(x for x in direction if x)
        if first != 1:
            continue
        if all(g.vanishes_on_line(direction) for g in allgens):
            return f"all generators vanish on the line {direction}"
    return None


def colength(ring: TruncatedLocalRing, gens) -> "int | _Infinite":
    """``dim_k`` of the local ring modulo the ideal generated by ``gens``.

    Returns ``INFINITE`` when a line certificate is found or when the
    truncated dimension does not stabilise below the ceiling.
    """
    return stable_truncation(ring, gens)[0]


def stable_truncation(ring: TruncatedLocalRing, gens):
    """Pair ``(colength, N)`` with ``m^N`` contained in the ideal.

    ``N`` is ``None`` when the colength is infinite.
    """
    gens = tuple(gens)
    for g in tuple(ring.relations) + gens:
        if g.constant_term():
            return 0, 0
    why = _obviously_infinite(ring, gens)
    if why:
        log.debug("colength INFINITE: %s", why)
        return INFINITE, None
    n = ring.start
    prev = None
    while n <= ring.ceiling:
        if len(monomials_below(ring.nvars, n + 1)) > monomial_budget():
            log.warning("colength: monomial budget exhausted at truncation %d", n)
            return INFINITE, None
        d = ring.ideal_space(gens, n).quotient_dimension if prev is None else prev
        d1 = ring.ideal_space(gens, n + 1).quotient_dimension
        if d == d1:
            return d, n
        # grow quickly; the dimension at n+1 is reused only when stepping by one
        step = max(1, n // 2)
        if n < ring.ceiling:
            step = min(step, ring.ceiling - n)
        prev = d1 if step == 1 else None
        n += step
    log.warning("colength did not stabilise below truncation %d", ring.ceiling)
    return INFINITE, None


def local_membership(ring: TruncatedLocalRing, gens, f: MPoly) -> bool:
    """Exact membership of ``f`` in an ideal of finite colength of the local ring."""
    length, n = stable_truncation(ring, gens)
    if n is None:
        raise ValueError("membership test needs an ideal of finite colength")
    return ring.ideal_space(gens, max(n, 1)).contains(f)
