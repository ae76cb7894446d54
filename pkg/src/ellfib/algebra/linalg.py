"""Incremental row echelon forms over finite fields.

Vectors over GF(p^m) are sparse ``{column: element}`` dicts.  Internally every
such vector is expanded into ``m`` vectors over the prime field (its multiples by
``1, g, ..., g^(m-1)``, written in digit coordinates), so the GF(p)-rank is
``m`` times the GF(p^m)-rank.  Over GF(2) the expanded rows are Python integers
used as bitsets.
"""

from __future__ import annotations

from .field import FiniteField, _digits


class _Gf2Rows:
    __slots__ = ("pivots",)

    def __init__(self):
        self.pivots: dict[int, int] = {}

    def reduce(self, v: int) -> int:
        piv = self.pivots
        while v:
            b = v.bit_length() - 1
            r = piv.get(b)
            if r is None:
                return v
            v ^= r
        return 0

    def add(self, v: int) -> bool:
        v = self.reduce(v)
        if v:
            self.pivots[v.bit_length() - 1] = v
            return True
        return False

    def full_reduce(self, v: int) -> int:
        piv = self.pivots
        out = 0
        while v:
            b = v.bit_length() - 1
            r = piv.get(b)
            if r is None:
                out |= 1 << b
                v ^= 1 << b
            else:
                v ^= r
        return out

    @property
    def rank(self) -> int:
        return len(self.pivots)


class _GfpRows:
    __slots__ = ("p", "pivots")

    def __init__(self, p: int):
        self.p = p
        self.pivots: dict[int, dict[int, int]] = {}

    def _top(self, v):
        return max(v)

    def reduce(self, v: dict[int, int], full: bool = False) -> dict[int, int]:
        p = self.p
        v = {k: x % p for k, x in v.items() if x % p}
        out: dict[int, int] = {}
        while v:
            b = max(v)
            r = self.pivots.get(b)
            if r is None:
                if not full:
                    return v
                out[b] = v.pop(b)
                continue
            c = v[b]
            for k, x in r.items():
                y = (v.get(k, 0) - c * x) % p
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
        return out

    def add(self, v: dict[int, int]) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        b = max(v)
        inv = pow(v[b], self.p - 2, self.p)
        self.pivots[b] = {k: x * inv % self.p for k, x in v.items()}
        return True

    def full_reduce(self, v):
        return self.reduce(v, full=True)

    @property
    def rank(self) -> int:
        return len(self.pivots)


class Subspace:
    """A subspace of ``GF(q)^columns`` grown one vector at a time."""

    def __init__(self, field: FiniteField):
        self.field = field
        self._rows = _Gf2Rows() if field.p == 2 else _GfpRows(field.p)
        self._gpowers = [field.pow(field.gen, j) for j in range(field.m)] if field.m > 1 else [1]

    def _expand_one(self, vec: dict[int, int]):
        F = self.field
        m, p = F.m, F.p
        if p == 2:
            out = 0
            for col, c in vec.items():
                if c:
                    out ^= c << (col * m)
            return out
        out = {}
        for col, c in vec.items():
            for j, d in enumerate(_digits(c, p)):
                if d:
                    out[col * m + j] = d
        return out

    def _expand(self, vec: dict[int, int]):
        F = self.field
        if F.m == 1:
            return [self._expand_one(vec)]
        return [
            self._expand_one({k: F.mul(g, c) for k, c in vec.items()})
            for g in self._gpowers
        ]

    def add(self, vec: dict[int, int]) -> None:
        for row in self._expand(vec):
            self._rows.add(row)

    def add_raw_gf2(self, bits: int) -> None:
        """Fast path for GF(2) rows already encoded as bitsets."""
        self._rows.add(bits)

    @property
    def rank(self) -> int:
        return self._rows.rank // self.field.m

    def contains(self, vec: dict[int, int]) -> bool:
        r = self._rows.reduce(self._expand_one(vec))
        return not r

    def solve_scalar(self, a: dict[int, int], b: dict[int, int]):
        """Some ``lam`` with ``a - lam*b`` in the subspace, or ``None``.

        Returns ``0`` when ``b`` lies in the subspace and ``a`` does too.
        """
        F = self.field
        ra = self._rows.full_reduce(self._expand_one(a))
        rbs = [
            self._rows.full_reduce(self._expand_one({k: F.mul(g, c) for k, c in b.items()}))
            for g in self._gpowers
        ]
        # solve ra = sum c_j rbs[j] over the prime field by a tiny elimination
        coeffs = _solve_prime(ra, rbs, F.p)
        if coeffs is None:
            return None
        lam = 0
        for c, g in zip(coeffs, self._gpowers):
            if c:
                lam = F.add(lam, F.mul(F.from_prime(c), g))
        return lam


def _as_dict(v, p):
    if p == 2:
        out = {}
        i = 0
        while v:
            if v & 1:
                out[i] = 1
            v >>= 1
            i += 1
        return out
    return dict(v)


def _solve_prime(target, vectors, p):
    target = _as_dict(target, p)
    vecs = [_as_dict(v, p) for v in vectors]
    n = len(vecs)
    # rows: (vector, combination) reduced incrementally
    basis: list[tuple[int, dict, list[int]]] = []

    def reduce(v, comb):
        v = dict(v)
        comb = list(comb)
        for col, bv, bc in basis:
            c = v.get(col, 0)
            if c:
                for k, x in bv.items():
                    y = (v.get(k, 0) - c * x) % p
                    if y:
                        v[k] = y
                    else:
                        v.pop(k, None)
                comb = [(u - c * w) % p for u, w in zip(comb, bc)]
        return v, comb

    for j, v in enumerate(vecs):
        comb = [0] * n
        comb[j] = 1
        v, comb = reduce(v, comb)
        if v:
            col = max(v)
            inv = pow(v[col], p - 2, p)
            v = {k: x * inv % p for k, x in v.items()}
            comb = [x * inv % p for x in comb]
            # keep the basis fully reduced in the new pivot column
            new_basis = []
            for c2, bv, bc in basis:
                c = bv.get(col, 0)
                if c:
                    bv = dict(bv)
                    for k, x in v.items():
                        y = (bv.get(k, 0) - c * x) % p
                        if y:
                            bv[k] = y
                        else:
                            bv.pop(k, None)
                    bc = [(u - c * w) % p for u, w in zip(bc, comb)]
                new_basis.append((c2, bv, bc))
            basis = new_basis + [(col, v, comb)]
    rest, comb = reduce(target, [0] * n)
    if rest:
        return None
    return [(-c) % p for c in comb]
