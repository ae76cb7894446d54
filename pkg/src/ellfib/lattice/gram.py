"""Positive (semi)definite lattices given by rational Gram matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ParseError, RejectionError

MAX_ENUM_RANK = 8


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class GramLattice:
    """``Z^r`` with the bilinear form given by ``gram``."""

    gram: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        g = tuple(tuple(_frac(x) for x in row) for row in self.gram)
        r = len(g)
        if any(len(row) != r for row in g):
            raise RejectionError("Gram matrix is not square")
        if any(g[i][j] != g[j][i] for i in range(r) for j in range(i)):
            raise RejectionError("Gram matrix is not symmetric")
        object.__setattr__(self, "gram", g)

    @classmethod
    def zero(cls) -> "GramLattice":
        return cls(())

    @classmethod
    def diagonal(cls, *values) -> "GramLattice":
        r = len(values)
        return cls(tuple(tuple(_frac(values[i]) if i == j else 0 for j in range(r)) for i in range(r)))

    @property
    def rank(self) -> int:
        return len(self.gram)

    def pair(self, u, v) -> Fraction:
        g = self.gram
        return sum((g[i][j] * u[i] * v[j] for i in range(self.rank) for j in range(self.rank)), Fraction(0))

    def norm(self, v) -> Fraction:
        return self.pair(v, v)

    def determinant(self) -> Fraction:
        return _det(self.gram)

    def direct_sum(self, other: "GramLattice") -> "GramLattice":
        a, b = self.rank, other.rank
        rows = [tuple(self.gram[i]) + (Fraction(0),) * b for i in range(a)]
        rows += [(Fraction(0),) * a + tuple(other.gram[i]) for i in range(b)]
        return GramLattice(tuple(rows))

    def scaled(self, c) -> "GramLattice":
        c = _frac(c)
        return GramLattice(tuple(tuple(c * x for x in row) for row in self.gram))

    def dual(self) -> "GramLattice":
        """Gram matrix of the dual lattice in the dual basis (the inverse matrix)."""
        return GramLattice(_inverse(self.gram))

    def is_positive_definite(self) -> bool:
        return all(d > 0 for d in _ldl(self.gram)[0]) if self.rank else True

    def is_positive_semidefinite(self) -> bool:
        A = [list(row) for row in self.gram]
        n = len(A)
        for k in range(n):
            piv = A[k][k]
            if piv < 0:
                return False
            if piv == 0:
                if any(A[k][j] for j in range(k, n)):
                    return False
                continue
            for i in range(k + 1, n):
                f = A[i][k] / piv
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
        return True

    def short_vectors(self, bound) -> list[tuple[int, ...]]:
        return short_vectors(self, bound)

    def minimum(self) -> Fraction | None:
        """Smallest nonzero norm (``None`` for the zero lattice)."""
        if not self.rank:
            return None
        bound = min(self.gram[i][i] for i in range(self.rank))
        vecs = short_vectors(self, bound)
        return min(self.norm(v) for v in vecs)

    def theta_counts(self, bound) -> dict[Fraction, int]:
        counts: dict[Fraction, int] = {}
        for v in short_vectors(self, bound):
            n = self.norm(v)
            counts[n] = counts.get(n, 0) + 1
        return dict(sorted(counts.items()))

    def format(self) -> str:
        if not self.rank:
            return "0"
        return "; ".join(" ".join(str(x) for x in row) for row in self.gram)

    @classmethod
    def parse(cls, text: str) -> "GramLattice":
        text = text.strip()
        if text in ("", "0"):
            return cls.zero()
        try:
            rows = [tuple(Fraction(x) for x in row.split()) for row in text.split(";")]
        except ValueError as exc:
            raise ParseError(f"bad Gram matrix {text!r}: {exc}") from None
        return cls(tuple(rows))


def _det(M) -> Fraction:
    A = [[_frac(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = -det
        det *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
    return det


def _inverse(M):
    n = len(M)
    A = [[_frac(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            raise RejectionError("Gram matrix is singular")
        A[k], A[piv] = A[piv], A[k]
        p = A[k][k]
        A[k] = [x / p for x in A[k]]
        for i in range(n):
            if i != k and A[i][k]:
                f = A[i][k]
                A[i] = [x - f * y for x, y in zip(A[i], A[k])]
    return tuple(tuple(row[n:]) for row in A)


def _ldl(M):
    """``Q(x) = Σ d_i (x_i + Σ_{j>i} mu[i][j] x_j)^2`` for positive definite ``M``."""
    n = len(M)
    A = [[_frac(x) for x in row] for row in M]
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = A[i][i]
        if d[i] <= 0:
            return [d[i]], mu
        for j in range(i + 1, n):
            mu[i][j] = A[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(j, n):
                A[j][k] -= d[i] * mu[i][j] * mu[i][k]
                A[k][j] = A[j][k]
    return d, mu


def short_vectors(L: GramLattice, bound) -> list[tuple[int, ...]]:
    """All nonzero ``v`` with ``⟨v,v⟩ <= bound`` (Fincke-Pohst, exact)."""
    if L.rank > MAX_ENUM_RANK:
        raise RejectionError(f"short vector search limited to rank <= {MAX_ENUM_RANK}")
    if not L.is_positive_definite():
        raise RejectionError("short vector search needs a positive definite lattice")
    bound = _frac(bound)
    n = L.rank
    d, mu = _ldl(L.gram)
    out: list[tuple[int, ...]] = []
    x = [0] * n

    def rec(i, remaining):
        if i < 0:
            if any(x):
                out.append(tuple(x))
            return
        c = sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        r = remaining / d[i]
        s = math.sqrt(float(r)) if r > 0 else 0.0
        lo = math.floor(-float(c) - s) - 1
        hi = math.ceil(-float(c) + s) + 1
        for xi in range(lo, hi + 1):
            t = d[i] * (xi + c) ** 2
            if t <= remaining:
                x[i] = xi
                rec(i - 1, remaining - t)
        x[i] = 0

    rec(n - 1, bound)
    return sorted(out)
