"""Independent E8 computations used to check the shipped Mordell-Weil rows.

Roots are written in doubled Euclidean coordinates (so all entries are
integers and the pairing is the dot product divided by 4).  Orthogonal
complements are computed with integer column reduction in the basis of simple
roots, entirely separately from the package's lattice code.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product


def e8_roots():
    roots = []
    for i, j in combinations(range(8), 2):
        for si, sj in product((2, -2), repeat=2):
            v = [0] * 8
            v[i], v[j] = si, sj
            roots.append(tuple(v))
    for signs in product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(signs)
    return roots


def dot(u, v):
    s = sum(a * b for a, b in zip(u, v))
    assert s % 4 == 0
    return s // 4


# Bourbaki simple roots (doubled coordinates)
SIMPLE = [
    (1, -1, -1, -1, -1, -1, -1, 1),
    (2, 2, 0, 0, 0, 0, 0, 0),
    (-2, 2, 0, 0, 0, 0, 0, 0),
    (0, -2, 2, 0, 0, 0, 0, 0),
    (0, 0, -2, 2, 0, 0, 0, 0),
    (0, 0, 0, -2, 2, 0, 0, 0),
    (0, 0, 0, 0, -2, 2, 0, 0),
    (0, 0, 0, 0, 0, -2, 2, 0),
]

CARTAN = [[dot(a, b) for b in SIMPLE] for a in SIMPLE]


def _integer_kernel(A, n):
    """Basis of ``{c in Z^n : A c = 0}`` by unimodular column operations."""
    A = [list(row) for row in A]
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(i, j, q):  # col_i -= q * col_j
        for row in A:
            row[i] -= q * row[j]
        for row in U:
            row[i] -= q * row[j]

    def swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in U:
            row[i], row[j] = row[j], row[i]

    pivot_col = 0
    for r in range(len(A)):
        if pivot_col >= n:
            break
        while True:
            nz = [c for c in range(pivot_col, n) if A[r][c]]
            if not nz:
                break
            c0 = min(nz, key=lambda c: abs(A[r][c]))
            swap(pivot_col, c0)
            done = True
            for c in range(pivot_col + 1, n):
                if A[r][c]:
                    colop(c, pivot_col, A[r][c] // A[r][pivot_col])
                    if A[r][c]:
                        done = False
            if done:
                break
        if any(A[r][c] for c in range(pivot_col, n)):
            pivot_col += 1
    return [[U[i][c] for i in range(n)] for c in range(pivot_col, n)]


def to_simple_coords(v):
    """Coordinates of an E8 vector in the basis of simple roots."""
    b = [Fraction(dot(v, a)) for a in SIMPLE]
    # solve CARTAN x = b
    n = 8
    M = [[Fraction(x) for x in row] + [b[i]] for i, row in enumerate(CARTAN)]
    for k in range(n):
        p = next(i for i in range(k, n) if M[i][k])
        M[k], M[p] = M[p], M[k]
        piv = M[k][k]
        M[k] = [x / piv for x in M[k]]
        for i in range(n):
            if i != k and M[i][k]:
                f = M[i][k]
                M[i] = [x - f * y for x, y in zip(M[i], M[k])]
    out = [M[i][n] for i in range(n)]
    assert all(x.denominator == 1 for x in out)
    return [int(x) for x in out]


def orthogonal_complement(vectors):
    """Gram matrix of ``vectors^⊥`` inside E8 (integer, LLL-reduced)."""
    rows = []
    for v in vectors:
        c = to_simple_coords(v)
        rows.append([sum(c[i] * CARTAN[i][j] for i in range(8)) for j in range(8)])
    basis = _integer_kernel(rows, 8) if rows else [[int(i == j) for j in range(8)] for i in range(8)]
    gram = [[sum(u[i] * CARTAN[i][j] * w[j] for i in range(8) for j in range(8)) for w in basis] for u in basis]
    return lll_gram(gram)


def lll_gram(G, delta=Fraction(3, 4)):
    """LLL reduction of a positive definite integral Gram matrix."""
    n = len(G)
    if n == 0:
        return []
    B = [[int(i == j) for j in range(n)] for i in range(n)]
    G = [[Fraction(x) for x in row] for row in G]

    def ip(u, v):
        return sum(u[i] * G[i][j] * v[j] for i in range(n) for j in range(n))

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        bstar = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                mu[i][j] = (ip(B[i], B[j]) - sum(mu[j][k] * mu[i][k] * bstar[k] for k in range(j))) / bstar[j]
            bstar[i] = ip(B[i], B[i]) - sum(mu[i][k] ** 2 * bstar[k] for k in range(i))
        return mu, bstar

    k = 1
    while k < n:
        mu, bstar = gso()
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                B[k] = [a - q * b for a, b in zip(B[k], B[j])]
                mu, bstar = gso()
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            B[k], B[k - 1] = B[k - 1], B[k]
            k = max(k - 1, 1)
    return [[int(ip(u, v)) for v in B] for u in B]


def det(M):
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    d = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if A[i][k]), None)
        if p is None:
            return Fraction(0)
        if p != k:
            A[k], A[p] = A[p], A[k]
            d = -d
        d *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            for j in range(k, n):
                A[i][j] -= f * A[k][j]
    return d


def roots_orthogonal_to(vectors):
    return [r for r in e8_roots() if all(dot(r, v) == 0 for v in vectors)]


def simple(*indices):
    """Bourbaki simple roots by 1-based index."""
    return [SIMPLE[i - 1] for i in indices]


# Explicit embeddings of the trivial lattices the table covers.
EMBEDDINGS = {
    1: [],
    2: simple(1),
    3: simple(1, 3),
    4: simple(1, 2),
    6: simple(1, 3, 2),
    7: simple(1, 2, 5),
    8: simple(1, 3, 4, 5),
    12: simple(1, 3, 2, 6),
    20: simple(1, 3, 5, 6, 8),
    23: simple(1, 3, 2, 5, 7),
    62: simple(*range(1, 9)),
}


def a5_plus_a1_embeddings():
    """Both ways to add an A1 to the A5 spanned by simple roots 3..7."""
    a5 = simple(3, 4, 5, 6, 7)
    out = {}
    for r in roots_orthogonal_to(a5):
        comp = orthogonal_complement(a5 + [r])
        key = det(comp)
        out.setdefault(key, (a5 + [r], comp))
    return out
