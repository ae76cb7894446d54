"""Ideal membership in polynomial rings by degree-bounded linear algebra."""

from __future__ import annotations

from .linalg import Subspace
from .local import monomials_below
from .mpoly import MPoly


def affine_membership(gens, f: MPoly, slack: int = 2) -> bool:
    """Test ``f ∈ (gens)`` using all multiples ``u*g`` of degree ``<= d``.

    ``d`` is ``max(deg f, deg g) + slack``.  The test is exact for homogeneous
    ideals and, in general, a sound positive certificate.
    """
    gens = [g for g in gens if g]
    if not f:
        return True
    if not gens:
        return False
    if any(g.degree() == 0 for g in gens):
        return True
    n = f.nvars
    d = max([f.degree()] + [g.degree() for g in gens]) + slack
    monos = monomials_below(n, d + 1)
    index = {e: i for i, e in enumerate(monos)}
    space = Subspace(f.field)
    for g in gens:
        dg = g.degree()
        for u in monos:
            if sum(u) + dg > d:
                break
            vec = {}
            for e, c in g.terms.items():
                vec[index[tuple(a + b for a, b in zip(u, e))]] = c
            space.add(vec)
    return space.contains({index[e]: c for e, c in f.terms.items()})
