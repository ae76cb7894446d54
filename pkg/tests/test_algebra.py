from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellfib.algebra import (
    GF2,
    INFINITE,
    FiniteField,
    MPoly,
    Polynomial,
    TruncatedLocalRing,
    colength,
    parse_mpoly,
    parse_poly,
)
from ellfib.errors import FieldError, ParseError

FIELDS = [FiniteField(2, 1), FiniteField(2, 2), FiniteField(2, 3), FiniteField(3, 1), FiniteField(3, 2), FiniteField(5, 1)]


@st.composite
def field_and_elements(draw, k=3):
    F = draw(st.sampled_from(FIELDS))
    return (F, *(draw(st.integers(0, F.order - 1)) for _ in range(k)))


@given(field_and_elements())
def test_field_axioms(data):
    F, a, b, c = data
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1


@given(field_and_elements(1))
def test_frobenius_is_additive(data):
    F, a = data
    b = (a * 7 + 1) % F.order
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
    assert F.pow(a, F.order) == a


@given(st.sampled_from([FiniteField(2, m) for m in (1, 2, 3, 4)]), st.data())
def test_square_roots_in_characteristic_two(F, data):
    a = data.draw(st.integers(0, F.order - 1))
    r = F.sqrt(a)
    assert F.mul(r, r) == a


def test_sqrt_needs_characteristic_two():
    with pytest.raises(FieldError):
        FiniteField(3, 2).sqrt(2)


def test_embedding_is_a_ring_map():
    F = FiniteField(2, 2)
    G = F.extension(3)
    assert G.order == 64
    phi = F.embedding(G)
    for a in range(4):
        for b in range(4):
            assert phi(F.mul(a, b)) == G.mul(phi(a), phi(b))
            assert phi(F.add(a, b)) == G.add(phi(a), phi(b))


def test_extension_cap(monkeypatch):
    monkeypatch.setenv("EF_MAX_FIELD_DEG", "2")
    with pytest.raises(FieldError):
        GF2.extension(3)


def test_polynomial_division_and_gcd():
    f = parse_poly("t^5 + t^2 + 1", GF2)
    g = parse_poly("t^2 + t", GF2)
    q, r = f.divmod(g)
    assert q * g + r == f
    assert r.degree < g.degree
    h = parse_poly("t + 1", GF2)
    assert (f * h).gcd(g * h) == h.monic() * f.gcd(g)


def test_roots_with_multiplicity():
    f = parse_poly("t^3 + t^2", GF2)  # t^2 (t + 1)
    assert sorted(f.roots()) == [(0, 2), (1, 1)]
    assert parse_poly("t^3 + t + 1", GF2).roots() == []
    assert parse_poly("t^3 + t + 1", GF2).splitting_degree() == 3


def test_substitute_power_is_frobenius_pullback():
    f = parse_poly("1 + t + t^3", GF2)
    assert f.substitute_power(2) == parse_poly("1 + t^2 + t^6", GF2)


@given(st.lists(st.integers(0, 1), min_size=1, max_size=8), st.lists(st.integers(0, 1), min_size=1, max_size=8))
def test_polynomial_product_degree(a, b):
    f, g = Polynomial(GF2, a), Polynomial(GF2, b)
    if f and g:
        assert (f * g).degree == f.degree + g.degree


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_poly("t^^2", GF2)


def test_mpoly_partials():
    g = parse_mpoly("z^2 + x*y + x^3", GF2, ("x", "y", "z"))
    dx, dy, dz = (g.diff(i) for i in range(3))
    assert dx == parse_mpoly("y + x^2", GF2, ("x", "y", "z"))
    assert dy == parse_mpoly("x", GF2, ("x", "y", "z"))
    assert not dz  # characteristic 2
    assert isinstance(g, MPoly)


def test_colength():
    R = TruncatedLocalRing(GF2, ("x", "y"), (), 12)
    x2 = parse_mpoly("x^2", GF2, ("x", "y"))
    y3 = parse_mpoly("y^3", GF2, ("x", "y"))
    assert colength(R, [x2, y3]) == 6
    assert colength(R, [parse_mpoly("x*y", GF2, ("x", "y"))]) is INFINITE


@settings(max_examples=25)
@given(st.integers(1, 4), st.integers(1, 4))
def test_colength_of_monomial_ideals(a, b):
    R = TruncatedLocalRing(GF2, ("x", "y"), (), 12)
    gens = [parse_mpoly(f"x^{a}", GF2, ("x", "y")), parse_mpoly(f"y^{b}", GF2, ("x", "y"))]
    assert colength(R, gens) == a * b
