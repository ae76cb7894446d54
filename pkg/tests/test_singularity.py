from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellfib.algebra import GF2, INFINITE, MPoly, parse_mpoly
from ellfib.errors import NotIsolatedError, ParseError, RejectionError
from ellfib.singularity import (
    DerivationRecord,
    LocalHypersurface,
    classify_rdp,
    is_free_combination,
    matrix_factorization_check,
    normal_form,
    orbit_ideal,
    p_closed_check,
    parse_sing,
    rdp_label_from_type,
    tangent_basis,
    theta_free_test,
    tjurina_number,
    verify_torsor_chart,
    zariski_flag,
    zariski_homological_test,
    zariski_surface,
)

from .conftest import fixture_text

FAMILIES = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("D", 4), ("D", 5), ("D", 6), ("D", 7), ("D", 8),
            ("E", 6), ("E", 7), ("E", 8)]
ZARISKI = [(f, n) for f, n in FAMILIES if zariski_flag(f, n, 0)]
XYZ = ("x", "y", "z")


def xyz(text):
    return parse_mpoly(text, GF2, XYZ)


def test_zariski_flags():
    assert [f"{f}{n}" for f, n in ZARISKI] == ["A1", "D4", "D6", "D8", "E7", "E8"]


@pytest.mark.parametrize("fam,n", ZARISKI)
def test_zariski_tjurina_is_even_and_twice_the_rank(fam, n):
    tau = tjurina_number(normal_form(fam, n, 0))
    assert tau % 2 == 0
    assert tau == 2 * n == rdp_label_from_type(f"{fam}{n}").tau


@pytest.mark.parametrize("fam,n", ZARISKI)
def test_zariski_surfaces_have_free_tangent_module(fam, n):
    assert theta_free_test(normal_form(fam, n, 0)).free


@pytest.mark.parametrize("fam,n", FAMILIES)
def test_homological_test_agrees_with_flag(fam, n):
    h = normal_form(fam, n, 0)
    verdicts = []
    for name in XYZ:
        try:
            verdicts.append(zariski_homological_test(h, DerivationRecord.basis(h, name)))
        except RejectionError:
            pass  # the derivation does not descend or is not p-closed
    assert any(verdicts) == zariski_flag(fam, n, 0)


@pytest.mark.parametrize("fam,n", FAMILIES)
def test_classify_normal_forms(fam, n):
    label = classify_rdp(normal_form(fam, n, 0))
    assert (label.family, label.index) == (fam, n)


def test_classify_rejects_other_equations():
    with pytest.raises(RejectionError):
        classify_rdp(LocalHypersurface.parse("x^2 + y^2 + z^2 + x*y*z"))


def test_regular_ring_is_zariski():
    h = LocalHypersurface.parse("x + y^2")
    assert h.is_regular()
    assert zariski_homological_test(h, DerivationRecord.basis(h, "z"))


def test_non_isolated_tjurina_is_infinite():
    assert tjurina_number(LocalHypersurface.parse("x*y")) is INFINITE
    with pytest.raises(NotIsolatedError):
        tangent_basis(parse_mpoly("x^2", GF2, ("x", "y")))


def test_tangent_basis_descends():
    for f in ("x^2*y + x*y^2", "x^3 + x*y^3", "x^3 + y^5"):
        fp = parse_mpoly(f, GF2, ("x", "y"))
        h = zariski_surface(fp)
        for D in tangent_basis(fp):
            assert D.descends(h)
        dz, d2 = tangent_basis(fp)
        one = MPoly.constant(GF2, ("x", "y"), 1)
        assert is_free_combination(fp, one, one.new({}))
        assert not is_free_combination(fp, one.new({(1, 0): 1}), one)


def test_p_closed_and_orbit_ideal():
    h = normal_form("D", 4, 0)
    D = DerivationRecord.basis(h, "z")
    rep = p_closed_check(h, D)
    assert rep.closed and rep.lam == 0
    orb = orbit_ideal(h, D)
    assert orb.colength == 2 and orb.free


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(FAMILIES), st.sampled_from(XYZ))
def test_orbit_colength_is_one_or_p(family, name):
    h = normal_form(*family, 0)
    D = DerivationRecord.basis(h, name)
    if D.descends(h) and p_closed_check(h, D).closed:
        assert orbit_ideal(h, D).colength in (1, 2)


@pytest.mark.parametrize("m", [2, 3])
def test_matrix_factorization_of_even_a(m):
    g = xyz(f"z^{2 * m} + x*y")
    zm, x, y = xyz(f"z^{m}"), xyz("x"), xyz("y")
    phi = [[zm, x], [y, zm]]
    rep = matrix_factorization_check(g, phi, phi, [xyz("x"), xyz("y"), zm])
    assert rep.valid


def test_matrix_factorization_rejects_bad_product():
    g = xyz("z^4 + x*y")
    bad = [[xyz("z"), xyz("x")], [xyz("y"), xyz("z")]]
    assert not matrix_factorization_check(g, bad, bad).valid


def test_torsor_chart():
    vars_ = ("s", "e")
    P = lambda t: parse_mpoly(t, GF2, vars_)
    D = DerivationRecord((P("1"), P("s^2")))
    assert verify_torsor_chart([P("e^2")], D, [P("s^2"), P("s^3 + e")]).ok
    assert not verify_torsor_chart([P("e^2")], D, [P("s")]).ok


def test_parse_sing_fixture():
    h, D = parse_sing(fixture_text("a3.sing"))
    assert tjurina_number(h) == 4
    assert theta_free_test(h).free
    assert zariski_homological_test(h, D) is False


def test_parse_sing_errors():
    with pytest.raises(ParseError):
        parse_sing("vars = x y z")
    with pytest.raises(ParseError):
        parse_sing("g = x*y\ncolour = red")
    with pytest.raises(ParseError):
        parse_sing("g = z^2 + x*y\nD = x | y")
