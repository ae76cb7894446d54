from __future__ import annotations

import dataclasses

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from ellfib.errors import ParseError, RejectionError
from ellfib.lattice import KodairaConfiguration
from ellfib.mutation import (
    EDP_CASE,
    FAIL,
    PASS,
    PENDING,
    UNSUPPORTED,
    EdpFlopCertificate,
    GoodMutationCertificate,
    SectionClaim,
    check_E_conditions,
    classify_choice,
    disjoint_section_constraints,
    edp_flop_certificate,
    enumerate_mutations,
    mutation_case,
    parse_certificate,
    parse_plan,
    swap_set,
    verify_edp_flop,
    verify_good_mutation,
)
from ellfib.singularity import rdp_label_from_type
from ellfib.weierstrass import singularity_profile

from .conftest import fixture_text, load_model

CASES = ["case_i", "case_ii_8", "case_ii_iii8", "case_ii_5", "case_ii_6", "case_iii", "case_iii_9c",
         "case_iv", "case_v", "case_v_iv3"]
_PROFILES = {}


def profile(name):
    if name not in _PROFILES:
        _PROFILES[name] = singularity_profile(load_model(f"{name}.wsurf"))
    return _PROFILES[name]


def shipped(name):
    prof = profile(name)
    return prof, parse_plan(fixture_text(f"{name}.plan"), prof), parse_certificate(fixture_text(f"{name}.cert"))


def test_case_labels():
    assert mutation_case("I3", "I6") == "M1"
    assert mutation_case("II", "I4*") == "M2"
    assert mutation_case("III", "I1*") == "M3"
    assert mutation_case("IV", "IV*") == "M4"
    assert mutation_case("II", "III*") == "M5"
    assert mutation_case("II", "II", elliptic=True) == EDP_CASE


def test_swap_sets():
    assert swap_set("M1", "I6", (0, 2, 4), (1, 3, 5)) == (0, 2, 4)
    assert swap_set("M2", "I0*", (0,), (1, 2, 3, 4)) == (0, 2, 3, 4)
    assert swap_set("M2", "I8*", (0,), tuple(range(1, 13))) == (0,) + tuple(range(2, 13))
    assert swap_set("M3", "I1*", (0, 1), (2, 3, 4, 5)) == (0, 1, 2, 3)
    assert swap_set("M4", "IV*", (0, 1, 2), (3, 4, 5, 6)) == (0, 1, 2, 6)
    assert swap_set("M5", "III*", (0,), tuple(range(1, 8))) is None


@pytest.mark.parametrize("name", CASES)
def test_enumeration_is_a_product_with_identity_first(name):
    prof = profile(name)
    plans = enumerate_mutations(prof)
    assert plans[0].identity
    expected = 1
    for p in prof.places:
        expected *= 1 if mutation_case(p.src.kodaira, p.dst.kodaira) == "M5" else 2
    assert len(plans) == expected == len(set(plans))
    for plan in plans:
        assert plan.total_tau == 24
        assert check_E_conditions(plan, prof).ok
        for c in plan.choices:
            assert classify_choice(c) == c.case


def test_tampered_choice_is_not_classified():
    plan = enumerate_mutations(profile("case_v"))[0]
    c = plan.choices[1]
    assert classify_choice(dataclasses.replace(c, chosen=(0, 3, 4, 5))) is None


def test_plan_text_roundtrip():
    prof, plan, _ = shipped("case_iii")
    assert parse_plan(plan.format(), prof) == plan
    assert parse_plan("", prof).identity


@pytest.mark.parametrize("text", [
    "place=7 case=M4 keep",
    "place=0 case=M2 keep",
    "place=0 case=M4 maybe",
    "place=0 case=M4 swap\nplace=0 case=M4 keep",
])
def test_plan_errors(text):
    with pytest.raises((ParseError, RejectionError)):
        parse_plan(text, profile("case_iii"))


def test_m5_has_no_swap():
    with pytest.raises(RejectionError):
        parse_plan("place=inf case=M5 swap", profile("case_ii_5"))


@pytest.mark.parametrize("name", CASES)
def test_shipped_certificates_verify(name):
    prof, plan, cert = shipped(name)
    res = verify_good_mutation(plan, cert)
    assert res, res.failures
    rep = check_E_conditions(plan, prof, res)
    assert rep.ok and rep.status["E5"] == PASS and rep.status["E7"] == "EXCLUDED"


def test_identity_plan_fails_condition_iii():
    prof, plan, cert = shipped("case_iii")
    res = verify_good_mutation(enumerate_mutations(prof)[0], cert)
    assert not res and any(f.startswith("(iii)") for f in res.failures)


def test_even_star_is_not_allowed():
    prof, plan, _ = shipped("case_iii")
    cert = parse_certificate("type = I0*\ndegree = 1\ncurve = O:1 1/0:2 1/2:1 1/3:1 1/4:1")
    res = verify_good_mutation(plan, cert)
    assert not res and any("(i)" in f for f in res.failures)


def test_wrong_claims_are_reported():
    prof, plan, cert = shipped("case_iv")
    res = verify_good_mutation(plan, dataclasses.replace(cert, claimed_type="I2*"))
    assert not res and "claims I2*" in res.failures[0]
    res = verify_good_mutation(plan, dataclasses.replace(cert, degree=3))
    assert not res and any("(ii)" in f for f in res.failures)


def test_section_must_meet_a_simple_component():
    prof, plan, _ = shipped("case_iv")
    cert = parse_certificate("type = I1*\ndegree = 2\ncurve = O:1 P:1 0/0:2 0/2:2 0/1:1 0/3:1\nsection P: 0=2")
    with pytest.raises(RejectionError):
        verify_good_mutation(plan, cert)


def test_ten_c_is_unsupported():
    prof = singularity_profile(load_model("lang_10c.wsurf"))
    plans = enumerate_mutations(prof)
    assert all(p.status == UNSUPPORTED for p in plans)
    rep = check_E_conditions(plans[0], prof)
    assert rep.status["E5"] == UNSUPPORTED and rep.plan_status == UNSUPPORTED
    _, _, cert = shipped("case_iii_9c")
    assert not verify_good_mutation(plans[0], cert)


def test_e_conditions_without_certificate():
    prof, plan, _ = shipped("case_i")
    rep = check_E_conditions(plan, prof)
    assert rep.status["E5"] == PENDING and rep.status["E7"] == PENDING
    assert rep.status["E3"] == rep.status["E4"] == "N/A"


def test_e_conditions_failures():
    prof, plan, _ = shipped("case_ii_6")
    short = dataclasses.replace(plan, choices=plan.choices[:1])
    assert check_E_conditions(short).status["E2"] == FAIL
    c = plan.choices[1]
    bad = dataclasses.replace(c, singularities=(rdp_label_from_type("E6"),))
    rep = check_E_conditions(dataclasses.replace(plan, choices=(plan.choices[0], bad)))
    assert rep.status["E6"] == FAIL and rep.status["E1"] == FAIL and not rep.ok


def test_edp_flop():
    prof = profile_edp = singularity_profile(load_model("edp_9c.wsurf"))
    (plan,) = enumerate_mutations(profile_edp)
    cert = parse_certificate(fixture_text("edp_9c.cert"))
    assert cert == edp_flop_certificate()
    res = verify_edp_flop(plan, cert)
    assert res and res.degree == 2
    rep = check_E_conditions(plan, prof, res)
    assert rep.ok and rep.status["E3"] == "BY-CONSTRUCTION"
    assert not verify_edp_flop(plan, dataclasses.replace(cert, chosen=cert.default))
    assert not verify_edp_flop(plan, dataclasses.replace(cert, quasi_dot=2))
    assert not verify_edp_flop(plan, dataclasses.replace(cert, curve=(1, 1, 1, 1)))
    _, _, good = shipped("case_iii_9c")
    assert not verify_good_mutation(plan, good)


def test_height_claims():
    config = KodairaConfiguration(("I6", "III"), ("0", "inf"))
    ok = disjoint_section_constraints(config, parse_certificate(fixture_text("case_ii_6.cert")).claims)
    assert ok and ok.forced == {"(P.O)": 0, "(Q.O)": 0, "(P.Q)": 1}
    wrong = SectionClaim(components={"P": {"0": 2}}, heights={"P": 1})
    rep = disjoint_section_constraints(config, wrong)
    assert not rep and any("2/3, claimed 1" in f for f in rep.failures)


def test_certificate_parse_errors():
    with pytest.raises(ParseError):
        parse_certificate("type = I3\ndegree = 2")
    with pytest.raises(ParseError):
        parse_certificate("type = I3\ndegree = 2\ncurve = O:1\ncolour = red")
    with pytest.raises(ParseError):
        parse_certificate("kind = edp\nvertices = 1\nself = -1")
    cert = parse_certificate(fixture_text("case_ii_6.cert"))
    assert isinstance(cert, GoodMutationCertificate) and cert.claims
    assert isinstance(parse_certificate(fixture_text("edp_9c.cert")), EdpFlopCertificate)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(CASES), st.data())
def test_removing_witnesses_never_helps(name, data):
    prof, _, cert = shipped(name)
    plan = data.draw(st.sampled_from(enumerate_mutations(prof)))
    before = verify_good_mutation(plan, cert).ok
    in_e = {(c.place, v) for c in plan.choices for v in c.chosen}
    witnesses = [node for node, _ in cert.curve if not isinstance(node, str) and tuple(node) in in_e]
    if not witnesses:
        return
    drop = set(data.draw(st.lists(st.sampled_from(witnesses), min_size=1, unique=True)))
    curve = tuple((node, n) for node, n in cert.curve if node not in drop)
    after = verify_good_mutation(plan, dataclasses.replace(cert, curve=curve)).ok
    assert before or not after
