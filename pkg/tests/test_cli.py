from __future__ import annotations

import json

import pytest

from ellfib.cli import run

from .conftest import FIXTURES


def f(name):
    return str(FIXTURES / name)


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_tate(capsys):
    code, out, _ = call(capsys, "tate", f("nine_c.wsurf"), "--at", "0")
    assert code == 0
    assert out.strip() == "place=0 kodaira=II v=12 m=1 delta=10 lambda=0 lang=9C"


def test_surface(capsys):
    code, out, _ = call(capsys, "surface", f("case_v.wsurf"))
    assert code == 0
    assert out.splitlines()[-1] == "configuration=III+IV sigma_v=12 rational=true"


def test_fpb_elliptic_double_point(capsys):
    code, out, _ = call(capsys, "fpb", f("edp_9c.wsurf"))
    assert code == 0
    assert "singularities=ELLIPTIC_DOUBLE_POINT tau=24" in out


def test_sing(capsys):
    code, out, _ = call(capsys, "sing", f("a3.sing"))
    assert code == 0
    assert out.splitlines() == ["tau=4", "L1=4 L2=16 free=true", "rdp=A3 zariski_flag=false",
                                "zariski_homological=false"]


def test_dual_graph_commands(capsys):
    assert call(capsys, "fundcycle", f("d4.igr"))[1].strip() == "Z = 2 1 1 1; genus=0"
    assert call(capsys, "smith", f("d4.igr"))[1].strip() == "smith = 1 1 2 2"
    assert call(capsys, "fundcycle", f("cusp.igr"))[1].strip() == "Z = 1; genus=1"


def test_mw(capsys):
    code, out, _ = call(capsys, "mw", "--config", "III+3+2^2+1")
    assert code == 0
    assert "No.23" in out and "rank=3" in out


def test_height(capsys):
    code, out, _ = call(capsys, "height", f("case_ii_6.cert"), "--config", "I6@0+III@inf")
    assert code == 0 and "forced (P.Q) = 1" in out
    code, _, err = call(capsys, "height", f("case_ii_6.cert"))
    assert code == 2 and "--config" in err


def test_mutate(capsys):
    code, out, _ = call(capsys, "mutate", f("case_iii.wsurf"), "--plan", f("case_iii.plan"),
                        "--cert", f("case_iii.cert"))
    assert code == 0 and "verified=true type=I1* degree=2" in out
    code, out, _ = call(capsys, "mutate", f("case_iii.wsurf"), "--cert", f("case_iii.cert"))
    assert code == 1 and "verified=false" in out
    code, out, _ = call(capsys, "mutate", f("case_iii.wsurf"))
    assert code == 0 and out.count("plan ") == 8 and "E5: PENDING" in out


def test_twistor(capsys):
    assert call(capsys, "twistor", "1", "0", "1")[1].strip() == "type=SUPERSINGULAR zeros=1^2"
    assert call(capsys, "twistor", "0", "1", "1")[1].strip() == "type=CLASSICAL zeros=0 1"
    assert call(capsys, "twistor", "0", "0", "0")[0] == 1
    assert call(capsys, "twistor", "x", "0", "0")[0] == 2


@pytest.mark.parametrize("argv", [
    ["tate", "nine_c.wsurf", "--at", "0"],
    ["fpb", "case_iv.wsurf"],
    ["sing", "a2.sing"],
    ["mutate", "case_v.wsurf", "--plan", "case_v.plan", "--cert", "case_v.cert"],
])
def test_json_is_parseable_and_stable(capsys, argv):
    argv = [f(a) if "." in a and not a[0].isdigit() else a for a in argv]
    code, first, _ = call(capsys, "--json", *argv)
    assert code == 0
    json.loads(first)
    assert call(capsys, "--json", *argv)[1] == first
    assert call(capsys, *argv)[1] == call(capsys, *argv)[1]


def test_json_matches_text(capsys):
    _, text, _ = call(capsys, "tate", f("lang_10c.wsurf"), "--at", "0")
    _, raw, _ = call(capsys, "--json", "tate", f("lang_10c.wsurf"), "--at", "0")
    data = json.loads(raw)
    assert f"kodaira={data['kodaira']}" in text and "lang=10C" in text


def test_exit_codes(capsys, tmp_path):
    degenerate = tmp_path / "zero.wsurf"
    degenerate.write_text("p = 2\nm = 1\n")
    code, _, err = call(capsys, "surface", str(degenerate))
    assert code == 1 and "discriminant" in err
    bad = tmp_path / "bad.wsurf"
    bad.write_text("p = 2\nm = 1\na9 = t\n")
    assert call(capsys, "surface", str(bad))[0] == 2
    assert call(capsys, "surface", str(tmp_path / "missing.wsurf"))[0] == 2
    assert call(capsys, "tate", f("nine_c.wsurf"))[0] == 2
    assert call(capsys, "frobnicate")[0] == 2
    assert call(capsys, "mutate", f("case_iii.wsurf"), "--plan", f("case_v.plan"))[0] != 0
