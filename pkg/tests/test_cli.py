import json
import subprocess
import sys

import pytest

from ringcover.cli import parse_profile, run
from ringcover.covering import INF, profile
from ringcover.ring import build_family


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(payload if isinstance(payload, str) else json.dumps(payload))
    return str(path)


@pytest.fixture
def r4_file(tmp_path):
    return _write(tmp_path, "r4.json", build_family("R4", 2).presentation.to_dict())


def test_family_json(capsys):
    assert run(["family", "R4", "--p", "2"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["profile"] == {"sigma_add": 3, "sigma": 3, "eta_left": 3, "eta_right": 3, "eta": "inf"}
    assert report["identity"] is None
    assert set(report["witnesses"]) == {"sigma_add", "sigma", "eta_left", "eta_right"}


def test_profile_round_trip(r4_file, capsys):
    assert run(["profile", r4_file]) == 0
    text = capsys.readouterr().out
    assert parse_profile(text) == profile(build_family("R4", 2))


def test_output_is_byte_deterministic(r4_file, capsys):
    run(["profile", r4_file])
    first = capsys.readouterr().out
    run(["profile", r4_file])
    assert capsys.readouterr().out == first


def test_formats_agree(capsys):
    run(["family", "R2", "--p", "3", "--format", "csv"])
    csv = capsys.readouterr().out.splitlines()
    run(["family", "R2", "--p", "3", "--format", "table"])
    table = capsys.readouterr().out.splitlines()
    run(["family", "R2", "--p", "3"])
    prof = json.loads(capsys.readouterr().out)["profile"]
    assert csv[1].split(",") == [str(v) for v in prof.values()]
    assert [c.strip() for c in table[2].strip("|").split("|")] == [str(v) for v in prof.values()]


def test_no_witness(capsys):
    run(["named", "V", "--no-witness"])
    report = json.loads(capsys.readouterr().out)
    assert "witnesses" not in report
    assert report["profile"]["eta"] == "inf" and report["identity"] is not None


def test_out_option(tmp_path, capsys):
    target = tmp_path / "report.json"
    assert run(["family", "R1", "--p", "2", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert parse_profile(target.read_text()).as_tuple() == (3, 3, 3, 3, 3)


def test_census_table(capsys):
    assert run(["census", "--order", "4", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "sigma,eta_left,eta_right,eta,count"
    assert len(lines) == 5


def test_census_json_and_shape(capsys):
    assert run(["census", "--shape", "3,3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["structures"] == {"3x3": 121}
    assert data["total_classes"] == 8


def test_census_refuses_large_order(capsys):
    assert run(["census", "--order", "16"]) == 3
    assert "allow-large" in capsys.readouterr().err


def test_quotient(r4_file, capsys):
    assert run(["quotient", r4_file, "--seed", "0,1,0"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["ring"]["order"] == 4
    assert parse_profile(json.dumps(report)).as_tuple() == (3, 3, 3, INF, INF)


def test_product_and_isomorphic(tmp_path, capsys):
    a = _write(tmp_path, "a.json", build_family("R1", 2).presentation.to_dict())
    b = _write(tmp_path, "b.json", build_family("R1", 3).presentation.to_dict())
    assert run(["product", a, b, "--no-witness"]) == 0
    assert parse_profile(capsys.readouterr().out).eta == 3
    c = _write(tmp_path, "c.json", build_family("R2", 2).presentation.to_dict())
    assert run(["isomorphic", a, c]) == 0
    assert json.loads(capsys.readouterr().out) == {"isomorphic": False, "mapping": None}
    assert run(["isomorphic", c, c]) == 0
    assert json.loads(capsys.readouterr().out)["isomorphic"] is True


def test_verify_passes(capsys):
    assert run(["verify", "theorem", "--format", "table"]) == 0
    out = capsys.readouterr().out
    assert out and "FAIL" not in out


@pytest.mark.parametrize(
    "payload, code, needle",
    [
        ({"orders": [2, 4], "products": [[[0, 1], [0, 0]], [[0, 0], [0, 0]]]}, 1, "ill-defined"),
        ({"orders": [2, 2], "products": [[[1, 0], [0, 1]], [[0, 0], [0, 1]]]}, 1, "associative"),
        ({"orders": [2], "products": [[[0, 0]]]}, 2, "products[0][0]"),
        ("{not json", 2, "JSON"),
        ({"orders": [16, 16, 32], "products": None}, 2, "products"),
    ],
)
def test_bad_presentations(tmp_path, capsys, payload, code, needle):
    path = _write(tmp_path, "bad.json", payload)
    assert run(["profile", path]) == code
    assert needle in capsys.readouterr().err


def test_too_large_exit_code(tmp_path, capsys):
    zeros = [[[0, 0, 0] for _ in range(3)] for _ in range(3)]
    path = _write(tmp_path, "big.json", {"orders": [16, 16, 32], "products": zeros})
    assert run(["profile", path]) == 3
    assert run(["family", "R4", "--p", "17"]) == 3
    assert run(["family", "R1", "--p", "4"]) == 2


def test_usage_errors(capsys):
    assert run(["profile", "/nonexistent/ring.json"]) == 2
    assert run(["family", "R9", "--p", "2"]) == 2
    assert run([]) == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ringcover", "family", "R3", "--p", "2", "--no-witness"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert parse_profile(proc.stdout).as_tuple() == (3, 3, INF, 3, INF)
