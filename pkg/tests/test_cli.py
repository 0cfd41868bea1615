import json

import pytest

from sdperv.cli import main
from sdperv.spaces import circle


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_membership_witness(capsys):
    rc, out, _ = run(capsys, "membership", "--space", "circle", "--sheaf", "constant", "--cut", "1/4")
    assert rc == 0
    res = json.loads(out)
    assert res["cut"] == "1/4"
    assert not res["sides"]["le"]["member"]
    w = res["sides"]["le"]["witness"]
    assert w["kind"] == "stalk" and w["dim"] == 1 and w["local_cut"] == "-1/4"
    assert res["sides"]["ge"]["member"]


def test_membership_negative_cut(capsys):
    rc, out, _ = run(capsys, "membership", "--space", "point", "--sheaf", "constant:Z/2",
                     "--cut", "-1/2")
    assert rc == 0
    res = json.loads(out)
    assert res["sides"]["le"]["member"] and res["sides"]["ge"]["member"]
    rc, out, _ = run(capsys, "membership", "--space", "point", "--sheaf", "constant:Z/2",
                     "--cut", "-1/2", "--structure", "ks")
    assert not json.loads(out)["sides"]["le"]["member"]


def test_truncate_writes_files(capsys, tmp_path):
    rc, out, _ = run(capsys, "truncate", "--space", "circle", "--sheaf", "skyscraper:0-1",
                     "--cut", "0", "--flavor", "lt-ge", "--out", str(tmp_path))
    assert rc == 0
    rep = json.loads(out)
    assert rep["lower_member"] and rep["upper_member"] and rep["cone_matches_upper"]
    for name in ("lower.json", "upper.json", "triangle.json"):
        assert (tmp_path / name).exists()
    # the written pieces load back as sheaves
    rc, out, _ = run(capsys, "sections", "--space", "circle", "--sheaf", str(tmp_path / "upper.json"))
    assert rc == 0


def test_dual_roundtrip(capsys, tmp_path):
    f = tmp_path / "d.json"
    rc, _, _ = run(capsys, "dual", "--space", "circle", "--sheaf", "constant", "--out", str(f))
    assert rc == 0
    rc, out, _ = run(capsys, "sections", "--space", "circle", "--sheaf", str(f))
    h = json.loads(out)["cohomology"]
    # D(Z_{S^1}) = Z[1]: sections in degrees -1 and 0
    assert set(h) == {"-1", "0"}
    assert h["-1"] == {"rank": 1, "torsion": []}


def test_space_file(capsys, tmp_path):
    f = tmp_path / "space.json"
    f.write_text(json.dumps(circle().to_json()))
    rc, out, _ = run(capsys, "sections", "--space", str(f), "--sheaf", "constant")
    assert rc == 0
    assert set(json.loads(out)["cohomology"]) == {"0", "1"}
    rc, out, _ = run(capsys, "sections", "--space", "circle", "--sheaf", "constant",
                     "--cells", "0-1", "--compact")
    assert json.loads(out)["cohomology"] == {"1": {"rank": 1, "torsion": []}}


def test_verify(capsys):
    rc, out, _ = run(capsys, "verify", "--space", "interval", "--samples", "3", "--seed", "1",
                     "--grid", "-1:1:1/2")
    assert rc == 0
    rep = json.loads(out)
    assert rep["failures"] == [] and rep["counts"]["orthogonality"]["failed"] == 0
    rc, out, _ = run(capsys, "verify", "--space", "interval", "--samples", "0")
    assert rc == 0 and json.loads(out)["counts"] == {}


def test_verify_deterministic(capsys):
    args = ("verify", "--space", "circle", "--samples", "2", "--seed", "4", "--grid", "0,1/2")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b


@pytest.mark.parametrize("argv", [
    ["membership", "--space", "klein", "--sheaf", "constant", "--cut", "0"],
    ["membership", "--space", "circle", "--sheaf", "constant", "--cut", "x/2"],
    ["membership", "--space", "circle", "--sheaf", "skyscraper:9", "--cut", "0"],
    ["membership", "--space", "circle", "--sheaf", "bogus", "--cut", "0"],
    ["truncate", "--space", "circle", "--sheaf", "constant", "--cut", "0", "--flavor", "le-ge"],
    ["sections", "--space", "circle", "--sheaf", "constant", "--cells", "0"],
    ["verify", "--space", "circle", "--grid", "1:0:0"],
    ["example", "no-such-example"],
    ["membership", "--space", "circle", "--sheaf", "/nonexistent/file.json", "--cut", "0"],
    [],
])
def test_input_errors(capsys, argv):
    rc, _, _ = run(capsys, *argv)
    assert rc == 2
