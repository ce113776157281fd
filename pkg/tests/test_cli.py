import json

import pytest

from legdga.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "unknot")
    assert code == 0 and "valid A-form S={}" in out
    code, out, _ = run(capsys, "validate", "--aug", "100", "trefoil")
    assert code == 0 and out.splitlines()[-1] == "valid A-form S={b1}"
    code, out, _ = run(capsys, "validate", "trefoil")
    assert code == 1 and "invalid: right-cusp condition fails at slice 4" in out


def test_validate_json(capsys):
    code, out, _ = run(capsys, "validate", "--format", "json", "trefoil")
    data = json.loads(out)
    assert code == 1 and data["clause"] == "right-cusp" and data["slice"] == 4


def test_dga_tables(capsys):
    _, out, _ = run(capsys, "dga", "unknot")
    assert out == "∂c1 = 0\n"
    _, mcs, _ = run(capsys, "dga", "--which", "mcs", "--aug", "100", "trefoil")
    _, tw, _ = run(capsys, "dga", "--which", "ce-twisted", "--aug", "100", "trefoil")
    strip = lambda text: [ln.split(" = ")[1] for ln in text.splitlines()]  # noqa: E731
    assert strip(mcs) == strip(tw)
    assert "d c1 = b1 + b3 + b2*b3 + b1*b2*b3" in mcs


def test_dga_errors(capsys):
    code, _, err = run(capsys, "dga", "--which", "ce-twisted", "trefoil")
    assert code == 2 and "needs --aug" in err
    code, _, err = run(capsys, "dga", "--which", "ce-twisted", "--aug", "010", "trefoil")
    assert code == 2 and "not an augmentation" in err


def test_augs_and_aform(capsys):
    _, out, _ = run(capsys, "augs", "trefoil")
    assert "5 augmentation(s)" in out
    _, out, _ = run(capsys, "aform", "--format", "json", "trefoil")
    assert json.loads(out)["count"] == 5


def test_homology(capsys):
    code, out, _ = run(capsys, "homology", "trefoil")
    assert code == 0 and out.rstrip().endswith("multisets equal: yes")


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "all", "trefoil")
    assert code == 0 and out.rstrip().endswith("all passed on 1 front(s)")
    code, out, _ = run(capsys, "verify", "aug-bijection", "--random", "25", "--seed", "3")
    assert code == 0


def test_move_script(tmp_path, capsys):
    script = tmp_path / "moves.txt"
    script.write_text("move explosion 3 1 2\n# comment\nimplosion 3 1 2\n")
    code, out, _ = run(capsys, "move", "--aug", "00011", "--script", str(script), "explodable")
    assert code == 0
    assert out.splitlines()[0].startswith("# explosion 3 1 2 [label 15]")
    code, _, err = run(capsys, "move", "--aug", "100", "--step", "merge 2", "trefoil")
    assert code == 2 and "error" in err


def test_move_output_reparses(tmp_path, capsys):
    code, out, _ = run(capsys, "move", "--aug", "100", "--random", "6", "--seed", "4", "trefoil")
    f = tmp_path / "m.txt"
    f.write_text(out)
    code, out2, _ = run(capsys, "validate", str(f))
    assert code == 0 and out2.splitlines()[-1].startswith("valid")


def test_render(tmp_path, capsys):
    out_file = tmp_path / "t.svg"
    code, _, _ = run(capsys, "render", "--aug", "100", "--path", "c1:0", "--out", str(out_file), "trefoil")
    svg = out_file.read_text()
    assert code == 0 and svg.startswith("<svg") and 'class="mark"' in svg and 'class="chord"' in svg
    code, again, _ = run(capsys, "render", "--aug", "100", "--path", "c1:0", "trefoil")
    assert again == svg


def test_bad_input(capsys):
    code, _, err = run(capsys, "validate", "l 1; q 2")
    assert code == 2 and "line 1" in err
    with pytest.raises(SystemExit):
        main(["frobnicate"])
