import json

from utrees.cli import main
from utrees.io import TreeDocument

from helpers import path, star


def write_doc(tmp_path, name, tree, root=None):
    p = tmp_path / name
    p.write_text(TreeDocument.from_tree(tree, root=root).to_json() + "\n")
    return str(p)


def test_canon_and_iso(tmp_path, capsys):
    a = write_doc(tmp_path, "a.json", path(1, 2, 1))
    b = write_doc(tmp_path, "b.json", path(1, 2, 1))
    c = write_doc(tmp_path, "c.json", path(2, 1, 1))
    assert main(["canon", a]) == 0
    code_a = capsys.readouterr().out.strip()
    assert main(["canon", b]) == 0
    assert capsys.readouterr().out.strip() == code_a
    assert main(["iso", a, b]) == 0
    assert capsys.readouterr().out.strip() == "isomorphic"
    assert main(["iso", a, c]) == 1
    assert capsys.readouterr().out.strip() == "not isomorphic"


def test_upoly_output(tmp_path, capsys):
    f = write_doc(tmp_path, "p4.json", path(1, 1, 1, 1))
    assert main(["upoly", f]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "n=4 w=4 z=0"
    assert "2,2: 1" in out
    f2 = write_doc(tmp_path, "s4.json", star(1, 1, 1, 1))
    assert main(["upoly", f2]) == 0
    assert "2,2" not in capsys.readouterr().out


def test_shapes_and_alpha(tmp_path, capsys):
    f = write_doc(tmp_path, "p5.json", path(1, 1, 1, 1, 1))
    assert main(["shapes", f]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 4
    assert main(["alpha", f]) == 0
    assert capsys.readouterr().out.strip() == "2 3"


def test_encode_decode_roundtrip(tmp_path, capsys):
    f = write_doc(tmp_path, "t.json", path(5, 1, 6))
    assert main(["encode", f]) == 0
    encoded = capsys.readouterr().out.strip()
    obj = json.loads(encoded)
    assert "root" in obj
    enc_file = tmp_path / "enc.json"
    enc_file.write_text(encoded + "\n")
    assert main(["decode", str(enc_file)]) == 0
    decoded = json.loads(capsys.readouterr().out)
    assert sorted(int(w) for w in decoded["weights"]) == [1, 5, 6]


def test_check_good(tmp_path, capsys):
    f = write_doc(tmp_path, "t.json", path(5, 1, 6))
    assert main(["encode", f]) == 0
    enc = capsys.readouterr().out
    enc_file = tmp_path / "enc.json"
    enc_file.write_text(enc)
    assert main(["check-good", str(enc_file)]) == 0
    assert "good" in capsys.readouterr().out
    bad = write_doc(tmp_path, "bad.json", path(2, 1, 1))
    assert main(["check-good", str(bad)]) == 1


def test_count_with_oracle(tmp_path, capsys):
    f = write_doc(tmp_path, "p5.json", path(1, 1, 1, 1, 1))
    assert main(["count", f, "--j", "3", "--expr", "2,2,1", "--oracle"]) == 0
    out = capsys.readouterr().out
    assert "partitions=6" in out
    assert "non-shaped=2" in out
    assert "shaped=4" in out
    assert "shaped-enumerated=4" in out


def test_situations_and_m_count(tmp_path, capsys):
    f = write_doc(tmp_path, "p5.json", path(1, 1, 1, 1, 1))
    assert main(["situations", f, "--weight", "3"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 2
    assert main(["m-count", f, "--situation", "1,1(1)"]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_eval(tmp_path, capsys):
    f = write_doc(tmp_path, "p2.json", path(1, 1))
    assert main(["eval", "M", f, "--k", "2", "--q", "2", "--mode", "colourings"]) == 0
    assert capsys.readouterr().out.strip() == "4"
    assert main(["eval", "B", f, "--x", "0", "--y", "2", "--q", "2"]) == 0
    assert capsys.readouterr().out.strip() == "9"
    assert main(["eval", "Br", f, "--x", "0", "--k", "2", "--q", "2", "--r", "2"]) == 0
    assert capsys.readouterr().out.strip() == "36"


def test_census_cli(capsys):
    assert main(["census", "--max-n", "5", "--mode", "stanley"]) == 0
    out = capsys.readouterr().out
    assert "collisions=0" in out
    assert out.endswith("separates\n")


def test_exit_codes(tmp_path, capsys):
    missing = str(tmp_path / "missing.json")
    assert main(["canon", missing]) == 2
    f = write_doc(tmp_path, "p5.json", path(1, 1, 1, 1, 1))
    assert main(["count", f, "--j", "3", "--expr", "9"]) == 2
    big = write_doc(tmp_path, "p12.json", path(*([1] * 12)))
    assert main(["m-count", big, "--situation", "1,1,1,1,1"]) == 3
    capsys.readouterr()
