import json

from alcove_dl.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_jh_json_example(capsys):
    code, out, _ = run(capsys, "jh", "--group", "gl:2:1", "--p", "7",
                       "--s", "e", "--mu", "3,0", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["datum"] == {"n": 2, "f": 1}
    assert doc["p"] == 7
    assert doc["mu"] == "3,0"
    assert doc["eta"] == "1,0"
    assert [f["lambda"] for f in doc["factors"]] == ["3,0", "6,3"]
    first = doc["factors"][0]
    assert set(first) == {"lambda", "w_tilde", "w_lambda", "bv_param"}
    assert first["w_tilde"] == "t[0,-1]*w[2,1]"


def test_jh_byte_determinism(capsys):
    args = ("jh", "--group", "gl:2:1", "--p", "7", "--s", "w0", "--mu", "4,1")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_jh_tsv(capsys):
    code, out, _ = run(capsys, "jh", "--group", "gl:2:1", "--p", "7",
                       "--s", "e", "--mu", "3,0", "--format", "tsv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "lambda\tw_tilde\tw_lambda\tbv_param"
    assert len(lines) == 3


def test_depth_example(capsys):
    code, out, _ = run(capsys, "depth", "--group", "gl:2:1", "--p", "7",
                       "--lambda", "2,0")
    assert code == 0
    assert out.strip() == "2"


def test_precondition_exit_code(capsys):
    code, out, err = run(capsys, "jh", "--group", "gl:2:1", "--p", "7",
                         "--s", "e", "--mu", "1,0")
    assert code == 2
    assert "depth 0 < required 1" in err
    assert out == ""


def test_parse_error_exit_codes(capsys):
    assert run(capsys, "jh", "--group", "gl:9", "--p", "7", "--s", "e",
               "--mu", "1,0")[0] == 3
    assert run(capsys, "jh", "--group", "gl:2:1", "--p", "8", "--s", "e",
               "--mu", "3,0")[0] == 3
    assert run(capsys, "jh", "--group", "gl:2:1", "--p", "7", "--s", "e",
               "--mu", "3,0,1")[0] == 3
    assert run(capsys, "depth", "--group", "gl:2:1", "--p", "7")[0] == 3
    assert run(capsys, "bogus")[0] == 3
    assert run(capsys)[0] == 3


def test_wq_command(capsys):
    code, out, _ = run(capsys, "wq", "--group", "gl:2:1", "--p", "7",
                       "--s", "e", "--mu", "3,0")
    assert code == 0
    doc = json.loads(out)
    assert doc["classes"] == ["2,0", "5,3"]


def test_cover_command(capsys):
    code, out, _ = run(capsys, "cover", "--group", "gl:2:1", "--p", "7",
                       "--lambda", "3,0")
    assert code == 0
    doc = json.loads(out)
    assert doc["entries"] == [
        {"s": "1,2", "mu": "3,0", "hypothesis": "hyp1"},
        {"s": "2,1", "mu": "4,-1", "hypothesis": "hyp1"},
    ]
    code2, _, err2 = run(capsys, "cover", "--group", "gl:2:1", "--p", "7",
                         "--lambda", "6,0")
    assert code2 == 2
    assert "divisible" in err2


def test_adm_command(capsys):
    code, out, _ = run(capsys, "adm", "--group", "gl:2:1", "--p", "7",
                       "--type-w", "e", "--type-nu", "3,0",
                       "--s", "e", "--mu", "4,0")
    assert code == 0
    assert json.loads(out) == {"admissible": True}


def test_equiv_command(capsys):
    code, out, _ = run(capsys, "equiv", "--group", "gl:2:1", "--p", "7",
                       "--s", "e", "--mu", "3,0",
                       "--type-w", "e", "--type-nu", "0,3")
    assert code == 0
    assert json.loads(out) == {"equivalent": True}


def test_eliminate_command(capsys):
    code, out, _ = run(capsys, "eliminate", "--group", "gl:2:1", "--p", "7",
                       "--s", "e", "--mu", "3,0", "--lambda", "-1,-3")
    assert code == 0
    doc = json.loads(out)
    assert doc["in_w_question"] is True
    assert doc["lambda"] == "-1,-3"
    assert all(set(r) == {"s", "mu", "hypothesis", "admissible"}
               for r in doc["covering"])


def test_enumerate_command(capsys):
    code, out, _ = run(capsys, "enumerate", "--group", "gl:3:1")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["restricted_alcove_reps"]) == 2
    assert len(doc["transversal"]) == 6


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "--group", "gl:2:1", "--p", "7",
                       "--lemma", "barycenter", "--trials", "200", "--seed", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["reports"][0]["lemma"] == "barycenter"
    assert doc["reports"][0]["violations"] == 0
    assert "elapsed_ms" not in doc["reports"][0]


def test_verify_unknown_lemma(capsys):
    assert run(capsys, "verify", "--group", "gl:2:1", "--p", "7",
               "--lemma", "nope")[0] == 3


def test_out_flag(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "depth", "--group", "gl:2:1", "--p", "7",
                       "--lambda", "2,0", "--out", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text().strip() == "2"


def test_element_roundtrip_through_cli_output(capsys):
    from alcove_dl.affine_weyl import parse_elt
    from alcove_dl.root_datum import gl, parse_weight

    _, out, _ = run(capsys, "jh", "--group", "gl:2:2", "--p", "7",
                    "--s", "e", "--mu", "3,1;4,2")
    doc = json.loads(out)
    d = gl(2, 2)
    for fac in doc["factors"]:
        assert parse_weight(d, fac["lambda"]) is not None
        elt = parse_elt(d, fac["w_tilde"])
        assert fac["w_tilde"] == str(elt)
