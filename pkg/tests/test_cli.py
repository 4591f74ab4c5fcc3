"""End-to-end command line checks: exit codes, output shapes, determinism."""

import json
import subprocess
import sys

import pytest

from corpus import build_corpus, build_negative
from leavitt import cli


def write_graph(tmp_path, graph, name="graph.json"):
    path = tmp_path / name
    path.write_text(json.dumps(graph.to_json_dict()))
    return str(path)


def run_main(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_classify_json(tmp_path, capsys):
    p = write_graph(tmp_path, build_corpus()["a3"])
    code, out, _ = run_main(capsys, ["classify", "--input", p])
    assert code == 0
    data = json.loads(out)
    assert data["no_exit"] is True
    assert data["block_count"] == 1
    assert data["central_triple"] == [1, 0, 0]


def test_classify_text_format(tmp_path, capsys):
    p = write_graph(tmp_path, build_corpus()["sink_loop"])
    code, out, _ = run_main(capsys, ["classify", "--input", p, "--format", "text"])
    assert code == 0
    assert "no_exit: True" in out
    assert "block_count: 2" in out


def test_decompose_reports_blocks(tmp_path, capsys):
    p = write_graph(tmp_path, build_corpus()["fedcycle"])
    code, out, _ = run_main(capsys, ["decompose", "--input", p])
    assert code == 0
    data = json.loads(out)
    assert len(data["blocks"]) == 1
    blk = data["blocks"][0]
    assert blk["kind"] == "cycle"
    assert len(blk["paths"]) == 5
    assert blk["shifts"] == [0, 1, 1, 2, 2]
    assert blk["t"] == 3


def test_decompose_rejects_exit(tmp_path, capsys):
    for g in build_negative().values():
        p = write_graph(tmp_path, g)
        code, out, err = run_main(capsys, ["decompose", "--input", p])
        assert code == 2
        assert out == ""
        assert "error" in err


def test_classify_tolerates_exit(tmp_path, capsys):
    """classify never needs the exit condition, it reports the flags."""
    p = write_graph(tmp_path, build_negative()["toeplitz"])
    code, out, _ = run_main(capsys, ["classify", "--input", p])
    assert code == 0
    data = json.loads(out)
    assert data["no_exit"] is False
    assert data["graded_regular"] is False


def test_malformed_input_is_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{this is not json")
    code, out, err = run_main(capsys, ["classify", "--input", str(bad)])
    assert code == 1 and out == "" and "malformed" in err

    code, out, err = run_main(capsys, ["classify", "--input", str(tmp_path / "no.json")])
    assert code == 1 and out == ""

    shape = tmp_path / "shape.json"
    shape.write_text(json.dumps({"vertices": ["v"], "edges": [{"id": "e"}]}))
    code, out, err = run_main(capsys, ["classify", "--input", str(shape)])
    assert code == 1 and out == ""

    dangling = tmp_path / "dangling.json"
    dangling.write_text(
        json.dumps({"vertices": ["v"], "edges": [{"id": "e", "src": "v", "dst": "w"}]})
    )
    code, out, err = run_main(capsys, ["classify", "--input", str(dangling)])
    assert code == 1 and out == ""


def test_dims_all_equal(tmp_path, capsys):
    p = write_graph(tmp_path, build_corpus()["tree"])
    code, out, _ = run_main(capsys, ["dims", "--input", p, "--bound", "6"])
    assert code == 0
    data = json.loads(out)
    assert data["all_equal"] is True
    assert len(data["rows"]) == 13


def test_verify_iso_passes(tmp_path, capsys):
    for name in ("a3", "cyc3", "fedcycle"):
        p = write_graph(tmp_path, build_corpus()[name])
        code, out, _ = run_main(capsys, ["verify-iso", "--input", p])
        assert code == 0
        data = json.loads(out)
        assert data["failed"] == 0 and data["total"] > 0


def test_verify_iso_corrupt_is_exit_3(tmp_path, capsys):
    p = write_graph(tmp_path, build_corpus()["a3"])
    code, out, _ = run_main(capsys, ["verify-iso", "--input", p, "--corrupt"])
    assert code == 3
    data = json.loads(out)
    assert data["failed"] > 0


def test_verify_iso_corrupt_over_f3(tmp_path, capsys):
    """The corruption stays visible in characteristic 3 (it is not a doubling)."""
    p = write_graph(tmp_path, build_corpus()["loop"])
    code, out, _ = run_main(
        capsys, ["verify-iso", "--input", p, "--corrupt", "--field", "fp:3"]
    )
    assert code == 3


def test_regular_witness_deterministic(tmp_path, capsys):
    p = write_graph(tmp_path, build_corpus()["cyc2"])
    argv = ["regular-witness", "--input", p, "--seed", "7", "--samples", "3"]
    code1, out1, _ = run_main(capsys, argv)
    code2, out2, _ = run_main(capsys, argv)
    assert code1 == code2 == 0
    assert out1 == out2
    data = json.loads(out1)
    assert data["seed"] == 7
    assert len(data["witnesses"]) == 3
    assert all(w["aba_equals_a"] for w in data["witnesses"])


def test_regular_witness_explicit_element(tmp_path, capsys):
    g = build_corpus()["loop"]
    p = write_graph(tmp_path, g)
    elem = tmp_path / "elem.json"
    elem.write_text(
        json.dumps([{"p": ["c"], "p_base": "v1", "q": [], "q_base": "v1", "coeff": "2"}])
    )
    code, out, _ = run_main(
        capsys, ["regular-witness", "--input", p, "--element", str(elem)]
    )
    assert code == 0
    data = json.loads(out)
    w = data["witnesses"][0]
    assert w["degree"] == 1 and w["inverse_degree"] == -1 and w["aba_equals_a"]


def test_idempotent_report_command(tmp_path, capsys):
    g = build_corpus()["sink_loop"]
    p = write_graph(tmp_path, g)
    elem = tmp_path / "vertex.json"
    elem.write_text(
        json.dumps([{"p": [], "p_base": "s", "q": [], "q_base": "s", "coeff": "1"}])
    )
    code, out, _ = run_main(
        capsys, ["idempotent-report", "--input", p, "--element", str(elem)]
    )
    assert code == 0
    data = json.loads(out)
    assert data["is_idempotent"] is True
    assert data["block_ranks"] == [1, 0]
    assert data["abelian"] is True and data["faithful"] is False


def test_type_witness_command(tmp_path, capsys):
    p = write_graph(tmp_path, build_corpus()["tree"])
    code, out, _ = run_main(capsys, ["type-witness", "--input", p])
    assert code == 0
    data = json.loads(out)
    assert data["report"]["abelian"] is True
    assert data["report"]["faithful"] is True
    assert len(data["witness"]) == 2  # one vertex per block


def test_field_option_prime(tmp_path, capsys):
    p = write_graph(tmp_path, build_corpus()["cyc3"])
    code, out, _ = run_main(capsys, ["verify-iso", "--input", p, "--field", "fp:7"])
    assert code == 0
    assert json.loads(out)["failed"] == 0


def test_field_option_rejects_composite(tmp_path, capsys):
    p = write_graph(tmp_path, build_corpus()["a2"])
    with pytest.raises(SystemExit) as exc:
        cli.main(["classify", "--input", p, "--field", "fp:10003"])
    assert exc.value.code == 2  # argparse usage error
    capsys.readouterr()


def test_installed_script_runs(tmp_path):
    p = write_graph(tmp_path, build_corpus()["a2"])
    proc = subprocess.run(
        [sys.executable, "-m", "leavitt.cli", "classify", "--input", p],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["no_exit"] is True
