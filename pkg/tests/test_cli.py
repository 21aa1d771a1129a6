import json

import pytest

from sotl.cli import main
from sotl.fixtures import data_dir

MODELS = data_dir() / "models"
LABELLED = data_dir() / "labelled"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_prove_forall_box(capsys, tmp_path):
    code, out, _ = run(capsys, "prove", "--calc", "mlikt2", "--fuel", "50",
                       "=> v: forall X box P -> box forall X P")
    assert code == 0
    assert out.startswith("# labelled proof")
    f = tmp_path / "p.lpf"
    f.write_text(out)
    assert run(capsys, "check-labelled", "--calc", "mlikt2", "--no-cut", str(f))[0] == 0


def test_prove_exhausted(capsys):
    code, out, _ = run(capsys, "prove", "--calc", "mlikt2", "--fuel", "30", "=> v: P or not P")
    assert code == 1
    assert out.startswith("exhausted after")


def test_lemma_then_check_hilbert(capsys, tmp_path):
    f = tmp_path / "ik1.hpf"
    assert run(capsys, "lemma", "ik-thm-1", "-o", str(f))[0] == 0
    code, out, _ = run(capsys, "check-hilbert", "--sys", "ikt2", str(f))
    assert code == 0 and out.startswith("accepted by IKt2")


def test_check_hilbert_rejects_dne(capsys, tmp_path):
    f = tmp_path / "dne.hpf"
    f.write_text("# hilbert proof\n0\t(P -> bot) -> bot) -> P\tAX dne\tA=P\n".replace("(P -> bot)", "((P -> bot)", 1))
    code, out, _ = run(capsys, "check-hilbert", "--sys", "ikt2", str(f))
    assert code == 1 and "rejected by IKt2" in out
    assert run(capsys, "check-hilbert", "--sys", "kt2", str(f))[0] == 0


def test_check_labelled_fixture(capsys):
    f = str(LABELLED / "or_forall_dist.lpf")
    assert run(capsys, "check-labelled", "--calc", "lkt2", f)[0] == 0
    code, out, _ = run(capsys, "check-labelled", "--calc", "likt2", f)
    assert code == 1 and out.startswith("rejected by LIKt2")


def test_model_eval(capsys):
    code, out, _ = run(capsys, "model-eval", str(MODELS / "one_world.model"), "w", "box (forall X X)")
    assert (code, out.strip()) == (0, "true")
    code, out, _ = run(capsys, "model-eval", str(MODELS / "one_world.model"), "w", "forall X X")
    assert (code, out.strip()) == (1, "false")


def test_model_eval_predicate_point(capsys):
    f = str(MODELS / "pred_chain2x2.model")
    assert run(capsys, "model-eval", f, "b,v", "P")[0] == 0
    assert run(capsys, "model-eval", f, "b", "P")[0] == 2


def test_model_validate(capsys):
    code, out, _ = run(capsys, "model-validate", str(MODELS / "birel_kripke2.model"))
    assert (code, out.strip()) == (0, "ok")


def test_structured_output(capsys):
    code, out, _ = run(capsys, "--format", "structured", "parse", "P -> box Q")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == 0 and data["formula"] == "P -> box Q"


def test_structured_error(capsys):
    code, out, _ = run(capsys, "--format", "structured", "parse", "P ->")
    assert code == 2
    assert "column" in json.loads(out)["error"]


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "parse", "(P -> Q")
    assert code == 2 and err.startswith("error:")


def test_missing_file(capsys, tmp_path):
    assert run(capsys, "check-hilbert", str(tmp_path / "absent.hpf"))[0] == 2


def test_interpret(capsys):
    code, out, _ = run(capsys, "interpret", "--label", "u", "uRw | => w: A")
    assert (code, out.strip()) == (0, "box A")


def test_compile_fixture(capsys, tmp_path):
    code, out, _ = run(capsys, "compile", "--label", "w", str(LABELLED / "forall_box.lpf"))
    assert code == 0
    f = tmp_path / "c.hpf"
    f.write_text(out + "\n")
    assert run(capsys, "check-hilbert", str(f))[0] == 0


def test_multi_to_single_rejects_classical(capsys):
    code, out, _ = run(capsys, "multi-to-single", str(LABELLED / "or_forall_dist.lpf"))
    assert code == 1 and out.startswith("rejected")


def test_negneg(capsys):
    code, out, _ = run(capsys, "negneg", "--label", "v", str(LABELLED / "bbox_box.lpf"))
    assert code == 0 and out.startswith("# labelled proof")


def test_fixtures_on_empty_dir(capsys, tmp_path):
    code, _, err = run(capsys, "fixtures", "labelled", "--dir", str(tmp_path))
    assert code == 2 and "unknown suite content" in err


def test_fixtures_labelled(capsys):
    code, out, _ = run(capsys, "fixtures", "labelled")
    assert code == 0 and "FAIL" not in out


def test_config_file_defaults(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"fuel": 1}))
    code, out, _ = run(capsys, "--config", str(cfg), "prove", "=> v: forall X box P -> box forall X P")
    assert code == 1
    assert run(capsys, "--config", str(cfg), "prove", "--fuel", "50", "=> v: forall X box P -> box forall X P")[0] == 0


def test_config_must_be_object(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("[1]")
    assert run(capsys, "--config", str(cfg), "parse", "P")[0] == 2


def test_lemma_list(capsys):
    code, out, _ = run(capsys, "lemma", "--list")
    assert code == 0 and "ik-thm-1" in out


@pytest.mark.parametrize("argv", [["lemma", "no-such-lemma"], ["prove", "--fuel", "0", "=> v: P"]])
def test_bad_arguments(capsys, argv):
    assert run(capsys, *argv)[0] == 2
