import json

import pytest

from qtypes import cli
from qtypes.errors import DegenerateSamplingError
from qtypes.report import SCHEMA_VERSION
from qtypes.sampling import SliceSampler


def run(capsys, *argv):
    status = cli.main(list(argv))
    out = capsys.readouterr().out
    return status, out


def run_json(capsys, *argv):
    status, out = run(capsys, *argv)
    return status, json.loads(out)


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def test_mult(capsys, files):
    status, doc = run_json(capsys, "mult", files("i.txt", "vars z1 z2\nz1^2\nz2^3\n"))
    assert status == 0 and doc["schema"] == SCHEMA_VERSION
    assert doc["result"]["value"] == {"kind": "finite", "num": 6, "den": 1}
    assert doc["result"]["zero_dimensional"] is True
    assert doc["config"]["seed"] == 0 and doc["config"]["truncation"] == 64


def test_tdeltaq(capsys, files):
    path = files("i.txt", "vars z1 z2 z3\nz1^2; z2^2; z3^2\n")
    status, doc = run_json(capsys, "tdeltaq", path, "--q", "2", "--samples", "20", "--seed", "3")
    report = doc["result"]["report"]
    assert status == 0
    assert doc["result"]["value"] == {"kind": "finite", "num": 2, "den": 1}
    assert report["frequency"] == {"num": 1, "den": 1} and report["seed"] == 3


def test_verify_monomial_small(capsys):
    status, doc = run_json(capsys, "verify", "--corpus", "monomial-small", "--samples", "20")
    report = doc["result"]["report"]
    assert status == 0 and report["ok"]
    assert report["counts"]["fail"] == 0 and report["counts"]["pass"] > 0
    assert report["excluded"][0]["law"] == "external-counterexample-gap"


def test_parse_error_exit_code(capsys, files):
    status, doc = run_json(capsys, "mult", files("bad.txt", "vars z1\nz1 + w\n"))
    assert status == 2
    assert doc["error"] == {"code": "parse_error", "message": "undeclared identifier w", "line": 2, "column": 6}


def test_degenerate_sampling_exit_code(capsys, files, monkeypatch):
    def always_degenerate(self, *args, **kwargs):
        raise DegenerateSamplingError("forced")

    monkeypatch.setattr(SliceSampler, "draw", always_degenerate)
    status, doc = run_json(capsys, "tdeltaq", files("i.txt", "vars z1 z2\nz1^2; z2^3\n"), "--q", "2")
    assert status == 3 and doc["error"]["code"] == "degenerate_sampling"


def test_other_errors_exit_one(capsys, files):
    status, doc = run_json(capsys, "tdeltaq", files("i.txt", "vars z1 z2\nz1^2; z2^3\n"))
    assert status == 1 and "--q" in doc["error"]["message"]
    status, _ = run_json(capsys, "mult", "/nonexistent/file")
    assert status == 1
    status, _ = run_json(capsys, "mult", files("i.txt", "vars z1\nz1\n"), "--samples", "0")
    assert status == 1


def test_verify_failure_exit_code(capsys, monkeypatch):
    from qtypes.verify import FAIL, LawResult, VerifyReport

    monkeypatch.setattr(
        cli, "verify_corpus", lambda *a, **k: VerifyReport("x", (LawResult("law", "inst", FAIL),))
    )
    status, _ = run_json(capsys, "verify", "--corpus", "monomial-small")
    assert status == 4


def test_structured_output_is_deterministic(capsys, files):
    path = files("i.txt", "vars z1 z2 z3\nz1^2 + z2^3; z3^3; z2^4\n")
    args = ("tdeltaq", path, "--q", "2", "--samples", "6", "--seed", "17")
    _, a = run(capsys, *args)
    _, b = run(capsys, *args, "--workers", "2")
    assert a == b


def test_cylinder_and_slice(capsys, files):
    curve = files("c.txt", "vars z1 z2 z3\nparam t\nt^2\nt^3\n0\n")
    status, doc = run_json(capsys, "cylinder", curve, "--directrix", "0,0,1")
    assert status == 0 and all(doc["result"]["postconditions"].values())

    ideal = files("i.txt", "vars z1 z2 z3\nz2\n")
    status, doc = run_json(capsys, "slice", curve, "--directrix", "0,0,1", "--forms", "z3 - z1", "--ideal", ideal)
    assert status == 0 and doc["result"]["value"] == {"kind": "finite", "num": 3, "den": 2}

    status, doc = run_json(capsys, "cylinder", files("d.txt", "vars z1 z2 z3\nparam t\n0\n0\nt\n"),
                           "--directrix", "0,0,1")
    assert status == 1 and doc["error"]["code"] == "tangent_in_directrix"


def test_qpos(capsys, files):
    curve = files("c.txt", "vars z1 z2 z3\nparam t\nt\n0\n0\n")
    hyp = files("h.txt", "vars z1 z2 z3\nh: 2*z3\nf: z1; z2\n")
    status, doc = run_json(capsys, "qpos", curve, hyp, "--forms", "z2")
    assert status == 0 and doc["result"]["report"]["verdict"] is True
    cancel = files("k.txt", "vars z1 z2 z3\nh: 2*z3\nf: z1\ng: z1\n")
    _, doc = run_json(capsys, "qpos", curve, cancel, "--forms", "z2")
    assert doc["result"]["report"]["indeterminate"] is True


def test_delta1_and_catlinq(capsys, files):
    status, doc = run_json(capsys, "delta1", files("i.txt", "vars z1 z2\nz1^2; z2^3\n"))
    assert status == 0 and doc["result"]["method"] == "monomial"
    assert doc["result"]["value"] == {"kind": "finite", "num": 3, "den": 1}
    path = files("j.txt", "vars z1 z2 z3\nz2^3; z3^3\n")
    status, doc = run_json(capsys, "catlinq", path, "--q", "2", "--samples", "5")
    assert status == 0 and doc["result"]["value"] == {"kind": "finite", "num": 3, "den": 1}


def test_text_format(capsys, files):
    status, out = run(capsys, "mult", files("i.txt", "vars z1 z2\nz1^2\nz2^3\n"), "--format", "text")
    assert status == 0 and out.strip() == "multiplicity: 6"


def test_stdin_input(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("vars z1 z2\nz1; z2\n"))
    status, doc = run_json(capsys, "mult", "-")
    assert status == 0 and doc["result"]["value"]["num"] == 1
