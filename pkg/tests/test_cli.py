import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from opetopic.cli import run
from opetopic.document import parse

DATA = Path(__file__).parent / "data"
TRI2 = str(DATA / "tri2.ost")


def cli(*args):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in args], out, err)
    return code, out.getvalue(), err.getvalue()


def test_validate_fixture_passes():
    code, out, _ = cli("validate", TRI2)
    assert code == 0
    assert "fail" not in out
    assert all(f"O{i}" in out for i in range(1, 9))


def test_validate_json_report():
    code, out, _ = cli("validate", TRI2, "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["status"] == "ok" and data["command"] == "validate"
    assert data["result"]["ok"] is True
    assert [r["label"] for r in data["result"]["results"]] == [f"O{i}" for i in range(1, 9)]
    code2, out2, _ = cli("--format", "json", "validate", TRI2)
    assert (code2, out2) == (code, out)


def test_validate_failure_exits_one(tmp_path):
    # drop the inner diamond of tri2
    lines = (DATA / "tri2.ost").read_text().splitlines(keepends=True)
    path = tmp_path / "bad.ost"
    path.write_text("".join(ln for ln in lines if '"het": ["s:a1:c"' not in ln))
    code, out, _ = cli("validate", path)
    assert code == 1
    assert "O4" in out and "fail" in out


def test_validate_flipped_polarity(tmp_path):
    path = tmp_path / "bad.ost"
    text = (DATA / "tri2.ost").read_text().replace('"polarity": "t"}\n  ]',
                                                     '"polarity": "s"}\n  ]')
    path.write_text(text)
    code, out, _ = cli("validate", path)
    assert code == 1


def test_enumerate_count_example():
    assert cli("enumerate", "--degree", "3", "--nodes", "2", "--max-arity", "2", "--count")[:2] \
        == (0, "9\n")
    assert cli("enumerate", "--degree", "3", "--nodes", "1", "--max-arity", "2", "--count")[1] \
        == "3\n"


def test_classify_example():
    code, out, _ = cli("classify", TRI2)
    assert code == 0
    assert set(out.splitlines()) == {"p1: Inner", "p0: Glob2", "p2: Glob1"}


def test_classify_loop_code():
    lines = cli("classify", str(DATA / "loop_code.ost"))[1].splitlines()
    assert len(lines) == 1 and lines[0].endswith(": Degen")


def test_usage_errors_exit_two():
    assert cli("validate", "no/such/file.ost")[0] == 2
    assert cli("frobnicate")[0] == 2
    assert cli("enumerate")[0] == 2
    assert cli("oracle-enumerate", "--profile", "a,b")[0] == 2
    assert cli("slice", TRI2, "zz")[0] == 2


def test_parse_error_exits_two(tmp_path):
    path = tmp_path / "broken.ost"
    path.write_text("{\n  \"format_version\": \n}")
    code, _, err = cli("validate", path)
    assert code == 2 and "line" in err
    code, out, _ = cli("validate", path, "--format", "json")
    assert code == 2 and json.loads(out)["status"] == "error"


def test_inline_code_and_decode():
    code, out, _ = cli("decode", "{deg(o)}")
    assert code == 0
    doc = parse(out)
    assert doc.payload.profile() == (1, 1, 1)
    assert cli("encode", TRI2)[1] == "{nd({nd(o)()})(nd({nd(o)()})(lf))}\n"


def test_commands_produce_documents():
    for args in (("slice", TRI2, "a1"), ("boundary", TRI2), ("horn", TRI2), ("target", TRI2),
                 ("shift", TRI2), ("degen", TRI2)):
        code, out, err = cli(*args)
        assert code == 0, (args, err)
        parse(out)


def test_fill_round_trip(tmp_path):
    path = tmp_path / "bd.ost"
    path.write_text(cli("boundary", TRI2)[1])
    code, out, _ = cli("fill", path, "--top", "c")
    assert code == 0
    assert cli("iso", TRI2, _save(tmp_path, "f.ost", out))[0] == 0


def _save(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_subst_and_graft(tmp_path):
    base = _save(tmp_path, "base.ost", cli("shift", TRI2)[1])
    degen = _save(tmp_path, "degen.ost", cli("degen", "{nd(o)()}")[1])
    arrow_pd = _save(tmp_path, "tri1.ost", cli("shift", "{nd({nd(o)()})(lf)}")[1])
    code, out, err = cli("graft", base, "--piece", f"a1={arrow_pd}", "--piece", f"a2={degen}")
    assert code == 0, err
    grafted = _save(tmp_path, "g.ost", out)
    assert cli("encode", grafted)[1] == "{nd({nd({nd(o)()})(nd({nd(o)()})(lf))})" \
        "(lf,nd({nd({nd(o)()})(lf)})(lf))}\n"
    code, out, err = cli("subst", base, "--piece", f"c={base}")
    assert code == 0, err
    shifted = parse(cli("shift", TRI2)[1]).payload
    assert parse(out).payload.graph.profile() == shifted.graph.profile()
    assert cli("graft", base, "--piece", "nope")[0] == 2


def test_hom_and_iso():
    code, out, _ = cli("hom", TRI2, "p1", "c")
    assert code == 0 and len(out.splitlines()) == 1
    assert cli("iso", TRI2, str(DATA / "tri3.ost"))[0] == 1


def test_oracle_and_counts():
    assert cli("oracle-enumerate", "--profile", "3,3,1", "--count")[1] == "1\n"
    code, out, _ = cli("oracle-enumerate", "--profile", "4,4,1,1")
    assert code == 1
    code, out, _ = cli("counts", "--max-degree", "2", "--format", "json")
    rows = json.loads(out)["result"]
    assert code == 0 and all(r["match"] in (True, None) for r in rows)


def test_render_modes():
    code, out, _ = cli("render", TRI2)
    assert code == 0 and out.startswith("node ")
    code, out, _ = cli("render", TRI2, "--dot")
    assert out.startswith("digraph") and "dashed" in out
    code, out, _ = cli("render", TRI2, "--ograph")
    assert "doublecircle" in out


@pytest.mark.parametrize("args", [("validate", TRI2), ("classify", TRI2),
                                  ("enumerate", "--degree", "3", "--max-arity", "2"),
                                  ("counts", "--max-degree", "2", "--format", "json")])
def test_output_is_deterministic(args):
    assert cli(*args) == cli(*args)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "opetopic.cli", "classify", TRI2],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "p1: Inner" in proc.stdout
