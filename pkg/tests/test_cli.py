import io
import json
import subprocess
import sys

import jsonschema
import pytest

from vaw import SCHEMA_PATH
from vaw.cli import run

SCHEMA = json.loads(SCHEMA_PATH.read_text())
RELATOR = "t:s1 t:s2 s:s1 t:s2 t:s1 s:s2^-1"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--format", "json")
    doc = json.loads(out) if out else None
    if doc is not None:
        jsonschema.validate(doc, SCHEMA)
    return code, doc, err


def test_classify():
    code, out, _ = call("classify", "--graph", "family A 3")
    assert code == 0 and out.startswith("kind: spherical")
    code, doc, _ = call_json("classify", "--graph", "vertices a b c; edge a b 3; edge b c 3; edge a c 3")
    assert doc["kind"] == "affine" and doc["components"][0]["family"] == "tA2"


def test_roots():
    code, out, _ = call("roots", "--graph", "family A 2")
    assert code == 0 and out.splitlines()[0] == "6 roots"
    code, doc, _ = call_json("roots", "--graph", "family tA 2")
    assert code == 0 and not doc["complete"] and doc["depth"] == 8
    code, doc, _ = call_json("roots", "--graph", "family tA 2", "--depth", "1")
    assert doc["depth"] == 1 and doc["count"] < 20


def test_mhat():
    assert call("mhat", "--graph", "family A 2", "[1,0]", "[0,1]")[1] == "3\n"
    assert call("mhat", "--graph", "family A 2", "[1,0]", "[1,1]")[1] == "inf\n"
    assert call("mhat", "--graph", "family A 2", "s1:s2", "[1,0]")[1] == "inf\n"
    code, doc, _ = call_json("mhat", "--graph", "family B 2", "[1,0]", "[0,1]")
    assert doc["label"] == "4"
    code, _, err = call("mhat", "--graph", "family A 2", "[1,-1]", "[0,1]")
    assert code == 3 and err
    code, _, _ = call("mhat", "--graph", "family A 2", "[1,0", "[0,1]")
    assert code == 2


def test_mhat_undetermined_exit_code():
    g = "vertices a b c; edge a b 4; edge b c 4; edge a c 4"
    code, out, _ = call("mhat", "--graph", g, "--depth", "0", "c,a,b,c,a,b:a", "c,a,b,c,a,b:b")
    assert code == 5 and out.startswith("undetermined")


def test_present():
    code, out, _ = call("present", "kva", "--graph", "family A 2", "--support", "[1,0]", "[0,1]")
    assert code == 0 and out.splitlines()[1] == "rel d[1,0] d[0,1] d[1,0] = d[0,1] d[1,0] d[0,1]"
    code, doc, _ = call_json("present", "pva", "--graph", "family A 2")
    assert len(doc["generators"]) == 6 and len(doc["relations"]) == 6
    code, doc, _ = call_json("present", "kva", "--graph", "family tA 2")
    assert len(doc["generators"]) == 3 and len(doc["relations"]) == 3
    assert call("present", "kva", "--graph", "family tA 2", "--full")[0] == 3
    assert call("present", "xyz", "--graph", "family A 2")[0] == 2


def test_rewrite():
    code, out, _ = call("rewrite", "--graph", "family A 2", "t:s1 s:s2 t:s1")
    assert code == 0 and out.splitlines()[0] == "word: d:[1,1]"
    code, doc, _ = call_json("rewrite", "--graph", "family A 2", "s:s1 t:s1 s:s1^-1 t:s1")
    assert doc["labels"] == [{"pair": ["[1,0]", "[-1,0]"], "label": "inf"}]
    assert call("rewrite", "--graph", "family A 2", "t:s1")[0] == 3
    assert call("rewrite", "--graph", "family A 2", "t:q")[0] == 2


def test_solve():
    code, out, _ = call("solve", "--graph", "family A 2", RELATOR)
    assert code == 0 and out.startswith("trivial")
    code, doc, _ = call_json("solve", "--graph", "family A 2", "s:s1 s:s2 s:s1^-1 s:s2^-1")
    assert code == 0 and doc["verdict"] == "nontrivial"
    code, doc, _ = call_json("solve", "--graph", "family A 2", "t:s1")
    assert doc["verdict"] == "nontrivial" and doc["certificate"][0]["tier"] == "coxeter"
    comm = "s:s1 s:s2 s:s3 s:s1^-1 s:s2^-1 s:s3^-1"
    code, doc, _ = call_json("solve", "--graph", "family tA 2", comm)
    assert code == 4 and doc["verdict"] == "unsupported"


def test_analyze():
    code, out, _ = call("analyze", "--graph", "family A 2")
    assert code == 0 and "holds" in out
    code, doc, _ = call_json("analyze", "--graph", "family B 2")
    assert doc["n_sph_bound_holds"] and doc["size_bound_holds"] and doc["violations"] == 0
    code, doc, _ = call_json("analyze", "--graph", "family tA 2", "--support", ":s1", ":s2", ":s3")
    assert code == 0 and doc["max_free_of_infinity_size"] == 3


def test_dims():
    assert call("dims", "--graph", "family A 3")[1] == "cd(KVA)=3 vcd(VA)=3\n"
    code, doc, _ = call_json("dims", "--graph", "family tA 2")
    assert doc["exact"] is False and doc["cd_KVA"] == 3 and doc["vcd_VA"] == 5
    assert call("dims", "--graph", "vertices a b c; edge a b 3; edge b c 3; edge a c 4")[0] == 3


def test_graph_errors():
    assert call("classify", "--graph", "edge a b 3")[0] == 2
    assert call("classify")[0] == 2
    assert call("classify", "--graph", "family A 2", "--graph-file", "x")[0] == 2
    assert call("classify", "--graph-file", "/nonexistent/file")[0] == 2


def test_graph_file(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("# the A_2 graph\nvertices a b\nedge a b 3\n")
    assert call("solve", "--graph-file", str(p), "s:a s:b s:a s:b^-1 s:a^-1 s:b^-1")[1].startswith("trivial")


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("VAW_CAP", "5")
    assert call("roots", "--graph", "family A 3")[0] == 3
    assert call("roots", "--graph", "family A 3", "--cap", "100")[0] == 0


@pytest.mark.parametrize("argv", [
    ("present", "pva", "--graph", "family B 2"),
    ("analyze", "--graph", "family A 3"),
    ("roots", "--graph", "family H 3"),
])
def test_byte_stable_output(argv):
    first = call(*argv, "--format", "json")[1]
    assert first == call(*argv, "--format", "json")[1]
    assert first == subprocess.run([sys.executable, "-m", "vaw.cli", *argv, "--format", "json"],
                                   capture_output=True, text=True, check=True).stdout
