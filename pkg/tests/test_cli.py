import json
import subprocess
import sys

import pytest

from stm.cache import SCHEMA_VERSION, Cache, cache_key
from stm.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_kl_singular(capsys):
    code, out, _ = _run(capsys, "kl", "--type", "A", "--rank", "3", "--x", "2", "--w", "2,1,3,2")
    assert code == 0 and out.strip() == "1+q"


def test_bs_decompose_json(capsys):
    code, out, _ = _run(capsys, "bs", "--type", "A", "--rank", "2", "--word", "1,2,1", "--decompose", "--format", "json")
    assert code == 0
    data = json.loads(out)
    summands = {(s["x"], s["shift"]) for s in data["decomposition"]["summands"]}
    assert summands == {("1,2,1", 0), ("1", 2)}
    assert out == json.dumps(data, sort_keys=True, indent=1) + "\n"


def test_check_point(capsys):
    code, out, _ = _run(capsys, "check", "--suite", "point")
    assert code == 0 and out.startswith("[PASS] criterion 1")


@pytest.mark.parametrize(
    "argv,flag",
    [
        (["kl", "--type", "A", "--rank", "2", "--x", "5", "--w", "1"], "--x"),
        (["kl", "--type", "Q", "--rank", "2", "--x", "1", "--w", "1"], "--type"),
        (["hecke", "--type", "A", "--rank", "2"], "--word"),
        (["coinv", "--type", "A", "--rank", "2", "--parabolic", "7"], "--parabolic"),
        (["check", "--suite", "nope"], "--suite"),
    ],
)
def test_usage_errors_name_the_flag(capsys, argv, flag):
    code, _, err = _run(capsys, *argv)
    assert code == 2 and flag in err


def test_other_commands(capsys, tmp_path):
    base = ["--type", "B", "--rank", "2", "--cache-dir", str(tmp_path)]
    for argv in (
        ["weyl", "--parabolic", "1"],
        ["hecke", "--word", "1,2,1"],
        ["coinv", "--parabolic", "2"],
        ["hom", "--x", "1,2", "--w", "2"],
        ["decompose", "--word", "1,2,1,2"],
        ["fiber", "--word", "1,2,1,2"],
        ["delta", "--w", "1,2"],
        ["koszul"],
        ["ext", "--max-len", "1"],
    ):
        code, out, _ = _run(capsys, argv[0], *base, *argv[1:], "--format", "json")
        assert code == 0, argv
        json.loads(out)
    data = json.loads(_run(capsys, "hom", *base, "--x", "1,2", "--w", "2", "--format", "json")[1])
    assert data["agree"]


def test_cache_hit_is_byte_identical(capsys, tmp_path):
    argv = ["decompose", "--type", "A", "--rank", "2", "--word", "1,2,1", "--cache-dir", str(tmp_path), "--format", "json"]
    first = _run(capsys, *argv)[1]
    assert any(tmp_path.rglob("*.json"))
    second = _run(capsys, *argv)[1]
    assert first == second


def test_cache_roundtrip_schema_and_corruption(tmp_path):
    c = Cache(tmp_path)
    key = cache_key("A", 2, "kl", {"x": "1"})
    c.put(key, {"P": "1"})
    assert c.get(key) == {"P": "1"}
    assert c.get(cache_key("A", 2, "kl", {"x": "1"}, SCHEMA_VERSION + 1)) is None
    path = next(tmp_path.rglob(f"{key}.json"))
    path.write_text(path.read_text().replace('"1"', '"2"'))
    assert c.get(key) is None
    assert Cache(None).get(key) is None


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "stm", "kl", "--type", "A", "--rank", "3", "--x", "2", "--w", "2,1,3,2"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "1+q"
