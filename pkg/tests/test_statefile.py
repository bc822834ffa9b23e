import pytest

from f2double.engine import run
from f2double.statefile import StateFormatError, dumps, load, loads, save
from f2double.words import Word

W = Word.parse


@pytest.fixture(scope="module")
def text():
    return dumps(run(W("aab"), 4))


def test_roundtrip_is_byte_identical(text, tmp_path):
    assert dumps(loads(text)) == text
    s = loads(text)
    p = tmp_path / "s.gam"
    save(s, p)
    assert p.read_text() == text
    assert dumps(load(p)) == text


def test_empty_state_roundtrip():
    t = dumps(run(W("abAB"), 0))
    assert t.startswith("f2double-state 1\nmeta:\n") and t.endswith("log:\nend\n")
    assert dumps(loads(t)) == t


def test_loaded_state_keeps_structure(text):
    s = loads(text)
    assert s.c_input == W("aab") and s.c != s.c_input
    assert all(t in s.pool[t.word] for t in s.witnesses)
    assert s.folner_blocks and s.log


def test_line_formats(text):
    body = text.split("alpha:\n")[1].split("sigma:\n")[0].splitlines()
    assert body and all(" -> " in line for line in body)
    fixc = text.split("fixc:\n")[1].split("witness:\n")[0].splitlines()
    assert fixc and all(".." in line for line in fixc)


def _replace_first_alpha(text, new):
    head, rest = text.split("alpha:\n", 1)
    first, tail = rest.split("\n", 1)
    return head + "alpha:\n" + new + "\n" + tail, first


def test_non_injective_alpha_names_the_pair(text):
    head, rest = text.split("alpha:\n", 1)
    lines = rest.split("\n")
    x1, y1 = lines[0].split(" -> ")
    x2, _ = lines[1].split(" -> ")
    lines[1] = f"{x2} -> {y1}"
    bad = head + "alpha:\n" + "\n".join(lines)
    with pytest.raises(StateFormatError, match=rf"not injective: {x1} -> {y1} and {x2} -> {y1}"):
        loads(bad)


@pytest.mark.parametrize("mutate", [
    lambda t: t.replace("f2double-state 1", "f2double-state 9", 1),
    lambda t: t[:-4],
    lambda t: t.replace("sigma:\n", "", 1),
    lambda t: t.replace("folner:", "transitivity:", 1),
    lambda t: _replace_first_alpha(t, "1 2")[0],
    lambda t: _replace_first_alpha(t, "x -> 2")[0],
    lambda t: t.replace("log:\n", "log:\nfly 3\n", 1),
    lambda t: t.replace("c_input aab", "c_input aqb", 1),
])
def test_corrupt_files_raise(text, mutate):
    with pytest.raises(StateFormatError):
        loads(mutate(text))


def test_non_utf8_file(tmp_path):
    p = tmp_path / "bin.gam"
    p.write_bytes(b"\xff\xfe\x00")
    with pytest.raises(StateFormatError):
        load(p)
