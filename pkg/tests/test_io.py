import json

import pytest

from expk import io
from expk.exp import build_exp
from expk.models import BUILTINS, build_model
from expk.simplicial import validate

CIRCLE = '{"generators":[{"id":"v","dim":0},{"id":"s","dim":1,"faces":[[[], "v"],[[], "v"]]}]}'


def test_parse_circle():
    K = io.loads(CIRCLE)
    assert K.counts() == (1, 1)
    assert validate(K).ok


@pytest.mark.parametrize("name", BUILTINS)
def test_round_trip(name):
    K = build_model(name)
    back = io.loads(io.dumps(K))
    assert [(g.id, g.dim, g.faces) for g in back] == [(g.id, g.dim, g.faces) for g in K]


def test_exp_build_carries_subsets_and_cap():
    E = build_exp(build_model("s1"), 2, 3)
    text = io.dumps(E.result, E.witness)
    data = json.loads(text)
    assert data["cap"] == 3
    subsets = [entry["subset"] for entry in data["generators"]]
    assert subsets[-1] == [[[0], "s"], [[1], "s"]]
    back = io.loads(text)
    assert back.cap == 3 and back.counts() == (1, 2, 1)


BAD_WORD = """{"generators": [
  {"id": "v", "dim": 0},
  {"id": "s", "dim": 2, "faces": [[[0], "v"], [[0], "v"], [[0], "v"]]},
  {"id": "t", "dim": 3, "faces": [[[0, 1], "v"], [[1, 0], "v"], [[1, 0], "v"], [[1, 0], "v"]]}
]}"""

DANGLING = """{"generators": [
  {"id": "v", "dim": 0},

  {"id": "s", "dim": 1, "faces": [[[], "v"], [[], "w"]]}
]}"""


def test_rejects_non_decreasing_word_with_line():
    with pytest.raises(io.FormatError) as err:
        io.loads(BAD_WORD)
    assert err.value.line == 4
    assert "line 4" in str(err.value)


def test_rejects_dangling_id_with_line():
    with pytest.raises(io.FormatError) as err:
        io.loads(DANGLING)
    assert err.value.line == 4
    assert "'w'" in str(err.value)


@pytest.mark.parametrize("text,line", [
    ('{"generators": [\n{"id": "v", "dim": 0},\n]}', 3),
    ('{"gens": []}', 1),
    ('{"generators": [{"id": "v", "dim": 0, "faces": [[[], "v"]]}]}', 1),
    ('{"generators": [{"id": "v", "dim": 0},\n {"id": "s", "dim": 1, "faces": [[[], "v"]]}]}', 2),
    ('{"generators": [{"id": "v", "dim": 0},\n {"id": "v", "dim": 0}]}', 2),
])
def test_other_rejections(text, line):
    with pytest.raises(io.FormatError) as err:
        io.loads(text)
    assert err.value.line == line


def test_load_from_file(tmp_path):
    path = tmp_path / "circle.json"
    path.write_text(CIRCLE)
    K = io.load(path)
    assert K.name == "circle"
