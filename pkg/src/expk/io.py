"""JSON text format for simplicial sets.

::

    {"generators": [{"id": "v", "dim": 0},
                    {"id": "s", "dim": 1, "faces": [[[], "v"], [[], "v"]]}]}

A face is ``[degeneracy-word, generator-id]``. Builds of finite subset
spaces add a ``"subset"`` list per generator with the underlying simplices
of the source, in the same ``[word, id]`` shape.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from .simplicial import Generator, SimplexRef, SimplicialError, SimplicialSet


class FormatError(SimplicialError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


def _locate(text: str, gid: Any, start: int) -> tuple[int, int]:
    """Line of the next ``"id": gid`` at or after ``start``, and the new cursor."""
    m = re.compile(r'"id"\s*:\s*' + re.escape(json.dumps(gid))).search(text, start)
    if not m:
        return 1, start
    return text.count("\n", 0, m.start()) + 1, m.end()


def _face(raw, owner_line: int, gid: str) -> SimplexRef:
    if not (isinstance(raw, list) and len(raw) == 2 and isinstance(raw[0], list) and isinstance(raw[1], str)):
        raise FormatError(f"face of {gid!r} must be [word, generator-id], got {raw!r}", owner_line)
    word = raw[0]
    if any(not isinstance(i, int) or isinstance(i, bool) or i < 0 for i in word):
        raise FormatError(f"face of {gid!r} has a non-integer degeneracy index: {word!r}", owner_line)
    if any(a <= b for a, b in zip(word, word[1:])):
        raise FormatError(f"face of {gid!r} has degeneracy word {word!r} that is not strictly decreasing", owner_line)
    return SimplexRef(raw[1], tuple(word))


def loads(text: str) -> SimplicialSet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno) from None
    if not isinstance(data, dict) or not isinstance(data.get("generators"), list):
        raise FormatError('top level must be an object with a "generators" list', 1)
    gens = []
    lines = {}
    cursor = 0
    for entry in data["generators"]:
        if not isinstance(entry, dict) or not isinstance(entry.get("id"), str):
            raise FormatError(f"generator entry without a string id: {entry!r}", 1)
        gid = entry["id"]
        line, cursor = _locate(text, gid, cursor)
        if gid in lines:
            raise FormatError(f"duplicate generator id {gid!r}", line)
        lines[gid] = line
        dim = entry.get("dim")
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
            raise FormatError(f"generator {gid!r} needs a non-negative integer dim", line)
        faces = entry.get("faces", [])
        if dim == 0 and faces:
            raise FormatError(f"0-generator {gid!r} cannot have faces", line)
        if dim > 0 and (not isinstance(faces, list) or len(faces) != dim + 1):
            raise FormatError(f"generator {gid!r} of dim {dim} needs {dim + 1} faces", line)
        gens.append(Generator(gid, dim, tuple(_face(f, line, gid) for f in faces)))
    for g in gens:
        for f in g.faces:
            if f.gen not in lines:
                raise FormatError(f"generator {g.id!r} has a dangling face id {f.gen!r}", lines[g.id])
    try:
        cap = data.get("cap")
        if cap is not None and (not isinstance(cap, int) or cap < 0):
            raise FormatError(f"cap must be a non-negative integer, got {cap!r}", 1)
        return SimplicialSet(gens, cap=cap, name=str(data.get("name", "")))
    except FormatError:
        raise
    except SimplicialError as exc:
        bad = next((gid for gid in lines if repr(gid) in str(exc)), None)
        raise FormatError(str(exc), lines.get(bad, 1)) from None


def load(path: str | Path) -> SimplicialSet:
    K = loads(Path(path).read_text())
    if not K.name:
        K.name = Path(path).stem
    return K


def _ref_json(ref: SimplexRef) -> list:
    return [list(ref.word), ref.gen]


def to_dict(K: SimplicialSet, subsets: dict | None = None) -> dict:
    out = []
    for g in K:
        entry: dict[str, Any] = {"id": g.id, "dim": g.dim}
        if g.dim:
            entry["faces"] = [_ref_json(f) for f in g.faces]
        if subsets is not None:
            entry["subset"] = [_ref_json(a) for a in subsets[g.id]]
        out.append(entry)
    data: dict[str, Any] = {"generators": out}
    if K.name:
        data["name"] = K.name
    if K.cap is not None:
        data["cap"] = K.cap
    return data


def dumps(K: SimplicialSet, subsets: dict | None = None) -> str:
    """One generator per line, so parser line numbers point at entries."""
    data = to_dict(K, subsets)
    rows = ",\n  ".join(json.dumps(e, ensure_ascii=False) for e in data.pop("generators"))
    head = json.dumps(data, ensure_ascii=False, sort_keys=True)[1:-1]
    head = f"{head},\n " if head else ""
    return "{" + head + '"generators": [\n  ' + rows + "\n]}\n"
