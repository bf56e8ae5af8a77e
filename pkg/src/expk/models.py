"""Builders for the small model library (points, minimal spheres, wedges, ...).

Descriptors are strings such as ``point``, ``s2``, ``interval``,
``wedge(s1,2)``, ``wedge(s1,s2)``, ``disjoint(s1,s1)``; an optional
``builtin:`` prefix is accepted.
"""

from __future__ import annotations

import re

from .simplicial import Generator, SimplexRef, SimplicialError, SimplicialSet


def point() -> SimplicialSet:
    return SimplicialSet([Generator("v", 0)], name="point")


def sphere(n: int) -> SimplicialSet:
    """Minimal model: one vertex ``v`` and one ``n``-cell ``s`` on the degenerate basepoint."""
    if n < 1:
        raise SimplicialError(f"sphere dimension must be >= 1, got {n}")
    base = SimplexRef("v", tuple(range(n - 2, -1, -1)), n - 1)
    return SimplicialSet(
        [Generator("v", 0), Generator("s", n, (base,) * (n + 1))], name=f"s{n}"
    )


def interval() -> SimplicialSet:
    return SimplicialSet(
        [Generator("a", 0), Generator("b", 0), Generator("e", 1, (SimplexRef("b"), SimplexRef("a")))],
        name="interval",
    )


def _relabel(K: SimplicialSet, rename) -> list[Generator]:
    return [
        Generator(rename(g.id), g.dim, tuple(SimplexRef(rename(f.gen), f.word, f.dim) for f in g.faces))
        for g in K
    ]


def disjoint_union(*parts: SimplicialSet) -> SimplicialSet:
    if not parts:
        raise SimplicialError("disjoint union needs at least one summand")
    gens = []
    for idx, K in enumerate(parts, 1):
        gens.extend(_relabel(K, lambda gid, idx=idx: f"{idx}.{gid}"))
    return SimplicialSet(gens, name="disjoint(" + ",".join(K.name for K in parts) + ")")


def wedge(*parts: SimplicialSet) -> SimplicialSet:
    """Glue the summands at their first vertex, which becomes ``v``."""
    if not parts:
        raise SimplicialError("wedge needs at least one summand")
    gens = [Generator("v", 0)]
    for idx, K in enumerate(parts, 1):
        vertices = K.generators(0)
        if not vertices:
            raise SimplicialError("cannot wedge an empty simplicial set")
        base = vertices[0].id

        def rename(gid, idx=idx, base=base):
            return "v" if gid == base else f"{idx}.{gid}"

        gens.extend(g for g in _relabel(K, rename) if g.id != "v")
    return SimplicialSet(gens, name="wedge(" + ",".join(K.name for K in parts) + ")")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokens(text: str):
    for m in _TOKEN.finditer(text):
        if m.group(0).strip() == "":
            continue
        if m.group(1):
            yield ("int", int(m.group(1)))
        elif m.group(2):
            yield ("name", m.group(2))
        else:
            yield ("sym", m.group(3))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = list(_tokens(text))
        self.pos = 0

    def fail(self, msg: str):
        raise SimplicialError(f"bad model descriptor {self.text!r}: {msg}")

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            self.fail(f"expected {value or kind} at token {self.pos}")
        self.pos += 1
        return tok

    def parse(self) -> SimplicialSet:
        model = self.term()
        if self.pos != len(self.toks):
            self.fail("trailing input")
        return model

    def term(self):
        _, name = self.take("name")
        name = name.lower()
        if self.peek() == ("sym", "("):
            self.take("sym", "(")
            args = [self.arg()]
            while self.peek() == ("sym", ","):
                self.take("sym", ",")
                args.append(self.arg())
            self.take("sym", ")")
            return self.combine(name, args)
        if name == "point":
            return point()
        if name == "interval":
            return interval()
        m = re.fullmatch(r"s(\d+)", name)
        if m:
            n = int(m.group(1))
            if n < 1:
                self.fail("sphere dimension must be >= 1")
            return sphere(n)
        self.fail(f"unknown model {name!r}")

    def arg(self):
        if self.peek()[0] == "int":
            return self.take("int")[1]
        return self.term()

    def combine(self, name, args):
        if name not in ("wedge", "disjoint"):
            self.fail(f"unknown combinator {name!r}")
        if len(args) == 2 and isinstance(args[1], int) and not isinstance(args[0], int):
            if args[1] < 1:
                self.fail(f"{name} arity must be >= 1")
            parts = [args[0]] * args[1]
        elif all(isinstance(a, SimplicialSet) for a in args):
            parts = args
        else:
            self.fail(f"{name} takes models, or a model and a count")
        return wedge(*parts) if name == "wedge" else disjoint_union(*parts)


def build_model(spec: str) -> SimplicialSet:
    """Build a builtin model from its descriptor string."""
    if not isinstance(spec, str) or not spec.strip():
        raise SimplicialError(f"bad model descriptor {spec!r}")
    text = spec.strip()
    if text.startswith("builtin:"):
        text = text[len("builtin:"):]
    model = _Parser(text).parse()
    model.name = text.replace(" ", "")
    return model


BUILTINS = ("point", "interval", "s1", "s2", "s3", "wedge(s1,2)", "wedge(s1,3)", "wedge(s1,s2)",
            "wedge(s2,2)", "disjoint(s1,s1)", "disjoint(point,point)")
