"""Fundamental group presentations from the 2-skeleton.

Words are tuples of ``(symbol, +1 | -1)`` letters.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from string import ascii_lowercase

from .exp import components
from .simplicial import SimplicialError, SimplicialSet
from .snf import IntMatrix, smith_normal_form

Letter = tuple[str, int]
Word = tuple[Letter, ...]


def free_reduce(word) -> Word:
    out: list[Letter] = []
    for sym, e in word:
        if out and out[-1][0] == sym and out[-1][1] == -e:
            out.pop()
        else:
            out.append((sym, e))
    return tuple(out)


def cyclic_reduce(word) -> Word:
    w = list(free_reduce(word))
    while len(w) > 1 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
    return tuple(w)


def inverse(word: Word) -> Word:
    return tuple((s, -e) for s, e in reversed(word))


def _cyclic_key(word: Word) -> Word:
    """Canonical representative under rotation and inversion."""
    if not word:
        return word
    cands = []
    for w in (word, inverse(word)):
        cands.extend(w[i:] + w[:i] for i in range(len(w)))
    return min(cands)


def format_word(word: Word) -> str:
    if not word:
        return "1"
    return "".join(s if e > 0 else f"{s}^-1" for s, e in word)


def commutator(x: Word, y: Word) -> Word:
    return free_reduce(x + y + inverse(x) + inverse(y))


@dataclass
class Presentation:
    generators: list[str]
    relators: list[Word]
    labels: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        known = set(self.generators)
        for r in self.relators:
            for s, e in r:
                if s not in known:
                    raise SimplicialError(f"relator uses unknown generator {s!r}")
                if e not in (1, -1):
                    raise SimplicialError(f"letter exponent must be +-1, got {e}")
        self.relators = [free_reduce(r) for r in self.relators]

    @property
    def is_trivial(self) -> bool:
        return not self.generators and not self.relators

    def __str__(self) -> str:
        return "<" + ", ".join(self.generators) + " | " + ", ".join(format_word(r) for r in self.relators) + ">"

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "relators": [format_word(r) for r in self.relators]}


def _symbols(n: int) -> list[str]:
    if n <= len(ascii_lowercase):
        return list(ascii_lowercase[:n])
    return [f"g{i}" for i in range(n)]


def pi1_presentation(X: SimplicialSet, basepoint: str) -> Presentation:
    """Presentation of pi_1 of the basepoint's component.

    Breadth-first spanning tree from the basepoint over nondegenerate
    edges in table order; one generator per non-tree edge and one relator
    ``w(d_2) w(d_0) w(d_1)^-1`` per nondegenerate 2-simplex.
    """
    if basepoint not in X or X[basepoint].dim != 0:
        raise SimplicialError(f"basepoint {basepoint!r} is not a 0-generator")
    if X.cap is not None and X.cap < 2:
        raise SimplicialError("pi_1 needs the 2-skeleton (cap >= 2)")
    comps = components(X)
    label = comps.labels[basepoint]
    edges = [e for e in X.generators(1) if comps.labels[e.id] == label]
    adjacency: dict[str, list[tuple[str, str]]] = {}
    for e in edges:
        tail, head = e.faces[1].gen, e.faces[0].gen
        adjacency.setdefault(tail, []).append((e.id, head))
        adjacency.setdefault(head, []).append((e.id, tail))
    tree = set()
    seen = {basepoint}
    queue = deque([basepoint])
    while queue:
        v = queue.popleft()
        for eid, w in adjacency.get(v, ()):
            if w not in seen:
                seen.add(w)
                tree.add(eid)
                queue.append(w)
    loose = [e.id for e in edges if e.id not in tree]
    names = dict(zip(loose, _symbols(len(loose))))

    def w(face) -> Word:
        if face.word or face.gen not in names:
            return ()
        return ((names[face.gen], 1),)

    relators = []
    for t in X.generators(2):
        if comps.labels[t.id] != label:
            continue
        d0, d1, d2 = t.faces
        relators.append(free_reduce(w(d2) + w(d0) + inverse(w(d1))))
    return Presentation(list(names.values()), relators, {s: e for e, s in names.items()})


def _substitute(word: Word, sym: str, value: Word) -> Word:
    out: list[Letter] = []
    for s, e in word:
        if s == sym:
            out.extend(value if e > 0 else inverse(value))
        else:
            out.append((s, e))
    return cyclic_reduce(out)


@dataclass
class Simplification:
    presentation: Presentation
    trace: list[str]
    exhausted: bool = False


def tietze_simplify(P: Presentation, budget: int = 10_000) -> Simplification:
    """Deterministic Tietze reduction.

    Moves, in order: cyclic free reduction, dropping trivial and duplicate
    relators, and eliminating a generator that occurs exactly once in some
    relator (shortest relator first, then generator order).
    """
    gens = list(P.generators)
    rels = [cyclic_reduce(r) for r in P.relators]
    trace: list[str] = []
    steps = 0
    while steps < budget:
        keys = set()
        kept = []
        for r in rels:
            key = _cyclic_key(r)
            if not r or key in keys:
                continue
            keys.add(key)
            kept.append(r)
        if len(kept) != len(rels):
            trace.append(f"drop {len(rels) - len(kept)} trivial or duplicate relators")
            steps += 1
            rels = kept
            continue
        move = None
        for idx in sorted(range(len(rels)), key=lambda i: (len(rels[i]), i)):
            r = rels[idx]
            counts: dict[str, int] = {}
            for s, _ in r:
                counts[s] = counts.get(s, 0) + 1
            single = [s for s in gens if counts.get(s) == 1]
            if single:
                move = (idx, single[0])
                break
        if move is None:
            break
        idx, sym = move
        r = rels[idx]
        pos = next(i for i, (s, _) in enumerate(r) if s == sym)
        rot = r[pos:] + r[:pos]
        e, rest = rot[0][1], rot[1:]
        # x^e . rest = 1
        value = inverse(rest) if e > 0 else rest
        value = free_reduce(value)
        trace.append(f"eliminate {sym} = {format_word(value)} using {format_word(r)}")
        rels = [_substitute(q, sym, value) for i, q in enumerate(rels) if i != idx]
        gens.remove(sym)
        steps += 1
    return Simplification(Presentation(gens, rels), trace, exhausted=steps >= budget)


def abelianization(P: Presentation) -> tuple[int, tuple[int, ...]]:
    """Rank and torsion of ``G / [G, G]`` from the exponent-sum matrix."""
    col = {s: j for j, s in enumerate(P.generators)}
    M = IntMatrix(len(P.relators), len(P.generators))
    for i, r in enumerate(P.relators):
        for s, e in r:
            M[i, col[s]] += e
    res = smith_normal_form(M)
    return len(P.generators) - res.rank, tuple(d for d in res.invariant_factors if d > 1)


@dataclass
class Pi1Certificate:
    status: str  # "trivial", "nontrivial" or "inconclusive"
    presentation: Presentation
    simplified: Presentation
    trace: list[str]
    abelian: tuple[int, tuple[int, ...]]

    def to_json(self) -> dict:
        rank, torsion = self.abelian
        return {
            "status": self.status,
            "presentation": self.presentation.to_json(),
            "simplified": self.simplified.to_json(),
            "trace": list(self.trace),
            "abelianization": {"rank": rank, "torsion": list(torsion)},
        }


def certify_pi1(X: SimplicialSet, basepoint: str | None = None, budget: int = 10_000) -> Pi1Certificate:
    """Simple connectivity is claimed only when the presentation collapses."""
    if basepoint is None:
        basepoint = X.generators(0)[0].id
    P = pi1_presentation(X, basepoint)
    simp = tietze_simplify(P, budget)
    ab = abelianization(simp.presentation)
    if simp.presentation.is_trivial:
        status = "trivial"
    elif ab != (0, ()):
        status = "nontrivial"
    else:
        status = "inconclusive"
    return Pi1Certificate(status, P, simp.presentation, simp.trace, ab)
