"""The finite subset space functor on simplicial sets.

The ``n``-simplices of ``exp_k(K)`` are the non-empty sets of at most ``k``
``n``-simplices of ``K``; faces and degeneracies act elementwise. A
subset is degenerate exactly when one ``s_i`` fixes every element, so
nondegenerate subsets can be enumerated level by level from the
degeneracy masks of ``K``'s simplices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable

from .simplicial import (
    Generator,
    SimplexRef,
    SimplicialError,
    SimplicialMap,
    SimplicialSet,
    Word,
    compose_words,
    degeneracy_indices,
    enumerate_level,
    normalize_face,
)

SubsetSimplex = tuple[SimplexRef, ...]

DEFAULT_BUDGET = 5_000_000


class BudgetExceeded(RuntimeError):
    """A level of the build would enumerate more subsets than allowed."""


def make_subset(elements: Iterable[SimplexRef]) -> SubsetSimplex:
    """Canonical (sorted, duplicate-free) subset."""
    out = tuple(sorted(set(elements)))
    if not out:
        raise SimplicialError("subsets of simplices must be non-empty")
    if len({a.dim for a in out}) != 1:
        raise SimplicialError("all elements of a subset simplex must share one dimension")
    return out


@lru_cache(maxsize=1 << 16)
def _mask(a: SimplexRef, K: SimplicialSet) -> int:
    bits = 0
    for i in degeneracy_indices(a, K):
        bits |= 1 << i
    return bits


def subset_degeneracy_direction(A: SubsetSimplex, K: SimplicialSet) -> int | None:
    """Smallest ``i`` with ``s_i d_i a == a`` for all ``a`` in ``A``, else ``None``."""
    common = -1
    for a in A:
        common &= _mask(a, K)
        if not common:
            return None
    return (common & -common).bit_length() - 1


def subset_normal_form(A: SubsetSimplex, K: SimplicialSet) -> tuple[Word, SubsetSimplex]:
    """Split ``A`` as ``word . core`` with ``core`` nondegenerate."""
    stripped = []
    while True:
        i = subset_degeneracy_direction(A, K)
        if i is None:
            break
        stripped.append(i)
        A = make_subset(normalize_face(i, a, K) for a in A)
    return compose_words(stripped), A


def subset_face(i: int, A: SubsetSimplex, K: SimplicialSet) -> SubsetSimplex:
    return make_subset(normalize_face(i, a, K) for a in A)


@dataclass
class ExpBuild:
    result: SimplicialSet
    witness: dict[str, SubsetSimplex]
    source: SimplicialSet
    k: int
    cap: int
    index: dict[SubsetSimplex, str] = field(repr=False, default_factory=dict)

    def ref_of(self, A: SubsetSimplex) -> SimplexRef:
        """Normal-form simplex of ``exp_k`` for an arbitrary subset."""
        word, core = subset_normal_form(make_subset(A), self.source)
        if len(core) > self.k:
            raise SimplicialError(f"subset of size {len(core)} exceeds k={self.k}")
        gid = self.index.get(core)
        if gid is None:
            raise SimplicialError(f"subset {core} is beyond the build cap {self.cap}")
        return SimplexRef(gid, word, core[0].dim + len(word))

    def cardinality(self, gid: str) -> int:
        return len(self.witness[gid])

    def describe(self, gid: str) -> str:
        return "{" + ", ".join(str(a) for a in self.witness[gid]) + "}"


def _nondegenerate_subsets(level: list[SimplexRef], masks: list[int], k: int):
    n = len(level)
    for size in range(1, min(k, n) + 1):
        for combo in combinations(range(n), size):
            common = -1
            for idx in combo:
                common &= masks[idx]
                if not common:
                    break
            if common == 0:
                yield tuple(level[idx] for idx in combo)


def build_exp(K: SimplicialSet, k: int, d_max: int, budget: int = DEFAULT_BUDGET) -> ExpBuild:
    """Nondegenerate generators of ``exp_k(K)`` through dimension ``d_max``."""
    if k < 1:
        raise SimplicialError(f"k must be >= 1, got {k}")
    if d_max < 0:
        raise SimplicialError(f"d_max must be >= 0, got {d_max}")
    K.ensure_cap(d_max)
    gens: list[Generator] = []
    witness: dict[str, SubsetSimplex] = {}
    index: dict[SubsetSimplex, str] = {}
    for n in range(d_max + 1):
        level = enumerate_level(K, n)
        total = sum(comb(len(level), j) for j in range(1, min(k, len(level)) + 1))
        if total > budget:
            raise BudgetExceeded(
                f"level {n} of exp_{k}({K.name or 'K'}) has {total} subsets, over the budget of {budget}"
            )
        masks = [_mask(a, K) for a in level]
        subsets = sorted(_nondegenerate_subsets(level, masks, k))
        for idx, A in enumerate(subsets):
            gid = f"e{n}_{idx}"
            faces = ()
            if n:
                faces = []
                for i in range(n + 1):
                    word, core = subset_normal_form(subset_face(i, A, K), K)
                    faces.append(SimplexRef(index[core], word, n - 1))
                faces = tuple(faces)
            gens.append(Generator(gid, n, faces))
            witness[gid] = A
            index[A] = gid
    name = f"exp{k}({K.name})" if K.name else f"exp{k}"
    result = SimplicialSet(gens, cap=d_max, name=name)
    return ExpBuild(result, witness, K, k, d_max, index)


def exp_inclusion(E_k: ExpBuild, E_m: ExpBuild) -> SimplicialMap:
    """The inclusion ``exp_k(K) -> exp_m(K)`` for ``k <= m``."""
    if E_k.source is not E_m.source:
        raise SimplicialError("inclusion needs builds over the same source")
    if E_k.cap != E_m.cap:
        raise SimplicialError(f"cap mismatch: {E_k.cap} vs {E_m.cap}")
    if E_k.k > E_m.k:
        raise SimplicialError(f"cannot include exp_{E_k.k} into exp_{E_m.k}")
    images = {}
    for gid, A in E_k.witness.items():
        images[gid] = SimplexRef(E_m.index[A], (), A[0].dim)
    return SimplicialMap(E_k.result, E_m.result, images, name=f"exp{E_k.k}->exp{E_m.k}")


def exp_induced(
    f: SimplicialMap,
    k: int,
    d_max: int,
    source: ExpBuild | None = None,
    target: ExpBuild | None = None,
    budget: int = DEFAULT_BUDGET,
) -> SimplicialMap:
    """``exp_k(f)``: send a subset to its elementwise image.

    Prebuilt ``source``/``target`` builds may be passed to share generator
    tables between several induced maps.
    """
    problems = f.check()
    if problems:
        raise SimplicialError("not a simplicial map: " + "; ".join(problems[:3]))
    if source is None:
        source = build_exp(f.source, k, d_max, budget)
    if target is None:
        target = build_exp(f.target, k, d_max, budget)
    if source.source is not f.source or target.source is not f.target:
        raise SimplicialError("builds do not match the map's source and target")
    if (source.k, source.cap) != (k, d_max) or (target.k, target.cap) != (k, d_max):
        raise SimplicialError("builds do not match the requested k and cap")
    images = {gid: target.ref_of(f(a) for a in A) for gid, A in source.witness.items()}
    return SimplicialMap(source.result, target.result, images, name=f"exp{k}({f.name})")


@dataclass(frozen=True)
class Components:
    labels: dict[str, int]
    vertices: tuple[tuple[str, ...], ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def members(self, label: int) -> list[str]:
        return [gid for gid, lab in self.labels.items() if lab == label]


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def components(X: SimplicialSet) -> Components:
    """Connected components; labels are numbered by first vertex in table order."""
    verts = [g.id for g in X.generators(0)]
    uf = _UnionFind(verts)
    for e in X.generators(1):
        uf.union(e.faces[0].gen, e.faces[1].gen)
    roots: dict[str, int] = {}
    groups: list[list[str]] = []
    vlabel = {}
    for v in verts:
        r = uf.find(v)
        if r not in roots:
            roots[r] = len(groups)
            groups.append([])
        groups[roots[r]].append(v)
        vlabel[v] = roots[r]
    labels = {g.id: vlabel[X.vertex_core(g.id)] for g in X}
    return Components(labels, tuple(tuple(g) for g in groups))


def component_subset(X: SimplicialSet, comps: Components, label: int) -> SimplicialSet:
    return X.restrict(comps.members(label), name=f"{X.name}[{label}]")
