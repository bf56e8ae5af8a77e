"""Simplicial sets with finitely many nondegenerate simplices.

Every simplex is stored in Eilenberg-Zilber normal form: a strictly
decreasing degeneracy word ``s_{i_1} ... s_{i_p}`` applied to a
nondegenerate generator. Faces are stored on generators only; faces and
degeneracies of arbitrary simplices are computed with the simplicial
identities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping

Word = tuple[int, ...]


class SimplicialError(ValueError):
    """Raised on malformed simplices, generators or operator indices."""


@dataclass(frozen=True, order=True)
class SimplexRef:
    """A simplex ``word . gen`` of some ambient simplicial set.

    Ordering is lexicographic on ``(gen, word)``, which fixes the
    canonical order of subsets in the finite subset construction.
    """

    gen: str
    word: Word = ()
    dim: int = field(default=0, compare=False)

    @property
    def is_degenerate(self) -> bool:
        return bool(self.word)

    def __str__(self) -> str:
        if not self.word:
            return self.gen
        return "".join(f"s{i}" for i in self.word) + " " + self.gen


def check_word(word: Iterable[int]) -> Word:
    word = tuple(word)
    for i in word:
        if not isinstance(i, int) or isinstance(i, bool) or i < 0:
            raise SimplicialError(f"degeneracy index {i!r} is not a non-negative integer")
    for a, b in zip(word, word[1:]):
        if a <= b:
            raise SimplicialError(f"degeneracy word {list(word)} is not strictly decreasing")
    return word


@dataclass(frozen=True)
class Generator:
    id: str
    dim: int
    faces: tuple[SimplexRef, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[tuple[str, int, int], ...] = ()
    errors: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations and not self.errors

    def __bool__(self) -> bool:
        return self.ok


class SimplicialSet:
    """Graded table of nondegenerate generators.

    ``cap`` is ``None`` for a complete simplicial set and an integer ``d``
    when only generators of dimension ``<= d`` are known (a truncated
    build). Generator order inside each dimension is the insertion order
    and is what boundary matrices use for their rows and columns.
    """

    def __init__(self, generators: Iterable[Generator], cap: int | None = None, name: str = ""):
        self.name = name
        self.cap = cap
        self._gens: dict[str, Generator] = {}
        by_dim: dict[int, list[Generator]] = {}
        for g in generators:
            if g.id in self._gens:
                raise SimplicialError(f"duplicate generator id {g.id!r}")
            if g.dim < 0:
                raise SimplicialError(f"generator {g.id!r} has negative dimension")
            if len(g.faces) != (g.dim + 1 if g.dim > 0 else 0):
                raise SimplicialError(
                    f"generator {g.id!r} of dimension {g.dim} has {len(g.faces)} faces"
                )
            self._gens[g.id] = g
            by_dim.setdefault(g.dim, []).append(g)
        self._by_dim = {d: tuple(gs) for d, gs in sorted(by_dim.items())}
        # resolve face dimensions and check targets
        fixed = {}
        for g in self._gens.values():
            faces = []
            for f in g.faces:
                target = self._gens.get(f.gen)
                if target is None:
                    raise SimplicialError(f"generator {g.id!r} has a face on unknown generator {f.gen!r}")
                ref = SimplexRef(f.gen, check_word(f.word), target.dim + len(f.word))
                if ref.dim != g.dim - 1:
                    raise SimplicialError(
                        f"face {ref} of {g.id!r} has dimension {ref.dim}, expected {g.dim - 1}"
                    )
                if ref.word and ref.word[0] > ref.dim - 1:
                    raise SimplicialError(f"face {ref} of {g.id!r} has an out-of-range degeneracy")
                faces.append(ref)
            fixed[g.id] = Generator(g.id, g.dim, tuple(faces))
        self._gens = fixed
        self._by_dim = {d: tuple(fixed[g.id] for g in gs) for d, gs in self._by_dim.items()}

    # -- lookup -------------------------------------------------------------

    def __contains__(self, gid: object) -> bool:
        return gid in self._gens

    def __getitem__(self, gid: str) -> Generator:
        return self._gens[gid]

    def __iter__(self) -> Iterator[Generator]:
        for gs in self._by_dim.values():
            yield from gs

    def __len__(self) -> int:
        return len(self._gens)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<SimplicialSet{label} counts={self.counts()} cap={self.cap}>"

    def generators(self, dim: int) -> tuple[Generator, ...]:
        return self._by_dim.get(dim, ())

    @property
    def top_dim(self) -> int:
        """Largest dimension carrying a nondegenerate generator (-1 if empty)."""
        return max(self._by_dim, default=-1)

    def counts(self, upto: int | None = None) -> tuple[int, ...]:
        upto = self.top_dim if upto is None else upto
        return tuple(len(self.generators(d)) for d in range(upto + 1))

    def ref(self, gid: str, word: Iterable[int] = ()) -> SimplexRef:
        word = check_word(word)
        g = self._gens[gid]
        dim = g.dim + len(word)
        if word and word[0] > dim - 1:
            raise SimplicialError(f"degeneracy s{word[0]} does not apply to {gid!r}")
        return SimplexRef(gid, word, dim)

    def vertex_core(self, gid: str) -> str:
        """Some 0-generator in the closure of ``gid`` (its last vertex)."""
        g = self._gens[gid]
        while g.dim > 0:
            g = self._gens[g.faces[0].gen]
        return g.id

    def ensure_cap(self, n: int) -> None:
        if self.cap is not None and n > self.cap:
            raise SimplicialError(
                f"dimension {n} requested but the simplicial set is only built through {self.cap}"
            )

    def restrict(self, gids: Iterable[str], name: str = "") -> SimplicialSet:
        """Sub-simplicial set spanned by ``gids``; must be closed under faces."""
        keep = set(gids)
        for gid in keep:
            for f in self._gens[gid].faces:
                if f.gen not in keep:
                    raise SimplicialError(f"restriction not closed: {gid!r} has face on {f.gen!r}")
        return SimplicialSet((g for g in self if g.id in keep), cap=self.cap, name=name)


# -- operators ----------------------------------------------------------------


def apply_degeneracy(i: int, x: SimplexRef) -> SimplexRef:
    """``s_i x`` with the word re-sorted by ``s_i s_j = s_{j+1} s_i`` (i <= j)."""
    if not 0 <= i <= x.dim:
        raise SimplicialError(f"s{i} is undefined on a {x.dim}-simplex")
    out = []
    rest = list(x.word)
    while rest and rest[0] >= i:
        out.append(rest.pop(0) + 1)
    return SimplexRef(x.gen, tuple(out + [i] + rest), x.dim + 1)


def apply_word(word: Word, x: SimplexRef) -> SimplexRef:
    """Apply ``s_{w_1} ... s_{w_p}`` to ``x`` (rightmost operator first)."""
    for i in reversed(word):
        x = apply_degeneracy(i, x)
    return x


def compose_words(outer: Iterable[int], inner: Word = ()) -> Word:
    """Canonical word of ``outer . inner`` where ``outer`` may be any sequence."""
    out = list(inner)
    for i in reversed(tuple(outer)):
        rest = out
        out = []
        while rest and rest[0] >= i:
            out.append(rest.pop(0) + 1)
        out = out + [i] + rest
    return tuple(out)


def normalize_face(i: int, x: SimplexRef, K: SimplicialSet) -> SimplexRef:
    """``d_i x`` in normal form.

    Peels the leading degeneracy ``s_j`` of the word:

    * ``i < j``:        ``d_i s_j = s_{j-1} d_i``
    * ``i in {j, j+1}``: ``d_i s_j = id``
    * ``i > j + 1``:    ``d_i s_j = s_j d_{i-1}``
    """
    if x.dim < 1:
        raise SimplicialError("a 0-simplex has no faces")
    if not 0 <= i <= x.dim:
        raise SimplicialError(f"face index {i} out of range for a {x.dim}-simplex")
    if not x.word:
        return K[x.gen].faces[i]
    j, rest = x.word[0], x.word[1:]
    y = SimplexRef(x.gen, rest, x.dim - 1)
    if i == j or i == j + 1:
        return y
    if i < j:
        return apply_degeneracy(j - 1, normalize_face(i, y, K))
    return apply_degeneracy(j, normalize_face(i - 1, y, K))


def degeneracy_indices(x: SimplexRef, K: SimplicialSet) -> frozenset[int]:
    """All ``i`` with ``x`` in the image of ``s_i``, i.e. ``s_i d_i x == x``."""
    if x.dim < 1 or not x.word:
        return frozenset()
    return frozenset(
        i for i in range(x.dim) if apply_degeneracy(i, normalize_face(i, x, K)) == x
    )


def enumerate_level(K: SimplicialSet, n: int) -> list[SimplexRef]:
    """Every ``n``-simplex of ``K``, degenerate or not, in canonical order."""
    if n < 0:
        raise SimplicialError("level must be non-negative")
    out = []
    for g in K:
        if g.dim > n:
            continue
        p = n - g.dim
        for combo in combinations(range(n), p):
            out.append(SimplexRef(g.id, tuple(reversed(combo)), n))
    out.sort()
    return out


def validate(K: SimplicialSet) -> ValidationReport:
    """Check ``d_i d_j = d_{j-1} d_i`` for ``i < j`` on every generator."""
    violations = []
    errors = []
    for g in K:
        if g.dim < 2:
            continue
        x = SimplexRef(g.id, (), g.dim)
        for j in range(g.dim + 1):
            for i in range(j):
                try:
                    lhs = normalize_face(i, normalize_face(j, x, K), K)
                    rhs = normalize_face(j - 1, normalize_face(i, x, K), K)
                except SimplicialError as exc:
                    errors.append(f"{g.id}: {exc}")
                    continue
                if lhs != rhs:
                    violations.append((g.id, i, j))
    return ValidationReport(tuple(violations), tuple(errors))


# -- maps -----------------------------------------------------------------------


class SimplicialMap:
    """A map of simplicial sets given on nondegenerate generators.

    ``images[g]`` is the normal form of ``f(g)`` in ``target``; values on
    degenerate simplices follow from ``f(w . g) = w . f(g)``.
    """

    def __init__(self, source: SimplicialSet, target: SimplicialSet, images: Mapping[str, SimplexRef], name: str = ""):
        self.source = source
        self.target = target
        self.images = dict(images)
        self.name = name

    def __call__(self, x: SimplexRef) -> SimplexRef:
        return apply_word(x.word, self.images[x.gen])

    def __repr__(self) -> str:
        return f"<SimplicialMap {self.name or ''} {self.source!r} -> {self.target!r}>"

    def check(self) -> list[str]:
        """Problems found, empty when ``f`` is a simplicial map on generators."""
        problems = []
        for g in self.source:
            if g.id not in self.images:
                problems.append(f"no image for {g.id!r}")
                continue
            img = self.images[g.id]
            if img.gen not in self.target or img.dim != g.dim:
                problems.append(f"bad image {img} for {g.id!r}")
                continue
            x = SimplexRef(g.id, (), g.dim)
            for i in range(g.dim + 1 if g.dim else 0):
                if self(normalize_face(i, x, self.source)) != normalize_face(i, img, self.target):
                    problems.append(f"d{i} does not commute on {g.id!r}")
        return problems

    def compose(self, after: SimplicialMap) -> SimplicialMap:
        """``after . self``."""
        if after.source is not self.target:
            raise SimplicialError("maps are not composable")
        images = {gid: after(img) for gid, img in self.images.items()}
        return SimplicialMap(self.source, after.target, images)


def identity_map(K: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(K, K, {g.id: SimplexRef(g.id, (), g.dim) for g in K}, name="id")
