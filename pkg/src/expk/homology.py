"""Normalized chains, integral homology and induced maps on homology."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .simplicial import SimplicialError, SimplicialMap, SimplicialSet
from .snf import IntMatrix, SNFResult, smith_normal_form


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    betti: int
    torsion: tuple[int, ...] = ()
    reduced: bool = False

    @property
    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def to_json(self) -> dict:
        return {"betti": self.betti, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = ["Z" if self.betti == 1 else f"Z^{self.betti}"] if self.betti else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def _as_sset(X) -> SimplicialSet:
    return getattr(X, "result", X)


def boundary_matrix(X, n: int) -> IntMatrix:
    """``d_n``: columns are ``n``-generators, rows are ``(n-1)``-generators.

    Degenerate faces are dropped (normalized chains).
    """
    X = _as_sset(X)
    if n < 0:
        raise SimplicialError("negative degree")
    X.ensure_cap(n)
    cols = X.generators(n)
    rows = X.generators(n - 1) if n > 0 else ()
    row_of = {g.id: r for r, g in enumerate(rows)}
    M = IntMatrix(len(rows), len(cols))
    if n == 0:
        return M
    for c, g in enumerate(cols):
        for i, face in enumerate(g.faces):
            if not face.word:
                M[row_of[face.gen], c] += -1 if i % 2 else 1
    return M


@lru_cache(maxsize=256)
def _snf_cached(X: SimplicialSet, n: int) -> tuple[IntMatrix, SNFResult]:
    M = boundary_matrix(X, n)
    return M, smith_normal_form(M)


def boundary_snf(X, n: int) -> SNFResult:
    return _snf_cached(_as_sset(X), n)[1]


@dataclass
class ChainData:
    """Normalized chain complex of ``X`` through degree ``top``."""

    bases: list[list[str]]
    boundaries: list[IntMatrix] = field(default_factory=list)

    @classmethod
    def of(cls, X, top: int | None = None) -> ChainData:
        X = _as_sset(X)
        if top is None:
            top = X.top_dim if X.cap is None else X.cap
        bases = [[g.id for g in X.generators(n)] for n in range(top + 1)]
        return cls(bases, [boundary_matrix(X, n) for n in range(top + 1)])

    def squares_to_zero(self) -> bool:
        return all((self.boundaries[n - 1] @ self.boundaries[n]).is_zero() for n in range(2, len(self.boundaries)))

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * len(b) for n, b in enumerate(self.bases))


def homology(X, n: int, reduced: bool = False) -> HomologyGroup:
    """``H_n(X; Z)``; ``reduced`` only changes degree 0."""
    X = _as_sset(X)
    if n < 0:
        raise SimplicialError("negative degree")
    if X.cap is not None and X.cap < n + 1:
        raise SimplicialError(f"H_{n} needs the build through dimension {n + 1}, cap is {X.cap}")
    nullity = len(X.generators(n)) - boundary_snf(X, n).rank
    upper = boundary_snf(X, n + 1)
    betti = nullity - upper.rank
    if reduced and n == 0 and len(X):
        betti -= 1
    torsion = tuple(d for d in upper.invariant_factors if d > 1)
    return HomologyGroup(n, betti, torsion, reduced and n == 0)


def homology_report(X, top: int) -> dict:
    """JSON-ready homology through degree ``top`` with SNF audit digests."""
    X = _as_sset(X)
    degrees = {}
    certs = {}
    for n in range(top + 1):
        degrees[str(n)] = homology(X, n).to_json()
    for n in range(1, top + 2):
        certs[f"d{n}"] = boundary_snf(X, n).digest()[:16]
    return {
        "model": X.name,
        "cap": X.cap,
        "counts": list(X.counts(top + 1)),
        "homology": degrees,
        "reduced_h0_betti": homology(X, 0, reduced=True).betti,
        "snf_certificates": certs,
    }


# -- mod p oracle -------------------------------------------------------------


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def rank_mod_p(M: IntMatrix, p: int) -> int:
    rows = [[a % p for a in row] for row in M.data]
    rank = 0
    ncols = M.cols
    for c in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [a * inv % p for a in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                q = rows[r][c]
                rows[r] = [(a - q * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def betti_mod_p(X, n: int, p: int) -> int:
    """``dim H_n(X; F_p)`` by Gaussian elimination over ``F_p``."""
    X = _as_sset(X)
    if not _is_prime(p):
        raise SimplicialError(f"{p} is not prime")
    if X.cap is not None and X.cap < n + 1:
        raise SimplicialError(f"H_{n} needs the build through dimension {n + 1}, cap is {X.cap}")
    dim_n = len(X.generators(n))
    return dim_n - rank_mod_p(boundary_matrix(X, n), p) - rank_mod_p(boundary_matrix(X, n + 1), p)


# -- chain maps ---------------------------------------------------------------


def chain_map_matrices(f: SimplicialMap, top: int | None = None) -> list[IntMatrix]:
    """Matrices of ``f_#`` in degrees ``0..top``; degenerate images map to 0."""
    S, T = f.source, f.target
    if S.cap != T.cap:
        raise SimplicialError(f"cap mismatch: {S.cap} vs {T.cap}")
    if top is None:
        top = S.cap if S.cap is not None else max(S.top_dim, 0)
    S.ensure_cap(top)
    mats = []
    for n in range(top + 1):
        cols = S.generators(n)
        rows = {g.id: r for r, g in enumerate(T.generators(n))}
        M = IntMatrix(len(rows), len(cols))
        for c, g in enumerate(cols):
            img = f.images[g.id]
            if not img.word:
                M[rows[img.gen], c] = 1
        mats.append(M)
    return mats


def cycle_basis(X, n: int) -> list[list[int]]:
    """A Z-basis of the ``n``-cycles (columns of ``V`` past the rank of ``d_n``)."""
    res = boundary_snf(X, n)
    return [res.V.column(j) for j in range(res.rank, res.V.cols)]


def is_boundary(X, n: int, chain: list[int]) -> bool:
    """Exact membership of an ``n``-chain in the image of ``d_{n+1}``."""
    X = _as_sset(X)
    if X.cap is not None and X.cap < n + 1:
        raise SimplicialError(f"boundary test in degree {n} needs cap >= {n + 1}")
    res = boundary_snf(X, n + 1)
    y = res.U.apply(chain)
    diag = res.diagonal
    for i, v in enumerate(y):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if v:
                return False
        elif v % d:
            return False
    return True


@dataclass(frozen=True)
class ZeroCheck:
    zero: bool
    witness: dict[str, int] | None = None

    def __bool__(self) -> bool:
        return self.zero


def induced_zero_on_homology(f: SimplicialMap, n: int) -> ZeroCheck:
    """Whether ``f_*: H_n(source) -> H_n(target)`` vanishes.

    Every cycle of a kernel basis is pushed forward and tested against the
    image of the target's ``d_{n+1}``; the first failing cycle is returned.
    """
    S, T = f.source, f.target
    for X in (S, T):
        if X.cap is not None and X.cap < n + 1:
            raise SimplicialError(f"H_{n} needs cap >= {n + 1}, got {X.cap}")
    fn = chain_map_matrices(f, n)[n]
    names = [g.id for g in S.generators(n)]
    for z in cycle_basis(S, n):
        if not is_boundary(T, n, fn.apply(z)):
            return ZeroCheck(False, {names[i]: c for i, c in enumerate(z) if c})
    return ZeroCheck(True)


def nonbounding_cycle(X, n: int) -> dict[str, int] | None:
    """A cycle that is not a boundary, or ``None`` when ``H_n = 0``."""
    X = _as_sset(X)
    names = [g.id for g in X.generators(n)]
    for z in cycle_basis(X, n):
        if not is_boundary(X, n, z):
            return {names[i]: c for i, c in enumerate(z) if c}
    return None
