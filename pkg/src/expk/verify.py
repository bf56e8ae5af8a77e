"""Connectivity checks and example reproductions on finite subset spaces."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Iterable

from .exp import DEFAULT_BUDGET, ExpBuild, build_exp, component_subset, components, exp_inclusion
from .groups import Presentation, abelianization, certify_pi1, commutator, format_word
from .homology import ChainData, homology, induced_zero_on_homology, nonbounding_cycle
from .models import build_model
from .simplicial import SimplicialError, SimplicialSet

PASS, FAIL, INCONCLUSIVE, REPORTED = "pass", "fail", "inconclusive", "reported"


class DisconnectedInput(SimplicialError):
    pass


@dataclass
class Check:
    name: str
    verdict: str
    detail: Any = None
    witness: Any = None

    def to_json(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "verdict": self.verdict}
        if self.detail is not None:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerificationReport:
    kind: str
    model: str
    k: int | None
    cap: int | None
    checks: list[Check] = field(default_factory=list)
    timing: float = 0.0

    @property
    def verdict(self) -> str:
        verdicts = {c.verdict for c in self.checks}
        if FAIL in verdicts:
            return FAIL
        if INCONCLUSIVE in verdicts:
            return INCONCLUSIVE
        return PASS

    @property
    def exit_code(self) -> int:
        return {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}[self.verdict]

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "kind": self.kind,
            "model": self.model,
            "k": self.k,
            "cap": self.cap,
            "verdict": self.verdict,
            "checks": [c.to_json() for c in self.checks],
        }
        if timing:
            out["seconds"] = round(self.timing, 3)
        return out

    def to_text(self) -> str:
        head = f"{self.kind} {self.model}"
        if self.k is not None:
            head += f" k={self.k}"
        if self.cap is not None:
            head += f" cap={self.cap}"
        lines = [f"{head}: {self.verdict.upper()}"]
        for c in self.checks:
            line = f"  [{c.verdict}] {c.name}"
            if c.detail is not None:
                line += f": {c.detail}"
            lines.append(line)
            if c.witness is not None and c.verdict != PASS:
                lines.append(f"      witness: {c.witness}")
        return "\n".join(lines)


def _cycle_witness(E: ExpBuild, cycle: dict[str, int]) -> dict[str, int]:
    return {E.describe(gid): c for gid, c in cycle.items()}


def _require_connected(K: SimplicialSet) -> None:
    n = len(components(K))
    if n != 1:
        raise DisconnectedInput(
            f"{K.name or 'model'} has {n} components; connectivity checks need a connected complex"
            " (exp_3 of two circles already has three components)"
        )


def _vanishing_checks(E: ExpBuild, top: int) -> list[Check]:
    checks = []
    for i in range(top + 1):
        H = homology(E, i, reduced=True)
        name = f"reduced H_{i} = 0"
        if H.is_zero:
            checks.append(Check(name, PASS, str(H)))
            continue
        if i == 0:
            comps = components(E.result)
            witness = {"component_vertices": [[E.describe(v) for v in vs] for vs in comps.vertices]}
        else:
            witness = {"cycle": _cycle_witness(E, nonbounding_cycle(E, i))}
        checks.append(Check(name, FAIL, str(H), witness))
    return checks


def _pi1_check(E: ExpBuild) -> Check:
    cert = certify_pi1(E.result)
    detail = {"simplified": str(cert.simplified), "relators": len(cert.presentation.relators)}
    verdict = {"trivial": PASS, "nontrivial": FAIL, "inconclusive": INCONCLUSIVE}[cert.status]
    witness = None if verdict == PASS else cert.to_json()
    return Check("pi_1 trivial", verdict, detail, witness)


def verify_connectivity(
    K: SimplicialSet,
    k: int,
    strengthened: bool = False,
    max_dim: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> VerificationReport:
    """exp_k(K) is (k-2)-connected, or (k-1)-connected for simply connected K."""
    start = time.perf_counter()
    _require_connected(K)
    top = k - 1 if strengthened else k - 2
    needs_pi1 = top >= 1
    required = max(top + 1, 2 if needs_pi1 else 0)
    cap = required if max_dim is None else max_dim
    if cap < required:
        raise SimplicialError(f"--max-dim {cap} is below the {required} this check needs")
    E = build_exp(K, k, cap, budget)
    report = VerificationReport("connectivity" + (" (strengthened)" if strengthened else ""), K.name, k, cap)
    if strengthened:
        simply = certify_pi1(K) if K.top_dim >= 1 else None
        status = simply.status if simply else "trivial"
        verdict = {"trivial": PASS, "nontrivial": FAIL, "inconclusive": INCONCLUSIVE}[status]
        report.checks.append(
            Check("input simply connected", verdict, witness=None if verdict == PASS else simply.to_json())
        )
    report.checks.extend(_vanishing_checks(E, top))
    if needs_pi1:
        report.checks.append(_pi1_check(E))
    report.timing = time.perf_counter() - start
    return report


def verify_handel(
    K: SimplicialSet,
    k: int,
    degrees: Iterable[int] = (1,),
    budget: int = DEFAULT_BUDGET,
    max_dim: int | None = None,
) -> VerificationReport:
    """exp_k(K) -> exp_{2k+1}(K) induces zero on H_n for each requested n."""
    start = time.perf_counter()
    _require_connected(K)
    degrees = sorted(set(degrees))
    if not degrees or degrees[0] < 1:
        raise SimplicialError("degrees must be positive")
    cap = degrees[-1] + 1 if max_dim is None else max_dim
    if cap < degrees[-1] + 1:
        raise SimplicialError(f"H_{degrees[-1]} needs cap >= {degrees[-1] + 1}, got {cap}")
    small = build_exp(K, k, cap, budget)
    big = build_exp(K, 2 * k + 1, cap, budget)
    inc = exp_inclusion(small, big)
    report = VerificationReport("handel", K.name, k, cap)
    for n in degrees:
        res = induced_zero_on_homology(inc, n)
        name = f"H_{n}(exp_{k}) -> H_{n}(exp_{2 * k + 1}) is zero"
        if res.zero:
            report.checks.append(Check(name, PASS, str(homology(small, n))))
        else:
            report.checks.append(Check(name, FAIL, str(homology(small, n)), {"cycle": _cycle_witness(small, res.witness)}))
    report.timing = time.perf_counter() - start
    return report


def dimension_profile(
    K: SimplicialSet, k: int, max_dim: int | None = None, budget: int = DEFAULT_BUDGET
) -> VerificationReport:
    """Dimensions of nondegenerate generators per subset cardinality.

    The upper bound ``dim <= n k`` is asserted; the lower bound ``k - c`` for
    cardinality-``k`` generators is only reported, since these simplicial
    models are not expected to meet it.
    """
    start = time.perf_counter()
    n = max(K.top_dim, 0)
    required = n * k + 1
    cap = required if max_dim is None else max_dim
    if cap < required:
        raise SimplicialError(f"profile of exp_{k} needs cap >= {required}, got {cap}")
    E = build_exp(K, k, cap, budget)
    hist: dict[int, dict[int, int]] = {}
    for g in E.result:
        row = hist.setdefault(E.cardinality(g.id), {})
        row[g.dim] = row.get(g.dim, 0) + 1
    profile = {str(c): {str(d): hist[c][d] for d in sorted(hist[c])} for c in sorted(hist)}
    top = E.result.top_dim
    report = VerificationReport("conjecture-profile", K.name, k, cap)
    report.checks.append(Check("histogram", REPORTED, profile))
    report.checks.append(Check(f"max dimension <= n*k = {n * k}", PASS if top <= n * k else FAIL, top,
                               None if top <= n * k else [E.describe(g.id) for g in E.result.generators(top)]))
    above = E.result.generators(n * k + 1)
    report.checks.append(Check(f"dimension {n * k + 1} empty", PASS if not above else FAIL, len(above),
                               [E.describe(g.id) for g in above] or None))
    c = len(components(K))
    dims = [g.dim for g in E.result if E.cardinality(g.id) == k]
    lowest = min(dims) if dims else None
    report.checks.append(Check(
        "lower bound k - c (not asserted)", REPORTED,
        {"min_dim_cardinality_k": lowest, "k_minus_c": k - c,
         "meets_bound": None if lowest is None else lowest >= k - c},
    ))
    report.timing = time.perf_counter() - start
    return report


def _reference_mixed_presentation() -> Presentation:
    a, b = (("a", 1),), (("b", 1),)
    return Presentation(["a", "b"], [commutator(a, b + b), commutator(a + a, b)])


def run_example_suite(budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """exp_3 of two disjoint circles: two S^3 components and a mixed 3-manifold."""
    start = time.perf_counter()
    K = build_model("disjoint(s1,s1)")
    E = build_exp(K, 3, 4, budget)
    X = E.result
    comps = components(X)
    report = VerificationReport("examples", K.name, 3, 4)
    report.checks.append(Check("three components", PASS if len(comps) == 3 else FAIL, len(comps),
                               None if len(comps) == 3 else [[E.describe(v) for v in vs] for vs in comps.vertices]))
    pure, mixed = [], []
    for label, verts in enumerate(comps.vertices):
        circles = {a.gen.split(".")[0] for v in verts for a in E.witness[v]}
        (mixed if len(circles) > 1 else pure).append(label)
    sphere = [(1, ()), (0, ()), (0, ()), (1, ())]
    pure_ok = 0
    for label in pure:
        C = component_subset(X, comps, label)
        hs = [homology(C, n) for n in range(4)]
        ok = [(h.betti, h.torsion) for h in hs] == sphere
        pure_ok += ok
        report.checks.append(Check(f"pure component {label} has S^3 homology", PASS if ok else FAIL,
                                   [str(h) for h in hs], None if ok else {"component": list(comps.vertices[label])}))
    if len(pure) != 2:
        report.checks.append(Check("two pure components", FAIL, len(pure)))
    if len(mixed) != 1:
        report.checks.append(Check("one mixed component", FAIL, len(mixed)))
        report.timing = time.perf_counter() - start
        return report
    M = component_subset(X, comps, mixed[0])
    hs = [homology(M, n) for n in range(4)]
    chi = ChainData.of(M).euler_characteristic()
    witness = {"component": [E.describe(v) for v in comps.vertices[mixed[0]]]}
    for name, ok, detail in (
        ("mixed H_0 = Z", (hs[0].betti, hs[0].torsion) == (1, ()), str(hs[0])),
        ("mixed H_1 = Z^2", (hs[1].betti, hs[1].torsion) == (2, ()), str(hs[1])),
        ("mixed Euler characteristic 0", chi == 0, chi),
    ):
        report.checks.append(Check(name, PASS if ok else FAIL, detail, None if ok else witness))
    report.checks.append(Check("mixed homology", REPORTED, [str(h) for h in hs]))
    cert = certify_pi1(M)
    ours = abelianization(cert.simplified)
    theirs = _reference_mixed_presentation()
    report.checks.append(Check("mixed pi_1", REPORTED, {
        "presentation": cert.to_json(),
        "expected": str(theirs),
        "abelianizations_agree": ours == abelianization(theirs),
        "syntactically_equal": sorted(map(format_word, cert.simplified.relators))
        == sorted(map(format_word, theirs.relators)),
    }))
    report.timing = time.perf_counter() - start
    return report
