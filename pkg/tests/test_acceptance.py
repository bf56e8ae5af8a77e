"""Exit criteria. Each test prints one PASS/FAILED line in the terminal summary."""

import os
import subprocess
import sys
import time
from importlib import import_module
from contextlib import contextmanager

import pytest

from expk.exp import build_exp, component_subset, components, exp_inclusion
from expk.groups import certify_pi1
from expk.homology import ChainData, betti_mod_p, boundary_matrix, homology, induced_zero_on_homology
from expk.models import BUILTINS, build_model
from expk.snf import smith_normal_form
from expk.verify import dimension_profile, run_example_suite, verify_connectivity

criterion = pytest.mark.criterion


@pytest.fixture(autouse=True)
def cold_caches():
    # the package re-exports functions named like these modules
    import_module("expk.exp")._mask.cache_clear()
    import_module("expk.homology")._snf_cached.cache_clear()
    yield


@contextmanager
def within(limit):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < limit, f"took {elapsed:.2f} s, limit {limit} s"


def groups(X, top):
    return [(h.betti, h.torsion) for h in (homology(X, n) for n in range(top + 1))]


Z, ZERO = (1, ()), (0, ())


@criterion("1. exp_1 is the identity on every builtin model", limit=1)
def test_exp1_identity():
    d = 4
    with within(1):
        for name in BUILTINS:
            K = build_model(name)
            E = build_exp(K, 1, d)
            assert E.result.counts(d) == K.counts(d), name
            back = {gid: A[0] for gid, A in E.witness.items()}
            assert all(len(A) == 1 and not A[0].word for A in E.witness.values())
            for g in E.result:
                original = K[back[g.id].gen]
                assert [(back[f.gen].gen, f.word) for f in g.faces] == [(f.gen, f.word) for f in original.faces]


@criterion("2. Moebius band exp_2(S^1)", limit=1)
def test_mobius():
    with within(1):
        E = build_exp(build_model("s1"), 2, 3)
        assert E.result.counts(3) == (1, 2, 1, 0)
        assert groups(E, 2) == [Z, Z, ZERO]
        cert = certify_pi1(E.result)
        assert str(cert.simplified) == "<b | >"
        assert ChainData.of(E).euler_characteristic() == 0


@criterion("3. Bott: exp_3(S^1) has the homology of S^3, pi_1 trivial", limit=5)
def test_bott_sphere():
    with within(5):
        E = build_exp(build_model("s1"), 3, 4)
        assert groups(E, 3) == [Z, ZERO, ZERO, Z]
        assert certify_pi1(E.result).simplified.is_trivial


CONNECTED_MODELS = ["s1", "wedge(s1,2)", "wedge(s1,3)", "s2", "wedge(s1,s2)"]


@criterion("4. connectivity: exp_k of connected models is (k-2)-connected, k = 3, 4", limit=120)
def test_connectivity_bound():
    with within(120):
        for name in CONNECTED_MODELS:
            for k in (3, 4):
                E = build_exp(build_model(name), k, k)
                for i in range(k - 1):
                    assert homology(E, i, reduced=True).is_zero, (name, k, i)
                cert = certify_pi1(E.result)
                assert cert.simplified.is_trivial, (name, k, str(cert.simplified))


@criterion("5. simply connected strengthening: (k-1)-connected, k = 2, 3", limit=60)
def test_strengthening():
    with within(60):
        for name in ("s2", "wedge(s2,2)"):
            for k in (2, 3):
                E = build_exp(build_model(name), k, k)
                for i in range(k):
                    assert homology(E, i, reduced=True).is_zero, (name, k, i)
                report = verify_connectivity(build_model(name), k, strengthened=True)
                assert report.verdict == "pass"


@criterion("6. two circles: exp_3(S^1 + S^1)", limit=30)
def test_closing_example():
    with within(30):
        E = build_exp(build_model("disjoint(s1,s1)"), 3, 4)
        comps = components(E.result)
        assert len(comps) == 3
        pure, mixed = [], []
        for label, verts in enumerate(comps.vertices):
            C = component_subset(E.result, comps, label)
            (mixed if len(E.witness[verts[0]]) == 2 else pure).append(C)
        assert len(pure) == 2 and len(mixed) == 1
        for C in pure:
            assert groups(C, 3) == [Z, ZERO, ZERO, Z]
        (M,) = mixed
        assert groups(M, 1) == [Z, (2, ())]
        assert ChainData.of(M).euler_characteristic() == 0
        assert run_example_suite().verdict == "pass"


@criterion("7. Handel: exp_1 -> exp_3 is zero on H_1", limit=30)
def test_handel():
    with within(30):
        for name in ("s1", "wedge(s1,2)"):
            K = build_model(name)
            f = exp_inclusion(build_exp(K, 1, 2), build_exp(K, 3, 2))
            assert homology(f.source, 1).betti > 0
            assert induced_zero_on_homology(f, 1).zero


@criterion("8. dimension window: nothing above n*k, level n*k+1 empty", limit=60)
def test_dimension_window():
    with within(60):
        for name, k in [("s1", 1), ("s1", 2), ("s1", 3), ("s2", 2)]:
            K = build_model(name)
            nk = K.top_dim * k
            E = build_exp(K, k, nk + 1)
            assert E.result.top_dim <= nk
            assert E.result.generators(nk + 1) == ()
            report = dimension_profile(K, k)
            assert report.verdict == "pass"
            assert report.check("lower bound k - c (not asserted)").verdict == "reported"


CROSS_BUILDS = (
    [("s1", 2, 3), ("s1", 3, 4), ("disjoint(s1,s1)", 3, 4)]
    + [(name, k, k) for name in CONNECTED_MODELS for k in (3, 4)]
    + [(name, k, k) for name in ("s2", "wedge(s2,2)") for k in (2, 3)]
)


@criterion("9. cross-oracle: universal coefficients, SNF certificates, dd = 0", limit=60)
def test_cross_oracle():
    with within(60):
        for name, k, cap in CROSS_BUILDS:
            E = build_exp(build_model(name), k, cap)
            assert ChainData.of(E).squares_to_zero()
            for n in range(1, cap + 1):
                M = boundary_matrix(E, n)
                assert smith_normal_form(M).verify(M), (name, k, n)
            for n in range(cap):
                h = homology(E, n)
                below = homology(E, n - 1).torsion if n else ()
                for p in (2, 3, 5):
                    expected = h.betti + sum(t % p == 0 for t in h.torsion + below)
                    assert betti_mod_p(E, n, p) == expected, (name, k, n, p)


REPORT_COMMANDS = [
    ["verify", "examples"],
    ["verify", "connectivity", "builtin:wedge(s1,s2)", "--k", "4"],
    ["verify", "connectivity", "builtin:wedge(s2,2)", "--k", "3", "--strengthened"],
    ["verify", "handel", "builtin:wedge(s1,2)", "--k", "1"],
    ["verify", "conjecture-profile", "builtin:s2", "--k", "2"],
    ["homology", "builtin:disjoint(s1,s1)", "--k", "3", "--max-dim", "4", "--mod-p", "3"],
    ["pi1", "builtin:disjoint(s1,s1)", "--k", "3", "--basepoint", "e0_1"],
    ["exp", "builtin:wedge(s1,2)", "--k", "3", "--max-dim", "3"],
]


def _reports(hash_seed):
    env = dict(os.environ, PYTHONHASHSEED=str(hash_seed))
    out = []
    for argv in REPORT_COMMANDS:
        proc = subprocess.run([sys.executable, "-m", "expk", *argv, "--format", "json"],
                              capture_output=True, env=env, check=False)
        assert proc.returncode == 0, proc.stderr.decode()
        out.append(proc.stdout)
    return out


@criterion("10. determinism: byte-identical JSON reports across runs")
def test_determinism():
    first, second = _reports(1), _reports(2024)
    for argv, a, b in zip(REPORT_COMMANDS, first, second):
        assert a == b, argv
        assert a.strip()
