from math import comb

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from expk.models import BUILTINS, build_model
from expk.simplicial import (
    Generator,
    SimplexRef,
    SimplicialError,
    SimplicialSet,
    apply_degeneracy,
    apply_word,
    compose_words,
    enumerate_level,
    normalize_face,
    validate,
)


@pytest.fixture(scope="module")
def s1():
    return build_model("s1")


def test_point():
    K = build_model("builtin:point")
    assert [(g.id, g.dim) for g in K] == [("v", 0)]


def test_minimal_circle(s1):
    assert [(g.id, g.dim, g.faces) for g in s1] == [
        ("v", 0, ()),
        ("s", 1, (SimplexRef("v"), SimplexRef("v"))),
    ]


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_minimal_sphere_faces_are_degenerate_basepoint(n):
    K = build_model(f"s{n}")
    assert K.counts() == (1,) + (0,) * (n - 1) + (1,)
    (top,) = K.generators(n)
    assert all(f.gen == "v" and f.dim == n - 1 and len(f.word) == n - 1 for f in top.faces)


def test_disjoint_union_of_circles():
    K = build_model("disjoint(s1,s1)")
    assert K.counts() == (2, 2)
    faces = {g.id: {f.gen for f in g.faces} for g in K.generators(1)}
    assert faces == {"1.s": {"1.v"}, "2.s": {"2.v"}}


def test_wedge_shares_basepoint():
    K = build_model("wedge(s1,s2)")
    assert K.counts() == (1, 1, 1)
    assert {f.gen for g in K for f in g.faces} == {"v"}


@pytest.mark.parametrize("bad", ["s0", "wedge(s1,0)", "torus", "wedge(s1", "", "disjoint(2,s1)"])
def test_malformed_descriptors_rejected(bad):
    with pytest.raises(SimplicialError):
        build_model(bad)


def test_face_examples(s1):
    s0s = s1.ref("s", [0])
    assert normalize_face(0, s0s, s1) == s1.ref("s")
    assert normalize_face(1, s0s, s1) == s1.ref("s")
    assert normalize_face(2, s0s, s1) == s1.ref("v", [0])


def test_face_rejections(s1):
    with pytest.raises(SimplicialError):
        normalize_face(0, s1.ref("v"), s1)
    with pytest.raises(SimplicialError):
        normalize_face(2, s1.ref("s"), s1)


def test_degeneracy_examples(s1):
    v = s1.ref("v")
    assert apply_degeneracy(0, v).word == (0,)
    assert apply_degeneracy(0, apply_degeneracy(0, v)).word == (1, 0)
    assert apply_degeneracy(1, s1.ref("s")).word == (1,)
    with pytest.raises(SimplicialError):
        apply_degeneracy(2, s1.ref("s"))


def test_enumerate_level_examples(s1):
    assert set(enumerate_level(s1, 2)) == {s1.ref("v", [1, 0]), s1.ref("s", [0]), s1.ref("s", [1])}
    assert len(enumerate_level(s1, 4)) == 5
    assert len(enumerate_level(build_model("point"), 7)) == 1


@pytest.mark.parametrize("name", BUILTINS)
@pytest.mark.parametrize("n", range(6))
def test_level_counts_match_binomial_formula(name, n):
    K = build_model(name)
    expected = sum(comb(n, n - g.dim) for g in K if g.dim <= n)
    level = enumerate_level(K, n)
    assert len(level) == len(set(level)) == expected
    assert level == oracles.level(K, n)


@pytest.mark.parametrize("name", BUILTINS)
def test_builtin_models_validate(name):
    assert validate(build_model(name)).ok


def test_validate_reports_witness():
    # a 2-simplex whose edges sit on different circles
    good = build_model("disjoint(s1,s1)")
    broken = SimplicialSet(list(good) + [
        Generator("t", 2, (SimplexRef("1.s"), SimplexRef("2.s"), SimplexRef("1.s")))
    ])
    report = validate(broken)
    assert not report.ok
    assert ("t", 0, 1) in report.violations


def test_constructor_rejects_dangling_and_misdimensioned_faces():
    with pytest.raises(SimplicialError):
        SimplicialSet([Generator("s", 1, (SimplexRef("v"), SimplexRef("v")))])
    with pytest.raises(SimplicialError):
        SimplicialSet([Generator("v", 0), Generator("s", 2, (SimplexRef("v"),) * 3)])


# -- properties -----------------------------------------------------------------

MODELS = {name: build_model(name) for name in ("s1", "s2", "s3", "wedge(s1,s2)", "interval", "disjoint(s1,s1)")}


@st.composite
def simplices(draw, min_dim=0, max_dim=5):
    K = MODELS[draw(st.sampled_from(sorted(MODELS)))]
    n = draw(st.integers(min_dim, max_dim))
    x = draw(st.sampled_from(enumerate_level(K, n)))
    return K, x


@settings(max_examples=300, deadline=None)
@given(simplices(min_dim=2), st.data())
def test_face_face_identity(kx, data):
    K, x = kx
    j = data.draw(st.integers(1, x.dim))
    i = data.draw(st.integers(0, j - 1))
    lhs = normalize_face(i, normalize_face(j, x, K), K)
    rhs = normalize_face(j - 1, normalize_face(i, x, K), K)
    assert lhs == rhs


@settings(max_examples=300, deadline=None)
@given(simplices(), st.data())
def test_face_of_degeneracy_is_identity(kx, data):
    K, x = kx
    i = data.draw(st.integers(0, x.dim))
    y = apply_degeneracy(i, x)
    assert normalize_face(i, y, K) == x
    assert normalize_face(i + 1, y, K) == x


@settings(max_examples=300, deadline=None)
@given(simplices(min_dim=1), st.data())
def test_face_matches_surjection_oracle(kx, data):
    K, x = kx
    i = data.draw(st.integers(0, x.dim))
    assert normalize_face(i, x, K) == oracles.face(i, x, K)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(sorted(MODELS)), st.data())
def test_normal_form_is_unique(name, data):
    """Any sequence of degeneracies lands on the surjection oracle's word."""
    K = MODELS[name]
    g = data.draw(st.sampled_from(list(K)))
    x = K.ref(g.id)
    ops = []
    for _ in range(data.draw(st.integers(0, 5))):
        i = data.draw(st.integers(0, x.dim))
        ops.append(i)
        x = apply_degeneracy(i, x)
    theta = oracles.word_to_surjection(tuple(reversed(ops)), g.dim)
    assert x.word == oracles.surjection_to_word(theta)
    assert x.word == compose_words(tuple(reversed(ops)))
    assert apply_word(tuple(reversed(ops)), K.ref(g.id)) == x
