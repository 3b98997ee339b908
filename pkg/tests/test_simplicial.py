import itertools
import random

import pytest

from conftest import P, corpus_presentations
from pseudoiso.massey import zeta
from pseudoiso.moves import cap_inclusion, elementary_expansion, sphere_collapse
from pseudoiso.simplicial import (
    SimplicialMap,
    ValidationError,
    aw_diagonal,
    build_simplicial_set,
    circle,
    coboundary,
    cohomology,
    cup,
    cup1,
    homology_presentation,
    make_simplicial_set,
    nondeg,
    presentation_complex,
    pseudo_homeo_check,
    torus,
    torus_corner,
)

TORUS = P(2, (1, 2, -1, -2))
SMALL = [P(1), TORUS, P(3, (1, 2, -1, -2), (1, 3, -1, -3)), P(2, (1, 1, 2, -1, -1, -2))]


def complexes():
    return [circle(), torus_corner(), torus()] + [presentation_complex(p) for p in SMALL]


def rand_cochain(rng, size, lo=-3, hi=3):
    return [rng.randint(lo, hi) for _ in range(size)]


def test_json_models():
    X = build_simplicial_set({"simplices": {"1": ["a"]}})
    assert X.edges == ("a",) and not X.triangles
    Y = build_simplicial_set({"simplices": {"1": ["a", "b", "c"],
                                            "2": [{"name": "s", "d0": "b", "d1": "c", "d2": "a"}]}})
    assert Y.to_json() == torus_corner().to_json()
    with pytest.raises(ValidationError):
        build_simplicial_set({"simplices": {"1": ["a"], "2": [{"name": "s", "d0": "a", "d1": "zz", "d2": "a"}]}})


def test_json_round_trip():
    for X in complexes():
        assert build_simplicial_set(X.to_json()).to_json() == X.to_json()


@pytest.mark.parametrize("X", complexes(), ids=lambda X: f"{len(X.edges)}e{len(X.triangles)}t")
def test_boundary_squares_to_zero(X):
    C = X.chains
    if C.ranks[2]:
        assert (C.d1 @ C.d2).is_zero()
    if C.ranks[3]:
        assert (C.d2 @ C.d3).is_zero()


def test_aw_examples():
    X = torus_corner()
    D = aw_diagonal(X)
    a = X.index(1)["a"]
    assert sorted((p, q) for (_, p, _, q, _) in D["delta"][1][a]) == [(0, 1), (1, 0)]
    terms11 = [(i, j) for (_, p, i, q, j) in D["delta"][2][0] if p == 1]
    assert terms11 == [(X.index(1)["a"], X.index(1)["b"])]
    assert D["delta1"][1][a] == [(1, 1, a, 1, a)]
    c = X.index(1)["c"]
    assert sorted(D["delta1"][2][0]) == sorted([(1, 2, 0, 1, c), (1, 1, a, 2, 0), (1, 1, X.index(1)["b"], 2, 0)])


@pytest.mark.parametrize("X", complexes(), ids=lambda X: f"{len(X.edges)}e{len(X.triangles)}t")
def test_diagonal_coassociative(X):
    for d in range(4):
        for name in X.basis(d):
            s = nondeg(name, d)
            for p, q in itertools.product(range(d + 1), repeat=2):
                r = d - p - q
                if r < 0:
                    continue
                left = X.back(X.front(s, p + q), q)
                right = X.front(X.back(s, q + r), q)
                assert X.chain_index(left) == X.chain_index(right)


@pytest.mark.parametrize("X", complexes(), ids=lambda X: f"{len(X.edges)}e{len(X.triangles)}t")
def test_cup_associative_and_leibniz(X):
    rng = random.Random(1)
    nE = len(X.edges)
    for _ in range(10):
        f, g, h = (rand_cochain(rng, nE) for _ in range(3))
        if X.tetrahedra:
            assert cup(X, cup(X, f, 1, g, 1), 2, h, 1) == cup(X, f, 1, cup(X, g, 1, h, 1), 2)
        # single vertex: a 1-cochain's coboundary is f o boundary
        u = [rng.randint(-3, 3)]
        assert coboundary(X, u, 0) == [0] * nE


def test_cup_example_and_unit():
    X = torus_corner()
    w1, w2 = [2, 0, 0], [0, 5, 0]
    assert cup(X, w1, 1, w2, 1) == [10]
    f = [1, -2, 3]
    assert cup(X, [1], 0, f, 1) == f and cup(X, f, 1, [1], 0) == f
    assert cup(X, [3], 0, f, 1) == [3 * x for x in f]


@pytest.mark.parametrize("X", complexes(), ids=lambda X: f"{len(X.edges)}e{len(X.triangles)}t")
def test_cup1_homotopy_identity(X):
    # f cup g + g cup f = -d mu1(f(x)g) + mu1(df (x) g) + mu1(f (x) dg) for 1-cochains
    rng = random.Random(7)
    nE = len(X.edges)
    for _ in range(15):
        f, g = rand_cochain(rng, nE), rand_cochain(rng, nE)
        lhs = [a + b for a, b in zip(cup(X, f, 1, g, 1), cup(X, g, 1, f, 1))]
        m = cup1(X, f, 1, g, 1)
        rhs = [-x for x in coboundary(X, m, 1)]
        rhs = [a + b + c for a, b, c in zip(rhs, cup1(X, coboundary(X, f, 1), 2, g, 1),
                                           cup1(X, f, 1, coboundary(X, g, 1), 2))]
        assert lhs == rhs


@pytest.mark.parametrize("X", complexes(), ids=lambda X: f"{len(X.edges)}e{len(X.triangles)}t")
def test_zeta_is_primitive_of_square(X):
    H = cohomology(X)
    rng = random.Random(5)
    for _ in range(10):
        w = [0] * len(X.edges)
        for k in H.kappa:
            c = rng.randint(-3, 3)
            w = [a + c * b for a, b in zip(w, k)]
        assert coboundary(X, zeta(w), 1) == cup(X, w, 1, w, 1)


def test_cohomology_examples():
    H = cohomology(circle())
    assert H.h1_rank == 1 and H.h2.is_trivial
    assert cohomology(torus_corner()).h1_rank == 2
    assert cohomology(torus()).h1_rank == 2
    H = cohomology(presentation_complex(TORUS))
    assert H.h1_rank == 2 and (H.h2.free_rank, H.h2.torsion) == (1, ())


@pytest.mark.parametrize("name,Pr", corpus_presentations())
def test_presentation_complex_homology(name, Pr):
    X = presentation_complex(Pr)
    H1, _ = homology_presentation(X, 1)
    if Pr.in_commutator_subgroup():
        assert (H1.free_rank, H1.torsion) == (Pr.n, ())
    # single vertex: B^1 = 0, so kappa spans Z^1
    H = cohomology(X)
    assert H.z1.rank == H.h1_rank


def test_presentation_complex_structure():
    X = presentation_complex(P(1))
    assert X.edges == ("g1", "G1") and len(X.triangles) == 2
    word = (1, 2, 1, -2, -1, 2, -1, -2)
    X = presentation_complex(P(2, word))
    fan = [t for t in X.triangles if t.startswith("r1t")]
    prefix = [e for e in X.edges if e.startswith("r1p")]
    assert len(fan) == len(word) - 1 and len(prefix) == len(word) - 2
    X = presentation_complex(TORUS)
    assert len(X.edges) == 4 + 2


def test_pseudo_homeo_examples():
    X = presentation_complex(TORUS)
    ident = SimplicialMap.inclusion(X, X)
    assert pseudo_homeo_check(ident).is_pseudo_homeo
    assert pseudo_homeo_check(elementary_expansion(X, "g1", "g2")).is_pseudo_homeo
    assert pseudo_homeo_check(sphere_collapse(X)).is_pseudo_homeo
    assert pseudo_homeo_check(cap_inclusion(TORUS)).is_pseudo_homeo
    C, T = circle(), torus_corner()
    f = SimplicialMap.from_tokens(T, C, {"a": "a", "b": "*", "c": "a", "s": "s1(a)"})
    v = pseudo_homeo_check(f)
    assert not v.h1_iso and not v.is_pseudo_homeo


def test_map_must_commute_with_faces():
    C, T = circle(), torus_corner()
    with pytest.raises(ValidationError):
        SimplicialMap.from_tokens(T, C, {"a": "a", "b": "a", "c": "a", "s": "s0(a)"})


def test_make_simplicial_set_rejects_missing_face():
    with pytest.raises(ValidationError):
        make_simplicial_set(["a"], [("s", "a", "b", "a")])
