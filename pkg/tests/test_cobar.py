import pytest

from conftest import P
from pseudoiso.cobar import a_k, algebra_iso_check, induced_map_check, triangle_boundary, truncated_cobar
from pseudoiso.grouprings import DkAlgebra, d_k, ideal_span
from pseudoiso.moves import generated_maps
from pseudoiso.simplicial import circle, nondeg, presentation_complex, torus_corner
from pseudoiso.tensorspace import TruncatedQuotient
from pseudoiso.zlinalg import InputError

TORUS = P(2, (1, 2, -1, -2))


def test_circle_degree_zero():
    F = truncated_cobar(circle(), 3)
    assert F.degree0.size == 3 and F.degree1 == () and F.differential == ()
    A = a_k(circle(), 3)
    assert (A.presentation.free_rank, A.presentation.torsion) == (3, ())
    g = A.edge_image("a")
    assert A.multiply(g, g) == {(): 1, (0,): 2, (0, 0): 1}


def test_torus_corner_differential():
    X = torus_corner()
    a, b, c = (X.index(1)[e] for e in "abc")
    assert truncated_cobar(X, 2).differential == ({(b,): -1, (c,): 1, (a,): -1},)
    d3 = truncated_cobar(X, 3).differential[0]
    assert d3 == {(a,): -1, (b,): -1, (c,): 1, (a, b): -1}
    A = a_k(X, 2)
    assert A.presentation.free_rank == 3


def test_k_one_is_integers():
    for X in (circle(), torus_corner(), presentation_complex(TORUS)):
        A = a_k(X, 1)
        assert (A.presentation.free_rank, A.presentation.torsion) == (1, ())


def test_k_out_of_range():
    with pytest.raises(InputError):
        a_k(circle(), 5)
    with pytest.raises(InputError):
        a_k(circle(), 0)


def test_unit_relation_per_triangle():
    # (1+[a])(1+[b]) - (1+[c]) = -d[s] for each 2-simplex s with d2 = a, d0 = b, d1 = c
    X = presentation_complex(P(2, (1, 2, -1, -2), (1, 1, 2, -1, -1, -2)))
    for name in X.triangles:
        b, c, a = (X.chain_index(X.face(nondeg(name, 2), j)) for j in range(3))
        lhs = {}
        for w, v in (((a,), 1), ((b,), 1), ((a, b), 1), ((c,), -1)):
            if None not in w:
                lhs[w] = lhs.get(w, 0) + v
        lhs = {w: v for w, v in lhs.items() if v}
        assert lhs == {w: -v for w, v in triangle_boundary(X, name).items()}


def test_circle_matches_free_group():
    assert algebra_iso_check(a_k(circle(), 3), d_k(P(1), 3), ["a"]).is_isomorphism


def test_torus_matches_d4():
    v = algebra_iso_check(a_k(presentation_complex(TORUS), 4), d_k(TORUS, 4))
    assert v.is_isomorphism, v


def test_corrupted_ideal_is_detected():
    Pr = TORUS
    rels = ideal_span(Pr, 4)[1:]
    bad = DkAlgebra(Pr, TruncatedQuotient.build(("x1", "x2"), 4, rels))
    v = algebra_iso_check(a_k(presentation_complex(Pr), 4), bad)
    assert not v.is_isomorphism and v.witness


def test_level_mismatch():
    with pytest.raises(InputError):
        algebra_iso_check(a_k(presentation_complex(TORUS), 3), d_k(TORUS, 4))


def test_transport_along_generated_maps():
    Pr = P(2, (1, 2, -1, -2))
    for name, f in generated_maps(Pr, limit=2):
        v = induced_map_check(f, a_k(f.source, 3), a_k(f.target, 3))
        assert v.is_isomorphism, (name, v)
