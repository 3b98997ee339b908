import random

import pytest

from pseudoiso.tensorspace import (
    PreconditionError,
    TensorWordBasis,
    TruncatedQuotient,
    TruncatedWords,
    chi2,
    decompose_q3,
    eta2,
    h1_l2_index,
    id_eta2,
    jmath,
    p_map,
    pair_index,
    q_map,
    s123,
    symmetric3_basis,
    triple_index,
    wedge_l,
)
from pseudoiso.zlinalg import IntMatrix, Lattice, kernel_lattice


def e3(n, i, j, k):
    v = [0] * n ** 3
    v[TensorWordBasis(n, 3).index((i, j, k))] = 1
    return v


def t_vec(n, entries):
    t = [0] * (n * len(pair_index(n)))
    for (i, j, k), c in entries.items():
        t[h1_l2_index(n, i, j, k)] += c
    return t


def test_eta2_examples():
    E = eta2(2)
    assert [E[0, c] for c in range(4)] == [0, 1, -1, 0]  # xi1xi1, xi1xi2, xi2xi1, xi2xi2


@pytest.mark.parametrize("n", range(1, 9))
def test_eta2_chi2_identity(n):
    m = len(pair_index(n))
    assert (eta2(n) @ chi2(n)).tolist() == IntMatrix.identity(m).tolist()


def test_jmath_example():
    n = 3
    col = [jmath(n)[r, 0] for r in range(27)]
    want = [0] * 27
    for (a, b, c, s) in ((0, 1, 2, 1), (1, 0, 2, -1), (1, 2, 0, 1), (2, 1, 0, -1), (2, 0, 1, 1), (0, 2, 1, -1)):
        want[TensorWordBasis(n, 3).index((a, b, c))] += s
    assert col == want


def test_wedge_l_repeated_factor():
    t = t_vec(2, {(0, 0, 1): 1})
    assert not any(wedge_l(2) @ t)


def test_p_map_examples():
    assert p_map(2, t_vec(2, {(0, 0, 1): 1})) == e3(2, 0, 0, 1)
    assert p_map(2, t_vec(2, {(1, 0, 1): 1})) == [-x for x in e3(2, 1, 1, 0)]
    assert not any(p_map(2, [0] * 2))
    with pytest.raises(PreconditionError):
        p_map(3, t_vec(3, {(0, 1, 2): 1}))


def test_q_map_examples():
    want = [a + b + c for a, b, c in zip(e3(3, 0, 1, 2), e3(3, 1, 0, 2), e3(3, 1, 2, 0))]
    assert q_map(3, t_vec(3, {(0, 1, 2): 1})) == want
    want = [2 * a + b for a, b in zip(e3(2, 0, 0, 1), e3(2, 0, 1, 0))]
    assert q_map(2, t_vec(2, {(0, 0, 1): 1})) == want
    assert not any(q_map(2, [0, 0]))


def _ker_l(n):
    return kernel_lattice(wedge_l(n))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_p_is_right_inverse_on_ker_l(n):
    N = n ** 3
    minus_s = [[int(i == j) - s123(n)[i, j] for j in range(N)] for i in range(N)]
    A = id_eta2(n) @ IntMatrix.from_rows(minus_s, N)
    for t in _ker_l(n).basis:
        assert A @ p_map(n, t) == list(t)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_q_identities(n):
    m = n * len(pair_index(n))
    for idx in range(m):
        t = [int(i == idx) for i in range(m)]
        qt = q_map(n, t)
        assert id_eta2(n) @ qt == t
        assert id_eta2(n) @ (s123(n) @ qt) == t


def test_s123_is_cyclic_of_order_three():
    S = s123(2)
    S3 = S @ S @ S
    assert S3.tolist() == IntMatrix.identity(8).tolist()
    assert S @ e3(2, 0, 0, 1) == e3(2, 1, 0, 0)


def test_decompose_q3_examples():
    n = 2
    kl = _ker_l(n)
    h1r = Lattice.zero(n * len(pair_index(n)))
    d = decompose_q3(n, e3(n, 0, 0, 0), kl, h1r)
    assert d.s_part == e3(n, 0, 0, 0) and not any(d.p_part) and not any(d.q_part)
    v = p_map(n, t_vec(n, {(0, 0, 1): 1}))
    d = decompose_q3(n, v, kl, h1r)
    assert d.p_part == v and not any(d.q_part) and not any(d.s_part)
    n = 3
    t = t_vec(n, {(0, 1, 2): 1})
    v = q_map(n, t)
    d = decompose_q3(n, v, Lattice.zero(9), Lattice.from_columns([t], 9))
    assert d.q_part == v and not any(d.p_part) and not any(d.s_part)


def test_decompose_q3_reassembles_random_vectors():
    rng = random.Random(3)
    n = 2
    kl = _ker_l(n)
    h1r = Lattice.zero(n * len(pair_index(n)))
    for _ in range(20):
        v = [0] * n ** 3
        for col in [p_map(n, t) for t in kl.basis] + [list(c) for c in symmetric3_basis(n)]:
            c = rng.randint(-3, 3)
            v = [a + c * b for a, b in zip(v, col)]
        d = decompose_q3(n, v, kl, h1r)
        assert [a + b + c for a, b, c in zip(d.p_part, d.q_part, d.s_part)] == v


def test_truncated_words_and_quotient():
    W = TruncatedWords(2, 3)
    assert W.size == 1 + 2 + 4
    assert [W.word(i) for i in range(3)] == [(), (0,), (1,)]
    assert W.multiply({(0,): 1}, {(1,): 1, (0, 1): 1}) == {(0, 1): 1}
    Q = TruncatedQuotient.build(["a", "b"], 3, [{(0, 1): 1, (1, 0): -1}])
    assert Q.presentation.free_rank == 6
    ab = Q.product(Q.generator(0), Q.generator(1))
    ba = Q.product(Q.generator(1), Q.generator(0))
    assert Q.project(ab) == Q.project(ba)
    assert triple_index(3)[(0, 1, 2)] == 0
