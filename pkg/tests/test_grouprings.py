import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P
from oracles import gamma_depth
from pseudoiso.grouprings import (
    HypothesisError,
    build_p2_p3,
    complex_data,
    d_k,
    delta_bar_h2,
    gamma_member,
    ideal_span,
    magnus_expand,
    rho,
    tau_bar,
    tau_bar_1,
    tau_bar_split_check,
    tau_word,
    witt_count,
)
from pseudoiso.massey import build_group_context, invariant_class
from pseudoiso.tensorspace import TruncatedWords, bracket, pairs
from pseudoiso.words import commutator
from pseudoiso.zlinalg import InputError, lattice_equal

TORUS = P(2, (1, 2, -1, -2))


def words(n, max_len=8):
    letters = [i for i in range(-n, n + 1) if i]
    return st.lists(st.sampled_from(letters), max_size=max_len)


def test_magnus_examples():
    assert magnus_expand([1], 2, 3).terms == {(): 1, (0,): 1}
    assert magnus_expand([1, 2, -1, -2], 2, 3).terms == {(): 1, (0, 1): 1, (1, 0): -1}
    with pytest.raises(InputError, match="letter out of range"):
        magnus_expand([3], 2, 3)


@pytest.mark.parametrize("alpha", [(1, 0, 0), (2, -1, 0), (1, 1, 1), (-1, 0, 3)])
def test_magnus_of_commutator_products(alpha):
    n = 3
    got = magnus_expand(tau_word(alpha, n), n, 4).terms
    want = {(): 1}
    for a, (i, j) in zip(alpha, pairs(n)):
        for w, s in (((i, j), 1), ((j, i), -1)):
            want[w] = want.get(w, 0) + a * s
            for k in (i, j):
                want[w + (k,)] = want.get(w + (k,), 0) - a * s
    assert got == {w: c for w, c in want.items() if c}


@settings(max_examples=60, deadline=None)
@given(words(3), words(3))
def test_magnus_multiplicative(u, v):
    W = TruncatedWords(3, 4)
    lhs = magnus_expand(u + v, 3, 4).terms
    rhs = W.multiply(magnus_expand(u, 3, 4).terms, magnus_expand(v, 3, 4).terms)
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(words(3), words(3))
def test_commutator_degree_two_is_bracket(u, v):
    n = 3
    w = commutator(u, v)
    du, dv = rho(u, n, 1), rho(v, n, 1)
    assert rho(w, n, 2) == bracket(n, du, dv)


def test_dk_examples():
    D = d_k(P(1), 3)
    assert (D.presentation.free_rank, D.presentation.torsion) == (3, ())
    for Pr in (TORUS, P(3, (1, 2, -1, -2), (1, 3, -1, -3))):
        D = d_k(Pr, 2)
        assert (D.presentation.free_rank, D.presentation.torsion) == (1 + Pr.n, ())
    assert d_k(TORUS, 1).presentation.free_rank == 1


def test_dk_accepts_relators_outside_commutator_subgroup():
    D = d_k(P(1, (1, 1, 1)), 3)
    # Z[Z/3]/I^3: the degree filtration gives Z + Z/3 + Z/3
    assert D.presentation.free_rank == 1 and D.presentation.torsion == (3, 3)


@pytest.mark.parametrize("Pr", [TORUS, P(3, (1, 2, -1, -2), (2, 3, -2, -3)), P(2, (1, 1, 2, -1, -1, -2))])
def test_ideal_span_is_two_sided(Pr):
    k = 4
    D = d_k(Pr, k)
    W = TruncatedWords(Pr.n, k)
    for e in ideal_span(Pr, k):
        for i in range(Pr.n):
            assert D.is_zero(W.multiply({(i,): 1}, e))
            assert D.is_zero(W.multiply(e, {(i,): 1}))


def test_gamma_examples():
    F2 = P(2)
    g1 = [1]
    c = [1, 2, -1, -2]
    cc = list(commutator([1], c))
    assert gamma_member(F2, g1, 1) and not gamma_member(F2, g1, 2)
    assert gamma_member(F2, c, 2) and not gamma_member(F2, c, 3)
    assert gamma_member(F2, cc, 3) and not gamma_member(F2, cc, 4)
    with pytest.raises(InputError):
        gamma_member(F2, g1, 5)
    with pytest.raises(InputError, match="letter out of range"):
        gamma_member(F2, [0], 2)


def test_gamma_against_malcev_oracle_sample():
    rng = random.Random(11)
    for n in (1, 2, 3):
        Fn = P(n)
        Ds = {k: d_k(Fn, k) for k in (2, 3, 4)}
        for _ in range(40):
            u, v = ([rng.choice([i for i in range(-n, n + 1) if i]) for _ in range(rng.randint(0, 4))]
                    for _ in range(2))
            w = list(commutator(u, v)) if rng.random() < 0.5 else u + v
            depth = gamma_depth(w)
            for k in (2, 3, 4):
                assert gamma_member(Fn, w, k, Ds[k]) == (depth >= k), (w, k)


def test_delta_bar_examples():
    d = delta_bar_h2(TORUS)
    assert d.alpha == ((1,),) and d.injective
    d = delta_bar_h2(P(3, (1, 2, -1, -2), (1, 3, -1, -3)))
    assert d.rank == 2 and sorted(d.alpha) == [(0, 1, 0), (1, 0, 0)]
    d = delta_bar_h2(P(2, (1, 1, 2, -1, -2, -1, 2, 1, -2, -1)))
    assert d.rank == 0 and not d.injective
    with pytest.raises(HypothesisError):
        delta_bar_h2(P(1, (1, 1)))


def test_p2_p3_examples():
    L = build_p2_p3(P(2))
    assert (L.p2.free_rank, L.p3.free_rank) == (1, 2)
    L = build_p2_p3(TORUS)
    assert L.p2.is_trivial and L.p3.is_trivial
    assert build_p2_p3(P(3)).p3.free_rank == 8


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_free_p3_matches_witt(n):
    L = build_p2_p3(P(n))
    assert L.p3.free_rank == witt_count(n, 3) == (n ** 3 - n) // 3
    assert L.p3.torsion == () and L.p3_embeds


def test_redundant_relator_needs_flag():
    Pr = P(2, (1, 2, -1, -2), (1, 2, -1, -2))
    with pytest.raises(HypothesisError):
        build_p2_p3(Pr)
    assert build_p2_p3(Pr, require_injective=False).delta.rank == 1


def test_tau_bar_torus_is_zero():
    tb = tau_bar(TORUS)
    assert tb.matrix.rows == 0


def test_tau_bar_one_formula():
    L = build_p2_p3(TORUS)
    # -(x1x2 - x2x1)(x1 + x2)
    v = tau_bar_1(L)[0]
    want = [0] * 8
    for w, c in (((0, 1, 0), -1), ((0, 1, 1), -1), ((1, 0, 0), 1), ((1, 0, 1), 1)):
        want[w[0] * 4 + w[1] * 2 + w[2]] = c
    assert v == want


@pytest.mark.parametrize("Pr", [
    P(3, tuple(commutator([1], [2]) + commutator([1], [3]))),
    P(3, (1, 2, -1, -2), (2, 3, -2, -3)),
    P(2, (1, 1, 2, -1, -1, -2)),
])
def test_tau_bar_split_matches_direct(Pr):
    L = build_p2_p3(Pr)
    tb = tau_bar(Pr, L)
    assert tau_bar_split_check(L, tb, complex_data(L))
    D = d_k(Pr, 4)
    for alpha in L.delta.alpha:
        assert gamma_member(Pr, tau_word(alpha, Pr.n), 3, D)


def test_redundant_conjugate_relator_is_stable():
    base = P(3, (1, 2, -1, -2), (2, 3, -2, -3))
    r1, r2 = base.relators
    extra = tuple([3] + list(r1) + [-3] + list(r2))
    big = base.with_relators([extra])
    a = build_p2_p3(base)
    b = build_p2_p3(big, require_injective=False)
    assert lattice_equal(a.delta.lattice, b.delta.lattice)
    ca = build_group_context(base, a)
    cb = build_group_context(big, b)
    assert invariant_class(ca) == invariant_class(cb)
