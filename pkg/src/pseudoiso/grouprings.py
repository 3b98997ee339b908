"""Truncated group rings of finitely presented groups.

Elements of the truncated free associative algebra T_{<k}(x_1..x_n) are
sparse dicts ``{word: coef}`` with 0-based letter indices.  The Magnus
expansion sends g_i to 1 + x_i and g_i^-1 to 1 - x_i + x_i^2 - ...
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Sequence

from .tensorspace import (
    InconsistencyError,
    TensorWordBasis,
    TruncatedQuotient,
    TruncatedWords,
    bracket,
    pair_index,
    pairs,
    tensor,
    triples,
)
from .words import GroupPresentation, Word, check_word, commutator, exponent_sums, power, reduce_word
from .zlinalg import (
    AbelianPresentation,
    InputError,
    IntMatrix,
    Lattice,
    cokernel_presentation,
    kernel_lattice,
    solve_in_lattice,
)

MAX_MAGNUS_K = 5
MAX_GAMMA_K = 4


class HypothesisError(InputError):
    """The presentation violates a hypothesis the computation relies on."""


# ---------------------------------------------------------------------------
# Magnus expansion


@dataclass(frozen=True)
class TruncatedSeries:
    n: int
    k: int
    terms: dict

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if (self.n, self.k) != (other.n, other.k):
            raise InputError("series live in different truncated algebras")
        return TruncatedSeries(self.n, self.k, TruncatedWords(self.n, self.k).multiply(self.terms, other.terms))

    def component(self, degree: int) -> list[int]:
        """Degree-d part as a dense vector over the lexicographic word basis of T^d."""
        B = TensorWordBasis(self.n, degree)
        out = [0] * B.size
        for w, c in self.terms.items():
            if len(w) == degree:
                out[B.index(w)] += c
        return out

    def minus_one(self) -> dict:
        out = dict(self.terms)
        c = out.get((), 0) - 1
        if c:
            out[()] = c
        else:
            out.pop((), None)
        return out

    def valuation(self) -> int:
        """Lowest degree of a nonzero term of (series - 1); k if none."""
        d = [len(w) for w, c in self.minus_one().items() if c]
        return min(d) if d else self.k


def _letter_series(x: int, n: int, k: int) -> dict:
    i = abs(x) - 1
    if x > 0:
        return {(): 1, (i,): 1} if k > 1 else {(): 1}
    return {(i,) * m: (-1) ** m for m in range(k)}


def magnus_expand(w: Sequence[int], n: int, k: int) -> TruncatedSeries:
    if not 1 <= k <= MAX_MAGNUS_K:
        raise InputError(f"Magnus truncation level k={k} outside 1..{MAX_MAGNUS_K}")
    w = check_word(w, n)
    W = TruncatedWords(n, k)
    acc = {(): 1}
    for x in w:
        acc = W.multiply(acc, _letter_series(x, n, k))
    return TruncatedSeries(n, k, acc)


# ---------------------------------------------------------------------------
# D^(k)


@dataclass(frozen=True, eq=False)
class DkAlgebra:
    P: GroupPresentation
    quotient: TruncatedQuotient

    @property
    def k(self) -> int:
        return self.quotient.k

    @property
    def presentation(self) -> AbelianPresentation:
        return self.quotient.presentation

    @property
    def ideal_generators(self) -> tuple[dict, ...]:
        return self.quotient.relations

    def generator_image(self, i: int) -> dict:
        """The class of g_i, i.e. 1 + x_i (0-based i)."""
        return self.quotient.generator(i)

    def element(self, w: Sequence[int]) -> dict:
        return magnus_expand(w, self.P.n, self.k).terms

    def project(self, elem: dict) -> tuple[int, ...]:
        return self.quotient.project(elem)

    def is_zero(self, elem: dict) -> bool:
        return self.quotient.is_zero(elem)


def ideal_span(P: GroupPresentation, k: int) -> list[dict]:
    """Truncated u (magnus(r) - 1) v spanning the two-sided ideal of the relators.

    Sandwiches with |u| + |v| + valuation(r) >= k vanish, so the bound
    adapts to each relator's Magnus valuation.
    """
    n = P.n
    W = TruncatedWords(n, k)
    out = []
    for r in P.relators:
        m = magnus_expand(r, n, k)
        core = m.minus_one()
        top = k - 1 - m.valuation()
        for length in range(top + 1):
            for left in range(length + 1):
                for u in product(range(n), repeat=left):
                    for v in product(range(n), repeat=length - left):
                        e = W.multiply(W.multiply({u: 1}, core), {v: 1})
                        if e:
                            out.append(e)
    return out


def d_k(P: GroupPresentation, k: int) -> DkAlgebra:
    if not isinstance(k, int) or not 1 <= k <= MAX_GAMMA_K:
        raise InputError(f"truncation level k={k} outside 1..{MAX_GAMMA_K}")
    letters = tuple(f"x{i + 1}" for i in range(P.n))
    return DkAlgebra(P, TruncatedQuotient.build(letters, k, ideal_span(P, k)))


def gamma_member(P: GroupPresentation, w: Sequence[int], k: int, D: DkAlgebra | None = None) -> bool:
    """Is the class of w in gamma_k G?  Decided by w - 1 vanishing in D^(k)(G)."""
    if not 1 <= k <= MAX_GAMMA_K:
        raise InputError(f"gamma_k membership is supported for k = 1..{MAX_GAMMA_K} only, got {k}")
    w = check_word(w, P.n)
    if k == 1:
        return True
    if D is None or D.k != k:
        D = d_k(P, k)
    return D.is_zero(magnus_expand(w, P.n, k).minus_one())


# ---------------------------------------------------------------------------
# Delta-bar(H2), P2, P3


def _require_commutator_relators(P: GroupPresentation) -> None:
    for r in P.relators:
        if any(exponent_sums(r, P.n)):
            raise HypothesisError(f"relator {list(r)} is not in the commutator subgroup")


def rho(r: Sequence[int], n: int, degree: int) -> list[int]:
    """Degree-d part of the Magnus expansion of r."""
    return magnus_expand(r, n, degree + 1).component(degree)


def pair_coords(n: int, v2: Sequence[int]) -> list[int]:
    """alpha_{ij} (i < j) of an antisymmetric T^2 vector."""
    return [v2[i * n + j] for (i, j) in pairs(n)]


def bracket_vector(n: int, alpha: Sequence[int]) -> list[int]:
    """sum alpha_ij [h_i, h_j] in T^2."""
    out = [0] * (n * n)
    for a, (i, j) in zip(alpha, pairs(n)):
        out[i * n + j] += a
        out[j * n + i] -= a
    return out


@dataclass(frozen=True, eq=False)
class DeltaBarH2:
    n: int
    lattice: Lattice  # in T^2 = H1 (x) H1 coordinates
    alpha: tuple[tuple[int, ...], ...]  # H2 basis in Lambda^2 coordinates (canonical)
    relator_coeffs: tuple[tuple[int, ...], ...]  # sum_r c_r rho2(r) = basis element
    injective: bool

    @property
    def rank(self) -> int:
        return len(self.alpha)

    def basis_t2(self) -> list[list[int]]:
        return [bracket_vector(self.n, a) for a in self.alpha]


def delta_bar_h2(P: GroupPresentation) -> DeltaBarH2:
    _require_commutator_relators(P)
    n = P.n
    rho2 = [rho(r, n, 2) for r in P.relators]
    for r, v in zip(P.relators, rho2):
        a = pair_coords(n, v)
        if bracket_vector(n, a) != v:
            raise InconsistencyError(f"degree-2 part of {list(r)} is not antisymmetric")
    acoords = [pair_coords(n, v) for v in rho2]
    npairs = len(pairs(n))
    span = Lattice.from_columns(acoords, npairs) if acoords else Lattice.zero(npairs)
    basis = [tuple(b) for b in span.basis]
    coeffs = []
    for b in basis:
        c = solve_in_lattice(span, b)
        coeffs.append(tuple(c))
    t2 = Lattice.from_columns([bracket_vector(n, b) for b in basis], n * n) if basis else Lattice.zero(n * n)
    return DeltaBarH2(n, t2, tuple(basis), tuple(coeffs), span.rank == len(P.relators))


def jmath_l2h1(n: int) -> list[list[int]]:
    """Columns j(x^y^z) = [x,y](x)z + [y,z](x)x + [z,x](x)y in Lambda^2 (x) H1 coordinates."""
    P = pair_index(n)
    cols = []
    for (i, j, k) in triples(n):
        c = [0] * (len(P) * n)
        # [x,y] with x<y is the basis pair; [z,x] = -[x,z]
        c[P[(i, j)] * n + k] += 1
        c[P[(j, k)] * n + i] += 1
        c[P[(i, k)] * n + j] -= 1
        cols.append(c)
    return cols


def lie3_embedding(n: int) -> list[list[int]]:
    """Columns [[h_i,h_j],h_a] in T^3 for the Lambda^2 (x) H1 basis (pair-major)."""
    e = [[int(a == b) for a in range(n)] for b in range(n)]
    cols = []
    for (i, j) in pairs(n):
        br = bracket(n, e[i], e[j])
        for a in range(n):
            left = tensor(br, e[a])
            right = tensor(e[a], br)
            cols.append([x - y for x, y in zip(left, right)])
    return cols


@dataclass(frozen=True, eq=False)
class LcsData:
    P: GroupPresentation
    delta: DeltaBarH2
    b2: AbelianPresentation  # T^2 / Delta-bar(H2)
    p2: AbelianPresentation  # Lambda^2 / alpha span
    p3: AbelianPresentation  # (Lambda^2 (x) H1) / (alpha (x) H1 + j(Lambda^3))
    k3: Lattice  # Delta-bar (x) H1 + H1 (x) Delta-bar in T^3
    p3_embeds: bool

    @property
    def n(self) -> int:
        return self.P.n

    @property
    def p3_free(self) -> bool:
        return self.p3.is_free

    @cached_property
    def _p3_solver(self) -> tuple[Lattice, int]:
        E = lie3_embedding(self.n)
        cols = E + self.k3.generators.columns()
        return Lattice.from_columns(cols, self.n ** 3), len(E)

    def p3_coords(self, v3: Sequence[int]) -> tuple[int, ...]:
        """P3 coordinates of a T^3 vector whose class in B3 lies in P3."""
        L, m = self._p3_solver
        c = solve_in_lattice(L, v3)
        if c is None:
            raise InconsistencyError("degree-3 class lies outside the embedded P3")
        return self.p3.project(c[:m])

    def b3_is_zero(self, v3: Sequence[int]) -> bool:
        return self.k3.contains(v3)


def build_p2_p3(P: GroupPresentation, require_injective: bool = True) -> LcsData:
    delta = delta_bar_h2(P)
    if require_injective and not delta.injective:
        raise HypothesisError(
            "degree-2 parts of the relators are linearly dependent; Delta-bar injectivity is not certified"
        )
    n = P.n
    npairs = len(pairs(n))
    b2 = cokernel_presentation(n * n, delta.lattice) if delta.rank else cokernel_presentation(n * n, Lattice.zero(n * n))
    al = Lattice.from_columns(delta.alpha, npairs) if delta.alpha else Lattice.zero(npairs)
    p2 = cokernel_presentation(npairs, al)
    rels = []
    for a in delta.alpha:
        for h in range(n):
            c = [0] * (npairs * n)
            for p, x in enumerate(a):
                c[p * n + h] = x
            rels.append(c)
    rels += jmath_l2h1(n)
    amb = npairs * n
    p3 = cokernel_presentation(amb, Lattice.from_columns(rels, amb) if rels else Lattice.zero(amb))
    e = [[int(a == b) for a in range(n)] for b in range(n)]
    k3cols = []
    for w in delta.basis_t2():
        for h in range(n):
            k3cols.append(tensor(w, e[h]))
            k3cols.append(tensor(e[h], w))
    k3 = Lattice.from_columns(k3cols, n ** 3) if k3cols else Lattice.zero(n ** 3)
    # P3 -> B3 injective: {c : E c in K3} must be the P3 relation lattice
    E = lie3_embedding(n)
    kb = k3.basis
    M = IntMatrix.from_rows([[col[i] for col in E] + [-b[i] for b in kb] for i in range(n ** 3)], amb + len(kb))
    K = kernel_lattice(M)
    relL = Lattice.from_columns(rels, amb) if rels else Lattice.zero(amb)
    embeds = all(relL.contains(c[:amb]) for c in K.generators.columns())
    return LcsData(P, delta, b2, p2, p3, k3, embeds)


def witt_count(n: int, d: int) -> int:
    """Rank of the degree-d part of the free Lie algebra on n generators."""
    def mobius(m: int) -> int:
        res, p, x = 1, 2, m
        while p * p <= x:
            if x % p == 0:
                x //= p
                if x % p == 0:
                    return 0
                res = -res
            p += 1
        return -res if x > 1 else res
    return sum(mobius(e) * n ** (d // e) for e in range(1, d + 1) if d % e == 0) // d


# ---------------------------------------------------------------------------
# tau and tau-bar


def tau_word(alpha: Sequence[int], n: int) -> Word:
    """prod_{i<j} (g_i g_j g_i^-1 g_j^-1)^alpha_ij (1-based letters)."""
    out: list[int] = []
    for a, (i, j) in zip(alpha, pairs(n)):
        if a:
            out.extend(power(commutator((i + 1,), (j + 1,)), a))
    return reduce_word(out)


@dataclass(frozen=True, eq=False)
class TauBar:
    lcs: LcsData
    t3: tuple[tuple[int, ...], ...]  # T^3 representative per H2 basis element
    matrix: IntMatrix  # P3 coordinates, one column per H2 basis element

    def pairing(self, q: Sequence[int], m: int) -> int:
        """<q, tau-bar(w_m)> for q in (H^1)^(x)3 annihilating K3."""
        return sum(a * b for a, b in zip(q, self.t3[m]))


def tau_bar_direct(lcs: LcsData) -> list[list[int]]:
    """Degree-3 representative of tau(w) - 1 in D^(4), after subtracting the
    relator combination that cancels its degree-2 part."""
    P, n = lcs.P, lcs.n
    out = []
    for alpha, coeffs in zip(lcs.delta.alpha, lcs.delta.relator_coeffs):
        tw = tau_word(alpha, n)
        v = magnus_expand(tw, n, 4).component(3)
        deg2 = magnus_expand(tw, n, 3).component(2)
        target = [0] * (n * n)
        for c, r in zip(coeffs, P.relators):
            if c:
                r2, r3 = rho(r, n, 2), rho(r, n, 3)
                target = [x + c * y for x, y in zip(target, r2)]
                v = [x - c * y for x, y in zip(v, r3)]
        if deg2 != target:
            raise InconsistencyError("degree-2 part of tau(w) differs from Delta-bar(w)")
        out.append(v)
    return out


def tau_bar_1(lcs: LcsData) -> list[list[int]]:
    """-sum alpha_ij (h_i h_j - h_j h_i)(h_i + h_j)."""
    n = lcs.n
    e = [[int(a == b) for a in range(n)] for b in range(n)]
    out = []
    for alpha in lcs.delta.alpha:
        v = [0] * n ** 3
        for a, (i, j) in zip(alpha, pairs(n)):
            if a:
                br = bracket(n, e[i], e[j])
                s = [x + y for x, y in zip(e[i], e[j])]
                v = [x - a * y for x, y in zip(v, tensor(br, s))]
        out.append(v)
    return out


def tau_bar(P: GroupPresentation, lcs: LcsData | None = None, check: bool = True) -> TauBar:
    """tau-bar : H2 -> P3, computed from the truncated Magnus expansion."""
    if lcs is None:
        lcs = build_p2_p3(P)
    D = d_k(P, 4) if check else None
    cols = []
    reps = tau_bar_direct(lcs)
    for alpha, v in zip(lcs.delta.alpha, reps):
        if check and not gamma_member(P, tau_word(alpha, P.n), 3, D):
            raise InconsistencyError("tau(w) is not in gamma_3")
        cols.append(list(lcs.p3_coords(v)))
    m = IntMatrix.from_columns(cols, lcs.p3.ngens) if cols else IntMatrix.zeros(lcs.p3.ngens, 0)
    return TauBar(lcs, tuple(tuple(v) for v in reps), m)


__all__ = [
    "TruncatedSeries", "DkAlgebra", "DeltaBarH2", "LcsData", "TauBar", "HypothesisError",
    "magnus_expand", "d_k", "ideal_span", "gamma_member", "delta_bar_h2", "build_p2_p3", "tau_bar",
    "tau_bar_direct", "tau_bar_1", "tau_word", "witt_count", "rho", "bracket_vector", "pair_coords",
    "lie3_embedding", "jmath_l2h1", "ComplexData", "complex_data", "tau_bar_2", "tau_bar_split_check",
]


# ---------------------------------------------------------------------------
# the split tau-bar = tau-bar_1 + tau-bar_2 through the presentation complex


@dataclass(frozen=True, eq=False)
class ComplexData:
    """Presentation complex of P with the maps pr : C_1 -> H_1 and
    imath : C_1 -> H_1 (x) H_1 / Delta-bar(H2) (representatives in T^2)."""

    X: "SimplicialSet"
    pr: tuple[tuple[int, ...], ...]
    imath: tuple[tuple[int, ...], ...]
    h2_cycles: tuple[tuple[int, ...], ...]  # 2-cycles c_m with Delta-bar(c_m) = w_m


def _triangle_faces(X, name):
    from .simplicial import nondeg

    s = nondeg(name, 2)
    return [X.chain_index(X.face(s, j)) for j in range(3)]


def delta_bar_of_chain(X, pr: Sequence[Sequence[int]], c: Sequence[int], n: int) -> list[int]:
    """(pr (x) pr) of the (1,1) part of the diagonal of a 2-chain."""
    out = [0] * (n * n)
    for coef, name in zip(c, X.triangles):
        if coef:
            f0, _, f2 = _triangle_faces(X, name)
            if f0 is not None and f2 is not None:
                out = [x + coef * y for x, y in zip(out, tensor(pr[f2], pr[f0]))]
    return out


def complex_data(lcs: LcsData) -> ComplexData:
    from .simplicial import cohomology, generator_edges, presentation_complex

    P, n = lcs.P, lcs.n
    X = presentation_complex(P)
    H = cohomology(X, generator_edges(P))
    nE = len(X.edges)
    pr = tuple(tuple(H.kappa[j][e] for j in range(n)) for e in range(nE))
    zero = (0,) * (n * n)
    im: list[tuple[int, ...] | None] = [None] * nE
    for i in range(n):
        im[X.index(1)[f"g{i + 1}"]] = zero
    faces = {t: _triangle_faces(X, t) for t in X.triangles}
    # imath(d2) + imath(d0) - imath(d1) = pr(d2) (x) pr(d0)
    changed = True
    while changed:
        changed = False
        for t, (f0, f1, f2) in faces.items():
            unknown = [f for f in (f0, f1, f2) if f is not None and im[f] is None]
            if len(unknown) != 1:
                continue
            u = unknown[0]
            rhs = tensor(pr[f2], pr[f0]) if f0 is not None and f2 is not None else list(zero)
            val = [0] * (n * n)
            for f, sign in ((f2, 1), (f0, 1), (f1, -1)):
                if f is not None and f != u:
                    val = [x + sign * y for x, y in zip(val, im[f])]
            sign_u = -1 if u == f1 else 1
            diff = [r - v for r, v in zip(rhs, val)]
            if u == f2 and u == f0:
                raise InconsistencyError("cannot solve for imath on a repeated edge")
            im[u] = tuple(sign_u * d for d in diff)
            changed = True
    if any(v is None for v in im):
        raise InconsistencyError("imath is not determined by propagation")
    for t, (f0, f1, f2) in faces.items():
        lhs = [0] * (n * n)
        for f, sign in ((f2, 1), (f0, 1), (f1, -1)):
            if f is not None:
                lhs = [x + sign * y for x, y in zip(lhs, im[f])]
        rhs = tensor(pr[f2], pr[f0]) if f0 is not None and f2 is not None else list(zero)
        if not lcs.b2.is_zero([a - b for a, b in zip(lhs, rhs)]):
            raise InconsistencyError(f"imath fails the diagonal relation on {t}")
    C = X.chains
    Z2 = kernel_lattice(C.d2)
    zb = Z2.basis
    images = [delta_bar_of_chain(X, pr, z, n) for z in zb]
    L = Lattice.from_columns(images, n * n)
    cycles = []
    for w in lcs.delta.basis_t2():
        coeffs = solve_in_lattice(L, w)
        if coeffs is None:
            raise InconsistencyError("H2 basis element is not realized by a 2-cycle")
        cycles.append(tuple(sum(a * z[i] for a, z in zip(coeffs, zb)) for i in range(len(X.triangles))))
    return ComplexData(X, pr, tuple(im), tuple(cycles))


def tau_bar_2(lcs: LcsData, cd: ComplexData) -> list[list[int]]:
    """(imath (x) pr + pr (x) imath) applied to the diagonal of a representing cycle."""
    n = lcs.n
    out = []
    for c in cd.h2_cycles:
        v = [0] * n ** 3
        for coef, name in zip(c, cd.X.triangles):
            if coef:
                f0, _, f2 = _triangle_faces(cd.X, name)
                if f0 is None or f2 is None:
                    continue
                a = tensor(cd.imath[f2], cd.pr[f0])
                b = tensor(cd.pr[f2], cd.imath[f0])
                v = [x + coef * (y + z) for x, y, z in zip(v, a, b)]
        out.append(v)
    return out


def tau_bar_split_check(lcs: LcsData, tb: TauBar, cd: ComplexData | None = None) -> bool:
    """tau-bar_1 + tau-bar_2 agrees with the direct expansion in B3."""
    if cd is None:
        cd = complex_data(lcs)
    t1 = tau_bar_1(lcs)
    t2 = tau_bar_2(lcs, cd)
    for a, b, d in zip(t1, t2, tb.t3):
        if not lcs.b3_is_zero([x + y - z for x, y, z in zip(a, b, d)]):
            return False
    return True
