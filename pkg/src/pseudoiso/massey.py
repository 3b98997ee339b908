"""Cup-product kernels, the cochain map lambda and the invariant class [lambda].

Coordinates: H^1 has basis xi_0..xi_{n-1}; (H^1)^(x)2 and (H^1)^(x)3 use the
lexicographic word bases of tensorspace; Lambda^2 uses pairs i < j; and
H^1 (x) Lambda^2 is indexed ``a * C(n,2) + pair``.  H^2 is an
AbelianPresentation and its elements are coordinate tuples.

A homomorphism Qbar^3 -> H^2 is stored as a flat vector, column-major over
the canonical Qbar^3 basis: entry ``col * ngens(H^2) + row``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Sequence

from .grouprings import (
    ComplexData,
    LcsData,
    TauBar,
    bracket_vector,
    build_p2_p3,
    complex_data,
    tau_bar,
    tau_bar_2,
)
from .simplicial import Cohomology, SimplicialSet, cohomology, coboundary, cup, cup1, generator_edges, presentation_complex
from .tensorspace import (
    InconsistencyError,
    PreconditionError,
    chi2,
    eta2,
    h1_l2_index,
    p_map,
    pairs,
    symmetric2_basis,
    wedge_l,
)
from .words import GroupPresentation
from .zlinalg import (
    AbelianPresentation,
    InputError,
    IntMatrix,
    Lattice,
    conditions_lattice,
    lattice_equal,
    nonmembership_certificate,
    solve_in_lattice,
)


def zeta(omega: Sequence[int]) -> list[int]:
    """zeta(w)(a) = (w(a) - w(a)^2) / 2."""
    return [(v - v * v) // 2 for v in omega]


def cubic_primitive(h: Sequence[int]) -> list[int]:
    """f(a) = h(a)(h(a)-1)(h(a)-2)/6, a primitive of lambda(h (x) h (x) h)."""
    return [v * (v - 1) * (v - 2) // 6 for v in h]


def cube_primitive(ctx: "MasseyContext", h: Sequence[int]) -> list[int]:
    """A 1-cochain y with dy = lambda(h (x) h (x) h), for any h in H^1.

    nu is linear, so nu(h (x) h) = zeta(kappa h) + c with the 1-cocycle
    c = sum_i C(h_i, 2) kappa_i; the symmetric cup c.kh + kh.c is then
    absorbed by mu_1.  For h with 0/1 coordinates c = 0 and y is the plain
    cubic_primitive.
    """
    ht = ctx.kappa_of(h)
    c = ctx.kappa_of([x * (x - 1) // 2 for x in h])
    return _vadd(cubic_primitive(ht), cup1(ctx.X, c, 1, ht, 1), -1)


def _vadd(u, v, c=1):
    return [a + c * b for a, b in zip(u, v)]


# ---------------------------------------------------------------------------
# context


@dataclass(frozen=True, eq=False)
class MasseyContext:
    route: str  # "simplicial" or "group"
    n: int
    h2: AbelianPresentation
    mu_bar: tuple[tuple[int, ...], ...]  # H^2 coordinates of xi_i cup xi_j, index i*n+j
    cohom: Cohomology | None = None
    lcs: LcsData | None = None
    tau: TauBar | None = None
    cdata: ComplexData | None = None
    nu_chi: tuple[tuple[int, ...], ...] = ()  # nu on chi2 of the Rbar^2 basis (simplicial)
    lambda_bar_bar_override: tuple[int, ...] | None = None  # perturbation fixtures only

    # -- products on classes --------------------------------------------

    def mu_bar_apply(self, v2: Sequence[int]) -> list[int]:
        out = [0] * self.h2.ngens
        for c, col in zip(v2, self.mu_bar):
            if c:
                out = _vadd(out, col, c)
        return self.reduce_h2(out)

    def reduce_h2(self, coords: Sequence[int]) -> list[int]:
        f = self.h2.free_rank
        return list(coords[:f]) + [x % t for x, t in zip(coords[f:], self.h2.torsion)]

    def h2_is_zero(self, coords: Sequence[int]) -> bool:
        return self.h2.is_zero_coords(coords)

    def _conditions(self, cols: Sequence[Sequence[int]], nvars: int) -> tuple[list, list]:
        """Rows expressing 'sum_x x * cols[x] = 0 in H^2'."""
        f = self.h2.free_rank
        exact = [[cols[x][r] for x in range(nvars)] for r in range(f)]
        modular = [([cols[x][f + i] for x in range(nvars)], t) for i, t in enumerate(self.h2.torsion)]
        return exact, modular

    # -- kernels ---------------------------------------------------------

    @cached_property
    def r2(self) -> Lattice:
        ex, mo = self._conditions(self.mu_bar, self.n ** 2)
        return conditions_lattice(self.n ** 2, ex, mo)

    @cached_property
    def mu_bar_bar(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        return tuple(self.mu_bar[i * n + j] for (i, j) in pairs(n))

    @cached_property
    def rbar2(self) -> Lattice:
        m = len(pairs(self.n))
        ex, mo = self._conditions(self.mu_bar_bar, m)
        return conditions_lattice(m, ex, mo)

    @cached_property
    def q3(self) -> Lattice:
        n = self.n
        N = n ** 3
        exact, modular = [], []
        for a in range(n):
            for slot in ("last", "first"):
                cols = []
                for x in range(N):
                    i, j, k = x // (n * n), (x // n) % n, x % n
                    if slot == "last":
                        cols.append(self.mu_bar[i * n + j] if k == a else (0,) * self.h2.ngens)
                    else:
                        cols.append(self.mu_bar[j * n + k] if i == a else (0,) * self.h2.ngens)
                ex, mo = self._conditions(cols, N)
                exact += ex
                modular += mo
        return conditions_lattice(N, exact, modular)

    @cached_property
    def qbar3(self) -> Lattice:
        n = self.n
        m = len(pairs(n))
        N = n * m
        L = wedge_l(n)
        exact = [L.row(r) for r in range(L.rows)]
        modular = []
        for a in range(n):
            cols = [self.mu_bar_bar[x % m] if x // m == a else (0,) * self.h2.ngens for x in range(N)]
            ex, mo = self._conditions(cols, N)
            exact += ex
            modular += mo
        return conditions_lattice(N, exact, modular)

    @cached_property
    def qbar3_basis(self) -> list[list[int]]:
        return self.qbar3.basis

    @cached_property
    def rbar2_lattice_basis(self) -> Lattice:
        return self.rbar2.basis_lattice()

    def rbar2_coords(self, v: Sequence[int]) -> list[int]:
        c = solve_in_lattice(self.rbar2_lattice_basis, v)
        if c is None:
            raise PreconditionError("element is not in Rbar^2")
        return c

    # -- nu and lambda (simplicial route) -------------------------------

    @property
    def X(self) -> SimplicialSet:
        if self.cohom is None:
            raise InputError("cochain-level data needs the simplicial route")
        return self.cohom.X

    def kappa(self, i: int) -> list[int]:
        return list(self.cohom.kappa[i])

    def kappa_of(self, h: Sequence[int]) -> list[int]:
        out = [0] * len(self.X.edges)
        for i, c in enumerate(h):
            if c:
                out = _vadd(out, self.cohom.kappa[i], c)
        return out

    def mu_kk(self, r: Sequence[int]) -> list[int]:
        """mu (kappa (x) kappa)(r) as a 2-cochain."""
        n = self.n
        out = [0] * len(self.X.triangles)
        for x, c in enumerate(r):
            if c:
                out = _vadd(out, cup(self.X, self.kappa(x // n), 1, self.kappa(x % n), 1), c)
        return out

    def nu(self, r: Sequence[int]) -> list[int]:
        """nu(r) for r in R^2, normalized by zeta on S^2 and fixed on chi2(Rbar^2)."""
        n = self.n
        r = list(r)
        e = eta2(n) @ r
        b = self.rbar2_coords(e)
        chi_part = [0] * (n * n)
        out = [0] * len(self.X.edges)
        for coef, col, val in zip(b, self.rbar2.basis, self.nu_chi):
            if coef:
                chi_part = _vadd(chi_part, chi2(n) @ list(col), coef)
                out = _vadd(out, val, coef)
        s = [x - y for x, y in zip(r, chi_part)]  # symmetric remainder
        for i in range(n):
            c = s[i * n + i]
            if c:
                out = _vadd(out, zeta(self.kappa(i)), c)
        for (i, j) in pairs(n):
            c = s[i * n + j]
            if s[j * n + i] != c:
                raise InconsistencyError("remainder after removing chi2 part is not symmetric")
            if c:
                prod = [-(x * y) for x, y in zip(self.kappa(i), self.kappa(j))]
                out = _vadd(out, prod, c)
        return out

    def lam(self, q: Sequence[int]) -> list[int]:
        """lambda(q) = mu (nu (x) kappa + kappa (x) nu)(q), a 2-cochain."""
        n = self.n
        q = list(q)
        X = self.X
        out = [0] * len(X.triangles)
        for a in range(n):
            last = [q[x * n + a] for x in range(n * n)]
            first = [q[a * n * n + x] for x in range(n * n)]
            if any(last):
                out = _vadd(out, cup(X, self.nu(last), 1, self.kappa(a), 1))
            if any(first):
                out = _vadd(out, cup(X, self.kappa(a), 1, self.nu(first), 1))
        return out

    def lambda_bar(self, q: Sequence[int]) -> list[int]:
        """Class of lambda(q) in H^2."""
        if self.route == "simplicial":
            c = self.lam(q)
            if any(coboundary(self.X, c, 2)):
                raise InconsistencyError("lambda(q) is not a cocycle")
            return list(self.cohom.h2_class(c))
        # group route: lambda-bar is conjugate to tau-bar_2
        t2 = self._tau2
        return [sum(a * b for a, b in zip(q, t2[m])) for m in range(self.h2.ngens)]

    @cached_property
    def _tau2(self) -> list[list[int]]:
        return tau_bar_2(self.lcs, self.cdata)

    @cached_property
    def lambda_bar_bar(self) -> tuple[int, ...]:
        """lambda-bar o p on the canonical Qbar^3 basis (flattened)."""
        if self.lambda_bar_bar_override is not None:
            return self.lambda_bar_bar_override
        out: list[int] = []
        for t in self.qbar3_basis:
            pt = p_map(self.n, t)
            if self.route == "simplicial":
                out += self.lambda_bar(pt)
            else:
                out += [self.tau.pairing(pt, m) for m in range(self.h2.ngens)]
        return tuple(out)

    # -- ambiguity --------------------------------------------------------

    def delta_bar_bar(self, b: int, a: int) -> list[int]:
        """delta-bar-bar of f = (Rbar^2 basis b -> xi_a), flattened."""
        n = self.n
        out: list[int] = []
        for t in self.qbar3_basis:
            q = p_map(n, t)
            v2 = [0] * (n * n)
            for c in range(n):
                first = [q[c * n * n + x] for x in range(n * n)]
                last = [q[x * n + c] for x in range(n * n)]
                cf = self.rbar2_coords(eta2(n) @ first)[b] if any(first) else 0
                cl = self.rbar2_coords(eta2(n) @ last)[b] if any(last) else 0
                v2[c * n + a] += cf  # xi_c (x) g(q_{c..})
                v2[a * n + c] += cl  # g(q_{..c}) (x) xi_c
            out += self.mu_bar_apply(v2)
        return out

    @cached_property
    def ambiguity(self) -> Lattice:
        nq = len(self.qbar3_basis)
        g = self.h2.ngens
        N = nq * g
        cols = []
        for b in range(self.rbar2.rank):
            for a in range(self.n):
                cols.append(self.delta_bar_bar(b, a))
        f = self.h2.free_rank
        for col in range(nq):
            for i, t in enumerate(self.h2.torsion):
                v = [0] * N
                v[col * g + f + i] = t
                cols.append(v)
        return Lattice.from_columns(cols, N) if cols else Lattice.zero(N)


# ---------------------------------------------------------------------------
# construction


def build_simplicial_context(X: SimplicialSet, h1_edges: Sequence[str] | None = None,
                             nu_shift: Sequence[Sequence[int]] | None = None) -> MasseyContext:
    """Context over X; ``nu_shift`` adds a 1-cocycle to nu on each chi2(Rbar^2) basis element."""
    H = cohomology(X, h1_edges)
    n = H.h1_rank
    mu = []
    for i in range(n):
        for j in range(n):
            mu.append(tuple(H.h2_class(cup(X, list(H.kappa[i]), 1, list(H.kappa[j]), 1))))
    ctx = MasseyContext("simplicial", n, H.h2, tuple(mu), cohom=H)
    vals = []
    for idx, b in enumerate(ctx.rbar2.basis):
        target = ctx.mu_kk(chi2(n) @ list(b))
        y = H.primitive(target)
        if y is None:
            raise InconsistencyError("mu(kappa (x) kappa)(r) is not a coboundary for r in R^2")
        if nu_shift is not None:
            s = list(nu_shift[idx])
            if any(coboundary(X, s, 1)):
                raise InputError("nu shift must be a 1-cocycle")
            y = _vadd(y, s)
        vals.append(tuple(y))
    return replace(ctx, nu_chi=tuple(vals))


def build_group_context(P: GroupPresentation, lcs: LcsData | None = None,
                        require_injective: bool = True) -> MasseyContext:
    if lcs is None:
        lcs = build_p2_p3(P, require_injective=require_injective)
    n = P.n
    m = lcs.delta.rank
    from .zlinalg import cokernel_presentation

    h2 = cokernel_presentation(m, Lattice.zero(m))
    w = lcs.delta.basis_t2()
    mu = tuple(tuple(w[k][x] for k in range(m)) for x in range(n * n))
    tb = tau_bar(P, lcs)
    cd = complex_data(lcs)
    return MasseyContext("group", n, h2, mu, lcs=lcs, tau=tb, cdata=cd)


def build_context(source, **kw) -> MasseyContext:
    if isinstance(source, SimplicialSet):
        return build_simplicial_context(source, **kw)
    if isinstance(source, GroupPresentation):
        return build_group_context(source, **kw)
    raise InputError(f"cannot build a context from {type(source).__name__}")


def presentation_context(P: GroupPresentation) -> MasseyContext:
    """Simplicial-route context over the presentation complex, with H^1 dual to the generators."""
    return build_simplicial_context(presentation_complex(P), generator_edges(P))


def imath_nu(ctx: MasseyContext, cd: ComplexData, r: Sequence[int]) -> list[int]:
    """The conjugate of imath: nu(r)(e) = <r, imath(e)>, a 1-cochain on the presentation complex."""
    return [sum(a * b for a, b in zip(r, im)) for im in cd.imath]


# ---------------------------------------------------------------------------
# lambda family, Massey products, the invariant class


@dataclass(frozen=True)
class LambdaFamily:
    q3_basis: list
    lambda_bar: list  # H^2 coordinates per Q^3 basis vector
    qbar3_basis: list
    lambda_bar_bar: IntMatrix  # rows H^2 coords, cols Qbar^3 basis


def lambda_family(ctx: MasseyContext) -> LambdaFamily:
    qb = ctx.q3.basis
    lb = [ctx.lambda_bar(q) for q in qb]
    g = ctx.h2.ngens
    flat = ctx.lambda_bar_bar
    cols = [list(flat[c * g:(c + 1) * g]) for c in range(len(ctx.qbar3_basis))]
    M = IntMatrix.from_columns(cols, g) if cols else IntMatrix.zeros(g, 0)
    return LambdaFamily(qb, lb, ctx.qbar3_basis, M)


@dataclass(frozen=True)
class MasseyProduct:
    representative: tuple[int, ...]
    indeterminacy: Lattice

    def contains(self, coords: Sequence[int]) -> bool:
        return self.indeterminacy.contains([a - b for a, b in zip(coords, self.representative)])


def triple_massey(ctx: MasseyContext, t1: Sequence[int], t2: Sequence[int], t3: Sequence[int]) -> MasseyProduct:
    n = ctx.n
    for name, (a, b) in (("theta1 cup theta2", (t1, t2)), ("theta2 cup theta3", (t2, t3))):
        v = ctx.mu_bar_apply([x * y for x in a for y in b])
        if not ctx.h2_is_zero(v):
            raise PreconditionError(f"{name} = {v} is nonzero in H^2")
    q = [x * y * z for x in t1 for y in t2 for z in t3]
    rep = ctx.lambda_bar(q)
    cols = []
    for a in range(n):
        e = [int(i == a) for i in range(n)]
        cols.append(ctx.mu_bar_apply([x * y for x in e for y in t3]))
        cols.append(ctx.mu_bar_apply([x * y for x in t1 for y in e]))
    f = ctx.h2.free_rank
    for i, t in enumerate(ctx.h2.torsion):
        v = [0] * ctx.h2.ngens
        v[f + i] = t
        cols.append(v)
    g = ctx.h2.ngens
    L = Lattice.from_columns(cols, g) if cols else Lattice.zero(g)
    return MasseyProduct(tuple(ctx.reduce_h2(rep)), L)


@dataclass(frozen=True)
class InvariantClass:
    representative: tuple[int, ...]  # flat, column-major over the Qbar^3 basis
    ambiguity: Lattice
    h2_ngens: int
    qbar3_basis: tuple[tuple[int, ...], ...]

    def matrix(self) -> list[list[int]]:
        g = self.h2_ngens
        nq = len(self.qbar3_basis)
        return [[self.representative[c * g + r] for c in range(nq)] for r in range(g)]

    def difference_coefficients(self, other: "InvariantClass") -> list[int] | None:
        """Ambiguity coefficients expressing other - self, or None."""
        if self.ambiguity.ambient_rank != other.ambiguity.ambient_rank:
            return None
        d = [b - a for a, b in zip(self.representative, other.representative)]
        return solve_in_lattice(self.ambiguity, d)

    def __eq__(self, other) -> bool:
        if not isinstance(other, InvariantClass):
            return NotImplemented
        if (self.h2_ngens, self.qbar3_basis) != (other.h2_ngens, other.qbar3_basis):
            return False
        if not lattice_equal(self.ambiguity, other.ambiguity):
            return False
        return self.difference_coefficients(other) is not None

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix(),
            "ambiguity": [list(b) for b in self.ambiguity.basis],
            "qbar3_basis": [list(t) for t in self.qbar3_basis],
        }


def invariant_class(ctx: MasseyContext) -> InvariantClass:
    return InvariantClass(tuple(ctx.lambda_bar_bar), ctx.ambiguity, ctx.h2.ngens,
                          tuple(tuple(t) for t in ctx.qbar3_basis))


# ---------------------------------------------------------------------------
# route agreement


@dataclass(frozen=True)
class RouteComparison:
    agree: bool
    h2_map: list[list[int]]  # simplicial H^2 coords -> group H^2 coords
    detail: str = ""


def h2_identification(simp: MasseyContext, group: MasseyContext) -> list[list[int]]:
    """Evaluate simplicial H^2 generators on the 2-cycles realizing the H_2 basis."""
    cd = group.cdata
    if len(simp.X.triangles) != len(cd.X.triangles):
        raise InputError("simplicial context is not over the presentation complex")
    gens = simp.cohom.h2_generator_cocycles()
    return [[sum(a * b for a, b in zip(z, c)) for z in gens] for c in cd.h2_cycles]


def compare_routes(simp: MasseyContext, group: MasseyContext) -> RouteComparison:
    if simp.n != group.n:
        return RouteComparison(False, [], "H^1 ranks differ")
    E = h2_identification(simp, group)
    g_s, g_g = simp.h2.ngens, group.h2.ngens
    if simp.h2.torsion or g_s != g_g:
        return RouteComparison(False, E, "H^2 groups differ")
    # E must be unimodular
    from .zlinalg import smith_normal_form

    if g_s and [abs(x) for x in smith_normal_form(IntMatrix.from_rows(E, g_s)).diagonal] != [1] * g_s:
        return RouteComparison(False, E, "H^2 identification is not an isomorphism")
    for x in range(simp.n ** 2):
        if [sum(E[m][j] * simp.mu_bar[x][j] for j in range(g_s)) for m in range(g_g)] != list(group.mu_bar[x]):
            return RouteComparison(False, E, "cup products disagree")
    if not lattice_equal(simp.qbar3, group.qbar3):
        return RouteComparison(False, E, "Qbar^3 lattices differ")

    def transport(flat):
        out = []
        nq = len(flat) // g_s if g_s else 0
        for c in range(nq):
            col = flat[c * g_s:(c + 1) * g_s]
            out += [sum(E[m][j] * col[j] for j in range(g_s)) for m in range(g_g)]
        return out

    Ics, Icg = invariant_class(simp), invariant_class(group)
    amb_t = [transport(c) for c in Ics.ambiguity.generators.columns()]
    N = Icg.ambiguity.ambient_rank
    moved = InvariantClass(tuple(transport(Ics.representative)),
                           Lattice.from_columns(amb_t, N) if amb_t else Lattice.zero(N),
                           g_g, Ics.qbar3_basis)
    if not lattice_equal(moved.ambiguity, Icg.ambiguity):
        return RouteComparison(False, E, "ambiguity lattices differ")
    if moved != Icg:
        return RouteComparison(False, E, "representatives differ modulo the ambiguity")
    return RouteComparison(True, E)


# ---------------------------------------------------------------------------
# comparing two groups


@dataclass(frozen=True)
class GroupComparison:
    gamma3: bool
    gamma4: bool | str
    certificates: dict

    def to_json(self) -> dict:
        return {"gamma3": self.gamma3, "gamma4": self.gamma4, "certificates": self.certificates}


def _is_unimodular(f: Sequence[Sequence[int]], n: int) -> bool:
    from .zlinalg import smith_normal_form

    if len(f) != n or any(len(r) != n for r in f):
        return False
    d = smith_normal_form(IntMatrix.from_rows(f, n)).diagonal
    return len(d) == n and all(abs(x) == 1 for x in d)


def lambda2(phi: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Matrix of Lambda^2 phi in the pair basis."""
    P = pairs(n)
    idx = {p: i for i, p in enumerate(P)}
    M = [[0] * len(P) for _ in P]
    for c, (i, j) in enumerate(P):
        for a in range(n):
            for b in range(n):
                x = phi[a][i] * phi[b][j]
                if x and a != b:
                    if a < b:
                        M[idx[(a, b)]][c] += x
                    else:
                        M[idx[(b, a)]][c] -= x
    return M


def _matvec(M, v):
    return [sum(a * b for a, b in zip(row, v)) for row in M]


def h1_l2_map(phi: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """phi (x) Lambda^2 phi on H^1 (x) Lambda^2."""
    L2 = lambda2(phi, n)
    m = len(pairs(n))
    N = n * m
    M = [[0] * N for _ in range(N)]
    for a in range(n):
        for p in range(m):
            col = a * m + p
            for a2 in range(n):
                if phi[a2][a]:
                    for p2 in range(m):
                        if L2[p2][p]:
                            M[a2 * m + p2][col] += phi[a2][a] * L2[p2][p]
    return M


def compare_contexts(ca: MasseyContext, cb: MasseyContext, f: Sequence[Sequence[int]]) -> GroupComparison:
    """Does f : H_1(a) -> H_1(b) extend to G_a/gamma_3 -> G_b/gamma_3 (and gamma_4)?"""
    n = ca.n
    if cb.n != n:
        raise InputError("H_1 ranks differ")
    if not _is_unimodular(f, n):
        raise InputError("map is not unimodular")
    phi = [[f[j][i] for j in range(n)] for i in range(n)]  # H^1(b) -> H^1(a), phi = f^T
    L2 = lambda2(phi, n)
    m = len(pairs(n))
    img = [_matvec(L2, b) for b in cb.rbar2.basis]
    img_l = Lattice.from_columns(img, m) if img else Lattice.zero(m)
    g3 = lattice_equal(img_l, ca.rbar2)
    certs: dict = {"rbar2_a": [list(b) for b in ca.rbar2.basis],
                   "rbar2_b_transported": [list(b) for b in img_l.basis]}
    if not g3:
        return GroupComparison(False, "not-applicable", certs)
    if ca.route != "group" or cb.route != "group":
        raise InputError("gamma_4 comparison needs group-route contexts")
    if not (ca.lcs.p3_free and cb.lcs.p3_free):
        certs["reason"] = "P3 is not free"
        return GroupComparison(True, "not-applicable", certs)
    # (f (x) f) carries Delta-bar H2(a) onto Delta-bar H2(b): induced H_2 map
    wa = ca.lcs.delta.basis_t2()
    wb = cb.lcs.delta.basis_t2()
    ff = [[f[i // n][j // n] * f[i % n][j % n] for j in range(n * n)] for i in range(n * n)]
    moved = [_matvec(ff, w) for w in wa]
    Lb = Lattice.from_columns(wb, n * n) if wb else Lattice.zero(n * n)
    Lm = Lattice.from_columns(moved, n * n) if moved else Lattice.zero(n * n)
    if not lattice_equal(Lb, Lm):
        certs["reason"] = "(f x f) does not carry Delta-bar(H2) of a onto that of b"
        certs["moved_basis"] = [list(b) for b in Lm.basis]
        certs["target_basis"] = [list(b) for b in Lb.basis]
        return GroupComparison(True, False, certs)
    F = [solve_in_lattice(Lb, w) for w in moved]  # F[ma] = coords in b basis
    ga, gb = ca.h2.ngens, cb.h2.ngens
    # F* : H^2(b) -> H^2(a), (F* y)_ma = sum_mb F[ma][mb] y_mb
    M = h1_l2_map(phi, n)
    qa = Lattice.from_columns(ca.qbar3_basis, n * m).basis_lattice() if ca.qbar3_basis else Lattice.zero(n * m)
    Ia, Ib = invariant_class(ca), invariant_class(cb)
    nqa, nqb = len(ca.qbar3_basis), len(cb.qbar3_basis)
    if nqa != nqb:
        certs["reason"] = "Qbar^3 ranks differ"
        return GroupComparison(True, False, certs)
    # coordinates of phi(t_b) in the Qbar^3(a) basis
    coords = []
    for t in cb.qbar3_basis:
        c = solve_in_lattice(qa, _matvec(M, t))
        if c is None:
            raise InconsistencyError("phi does not carry Qbar^3(b) into Qbar^3(a)")
        coords.append(c)

    def pull_a(flat):
        """A hom Qbar^3(a) -> H^2(a), precomposed with phi: Qbar^3(b) -> Qbar^3(a)."""
        out = []
        for c in coords:
            col = [0] * ga
            for k, x in enumerate(c):
                if x:
                    col = _vadd(col, flat[k * ga:(k + 1) * ga], x)
            out += col
        return out

    lhs = pull_a(Ia.representative)
    rhs = []
    for cidx in range(nqb):
        y = Ib.representative[cidx * gb:(cidx + 1) * gb]
        rhs += [sum(F[ma][mb] * y[mb] for mb in range(gb)) for ma in range(ga)]
    amb = [pull_a(c) for c in Ia.ambiguity.generators.columns()]
    N = nqb * ga
    L = Lattice.from_columns(amb, N) if amb else Lattice.zero(N)
    diff = [a - b for a, b in zip(lhs, rhs)]
    sol = solve_in_lattice(L, diff)
    certs["h2_map"] = F
    certs["difference"] = diff
    if sol is not None:
        certs["ambiguity_coefficients"] = sol
        return GroupComparison(True, True, certs)
    u, d = nonmembership_certificate(L, diff)
    certs["dual_functional"] = {"functional": u, "modulus": d}
    return GroupComparison(True, False, certs)


def compare_groups(Pa: GroupPresentation, Pb: GroupPresentation, f: Sequence[Sequence[int]]) -> GroupComparison:
    if not _is_unimodular(f, Pa.n):
        raise InputError("map is not unimodular")
    return compare_contexts(build_group_context(Pa), build_group_context(Pb), f)


def perturbed_context(ctx: MasseyContext) -> tuple[MasseyContext, list[int]] | None:
    """Shift lambda-bar-bar by a vector outside the ambiguity (test fixture).

    The shift is realized as tau-bar(w_0) + [[h_i,h_j],h_a] for the first
    bracket that changes the class; returns None if no bracket does.
    """
    from .grouprings import lie3_embedding

    if ctx.route != "group" or not ctx.h2.ngens:
        return None
    base = list(ctx.lambda_bar_bar)
    g = ctx.h2.ngens
    for col in lie3_embedding(ctx.n):
        shift = []
        for t in ctx.qbar3_basis:
            pt = p_map(ctx.n, t)
            shift += [sum(a * b for a, b in zip(pt, col))] + [0] * (g - 1)
        new = [a + b for a, b in zip(base, shift)]
        if any(shift) and solve_in_lattice(ctx.ambiguity, shift) is None:
            return replace(ctx, lambda_bar_bar_override=tuple(new)), col
    return None


__all__ = [
    "zeta", "cubic_primitive", "cube_primitive", "MasseyContext", "InvariantClass", "MasseyProduct", "LambdaFamily",
    "GroupComparison", "RouteComparison", "build_context", "build_simplicial_context",
    "build_group_context", "presentation_context", "lambda_family", "triple_massey",
    "invariant_class", "compare_routes", "compare_contexts", "compare_groups", "perturbed_context",
    "imath_nu", "h2_identification", "lambda2", "h1_l2_map",
]
