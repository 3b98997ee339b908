"""Single-vertex simplicial sets through dimension 3.

A simplex is a pair ``(base, surj)``: a nondegenerate simplex ``base`` and a
monotone surjection ``surj: [d] -> [dim base]`` recording the degeneracy
applied to it (``surj`` is the identity tuple for nondegenerate simplices).
The vertex is ``("x", (0,) * (d + 1))`` in every dimension ``d``.

Chains are normalized: degenerate simplices are zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from .words import GroupPresentation, inverse
from .zlinalg import (
    AbelianPresentation,
    InputError,
    IntMatrix,
    Lattice,
    cokernel_presentation,
    homomorphism_check,
    kernel_lattice,
    lattice_equal,
    solve_in_lattice,
)

VERTEX = "x"
Simplex = tuple[str, tuple[int, ...]]


class ValidationError(InputError):
    """Face data violates the simplicial identities or references missing simplices."""


def vertex(d: int = 0) -> Simplex:
    return (VERTEX, (0,) * (d + 1))


def nondeg(name: str, d: int) -> Simplex:
    return (name, tuple(range(d + 1)))


_DEGEN = re.compile(r"^s([0-9])\((.+)\)$")


@dataclass(frozen=True, eq=False)
class SimplicialSet:
    edges: tuple[str, ...]
    triangles: tuple[str, ...]
    tetrahedra: tuple[str, ...]
    faces: Mapping[str, tuple[Simplex, ...]]

    @cached_property
    def dims(self) -> dict[str, int]:
        d = {VERTEX: 0}
        d.update({e: 1 for e in self.edges})
        d.update({t: 2 for t in self.triangles})
        d.update({t: 3 for t in self.tetrahedra})
        return d

    def basis(self, d: int) -> tuple[str, ...]:
        return ((VERTEX,), self.edges, self.triangles, self.tetrahedra)[d]

    @cached_property
    def _index(self) -> list[dict[str, int]]:
        return [{name: i for i, name in enumerate(self.basis(d))} for d in range(4)]

    def index(self, d: int) -> dict[str, int]:
        return self._index[d]

    def face(self, s: Simplex, j: int) -> Simplex:
        base, surj = s
        d = len(surj) - 1
        if not 0 <= j <= d or d == 0:
            raise InputError(f"face d{j} of a {d}-simplex")
        t = surj[:j] + surj[j + 1:]
        m = self.dims[base]
        if len(set(t)) == m + 1:
            return (base, t)
        v = surj[j]
        b2, s2 = self.faces[base][v]
        t2 = tuple(x - 1 if x > v else x for x in t)
        return (b2, tuple(s2[x] for x in t2))

    def front(self, s: Simplex, i: int) -> Simplex:
        """Face spanned by vertices 0..i."""
        while len(s[1]) - 1 > i:
            s = self.face(s, len(s[1]) - 1)
        return s

    def back(self, s: Simplex, j: int) -> Simplex:
        """Face spanned by the last j+1 vertices."""
        while len(s[1]) - 1 > j:
            s = self.face(s, 0)
        return s

    @staticmethod
    def is_nondegenerate(s: Simplex) -> bool:
        return s[1] == tuple(range(len(s[1])))

    def chain_index(self, s: Simplex) -> int | None:
        """Basis position of s in normalized chains, or None if degenerate."""
        if not self.is_nondegenerate(s):
            return None
        return self.index(len(s[1]) - 1)[s[0]]

    # ------------------------------------------------------------------
    # serialization

    def face_token(self, s: Simplex) -> str:
        base, surj = s
        d = len(surj) - 1
        if self.is_nondegenerate(s):
            return base
        if base == VERTEX:
            return "*"
        if d == 2 and self.dims[base] == 1:
            return "s0(%s)" % base if surj == (0, 0, 1) else "s1(%s)" % base
        raise InputError(f"no token for degenerate simplex {s}")

    def to_json(self) -> dict:
        return {
            "simplices": {
                "1": list(self.edges),
                "2": [dict(name=t, **{f"d{j}": self.face_token(self.faces[t][j]) for j in range(3)})
                      for t in self.triangles],
                "3": [dict(name=t, **{f"d{j}": self.face_token(self.faces[t][j]) for j in range(4)})
                      for t in self.tetrahedra],
            }
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SimplicialSet":
        return build_simplicial_set(data)

    @cached_property
    def chains(self) -> "ChainComplex":
        return chain_complex(self)


def _parse_face(token, d: int, dims: dict[str, int]) -> Simplex:
    if not isinstance(token, str):
        raise ValidationError(f"face token must be a string, got {token!r}")
    if token == "*":
        return vertex(d)
    m = _DEGEN.match(token)
    if m:
        i, base = int(m.group(1)), m.group(2)
        if dims.get(base) != d - 1 or d != 2 or i > 1:
            raise ValidationError(f"bad degenerate face {token!r} in dimension {d}")
        return (base, (0, 0, 1) if i == 0 else (0, 1, 1))
    if dims.get(token) != d:
        raise ValidationError(f"face {token!r} is not a known {d}-simplex")
    return nondeg(token, d)


def build_simplicial_set(raw: Mapping) -> SimplicialSet:
    """Validate a raw description and build a SimplicialSet.

    ``raw`` follows the JSON layout
    ``{"simplices": {"0": ["x"], "1": [...], "2": [{"name", "d0", "d1", "d2"}], "3": [...]}}``.
    """
    try:
        simp = raw["simplices"]
    except (KeyError, TypeError) as exc:
        raise ValidationError("missing 'simplices'") from exc
    verts = simp.get("0", [VERTEX])
    if len(verts) != 1:
        raise ValidationError(f"exactly one vertex required, got {len(verts)}")
    edges = tuple(simp.get("1", []))
    tri_raw = list(simp.get("2", []))
    tet_raw = list(simp.get("3", []))
    dims: dict[str, int] = {VERTEX: 0}
    for name in edges:
        if not isinstance(name, str) or name in dims or name == "*":
            raise ValidationError(f"bad or duplicate simplex name {name!r}")
        dims[name] = 1
    for rec in tri_raw:
        name = rec.get("name")
        if not isinstance(name, str) or name in dims or name == "*":
            raise ValidationError(f"bad or duplicate simplex name {name!r}")
        dims[name] = 2
    for rec in tet_raw:
        name = rec.get("name")
        if not isinstance(name, str) or name in dims or name == "*":
            raise ValidationError(f"bad or duplicate simplex name {name!r}")
        dims[name] = 3
    faces: dict[str, tuple[Simplex, ...]] = {}
    for e in edges:
        faces[e] = (vertex(0), vertex(0))
    for rec in tri_raw:
        try:
            faces[rec["name"]] = tuple(_parse_face(rec[f"d{j}"], 1, dims) for j in range(3))
        except KeyError as exc:
            raise ValidationError(f"2-simplex {rec['name']!r} lacks face {exc}") from exc
    for rec in tet_raw:
        try:
            faces[rec["name"]] = tuple(_parse_face(rec[f"d{j}"], 2, dims) for j in range(4))
        except KeyError as exc:
            raise ValidationError(f"3-simplex {rec['name']!r} lacks face {exc}") from exc
    X = SimplicialSet(edges, tuple(r["name"] for r in tri_raw), tuple(r["name"] for r in tet_raw), faces)
    validate(X)
    return X


def validate(X: SimplicialSet) -> None:
    """Check d_i d_j = d_{j-1} d_i (i < j) on every stored simplex."""
    for d, names in ((2, X.triangles), (3, X.tetrahedra)):
        for name in names:
            s = nondeg(name, d)
            for j in range(d + 1):
                for i in range(j):
                    a = X.face(X.face(s, j), i)
                    b = X.face(X.face(s, i), j - 1)
                    if a != b:
                        raise ValidationError(
                            f"simplicial identity d{i}d{j} = d{j - 1}d{i} fails on {name!r}: {a} != {b}"
                        )


def make_simplicial_set(edges: Sequence[str], triangles: Sequence[tuple] = (),
                        tetrahedra: Sequence[tuple] = ()) -> SimplicialSet:
    """Shorthand: triangles as (name, d0, d1, d2), tetrahedra as (name, d0, d1, d2, d3)."""
    return build_simplicial_set({
        "simplices": {
            "1": list(edges),
            "2": [dict(name=t[0], d0=t[1], d1=t[2], d2=t[3]) for t in triangles],
            "3": [dict(name=t[0], d0=t[1], d1=t[2], d2=t[3], d3=t[4]) for t in tetrahedra],
        }
    })


# ---------------------------------------------------------------------------
# chains


@dataclass(frozen=True)
class ChainComplex:
    ranks: tuple[int, int, int, int]
    d1: IntMatrix
    d2: IntMatrix
    d3: IntMatrix

    def boundary(self, d: int) -> IntMatrix:
        return (None, self.d1, self.d2, self.d3)[d]


def chain_complex(X: SimplicialSet) -> ChainComplex:
    ranks = tuple(len(X.basis(d)) for d in range(4))
    mats = []
    for d in (1, 2, 3):
        rows = [[0] * ranks[d] for _ in range(ranks[d - 1])]
        for col, name in enumerate(X.basis(d)):
            s = nondeg(name, d)
            for j in range(d + 1):
                k = X.chain_index(X.face(s, j))
                if k is not None:
                    rows[k][col] += (-1) ** j
        mats.append(IntMatrix.from_rows(rows, ranks[d]))
    return ChainComplex(ranks, *mats)


def aw_terms(X: SimplicialSet, d: int, idx: int) -> list[tuple[int, int, int, int]]:
    """Alexander-Whitney diagonal of the idx-th d-simplex.

    Returns ``(p, a, q, b)`` for each nonzero term ``a (x) b`` with
    ``a`` in C_p and ``b`` in C_q (coefficient +1).
    """
    s = nondeg(X.basis(d)[idx], d)
    out = []
    for p in range(d + 1):
        a = X.chain_index(X.front(s, p))
        b = X.chain_index(X.back(s, d - p))
        if a is not None and b is not None:
            out.append((p, a, d - p, b))
    return out


def aw_diagonal(X: SimplicialSet) -> dict:
    """Delta on degrees 0..3 and Delta_1 on degrees 1, 2.

    Values are lists of ``(coef, p, a, q, b)`` per basis simplex.
    """
    delta = {d: [[(1,) + t for t in aw_terms(X, d, i)] for i in range(len(X.basis(d)))]
             for d in range(4)}
    return {"delta": delta, "delta1": {1: [delta1_terms(X, 1, i) for i in range(len(X.edges))],
                                       2: [delta1_terms(X, 2, i) for i in range(len(X.triangles))]}}


def delta1_terms(X: SimplicialSet, d: int, idx: int) -> list[tuple[int, int, int, int, int]]:
    """Delta_1[01] = [01](x)[01]; Delta_1[012] = [012](x)[02] + ([01] + [12])(x)[012]."""
    if d == 1:
        return [(1, 1, idx, 1, idx)]
    if d == 2:
        s = nondeg(X.triangles[idx], 2)
        out = []
        e02 = X.chain_index(X.face(s, 1))
        if e02 is not None:
            out.append((1, 2, idx, 1, e02))
        for j in (2, 0):
            e = X.chain_index(X.face(s, j))
            if e is not None:
                out.append((1, 1, e, 2, idx))
        return out
    raise InputError("Delta_1 is defined on dimensions 1 and 2 only")


# ---------------------------------------------------------------------------
# cochains and products


@dataclass(frozen=True)
class Cochain:
    degree: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.degree not in (0, 1, 2, 3):
            raise InputError(f"cochain degree {self.degree} outside 0..3")


def coboundary(X: SimplicialSet, f: Sequence[int], p: int) -> list[int]:
    """(df)(s) = f(boundary s)."""
    D = X.chains.boundary(p + 1)
    return D.T @ list(f)


def cup(X: SimplicialSet, f: Sequence[int], p: int, g: Sequence[int], q: int) -> list[int]:
    """(f cup g)(s) = f(front_p s) * g(back_q s)."""
    d = p + q
    out = []
    for i in range(len(X.basis(d))):
        v = 0
        for (pp, a, qq, b) in aw_terms(X, d, i):
            if pp == p:
                v += f[a] * g[b]
        out.append(v)
    return out


def cup1(X: SimplicialSet, f: Sequence[int], p: int, g: Sequence[int], q: int) -> list[int]:
    """mu_1(f (x) g), adjoint to Delta_1 (degree p + q - 1)."""
    d = p + q - 1
    if d not in (1, 2):
        return [0] * len(X.basis(d)) if 0 <= d <= 3 else []
    out = []
    for i in range(len(X.basis(d))):
        v = 0
        for (c, pp, a, qq, b) in delta1_terms(X, d, i):
            if pp == p and qq == q:
                v += c * f[a] * g[b]
        out.append(v)
    return out


def cup_products(X: SimplicialSet) -> dict:
    """The products mu and mu_1 as callables bound to X."""
    return {
        "mu": lambda f, p, g, q: cup(X, f, p, g, q),
        "mu1": lambda f, p, g, q: cup1(X, f, p, g, q),
    }


# ---------------------------------------------------------------------------
# cohomology


@dataclass(frozen=True, eq=False)
class Cohomology:
    X: SimplicialSet
    z1: Lattice
    kappa: tuple[tuple[int, ...], ...]  # representative cocycles of the H^1 basis
    z2: Lattice
    b2: Lattice
    h2: AbelianPresentation  # in coordinates of the z2 basis

    @property
    def h1_rank(self) -> int:
        return len(self.kappa)

    def h1_coords(self, c1: Sequence[int]) -> list[int]:
        """Coordinates of a 1-cocycle in the kappa basis (B^1 = 0)."""
        L = Lattice.from_columns(self.kappa, len(self.X.edges)) if self.kappa else Lattice.zero(len(self.X.edges))
        c = solve_in_lattice(L, c1)
        if c is None:
            raise InputError("not a 1-cocycle")
        return c

    def h2_class(self, c2: Sequence[int]) -> tuple[int, ...]:
        coords = solve_in_lattice(self.z2.basis_lattice(), c2)
        if coords is None:
            raise InputError("not a 2-cocycle")
        return self.h2.project(coords)

    def is_coboundary(self, c2: Sequence[int]) -> bool:
        return self.b2.contains(c2)

    def primitive(self, c2: Sequence[int]) -> list[int] | None:
        """A 1-cochain y with dy = c2, or None."""
        return solve_in_lattice(self.b2, c2)

    def h2_generator_cocycles(self) -> list[list[int]]:
        """2-cocycles representing the generators of the H^2 presentation."""
        zb = self.z2.basis
        out = []
        for j in range(self.h2.ngens):
            e = [0] * self.h2.ngens
            e[j] = 1
            coords = self.h2.lift(e)
            out.append([sum(c * z[i] for c, z in zip(coords, zb)) for i in range(len(self.X.triangles))])
        return out


def cohomology(X: SimplicialSet, h1_edges: Sequence[str] | None = None) -> Cohomology:
    """H^1 (= Z^1, single vertex) with a chosen basis, and H^2 = Z^2 / B^2.

    With ``h1_edges`` the H^1 basis is the one dual to those edges; the
    evaluation on them must identify Z^1 with Z^len(h1_edges).
    """
    C = X.chains
    nE, nT = C.ranks[1], C.ranks[2]
    z1 = kernel_lattice(C.d2.T) if nT else Lattice.full(nE)
    if h1_edges is None:
        kappa = tuple(tuple(b) for b in z1.basis)
    else:
        idx = [X.index(1)[e] for e in h1_edges]
        zb = z1.basis
        if len(zb) != len(idx):
            raise InputError(f"H^1 has rank {len(zb)}, {len(idx)} dual edges supplied")
        ev = [[z[i] for z in zb] for i in idx]  # rows: edges, cols: basis
        from .zlinalg import _unimodular_inverse
        try:
            evinv = _unimodular_inverse(ev, len(idx)) if idx else []
        except ArithmeticError as exc:
            raise InputError("edges do not give a dual basis of H^1") from exc
        kappa = tuple(
            tuple(sum(zb[k][e] * evinv[k][j] for k in range(len(zb))) for e in range(nE))
            for j in range(len(idx))
        )
    z2 = kernel_lattice(C.d3.T) if C.ranks[3] else Lattice.full(nT)
    b2 = Lattice(nT, C.d2.T) if nE else Lattice.zero(nT)
    zb = z2.basis
    zl = z2.basis_lattice()
    rel_cols = []
    for col in b2.generators.columns():
        c = solve_in_lattice(zl, col)
        if c is None:
            raise RuntimeError("coboundary outside cocycles: d^2 != 0")
        rel_cols.append(c)
    h2 = cokernel_presentation(len(zb), Lattice.from_columns(rel_cols, len(zb)))
    return Cohomology(X, z1, kappa, z2, b2, h2)


# ---------------------------------------------------------------------------
# standard models


def circle() -> SimplicialSet:
    return make_simplicial_set(["a"])


def torus_corner() -> SimplicialSet:
    """Edges a, b, c with one 2-simplex encoding g_a g_b = g_c."""
    return make_simplicial_set(["a", "b", "c"], [("s", "b", "c", "a")])


def torus() -> SimplicialSet:
    """Torus_corner plus the 2-simplex g_b g_a = g_c."""
    return make_simplicial_set(["a", "b", "c"], [("s", "b", "c", "a"), ("t", "a", "c", "b")])


def presentation_complex(P: GroupPresentation, cap_spheres: bool = True) -> SimplicialSet:
    """Single-vertex simplicial set whose fundamental group is presented by P.

    Edges ``g{i}``/``G{i}`` for generators and inverses; per relator a fan of
    2-simplices ``p_{k-1} * l_k = p_k`` over prefix edges ``r{r}p{k}``.  The
    two inverse triangles of each generator bound a 2-sphere; with
    ``cap_spheres`` a 3-simplex ``(g, g^-1, g)`` fills it so H_2 is that of
    the presentation.
    """
    n = P.n
    edges = [f"g{i + 1}" for i in range(n)] + [f"G{i + 1}" for i in range(n)]

    def letter(x: int) -> str:
        return f"g{x}" if x > 0 else f"G{-x}"

    tris = []
    tets = []
    for i in range(1, n + 1):
        tris.append((f"inv{i}", f"G{i}", "*", f"g{i}"))
        tris.append((f"vni{i}", f"g{i}", "*", f"G{i}"))
        if cap_spheres:
            tets.append((f"cap{i}", f"vni{i}", f"s0(g{i})", f"s1(g{i})", f"inv{i}"))
    for r, word in enumerate(P.relators, start=1):
        L = len(word)
        if L == 1:
            tris.append((f"r{r}t1", "*", "*", letter(word[0])))
            continue
        prev = letter(word[0])
        for k in range(2, L + 1):
            cur = "*" if k == L else f"r{r}p{k}"
            if k < L:
                edges.append(cur)
            tris.append((f"r{r}t{k}", letter(word[k - 1]), cur, prev))
            prev = cur
    return make_simplicial_set(edges, tris, tets)


def generator_edges(P: GroupPresentation) -> list[str]:
    return [f"g{i + 1}" for i in range(P.n)]


def relator_cycle(X: SimplicialSet, P: GroupPresentation, r: int) -> dict[str, int]:
    """Fan 2-chain of the r-th relator (0-based) as {triangle: coefficient}."""
    word = P.relators[r]
    return {f"r{r + 1}t{k}": 1 for k in range(2 if len(word) > 1 else 1, len(word) + 1)}


# ---------------------------------------------------------------------------
# simplicial maps and pseudo-homeomorphisms


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    source: SimplicialSet
    target: SimplicialSet
    images: Mapping[str, Simplex]

    def __post_init__(self):
        X, Y = self.source, self.target
        for d in (1, 2, 3):
            for name in X.basis(d):
                if name not in self.images:
                    raise ValidationError(f"map undefined on {name!r}")
                img = self.images[name]
                if len(img[1]) != d + 1 or img[0] not in Y.dims:
                    raise ValidationError(f"image of {name!r} is not a {d}-simplex of the target")
        for d in (1, 2, 3):
            for name in X.basis(d):
                s = nondeg(name, d)
                for j in range(d + 1):
                    if self.apply(X.face(s, j)) != Y.face(self.images[name], j):
                        raise ValidationError(f"map does not commute with d{j} on {name!r}")

    def apply(self, s: Simplex) -> Simplex:
        base, surj = s
        if base == VERTEX:
            return s
        b2, s2 = self.images[base]
        return (b2, tuple(s2[x] for x in surj))

    def chain_matrix(self, d: int) -> IntMatrix:
        X, Y = self.source, self.target
        rows = [[0] * len(X.basis(d)) for _ in Y.basis(d)]
        for j, name in enumerate(X.basis(d)):
            k = Y.chain_index(self.images[name]) if d else 0
            if k is not None:
                rows[k][j] += 1
        return IntMatrix.from_rows(rows, len(X.basis(d)))

    @classmethod
    def from_tokens(cls, X: SimplicialSet, Y: SimplicialSet, tokens: Mapping[str, str]) -> "SimplicialMap":
        images = {}
        for name, tok in tokens.items():
            d = X.dims.get(name)
            if d is None:
                raise ValidationError(f"unknown source simplex {name!r}")
            images[name] = _parse_face(tok, d, Y.dims) if tok != "*" else vertex(d)
        return cls(X, Y, images)

    @classmethod
    def inclusion(cls, X: SimplicialSet, Y: SimplicialSet) -> "SimplicialMap":
        return cls(X, Y, {name: nondeg(name, X.dims[name]) for name in X.dims if name != VERTEX})


def _image_lattice(M: IntMatrix, ambient: int) -> Lattice:
    return Lattice(ambient, M) if M.cols else Lattice.zero(ambient)


def _sum_lattices(*Ls: Lattice) -> Lattice:
    cols = []
    for L in Ls:
        cols.extend(L.generators.columns())
    return Lattice.from_columns(cols, Ls[0].ambient_rank) if cols else Lattice.zero(Ls[0].ambient_rank)


def _preimage(M: IntMatrix, L: Lattice) -> Lattice:
    """{x : M x in L}."""
    n = M.cols
    basis = L.basis
    A = IntMatrix.from_rows(
        [M.row(i) + [-b[i] for b in basis] for i in range(M.rows)], n + len(basis)
    )
    K = kernel_lattice(A)
    return Lattice.from_columns([c[:n] for c in K.generators.columns()], n) if K.rank else Lattice.zero(n)


def homology_presentation(X: SimplicialSet, d: int) -> tuple[AbelianPresentation, Lattice]:
    """H_d = Z_d / B_d as a presentation on the Z_d basis, with that basis."""
    C = X.chains
    n = C.ranks[d]
    Z = kernel_lattice(C.boundary(d)) if d >= 1 and C.ranks[d - 1] and n else Lattice.full(n)
    if d == 1:
        Z = Lattice.full(n)  # single vertex: boundary of every edge vanishes
    B = _image_lattice(C.boundary(d + 1), n) if d + 1 <= 3 else Lattice.zero(n)
    zl = Z.basis_lattice()
    rel = [solve_in_lattice(zl, b) for b in B.generators.columns()]
    return cokernel_presentation(len(Z.basis), Lattice.from_columns(rel, len(Z.basis))), zl


@dataclass(frozen=True)
class PseudoHomeoVerdict:
    h1_iso: bool
    h2_epi: bool
    is_pseudo_homeo: bool
    cond_k1_spanned: bool
    cond_preimage_boundaries: bool
    cond_cycles_spanned: bool
    detail: str = ""


def pseudo_homeo_check(f: SimplicialMap) -> PseudoHomeoVerdict:
    X, Y = f.source, f.target
    CX, CY = X.chains, Y.chains
    phi1, phi2 = f.chain_matrix(1), f.chain_matrix(2)
    H1X, _ = homology_presentation(X, 1)
    H1Y, _ = homology_presentation(Y, 1)
    images = [H1Y.project(phi1.column(j)) for j in range(CX.ranks[1])]
    # H1X generators are expressed on the Z_1 = C_1 basis; push each generator through
    gen_imgs = []
    for j in range(H1X.ngens):
        e = [0] * H1X.ngens
        e[j] = 1
        chain = H1X.lift(e)
        v = [0] * H1Y.ngens
        for k, c in enumerate(chain):
            if c:
                v = [a + c * b for a, b in zip(v, images[k])]
        gen_imgs.append(v)
    h1_iso, why, _ = homomorphism_check(H1X, H1Y, gen_imgs)
    nY1, nY2 = CY.ranks[1], CY.ranks[2]
    dK2 = _image_lattice(CY.d2, nY1)
    dC2 = _image_lattice(CX.d2, CX.ranks[1])
    cond1 = lattice_equal(_sum_lattices(_image_lattice(phi1, nY1), dK2), Lattice.full(nY1))
    cond2 = lattice_equal(_preimage(phi1, dK2), dC2)
    zK2 = kernel_lattice(CY.d2) if CY.ranks[1] and nY2 else Lattice.full(nY2)
    zC2 = kernel_lattice(CX.d2) if CX.ranks[1] and CX.ranks[2] else Lattice.full(CX.ranks[2])
    phi_z = [phi2 @ z for z in zC2.basis]
    pz = Lattice.from_columns(phi_z, nY2) if phi_z else Lattice.zero(nY2)
    cond3 = lattice_equal(_sum_lattices(pz, _image_lattice(CY.d3, nY2)), zK2)
    if h1_iso != (cond1 and cond2):
        raise RuntimeError("H1 isomorphism test disagrees with the chain-level conditions")
    return PseudoHomeoVerdict(h1_iso, cond3, h1_iso and cond3, cond1, cond2, cond3, why)


def relator_letters(word: Sequence[int]) -> list[str]:
    return [f"g{x}" if x > 0 else f"G{-x}" for x in word]


__all__ = [
    "VERTEX", "Simplex", "SimplicialSet", "ValidationError", "ChainComplex", "Cochain", "Cohomology",
    "SimplicialMap", "PseudoHomeoVerdict", "build_simplicial_set", "make_simplicial_set", "validate",
    "chain_complex", "aw_terms", "aw_diagonal", "delta1_terms", "coboundary", "cup", "cup1",
    "cup_products", "cohomology", "circle", "torus_corner", "torus", "presentation_complex",
    "generator_edges", "relator_cycle", "pseudo_homeo_check", "homology_presentation",
    "vertex", "nondeg", "inverse",
]
