"""Constructors of simplicial maps that are pseudo-homeomorphisms by design.

Each function returns a SimplicialMap; all of them induce an isomorphism on
H_1 and an epimorphism on H_2, which pseudo_homeo_check confirms.
"""

from __future__ import annotations

from typing import Iterator

from .simplicial import (
    SimplicialMap,
    SimplicialSet,
    make_simplicial_set,
    nondeg,
    presentation_complex,
    vertex,
)
from .words import GroupPresentation


def _records(X: SimplicialSet):
    tris = [(t,) + tuple(X.face_token(X.faces[t][j]) for j in range(3)) for t in X.triangles]
    tets = [(t,) + tuple(X.face_token(X.faces[t][j]) for j in range(4)) for t in X.tetrahedra]
    return list(X.edges), tris, tets


def _fresh(X: SimplicialSet, stem: str) -> str:
    i = 1
    while f"{stem}{i}" in X.dims:
        i += 1
    return f"{stem}{i}"


def elementary_expansion(X: SimplicialSet, a: str, b: str) -> SimplicialMap:
    """Inclusion of X into X plus a new edge e and a 2-simplex with faces d2=a, d0=b, d1=e."""
    edges, tris, tets = _records(X)
    e = _fresh(X, "e")
    t = _fresh(X, "x")
    Y = make_simplicial_set(edges + [e], tris + [(t, b, e, a)], tets)
    return SimplicialMap.inclusion(X, Y)


def duplicate_triangle_fold(X: SimplicialSet, t: str) -> SimplicialMap:
    """Fold of X plus a parallel copy of the 2-simplex t back onto X."""
    edges, tris, tets = _records(X)
    c = _fresh(X, "copy")
    faces = next(r for r in tris if r[0] == t)[1:]
    Y = make_simplicial_set(edges, tris + [(c,) + faces], tets)
    images = {name: nondeg(name, Y.dims[name]) for name in Y.dims if name != "x"}
    images[c] = nondeg(t, 2)
    return SimplicialMap(Y, X, images)


def sphere_collapse(X: SimplicialSet) -> SimplicialMap:
    """Collapse of X wedge a 2-sphere (one 2-simplex with degenerate faces) onto X."""
    edges, tris, tets = _records(X)
    s = _fresh(X, "sph")
    Y = make_simplicial_set(edges, tris + [(s, "*", "*", "*")], tets)
    images = {name: nondeg(name, Y.dims[name]) for name in Y.dims if name != "x"}
    images[s] = vertex(2)
    return SimplicialMap(Y, X, images)


def sphere_filling(X: SimplicialSet) -> SimplicialMap:
    """Inclusion of X wedge a 2-sphere into X wedge a 3-ball bounding it."""
    edges, tris, tets = _records(X)
    s = _fresh(X, "sph")
    d = _fresh(X, "ball")
    Y = make_simplicial_set(edges, tris + [(s, "*", "*", "*")], tets)
    Z = make_simplicial_set(edges, tris + [(s, "*", "*", "*")], tets + [(d, s, "*", "*", "*")])
    return SimplicialMap.inclusion(Y, Z)


def cap_inclusion(P: GroupPresentation) -> SimplicialMap:
    """Presentation complex without its sphere-filling 3-simplices into the full one."""
    return SimplicialMap.inclusion(presentation_complex(P, cap_spheres=False), presentation_complex(P))


def duplicate_relator_fold(P: GroupPresentation, r: int = 0) -> SimplicialMap:
    """Presentation complex of P with relator r repeated, folded onto that of P."""
    P2 = GroupPresentation(P.n, P.relators + (P.relators[r],))
    X, Y = presentation_complex(P), presentation_complex(P2)
    extra = len(P.relators) + 1
    images = {}
    for name in Y.dims:
        if name == "x":
            continue
        d = Y.dims[name]
        target = name
        if name.startswith(f"r{extra}p") or name.startswith(f"r{extra}t"):
            target = f"r{r + 1}" + name[len(f"r{extra}"):]
        images[name] = nondeg(target, d)
    return SimplicialMap(Y, X, images)


def generated_maps(P: GroupPresentation, limit: int = 8) -> Iterator[tuple[str, SimplicialMap]]:
    """A family of pseudo-homeomorphisms built around the presentation complex of P."""
    X = presentation_complex(P)
    yield "cap-inclusion", cap_inclusion(P)
    if P.relators:
        yield "duplicate-relator-fold", duplicate_relator_fold(P)
    yield "sphere-collapse", sphere_collapse(X)
    yield "sphere-filling", sphere_filling(X)
    if X.triangles:
        yield "duplicate-triangle-fold", duplicate_triangle_fold(X, X.triangles[-1])
    count = 0
    for a in X.edges:
        for b in X.edges:
            if count >= limit:
                return
            yield f"expansion({a},{b})", elementary_expansion(X, a, b)
            count += 1
