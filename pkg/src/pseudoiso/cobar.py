"""Degree 0 and 1 of the truncated cobar construction and the algebras A^(k).

Letters of degree 0 words are the nondegenerate edges; a degree 1 word
``u [s] v`` carries one 2-simplex letter.  The differential is the derivation

    d[s] = -[d0 s] + [d1 s] - [d2 s] - [d2 s | d0 s]

(degenerate faces vanish), so that (1+[a])(1+[b]) - (1+[c]) = -d[s] for a
2-simplex with faces a = d2 s, b = d0 s, c = d1 s.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from .simplicial import SimplicialSet, nondeg
from .tensorspace import TruncatedQuotient, TruncatedWords
from .zlinalg import InputError, homomorphism_check

MAX_K = 4


def _check_k(k: int) -> None:
    if not isinstance(k, int) or not 1 <= k <= MAX_K:
        raise InputError(f"truncation level k={k} outside 1..{MAX_K}")


def triangle_boundary(X: SimplicialSet, name: str) -> dict[tuple[int, ...], int]:
    """d[s] as a sparse element over edge words (untruncated)."""
    s = nondeg(name, 2)
    idx = [X.chain_index(X.face(s, j)) for j in range(3)]
    out: dict[tuple[int, ...], int] = {}

    def add(w, c):
        v = out.get(w, 0) + c
        if v:
            out[w] = v
        else:
            out.pop(w, None)

    for j, sign in ((0, -1), (1, 1), (2, -1)):
        if idx[j] is not None:
            add((idx[j],), sign)
    if idx[2] is not None and idx[0] is not None:
        add((idx[2], idx[0]), -1)
    return out


@dataclass(frozen=True, eq=False)
class CobarTruncation:
    X: SimplicialSet
    k: int
    degree0: TruncatedWords
    degree1: tuple[tuple[tuple[int, ...], int, tuple[int, ...]], ...]  # (u, triangle, v)
    differential: tuple[dict, ...]  # image of each degree-1 basis word, over degree-0 words

    def format_degree1(self, i: int) -> str:
        u, t, v = self.degree1[i]
        letters = [self.X.edges[a] for a in u] + [self.X.triangles[t]] + [self.X.edges[b] for b in v]
        return "[" + "|".join(letters) + "]"


def truncated_cobar(X: SimplicialSet, k: int) -> CobarTruncation:
    _check_k(k)
    nE = len(X.edges)
    W = TruncatedWords(nE, k)
    basis1 = []
    diff = []
    for t, name in enumerate(X.triangles):
        dt = triangle_boundary(X, name)
        for total in range(k - 1):
            for left in range(total + 1):
                for u in product(range(nE), repeat=left):
                    for v in product(range(nE), repeat=total - left):
                        basis1.append((u, t, v))
                        img = {}
                        for w, c in dt.items():
                            word = u + w + v
                            if len(word) < k:
                                img[word] = img.get(word, 0) + c
                        diff.append({w: c for w, c in img.items() if c})
    return CobarTruncation(X, k, W, tuple(basis1), tuple(diff))


@dataclass(frozen=True, eq=False)
class AkAlgebra:
    """A^(k)(X): degree 0 cobar words modulo the image of the differential."""

    X: SimplicialSet
    quotient: TruncatedQuotient

    @property
    def k(self) -> int:
        return self.quotient.k

    @property
    def presentation(self):
        return self.quotient.presentation

    def edge_image(self, edge: str) -> dict:
        """The element 1 + [edge]."""
        return self.quotient.generator(self.X.index(1)[edge])

    def multiply(self, u: dict, v: dict) -> dict:
        return self.quotient.product(u, v)

    def project(self, elem: dict) -> tuple[int, ...]:
        return self.quotient.project(elem)

    def format(self, elem: dict) -> dict[str, int]:
        return self.quotient.format(elem)


def a_k(X: SimplicialSet, k: int) -> AkAlgebra:
    F = truncated_cobar(X, k)
    letters = tuple(f"[{e}]" for e in X.edges)
    return AkAlgebra(X, TruncatedQuotient.build(letters, k, F.differential))


@dataclass(frozen=True)
class IsoVerdict:
    is_isomorphism: bool
    reason: str = ""
    witness: Mapping[str, int] | None = None

    def to_json(self) -> dict:
        return {"is_isomorphism": self.is_isomorphism, "reason": self.reason,
                "witness": dict(self.witness) if self.witness is not None else None}


def multiplicative_images(src: TruncatedQuotient, dst: TruncatedQuotient,
                          letter_images: Sequence[dict]) -> dict[tuple[int, ...], dict]:
    """Image of every src word under the algebra map x_i -> letter_images[i]."""
    images: dict[tuple[int, ...], dict] = {(): dst.unit()}
    for w in src.words.words():
        if w:
            images[w] = dst.product(images[w[:-1]], letter_images[w[-1]])
    return images


def quotient_map_check(src: TruncatedQuotient, dst: TruncatedQuotient,
                       letter_images: Sequence[dict]) -> IsoVerdict:
    """Is the multiplicative extension of x_i -> letter_images[i] an isomorphism src -> dst?"""
    if src.k != dst.k:
        raise InputError(f"truncation levels differ: {src.k} vs {dst.k}")
    if len(letter_images) != len(src.letters):
        raise InputError("correspondence must cover every generator")
    imgs = multiplicative_images(src, dst, letter_images)

    def push(elem: dict) -> dict:
        out: dict = {}
        for w, c in elem.items():
            for w2, c2 in imgs[w].items():
                out[w2] = out.get(w2, 0) + c * c2
        return {w: c for w, c in out.items() if c}

    for rel in src.relations:
        if not dst.is_zero(push(rel)):
            return IsoVerdict(False, "not well defined", src.format(rel))
    gen_imgs = []
    for j in range(src.presentation.ngens):
        e = [int(i == j) for i in range(src.presentation.ngens)]
        gen_imgs.append(dst.project(push(src.lift(e))))
    ok, reason, wit = homomorphism_check(src.presentation, dst.presentation, gen_imgs)
    if ok:
        return IsoVerdict(True)
    side = dst if reason == "not surjective" else src
    return IsoVerdict(False, reason, side.format(side.lift(wit)))


def algebra_iso_check(A: AkAlgebra, D, correspondence: Sequence[str] | None = None) -> IsoVerdict:
    """Compare D^(k)(G) with A^(k)(X) along 1 + x_i -> 1 + [e_i].

    ``correspondence[i]`` names the edge matched with generator i (default
    ``g1, g2, ...`` as produced by presentation_complex).
    """
    if A.k != D.k:
        raise InputError(f"truncation levels differ: A has k={A.k}, D has k={D.k}")
    n = len(D.quotient.letters)
    if correspondence is None:
        correspondence = [f"g{i + 1}" for i in range(n)]
    if len(correspondence) != n:
        raise InputError(f"correspondence has {len(correspondence)} edges for {n} generators")
    idx = A.X.index(1)
    missing = [e for e in correspondence if e not in idx]
    if missing:
        raise InputError(f"unknown edges in correspondence: {missing}")
    letters = [{(idx[e],): 1} for e in correspondence]
    return quotient_map_check(D.quotient, A.quotient, letters)


def induced_map_check(f, A_src: AkAlgebra, A_dst: AkAlgebra) -> IsoVerdict:
    """Is A^(k)(f) an isomorphism for a simplicial map f?  Edges map to edges
    (or to the degenerate edge, i.e. to 0)."""
    letters = []
    for e in f.source.edges:
        k = f.target.chain_index(f.images[e])
        letters.append({(k,): 1} if k is not None else {})
    return quotient_map_check(A_src.quotient, A_dst.quotient, letters)
