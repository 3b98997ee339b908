"""Tensor, exterior and symmetric powers of a rank-n free module.

Basis conventions (all lexicographic, 0-based generator indices):

* ``T^d``: words ``(i1, ..., id)``; position ``sum i_k * n**(d-1-k)``.
* ``L2``: pairs ``i < j``; ``L3``: triples ``i < j < k``.
* ``H1 (x) L2``: ``(i, (j, k))`` at ``i * C(n, 2) + pair_index(j, k)``.
* ``S3``: multisets ``i <= j <= k``; basis vector = sum of the distinct
  permutations of the word.

Commutators embed as ``[x, y] = x (x) y - y (x) x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations, product
from typing import Sequence

from .zlinalg import InputError, IntMatrix, Lattice, solve_in_lattice


class PreconditionError(ValueError):
    """An argument violates an algebraic precondition (e.g. t not in Ker l)."""


class InconsistencyError(RuntimeError):
    """An internal identity failed; signals an upstream computation bug."""


@dataclass(frozen=True)
class BasedModule:
    rank: int
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise InputError("basis labels must be distinct")
        if self.rank != len(self.labels):
            raise InputError("rank must equal the number of labels")

    @classmethod
    def standard(cls, n: int, symbol: str = "xi") -> "BasedModule":
        return cls(n, tuple(f"{symbol}{i + 1}" for i in range(n)))


@dataclass(frozen=True)
class TensorWordBasis:
    n: int
    degree: int

    @property
    def size(self) -> int:
        return self.n ** self.degree

    def index(self, word: Sequence[int]) -> int:
        if len(word) != self.degree:
            raise InputError(f"word of length {len(word)} in degree {self.degree}")
        pos = 0
        for i in word:
            pos = pos * self.n + i
        return pos

    def word(self, pos: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.degree):
            pos, r = divmod(pos, self.n)
            out.append(r)
        return tuple(reversed(out))

    def words(self):
        return product(range(self.n), repeat=self.degree)


def _check_n(n: int):
    if n < 1:
        raise InputError("rank must be at least 1")


@lru_cache(maxsize=None)
def pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(combinations(range(n), 2))


@lru_cache(maxsize=None)
def triples(n: int) -> tuple[tuple[int, int, int], ...]:
    return tuple(combinations(range(n), 3))


@lru_cache(maxsize=None)
def pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: i for i, p in enumerate(pairs(n))}


@lru_cache(maxsize=None)
def triple_index(n: int) -> dict[tuple[int, int, int], int]:
    return {t: i for i, t in enumerate(triples(n))}


def h1_l2_index(n: int, i: int, j: int, k: int) -> int:
    """Position of xi_i (x) (xi_j ^ xi_k), j < k."""
    return i * len(pairs(n)) + pair_index(n)[(j, k)]


def h1_l2_labels(n: int) -> list[tuple[int, int, int]]:
    return [(i, j, k) for i in range(n) for (j, k) in pairs(n)]


def _sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation (0 if an index repeats) and sorted tuple."""
    idx = list(idx)
    if len(set(idx)) < len(idx):
        return 0, tuple(sorted(idx))
    sign = 1
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if idx[a] > idx[b]:
                sign = -sign
    return sign, tuple(sorted(idx))


# ---------------------------------------------------------------------------
# structural maps


@lru_cache(maxsize=None)
def eta2(n: int) -> IntMatrix:
    """T^2 -> L2, xi_i (x) xi_j -> xi_i ^ xi_j."""
    _check_n(n)
    P = pair_index(n)
    rows = [[0] * (n * n) for _ in P]
    for i in range(n):
        for j in range(n):
            s, key = _sort_sign((i, j))
            if s:
                rows[P[key]][i * n + j] = s
    return IntMatrix.from_rows(rows, n * n)


@lru_cache(maxsize=None)
def chi2(n: int) -> IntMatrix:
    """Canonical right inverse of eta2: xi_i ^ xi_j -> xi_i (x) xi_j (i < j)."""
    _check_n(n)
    cols = []
    for (i, j) in pairs(n):
        c = [0] * (n * n)
        c[i * n + j] = 1
        cols.append(c)
    return IntMatrix.from_columns(cols, n * n)


@lru_cache(maxsize=None)
def wedge_l(n: int) -> IntMatrix:
    """l : H1 (x) L2 -> L3, xi_i (x) (xi_j ^ xi_k) -> xi_i ^ xi_j ^ xi_k."""
    _check_n(n)
    T = triple_index(n)
    cols = []
    for (i, j, k) in h1_l2_labels(n):
        c = [0] * len(T)
        s, key = _sort_sign((i, j, k))
        if s:
            c[T[key]] = s
        cols.append(c)
    return IntMatrix.from_columns(cols, len(T))


def bracket(n: int, x: Sequence[int], y: Sequence[int]) -> list[int]:
    """[x, y] = x (x) y - y (x) x for degree-1 vectors x, y."""
    out = [0] * (n * n)
    for a in range(n):
        for b in range(n):
            out[a * n + b] += x[a] * y[b] - y[a] * x[b]
    return out


def tensor(u: Sequence[int], v: Sequence[int]) -> list[int]:
    return [a * b for a in u for b in v]


@lru_cache(maxsize=None)
def jmath(n: int) -> IntMatrix:
    """L3 -> T^3, x^y^z -> [x,y](x)z + [y,z](x)x + [z,x](x)y."""
    _check_n(n)
    cols = []
    for (i, j, k) in triples(n):
        e = [[int(a == b) for a in range(n)] for b in range(n)]
        x, y, z = e[i], e[j], e[k]
        c = [0] * n ** 3
        for br, w in ((bracket(n, x, y), z), (bracket(n, y, z), x), (bracket(n, z, x), y)):
            for idx, val in enumerate(tensor(br, w)):
                c[idx] += val
        cols.append(c)
    return IntMatrix.from_columns(cols, n ** 3)


@lru_cache(maxsize=None)
def s123(n: int) -> IntMatrix:
    """Cyclic action on T^3: a (x) b (x) c -> c (x) a (x) b."""
    _check_n(n)
    B = TensorWordBasis(n, 3)
    rows = [[0] * B.size for _ in range(B.size)]
    for (a, b, c) in B.words():
        rows[B.index((c, a, b))][B.index((a, b, c))] = 1
    return IntMatrix.from_rows(rows, B.size)


@lru_cache(maxsize=None)
def id_eta2(n: int) -> IntMatrix:
    """id (x) eta2 : T^3 -> H1 (x) L2."""
    _check_n(n)
    P = pair_index(n)
    m = n * len(P)
    rows = [[0] * n ** 3 for _ in range(m)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                s, key = _sort_sign((j, k))
                if s:
                    rows[i * len(P) + P[key]][(i * n + j) * n + k] = s
    return IntMatrix.from_rows(rows, n ** 3)


def build_exterior_structure(n: int) -> dict[str, IntMatrix]:
    _check_n(n)
    return {"eta2": eta2(n), "chi2": chi2(n), "l": wedge_l(n), "jmath": jmath(n), "s123": s123(n)}


@lru_cache(maxsize=None)
def symmetric3_basis(n: int) -> tuple[tuple[int, ...], ...]:
    """Columns spanning S^(3): orbit sums of words under permutation."""
    B = TensorWordBasis(n, 3)
    cols = []
    for ms in combinations_with_replacement(range(n), 3):
        c = [0] * B.size
        for w in set(permutations(ms)):
            c[B.index(w)] = 1
        cols.append(tuple(c))
    return tuple(cols)


@lru_cache(maxsize=None)
def symmetric2_basis(n: int) -> tuple[tuple[int, ...], ...]:
    """xi_i (x) xi_i, then xi_i (x) xi_j + xi_j (x) xi_i for i < j."""
    cols = []
    for i in range(n):
        c = [0] * (n * n)
        c[i * n + i] = 1
        cols.append(tuple(c))
    for (i, j) in pairs(n):
        c = [0] * (n * n)
        c[i * n + j] = c[j * n + i] = 1
        cols.append(tuple(c))
    return tuple(cols)


# ---------------------------------------------------------------------------
# p and q


def _alpha(n: int, t: Sequence[int]):
    t = list(t)
    if len(t) != n * len(pairs(n)):
        raise InputError(f"H1 (x) L2 vector of length {len(t)} for n={n}")

    def a(i, j, k):
        return t[h1_l2_index(n, i, j, k)]
    return a


def p_map(n: int, t: Sequence[int]) -> list[int]:
    """Right inverse of (id (x) eta2)(id - s123) on Ker l."""
    _check_n(n)
    a = _alpha(n, t)
    lt = wedge_l(n) @ list(t)
    if any(lt):
        raise PreconditionError(f"t is not in Ker l; l(t) = {lt}")
    B = TensorWordBasis(n, 3)
    out = [0] * B.size

    def add(w, v):
        if v:
            out[B.index(w)] += v

    for (i, j, k) in triples(n):
        add((i, j, k), a(j, i, k))
        add((j, i, k), a(j, i, k))
        add((i, k, j), a(k, i, j))
        add((k, i, j), a(k, i, j))
    for (i, j) in pairs(n):
        add((i, i, j), a(i, i, j))
        add((j, j, i), -a(j, i, j))
    return out


def q_map(n: int, t: Sequence[int]) -> list[int]:
    _check_n(n)
    a = _alpha(n, t)
    B = TensorWordBasis(n, 3)
    out = [0] * B.size
    for i in range(n):
        for (j, k) in pairs(n):
            v = a(i, j, k)
            if v:
                out[B.index((i, j, k))] += v
                out[B.index((j, i, k))] += v
                out[B.index((j, k, i))] += v
    return out


def p_matrix(n: int, qbar3: Lattice) -> IntMatrix:
    """Columns p(t) for the canonical basis t of Qbar^3."""
    cols = [p_map(n, t) for t in qbar3.basis]
    return IntMatrix.from_columns(cols, n ** 3)


@dataclass(frozen=True)
class Q3Decomposition:
    p_part: list[int]
    q_part: list[int]
    s_part: list[int]


def decompose_q3(n: int, v: Sequence[int], qbar3: Lattice, h1_rbar2: Lattice) -> Q3Decomposition:
    """Split v in Q^3 = p(Qbar^3) + q(H1 (x) Rbar^2) + S^(3).

    ``qbar3`` and ``h1_rbar2`` are lattices in H1 (x) L2 coordinates.
    """
    v = list(v)
    N = n ** 3
    if len(v) != N:
        raise InputError(f"degree-3 vector of length {len(v)} for n={n}")
    pc = [p_map(n, t) for t in qbar3.basis]
    qc = [q_map(n, t) for t in h1_rbar2.basis]
    sc = [list(c) for c in symmetric3_basis(n)]
    L = Lattice.from_columns(pc + qc + sc, N)
    c = solve_in_lattice(L, v)
    if c is None:
        raise InconsistencyError("vector is not in p(Qbar3) + q(H1 (x) Rbar2) + S3")
    if L.rank != len(pc) + len(qc) + len(sc):
        raise InconsistencyError("Q3 summands are not independent")

    def combo(cols, coeffs):
        out = [0] * N
        for col, x in zip(cols, coeffs):
            if x:
                for i, y in enumerate(col):
                    out[i] += x * y
        return out

    k1, k2 = len(pc), len(pc) + len(qc)
    return Q3Decomposition(combo(pc, c[:k1]), combo(qc, c[k1:k2]), combo(sc, c[k2:]))


# ---------------------------------------------------------------------------
# truncated tensor algebra


@dataclass(frozen=True)
class TruncatedWords:
    """Basis of T_{<k} on n letters: words of length < k, shorter words first,
    lexicographic within a length.  The empty word (the unit) is index 0."""

    n: int
    k: int

    def offset(self, length: int) -> int:
        return sum(self.n ** m for m in range(length))

    @property
    def size(self) -> int:
        return self.offset(self.k)

    def index(self, word: Sequence[int]) -> int:
        if len(word) >= self.k:
            raise InputError(f"word of length {len(word)} is truncated at level {self.k}")
        pos = 0
        for i in word:
            pos = pos * self.n + i
        return self.offset(len(word)) + pos

    def word(self, idx: int) -> tuple[int, ...]:
        length = 0
        while self.offset(length + 1) <= idx:
            length += 1
        return TensorWordBasis(self.n, length).word(idx - self.offset(length)) if length else ()

    def words(self):
        for length in range(self.k):
            yield from product(range(self.n), repeat=length)

    def multiply(self, u: dict, v: dict) -> dict:
        """Product of sparse elements {word: coef}, truncated."""
        out: dict[tuple[int, ...], int] = {}
        for wu, cu in u.items():
            for wv, cv in v.items():
                if len(wu) + len(wv) < self.k:
                    w = wu + wv
                    c = out.get(w, 0) + cu * cv
                    if c:
                        out[w] = c
                    else:
                        out.pop(w, None)
        return out

    def to_indices(self, elem: dict) -> dict[int, int]:
        return {self.index(w): c for w, c in elem.items() if c and len(w) < self.k}


@dataclass(frozen=True, eq=False)
class TruncatedQuotient:
    """T_{<k}(letters) modulo the Z-span of sparse relations {word: coef}."""

    words: TruncatedWords
    letters: tuple[str, ...]
    relations: tuple[dict, ...]
    presentation: "AbelianPresentation"

    @classmethod
    def build(cls, letters: Sequence[str], k: int, relations: Sequence[dict]) -> "TruncatedQuotient":
        from .zlinalg import cokernel_from_relations

        W = TruncatedWords(len(letters), k)
        rels = tuple(r for r in relations if r)
        pres = cokernel_from_relations(W.size, [W.to_indices(r) for r in rels])
        return cls(W, tuple(letters), rels, pres)

    @property
    def k(self) -> int:
        return self.words.k

    def project(self, elem: dict) -> tuple[int, ...]:
        return self.presentation.project(self.words.to_indices(elem))

    def is_zero(self, elem: dict) -> bool:
        return self.presentation.is_zero_coords(self.project(elem))

    def lift(self, coords: Sequence[int]) -> dict:
        v = self.presentation.lift(coords)
        return {self.words.word(i): c for i, c in enumerate(v) if c}

    def unit(self) -> dict:
        return {(): 1}

    def generator(self, i: int) -> dict:
        """The class 1 + x_i."""
        return {(): 1, (i,): 1}

    def product(self, u: dict, v: dict) -> dict:
        return self.words.multiply(u, v)

    def format_word(self, w: Sequence[int]) -> str:
        return "1" if not w else "*".join(self.letters[i] for i in w)

    def format(self, elem: dict) -> dict[str, int]:
        return {self.format_word(w): c for w, c in sorted(elem.items(), key=lambda t: (len(t[0]), t[0])) if c}
