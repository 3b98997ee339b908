"""Exact integer linear algebra.

Smith and Hermite normal forms, kernels, lattice membership and equality,
and presentations of finitely generated abelian quotients.  Everything is
plain Python ``int`` arithmetic; no floating point anywhere.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Mapping, Sequence

__all__ = [
    "IntMatrix",
    "SmithForm",
    "Lattice",
    "AbelianPresentation",
    "InputError",
    "smith_normal_form",
    "hnf_rows",
    "solve_in_lattice",
    "kernel_lattice",
    "lattice_equal",
    "lattice_intersection",
    "cokernel_presentation",
    "cokernel_from_relations",
    "conditions_lattice",
]


class InputError(ValueError):
    """Raised on malformed input (dimension mismatch, out-of-range values)."""


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows * self.cols != len(self.entries):
            raise InputError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise InputError("ragged matrix rows")
        return cls(len(rows), ncols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> "IntMatrix":
        for c in columns:
            if len(c) != nrows:
                raise InputError(f"column of length {len(c)} in ambient of rank {nrows}")
        return cls.from_rows([[c[i] for c in columns] for i in range(nrows)], len(columns))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def tolist(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def row(self, i: int) -> list[int]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list[int]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def columns(self) -> list[list[int]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.column(j) for j in range(self.cols)], self.rows)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise InputError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
            a, b = self.tolist(), other.tolist()
            bt = list(zip(*b)) if b else [()] * other.cols
            return IntMatrix.from_rows(
                [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a], other.cols
            )
        vec = list(other)
        if len(vec) != self.cols:
            raise InputError(f"vector of length {len(vec)} against {self.cols} columns")
        return [sum(x * y for x, y in zip(self.row(i), vec)) for i in range(self.rows)]

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise InputError("hstack needs equal row counts")
        return IntMatrix.from_rows([a + b for a, b in zip(self.tolist(), other.tolist())],
                                   self.cols + other.cols)

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise InputError("vstack needs equal column counts")
        return IntMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self):
        return f"IntMatrix({self.tolist()})"


def _as_rows(A) -> list[list[int]]:
    if isinstance(A, IntMatrix):
        return A.tolist()
    return [list(map(int, r)) for r in A]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i, i] for i in range(min(self.S.rows, self.S.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _snf_lists(a: list[list[int]], m: int, n: int, want_u: bool = True, want_v: bool = True):
    """In-place SNF on list-of-lists; returns (S, U, V) with U*A*V = S."""
    S = a
    U = [[int(i == j) for j in range(m)] for i in range(m)] if want_u else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if want_v else None

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in S:
            r[i], r[j] = r[j], r[i]
        if V is not None:
            for r in V:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        rs, rd = S[src], S[dst]
        for k in range(n):
            if rs[k]:
                rd[k] -= q * rs[k]
        if U is not None:
            us, ud = U[src], U[dst]
            for k in range(m):
                if us[k]:
                    ud[k] -= q * us[k]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for r in S:
            if r[src]:
                r[dst] -= q * r[src]
        if V is not None:
            for r in V:
                if r[src]:
                    r[dst] -= q * r[src]

    t = 0
    while t < min(m, n):
        # minimal-|.| nonzero pivot in the trailing block
        best = None
        for i in range(t, m):
            row = S[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(pi, t)
        if pj != t:
            swap_cols(pj, t)
        while True:
            p = S[t][t]
            done = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, S[i][t] // p)
                    if S[i][t]:
                        done = False
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, S[t][j] // p)
                    if S[t][j]:
                        done = False
            if not done:
                # bring the smallest leftover in row/column t to the pivot
                best = (abs(S[t][t]), t, t)
                for i in range(t + 1, m):
                    if S[i][t] and abs(S[i][t]) < best[0]:
                        best = (abs(S[i][t]), i, t)
                for j in range(t + 1, n):
                    if S[t][j] and abs(S[t][j]) < best[0]:
                        best = (abs(S[t][j]), t, j)
                _, bi, bj = best
                if bi != t:
                    swap_rows(bi, t)
                if bj != t:
                    swap_cols(bj, t)
                continue
            # divisibility: every trailing entry must be a multiple of the pivot
            bad = None
            for i in range(t + 1, m):
                row = S[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1
    return S, U, V


def smith_normal_form(A) -> SmithForm:
    """Return ``SmithForm(U, S, V)`` with ``U*A*V == S``.

    ``S`` is diagonal with nonnegative entries d1 | d2 | ... ; ``U`` and ``V``
    are unimodular.
    """
    rows = _as_rows(A)
    m = len(rows)
    n = A.cols if isinstance(A, IntMatrix) else (len(rows[0]) if rows else 0)
    S, U, V = _snf_lists([r[:] for r in rows], m, n)
    return SmithForm(IntMatrix.from_rows(U, m), IntMatrix.from_rows(S, n), IntMatrix.from_rows(V, n))


def hnf_rows(rows: Iterable[Sequence[int]], ncols: int) -> list[list[int]]:
    """Row-style Hermite normal form of the row span (zero rows dropped).

    Pivots are positive and entries above a pivot are reduced into
    ``[0, pivot)``, so the result is canonical for the row lattice.
    """
    H = [list(r) for r in rows if any(r)]
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(H)) if H[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[piv] = H[piv], H[r]
            pr = H[r]
            clean = True
            for i in range(r + 1, len(H)):
                if H[i][c]:
                    q = H[i][c] // pr[c]
                    hi = H[i]
                    for k in range(c, ncols):
                        if pr[k]:
                            hi[k] -= q * pr[k]
                    if hi[c]:
                        clean = False
            if clean:
                break
        if r < len(H) and H[r][c]:
            if H[r][c] < 0:
                H[r] = [-x for x in H[r]]
            pr = H[r]
            for i in range(r):
                if H[i][c]:
                    q = H[i][c] // pr[c]
                    hi = H[i]
                    for k in range(c, ncols):
                        if pr[k]:
                            hi[k] -= q * pr[k]
            r += 1
            H = H[:r] + [h for h in H[r:] if any(h)]
    return H[:r]


# ---------------------------------------------------------------------------
# Lattices


@dataclass(frozen=True, eq=False)
class Lattice:
    """Sublattice of Z^ambient_rank spanned by the columns of ``generators``."""

    ambient_rank: int
    generators: IntMatrix

    def __post_init__(self):
        if self.generators.rows != self.ambient_rank:
            raise InputError(
                f"generators have {self.generators.rows} rows, ambient rank is {self.ambient_rank}"
            )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], ambient_rank: int) -> "Lattice":
        return cls(ambient_rank, IntMatrix.from_columns(list(columns), ambient_rank))

    @classmethod
    def zero(cls, ambient_rank: int) -> "Lattice":
        return cls(ambient_rank, IntMatrix.zeros(ambient_rank, 0))

    @classmethod
    def full(cls, ambient_rank: int) -> "Lattice":
        return cls(ambient_rank, IntMatrix.identity(ambient_rank))

    @cached_property
    def hnf(self) -> list[list[int]]:
        """Canonical basis (as rows)."""
        return hnf_rows(self.generators.columns(), self.ambient_rank)

    @property
    def basis(self) -> list[list[int]]:
        return self.hnf

    @property
    def rank(self) -> int:
        return len(self.hnf)

    @cached_property
    def _smith(self) -> tuple:
        cols = self.hnf
        m = self.ambient_rank
        a = [[c[i] for c in cols] for i in range(m)]
        S, U, V = _snf_lists(a, m, len(cols))
        return S, U, V

    def basis_lattice(self) -> "Lattice":
        return Lattice.from_columns(self.hnf, self.ambient_rank)

    def contains(self, v: Sequence[int]) -> bool:
        return solve_in_lattice(self, v) is not None

    def __repr__(self):
        return f"Lattice(ambient={self.ambient_rank}, basis={self.hnf})"


def solve_in_lattice(L: Lattice, v: Sequence[int]) -> list[int] | None:
    """Coefficients c with ``L.generators @ c == v``, or ``None``."""
    v = list(v)
    if len(v) != L.ambient_rank:
        raise InputError(f"vector of length {len(v)} in lattice of ambient rank {L.ambient_rank}")
    S, U, V = L._smith
    k = len(L.hnf)
    uv = [sum(a * b for a, b in zip(row, v)) for row in U]
    y = []
    for i in range(len(uv)):
        d = S[i][i] if i < k else 0
        if d:
            if uv[i] % d:
                return None
            y.append(uv[i] // d)
        elif uv[i]:
            return None
    y = y[:k] + [0] * (k - len(y[:k]))
    c_basis = [sum(V[i][j] * y[j] for j in range(k)) for i in range(k)]
    # c_basis expresses v in the HNF basis; convert to original generators
    if not k:
        return [0] * L.generators.cols
    return _basis_to_generators(L, c_basis)


def _basis_to_generators(L: Lattice, c_basis: list[int]) -> list[int]:
    coeffs = _generator_expressions(L)
    out = [0] * L.generators.cols
    for cb, expr in zip(c_basis, coeffs):
        if cb:
            for j, e in enumerate(expr):
                if e:
                    out[j] += cb * e
    return out


def _generator_expressions(L: Lattice) -> list[list[int]]:
    cache = L.__dict__.get("_gen_expr")
    if cache is not None:
        return cache
    # Row-reduce [G^T | I] to HNF on the left block; the right block then
    # records each HNF row as a combination of generators.
    g = L.generators.columns()
    ng, m = len(g), L.ambient_rank
    aug = [list(col) + [int(i == j) for j in range(ng)] for i, col in enumerate(g)]
    H = hnf_rows_augmented(aug, m)
    exprs = [row[m:] for row in H]
    object.__setattr__(L, "_gen_expr", exprs)
    return exprs


def hnf_rows_augmented(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """HNF on the first ``ncols`` columns, carrying trailing columns along.

    Returns only the rows with a pivot in the leading block, in the same
    order as ``hnf_rows`` produces them.
    """
    H = [r[:] for r in rows]
    width = len(H[0]) if H else ncols
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(H)) if H[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[piv] = H[piv], H[r]
            pr = H[r]
            clean = True
            for i in range(r + 1, len(H)):
                if H[i][c]:
                    q = H[i][c] // pr[c]
                    hi = H[i]
                    for k in range(c, width):
                        if pr[k]:
                            hi[k] -= q * pr[k]
                    if hi[c]:
                        clean = False
            if clean:
                break
        if r < len(H) and H[r][c]:
            if H[r][c] < 0:
                H[r] = [-x for x in H[r]]
            pr = H[r]
            for i in range(r):
                if H[i][c]:
                    q = H[i][c] // pr[c]
                    hi = H[i]
                    for k in range(c, width):
                        if pr[k]:
                            hi[k] -= q * pr[k]
            r += 1
    return H[:r]


def kernel_lattice(A) -> Lattice:
    """Saturated Z-basis of ``{x : A x = 0}``."""
    rows = _as_rows(A)
    n = A.cols if isinstance(A, IntMatrix) else (len(rows[0]) if rows else 0)
    m = len(rows)
    if m == 0:
        return Lattice.full(n)
    S, _, V = _snf_lists([r[:] for r in rows], m, n, want_u=False)
    rank = sum(1 for i in range(min(m, n)) if S[i][i])
    cols = [[V[i][j] for i in range(n)] for j in range(rank, n)]
    return Lattice.from_columns(cols, n)


def lattice_equal(L1: Lattice, L2: Lattice) -> bool:
    if L1.ambient_rank != L2.ambient_rank:
        raise InputError(f"ambient ranks differ: {L1.ambient_rank} vs {L2.ambient_rank}")
    return L1.hnf == L2.hnf


def lattice_intersection(L1: Lattice, L2: Lattice) -> Lattice:
    if L1.ambient_rank != L2.ambient_rank:
        raise InputError("ambient ranks differ")
    b1, b2 = L1.hnf, L2.hnf
    n = L1.ambient_rank
    if not b1 or not b2:
        return Lattice.zero(n)
    M = [[c[i] for c in b1] + [-c[i] for c in b2] for i in range(n)]
    K = kernel_lattice(IntMatrix.from_rows(M, len(b1) + len(b2)))
    cols = []
    for kc in K.generators.columns():
        cols.append([sum(kc[j] * b1[j][i] for j in range(len(b1))) for i in range(n)])
    return Lattice.from_columns(cols, n).basis_lattice()


def conditions_lattice(n: int, exact: Sequence[Sequence[int]] = (),
                       modular: Sequence[tuple[Sequence[int], int]] = ()) -> Lattice:
    """``{x in Z^n : a.x = 0 for a in exact, b.x = 0 mod t for (b, t) in modular}``."""
    rows = [list(a) for a in exact if any(a)]
    mods = [(list(b), t) for b, t in modular if t != 1 and any(x % t for x in b)]
    if not rows and not mods:
        return Lattice.full(n)
    extra = len(mods)
    M = [r + [0] * extra for r in rows]
    for k, (b, t) in enumerate(mods):
        M.append(b + [t if j == k else 0 for j in range(extra)])
    K = kernel_lattice(IntMatrix.from_rows(M, n + extra))
    cols = [c[:n] for c in K.generators.columns()]
    return Lattice.from_columns(cols, n).basis_lattice()


# ---------------------------------------------------------------------------
# Abelian quotients


class _Reducer:
    """Unit-pivot elimination followed by a dense SNF on what is left."""

    def __init__(self, ambient_rank: int, relations: Iterable[Mapping[int, int]]):
        self.ambient_rank = ambient_rank
        rows: dict[int, dict[int, int]] = {}
        cols: dict[int, set[int]] = {}
        for rid, rel in enumerate(relations):
            row = {int(c): int(v) for c, v in rel.items() if v}
            for c in row:
                if not 0 <= c < ambient_rank:
                    raise InputError(f"relation column {c} outside ambient rank {ambient_rank}")
            if not row:
                continue
            rows[rid] = row
            for c in row:
                cols.setdefault(c, set()).add(rid)
        self.pivots: list[tuple[int, dict[int, int]]] = []
        heap = [(len(r), rid, 0) for rid, r in rows.items()]
        heapq.heapify(heap)
        version = {rid: 0 for rid in rows}
        while heap:
            _, rid, ver = heapq.heappop(heap)
            if rid not in rows or version[rid] != ver:
                continue
            row = rows[rid]
            units = [c for c, v in row.items() if v in (1, -1)]
            if not units:
                continue
            c = min(units, key=lambda k: (len(cols[k]), k))
            if row[c] == -1:
                row = {k: -v for k, v in row.items()}
            del rows[rid]
            for k in row:
                cols[k].discard(rid)
            for other in list(cols[c]):
                orow = rows[other]
                f = orow[c]
                for k, v in row.items():
                    nv = orow.get(k, 0) - f * v
                    if nv:
                        if k not in orow:
                            cols[k].add(other)
                        orow[k] = nv
                    elif k in orow:
                        del orow[k]
                        cols[k].discard(other)
                version[other] += 1
                if orow:
                    heapq.heappush(heap, (len(orow), other, version[other]))
                else:
                    del rows[other]
            del cols[c]
            self.pivots.append((c, row))
        pivoted = {c for c, _ in self.pivots}
        self.remaining = [c for c in range(ambient_rank) if c not in pivoted]
        self.index = {c: i for i, c in enumerate(self.remaining)}
        left = [r for r in rows.values() if r]
        m = len(self.remaining)
        dense = [[0] * len(left) for _ in range(m)]
        for j, r in enumerate(left):
            for c, v in r.items():
                dense[self.index[c]][j] = v
        S, U, _ = _snf_lists(dense, m, len(left), want_v=False)
        diag = [S[i][i] if i < len(left) else 0 for i in range(m)]
        self.free_rows = [i for i in range(m) if diag[i] == 0]
        self.tors_rows = [i for i in range(m) if diag[i] > 1]
        self.torsion = tuple(diag[i] for i in self.tors_rows)
        self.U = U
        self._uinv = None
        self.pivot_pos = {c: i for i, (c, _) in enumerate(self.pivots)}
        sel = self.free_rows + self.tors_rows
        self._ucols = [[(pos, U[i][j]) for pos, i in enumerate(sel) if U[i][j]] for j in range(m)]

    def reduce(self, v) -> dict[int, int]:
        if isinstance(v, Mapping):
            w = {int(k): int(x) for k, x in v.items() if x}
        else:
            v = list(v)
            if len(v) != self.ambient_rank:
                raise InputError(f"vector of length {len(v)} in ambient rank {self.ambient_rank}")
            w = {i: x for i, x in enumerate(v) if x}
        heap = [self.pivot_pos[c] for c in w if c in self.pivot_pos]
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            pos = heapq.heappop(heap)
            c, row = self.pivots[pos]
            f = w.pop(c, 0)
            if not f:
                continue
            for k, x in row.items():
                if k != c:
                    nv = w.get(k, 0) - f * x
                    if nv:
                        w[k] = nv
                        q = self.pivot_pos.get(k)
                        if q is not None and q not in seen:
                            seen.add(q)
                            heapq.heappush(heap, q)
                    else:
                        w.pop(k, None)
        return w

    def project(self, v) -> tuple[int, ...]:
        w = self.reduce(v)
        out = [0] * (len(self.free_rows) + len(self.tors_rows))
        for k, x in w.items():
            for pos, u in self._ucols[self.index[k]]:
                out[pos] += u * x
        nf = len(self.free_rows)
        for i, t in enumerate(self.torsion):
            out[nf + i] %= t
        return tuple(out)

    def lift(self, coords: Sequence[int]) -> list[int]:
        if self._uinv is None:
            m = len(self.remaining)
            # U is unimodular; invert via SNF-free Gauss-Jordan over Z.
            self._uinv = _unimodular_inverse(self.U, m)
        rows = self.free_rows + self.tors_rows
        out = [0] * self.ambient_rank
        for x, i in zip(coords, rows):
            if x:
                for r in range(len(self.remaining)):
                    if self._uinv[r][i]:
                        out[self.remaining[r]] += x * self._uinv[r][i]
        return out


def _unimodular_inverse(U: list[list[int]], m: int) -> list[list[int]]:
    aug = [list(U[i]) + [int(i == j) for j in range(m)] for i in range(m)]
    H = hnf_rows_augmented(aug, m)
    if len(H) != m or any(H[i][i] != 1 for i in range(m)):
        raise ArithmeticError("matrix is not unimodular")
    return [row[m:] for row in H]


@dataclass(frozen=True, eq=False)
class AbelianPresentation:
    """Z^ambient / relations  ~=  Z^free_rank + sum Z/torsion_i.

    Coordinates of an element: ``free_rank`` integers followed by one residue
    per torsion factor.
    """

    ambient_rank: int
    free_rank: int
    torsion: tuple[int, ...]
    _reducer: _Reducer = field(repr=False)

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    @property
    def is_free(self) -> bool:
        return not self.torsion

    def project(self, v) -> tuple[int, ...]:
        """Coordinates of the class of ``v`` (dense sequence or sparse dict)."""
        return self._reducer.project(v)

    def is_zero(self, v) -> bool:
        return not any(self.project(v))

    def is_zero_coords(self, coords: Sequence[int]) -> bool:
        """Is the coordinate vector zero in the group (torsion read modulo its order)?"""
        f = self.free_rank
        if any(coords[:f]):
            return False
        return all(x % t == 0 for x, t in zip(coords[f:], self.torsion))

    def lift(self, coords: Sequence[int]) -> list[int]:
        """An ambient representative of the given coordinates."""
        return self._reducer.lift(coords)

    @cached_property
    def projection(self) -> IntMatrix:
        cols = []
        for j in range(self.ambient_rank):
            p = self._reducer.project({j: 1})
            cols.append(list(p))
        return IntMatrix.from_columns(cols, self.ngens)

    def relation_lattice(self) -> Lattice:
        """Lattice in coordinate space whose quotient is this group."""
        k = self.ngens
        cols = []
        for i, t in enumerate(self.torsion):
            col = [0] * k
            col[self.free_rank + i] = t
            cols.append(col)
        return Lattice.from_columns(cols, k)

    def __repr__(self):
        return f"AbelianPresentation(free_rank={self.free_rank}, torsion={list(self.torsion)})"


def cokernel_from_relations(ambient_rank: int, relations: Iterable[Mapping[int, int]]) -> AbelianPresentation:
    """Presentation of Z^ambient_rank modulo the span of sparse relation vectors."""
    red = _Reducer(ambient_rank, relations)
    return AbelianPresentation(ambient_rank, len(red.free_rows), red.torsion, red)


def cokernel_presentation(ambient_rank: int, L: Lattice) -> AbelianPresentation:
    if L.ambient_rank != ambient_rank:
        raise InputError(f"lattice ambient rank {L.ambient_rank} != {ambient_rank}")
    rels = [{i: x for i, x in enumerate(col) if x} for col in L.generators.columns()]
    return cokernel_from_relations(ambient_rank, rels)


def content(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def homomorphism_check(src: AbelianPresentation, dst: AbelianPresentation,
                       images: Sequence[Sequence[int]]) -> tuple[bool, str, list[int] | None]:
    """Test whether ``e_j -> images[j]`` (dst coordinates) is an isomorphism src -> dst.

    Returns ``(ok, reason, witness)``.  The witness is in src coordinates for
    "not well defined" / "not injective" and in dst coordinates for "not surjective".
    """
    ns, nd = src.ngens, dst.ngens
    if len(images) != ns:
        raise InputError(f"{len(images)} images for {ns} generators")
    cols = [list(c) for c in images]
    for i, t in enumerate(src.torsion):
        j = src.free_rank + i
        if not dst.is_zero_coords([t * x for x in cols[j]]):
            w = [0] * ns
            w[j] = t
            return False, "not well defined", w
    rel = dst.relation_lattice()
    span_cols = cols + rel.generators.columns()
    span = Lattice.from_columns(span_cols, nd) if span_cols else Lattice.zero(nd)
    for i in range(nd):
        e = [int(i == r) for r in range(nd)]
        if not span.contains(e):
            return False, "not surjective", e
    exact = [[cols[j][i] for j in range(ns)] for i in range(dst.free_rank)]
    modular = [([cols[j][dst.free_rank + i] for j in range(ns)], t) for i, t in enumerate(dst.torsion)]
    K = conditions_lattice(ns, exact, modular)
    srel = src.relation_lattice()
    for b in K.basis:
        if not srel.contains(b):
            return False, "not injective", list(b)
    return True, "", None


def nonmembership_certificate(L: Lattice, v: Sequence[int]) -> tuple[list[int], int] | None:
    """A functional u and modulus d with u.L = 0 (mod d) and u.v != 0 (mod d).

    ``d == 0`` means exact vanishing on L.  Returns None when v lies in L.
    """
    v = list(v)
    S, U, _ = L._smith
    k = len(L.hnf)
    for i, row in enumerate(U):
        x = sum(a * b for a, b in zip(row, v))
        d = S[i][i] if i < k else 0
        if (d == 0 and x) or (d and x % d):
            return list(row), d
    return None
