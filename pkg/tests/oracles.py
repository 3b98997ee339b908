"""Independent oracles used only by the tests."""

from __future__ import annotations

from fractions import Fraction


# ---------------------------------------------------------------------------
# Malcev normal form in F_n / gamma_4.
#
# An element of the free nilpotent group of class 3 is stored as its logarithm,
# a Lie polynomial of degree <= 3 with rational coefficients.  Products use the
# Baker-Campbell-Hausdorff formula truncated at degree 3.  This route shares
# nothing with the (1 + x) Magnus expansion used by the package.

DEG = 3


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for u, x in a.items():
        for v, y in b.items():
            if len(u) + len(v) <= DEG:
                w = u + v
                out[w] = out.get(w, 0) + x * y
    return {w: c for w, c in out.items() if c}


def _add(*terms: tuple[Fraction, dict]) -> dict:
    out: dict = {}
    for c, a in terms:
        for w, x in a.items():
            out[w] = out.get(w, 0) + c * x
    return {w: v for w, v in out.items() if v}


def _br(a: dict, b: dict) -> dict:
    return _add((Fraction(1), _mul(a, b)), (Fraction(-1), _mul(b, a)))


def bch(X: dict, Y: dict) -> dict:
    XY = _br(X, Y)
    return _add((Fraction(1), X), (Fraction(1), Y), (Fraction(1, 2), XY),
                (Fraction(1, 12), _br(X, XY)), (Fraction(-1, 12), _br(Y, XY)))


def malcev_log(word) -> dict:
    Z: dict = {}
    for x in word:
        i = abs(x) - 1
        Z = bch(Z, {(i,): Fraction(1 if x > 0 else -1)})
    return Z


def gamma_depth(word) -> int:
    """Largest k <= 4 with word in gamma_k of the free group."""
    Z = malcev_log(word)
    low = min((len(w) for w in Z), default=DEG + 1)
    return low
