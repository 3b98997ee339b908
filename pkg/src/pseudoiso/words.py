"""Free-group words and finite group presentations.

A word is a tuple of nonzero ints: ``i`` stands for g_i, ``-i`` for its
inverse (1-based, as in the JSON syntax ``[1, 2, -1, -2]``).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from .zlinalg import InputError

log = logging.getLogger(__name__)

Word = tuple[int, ...]


def reduce_word(w: Iterable[int]) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def commutator(u: Sequence[int], v: Sequence[int]) -> Word:
    """u v u^-1 v^-1 (the bracket convention of the relator examples)."""
    return reduce_word(tuple(u) + tuple(v) + inverse(u) + inverse(v))


def power(w: Sequence[int], e: int) -> Word:
    if e >= 0:
        return reduce_word(tuple(w) * e)
    return reduce_word(inverse(w) * (-e))


def exponent_sums(w: Sequence[int], n: int) -> list[int]:
    out = [0] * n
    for x in w:
        out[abs(x) - 1] += 1 if x > 0 else -1
    return out


def check_word(w: Sequence[int], n: int) -> Word:
    w = tuple(int(x) for x in w)
    for x in w:
        if x == 0 or abs(x) > n:
            raise InputError(f"letter out of range: {x} (generators are 1..{n})")
    return w


@dataclass(frozen=True)
class GroupPresentation:
    n: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        if self.n < 1:
            raise InputError("a presentation needs at least one generator")
        rels = []
        for r in self.relators:
            r = reduce_word(check_word(r, self.n))
            if not r:
                log.warning("empty relator ignored")
                continue
            rels.append(r)
        object.__setattr__(self, "relators", tuple(rels))

    @classmethod
    def from_json(cls, data: dict) -> "GroupPresentation":
        try:
            n = int(data["generators"])
            rels = [tuple(r) for r in data.get("relators", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed presentation: {exc}") from exc
        return cls(n, tuple(rels))

    def to_json(self) -> dict:
        return {"generators": self.n, "relators": [list(r) for r in self.relators]}

    def in_commutator_subgroup(self) -> bool:
        return all(not any(exponent_sums(r, self.n)) for r in self.relators)

    def with_relators(self, extra: Iterable[Sequence[int]]) -> "GroupPresentation":
        return GroupPresentation(self.n, self.relators + tuple(tuple(r) for r in extra))
