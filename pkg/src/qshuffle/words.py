"""Words over the indexed alphabet {y_1, y_2, ...} and integer compositions.

A word y_{i_1}...y_{i_k} is stored as its tuple of letter indices
(i_1, ..., i_k), which is also how the matching composition is written; the
two notions are identified throughout.  The alphabet carries the total order
y_1 > y_2 > y_3 > ..., i.e. the letter with the *smaller* index is the
*greater* letter.  Every word comparison in this package is the lexicographic
extension of that order, with a proper prefix preceding its extensions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod
from typing import Iterable, Iterator

Composition = tuple[int, ...]


class Word:
    """Immutable word over {y_n : n >= 1}."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[int] = ()):
        ls = tuple(int(a) for a in letters)
        if any(a < 1 for a in ls):
            raise ValueError(f"letter indices must be >= 1: {ls!r}")
        self.letters = ls

    @property
    def weight(self) -> int:
        return sum(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.letters[i])
        return self.letters[i]

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __hash__(self) -> int:
        return hash(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    # Order y_1 > y_2 > ... : on letters, a < b iff the index of a is larger.
    def __lt__(self, other: "Word") -> bool:
        for a, b in zip(self.letters, other.letters):
            if a != b:
                return a > b
        return len(self.letters) < len(other.letters)

    def __le__(self, other: "Word") -> bool:
        return self == other or self < other

    def __gt__(self, other: "Word") -> bool:
        return other < self

    def __ge__(self, other: "Word") -> bool:
        return other <= self

    def __repr__(self) -> str:
        return f"Word({word_str(self)!r})"

    def __str__(self) -> str:
        return word_str(self)


def sort_key(w: Word) -> tuple[int, Composition]:
    """Canonical display/serialization order: weight, then parts."""
    return (w.weight, w.letters)


# ---------------------------------------------------------------------------
# text encodings
# ---------------------------------------------------------------------------

def word_str(w: Word | Composition) -> str:
    """Space-separated letter indices; the empty word is written "e"."""
    parts = w.letters if isinstance(w, Word) else tuple(w)
    return " ".join(str(a) for a in parts) if parts else "e"


def parse_word(s: str) -> Word:
    s = s.strip()
    if s in ("", "e"):
        return Word()
    return Word(int(tok) for tok in s.replace(",", " ").split())


def comp_str(parts: Composition) -> str:
    """Parenthesized composition, e.g. (1,2); the empty composition is ()."""
    return "(" + ",".join(str(p) for p in parts) + ")"


def parse_comp(s: str) -> Composition:
    """Accepts "(1,2)", "1 2", "e", "()" and "" (the last three are empty)."""
    s = s.strip().strip("()")
    if s in ("", "e"):
        return ()
    return tuple(int(tok) for tok in s.replace(",", " ").split())


# ---------------------------------------------------------------------------
# composition statistics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CompositionStats:
    l: int
    w: int
    lp: int | None  # None for the empty composition, which has no last part
    pi: int
    pi_u: int
    sp: int
    mirror: Composition


@dataclass(frozen=True)
class RelativeStats:
    l: int
    lp: int
    pi_u: int
    sp: int


def mirror(parts: Composition) -> Composition:
    return tuple(reversed(parts))


def last_part(parts: Composition) -> int:
    if not parts:
        raise ValueError("the empty composition has no last part")
    return parts[-1]


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def stats(parts: Composition) -> CompositionStats:
    """Length, weight, last part, part product, partial-sum product and
    sp = pi * l!, together with the mirror image.  Empty-product conventions
    give pi = pi_u = sp = 1 on the empty composition."""
    parts = tuple(parts)
    pi = prod(parts) if parts else 1
    acc, pi_u = 0, 1
    for p in parts:
        acc += p
        pi_u *= acc
    return CompositionStats(
        l=len(parts),
        w=sum(parts),
        lp=parts[-1] if parts else None,
        pi=pi,
        pi_u=pi_u,
        sp=pi * _factorial(len(parts)),
        mirror=mirror(parts),
    )


# ---------------------------------------------------------------------------
# refinement order (J finer than I: J splits each part of I)
# ---------------------------------------------------------------------------

def compositions_of(n: int) -> list[Composition]:
    """All compositions of n, sorted by (length, parts)."""
    if n == 0:
        return [()]
    out: list[Composition] = []

    def rec(rem: int, acc: list[int]) -> None:
        if rem == 0:
            out.append(tuple(acc))
            return
        for first in range(1, rem + 1):
            acc.append(first)
            rec(rem - first, acc)
            acc.pop()

    rec(n, [])
    out.sort(key=lambda c: (len(c), c))
    return out


def compositions_up_to(n: int, include_empty: bool = True) -> list[Composition]:
    out = [()] if include_empty else []
    for k in range(1, n + 1):
        out.extend(compositions_of(k))
    return out


def words_of_weight(n: int) -> list[Word]:
    return [Word(c) for c in compositions_of(n)]


def words_up_to(n: int, include_empty: bool = True) -> list[Word]:
    return [Word(c) for c in compositions_up_to(n, include_empty)]


def refinements(parts: Composition) -> list[tuple[Composition, list[Composition]]]:
    """Every J finer than or equal to I, with the block decomposition
    J = (J_1, ..., J_k), w(J_p) = i_p.  Results sorted by (length, parts);
    the relation is reflexive, so I itself is always listed."""
    per_part = [compositions_of(p) for p in parts]
    out = []
    for blocks in itertools.product(*per_part):
        flat = tuple(itertools.chain.from_iterable(blocks))
        out.append((flat, list(blocks)))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


def refinement_count(parts: Composition) -> int:
    return prod(2 ** (p - 1) for p in parts) if parts else 1


def blocks_of(finer: Composition, coarser: Composition) -> list[Composition]:
    """Block decomposition of J w.r.t. I; raises if J does not refine I."""
    blocks = []
    pos = 0
    for part in coarser:
        acc, start = 0, pos
        while acc < part:
            if pos >= len(finer):
                raise ValueError(f"{finer} does not refine {coarser}")
            acc += finer[pos]
            pos += 1
        if acc != part:
            raise ValueError(f"{finer} does not refine {coarser}")
        blocks.append(tuple(finer[start:pos]))
    if pos != len(finer):
        raise ValueError(f"{finer} does not refine {coarser}")
    return blocks


def is_finer(finer: Composition, coarser: Composition) -> bool:
    try:
        blocks_of(finer, coarser)
    except ValueError:
        return False
    return True


def relative_stats(finer: Composition, coarser: Composition) -> RelativeStats:
    """Blockwise products l(J,I), lp(J,I), pi_u(J,I), sp(J,I)."""
    blocks = blocks_of(finer, coarser)
    bs = [stats(b) for b in blocks]
    return RelativeStats(
        l=prod(s.l for s in bs) if bs else 1,
        lp=prod(s.lp for s in bs) if bs else 1,
        pi_u=prod(s.pi_u for s in bs) if bs else 1,
        sp=prod(s.sp for s in bs) if bs else 1,
    )


def coarsenings(parts: Composition) -> list[Composition]:
    """Every J coarser than or equal to I (i.e. every J that I refines),
    obtained by merging runs of adjacent parts.  Sorted by (length, parts)."""
    k = len(parts)
    if k == 0:
        return [()]
    out = []
    for gaps in itertools.product((False, True), repeat=k - 1):
        merged = [parts[0]]
        for boundary, x in zip(gaps, parts[1:]):
            if boundary:
                merged.append(x)
            else:
                merged[-1] += x
        out.append(tuple(merged))
    out.sort(key=lambda c: (len(c), c))
    return out
