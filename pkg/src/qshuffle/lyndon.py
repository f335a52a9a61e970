"""Lyndon words for the order y_1 > y_2 > ...: recognition, enumeration by
weight, standard factorization, and the decreasing (Chen-Fox-Lyndon)
factorization of arbitrary words."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .words import Word, compositions_of


def is_lyndon(w: Word) -> bool:
    """Nonempty and strictly smaller than each of its proper suffixes."""
    if len(w) == 0:
        return False
    return all(w < w[i:] for i in range(1, len(w)))


def lyndon_up_to(max_weight: int) -> list[Word]:
    """All Lyndon words of weight <= max_weight, sorted by (weight, parts)."""
    out: list[Word] = []
    for n in range(1, max_weight + 1):
        out.extend(w for c in compositions_of(n) if is_lyndon(w := Word(c)))
    out.sort(key=lambda w: (w.weight, w.letters))
    return out


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    result, m = 1, n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def lyndon_count(n: int) -> int:
    """Necklace-style count of Lyndon words of weight n:
    (1/n) sum_{d | n} mobius(n/d) (2^d - 1).

    There are 2^(n-1) words of weight n in total, and this formula is the
    independent oracle for the enumeration above."""
    total = sum(mobius(n // d) * (2**d - 1) for d in range(1, n + 1) if n % d == 0)
    if total % n:
        raise ArithmeticError(f"count formula did not divide evenly at n={n}")
    return total // n


def standard_factorization(w: Word) -> tuple[Word, Word]:
    """l = s r with r the longest proper suffix of l that is Lyndon; both
    factors are then Lyndon.  Defined for Lyndon words of length >= 2."""
    if not is_lyndon(w):
        raise ValueError(f"{w!s} is not a Lyndon word")
    if len(w) < 2:
        raise ValueError("a single letter has no standard factorization")
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise AssertionError("unreachable: the last letter is always Lyndon")


@dataclass(frozen=True)
class LyndonFactorization:
    """Decreasing factorization w = l_1^(i_1) ... l_k^(i_k), l_1 > ... > l_k."""

    factors: tuple[tuple[Word, int], ...]

    def word(self) -> Word:
        out = Word()
        for l, mult in self.factors:
            for _ in range(mult):
                out = out * l
        return out


@lru_cache(maxsize=None)
def _longest_lyndon_prefix(letters: tuple) -> int:
    w = Word(letters)
    for i in range(len(letters), 0, -1):
        if is_lyndon(w[:i]):
            return i
    raise AssertionError("unreachable: a single letter is Lyndon")


def lyndon_factorization(w: Word) -> LyndonFactorization:
    if len(w) == 0:
        raise ValueError("the empty word has no Lyndon factorization")
    raw: list[Word] = []
    rest = w
    while len(rest):
        cut = _longest_lyndon_prefix(rest.letters)
        raw.append(rest[:cut])
        rest = rest[cut:]
    grouped: list[tuple[Word, int]] = []
    for factor in raw:
        if grouped and grouped[-1][0] == factor:
            grouped[-1] = (factor, grouped[-1][1] + 1)
        else:
            grouped.append((factor, 1))
    return LyndonFactorization(tuple(grouped))
