"""Truncated diagonal series and its factorization into Lyndon-indexed
exponentials, for each of the four dual-basis pairs, plus the character-series
identities that transport the factorization into QSym/Sym.

The diagonal series sum_w w (x) w multiplies words with the commutative
product (shuffle or quasi-shuffle) on the left tensor factor and with
concatenation on the right.  Its factorization is the ordered product over
Lyndon words, largest first, of exp(dual_l (x) primitive_l)."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable

from .bases import p_basis, pi_basis, pi_s_basis, s_basis, sigma_basis, sigma_s_basis, pi1
from .lyndon import lyndon_up_to
from .ncpoly import NCPolynomial, product, shuffle_words, stuffle_words
from .symqsym import encode_M, encode_S, m_star
from .words import Composition, Word, sort_key, word_str, words_up_to

PAIRS = ("shuffle", "stuffle", "L", "R")

_PAIR_FAMILIES: dict[str, tuple[Callable, Callable, str]] = {
    "shuffle": (s_basis, p_basis, "shuffle"),
    "stuffle": (sigma_basis, pi_basis, "stuffle"),
    "L": (lambda w: sigma_s_basis(w, "L"), lambda w: pi_s_basis(w, "L"), "stuffle"),
    "R": (lambda w: sigma_s_basis(w, "R"), lambda w: pi_s_basis(w, "R"), "stuffle"),
}


class GradedTensorSeries:
    """Finite (word, word) -> rational map truncated by weight on both sides;
    the left slot multiplies with `left_kind`, the right with concatenation."""

    __slots__ = ("terms", "bound", "left_kind")

    def __init__(self, terms, bound: int, left_kind: str):
        if left_kind not in ("shuffle", "stuffle"):
            raise ValueError(f"left_kind must be shuffle or stuffle, got {left_kind!r}")
        self.bound = bound
        self.left_kind = left_kind
        self.terms: dict[tuple[Word, Word], Fraction] = {}
        if terms:
            for (u, v), c in terms.items():
                if c and u.weight <= bound and v.weight <= bound:
                    self.terms[(u, v)] = Fraction(c)

    @classmethod
    def unit(cls, bound: int, left_kind: str) -> "GradedTensorSeries":
        return cls({(Word(), Word()): Fraction(1)}, bound, left_kind)

    def coeff(self, u: Word, v: Word) -> Fraction:
        return self.terms.get((u, v), Fraction(0))

    def __mul__(self, other: "GradedTensorSeries") -> "GradedTensorSeries":
        if self.left_kind != other.left_kind:
            raise ValueError("cannot multiply series with different left products")
        bound = min(self.bound, other.bound)
        kernel = shuffle_words if self.left_kind == "shuffle" else stuffle_words
        out: dict[tuple[Word, Word], Fraction] = {}
        for (u1, v1), c1 in self.terms.items():
            for (u2, v2), c2 in other.terms.items():
                if u1.weight + u2.weight > bound:
                    continue
                v = v1 * v2
                if v.weight > bound:
                    continue
                c = c1 * c2
                for ut, n in kernel(u1.letters, u2.letters):
                    key = (Word(ut), v)
                    total = out.get(key, Fraction(0)) + c * n
                    if total:
                        out[key] = total
                    elif key in out:
                        del out[key]
        result = GradedTensorSeries.__new__(GradedTensorSeries)
        result.terms = out
        result.bound = bound
        result.left_kind = self.left_kind
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedTensorSeries)
            and self.left_kind == other.left_kind
            and self.terms == other.terms
        )

    def discrepancies(self, other: "GradedTensorSeries", limit: int = 20) -> list[tuple]:
        """Sorted list of (u, v, this coefficient, other coefficient) where the
        two series differ, capped at `limit` entries."""
        keys = set(self.terms) | set(other.terms)
        diffs = []
        for key in sorted(keys, key=lambda k: (sort_key(k[0]), sort_key(k[1]))):
            a, b = self.terms.get(key, Fraction(0)), other.terms.get(key, Fraction(0))
            if a != b:
                diffs.append((key[0], key[1], a, b))
                if len(diffs) >= limit:
                    break
        return diffs


def diagonal(max_weight: int, side: str) -> GradedTensorSeries:
    """sum over words of weight <= max_weight of w (x) w."""
    terms = {(w, w): Fraction(1) for w in words_up_to(max_weight)}
    return GradedTensorSeries(terms, max_weight, side)


def _exp_factor(
    dual: NCPolynomial, primal: NCPolynomial, bound: int, left_kind: str
) -> GradedTensorSeries:
    # exp(dual (x) primal) = sum_k (dual^{*k} / k!) (x) primal^k; both inputs
    # are weight-homogeneous of the same weight m, so k <= bound // m.
    m = dual.max_weight()
    terms: dict[tuple[Word, Word], Fraction] = {(Word(), Word()): Fraction(1)}
    dual_pow = NCPolynomial.one()
    primal_pow = NCPolynomial.one()
    k = 0
    while (k + 1) * m <= bound:
        k += 1
        dual_pow = product(dual_pow, dual, left_kind)
        primal_pow = primal_pow * primal
        scale = Fraction(1, factorial(k))
        for u, cu in dual_pow.terms.items():
            for v, cv in primal_pow.terms.items():
                key = (u, v)
                terms[key] = terms.get(key, Fraction(0)) + cu * cv * scale
    return GradedTensorSeries(terms, bound, left_kind)


def lyndon_decreasing(max_weight: int) -> list[Word]:
    """Lyndon words of weight <= max_weight, largest first in the word order."""
    return sorted(lyndon_up_to(max_weight), reverse=True)


def factorized_product(
    max_weight: int,
    pair: str,
    left_kind: str | None = None,
    mismatch: bool = False,
) -> GradedTensorSeries:
    """Ordered product over Lyndon words, largest leftmost, of
    exp(dual_l (x) primitive_l) for the requested dual pair.

    `left_kind` overrides the pair's own commutative product and `mismatch`
    swaps in the primitive family of the opposite side; both are negative
    controls and break the identity at weight 2."""
    if pair not in _PAIR_FAMILIES:
        raise ValueError(f"unknown pair {pair!r}; expected one of {PAIRS}")
    dual_fn, primal_fn, kind = _PAIR_FAMILIES[pair]
    if mismatch:
        primal_fn = pi_basis if pair == "shuffle" else p_basis
    kind = left_kind or kind
    acc = GradedTensorSeries.unit(max_weight, kind)
    for l in lyndon_decreasing(max_weight):
        acc = acc * _exp_factor(dual_fn(l), primal_fn(l), max_weight, kind)
    return acc


def verify_factorization(
    max_weight: int, pair: str, negative_control: bool = False
) -> tuple[bool, list[tuple]]:
    """Term-by-term comparison of the diagonal series with the factorized
    product; returns (equal, discrepancy list)."""
    side = _PAIR_FAMILIES[pair][2]
    target = diagonal(max_weight, side)
    got = factorized_product(max_weight, pair, mismatch=negative_control)
    report = target.discrepancies(got)
    return (not report, report)


# ---------------------------------------------------------------------------
# character series in QSym coefficients
# ---------------------------------------------------------------------------

def _mw_mul(a: dict, b: dict, bound: int) -> dict:
    # product on QSym (x) wordalgebra: (M_I (x) u)(M_J (x) v) = (M_I * M_J) (x) uv
    out: dict[tuple[Composition, Word], Fraction] = {}
    for (i, u), c1 in a.items():
        for (j, v), c2 in b.items():
            w = u * v
            if w.weight > bound:
                continue
            c = c1 * c2
            for k, n in m_star(i, j):
                key = (k, w)
                total = out.get(key, Fraction(0)) + c * n
                if total:
                    out[key] = total
                elif key in out:
                    del out[key]
    return out


def _ms_mul(a: dict, b: dict, bound: int) -> dict:
    # product on QSym (x) Sym: (M_I (x) S^K)(M_J (x) S^L) = (M_I * M_J) (x) S^(K.L)
    out: dict[tuple[Composition, Composition], Fraction] = {}
    for (i, k1), c1 in a.items():
        for (j, k2), c2 in b.items():
            right = k1 + k2
            if sum(right) > bound:
                continue
            c = c1 * c2
            for k, n in m_star(i, j):
                key = (k, right)
                total = out.get(key, Fraction(0)) + c * n
                if total:
                    out[key] = total
                elif key in out:
                    del out[key]
    return out


def character_checks(max_weight: int) -> list[tuple[str, bool, str]]:
    """Three identities for the generating series with monomial quasi-symmetric
    coefficients, truncated by weight:

    (a) the word encoding into QSym turns the quasi-shuffle into the monomial
        product (character property);
    (b) the termwise logarithm of sum_w M_w (x) w regroups as
        sum_w M_w (x) pi1(w);
    (c) sum_w M_w (x) S_w equals the ordered product of
        exp(M_{Sigma_l} (x) S_{Pi_l}), for the quasi-shuffle pair and for both
        primitive-series variants.
    """
    results: list[tuple[str, bool, str]] = []

    # (a) character property
    bad = None
    all_words = words_up_to(max_weight)
    for u in all_words:
        for v in all_words:
            if u.weight + v.weight > max_weight:
                continue
            lhs = encode_M(product(NCPolynomial.word(u), NCPolynomial.word(v), "stuffle"))
            rhs = encode_M(u) * encode_M(v)
            if lhs != rhs:
                bad = (u, v)
                break
        if bad:
            break
    results.append(
        (
            "character-morphism",
            bad is None,
            "monomial encoding turns quasi-shuffle into the star product"
            if bad is None
            else f"fails at u={word_str(bad[0])}, v={word_str(bad[1])}",
        )
    )

    # (b) log of the generating series
    series = {(w.letters, w): Fraction(1) for w in words_up_to(max_weight)}
    z = dict(series)
    del z[((), Word())]
    log_series: dict[tuple[Composition, Word], Fraction] = {}
    power: dict[tuple[Composition, Word], Fraction] = {((), Word()): Fraction(1)}
    for k in range(1, max_weight + 1):
        power = _mw_mul(power, z, max_weight)
        if not power:
            break
        scale = Fraction((-1) ** (k - 1), k)
        for key, c in power.items():
            total = log_series.get(key, Fraction(0)) + c * scale
            if total:
                log_series[key] = total
            elif key in log_series:
                del log_series[key]
    expected: dict[tuple[Composition, Word], Fraction] = {}
    for w in words_up_to(max_weight, include_empty=False):
        for x, c in pi1(w).terms.items():
            key = (w.letters, x)
            total = expected.get(key, Fraction(0)) + c
            if total:
                expected[key] = total
            elif key in expected:
                del expected[key]
    ok_log = log_series == expected
    results.append(
        (
            "log-series",
            ok_log,
            "termwise log regroups over the primitive projection"
            if ok_log
            else "log expansion disagrees with the primitive regrouping",
        )
    )

    # (c) closing identity in QSym (x) Sym
    target = {
        (w.letters, w.letters): Fraction(1) for w in words_up_to(max_weight)
    }
    for pair in ("stuffle", "L", "R"):
        dual_fn, primal_fn, _ = _PAIR_FAMILIES[pair]
        acc: dict[tuple[Composition, Composition], Fraction] = {((), ()): Fraction(1)}
        for l in lyndon_decreasing(max_weight):
            dual_terms = encode_M(dual_fn(l)).terms
            primal_terms = encode_S(primal_fn(l)).terms
            m = l.weight
            factor: dict[tuple[Composition, Composition], Fraction] = {
                ((), ()): Fraction(1)
            }
            dual_pow: dict[Composition, Fraction] = {(): Fraction(1)}
            primal_pow: dict[Composition, Fraction] = {(): Fraction(1)}
            k = 0
            while (k + 1) * m <= max_weight:
                k += 1
                nxt: dict[Composition, Fraction] = {}
                for i, c1 in dual_pow.items():
                    for j, c2 in dual_terms.items():
                        for comp, n in m_star(i, j):
                            nxt[comp] = nxt.get(comp, Fraction(0)) + c1 * c2 * n
                dual_pow = {c: v for c, v in nxt.items() if v}
                nxt2: dict[Composition, Fraction] = {}
                for i, c1 in primal_pow.items():
                    for j, c2 in primal_terms.items():
                        nxt2[i + j] = nxt2.get(i + j, Fraction(0)) + c1 * c2
                primal_pow = {c: v for c, v in nxt2.items() if v}
                scale = Fraction(1, factorial(k))
                for i, c1 in dual_pow.items():
                    for j, c2 in primal_pow.items():
                        key = (i, j)
                        factor[key] = factor.get(key, Fraction(0)) + c1 * c2 * scale
            acc = _ms_mul(acc, factor, max_weight)
        ok = acc == target
        results.append(
            (
                f"closing-identity-{pair}",
                ok,
                "ordered exponential product matches sum M_w S_w"
                if ok
                else "ordered exponential product disagrees with sum M_w S_w",
            )
        )
    return results
