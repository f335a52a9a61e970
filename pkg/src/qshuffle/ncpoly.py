"""Noncommutative polynomials over the indexed alphabet with exact rational
coefficients.

Carries the three products (concatenation, shuffle, quasi-shuffle), the four
coproducts (deconcatenation, shuffle, quasi-shuffle, and the letterwise
contraction coproduct), the counit, the word pairing, and weight-truncated
exp/log.  Coefficients are `fractions.Fraction`, so everything is exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .words import Word, sort_key, word_str

PRODUCT_KINDS = ("concat", "shuffle", "stuffle")
COPRODUCT_KINDS = ("concat", "shuffle", "stuffle", "plus")


def _as_word(w) -> Word:
    return w if isinstance(w, Word) else Word(w)


def _as_coeff(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class NCPolynomial:
    """Finite word -> rational map; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        cleaned: dict[Word, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for w, c in items:
                c = _as_coeff(c)
                if c:
                    w = _as_word(w)
                    cur = cleaned.get(w)
                    total = c if cur is None else cur + c
                    if total:
                        cleaned[w] = total
                    elif cur is not None:
                        del cleaned[w]
        self.terms = cleaned

    @classmethod
    def zero(cls) -> "NCPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "NCPolynomial":
        return cls({Word(): 1})

    @classmethod
    def word(cls, w, coeff=1) -> "NCPolynomial":
        return cls({_as_word(w): coeff})

    def coeff(self, w) -> Fraction:
        return self.terms.get(_as_word(w), Fraction(0))

    def counit(self) -> Fraction:
        return self.terms.get(Word(), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def max_weight(self) -> int:
        return max((w.weight for w in self.terms), default=0)

    def support(self) -> list[Word]:
        return sorted(self.terms, key=sort_key)

    def truncate(self, max_weight: int) -> "NCPolynomial":
        return NCPolynomial({w: c for w, c in self.terms.items() if w.weight <= max_weight})

    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        out = dict(self.terms)
        for w, c in other.terms.items():
            total = out.get(w, Fraction(0)) + c
            if total:
                out[w] = total
            elif w in out:
                del out[w]
        p = NCPolynomial.__new__(NCPolynomial)
        p.terms = out
        return p

    def __sub__(self, other: "NCPolynomial") -> "NCPolynomial":
        return self + (-other)

    def __neg__(self) -> "NCPolynomial":
        p = NCPolynomial.__new__(NCPolynomial)
        p.terms = {w: -c for w, c in self.terms.items()}
        return p

    def __mul__(self, other):
        if isinstance(other, NCPolynomial):
            return product(self, other, "concat")
        return self._scaled(other)

    def __rmul__(self, scalar):
        return self._scaled(scalar)

    def __truediv__(self, scalar):
        return self._scaled(Fraction(1, 1) / _as_coeff(scalar))

    def _scaled(self, scalar) -> "NCPolynomial":
        scalar = _as_coeff(scalar)
        if not scalar:
            return NCPolynomial()
        p = NCPolynomial.__new__(NCPolynomial)
        p.terms = {w: c * scalar for w, c in self.terms.items()}
        return p

    def shuffle(self, other: "NCPolynomial") -> "NCPolynomial":
        return product(self, other, "shuffle")

    def stuffle(self, other: "NCPolynomial") -> "NCPolynomial":
        return product(self, other, "stuffle")

    def __eq__(self, other) -> bool:
        return isinstance(other, NCPolynomial) and self.terms == other.terms

    def __repr__(self) -> str:
        return f"NCPolynomial({poly_str(self)!r})"

    def __str__(self) -> str:
        return poly_str(self)


# ---------------------------------------------------------------------------
# word-level product kernels (cached; coefficients are plain ints)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def shuffle_words(u: tuple, v: tuple) -> tuple:
    """xu sh yv = x(u sh yv) + y(xu sh v); returns ((word, coeff), ...)."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: dict[tuple, int] = {}
    for rest, c in shuffle_words(u[1:], v):
        k = (u[0],) + rest
        out[k] = out.get(k, 0) + c
    for rest, c in shuffle_words(u, v[1:]):
        k = (v[0],) + rest
        out[k] = out.get(k, 0) + c
    return tuple(out.items())


@lru_cache(maxsize=None)
def stuffle_words(u: tuple, v: tuple) -> tuple:
    """Shuffle recursion plus the contraction term y_i, y_j -> y_{i+j}."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: dict[tuple, int] = {}
    for rest, c in stuffle_words(u[1:], v):
        k = (u[0],) + rest
        out[k] = out.get(k, 0) + c
    for rest, c in stuffle_words(u, v[1:]):
        k = (v[0],) + rest
        out[k] = out.get(k, 0) + c
    for rest, c in stuffle_words(u[1:], v[1:]):
        k = (u[0] + v[0],) + rest
        out[k] = out.get(k, 0) + c
    return tuple(out.items())


def product(p: NCPolynomial, q: NCPolynomial, kind: str) -> NCPolynomial:
    """Bilinear extension of the word-level product of the given kind."""
    if kind not in PRODUCT_KINDS:
        raise ValueError(f"unknown product kind {kind!r}")
    out: dict[Word, Fraction] = {}
    if kind == "concat":
        for u, cu in p.terms.items():
            for v, cv in q.terms.items():
                w = u * v
                total = out.get(w, Fraction(0)) + cu * cv
                if total:
                    out[w] = total
                elif w in out:
                    del out[w]
    else:
        kernel = shuffle_words if kind == "shuffle" else stuffle_words
        for u, cu in p.terms.items():
            for v, cv in q.terms.items():
                c = cu * cv
                for wt, n in kernel(u.letters, v.letters):
                    w = Word(wt)
                    total = out.get(w, Fraction(0)) + c * n
                    if total:
                        out[w] = total
                    elif w in out:
                        del out[w]
    r = NCPolynomial.__new__(NCPolynomial)
    r.terms = out
    return r


# ---------------------------------------------------------------------------
# tensors and coproducts
# ---------------------------------------------------------------------------

class TensorPolynomial:
    """Finite (word, word) -> rational map."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        cleaned: dict[tuple[Word, Word], Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for (u, v), c in items:
                c = _as_coeff(c)
                if c:
                    key = (_as_word(u), _as_word(v))
                    total = cleaned.get(key, Fraction(0)) + c
                    if total:
                        cleaned[key] = total
                    elif key in cleaned:
                        del cleaned[key]
        self.terms = cleaned

    @classmethod
    def tensor(cls, p: NCPolynomial, q: NCPolynomial) -> "TensorPolynomial":
        return cls({(u, v): cu * cv for u, cu in p.terms.items() for v, cv in q.terms.items()})

    def coeff(self, u, v) -> Fraction:
        return self.terms.get((_as_word(u), _as_word(v)), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "TensorPolynomial") -> "TensorPolynomial":
        out = dict(self.terms)
        for k, c in other.terms.items():
            total = out.get(k, Fraction(0)) + c
            if total:
                out[k] = total
            elif k in out:
                del out[k]
        t = TensorPolynomial.__new__(TensorPolynomial)
        t.terms = out
        return t

    def __sub__(self, other: "TensorPolynomial") -> "TensorPolynomial":
        return self + (-other)

    def __neg__(self) -> "TensorPolynomial":
        t = TensorPolynomial.__new__(TensorPolynomial)
        t.terms = {k: -c for k, c in self.terms.items()}
        return t

    def __rmul__(self, scalar) -> "TensorPolynomial":
        scalar = _as_coeff(scalar)
        t = TensorPolynomial.__new__(TensorPolynomial)
        t.terms = {k: c * scalar for k, c in self.terms.items()} if scalar else {}
        return t

    def __mul__(self, other):
        # componentwise concatenation; the product of the tensor-square algebra
        if not isinstance(other, TensorPolynomial):
            return self.__rmul__(other)
        out: dict[tuple[Word, Word], Fraction] = {}
        for (u1, v1), c1 in self.terms.items():
            for (u2, v2), c2 in other.terms.items():
                key = (u1 * u2, v1 * v2)
                total = out.get(key, Fraction(0)) + c1 * c2
                if total:
                    out[key] = total
                elif key in out:
                    del out[key]
        t = TensorPolynomial.__new__(TensorPolynomial)
        t.terms = out
        return t

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorPolynomial) and self.terms == other.terms

    def __repr__(self) -> str:
        items = sorted(self.terms.items(), key=lambda kv: (sort_key(kv[0][0]), sort_key(kv[0][1])))
        body = " + ".join(f"{c}·({word_str(u)})⊗({word_str(v)})" for (u, v), c in items)
        return f"TensorPolynomial({body or '0'})"


@lru_cache(maxsize=None)
def _letter_coproduct(a: int, kind: str) -> tuple:
    empty: tuple = ()
    pairs = [(((a,), empty), 1), ((empty, (a,)), 1)]
    if kind == "stuffle":
        pairs.extend((((i,), (a - i,)), 1) for i in range(1, a))
    return tuple(pairs)


@lru_cache(maxsize=None)
def _word_coproduct(letters: tuple, kind: str) -> tuple:
    """Coproduct of a single word for the shuffle/stuffle kinds, extended as a
    morphism for concatenation."""
    pairs: dict[tuple[tuple, tuple], int] = {((), ()): 1}
    for a in letters:
        nxt: dict[tuple[tuple, tuple], int] = {}
        for (u, v), c in pairs.items():
            for (x, y), d in _letter_coproduct(a, kind):
                key = (u + x, v + y)
                nxt[key] = nxt.get(key, 0) + c * d
        pairs = nxt
    return tuple(pairs.items())


def coproduct(p: NCPolynomial, kind: str) -> TensorPolynomial:
    """The coproduct of the given kind.

    "concat" is deconcatenation, "shuffle"/"stuffle" act on letters and extend
    multiplicatively, and "plus" is the contraction coproduct
    y_n -> sum y_i (x) y_{n-i}, defined on single letters only (it is not a
    morphism for concatenation, so extending it silently would be wrong).
    """
    if kind not in COPRODUCT_KINDS:
        raise ValueError(f"unknown coproduct kind {kind!r}")
    out: dict[tuple[Word, Word], Fraction] = {}

    def bump(u: tuple, v: tuple, c: Fraction) -> None:
        key = (Word(u), Word(v))
        total = out.get(key, Fraction(0)) + c
        if total:
            out[key] = total
        elif key in out:
            del out[key]

    for w, c in p.terms.items():
        ls = w.letters
        if kind == "concat":
            for i in range(len(ls) + 1):
                bump(ls[:i], ls[i:], c)
        elif kind == "plus":
            if len(ls) != 1:
                raise ValueError(
                    f"the contraction coproduct is only defined on letters, got {word_str(w)!r}"
                )
            for i in range(1, ls[0]):
                bump((i,), (ls[0] - i,), c)
        else:
            for (u, v), n in _word_coproduct(ls, kind):
                bump(u, v, c * n)
    t = TensorPolynomial.__new__(TensorPolynomial)
    t.terms = out
    return t


def pairing(p: NCPolynomial, q: NCPolynomial) -> Fraction:
    """Word-basis bilinear form: sum over words of the coefficient products."""
    small, large = (p.terms, q.terms) if len(p.terms) <= len(q.terms) else (q.terms, p.terms)
    total = Fraction(0)
    for w, c in small.items():
        d = large.get(w)
        if d:
            total += c * d
    return total


def pairing_tensor(s: TensorPolynomial, t: TensorPolynomial) -> Fraction:
    small, large = (s.terms, t.terms) if len(s.terms) <= len(t.terms) else (t.terms, s.terms)
    total = Fraction(0)
    for k, c in small.items():
        d = large.get(k)
        if d:
            total += c * d
    return total


def is_primitive(p: NCPolynomial, kind: str) -> bool:
    expected = TensorPolynomial.tensor(p, NCPolynomial.one()) + TensorPolynomial.tensor(
        NCPolynomial.one(), p
    )
    return coproduct(p, kind) == expected


# ---------------------------------------------------------------------------
# weight-truncated exp / log (concatenation powers)
# ---------------------------------------------------------------------------

def exp_trunc(p: NCPolynomial, max_weight: int) -> NCPolynomial:
    """sum p^k / k!, discarding all words of weight > max_weight.

    Requires the empty-word coefficient of p to vanish; grading then makes the
    sum finite.
    """
    if p.counit() != 0:
        raise ValueError("exp_trunc requires a vanishing empty-word coefficient")
    base = p.truncate(max_weight)
    out = NCPolynomial.one()
    term = NCPolynomial.one()
    k = 0
    while True:
        k += 1
        term = (term * base).truncate(max_weight) / k
        if term.is_zero():
            return out
        out = out + term


def log_trunc(q: NCPolynomial, max_weight: int) -> NCPolynomial:
    """sum (-1)^(k-1) (q - 1)^k / k, truncated by weight.

    Requires the empty-word coefficient of q to equal 1.
    """
    if q.counit() != 1:
        raise ValueError("log_trunc requires an empty-word coefficient equal to 1")
    z = (q - NCPolynomial.one()).truncate(max_weight)
    out = NCPolynomial.zero()
    power = NCPolynomial.one()
    for k in range(1, max_weight + 1):
        power = (power * z).truncate(max_weight)
        if power.is_zero():
            break
        out = out + power * Fraction((-1) ** (k - 1), k)
    return out


# ---------------------------------------------------------------------------
# canonical text / JSON forms
# ---------------------------------------------------------------------------

def poly_str(p: NCPolynomial) -> str:
    """Canonical text form, terms sorted by (weight, parts),
    e.g. "1 + 2·[1 1] + 1/2·[2]"."""
    if p.is_zero():
        return "0"
    pieces = []
    for w in p.support():
        c = p.terms[w]
        mag = -c if c < 0 else c
        if len(w) == 0:
            body = str(mag)
        elif mag == 1:
            body = f"[{' '.join(str(a) for a in w.letters)}]"
        else:
            body = f"{mag}·[{' '.join(str(a) for a in w.letters)}]"
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append((" - " if c < 0 else " + ") + body)
    return "".join(pieces)


def parse_poly(s: str) -> NCPolynomial:
    s = s.strip()
    if not s or s == "0":
        return NCPolynomial.zero()
    tokens = s.replace(" - ", " + -").split(" + ")
    terms: list[tuple[Word, Fraction]] = []
    for tok in tokens:
        tok = tok.strip()
        sign = 1
        if tok.startswith("-"):
            sign = -1
            tok = tok[1:].strip()
        if "·" in tok:
            cs, ws = tok.split("·", 1)
            coeff = Fraction(cs.strip())
        elif tok.startswith("["):
            coeff, ws = Fraction(1), tok
        else:
            coeff, ws = Fraction(tok), None
        if ws is None:
            w = Word()
        else:
            inner = ws.strip().strip("[]").strip()
            w = Word() if inner in ("", "e") else Word(int(x) for x in inner.split())
        terms.append((w, sign * coeff))
    return NCPolynomial(terms)


def poly_to_json(p: NCPolynomial) -> list[dict]:
    return [{"word": list(w.letters), "coeff": str(p.terms[w])} for w in p.support()]


def poly_from_json(obj: Iterable[dict]) -> NCPolynomial:
    return NCPolynomial([(Word(item["word"]), Fraction(item["coeff"])) for item in obj])
