"""Dual PBW bases on the word algebra and the generating-series machinery
behind them.

Four dual systems are built here, all indexed by words through their
decreasing Lyndon factorizations:

* (p_w, s_w): the classical shuffle-side pair.  p brackets letters along
  standard factorizations; s follows the divided-power shuffle recursion.
* (Pi_w, Sigma_w): the quasi-shuffle pair.  Letters are sent to their
  primitive projections pi1(y_n); the dual family Sigma is *defined* by
  solving the graded duality system <Pi_u, Sigma_v> = delta on each weight
  component.
* (Pi^L, Sigma^L) and (Pi^R, Sigma^R): same construction seeded with the
  primitive elements L_n and R_n coming from the logarithmic derivatives of
  the letter generating series.

The series side lives in `TSeries`, a t-truncated power series with
polynomial coefficients: the letter series, its inverse, the L/R series,
their higher-derivative analogues, and truncated log/ad-exponentials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .lyndon import is_lyndon, lyndon_factorization, standard_factorization
from .ncpoly import NCPolynomial
from .words import Word, compositions_of, words_of_weight

FAMILIES = ("p", "s", "Pi", "Sigma", "PiL", "SigmaL", "PiR", "SigmaR")


def _bracket(a: NCPolynomial, b: NCPolynomial) -> NCPolynomial:
    return a * b - b * a


def _y(n: int) -> NCPolynomial:
    return NCPolynomial.word(Word((n,)))


# ---------------------------------------------------------------------------
# primitive projection for the quasi-shuffle coproduct
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _pi1_word(letters: tuple) -> NCPolynomial:
    # pi1(w) = sum over ordered tuples (u_1..u_k) of nonempty words,
    #          ((-1)^(k-1)/k) <w | u_1 st ... st u_k> u_1...u_k
    # (k = 1 contributes w itself).  Tuples are walked depth-first while the
    # running quasi-shuffle product is accumulated.
    if not letters:
        return NCPolynomial.one()
    w = Word(letters)
    n = w.weight
    acc: dict[Word, Fraction] = {}

    def rec(remaining: int, k: int, prod_poly: NCPolynomial, concat: tuple) -> None:
        if remaining == 0:
            c = prod_poly.coeff(w)
            if c:
                key = Word(concat)
                acc[key] = acc.get(key, Fraction(0)) + c * Fraction((-1) ** (k - 1), k)
            return
        for m in range(1, remaining + 1):
            for comp in compositions_of(m):
                rec(remaining - m, k + 1, prod_poly.stuffle(NCPolynomial.word(comp)), concat + comp)

    rec(n, 0, NCPolynomial.one(), ())
    return NCPolynomial(acc)


def pi1(p: NCPolynomial | Word) -> NCPolynomial:
    """Projection onto the primitive part of the quasi-shuffle Hopf algebra,
    extended linearly from words."""
    if isinstance(p, Word):
        return _pi1_word(p.letters)
    out = NCPolynomial.zero()
    for w, c in p.terms.items():
        out = out + _pi1_word(w.letters) * c
    return out


def pi1_inverse_check(w: Word) -> bool:
    """Checks that w equals
    sum_k (1/k!) sum <w | u_1 st ... st u_k> pi1(u_1)...pi1(u_k)."""
    n = w.weight
    if n == 0:
        return True
    acc = NCPolynomial.zero()

    def rec(remaining: int, k: int, prod_poly: NCPolynomial, pi_product: NCPolynomial) -> None:
        nonlocal acc
        if remaining == 0:
            c = prod_poly.coeff(w)
            if c:
                acc = acc + pi_product * Fraction(c, factorial(k))
            return
        for m in range(1, remaining + 1):
            for comp in compositions_of(m):
                rec(
                    remaining - m,
                    k + 1,
                    prod_poly.stuffle(NCPolynomial.word(comp)),
                    pi_product * _pi1_word(comp),
                )

    rec(n, 0, NCPolynomial.one(), NCPolynomial.one())
    return acc == NCPolynomial.word(w)


# ---------------------------------------------------------------------------
# letter generating series: inverse, L/R elements
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _x_list(n_max: int) -> tuple[NCPolynomial, ...]:
    # X_0 = 1 and X_n = -sum_{i=1..n} y_i X_{n-i}, the coefficients of the
    # multiplicative inverse of 1 + sum y_n t^n.
    xs = [NCPolynomial.one()]
    for n in range(1, n_max + 1):
        total = NCPolynomial.zero()
        for i in range(1, n + 1):
            total = total + _y(i) * xs[n - i]
        xs.append(-total)
    return tuple(xs)


def x_elements(n_max: int) -> list[NCPolynomial]:
    """[X_1, ..., X_n] with X_0 = 1 implicit."""
    return list(_x_list(n_max)[1:])


@lru_cache(maxsize=None)
def _l_list(n_max: int) -> tuple[NCPolynomial, ...]:
    xs = _x_list(n_max)
    out = []
    for n in range(1, n_max + 1):
        total = NCPolynomial.zero()
        for i in range(n):
            total = total + (_y(i + 1) * xs[n - 1 - i]) * (i + 1)
        out.append(total)
    return tuple(out)


@lru_cache(maxsize=None)
def _r_list(n_max: int) -> tuple[NCPolynomial, ...]:
    xs = _x_list(n_max)
    out = []
    for n in range(1, n_max + 1):
        total = NCPolynomial.zero()
        for i in range(n):
            total = total + (xs[n - 1 - i] * _y(i + 1)) * (i + 1)
        out.append(total)
    return tuple(out)


def l_elements(n_max: int) -> list[NCPolynomial]:
    """[L_1, ..., L_n]: L_n = sum_{i=0}^{n-1} (i+1) y_{i+1} X_{n-1-i}."""
    return list(_l_list(n_max))


def r_elements(n_max: int) -> list[NCPolynomial]:
    """[R_1, ..., R_n]: R_n = sum_{i=0}^{n-1} (i+1) X_{n-1-i} y_{i+1}."""
    return list(_r_list(n_max))


def y_in_r_expansion(n: int, use_partial_sums: bool = True) -> bool:
    """Checks y_n = sum over compositions J of n of R^J / pi_u(J), where
    R^J = R_{j_1}...R_{j_k} and pi_u is the partial-sum product.

    With use_partial_sums=False the plain part product pi(J) is used instead;
    that variant fails already at n = 2 and is kept as a negative control.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rs = _r_list(n)
    total = NCPolynomial.zero()
    for comp in compositions_of(n):
        term = NCPolynomial.one()
        for j in comp:
            term = term * rs[j - 1]
        acc, denom = 0, 1
        for p in comp:
            if use_partial_sums:
                acc += p
                denom *= acc
            else:
                denom *= p
        total = total + term / denom
    return total == _y(n)


# ---------------------------------------------------------------------------
# the four PBW families
# ---------------------------------------------------------------------------

def _pbw(letters: tuple, letter_image, cache: dict) -> NCPolynomial:
    # letters -> image; Lyndon -> bracket over the standard factorization;
    # otherwise the concatenation product over the decreasing factorization.
    got = cache.get(letters)
    if got is not None:
        return got
    w = Word(letters)
    if len(letters) == 0:
        out = NCPolynomial.one()
    elif len(letters) == 1:
        out = letter_image(letters[0])
    elif is_lyndon(w):
        s, r = standard_factorization(w)
        out = _bracket(_pbw(s.letters, letter_image, cache), _pbw(r.letters, letter_image, cache))
    else:
        out = NCPolynomial.one()
        for l, mult in lyndon_factorization(w).factors:
            piece = _pbw(l.letters, letter_image, cache)
            for _ in range(mult):
                out = out * piece
    cache[letters] = out
    return out


_P_CACHE: dict[tuple, NCPolynomial] = {}
_PI_CACHE: dict[tuple, NCPolynomial] = {}
_PIL_CACHE: dict[tuple, NCPolynomial] = {}
_PIR_CACHE: dict[tuple, NCPolynomial] = {}


def p_basis(w: Word) -> NCPolynomial:
    return _pbw(w.letters, lambda n: _y(n), _P_CACHE)


def pi_basis(w: Word) -> NCPolynomial:
    return _pbw(w.letters, lambda n: _pi1_word((n,)), _PI_CACHE)


def pi_s_basis(w: Word, side: str) -> NCPolynomial:
    if side == "L":
        return _pbw(w.letters, lambda n: _l_list(n)[n - 1], _PIL_CACHE)
    if side == "R":
        return _pbw(w.letters, lambda n: _r_list(n)[n - 1], _PIR_CACHE)
    raise ValueError(f"side must be 'L' or 'R', got {side!r}")


@lru_cache(maxsize=None)
def _s_cached(letters: tuple) -> NCPolynomial:
    if len(letters) == 0:
        return NCPolynomial.one()
    if len(letters) == 1:
        return NCPolynomial.word(Word(letters))
    w = Word(letters)
    if is_lyndon(w):
        return NCPolynomial.word(Word(letters[:1])) * _s_cached(letters[1:])
    out = NCPolynomial.one()
    denom = 1
    for l, mult in lyndon_factorization(w).factors:
        piece = _s_cached(l.letters)
        for _ in range(mult):
            out = out.shuffle(piece)
        denom *= factorial(mult)
    return out / denom


def s_basis(w: Word) -> NCPolynomial:
    return _s_cached(w.letters)


# ---------------------------------------------------------------------------
# duality solve for the Sigma-type families
# ---------------------------------------------------------------------------

def _invert_matrix(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    m = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(m)]
           for i, row in enumerate(rows)]
    for col in range(m):
        piv = next((r for r in range(col, m) if aug[r][col]), None)
        if piv is None:
            raise ArithmeticError("singular matrix in duality solve")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(m):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[m:] for row in aug]


_PRIMAL_FOR_DUAL = {
    "Sigma": pi_basis,
    "SigmaL": lambda w: pi_s_basis(w, "L"),
    "SigmaR": lambda w: pi_s_basis(w, "R"),
}


@lru_cache(maxsize=None)
def _dual_table(n: int, family: str) -> dict[Word, NCPolynomial]:
    """Solves <primal_u, dual_v> = delta_{u,v} on the weight-n component.

    The primal coefficient matrix over the 2^(n-1) words of weight n is
    inverted exactly; the columns of the inverse are the dual elements."""
    primal = _PRIMAL_FOR_DUAL[family]
    words = words_of_weight(n)
    m = len(words)
    a = [[primal(u).coeff(x) for x in words] for u in words]
    c = _invert_matrix(a)
    return {
        words[j]: NCPolynomial({words[i]: c[i][j] for i in range(m)})
        for j in range(m)
    }


def sigma_basis(w: Word) -> NCPolynomial:
    if w.weight == 0:
        return NCPolynomial.one()
    return _dual_table(w.weight, "Sigma")[w]


def sigma_s_basis(w: Word, side: str) -> NCPolynomial:
    if side not in ("L", "R"):
        raise ValueError(f"side must be 'L' or 'R', got {side!r}")
    if w.weight == 0:
        return NCPolynomial.one()
    return _dual_table(w.weight, f"Sigma{side}")[w]


@dataclass(frozen=True)
class BasisElement:
    index: Word
    family: str
    value: NCPolynomial


def basis_element(family: str, w: Word) -> BasisElement:
    dispatch = {
        "p": p_basis,
        "s": s_basis,
        "Pi": pi_basis,
        "Sigma": sigma_basis,
        "PiL": lambda u: pi_s_basis(u, "L"),
        "PiR": lambda u: pi_s_basis(u, "R"),
        "SigmaL": lambda u: sigma_s_basis(u, "L"),
        "SigmaR": lambda u: sigma_s_basis(u, "R"),
    }
    if family not in dispatch:
        raise ValueError(f"unknown basis family {family!r}; expected one of {FAMILIES}")
    return BasisElement(index=w, family=family, value=dispatch[family](w))


# ---------------------------------------------------------------------------
# truncated power series in t with polynomial coefficients
# ---------------------------------------------------------------------------

class TSeries:
    """Truncated series sum_n c_n t^n with NCPolynomial coefficients.

    `bound` records up to which t-degree the coefficients are trustworthy;
    binary operations propagate the weaker bound, and differentiation loses
    one degree.  Comparisons should use same_up_to.
    """

    __slots__ = ("coeffs", "bound")

    def __init__(self, coeffs: dict[int, NCPolynomial], bound: int):
        self.bound = bound
        self.coeffs = {
            d: p for d, p in coeffs.items() if 0 <= d <= bound and not p.is_zero()
        }

    @classmethod
    def zero(cls, bound: int) -> "TSeries":
        return cls({}, bound)

    @classmethod
    def one(cls, bound: int) -> "TSeries":
        return cls({0: NCPolynomial.one()}, bound)

    def coeff(self, d: int) -> NCPolynomial:
        return self.coeffs.get(d, NCPolynomial.zero())

    def is_zero(self) -> bool:
        return not self.coeffs

    def truncate(self, bound: int) -> "TSeries":
        return TSeries(self.coeffs, min(bound, self.bound))

    def __add__(self, other: "TSeries") -> "TSeries":
        bound = min(self.bound, other.bound)
        out = {d: p for d, p in self.coeffs.items() if d <= bound}
        for d, p in other.coeffs.items():
            if d <= bound:
                out[d] = out.get(d, NCPolynomial.zero()) + p
        return TSeries(out, bound)

    def __sub__(self, other: "TSeries") -> "TSeries":
        return self + (-other)

    def __neg__(self) -> "TSeries":
        return TSeries({d: -p for d, p in self.coeffs.items()}, self.bound)

    def __mul__(self, other):
        if not isinstance(other, TSeries):
            return TSeries({d: p * other for d, p in self.coeffs.items()}, self.bound)
        bound = min(self.bound, other.bound)
        out: dict[int, NCPolynomial] = {}
        for d1, p1 in self.coeffs.items():
            for d2, p2 in other.coeffs.items():
                d = d1 + d2
                if d <= bound:
                    out[d] = out.get(d, NCPolynomial.zero()) + p1 * p2
        return TSeries(out, bound)

    def __rmul__(self, scalar) -> "TSeries":
        return TSeries({d: p * scalar for d, p in self.coeffs.items()}, self.bound)

    def derivative(self) -> "TSeries":
        return TSeries({d - 1: p * d for d, p in self.coeffs.items() if d >= 1}, self.bound - 1)

    def log(self) -> "TSeries":
        if self.coeff(0) != NCPolynomial.one():
            raise ValueError("log requires constant coefficient 1")
        z = self - TSeries.one(self.bound)
        out = TSeries.zero(self.bound)
        power = TSeries.one(self.bound)
        for k in range(1, self.bound + 1):
            power = power * z
            if power.is_zero():
                break
            out = out + power * Fraction((-1) ** (k - 1), k)
        return out

    def same_up_to(self, other: "TSeries", degree: int | None = None) -> bool:
        d_max = min(self.bound, other.bound)
        if degree is not None:
            d_max = min(d_max, degree)
        return all(self.coeff(d) == other.coeff(d) for d in range(d_max + 1))

    def __repr__(self) -> str:
        body = ", ".join(f"t^{d}: {p!s}" for d, p in sorted(self.coeffs.items()))
        return f"TSeries(bound={self.bound}; {body})"


def y_series(bound: int) -> TSeries:
    """1 + sum_{n>=1} y_n t^n, truncated at the given degree."""
    coeffs = {0: NCPolynomial.one()}
    coeffs.update({n: _y(n) for n in range(1, bound + 1)})
    return TSeries(coeffs, bound)


def y_inverse_series(bound: int) -> TSeries:
    xs = _x_list(bound)
    return TSeries({n: xs[n] for n in range(bound + 1)}, bound)


def l_series(bound: int) -> TSeries:
    ls = _l_list(bound + 1)
    return TSeries({n: ls[n] for n in range(bound + 1)}, bound)


def r_series(bound: int) -> TSeries:
    rs = _r_list(bound + 1)
    return TSeries({n: rs[n] for n in range(bound + 1)}, bound)


def log_y_series(bound: int) -> TSeries:
    return y_series(bound).log()


def higher_series(k: int, bound: int) -> tuple[TSeries, TSeries]:
    """The order-k analogues of the L/R series, via the recursions
    next = d/dt(previous) + previous * L  (left side)
    next = d/dt(previous) + R * previous  (right side),
    each exact to the requested degree.  The defining identities
    cal_L_k * Y = Y^(k) = Y * cal_R_k are re-verified before returning."""
    if k < 1:
        raise ValueError("k must be >= 1")
    pad = bound + k - 1
    cal_l, cal_r = l_series(pad), r_series(pad)
    for _ in range(k - 1):
        cal_l = cal_l.derivative() + cal_l * l_series(cal_l.bound)
        cal_r = cal_r.derivative() + r_series(cal_r.bound) * cal_r
    cal_l, cal_r = cal_l.truncate(bound), cal_r.truncate(bound)

    y_k = y_series(bound + k)
    for _ in range(k):
        y_k = y_k.derivative()
    y = y_series(bound)
    if not (cal_l * y).same_up_to(y_k, bound) or not (y * cal_r).same_up_to(y_k, bound):
        raise AssertionError(f"higher_series postcondition failed at k={k}, bound={bound}")
    return cal_l, cal_r


def exp_ad(a: TSeries, b: TSeries) -> TSeries:
    """sum_n ad_a^n(b) / n! with ad_a(x) = a x - x a, truncated.

    Finite because a is expected to have no constant coefficient (each ad
    application raises the minimum t-degree)."""
    bound = min(a.bound, b.bound)
    out = b.truncate(bound)
    term = out
    for n in range(1, bound + 1):
        term = a.truncate(bound) * term - term * a.truncate(bound)
        if term.is_zero():
            break
        out = out + term * Fraction(1, factorial(n))
    return out
