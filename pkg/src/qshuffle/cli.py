"""Command-line surface: one binary, eight subcommands, everything on flags.

`verify` sweeps the whole identity suite up to a weight bound and prints a
pass/fail matrix; the other subcommands expose individual operations.  Exit
codes: 0 success, 1 failed check, 2 usage error.  Identical flags produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import bases, factorization, lyndon, ncpoly, symqsym, words
from .ncpoly import NCPolynomial
from .words import Word

WEIGHT_CAP = 8  # 2^(n-1) words per weight; beyond this the sweeps stop being desk-scale
FORMATS = ("text", "json", "csv")


@dataclass
class RunConfig:
    command: str
    max_weight: int = 5
    q_degree: int = 8
    fmt: str = "text"
    seed: int = 0


# ---------------------------------------------------------------------------
# verify sweep
# ---------------------------------------------------------------------------

def _sample_words(rng: random.Random, max_weight: int, count: int) -> list[Word]:
    out = []
    for _ in range(count):
        n = rng.randint(1, max_weight)
        parts = []
        while n > 0:
            p = rng.randint(1, n)
            parts.append(p)
            n -= p
        out.append(Word(parts))
    return out


def _check_words_refinements(w_max: int, rng) -> tuple[bool, str]:
    for comp in words.compositions_up_to(w_max):
        refs = words.refinements(comp)
        if len(refs) != words.refinement_count(comp):
            return False, f"refinement count wrong at {comp}"
        for j, blocks in refs:
            if tuple(x for b in blocks for x in b) != j:
                return False, f"blocks do not reconstruct {j}"
            if sum(j) != sum(comp):
                return False, f"weight not preserved at {j}"
        if words.mirror(words.mirror(comp)) != comp:
            return False, f"mirror not involutive at {comp}"
    return True, f"counts, blocks and mirror over all compositions of weight <= {w_max}"


def _check_words_roundtrip(w_max: int, rng) -> tuple[bool, str]:
    for w in words.words_up_to(w_max):
        if words.parse_word(words.word_str(w)) != w:
            return False, f"text round trip fails at {w}"
        if Word(w.letters) != w:
            return False, f"composition round trip fails at {w}"
    return True, f"text and composition round trips over all words of weight <= {w_max}"


def _check_lyndon_counts(w_max: int, rng) -> tuple[bool, str]:
    ws = lyndon.lyndon_up_to(w_max)
    for n in range(1, w_max + 1):
        got = sum(1 for w in ws if w.weight == n)
        if got != lyndon.lyndon_count(n):
            return False, f"count mismatch at weight {n}: {got}"
    return True, f"enumeration matches the necklace formula for n <= {w_max}"


def _check_lyndon_factorization(w_max: int, rng) -> tuple[bool, str]:
    for w in words.words_up_to(min(w_max, 6), include_empty=False):
        fac = lyndon.lyndon_factorization(w)
        if fac.word() != w:
            return False, f"reconstruction fails at {w}"
        factors = [l for l, _ in fac.factors]
        if not all(lyndon.is_lyndon(l) for l in factors):
            return False, f"non-Lyndon factor at {w}"
        if any(not a > b for a, b in zip(factors, factors[1:])):
            return False, f"factors not strictly decreasing at {w}"
    for l in lyndon.lyndon_up_to(w_max):
        if len(l) < 2:
            continue
        s, r = lyndon.standard_factorization(l)
        if s * r != l or not lyndon.is_lyndon(s) or not lyndon.is_lyndon(r):
            return False, f"standard factorization broken at {l}"
        if not (s < l < r):
            return False, f"s < l < r fails at {l}"
    return True, "reconstruction, decrease, and standard-factorization properties"


def _check_products(w_max: int, rng) -> tuple[bool, str]:
    sample = _sample_words(rng, min(w_max, 4), 8)
    one = NCPolynomial.one()
    for kind in ("shuffle", "stuffle"):
        for u in sample:
            pu = NCPolynomial.word(u)
            if ncpoly.product(pu, one, kind) != pu or ncpoly.product(one, pu, kind) != pu:
                return False, f"unit law fails for {kind}"
            for v in sample:
                pv = NCPolynomial.word(v)
                ab = ncpoly.product(pu, pv, kind)
                if ab != ncpoly.product(pv, pu, kind):
                    return False, f"{kind} not commutative at {u}, {v}"
                if any(x.weight != u.weight + v.weight for x in ab.terms):
                    return False, f"{kind} not weight-homogeneous at {u}, {v}"
        for _ in range(6):
            u, v, x = (rng.choice(sample) for _ in range(3))
            pu, pv, px = (NCPolynomial.word(t) for t in (u, v, x))
            lhs = ncpoly.product(ncpoly.product(pu, pv, kind), px, kind)
            rhs = ncpoly.product(pu, ncpoly.product(pv, px, kind), kind)
            if lhs != rhs:
                return False, f"{kind} not associative at {u}, {v}, {x}"
    return True, "unit, commutativity, associativity, homogeneity on seeded samples"


def _check_coproducts(w_max: int, rng) -> tuple[bool, str]:
    cap = min(w_max, 4)
    for kind in ("concat", "shuffle", "stuffle"):
        for w in words.words_up_to(cap):
            p = NCPolynomial.word(w)
            t = ncpoly.coproduct(p, kind)
            # counit laws
            left = NCPolynomial(
                [(v, c) for (u, v), c in t.terms.items() if len(u) == 0]
            )
            right = NCPolynomial(
                [(u, c) for (u, v), c in t.terms.items() if len(v) == 0]
            )
            if left != p or right != p:
                return False, f"counit law fails for {kind} at {w}"
            # coassociativity via triple expansion
            lhs: dict = {}
            rhs: dict = {}
            for (u, v), c in t.terms.items():
                for (a, b), d in ncpoly.coproduct(NCPolynomial.word(u), kind).terms.items():
                    key = (a, b, v)
                    lhs[key] = lhs.get(key, Fraction(0)) + c * d
                for (a, b), d in ncpoly.coproduct(NCPolynomial.word(v), kind).terms.items():
                    key = (u, a, b)
                    rhs[key] = rhs.get(key, Fraction(0)) + c * d
            lhs = {k: v2 for k, v2 in lhs.items() if v2}
            rhs = {k: v2 for k, v2 in rhs.items() if v2}
            if lhs != rhs:
                return False, f"{kind} coproduct not coassociative at {w}"
    for kind in ("shuffle", "stuffle"):
        ws = words.words_up_to(cap)
        for u in ws:
            for v in ws:
                if u.weight + v.weight > cap:
                    continue
                pu, pv = NCPolynomial.word(u), NCPolynomial.word(v)
                if ncpoly.coproduct(pu * pv, kind) != ncpoly.coproduct(pu, kind) * ncpoly.coproduct(pv, kind):
                    return False, f"{kind} coproduct not a concat morphism at {u}, {v}"
    try:
        ncpoly.coproduct(NCPolynomial.word((1, 1)), "plus")
        return False, "contraction coproduct accepted a length-2 word"
    except ValueError:
        pass
    return True, f"counit, coassociativity, morphism property up to weight {cap}"


def _check_adjunction(w_max: int, rng) -> tuple[bool, str]:
    cap = min(w_max, 4)
    ws = words.words_up_to(cap)
    for kind in ("shuffle", "stuffle"):
        for w in ws:
            t = ncpoly.coproduct(NCPolynomial.word(w), kind)
            for u in ws:
                for v in ws:
                    if u.weight + v.weight != w.weight:
                        continue
                    lhs = t.coeff(u, v)
                    rhs = ncpoly.product(
                        NCPolynomial.word(u), NCPolynomial.word(v), kind
                    ).coeff(w)
                    if lhs != rhs:
                        return False, f"adjunction fails for {kind} at {w}; {u}, {v}"
    return True, f"<coproduct(w), u (x) v> = <w, u * v> exhaustively up to weight {cap}"


def _check_exp_log(w_max: int, rng) -> tuple[bool, str]:
    cap = min(w_max, 4)
    for _ in range(5):
        terms = {}
        for w in _sample_words(rng, cap, 4):
            terms[w] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        p = NCPolynomial(terms)
        if log_exp := ncpoly.log_trunc(ncpoly.exp_trunc(p, cap), cap):
            if log_exp != p.truncate(cap):
                return False, "log(exp(p)) != p"
    return True, f"log/exp round trips on seeded polynomials, weight <= {cap}"


def _check_duality(w_max: int, rng) -> tuple[bool, str]:
    fams = {
        "p/s": (bases.p_basis, bases.s_basis),
        "Pi/Sigma": (bases.pi_basis, bases.sigma_basis),
        "PiL/SigmaL": (lambda w: bases.pi_s_basis(w, "L"), lambda w: bases.sigma_s_basis(w, "L")),
        "PiR/SigmaR": (lambda w: bases.pi_s_basis(w, "R"), lambda w: bases.sigma_s_basis(w, "R")),
    }
    ws = words.words_up_to(w_max, include_empty=False)
    for name, (primal, dual) in fams.items():
        for u in ws:
            for v in ws:
                expected = Fraction(1 if u == v else 0)
                if ncpoly.pairing(primal(u), dual(v)) != expected:
                    return False, f"duality {name} fails at {u}, {v}"
    return True, f"four pairing matrices are the identity up to weight {w_max}"


def _check_primitivity(w_max: int, rng) -> tuple[bool, str]:
    for n in range(1, w_max + 1):
        if not ncpoly.is_primitive(bases.pi1(Word((n,))), "stuffle"):
            return False, f"pi1(y_{n}) not primitive"
    ls, rs = bases.l_elements(w_max), bases.r_elements(w_max)
    for n in range(1, w_max + 1):
        if not ncpoly.is_primitive(ls[n - 1], "stuffle"):
            return False, f"L_{n} not primitive"
        if not ncpoly.is_primitive(rs[n - 1], "stuffle"):
            return False, f"R_{n} not primitive"
    for l in lyndon.lyndon_up_to(min(w_max, 5)):
        if not ncpoly.is_primitive(bases.p_basis(l), "shuffle"):
            return False, f"p_l not shuffle-primitive at {l}"
        if not ncpoly.is_primitive(bases.pi_basis(l), "stuffle"):
            return False, f"Pi_l not primitive at {l}"
        for side in ("L", "R"):
            if not ncpoly.is_primitive(bases.pi_s_basis(l, side), "stuffle"):
                return False, f"Pi^{side}_l not primitive at {l}"
    return True, f"primitive families confirmed up to weight {w_max}"


def _check_series(w_max: int, rng) -> tuple[bool, str]:
    d = w_max
    y = bases.y_series(d)
    yi = bases.y_inverse_series(d)
    one = bases.TSeries.one(d)
    if not (y * yi).same_up_to(one) or not (yi * y).same_up_to(one):
        return False, "Y * Y^-1 != 1"
    xs = [NCPolynomial.one()] + bases.x_elements(d + 1)
    ys = [NCPolynomial.one()] + [NCPolynomial.word((n,)) for n in range(1, d + 2)]
    for n in range(1, d + 2):
        left = NCPolynomial.zero()
        right = NCPolynomial.zero()
        for i in range(n + 1):
            left = left + ys[i] * xs[n - i]
            right = right + xs[i] * ys[n - i]
        if not left.is_zero() or not right.is_zero():
            return False, f"inverse-coefficient relation fails at n={n}"
    ls, rs = bases.l_elements(d + 1), bases.r_elements(d + 1)
    for n in range(1, d + 2):
        s1 = NCPolynomial.zero()
        s2 = NCPolynomial.zero()
        for i in range(n):
            s1 = s1 + ls[i] * ys[n - 1 - i]
            s2 = s2 + ys[n - 1 - i] * rs[i]
        if s1 != ys[n] * n or s2 != ys[n] * n:
            return False, f"n y_n identity fails at n={n}"
    logy = bases.log_y_series(d)
    for n in range(1, d + 1):
        if logy.coeff(n) != bases.pi1(Word((n,))):
            return False, f"log coefficient differs from pi1 at n={n}"
    for k in (1, 2, 3):
        cal_l, cal_r = bases.higher_series(k, d)  # re-verifies its own postcondition
        if not bases.exp_ad(logy, cal_r).same_up_to(cal_l, d):
            return False, f"ad-exponential formula fails at k={k}"
    return True, f"inverse, derivative, and conjugation identities to degree {d}"


def _check_y_in_r(w_max: int, rng) -> tuple[bool, str]:
    for n in range(1, w_max + 1):
        if not bases.y_in_r_expansion(n):
            return False, f"partial-sum expansion fails at n={n}"
    if bases.y_in_r_expansion(2, use_partial_sums=False):
        return False, "plain part-product variant unexpectedly passes at n=2"
    return True, f"letters expand over R-monomials with partial-sum weights, n <= {w_max}"


def _check_pi1(w_max: int, rng) -> tuple[bool, str]:
    cap = min(w_max, 4)
    for w in words.words_up_to(cap):
        if not bases.pi1_inverse_check(w):
            return False, f"inverse expansion fails at {w}"
    return True, f"inverse expansion reproduces every word of weight <= {cap}"


def _check_sym_roundtrips(w_max: int, rng) -> tuple[bool, str]:
    for basis in ("Lambda", "Psi", "Phi", "Rib"):
        for comp in words.compositions_up_to(w_max):
            e = symqsym.SymElement.single(comp, "S")
            if symqsym.convert(symqsym.convert(e, basis), "S") != e:
                return False, f"S <-> {basis} round trip fails at {comp}"
            b = symqsym.SymElement.single(comp, basis)
            if symqsym.convert(symqsym.convert(b, "S"), basis) != b:
                return False, f"{basis} <-> S round trip fails at {comp}"
    for basis in ("M", "F"):
        for comp in words.compositions_up_to(w_max):
            e = symqsym.QSymElement.single(comp, basis)
            other = "F" if basis == "M" else "M"
            if symqsym.convert(symqsym.convert(e, other), basis) != e:
                return False, f"{basis} <-> {other} round trip fails at {comp}"
    one_s = symqsym.SymElement.single((1,), "S")
    for basis in ("Lambda", "Psi", "Phi"):
        if symqsym.convert(symqsym.SymElement.single((1,), basis), "S") != one_s:
            return False, f"degree-one generators differ in {basis}"
    return True, f"all basis changes invert exactly up to weight {w_max}"


def _check_sym_hopf(w_max: int, rng) -> tuple[bool, str]:
    for basis in ("Psi", "Phi"):
        for n in range(1, w_max + 1):
            x = symqsym.SymElement.single((n,), basis)
            got = symqsym.sym_coproduct(x)
            xs = symqsym.convert(x, "S").terms
            expected: dict = {}
            for comp, c in xs.items():
                for key in ((comp, ()), ((), comp)):
                    expected[key] = expected.get(key, Fraction(0)) + c
            if got != {k: v for k, v in expected.items() if v}:
                return False, f"{basis}_{n} not primitive for the Sym coproduct"
    cap = min(w_max, 4)
    comps = words.compositions_up_to(cap)
    for k in comps:
        t = symqsym.sym_coproduct(symqsym.SymElement.single(k, "S"))
        for i in comps:
            for j in comps:
                if sum(i) + sum(j) != sum(k):
                    continue
                star = symqsym.qsym_product(
                    symqsym.QSymElement.single(i, "M"), symqsym.QSymElement.single(j, "M")
                )
                if t.get((i, j), Fraction(0)) != star.coeff(k):
                    return False, f"Sym/QSym adjunction fails at {k}; {i}, {j}"
    return True, f"power sums primitive to {w_max}; adjunction exhaustive to {cap}"


def _check_ribbon_duality(w_max: int, rng) -> tuple[bool, str]:
    cap = min(w_max, 5)
    comps = words.compositions_up_to(cap)
    for i in comps:
        rib = symqsym.SymElement.single(i, "Rib")
        for j in comps:
            f = symqsym.QSymElement.single(j, "F")
            expected = Fraction(1 if i == j else 0)
            if symqsym.pairing_ext(rib, f) != expected:
                return False, f"ribbon/fundamental duality fails at {i}, {j}"
    return True, f"<Rib_I, F_J> = delta exhaustively up to weight {cap}"


def _check_encodings(w_max: int, rng) -> tuple[bool, str]:
    cap = min(w_max, 4)
    ws = words.words_up_to(cap)
    for u in ws:
        for v in ws:
            if u.weight + v.weight > cap:
                continue
            pu, pv = NCPolynomial.word(u), NCPolynomial.word(v)
            if symqsym.encode_S(pu * pv) != symqsym.encode_S(pu) * symqsym.encode_S(pv):
                return False, f"S encoding not multiplicative at {u}, {v}"
            lhs = symqsym.encode_M(ncpoly.product(pu, pv, "stuffle"))
            if lhs != symqsym.encode_M(pu) * symqsym.encode_M(pv):
                return False, f"M encoding not a quasi-shuffle morphism at {u}, {v}"
    for u in ws:
        got = symqsym.sym_coproduct(symqsym.encode_S(NCPolynomial.word(u)))
        expected: dict = {}
        for (a, b), c in ncpoly.coproduct(NCPolynomial.word(u), "stuffle").terms.items():
            key = (a.letters, b.letters)
            expected[key] = expected.get(key, Fraction(0)) + c
        if got != {k: v for k, v in expected.items() if v}:
            return False, f"S encoding does not intertwine the coproducts at {u}"
    rs = bases.r_elements(w_max)
    for comp in words.compositions_up_to(w_max, include_empty=False):
        r_word = NCPolynomial.one()
        pi_word = NCPolynomial.one()
        for part in comp:
            r_word = r_word * rs[part - 1]
            pi_word = pi_word * bases.pi1(Word((part,)))
        psi = symqsym.convert(symqsym.SymElement.single(comp, "Psi"), "S")
        if symqsym.encode_S(r_word) != psi:
            return False, f"R-monomial encoding misses the first power sums at {comp}"
        phi = symqsym.convert(symqsym.SymElement.single(comp, "Phi"), "S")
        if symqsym.encode_S(pi_word) != phi / words.stats(comp).pi:
            return False, f"pi1-monomial encoding misses the second power sums at {comp}"
    return True, f"word encodings are Hopf morphisms; power-sum images hold to weight {w_max}"


def _check_mirror_oracles(w_max: int, rng) -> tuple[bool, str]:
    cap = min(w_max, 4)
    for comp in words.compositions_up_to(cap):
        lam = symqsym.SymElement.single(comp, "Lambda")
        psi = symqsym.SymElement.single(comp, "Psi")
        phi = symqsym.SymElement.single(comp, "Phi")
        if symqsym.lambda_in_psi_oracle(comp) != symqsym.convert(lam, "Psi"):
            return False, f"corrected Lambda->Psi oracle fails at {comp}"
        if symqsym.psi_in_lambda_oracle(comp) != symqsym.convert(psi, "Lambda"):
            return False, f"Psi->Lambda oracle fails at {comp}"
        if symqsym.lambda_in_phi_oracle(comp) != symqsym.convert(lam, "Phi"):
            return False, f"corrected Lambda->Phi oracle fails at {comp}"
        if symqsym.phi_in_lambda_oracle(comp) != symqsym.convert(phi, "Lambda"):
            return False, f"corrected Phi->Lambda oracle fails at {comp}"
    if symqsym.lambda_in_psi_oracle((2,), literal_sign=True) == symqsym.convert(
        symqsym.SymElement.single((2,), "Lambda"), "Psi"
    ):
        return False, "literal printed sign unexpectedly matches at (2)"
    return True, f"mirror-statistics formulas (corrected sign) match to weight {cap}"


def _check_cauchy(w_max: int, rng) -> tuple[bool, str]:
    ok = symqsym.cauchy_check(w_max)
    return ok, f"sum M_I (x) S^I = sum F_J (x) Rib_J up to weight {w_max}"


def _check_hall_littlewood(w_max: int, q_degree: int, rng) -> tuple[bool, str]:
    cap = min(w_max, 3)
    ok = symqsym.hall_littlewood_check(cap, q_degree)
    return ok, f"geometric-alphabet specialization matches mod q^{q_degree}, weight <= {cap}"


def _check_factorization(w_max: int, rng) -> tuple[bool, str]:
    for pair in factorization.PAIRS:
        ok, report = factorization.verify_factorization(w_max, pair)
        if not ok:
            u, v, a, b = report[0]
            return False, f"pair {pair} differs at ({u}, {v}): {a} vs {b}"
    ok, report = factorization.verify_factorization(2, "stuffle", negative_control=True)
    if ok:
        return False, "negative control unexpectedly passes"
    return True, f"all four pairs reproduce the diagonal up to weight {w_max}; control fails"


def _check_characters(w_max: int, rng) -> tuple[bool, str]:
    cap = min(w_max, 4)
    for name, ok, detail in factorization.character_checks(cap):
        if not ok:
            return False, f"{name}: {detail}"
    return True, f"character, log-series, and closing identities up to weight {cap}"


CHECKS = (
    ("words-refinements", _check_words_refinements),
    ("words-roundtrip", _check_words_roundtrip),
    ("lyndon-counts", _check_lyndon_counts),
    ("lyndon-factorization", _check_lyndon_factorization),
    ("products", _check_products),
    ("coproducts", _check_coproducts),
    ("adjunction", _check_adjunction),
    ("exp-log", _check_exp_log),
    ("duality-matrices", _check_duality),
    ("primitivity", _check_primitivity),
    ("series-identities", _check_series),
    ("letters-in-r", _check_y_in_r),
    ("pi1-inverse", _check_pi1),
    ("sym-roundtrips", _check_sym_roundtrips),
    ("sym-hopf", _check_sym_hopf),
    ("ribbon-duality", _check_ribbon_duality),
    ("encodings", _check_encodings),
    ("mirror-oracles", _check_mirror_oracles),
    ("cauchy", _check_cauchy),
    ("hall-littlewood", None),  # needs q_degree; dispatched specially
    ("factorization", _check_factorization),
    ("characters", _check_characters),
)


def run_verify(config: RunConfig, out) -> int:
    rng = random.Random(config.seed)
    rows = []
    for name, fn in CHECKS:
        if name == "hall-littlewood":
            ok, detail = _check_hall_littlewood(config.max_weight, config.q_degree, rng)
        else:
            ok, detail = fn(config.max_weight, rng)
        rows.append({"check": name, "status": "pass" if ok else "fail", "detail": detail})
    failed = [r for r in rows if r["status"] == "fail"]
    if config.fmt == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
    elif config.fmt == "csv":
        writer = csv.writer(out)
        writer.writerow(["check", "status", "detail"])
        for r in rows:
            writer.writerow([r["check"], r["status"], r["detail"]])
    else:
        width = max(len(r["check"]) for r in rows)
        for r in rows:
            out.write(f"{r['status'].upper():4}  {r['check']:<{width}}  {r['detail']}\n")
        out.write(
            f"RESULT: {len(rows) - len(failed)}/{len(rows)} checks passed "
            f"(max weight {config.max_weight}, q degree {config.q_degree}, seed {config.seed})\n"
        )
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# other subcommands
# ---------------------------------------------------------------------------

def _emit_poly(p: NCPolynomial, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(ncpoly.poly_to_json(p)) + "\n")
    elif fmt == "csv":
        writer = csv.writer(out)
        writer.writerow(["word", "coeff"])
        for w in p.support():
            writer.writerow([words.word_str(w), str(p.terms[w])])
    else:
        out.write(ncpoly.poly_str(p) + "\n")


def run_lyndon(config: RunConfig, out) -> int:
    ws = lyndon.lyndon_up_to(config.max_weight)
    if config.fmt == "json":
        out.write(json.dumps([words.word_str(w) for w in ws]) + "\n")
    elif config.fmt == "csv":
        writer = csv.writer(out)
        writer.writerow(["weight", "word"])
        for w in ws:
            writer.writerow([w.weight, words.word_str(w)])
    else:
        for w in ws:
            out.write(words.word_str(w) + "\n")
    return 0


def run_basis(config: RunConfig, family: str, word_text: str, out) -> int:
    w = words.parse_word(word_text)
    elem = bases.basis_element(family, w)
    _emit_poly(elem.value, config.fmt, out)
    return 0


def run_product(config: RunConfig, kind: str, word_texts: list[str], out) -> int:
    if len(word_texts) != 2:
        raise ValueError("product needs exactly two --word arguments")
    p = NCPolynomial.word(words.parse_word(word_texts[0]))
    q = NCPolynomial.word(words.parse_word(word_texts[1]))
    _emit_poly(ncpoly.product(p, q, kind), config.fmt, out)
    return 0


def run_convert(config: RunConfig, source: str, target: str, element_text: str, out) -> int:
    x = symqsym.parse_element(element_text, default_basis=source)
    if x.basis != source:
        raise ValueError(f"element tagged {x.basis} but --from says {source}")
    y = symqsym.convert(x, target)
    if config.fmt == "json":
        out.write(json.dumps(symqsym.element_to_json(y)) + "\n")
    elif config.fmt == "csv":
        writer = csv.writer(out)
        writer.writerow(["basis", "composition", "coeff"])
        for comp in y.support():
            writer.writerow([y.basis, words.comp_str(comp), str(y.terms[comp])])
    else:
        out.write(symqsym.element_str(y) + "\n")
    return 0


def run_pair(config: RunConfig, sym_text: str, qsym_text: str, out) -> int:
    x = symqsym.parse_element(sym_text)
    y = symqsym.parse_element(qsym_text)
    if not isinstance(x, symqsym.SymElement) or not isinstance(y, symqsym.QSymElement):
        raise ValueError("--sym must use an S/Lambda/Psi/Phi/Rib basis and --qsym an M/F basis")
    value = symqsym.pairing_ext(x, y)
    if config.fmt == "json":
        out.write(json.dumps({"value": str(value)}) + "\n")
    else:
        out.write(str(value) + "\n")
    return 0


def run_factorize(config: RunConfig, pair: str, negative_control: bool, out) -> int:
    ok, report = factorization.verify_factorization(
        config.max_weight, pair, negative_control=negative_control
    )
    if config.fmt == "json":
        payload = {
            "pair": pair,
            "max_weight": config.max_weight,
            "negative_control": negative_control,
            "equal": ok,
            "discrepancies": [
                {
                    "left": words.word_str(u),
                    "right": words.word_str(v),
                    "diagonal": str(a),
                    "product": str(b),
                }
                for u, v, a, b in report
            ],
        }
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        if ok:
            out.write(
                f"OK: pair {pair} reproduces the diagonal series up to weight {config.max_weight}\n"
            )
        else:
            out.write(
                f"MISMATCH: pair {pair} differs from the diagonal series "
                f"(showing up to {len(report)} terms)\n"
            )
            for u, v, a, b in report:
                out.write(
                    f"  ({words.word_str(u)}) (x) ({words.word_str(v)}): "
                    f"diagonal {a}, product {b}\n"
                )
    return 0 if ok else 1


def run_hl_check(config: RunConfig, out) -> int:
    ok = symqsym.hall_littlewood_check(config.max_weight, config.q_degree)
    if config.fmt == "json":
        out.write(
            json.dumps(
                {"max_weight": config.max_weight, "q_degree": config.q_degree, "equal": ok}
            )
            + "\n"
        )
    else:
        verdict = "OK" if ok else "MISMATCH"
        out.write(
            f"{verdict}: ordered-product coefficients vs geometric specialization, "
            f"weight <= {config.max_weight}, mod q^{config.q_degree}\n"
        )
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qshuffle",
        description="Exact-arithmetic shuffle/quasi-shuffle Hopf algebras, "
        "Lyndon dual bases, Sym/QSym, and factorization checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--max-weight", type=int, default=5)
        p.add_argument("--q-degree", type=int, default=8)
        p.add_argument("--format", choices=FORMATS, default="text")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument(
            "--unsafe-weight",
            action="store_true",
            help=f"allow --max-weight above the default cap of {WEIGHT_CAP}",
        )

    add_common(sub.add_parser("lyndon", help="list Lyndon words by weight"))

    p_basis_cmd = sub.add_parser("basis", help="print one dual-basis element")
    add_common(p_basis_cmd)
    p_basis_cmd.add_argument("--family", required=True, choices=bases.FAMILIES)
    p_basis_cmd.add_argument("--word", required=True)

    p_product = sub.add_parser("product", help="multiply two words")
    add_common(p_product)
    p_product.add_argument("--kind", choices=ncpoly.PRODUCT_KINDS, default="stuffle")
    p_product.add_argument("--word", action="append", required=True)

    p_convert = sub.add_parser("convert", help="change the basis of an element")
    add_common(p_convert)
    p_convert.add_argument("--from", dest="source", required=True,
                           choices=symqsym.SYM_BASES + symqsym.QSYM_BASES)
    p_convert.add_argument("--to", dest="target", required=True,
                           choices=symqsym.SYM_BASES + symqsym.QSYM_BASES)
    p_convert.add_argument("--element", required=True)

    p_pair = sub.add_parser("pair", help="pair a Sym element with a QSym element")
    add_common(p_pair)
    p_pair.add_argument("--sym", required=True)
    p_pair.add_argument("--qsym", required=True)

    add_common(sub.add_parser("verify", help="run the full identity suite"))

    p_fact = sub.add_parser("factorize", help="check a diagonal-series factorization")
    add_common(p_fact)
    p_fact.add_argument("--pair", choices=factorization.PAIRS, default="stuffle")
    p_fact.add_argument("--negative-control", action="store_true")

    add_common(sub.add_parser("hl-check", help="check the q-specialization identity"))

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.max_weight < 0:
        parser.error("--max-weight must be nonnegative")
    if args.max_weight > WEIGHT_CAP and not args.unsafe_weight:
        parser.error(
            f"--max-weight {args.max_weight} exceeds the cap of {WEIGHT_CAP}; "
            "pass --unsafe-weight to override"
        )
    if args.q_degree < 1:
        parser.error("--q-degree must be >= 1")

    config = RunConfig(
        command=args.command,
        max_weight=args.max_weight,
        q_degree=args.q_degree,
        fmt=args.format,
        seed=args.seed,
    )
    out = sys.stdout
    try:
        if args.command == "lyndon":
            return run_lyndon(config, out)
        if args.command == "basis":
            return run_basis(config, args.family, args.word, out)
        if args.command == "product":
            return run_product(config, args.kind, args.word, out)
        if args.command == "convert":
            return run_convert(config, args.source, args.target, args.element, out)
        if args.command == "pair":
            return run_pair(config, args.sym, args.qsym, out)
        if args.command == "verify":
            return run_verify(config, out)
        if args.command == "factorize":
            return run_factorize(config, args.pair, args.negative_control, out)
        if args.command == "hl-check":
            return run_hl_check(config, out)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
