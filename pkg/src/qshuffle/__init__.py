"""Exact-arithmetic shuffle and quasi-shuffle Hopf algebras on words, with
Lyndon-indexed dual PBW bases, noncommutative symmetric and quasi-symmetric
functions, and verified factorizations of the diagonal series."""

from .words import Composition, CompositionStats, RelativeStats, Word
from .ncpoly import NCPolynomial, TensorPolynomial, coproduct, pairing, product
from .lyndon import LyndonFactorization, is_lyndon, lyndon_factorization, lyndon_up_to
from .bases import BasisElement, TSeries, basis_element, pi1
from .symqsym import QSeries, QSymElement, SymElement, convert, pairing_ext
from .factorization import GradedTensorSeries, diagonal, factorized_product, verify_factorization

__version__ = "0.1.0"

__all__ = [
    "BasisElement",
    "Composition",
    "CompositionStats",
    "GradedTensorSeries",
    "LyndonFactorization",
    "NCPolynomial",
    "QSeries",
    "QSymElement",
    "RelativeStats",
    "SymElement",
    "TSeries",
    "TensorPolynomial",
    "Word",
    "__version__",
    "basis_element",
    "convert",
    "coproduct",
    "diagonal",
    "factorized_product",
    "is_lyndon",
    "lyndon_factorization",
    "lyndon_up_to",
    "pairing",
    "pairing_ext",
    "pi1",
    "product",
    "verify_factorization",
]
