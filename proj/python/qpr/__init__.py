"""Verification toolkit for the quadratic primitive-root property.

For a prime power q, an admissible quadratic Q(x) = ax^2 + bx + c over F_q
(a != 0, b^2 - 4ac != 0) is tested for whether it maps some primitive root
to a primitive root. The package exposes the exhaustive checker, the
coset-decomposition shortcut for odd q, the three analytic elimination
criteria, and character-sum audit utilities, all backed by the C++ core.
"""

from qpr._core import (
    Field,
    char_sum,
    check,
    classify_survivor,
    coset_verify,
    count_free_pairs,
    criteria,
    factorize,
    generic_bound,
    sample_admissible_triples,
    weil_audit,
)

__all__ = [
    "Field",
    "char_sum",
    "check",
    "classify_survivor",
    "coset_verify",
    "count_free_pairs",
    "criteria",
    "factorize",
    "generic_bound",
    "sample_admissible_triples",
    "weil_audit",
]

__version__ = "0.1.0"
