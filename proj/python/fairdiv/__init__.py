"""Fair division of indivisible goods: exact oracles and allocation procedures.

Instances and allocations are plain dicts in the same JSON layout the CLI
reads and writes. Rational values appear as ints or "p/q" strings; use
``to_fraction`` to convert.
"""

import json
from fractions import Fraction

from ._core import (
    BudgetExceeded,
    FairDivError,
    InvalidInstance,
    NonTermination,
    RejectionLimit,
    UnsupportedValuation,
)
from . import _core

__all__ = [
    "BudgetExceeded",
    "FairDivError",
    "InvalidInstance",
    "NonTermination",
    "RejectionLimit",
    "UnsupportedValuation",
    "check",
    "find_fair",
    "generate",
    "maximin_share",
    "solve",
    "to_fraction",
]


def to_fraction(value):
    """Int or "p/q" string to Fraction."""
    return Fraction(value)


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def generate(kind, n=2, m=4, seed=0, allow_zero_b=True, max_value=9,
             monotone="any", normalized="yes", rejection_limit=100_000):
    return json.loads(_core.generate(kind, n, m, seed, allow_zero_b, max_value,
                                     monotone, normalized, rejection_limit))


def solve(instance, algo, leftover_owner=0, trace=False):
    """Run "maf", "ccg" or "rrr". With trace=True returns (allocation, trace text)."""
    allocation, text = _core.solve(_text(instance), algo, leftover_owner)
    allocation = json.loads(allocation)
    return (allocation, text) if trace else allocation


def check(instance, allocation, notion):
    """Report dict for notion in efx, efx+, pmms, mms."""
    return json.loads(_core.check(_text(instance), _text(allocation), notion))


def maximin_share(instance, agent, items, k):
    return Fraction(_core.maximin_share(_text(instance), agent, list(items), k))


def find_fair(instance, notion):
    """(first allocation satisfying notion or None, allocations scanned)."""
    found, scanned = _core.find_fair(_text(instance), notion)
    return (json.loads(found) if found is not None else None), scanned
