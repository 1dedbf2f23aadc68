"""
Utility functions
"""

import hashlib
import json
from typing import Any, List, Sequence, Tuple

from sympy import QQ

from .errors import InterchangeError


def format_rational(value: Any) -> str:
    """Render an exact rational as "p/q" (or "p" for integers)"""
    value = QQ.convert(value)
    numerator, denominator = int(value.numerator), int(value.denominator)
    if denominator == 1:
        return str(numerator)
    return f"{numerator}/{denominator}"


def parse_rational(text: str) -> Any:
    """Parse "p/q" or "p" into a QQ element"""
    if not isinstance(text, str):
        raise InterchangeError(f"Rational must be a string, got {type(text).__name__}")
    parts = text.strip().split('/')
    try:
        numbers = [int(part) for part in parts]
    except ValueError:
        numbers = []
    if len(numbers) == 1:
        return QQ(numbers[0])
    if len(numbers) == 2:
        if numbers[1] == 0:
            raise InterchangeError(f"Zero denominator in '{text}'")
        return QQ(numbers[0], numbers[1])
    raise InterchangeError(f"Not a rational number: '{text}'")


def polynomial_to_terms(poly: Any) -> List[Tuple[List[int], str]]:
    """Serialize a polynomial as (exponent vector, "p/q") pairs in ring order"""
    return [(list(monom), format_rational(coeff)) for monom, coeff in poly.terms()]


def polynomial_from_terms(ring: Any, terms: Sequence[Sequence[Any]]) -> Any:
    """Inverse of polynomial_to_terms"""
    data = {}
    for position, term in enumerate(terms):
        if len(term) != 2:
            raise InterchangeError("Polynomial term must be [exponents, coefficient]", [position])
        monom, coeff = term
        if len(monom) != ring.ngens:
            raise InterchangeError(f"Exponent vector must have {ring.ngens} entries", [position, 0])
        key = tuple(int(e) for e in monom)
        data[key] = data.get(key, QQ.zero) + parse_rational(coeff)
    return ring.from_dict({m: c for m, c in data.items() if c})


def canonical_json(data: Any) -> str:
    """Stable JSON text used for digests and golden comparisons"""
    return json.dumps(data, sort_keys=True, separators=(',', ':'))


def input_digest(data: Any) -> str:
    """SHA-256 of the canonical JSON of an input document"""
    return hashlib.sha256(canonical_json(data).encode('utf-8')).hexdigest()
