"""
Polynomial rings and monomial bases

Polynomials are sympy PolyElements over QQ in graded reverse lexicographic order. The
coordinate ring of P^4 has generators x0..x4; computations that need auxiliary parameters
(tangent coordinates a_ijk, second-order coordinates b_ijk, a family parameter t) use an
extended ring whose first five generators are the x-variables.
"""

from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from sympy import QQ
from sympy.polys.orderings import grevlex
from sympy.polys.rings import PolyRing

X_NAMES: Tuple[str, ...] = ('x0', 'x1', 'x2', 'x3', 'x4')
NX = len(X_NAMES)

Monomial = Tuple[int, ...]


@lru_cache(maxsize=None)
def polynomial_ring(names: Tuple[str, ...]) -> PolyRing:
    """QQ[names] with grevlex order, cached per variable tuple"""
    return PolyRing(list(names), QQ, grevlex)


def x_ring() -> PolyRing:
    return polynomial_ring(X_NAMES)


def extended_ring(*blocks: Iterable[str]) -> PolyRing:
    """x0..x4 followed by the given blocks of parameter names"""
    names = list(X_NAMES)
    for block in blocks:
        names.extend(block)
    return polynomial_ring(tuple(names))


def parameter_ring(ring: PolyRing, nx: int = NX) -> PolyRing:
    """The ring of the non-x generators of an extended ring"""
    return polynomial_ring(tuple(str(s) for s in ring.symbols[nx:]))


@lru_cache(maxsize=None)
def monomial_basis(nvars: int, degree: int) -> Tuple[Monomial, ...]:
    """All monomials of a degree, largest first in grevlex"""
    monomials = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exponents = [0] * nvars
        for var in combo:
            exponents[var] += 1
        monomials.append(tuple(exponents))
    return tuple(sorted(monomials, key=grevlex, reverse=True))


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int) -> Dict[Monomial, int]:
    return {monom: position for position, monom in enumerate(monomial_basis(nvars, degree))}


def monomials(ring: PolyRing, degree: int) -> List:
    """The degree-d monomials of a ring as polynomials"""
    return [ring.from_dict({monom: QQ.one}) for monom in monomial_basis(ring.ngens, degree)]


def is_homogeneous(poly, degree: int) -> bool:
    return all(sum(monom) == degree for monom in poly.keys())


def linear_form(ring: PolyRing, coefficients: Sequence) -> object:
    """sum_k c_k x_k in the given ring"""
    gens = ring.gens
    result = ring.zero
    for k, coeff in enumerate(coefficients):
        if coeff:
            result += gens[k] * QQ.convert(coeff)
    return result


def linear_coefficients(poly, nx: int = NX) -> List:
    """Coefficient vector of a linear form in the first nx generators"""
    vector = [QQ.zero] * nx
    for monom, coeff in poly.items():
        degree = sum(monom)
        if degree != 1 or not any(monom[:nx]):
            raise ValueError(f"not a linear form in x: {poly}")
        vector[monom.index(1)] = coeff
    return vector


def substitute(poly, images: Sequence, target: PolyRing):
    """Replace generator k of poly's ring by images[k] (elements of target)"""
    result = target.zero
    powers: Dict[Tuple[int, int], object] = {}
    for monom, coeff in poly.items():
        term = target.one * coeff
        for var, exponent in enumerate(monom):
            if exponent:
                key = (var, exponent)
                if key not in powers:
                    powers[key] = images[var] ** exponent
                term *= powers[key]
        result += term
    return result


def substitute_linear(poly, matrix: Sequence[Sequence], nx: int = NX):
    """p(x) -> p(C x), x_k -> sum_l C[k][l] x_l; other generators are kept"""
    ring = poly.ring
    gens = ring.gens
    images = [linear_form(ring, matrix[k]) for k in range(nx)] + list(gens[nx:])
    return substitute(poly, images, ring)


def lift(poly, ring: PolyRing):
    """Embed poly into a ring containing its generators"""
    if poly.ring == ring:
        return poly
    return poly.set_ring(ring)


def split_by_x(poly, nx: int = NX) -> Dict[Monomial, object]:
    """Group the terms of an extended-ring polynomial by x-monomial

    Returns x-monomial -> coefficient polynomial in the parameter ring.
    """
    params = parameter_ring(poly.ring, nx)
    grouped: Dict[Monomial, Dict[Monomial, object]] = {}
    for monom, coeff in poly.items():
        grouped.setdefault(monom[:nx], {})[monom[nx:]] = coeff
    return {x_monom: params.from_dict(terms) for x_monom, terms in grouped.items()}


def from_coefficient_map(ring: PolyRing, data: Mapping[Monomial, object]):
    return ring.from_dict({monom: QQ.convert(c) for monom, c in data.items() if c})
