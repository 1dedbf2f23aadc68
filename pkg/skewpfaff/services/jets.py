"""
Jet operations: truncation, r-fold covering, Pfaffians in k[e]/(e^(n+1)) and proportionality
"""

from typing import Any, Dict, List, Optional, Tuple, Union

from sympy import QQ

from ..models.jet import JetMatrix, JetPolynomial
from ..models.matrix import Index, SkewLinMatrix
from ..utils.errors import InvalidParameter, OddSize, OrderTooLarge
from ..utils.logging import get_logger
from .pfaffcalc import pfaffian_entries, sub_pfaffians_entries

logger = get_logger('jets')

Jet = Union[JetPolynomial, JetMatrix]


def truncate(jet: Jet, order: int) -> Jet:
    """Drop every coefficient above e^order"""
    if order > jet.order:
        raise OrderTooLarge(f"cannot truncate a jet of order {jet.order} to order {order}")
    if order < 0:
        raise InvalidParameter(f"truncation order must be non-negative, got {order}")
    if isinstance(jet, JetMatrix):
        return JetMatrix(jet.coefficients[:order + 1])
    return JetPolynomial(jet.ring, jet.coefficients[:order + 1])


def cover(jet: Jet, r: int) -> Jet:
    """Substitute e = s^r; the result has order r * n"""
    if r < 1:
        raise InvalidParameter(f"covering multiplicity must be at least 1, got {r}")
    if isinstance(jet, JetMatrix):
        zero = SkewLinMatrix(jet.size, jet.ring)
        coefficients = [zero] * (r * jet.order + 1)
    else:
        coefficients = [jet.ring.zero] * (r * jet.order + 1)
    for k, value in enumerate(jet.coefficients):
        coefficients[r * k] = value
    if isinstance(jet, JetMatrix):
        return JetMatrix(tuple(coefficients))
    return JetPolynomial(jet.ring, tuple(coefficients))


def jet_pfaffian(jet: JetMatrix) -> JetPolynomial:
    """Pfaffian computed in the truncated coefficient ring"""
    if jet.size % 2:
        raise OddSize(f"Pfaffian of a {jet.size}x{jet.size} jet is undefined")
    return pfaffian_entries(jet.rows(), JetPolynomial.one(jet.ring, jet.order))


def jet_sub_pfaffians(jet: JetMatrix) -> Dict[Index, JetPolynomial]:
    return sub_pfaffians_entries(jet.rows(), JetPolynomial.one(jet.ring, jet.order))


def first_nonzero(jet: JetPolynomial) -> Optional[Tuple[int, Any]]:
    """(n, G) for the lowest nonzero coefficient, None for the zero jet"""
    for k, value in enumerate(jet.coefficients):
        if value:
            return k, value
    return None


def _scalar_ratio(numerator, denominator) -> Optional[Any]:
    """c with numerator = c * denominator for a nonzero denominator, else None"""
    if not denominator:
        return None if numerator else QQ.zero
    monom, coeff = next(iter(denominator.items()))
    c = QQ.convert(numerator.get(monom, QQ.zero)) / coeff
    if numerator != denominator * c:
        return None
    return c


def proportionality_check(pfaffian_jet: JetPolynomial, cubic_jet: JetPolynomial) -> Optional[List[Any]]:
    """Scalars u0 + u1 e + ... with u0 != 0 and pfaffian_jet = u * cubic_jet, or None

    Solved order by order: the e^k coefficient gives P_k - sum_{i<k} u_i F_(k-i) = u_k F_0.
    The cubic jet must have F_0 != 0. Otherwise the units are not determined by the equations
    and the answer is None, even for pfaffian_jet == cubic_jet.
    """
    if pfaffian_jet.order != cubic_jet.order:
        raise InvalidParameter(f"jet orders differ: {pfaffian_jet.order} and {cubic_jet.order}")
    if not cubic_jet.coefficients[0]:
        logger.debug("cubic jet has zero constant term; proportionality is not decided")
        return None
    units: List[Any] = []
    for k in range(pfaffian_jet.order + 1):
        remainder = pfaffian_jet.coefficients[k]
        for i, u in enumerate(units):
            if u:
                remainder = remainder - cubic_jet.coefficients[k - i] * u
        u_k = _scalar_ratio(remainder, cubic_jet.coefficients[0])
        if u_k is None:
            return None
        units.append(u_k)
    if not units[0]:
        return None
    return units


def leading_proportionality(pfaffian_jet: JetPolynomial, cubic_jet: JetPolynomial) -> Optional[Tuple[int, List[Any]]]:
    """(n, u) with pfaffian_jet = e^n u cubic_jet up to the truncation order, or None

    When it succeeds, the first nonzero coefficient of pfaffian_jet is u0 times the constant
    coefficient of cubic_jet.
    """
    leading = first_nonzero(pfaffian_jet)
    if leading is None:
        return None
    n = leading[0]
    order = pfaffian_jet.order - n
    shifted = JetPolynomial(pfaffian_jet.ring, pfaffian_jet.coefficients[n:])
    units = proportionality_check(shifted, truncate(cubic_jet, order))
    if units is None:
        logger.debug(f"jet Pfaffian of vanishing order {n} is not proportional to the cubic jet")
        return None
    return n, units
