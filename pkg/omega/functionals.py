"""
The functionals Φ_c, the extensions of the prime omega function, the S-norm and the
summatory functions of Pólya and Chowla.

Everything is exact: the log p factors cancel in Φ_c, and the S-norm is kept as a
formal combination of logarithms of primes.
"""

import logging
import math
from fractions import Fraction

from sympy import factorint, primeomega

from omega.conf import get_setting
from omega.fields import OmegaError, field_norm, rational_field
from omega.maps import CheckResult, EvaluationContext, Witness
from omega.places import ZeroElement, places_above, valuation


logger = logging.getLogger(__name__)


class ZeroArgument(ZeroElement):

    """The functional was applied to zero."""


class ZeroValueInRange(OmegaError):

    """The polynomial vanishes somewhere in the summation range."""


class SummatoryLimitExceeded(OmegaError):

    """The summation range is above OMEGA_SUMMATORY_LIMIT."""


class LogLinearValue(object):

    """A finitely supported rational combination Σ a_p log p."""

    __slots__ = ("_coefficients",)

    def __init__(self, coefficients=None):
        coefficients = {int(prime): Fraction(value) for prime, value in (coefficients or {}).items()}
        self._coefficients = {prime: value for prime, value in sorted(coefficients.items()) if value}

    def coefficient(self, prime):
        return self._coefficients.get(prime, Fraction(0))

    @property
    def primes(self):
        return list(self._coefficients)

    def items(self):
        return self._coefficients.items()

    def __add__(self, other):
        if not isinstance(other, LogLinearValue):
            return NotImplemented
        coefficients = dict(self._coefficients)
        for prime, value in other.items():
            coefficients[prime] = coefficients.get(prime, Fraction(0)) + value
        return LogLinearValue(coefficients)

    def __neg__(self):
        return LogLinearValue({prime: -value for prime, value in self.items()})

    def __sub__(self, other):
        if not isinstance(other, LogLinearValue):
            return NotImplemented
        return self + -other

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return LogLinearValue({prime: value * scalar for prime, value in self.items()})

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self._coefficients)

    def __eq__(self, other):
        if isinstance(other, LogLinearValue):
            return self._coefficients == other._coefficients
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.items()))

    def approx(self):
        """A floating point rendering, for display only."""
        return math.fsum(float(value) * math.log(prime) for prime, value in self.items())

    def to_dict(self):
        return {str(prime): str(value) for prime, value in self.items()}

    def __repr__(self):
        return "LogLinearValue({coefficients!r})".format(coefficients=self.to_dict())


def _nonzero_valuations(element):
    """Yields (place, v_w(α)) for every place where the valuation of the element is nonzero."""
    numerators, denominator = element.integral_coordinates()
    norm = field_norm(element.field.element(numerators))
    primes = set(factorint(abs(int(norm)))) | set(factorint(denominator))
    for prime in sorted(primes):
        for place in places_above(element.field, prime):
            value = valuation(element, place).value
            if value:
                yield place, value


def phi(consistent_map, element, root_index=1, context=None):
    """
    Returns Φ_c(α^(1/n)) = (1/n) Σ_v c(K, v) (-v_w(α) / e_v).

    The root index n lets root classes of S_K be passed as (α, n) pairs.
    """
    if root_index < 1:
        raise ValueError("The root index must be positive, got {root_index!r}".format(root_index=root_index))
    if element.is_zero():
        raise ZeroElement("Φ is not defined at zero")
    total = Fraction(0)
    for place, value in _nonzero_valuations(element):
        total += consistent_map.evaluate(element.field, place, context) * Fraction(-value, place.ramification)
    return total / root_index


class FunctionalHandle(object):

    """The functional Φ_c as a callable."""

    def __init__(self, consistent_map, context=None):
        self.consistent_map = consistent_map
        self.context = context

    def __call__(self, element, root_index=1):
        return phi(self.consistent_map, element, root_index, self.context)

    def __repr__(self):
        return "<FunctionalHandle of {consistent_map!r}>".format(consistent_map=self.consistent_map)


def phi_well_defined_check(consistent_map, element, embedding, context=None):
    """Checks that Φ_c gives the same value at α in K and at its image in L."""
    context = (context or EvaluationContext()).with_embeddings(embedding)
    expected = phi(consistent_map, element, context=context)
    actual = phi(consistent_map, embedding(element), context=context)
    return CheckResult(expected == actual, [Witness(embedding.target, None, expected, actual)])


def omega_rational(value):
    """Ω of a nonzero rational: Ω(numerator) - Ω(denominator)."""
    value = Fraction(value)
    if not value:
        raise ZeroArgument("Ω is not defined at zero")
    return int(primeomega(abs(value.numerator))) - int(primeomega(value.denominator))


def omega_canonical(element):
    """Ω(Norm(α)) / [K:Q], the canonical extension of Ω to algebraic numbers."""
    if element.is_zero():
        raise ZeroArgument("Ω is not defined at zero")
    return Fraction(omega_rational(field_norm(element)), element.field.degree)


def extends_omega_check(consistent_map, primes, context=None):
    """Checks that c(Q, p) = -1 at each of the primes, the criterion for Φ_c to extend Ω."""
    rationals = rational_field()
    witnesses = []
    for prime in primes:
        place, = places_above(rationals, prime)
        witnesses.append(Witness(rationals, place, Fraction(-1), consistent_map.evaluate(rationals, place, context)))
    return CheckResult(all(witness.holds for witness in witnesses), witnesses)


def snorm(element, root_index=1):
    """
    Returns the S-norm Σ_v |log|α|_v| as a LogLinearValue.

    The coefficient of log p is Σ_{w | p} f_w |v_w(α)| / [K:Q], which does not change when
    α is viewed in an extension field.
    """
    if element.is_zero():
        raise ZeroArgument("The S-norm is not defined at zero")
    if root_index < 1:
        raise ValueError("The root index must be positive, got {root_index!r}".format(root_index=root_index))
    coefficients = {}
    for place, value in _nonzero_valuations(element):
        coefficients[place.prime] = (
            coefficients.get(place.prime, Fraction(0))
            + Fraction(place.residue_degree * abs(value), element.field.degree * root_index)
        )
    return LogLinearValue(coefficients)


def liouville(n):
    """λ(n) = (-1)^Ω(n)."""
    return -1 if primeomega(n) % 2 else 1


def _check_range(x):
    limit = get_setting("OMEGA_SUMMATORY_LIMIT")
    if x < 1:
        raise ValueError("The summation range must start at 1, got x = {x!r}".format(x=x))
    if x > limit:
        raise SummatoryLimitExceeded("x = {x} is above the limit of {limit}".format(x=x, limit=limit))


def summatory_polya(x):
    """L(x) = Σ_{n ≤ x} (-1)^Ω(n)."""
    _check_range(x)
    return sum(liouville(n) for n in range(1, x + 1))


def summatory_chowla(polynomial, x):
    """L_f(x) = Σ_{n ≤ x} (-1)^Ω(f(n))."""
    _check_range(x)
    total = 0
    for n in range(1, x + 1):
        value = polynomial(n)
        if value == 0:
            raise ZeroValueInRange("{polynomial} vanishes at n = {n}".format(polynomial=polynomial, n=n))
        total += liouville(abs(value))
    logger.debug("Summed %s terms of λ(%s)", x, polynomial)
    return total
