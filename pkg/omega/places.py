"""
Non-Archimedean places of monogenic number fields.

The places of K over p correspond to the irreducible factors of f modulo p, provided that
p does not divide the index of Z[θ] in the ring of integers (Dedekind's criterion). Valuations
are computed from the resultant of a Hensel-lifted local factor with the element, doubling the
p-adic precision until the answer is stable.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd

from django.utils.functional import cached_property
from sympy import isprime, multiplicity
from sympy.polys.densearith import dup_exquo_ground, dup_mul, dup_pow, dup_rem, dup_sub
from sympy.polys.densebasic import dup_strip
from sympy.polys.densetools import dup_trunc
from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_resultant
from sympy.polys.factortools import dup_zz_hensel_lift
from sympy.polys.galoistools import gf_factor, gf_from_int_poly, gf_pow, gf_rem, gf_to_int_poly

from omega.conf import get_setting
from omega.fields import FieldElement, FieldMismatch, IntPolynomial, OmegaError


logger = logging.getLogger(__name__)


class PlaceError(OmegaError):

    """Something went wrong computing places or valuations."""


class NonMaximalOrderAtP(PlaceError):

    """The prime divides the index of Z[θ], so its places cannot be read off f modulo p."""


UnsupportedPrime = NonMaximalOrderAtP


class ZeroElement(PlaceError):

    """Zero has no valuation."""


class PrecisionOverflow(PlaceError):

    """The p-adic precision needed exceeded OMEGA_PRECISION_CAP."""


def _check_prime(prime):
    if not isinstance(prime, int) or isinstance(prime, bool) or not isprime(prime):
        raise PlaceError("{prime!r} is not a prime".format(prime=prime))


def _factor_key(factor, prime):
    return len(factor), tuple(gf_to_int_poly(factor, prime))


@lru_cache(maxsize=None)
def _residue_factors(field, prime):
    """
    Returns the factorization of f modulo p as ((factor, exponent), ...) in canonical order.

    Factors are monic dense lists over GF(p), highest degree first. Raises NonMaximalOrderAtP
    when Dedekind's criterion fails at p.
    """
    _check_prime(prime)
    f = field.polynomial.to_dup()
    _, factors = gf_factor(gf_from_int_poly(f, prime), prime, ZZ)
    factors = sorted(factors, key=lambda item: _factor_key(item[0], prime))
    # Dedekind: with g the radical and h the cofactor, Z[θ] is p-maximal iff no repeated
    # factor divides (f - gh) / p modulo p.
    g, h = [ZZ(1)], [ZZ(1)]
    for factor, exponent in factors:
        lift = gf_to_int_poly(factor, prime)
        g = dup_mul(g, lift, ZZ)
        h = dup_mul(h, dup_pow(lift, exponent - 1, ZZ), ZZ)
    remainder = gf_from_int_poly(dup_exquo_ground(dup_sub(f, dup_mul(g, h, ZZ), ZZ), ZZ(prime), ZZ), prime)
    for factor, exponent in factors:
        if exponent > 1 and not gf_rem(remainder, factor, prime, ZZ):
            raise NonMaximalOrderAtP("{prime} divides the index of Z[θ] in {field}".format(
                prime=prime,
                field=field,
            ))
    return tuple((tuple(factor), exponent) for factor, exponent in factors)


@lru_cache(maxsize=None)
def _local_factors(field, prime, precision):
    """Returns the lifts of the prime-power factors of f to factors modulo p^precision."""
    f = field.polynomial.to_dup()
    targets = [
        gf_to_int_poly(gf_pow(list(factor), exponent, prime, ZZ), prime)
        for factor, exponent in _residue_factors(field, prime)
    ]
    return tuple(tuple(lift) for lift in dup_zz_hensel_lift(ZZ(prime), f, targets, precision, ZZ))


def is_supported(field, prime):
    """Returns whether Dedekind's criterion holds for the field at the prime."""
    try:
        _residue_factors(field, prime)
    except NonMaximalOrderAtP:
        return False
    return True


class Place(object):

    """
    A non-Archimedean place of a number field.

    Places are identified by their field, prime and residue factor, the irreducible factor
    of f modulo p they correspond to. The index is the position in places_above().
    """

    def __init__(self, field, prime, index, residue_factor, ramification, residue_degree):
        self.field = field
        self.prime = prime
        self.index = index
        self.residue_factor = residue_factor
        self.ramification = ramification
        self.residue_degree = residue_degree

    @property
    def local_degree(self):
        """The local degree [K_w:Q_p] = e·f."""
        return self.ramification * self.residue_degree

    @property
    def norm(self):
        """The absolute norm p^f of the prime ideal."""
        return self.prime ** self.residue_degree

    @cached_property
    def residue_polynomial(self):
        """The symmetric integer lift g of the residue factor."""
        return IntPolynomial.from_dup(gf_to_int_poly(list(self.residue_factor), self.prime))

    @cached_property
    def generator_element(self):
        """
        g(θ) for the residue polynomial g.

        Together with p this generates the prime ideal, and the element has positive
        valuation here and zero valuation at every other place over p.
        """
        return FieldElement(self.field, self.residue_polynomial.coefficients)

    def local_factor(self, precision):
        """The factor of f modulo p^precision belonging to this place."""
        return _local_factors(self.field, self.prime, precision)[self.index]

    def _key(self):
        return self.field, self.prime, self.residue_factor

    def __eq__(self, other):
        if isinstance(other, Place):
            return self._key() == other._key()
        return NotImplemented

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other):
        return (self.prime, self.index) < (other.prime, other.index)

    def __repr__(self):
        return "<Place {index} of {field} over {prime} (e={e}, f={f})>".format(
            index=self.index,
            field=self.field.polynomial,
            prime=self.prime,
            e=self.ramification,
            f=self.residue_degree,
        )


@lru_cache(maxsize=None)
def _places_above(field, prime):
    return tuple(
        Place(field, prime, index, factor, exponent, len(factor) - 1)
        for index, (factor, exponent) in enumerate(_residue_factors(field, prime))
    )


def places_above(field, prime):
    """Returns the places of the field over the prime, in canonical order."""
    return list(_places_above(field, prime))


@dataclass(frozen=True)
class ValuationResult:

    """The valuation v_w(α), normalized so that v_w(p) = e_w, and the p-adic precision it needed."""

    value: int
    precision: int

    def __int__(self):
        return self.value


@lru_cache(maxsize=4096)
def valuation(element, place):
    """Returns the ValuationResult of the element at the place."""
    if element.field != place.field:
        raise FieldMismatch("{element!r} does not belong to the field of {place!r}".format(
            element=element,
            place=place,
        ))
    if element.is_zero():
        raise ZeroElement("Zero has no valuation at {place!r}".format(place=place))
    prime = place.prime
    numerators, denominator = element.integral_coordinates()
    # Remove the p-content, which contributes e per factor of p.
    shift = multiplicity(prime, reduce(gcd, numerators, 0))
    scale = prime ** shift
    integral = dup_strip([ZZ(numerator // scale) for numerator in reversed(numerators)])
    base = place.ramification * (shift - multiplicity(prime, denominator))
    if len(integral) == 1:
        return ValuationResult(base, 0)
    precision = get_setting("OMEGA_PRECISION_START")
    cap = get_setting("OMEGA_PRECISION_CAP")
    while precision <= cap:
        modulus = prime ** precision
        local = list(place.local_factor(precision))
        reduced = dup_trunc(dup_rem(integral, local, ZZ), ZZ(modulus), ZZ)
        if reduced:
            if len(reduced) == 1:
                resultant = reduced[0] ** (len(local) - 1)
            else:
                resultant = dup_resultant(local, reduced, ZZ)
            resultant = int(resultant) % modulus
            if resultant:
                value = multiplicity(prime, resultant)
                if value % place.residue_degree:  # pragma: no cover
                    raise PlaceError("Inconsistent local resultant at {place!r}".format(place=place))
                return ValuationResult(base + value // place.residue_degree, precision)
        logger.debug("Raising precision for %r at %r beyond %s", element, place, precision)
        precision *= 2
    raise PrecisionOverflow("Valuation of {element!r} at {place!r} needs precision above {cap}".format(
        element=element,
        place=place,
        cap=cap,
    ))


def log_abs(element, place, normalization="absolute"):
    """
    Returns log|α|_w in units of log p.

    The "absolute" normalization gives log_p‖α‖_w = -v_w(α)/e_w, and "field" scales it by the
    local degree over [K:Q].
    """
    value = Fraction(-valuation(element, place).value, place.ramification)
    if normalization == "absolute":
        return value
    if normalization == "field":
        return value * Fraction(place.local_degree, place.field.degree)
    raise ValueError("Unknown normalization {normalization!r}".format(normalization=normalization))


def _check_embedding(embedding, place):
    if embedding.source != place.field:
        raise FieldMismatch("{place!r} is not a place of the source of {embedding!r}".format(
            place=place,
            embedding=embedding,
        ))


@lru_cache(maxsize=1024)
def _places_over(embedding, place):
    _check_embedding(embedding, place)
    above = _places_above(embedding.target, place.prime)
    if len(_places_above(place.field, place.prime)) == 1:
        return above
    separator = embedding(place.generator_element)
    return tuple(w for w in above if valuation(separator, w).value > 0)


def places_over(field, embedding, place):
    """Returns the places of the target field of the embedding lying over the place."""
    if embedding.target != field:
        raise FieldMismatch("{embedding!r} does not embed into {field}".format(
            embedding=embedding,
            field=field,
        ))
    return list(_places_over(embedding, place))


def place_under(embedding, place):
    """Returns the place of the source field of the embedding lying under a place of its target."""
    if place.field != embedding.target:
        raise FieldMismatch("{place!r} is not a place of the target of {embedding!r}".format(
            place=place,
            embedding=embedding,
        ))
    for candidate in _places_above(embedding.source, place.prime):
        if place in _places_over(embedding, candidate):
            return candidate
    raise PlaceError("No place lies under {place!r}".format(place=place))  # pragma: no cover


def relative_degree(upper, lower):
    """The relative local degree [L_w:K_v]."""
    return upper.local_degree // lower.local_degree


def galois_image_of_place(automorphism, place):
    """Returns σ(w), the place whose valuation of σ(α) equals the valuation of α at w."""
    if automorphism.field != place.field:
        raise FieldMismatch("{automorphism!r} does not act on {place!r}".format(
            automorphism=automorphism,
            place=place,
        ))
    above = _places_above(place.field, place.prime)
    if len(above) == 1:
        return place
    separator = automorphism(place.generator_element)
    for candidate in above:
        if valuation(separator, candidate).value > 0:
            return candidate
    raise PlaceError("No image found for {place!r}".format(place=place))  # pragma: no cover
