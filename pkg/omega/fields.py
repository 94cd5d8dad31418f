"""
Exact arithmetic for monogenic number fields.

A field is presented as Q[x]/(f) for a monic irreducible integer polynomial f, and its
elements are rational coordinate vectors over the powers of the generator. Automorphisms
are only produced for the Galois families recognised by galois_family().
"""

import json
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, isqrt
from tokenize import TokenError

from django.utils.functional import cached_property
from sympy import Poly, Symbol, cyclotomic_poly, discriminant as poly_discriminant, totient
from sympy.core.sympify import SympifyError
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)
from sympy.polys.densearith import dup_add, dup_mul, dup_rem, dup_sub
from sympy.polys.densebasic import dup_strip
from sympy.polys.domains import QQ, ZZ
from sympy.polys.euclidtools import dup_invert, dup_resultant
from sympy.polys.polyerrors import NotInvertible

from omega.conf import get_setting


_x = Symbol("x")

_TRANSFORMATIONS = standard_transformations + (implicit_multiplication_application, convert_xor)


class OmegaError(Exception):

    """Base class for all errors raised by omega."""


class FieldError(OmegaError):

    """Something went wrong constructing or combining number fields."""


class NotMonic(FieldError):

    """The defining polynomial is not monic."""


class Reducible(FieldError):

    """The defining polynomial factors over Q."""

    def __init__(self, polynomial, factor):
        super().__init__("{polynomial} is reducible, with factor {factor}".format(
            polynomial=polynomial,
            factor=factor,
        ))
        self.polynomial = polynomial
        self.factor = factor


class DegreeTooLarge(FieldError):

    """The defining polynomial is above the configured degree cap."""


class FieldMismatch(FieldError):

    """Two values from different fields were combined."""


class DivisionByZero(FieldError, ZeroDivisionError):

    """A field element was divided by zero."""


class UnsupportedFamily(FieldError):

    """The field is not one of the recognised Galois families."""


class InvalidEmbedding(FieldError):

    """The proposed image does not define a ring homomorphism."""


def _qq(value):
    return QQ(value.numerator, value.denominator)


def _fraction(value):
    return Fraction(int(value.numerator), int(value.denominator))


class IntPolynomial(object):

    """An integer polynomial, stored constant term first."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients):
        coefficients = [int(coefficient) for coefficient in coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        self.coefficients = tuple(coefficients)

    @classmethod
    def from_dup(cls, coefficients):
        """Creates a polynomial from a dense coefficient list, highest degree first."""
        return cls(reversed(coefficients))

    def to_dup(self):
        """Returns the dense ZZ coefficient list, highest degree first."""
        return [ZZ(coefficient) for coefficient in reversed(self.coefficients)]

    @property
    def degree(self):
        return len(self.coefficients) - 1

    @property
    def leading_coefficient(self):
        return self.coefficients[-1] if self.coefficients else 0

    @property
    def is_monic(self):
        return self.leading_coefficient == 1

    def as_poly(self):
        return Poly(list(reversed(self.coefficients)) or [0], _x, domain=ZZ)

    def __call__(self, value):
        """Evaluates the polynomial at an integer or rational."""
        return reduce(lambda total, coefficient: total * value + coefficient, reversed(self.coefficients), 0)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def __str__(self):
        return str(self.as_poly().as_expr()).replace("**", "^")

    def __repr__(self):
        return "IntPolynomial({coefficients!r})".format(coefficients=list(self.coefficients))


def parse_polynomial(text):
    """
    Parses an integer polynomial.

    Accepts an IntPolynomial, a coefficient sequence (constant term first), a JSON
    coefficient array, or an expression such as "x^2 + 1" in a single variable.
    Raises ValueError for anything else.
    """
    if isinstance(text, IntPolynomial):
        return text
    if isinstance(text, (list, tuple)):
        if not all(isinstance(coefficient, int) and not isinstance(coefficient, bool) for coefficient in text):
            raise ValueError("Polynomial coefficients must be integers, got {text!r}".format(text=text))
        return IntPolynomial(text)
    if not isinstance(text, str):
        raise ValueError("Cannot parse {text!r} as a polynomial".format(text=text))
    text = text.strip()
    if text.startswith("["):
        try:
            coefficients = json.loads(text)
        except ValueError:
            raise ValueError("Cannot parse {text!r} as a coefficient array".format(text=text))
        return parse_polynomial(coefficients)
    try:
        expression = parse_expr(text, transformations=_TRANSFORMATIONS)
    except (SympifyError, SyntaxError, TypeError, TokenError):
        raise ValueError("Cannot parse {text!r} as a polynomial".format(text=text))
    symbols = getattr(expression, "free_symbols", set())
    if len(symbols) > 1:
        raise ValueError("{text!r} has more than one variable".format(text=text))
    variable = next(iter(symbols), _x)
    try:
        poly = Poly(expression, variable)
    except Exception:
        raise ValueError("{text!r} is not a polynomial".format(text=text))
    coefficients = poly.all_coeffs()
    if not all(coefficient.is_integer for coefficient in coefficients):
        raise ValueError("{text!r} does not have integer coefficients".format(text=text))
    return IntPolynomial(reversed([int(coefficient) for coefficient in coefficients]))


class NumberField(object):

    """
    A number field Q[x]/(f).

    Construct these with make_field(), which checks that f is monic and irreducible.
    Two fields are equal when their defining polynomials are equal.
    """

    def __init__(self, polynomial):
        self.polynomial = polynomial
        self.degree = polynomial.degree

    @cached_property
    def modulus(self):
        return [QQ(coefficient) for coefficient in reversed(self.polynomial.coefficients)]

    @cached_property
    def discriminant(self):
        if self.degree == 1:
            return 1
        return int(poly_discriminant(self.polynomial.as_poly()))

    def element(self, coordinates):
        return FieldElement(self, coordinates)

    def rational(self, value):
        return FieldElement(self, [Fraction(value)])

    @cached_property
    def zero(self):
        return FieldElement(self, ())

    @cached_property
    def one(self):
        return self.rational(1)

    @cached_property
    def generator(self):
        """The image of x in Q[x]/(f)."""
        return FieldElement(self, [0, 1])

    def __eq__(self, other):
        if isinstance(other, NumberField):
            return self.polynomial == other.polynomial
        return NotImplemented

    def __hash__(self):
        return hash(("NumberField", self.polynomial))

    def __str__(self):
        return "Q[x]/({polynomial})".format(polynomial=self.polynomial)

    def __repr__(self):
        return "<NumberField {polynomial}>".format(polynomial=self.polynomial)


def _proper_factor(polynomial):
    """Returns the smallest proper monic factor of the polynomial, or None if it is irreducible."""
    _, factors = polynomial.as_poly().factor_list()
    if len(factors) == 1 and factors[0][1] == 1:
        return None
    candidates = [IntPolynomial(reversed([int(c) for c in factor.all_coeffs()])) for factor, _ in factors]
    return min(candidates, key=lambda factor: (factor.degree, tuple(reversed(factor.coefficients))))


def make_field(polynomial):
    """Returns the number field defined by the given monic irreducible polynomial."""
    if not isinstance(polynomial, IntPolynomial):
        polynomial = parse_polynomial(polynomial)
    if polynomial.degree < 1:
        raise FieldError("{polynomial} has degree less than 1".format(polynomial=polynomial))
    if not polynomial.is_monic:
        raise NotMonic("{polynomial} is not monic".format(polynomial=polynomial))
    max_degree = get_setting("OMEGA_MAX_DEGREE")
    if polynomial.degree > max_degree:
        raise DegreeTooLarge("{polynomial} has degree {degree}, above the limit of {max_degree}".format(
            polynomial=polynomial,
            degree=polynomial.degree,
            max_degree=max_degree,
        ))
    factor = _proper_factor(polynomial)
    if factor is not None:
        raise Reducible(polynomial, factor)
    return NumberField(polynomial)


class FieldElement(object):

    """
    An element of a number field, as rational coordinates over 1, θ, ..., θ^(n - 1).

    Longer coordinate lists are reduced modulo the defining polynomial.
    """

    __slots__ = ("field", "coordinates")

    def __init__(self, field, coordinates):
        coordinates = [Fraction(coordinate) for coordinate in coordinates]
        if len(coordinates) > field.degree:
            dup = dup_rem(dup_strip([_qq(c) for c in reversed(coordinates)]), field.modulus, QQ)
            coordinates = [_fraction(c) for c in reversed(dup)]
        coordinates.extend([Fraction(0)] * (field.degree - len(coordinates)))
        self.field = field
        self.coordinates = tuple(coordinates)

    def to_dup(self):
        """Returns the stripped dense QQ representative, highest degree first."""
        return dup_strip([_qq(coordinate) for coordinate in reversed(self.coordinates)])

    @classmethod
    def _from_dup(cls, field, dup):
        return cls(field, [_fraction(coefficient) for coefficient in reversed(dup)])

    def is_zero(self):
        return not any(self.coordinates)

    def is_rational(self):
        return not any(self.coordinates[1:])

    def integral_coordinates(self):
        """Returns (numerators, d) with the element equal to sum(numerators[j] θ^j) / d and d > 0 minimal."""
        denominator = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in self.coordinates), 1)
        return [int(c * denominator) for c in self.coordinates], denominator

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch("Cannot combine elements of {a} and {b}".format(
                    a=self.field,
                    b=other.field,
                ))
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement._from_dup(self.field, dup_add(self.to_dup(), other.to_dup(), QQ))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-c for c in self.coordinates])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement._from_dup(self.field, dup_sub(self.to_dup(), other.to_dup(), QQ))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        product = dup_mul(self.to_dup(), other.to_dup(), QQ)
        return FieldElement._from_dup(self.field, dup_rem(product, self.field.modulus, QQ))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("Cannot invert zero in {field}".format(field=self.field))
        if self.is_rational():
            return self.field.rational(1 / self.coordinates[0])
        try:
            inverse = dup_invert(self.to_dup(), self.field.modulus, QQ)
        except NotInvertible:  # pragma: no cover
            raise DivisionByZero("{element!r} is not invertible".format(element=self))
        return FieldElement._from_dup(self.field, inverse)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = self.field.one
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def norm(self):
        return field_norm(self)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coordinates == other.coordinates
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coordinates[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coordinates))

    def __str__(self):
        return "[{coordinates}]".format(coordinates=", ".join(str(c) for c in self.coordinates))

    def __repr__(self):
        return "<FieldElement {element} of {field}>".format(element=self, field=self.field)


_OPERATIONS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def element_arith(a, b, op):
    """Applies one of the field operations add, sub, mul or div to two elements of the same field."""
    try:
        operation = _OPERATIONS[op]
    except KeyError:
        raise ValueError("Unknown field operation {op!r}".format(op=op))
    a._coerce(b)
    return operation(a, b)


def field_norm(element):
    """Returns Norm_{K/Q} of the element, computed as the resultant of f and its representative."""
    if element.is_zero():
        return Fraction(0)
    if element.is_rational():
        return element.coordinates[0] ** element.field.degree
    return _fraction(dup_resultant(element.field.modulus, element.to_dup(), QQ))


def _evaluate(coefficients, element):
    """Evaluates a polynomial with rational coefficients, constant term first, at a field element."""
    result = element.field.zero
    for coefficient in reversed(coefficients):
        result = result * element + coefficient
    return result


class Automorphism(object):

    """A field automorphism, determined by the image of the generator."""

    __slots__ = ("field", "image")

    def __init__(self, field, image):
        if image.field != field:
            raise FieldMismatch("The image of an automorphism of {field} must lie in it".format(field=field))
        if not _evaluate(field.polynomial.coefficients, image).is_zero():
            raise InvalidEmbedding("{image} is not a root of {polynomial}".format(
                image=image,
                polynomial=field.polynomial,
            ))
        self.field = field
        self.image = image

    def __call__(self, element):
        if element.field != self.field:
            raise FieldMismatch("Cannot apply an automorphism of {field} to {element!r}".format(
                field=self.field,
                element=element,
            ))
        return _evaluate(element.coordinates, self.image)

    def compose(self, other):
        """Returns self ∘ other."""
        return Automorphism(self.field, self(other.image))

    def is_identity(self):
        return self.image == self.field.generator

    def inverse(self):
        previous, current = self, self.compose(self)
        while not current.is_identity():
            previous, current = current, current.compose(self)
        return previous

    def __eq__(self, other):
        if isinstance(other, Automorphism):
            return self.field == other.field and self.image == other.image
        return NotImplemented

    def __hash__(self):
        return hash(("Automorphism", self.image))

    def __repr__(self):
        return "<Automorphism θ ↦ {image} of {field}>".format(image=self.image, field=self.field)


class FieldEmbedding(object):

    """A ring embedding of a source field into a target field, given by the image of the source generator."""

    __slots__ = ("source", "target", "image")

    def __init__(self, source, target, image):
        if not isinstance(image, FieldElement):
            image = target.element(image)
        if image.field != target:
            raise FieldMismatch("The image of an embedding into {target} must lie in it".format(target=target))
        if target.degree % source.degree:
            raise InvalidEmbedding("{source} cannot embed in {target}".format(source=source, target=target))
        if not _evaluate(source.polynomial.coefficients, image).is_zero():
            raise InvalidEmbedding("{image} is not a root of {polynomial} in {target}".format(
                image=image,
                polynomial=source.polynomial,
                target=target,
            ))
        self.source = source
        self.target = target
        self.image = image

    @property
    def degree(self):
        """The relative degree [L:K]."""
        return self.target.degree // self.source.degree

    def __call__(self, element):
        if element.field != self.source:
            raise FieldMismatch("Cannot embed {element!r} using an embedding of {source}".format(
                element=element,
                source=self.source,
            ))
        return _evaluate(element.coordinates, self.image)

    def compose(self, inner):
        """Returns self ∘ inner, an embedding of inner.source into self.target."""
        if inner.target != self.source:
            raise FieldMismatch("Cannot compose an embedding into {a} with one from {b}".format(
                a=inner.target,
                b=self.source,
            ))
        return FieldEmbedding(inner.source, self.target, self(inner.image))

    def __eq__(self, other):
        if isinstance(other, FieldEmbedding):
            return (self.source, self.target, self.image) == (other.source, other.target, other.image)
        return NotImplemented

    def __hash__(self):
        return hash(("FieldEmbedding", self.source, self.target, self.image))

    def __repr__(self):
        return "<FieldEmbedding {source} → {target}, θ ↦ {image}>".format(
            source=self.source.polynomial,
            target=self.target.polynomial,
            image=self.image,
        )


def identity_embedding(field):
    return FieldEmbedding(field, field, field.generator)


def rational_embedding(source, target):
    """The unique embedding of a degree one field into the target."""
    if source.degree != 1:
        raise InvalidEmbedding("{source} is not a degree one field".format(source=source))
    return FieldEmbedding(source, target, target.rational(-source.polynomial.coefficients[0]))


# Family constructors.

def rational_field():
    return make_field(IntPolynomial((0, 1)))


def quadratic_field(d):
    """Returns Q(√d), presented by x^2 - d."""
    return make_field(IntPolynomial((-d, 0, 1)))


@lru_cache(maxsize=None)
def _cyclotomic_coefficients(order):
    return tuple(reversed([int(c) for c in Poly(cyclotomic_poly(order, _x), _x).all_coeffs()]))


def cyclotomic_field(order):
    """Returns Q(ζ_m), presented by the cyclotomic polynomial. Orders 1 and 2 give Q, presented by x."""
    if order < 1:
        raise ValueError("Cyclotomic order must be positive, got {order!r}".format(order=order))
    if order <= 2:
        return rational_field()
    return make_field(IntPolynomial(_cyclotomic_coefficients(order)))


def biquadratic_field(a, b):
    """Returns Q(√a, √b), presented by the minimal polynomial of √a + √b."""
    return make_field(IntPolynomial(((a - b) ** 2, 0, -2 * (a + b), 0, 1)))


def cyclotomic_embedding(order, target_order):
    """Returns the embedding Q(ζ_m) → Q(ζ_m′) sending ζ_m to ζ_m′^(m′/m)."""
    if target_order % order:
        raise InvalidEmbedding("{order} does not divide {target_order}".format(
            order=order,
            target_order=target_order,
        ))
    source, target = cyclotomic_field(order), cyclotomic_field(target_order)
    if source.degree == 1:
        return rational_embedding(source, target)
    return FieldEmbedding(source, target, target.generator ** (target_order // order))


# Family recognition.

def _cyclotomic_order(field):
    for order in range(3, 61):
        if totient(order) == field.degree and _cyclotomic_coefficients(order) == field.polynomial.coefficients:
            return order
    return None


def _biquadratic_parameters(field):
    """Returns (a, b) with the field presented by the minimal polynomial of √a + √b, or None."""
    if field.degree != 4:
        return None
    c0, c1, c2, c3, _ = field.polynomial.coefficients
    if c1 or c3 or c2 % 2 or c0 <= 0:
        return None
    total, root = -c2 // 2, isqrt(c0)
    if root * root != c0 or (total + root) % 2:
        return None
    return (total + root) // 2, (total - root) // 2


def galois_family(field):
    """Returns the name of the Galois family the field belongs to, or None."""
    if field.degree == 1:
        return "rational"
    if field.degree == 2:
        return "quadratic"
    if _cyclotomic_order(field) is not None:
        return "cyclotomic"
    if _biquadratic_parameters(field) is not None:
        return "biquadratic"
    return None


def _biquadratic_roots(field):
    a, b = _biquadratic_parameters(field)
    theta = field.generator
    root_b = (theta ** 3 - (a + 3 * b) * theta) / (2 * (a - b))
    return (a, theta - root_b), (b, root_b)


def automorphisms(field):
    """Returns the Galois group of the field, identity first."""
    family = galois_family(field)
    theta = field.generator
    if family == "rational":
        images = [theta]
    elif family == "quadratic":
        images = [theta, -theta - field.polynomial.coefficients[1]]
    elif family == "cyclotomic":
        order = _cyclotomic_order(field)
        images = [theta ** power for power in range(1, order) if gcd(power, order) == 1]
    elif family == "biquadratic":
        (_, root_a), (_, root_b) = _biquadratic_roots(field)
        images = [sa * root_a + sb * root_b for sa, sb in ((1, 1), (-1, 1), (1, -1), (-1, -1))]
    else:
        raise UnsupportedFamily("{field} is not a recognised Galois field".format(field=field))
    return [Automorphism(field, image) for image in images]


def maximal_subfields(field):
    """Returns embeddings of the maximal proper subfields of a quadratic or biquadratic field."""
    family = galois_family(field)
    if family == "quadratic":
        return [rational_embedding(rational_field(), field)]
    if family == "biquadratic":
        (a, root_a), (b, root_b) = _biquadratic_roots(field)
        return [
            FieldEmbedding(quadratic_field(d), field, root)
            for d, root in ((a, root_a), (b, root_b), (a * b, root_a * root_b))
        ]
    raise UnsupportedFamily("Maximal subfields of {field} are not known".format(field=field))


def discriminant(field):
    return field.discriminant
