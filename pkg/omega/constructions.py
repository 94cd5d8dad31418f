"""
Explicit constructions: single-place elements, imaginary quadratic class numbers, Galois-invariant
maps from base tables, and the perturbed maps that are invariant under an open or closed
subgroup of the absolute Galois group but not under anything larger.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import isqrt

from sympy import factorint, multiplicity, primerange
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from omega.conf import get_setting
from omega.fields import (
    FieldError,
    FieldMismatch,
    OmegaError,
    automorphisms,
    field_norm,
    galois_family,
    maximal_subfields,
    quadratic_field,
)
from omega.functionals import phi
from omega.maps import (
    CheckResult,
    DegreeProportional,
    GaloisInvariantFromBase,
    LinearCombination,
    TowerDefined,
    Witness,
    canonical_map,
    zero_map,
)
from omega.places import is_supported, places_above, places_over, relative_degree, valuation


logger = logging.getLogger(__name__)


class SearchExhausted(OmegaError):

    """No single-place element was found inside the search bound."""


class NotFundamental(OmegaError):

    """The discriminant is not fundamental."""


class NotNegative(OmegaError):

    """The discriminant is not negative."""


class DuplicatePlace(OmegaError):

    """A base table lists the same place twice."""


class SplitPlaceNotFound(OmegaError):

    """No completely split place was found below OMEGA_PRIME_SEARCH_BOUND."""


class NotGalois(FieldError):

    """The field is not Galois over Q."""


class InvalidSubfields(FieldError):

    """The subfields given are not the maximal subfields of the field."""


class NoSplittingStep(OmegaError):

    """Some step of a tower has only one place over a place below it, at the distinguished prime."""


@dataclass(frozen=True)
class SinglePlaceElement:

    """β with (β) = P^k for the prime ideal P of a place."""

    element: object
    exponent: int
    place: object

    @property
    def norm(self):
        return abs(field_norm(self.element))


def _ideal_basis(place):
    """A Z-basis of the prime ideal (p, g(θ)): p θ^j for j < f and g(θ) θ^j for j < n - f."""
    field = place.field
    theta, generator = field.generator, place.generator_element
    basis = [place.prime * theta ** j for j in range(place.residue_degree)]
    basis.extend(generator * theta ** j for j in range(field.degree - place.residue_degree))
    return basis


def _reduced_ideal_basis(place):
    """The basis from _ideal_basis(), LLL-reduced on integer coordinates."""
    field = place.field
    rows = [[ZZ(int(coordinate)) for coordinate in element.coordinates] for element in _ideal_basis(place)]
    reduced = DomainMatrix(rows, (field.degree, field.degree), ZZ).lll()
    return [field.element([int(coordinate) for coordinate in row]) for row in reduced.to_list()]


def _shell(radius, size):
    """Integer vectors of the given length whose largest absolute entry is exactly radius."""
    for combination in product(range(-radius, radius + 1), repeat=size):
        if max(abs(coefficient) for coefficient in combination) == radius:
            yield combination


def _search_key(item):
    norm, element = item
    coordinates = tuple(element.coordinates)
    return norm, sum(abs(c) for c in coordinates), tuple(-c for c in coordinates)


def _accepted(field, place, basis, radius):
    """Yields ((norm, element), exponent) for the single-place elements of one shell, by increasing norm."""
    candidates = []
    for combination in _shell(radius, len(basis)):
        element = field.zero
        for coefficient, vector in zip(combination, basis):
            if coefficient:
                element = element + coefficient * vector
        candidates.append((abs(int(field_norm(element))), element))
    logger.debug("Searching %s elements of radius %s in the ideal of %r", len(candidates), radius, place)
    for norm, element in sorted(candidates, key=_search_key):
        power = multiplicity(place.prime, norm)
        if norm != place.prime ** power or power % place.residue_degree:
            continue
        exponent = power // place.residue_degree
        if valuation(element, place).value == exponent:
            yield (norm, element), exponent


def single_place_element(field, place, search_bound=None):
    """
    Finds β whose only nonzero finite valuation is at the given place.

    Elements of the prime ideal are enumerated in shells of growing radius over an LLL-reduced
    basis, up to the search bound. Once a shell holds an element of norm N(P)^k and valuation k
    at the place, one further shell is searched and the element of least |Norm(β)| is returned.
    A hit with k = 1 is returned at once.
    """
    if place.field != field:
        raise FieldMismatch("{place!r} is not a place of {field}".format(place=place, field=field))
    search_bound = get_setting("OMEGA_SEARCH_BOUND") if search_bound is None else search_bound
    if search_bound < 1:
        raise ValueError("The search bound must be positive, got {search_bound!r}".format(search_bound=search_bound))
    basis = _reduced_ideal_basis(place)
    best, last_radius = None, search_bound
    radius = 1
    while radius <= last_radius:
        for item, exponent in _accepted(field, place, basis, radius):
            if exponent == 1:
                return SinglePlaceElement(item[1], exponent, place)
            if best is None or _search_key(item) < _search_key(best[0]):
                best = item, exponent
            break
        if best is not None:
            last_radius = min(last_radius, radius + 1)
        radius += 1
    if best is not None:
        (_, element), exponent = best
        return SinglePlaceElement(element, exponent, place)
    raise SearchExhausted("No single-place element for {place!r} within coordinates of size {search_bound}".format(
        place=place,
        search_bound=search_bound,
    ))


def _is_squarefree(n):
    return all(exponent == 1 for exponent in factorint(n).values())


def is_fundamental_discriminant(discriminant):
    if discriminant % 4 == 1:
        return _is_squarefree(abs(discriminant))
    if discriminant % 4 == 0:
        return discriminant // 4 % 4 in (2, 3) and _is_squarefree(abs(discriminant // 4))
    return False


def class_number_imag_quadratic(discriminant):
    """Counts the reduced binary quadratic forms of a negative fundamental discriminant."""
    if discriminant >= 0:
        raise NotNegative("{discriminant} is not negative".format(discriminant=discriminant))
    if not is_fundamental_discriminant(discriminant):
        raise NotFundamental("{discriminant} is not a fundamental discriminant".format(discriminant=discriminant))
    count = 0
    for a in range(1, isqrt(-discriminant // 3) + 1):
        # Reduced: |b| <= a <= c, and b >= 0 whenever |b| = a or a = c.
        for b in range(-a + 1, a + 1):
            if (b * b - discriminant) % (4 * a):
                continue
            c = (b * b - discriminant) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            count += 1
    return count


def invariant_map_from_base(field, table, background=None):
    """
    Returns the unique K-Galois-invariant consistent map with the given values on places of K.

    The table is a mapping or a sequence of (place, value) pairs.
    """
    items = list(table.items()) if isinstance(table, dict) else list(table)
    values = {}
    for place, value in items:
        if place in values:
            raise DuplicatePlace("{place!r} appears twice in the base table".format(place=place))
        if place.field != field:
            raise FieldMismatch("{place!r} is not a place of {field}".format(place=place, field=field))
        values[place] = Fraction(value)
    return GaloisInvariantFromBase(field, values, background or zero_map())


def qi_worked_example():
    """
    The Q(i)-invariant map with d(v_1) = -1/3 and d(v_2) = -2/3 at the places over 5, and -s_v
    elsewhere. Its functional extends Ω but is not invariant under complex conjugation.
    """
    field = quadratic_field(-1)
    first, second = places_above(field, 5)
    return invariant_map_from_base(field, {first: Fraction(-1, 3), second: Fraction(-2, 3)}, canonical_map())


def _as_degree_proportional(values):
    if values is None:
        return canonical_map()
    if isinstance(values, DegreeProportional):
        return values
    if isinstance(values, dict):
        return DegreeProportional(values)
    return DegreeProportional(default=values)


def is_galois_certificate(field, primes):
    """Returns a supported prime above which the places do not all have the same (e, f), or None."""
    for prime in primes:
        if not is_supported(field, prime):
            continue
        patterns = {(place.ramification, place.residue_degree) for place in places_above(field, prime)}
        if len(patterns) > 1:
            return prime
    return None


def _check_galois(field):
    witness = is_galois_certificate(field, primerange(2, 100))
    if witness is not None:
        raise NotGalois("{field} is not Galois: the places over {prime} are not all alike".format(
            field=field,
            prime=witness,
        ))
    automorphisms(field)


def _validate_subfields(field, subfields):
    for embedding in subfields:
        if embedding.target != field:
            raise FieldMismatch("{embedding!r} does not embed into {field}".format(embedding=embedding, field=field))
    family = galois_family(field)
    if family == "quadratic" and (len(subfields) != 1 or subfields[0].source.degree != 1):
        raise InvalidSubfields("The only maximal subfield of a quadratic field is Q")
    if family == "biquadratic" and (
        len(subfields) != 3
        or any(embedding.source.degree != 2 for embedding in subfields)
        or len({embedding.source for embedding in subfields}) != 3
    ):
        raise InvalidSubfields("A biquadratic field has three distinct quadratic maximal subfields")


@dataclass(frozen=True)
class SplitPerturbation:

    """The ε values placed on the places of K over one completely split place of a subfield."""

    embedding: object
    subfield_place: object
    entries: tuple

    def __post_init__(self):
        if sum((epsilon for _, epsilon in self.entries), Fraction(0)) != 0:
            raise ValueError("The ε values over {place!r} do not sum to zero".format(place=self.subfield_place))
        if any(epsilon == 0 for _, epsilon in self.entries):
            raise ValueError("The ε values over {place!r} must be nonzero".format(place=self.subfield_place))


@dataclass(frozen=True)
class PerturbationScheme:

    """The perturbations of a perturbed open subgroup map, one per maximal subfield."""

    perturbations: tuple = ()

    def epsilon(self, place):
        for perturbation in self.perturbations:
            for candidate, epsilon in perturbation.entries:
                if candidate == place:
                    return epsilon
        return Fraction(0)

    @property
    def primes(self):
        return [perturbation.subfield_place.prime for perturbation in self.perturbations]


def _default_epsilons(count):
    return [Fraction(-(count - 1))] + [Fraction(1)] * (count - 1)


def _find_split_place(field, embedding, used, bound):
    """Returns the first place of the subfield that splits completely in the field, skipping used primes."""
    for prime in primerange(2, bound + 1):
        if prime in used or not is_supported(field, prime) or not is_supported(embedding.source, prime):
            continue
        for place in places_above(embedding.source, prime):
            above = places_over(field, embedding, place)
            if len(above) == embedding.degree:
                return place, above
    raise SplitPlaceNotFound("No place of {source} below {bound} splits completely in {field}".format(
        source=embedding.source,
        bound=bound,
        field=field,
    ))


def perturbed_open_subgroup_map(field, subfields=None, x=None, prime_search_bound=None, epsilons=None):
    """
    Returns (c, scheme) with c invariant under the Galois group of the field, but under no
    larger open subgroup.

    For each maximal subfield K_i a place v_i of K_i that splits completely in K is found, on
    distinct primes, and d(w) = x_p s_w + ε(w) is used on the places w over v_i, with the ε
    summing to zero over each v_i. The default ε over m places is (-(m - 1), 1, ..., 1); a list
    of ε sequences, one per subfield, can be given instead.
    """
    background = _as_degree_proportional(x)
    if field.degree == 1:
        return invariant_map_from_base(field, {}, background), PerturbationScheme()
    _check_galois(field)
    subfields = list(maximal_subfields(field) if subfields is None else subfields)
    _validate_subfields(field, subfields)
    bound = get_setting("OMEGA_PRIME_SEARCH_BOUND") if prime_search_bound is None else prime_search_bound
    used, perturbations, table = set(), [], {}
    for index, embedding in enumerate(subfields):
        place, above = _find_split_place(field, embedding, used, bound)
        logger.debug("Place %r of %s splits completely", place, embedding.source)
        used.add(place.prime)
        values = _default_epsilons(len(above)) if epsilons is None else [Fraction(e) for e in epsilons[index]]
        if len(values) != len(above):
            raise ValueError("Expected {count} ε values for subfield {index}".format(count=len(above), index=index))
        perturbation = SplitPerturbation(embedding, place, tuple(zip(above, values)))
        perturbations.append(perturbation)
        for upper, epsilon in perturbation.entries:
            table[upper] = background.evaluate(field, upper) + epsilon
    return invariant_map_from_base(field, table, background), PerturbationScheme(tuple(perturbations))


def _step_epsilons(ratios, step):
    """
    Returns ε with Σ r_w ε_w = 1 and every |ε_w - 1| strictly below 2^-(step + 1).

    All but the last place get 1 + δ with δ = 2^-(step + 1) r_last, and the last one absorbs the
    difference.
    """
    last = ratios[-1]
    delta = Fraction(1, 2 ** (step + 1)) * last
    return [1 + delta] * (len(ratios) - 1) + [1 - delta * (1 - last) / last]


def _build_tower(fields, embeddings, prime, background):
    for tower_field in fields:
        automorphisms(tower_field)
    base_value = background.value_at(prime)
    tables = [{
        place: base_value * Fraction(place.local_degree, fields[0].degree)
        for place in places_above(fields[0], prime)
    }]
    for step, embedding in enumerate(embeddings, start=1):
        table = {}
        for place, value in tables[-1].items():
            above = places_over(embedding.target, embedding, place)
            if len(above) < 2:
                raise NoSplittingStep("{prime} does not split from {source} to {target}".format(
                    prime=prime,
                    source=embedding.source,
                    target=embedding.target,
                ))
            ratios = [Fraction(relative_degree(upper, place), embedding.degree) for upper in above]
            for upper, ratio, epsilon in zip(above, ratios, _step_epsilons(ratios, step)):
                table[upper] = ratio * value * epsilon
        tables.append(table)
    return TowerDefined(fields, embeddings, tables, background)


def tower_map_prefix(chain, prime, x=None, depth=None):
    """
    Builds the first fields of the tower map at the distinguished prime q.

    The values over q start from d_1(v) = x_q s_v on K_1, and at step i each place splits its
    value over the places above it in proportion to the local degrees, scaled by factors ε within
    2^-(i + 1) of 1. When x_q = 0 the tower is built with x_q = 1 and the degree-proportional map
    with x_q = -1 is added, so the result still has c(Q, q) = 0.
    """
    chain = list(chain)
    if not chain:
        raise ValueError("A tower needs at least one embedding")
    fields = [chain[0].source] + [embedding.target for embedding in chain]
    depth = len(fields) if depth is None else depth
    if not 1 <= depth <= len(fields):
        raise ValueError("Depth must be between 1 and {count}, got {depth!r}".format(count=len(fields), depth=depth))
    for inner, outer in zip(chain, chain[1:]):
        if inner.target != outer.source:
            raise FieldMismatch("The embeddings do not form a chain")
    background = _as_degree_proportional(x)
    fields, embeddings = fields[:depth], chain[:depth - 1]
    if background.value_at(prime) == 0:
        shifted = _build_tower(fields, embeddings, prime, background.with_value(prime, 1))
        return LinearCombination([(1, shifted), (1, DegreeProportional({prime: -1}))])
    return _build_tower(fields, embeddings, prime, background)


def tower_deviations(tower):
    """Returns {(step, place): ε} recovered from the tables of a tower map."""
    deviations = {}
    for step, embedding in enumerate(tower.embeddings, start=1):
        lower, upper = tower.tables[step - 1], tower.tables[step]
        for place, value in lower.items():
            if not value:
                continue
            for above in places_over(embedding.target, embedding, place):
                ratio = Fraction(relative_degree(above, place), embedding.degree)
                deviations[(step, above)] = upper[above] / (ratio * value)
    return deviations


def truncated_invariant_map(consistent_map, field, primes, context=None):
    """
    Returns the K-Galois-invariant map that agrees with the given map on the places of K over
    the primes, and vanishes elsewhere.
    """
    table = {
        place: consistent_map.evaluate(field, place, context)
        for prime in primes
        for place in places_above(field, prime)
    }
    return invariant_map_from_base(field, table, zero_map())


def stabilizer_probe(consistent_map, automorphism, probes, context=None):
    """Checks Φ_c(σ(α)) = Φ_c(α) for each probe α; a failure shows σ is outside the stabilizer of Φ_c."""
    witnesses = []
    for element in probes:
        if element.field != automorphism.field:
            raise FieldMismatch("{element!r} is not in the field of {automorphism!r}".format(
                element=element,
                automorphism=automorphism,
            ))
        witnesses.append(Witness(
            element.field,
            None,
            phi(consistent_map, element, context=context),
            phi(consistent_map, automorphism(element), context=context),
        ))
    return CheckResult(all(witness.holds for witness in witnesses), witnesses)

