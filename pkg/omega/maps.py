"""Finitely described consistent maps c(K, v), evaluated lazily at any supported place."""

import abc
import logging
from collections import deque
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from weakref import WeakValueDictionary

from omega.fields import FieldMismatch, InvalidEmbedding, OmegaError, identity_embedding, rational_embedding
from omega.places import place_under, places_above, places_over, relative_degree


logger = logging.getLogger(__name__)


class MapError(OmegaError):

    """Something went wrong building or evaluating a consistent map."""


class NoCommonOverfield(MapError):

    """No registered embeddings relate the query field to the fields of the map."""


class InconsistentTables(MapError):

    """The tables of a tower map do not add up across an extension."""


class RegistrationError(MapError):

    """Something went wrong registering an embedding."""


class EmbeddingRegistry(object):

    """A registry of field embeddings, searched for paths between fields."""

    _created_registries = WeakValueDictionary()

    @classmethod
    def get_created_registries(cls):
        """Returns all created embedding registries."""
        return list(cls._created_registries.items())

    def __init__(self, registry_slug):
        """Initializes the embedding registry."""
        # Check the slug is unique for this project.
        if registry_slug in EmbeddingRegistry._created_registries:
            raise RegistrationError(
                "An embedding registry has already been created with the slug {registry_slug!r}".format(
                    registry_slug=registry_slug,
                )
            )
        self._registered_embeddings = {}
        self._registry_slug = registry_slug
        self.__class__._created_registries[registry_slug] = self

    def _key(self, embedding):
        return embedding.source, embedding.target

    def is_registered(self, embedding):
        """Checks whether an embedding between the same two fields is registered."""
        return self._key(embedding) in self._registered_embeddings

    def register(self, embedding):
        """
        Registers the given embedding.

        Only one embedding between any two fields can be registered, otherwise a
        RegistrationError will be raised.
        """
        if self.is_registered(embedding):
            raise RegistrationError("An embedding of {source} into {target} is already registered".format(
                source=embedding.source,
                target=embedding.target,
            ))
        self._registered_embeddings[self._key(embedding)] = embedding

    def unregister(self, embedding):
        """
        Unregisters the given embedding.

        If no embedding between its fields is registered, a RegistrationError will be raised.
        """
        if not self.is_registered(embedding):
            raise RegistrationError("{embedding!r} is not registered".format(
                embedding=embedding,
            ))
        del self._registered_embeddings[self._key(embedding)]

    def get_registered_embeddings(self):
        """Returns a sequence of the registered embeddings."""
        return list(self._registered_embeddings.values())

    def find_embedding(self, source, target, extra=()):
        """
        Returns an embedding of source into target, or None.

        Identity and degree one embeddings are built directly. Otherwise the registered
        embeddings and the given extra embeddings are searched for a path, which is composed.
        """
        if source == target:
            return identity_embedding(source)
        if source.degree == 1:
            return rational_embedding(source, target)
        edges = {}
        for embedding in list(extra) + self.get_registered_embeddings():
            edges.setdefault(embedding.source, []).append(embedding)
        paths = {source: None}
        queue = deque([source])
        while queue:
            current = queue.popleft()
            for embedding in edges.get(current, ()):
                if embedding.target in paths:
                    continue
                paths[embedding.target] = embedding if paths[current] is None else embedding.compose(paths[current])
                if embedding.target == target:
                    return paths[target]
                queue.append(embedding.target)
        return None


default_registry = EmbeddingRegistry("default")


# Easy registration.
register = default_registry.register
unregister = default_registry.unregister
is_registered = default_registry.is_registered
get_registered_embeddings = default_registry.get_registered_embeddings


class EvaluationContext(object):

    """
    Supplies the embeddings needed to evaluate a map at a place of an unrelated field.

    When an overfield is given, base field maps are evaluated through it, which makes
    the choice of overfield observable (and testable).
    """

    def __init__(self, overfield=None, embeddings=(), registry=None):
        self.overfield = overfield
        self.embeddings = tuple(embeddings)
        self.registry = registry or default_registry

    def with_embeddings(self, *embeddings):
        return EvaluationContext(self.overfield, self.embeddings + embeddings, self.registry)

    def find_embedding(self, source, target, extra=()):
        return self.registry.find_embedding(source, target, extra=self.embeddings + tuple(extra))


def _context(context):
    return context or EvaluationContext()


def _check_place(field, place):
    if place.field != field:
        raise FieldMismatch("{place!r} is not a place of {field}".format(place=place, field=field))


class ConsistentMap(metaclass=abc.ABCMeta):

    """Base class for consistent maps c: J → Q."""

    kind = None

    @abc.abstractmethod
    def evaluate(self, field, place, context=None):
        """Returns c(field, place) as a Fraction."""
        raise NotImplementedError

    def __call__(self, field, place, context=None):
        return self.evaluate(field, place, context)

    def __add__(self, other):
        if not isinstance(other, ConsistentMap):
            return NotImplemented
        return LinearCombination([(1, self), (1, other)])

    def __sub__(self, other):
        if not isinstance(other, ConsistentMap):
            return NotImplemented
        return LinearCombination([(1, self), (-1, other)])

    def __neg__(self):
        return LinearCombination([(-1, self)])

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return LinearCombination([(scalar, self)])

    __rmul__ = __mul__


class DegreeProportional(ConsistentMap):

    """c(K, v) = x_p [K_v:Q_p] / [K:Q], for values x_p with an optional default."""

    kind = "degree_proportional"

    def __init__(self, values=None, default=None):
        self.values = {int(prime): Fraction(value) for prime, value in (values or {}).items()}
        self.default = None if default is None else Fraction(default)

    def value_at(self, prime):
        if prime in self.values:
            return self.values[prime]
        return self.default or Fraction(0)

    def with_value(self, prime, value):
        values = dict(self.values)
        values[prime] = Fraction(value)
        return DegreeProportional(values, self.default)

    def evaluate(self, field, place, context=None):
        _check_place(field, place)
        return self.value_at(place.prime) * Fraction(place.local_degree, field.degree)

    def __repr__(self):
        return "DegreeProportional({values!r}, default={default!r})".format(
            values=self.values,
            default=self.default,
        )


def zero_map():
    return DegreeProportional()


def canonical_map():
    """The map with x_p = -1 everywhere, whose functional extends Ω."""
    return DegreeProportional(default=-1)


class GaloisInvariantFromBase(ConsistentMap):

    """
    The K-Galois-invariant map with given values d_K on finitely many places of K.

    Places of K outside the table take their value from the background map. Values at other
    fields F are computed through an overfield L of both: c(F, u) = Σ [L_w:K_v]/[L:K] d_K(v),
    the sum running over the places w of L over u, with v the place of K under w.
    """

    kind = "galois_invariant_base"

    def __init__(self, field, table, background=None):
        for place in table:
            _check_place(field, place)
        self.field = field
        self.table = {place: Fraction(value) for place, value in table.items()}
        self.background = background or zero_map()
        self._primes = frozenset(place.prime for place in self.table)

    def base_value(self, place):
        """d_K(v)."""
        if place in self.table:
            return self.table[place]
        return self.background.evaluate(self.field, place)

    def _evaluate_through(self, overfield, field, place, context):
        to_overfield = context.find_embedding(field, overfield)
        from_base = context.find_embedding(self.field, overfield)
        if to_overfield is None or from_base is None:
            raise NoCommonOverfield("{overfield} is not an overfield of both {field} and {base}".format(
                overfield=overfield,
                field=field,
                base=self.field,
            ))
        total = Fraction(0)
        for upper in places_over(overfield, to_overfield, place):
            lower = place_under(from_base, upper)
            total += Fraction(relative_degree(upper, lower), from_base.degree) * self.base_value(lower)
        return total

    def evaluate(self, field, place, context=None):
        _check_place(field, place)
        if place.prime not in self._primes:
            return self.background.evaluate(field, place)
        context = _context(context)
        if context.overfield is not None:
            return self._evaluate_through(context.overfield, field, place, context)
        if field == self.field:
            return self.base_value(place)
        # F ⊆ K: sum over the places of K above u.
        down = context.find_embedding(field, self.field)
        if down is not None:
            return sum((self.base_value(upper) for upper in places_over(self.field, down, place)), Fraction(0))
        # K ⊆ F: F itself is an overfield.
        up = context.find_embedding(self.field, field)
        if up is not None:
            return self._evaluate_through(field, field, place, context)
        raise NoCommonOverfield("No overfield of {field} and {base} is known".format(
            field=field,
            base=self.field,
        ))

    def __repr__(self):
        return "<GaloisInvariantFromBase on {field} with {count} table entries>".format(
            field=self.field,
            count=len(self.table),
        )


class TowerDefined(ConsistentMap):

    """
    A map given by tables d_i on the places of a finite tower K_1 ⊆ K_2 ⊆ ... ⊆ K_m.

    Each table covers every place of K_i over the primes it involves, and the tables satisfy
    d_i(v) = Σ_{w | v} d_{i+1}(w). Values at a field F embedded in some K_i are sums of d_i over
    the places above; primes outside the tables take their value from the background map.
    """

    kind = "tower"

    def __init__(self, fields, embeddings, tables, background=None):
        fields, embeddings = list(fields), list(embeddings)
        if not fields or len(embeddings) != len(fields) - 1 or len(tables) != len(fields):
            raise InconsistentTables("A tower of {count} fields needs {count} tables and one fewer embeddings".format(
                count=len(fields),
            ))
        for index, embedding in enumerate(embeddings):
            if embedding.source != fields[index] or embedding.target != fields[index + 1]:
                raise InvalidEmbedding("Embedding {index} does not link {source} to {target}".format(
                    index=index,
                    source=fields[index],
                    target=fields[index + 1],
                ))
        self.fields = fields
        self.embeddings = embeddings
        self.tables = [{place: Fraction(value) for place, value in table.items()} for table in tables]
        self.background = background or zero_map()
        self.primes = frozenset(place.prime for table in self.tables for place in table)
        self._validate()

    def _validate(self):
        for level, (field, table) in enumerate(zip(self.fields, self.tables)):
            for place in table:
                _check_place(field, place)
            for prime in self.primes:
                missing = [place for place in places_above(field, prime) if place not in table]
                if missing:
                    raise InconsistentTables("Table {level} has no value at {missing!r}".format(
                        level=level,
                        missing=missing,
                    ))
        for level, embedding in enumerate(self.embeddings):
            lower, upper = self.tables[level], self.tables[level + 1]
            for place, value in lower.items():
                total = sum((upper[w] for w in places_over(embedding.target, embedding, place)), Fraction(0))
                if total != value:
                    raise InconsistentTables("d_{level}({place!r}) = {value} but the places above give {total}".format(
                        level=level + 1,
                        place=place,
                        value=value,
                        total=total,
                    ))
            logger.debug("Tower tables agree across step %s", level + 1)

    def evaluate(self, field, place, context=None):
        _check_place(field, place)
        if place.prime not in self.primes:
            return self.background.evaluate(field, place)
        context = _context(context)
        for level, tower_field in enumerate(self.fields):
            embedding = context.find_embedding(field, tower_field, extra=self.embeddings)
            if embedding is not None:
                table = self.tables[level]
                return sum((table[upper] for upper in places_over(tower_field, embedding, place)), Fraction(0))
        raise NoCommonOverfield("{field} does not embed in any field of the tower".format(field=field))

    def __repr__(self):
        return "<TowerDefined over {count} fields at primes {primes}>".format(
            count=len(self.fields),
            primes=sorted(self.primes),
        )


class LinearCombination(ConsistentMap):

    """A rational linear combination Σ r_i c_i of consistent maps."""

    kind = "linear_combination"

    def __init__(self, terms):
        self.terms = [(Fraction(coefficient), consistent_map) for coefficient, consistent_map in terms]

    def evaluate(self, field, place, context=None):
        return sum(
            (coefficient * term.evaluate(field, place, context) for coefficient, term in self.terms),
            Fraction(0),
        )

    def __repr__(self):
        return "LinearCombination({terms!r})".format(terms=self.terms)


def combine(terms):
    """Returns the map Σ r_i c_i for a sequence of (r_i, c_i) pairs."""
    return LinearCombination(terms)


class TabulatedMap(ConsistentMap):

    """
    Explicit values at listed places, with a background map elsewhere.

    Nothing makes these values consistent, so this is how hand-written or corrupted
    tables are fed to the checks.
    """

    kind = "raw_table"

    def __init__(self, entries, background=None):
        self.entries = {place: Fraction(value) for place, value in entries.items()}
        self.background = background or zero_map()

    def evaluate(self, field, place, context=None):
        _check_place(field, place)
        if place in self.entries:
            return self.entries[place]
        return self.background.evaluate(field, place, context)

    def __repr__(self):
        return "<TabulatedMap with {count} entries>".format(count=len(self.entries))


@dataclass(frozen=True)
class Witness:

    """Both sides of a checked identity at one place."""

    field: object
    place: object
    expected: Fraction
    actual: Fraction

    @property
    def holds(self):
        return self.expected == self.actual


@dataclass
class CheckResult:

    """The outcome of a finite check, with the witnesses it was decided on."""

    passed: bool
    witnesses: list = dataclass_field(default_factory=list)

    def __bool__(self):
        return self.passed

    @property
    def failures(self):
        return [witness for witness in self.witnesses if not witness.holds]


def _result(witnesses):
    return CheckResult(all(witness.holds for witness in witnesses), witnesses)


def check_consistency(consistent_map, embedding, place, context=None):
    """Checks c(K, v) = Σ_{w | v} c(L, w) for the extension given by the embedding."""
    context = _context(context).with_embeddings(embedding)
    expected = consistent_map.evaluate(embedding.source, place, context)
    actual = sum(
        (consistent_map.evaluate(embedding.target, upper, context)
         for upper in places_over(embedding.target, embedding, place)),
        Fraction(0),
    )
    return _result([Witness(embedding.source, place, expected, actual)])


def check_galois_invariance(consistent_map, field, embedding, place, context=None):
    """Checks c(L, w) = [L_w:K_v]/[L:K] c(K, v) at every place w of L over v."""
    if embedding.source != field:
        raise FieldMismatch("{embedding!r} is not an embedding of {field}".format(
            embedding=embedding,
            field=field,
        ))
    context = _context(context).with_embeddings(embedding)
    base = consistent_map.evaluate(field, place, context)
    witnesses = [
        Witness(
            embedding.target,
            upper,
            Fraction(relative_degree(upper, place), embedding.degree) * base,
            consistent_map.evaluate(embedding.target, upper, context),
        )
        for upper in places_over(embedding.target, embedding, place)
    ]
    return _result(witnesses)


def support_check(consistent_map, primes, probes, context=None):
    """Checks that c vanishes at every probe place whose prime is outside the given set."""
    primes = frozenset(primes)
    witnesses = [
        Witness(field, place, Fraction(0), consistent_map.evaluate(field, place, context))
        for field, place in probes
        if place.prime not in primes
    ]
    return _result(witnesses)


def boundedness_table(consistent_map, probes, context=None):
    """
    Returns, per prime, the largest |c(K, v)| [K:Q] / [K_v:Q_p] over the probes.

    This is the coefficient of 1/log p bounding c(K, v) [K:Q] / ([K_v:Q_p] log p).
    """
    probes = list(probes)
    if not probes:
        raise ValueError("At least one probe is needed")
    table = {}
    for field, place in probes:
        value = abs(consistent_map.evaluate(field, place, context)) * Fraction(field.degree, place.local_degree)
        table[place.prime] = max(table.get(place.prime, value), value)
    return table


def boundedness_witness(consistent_map, probes, context=None):
    """The largest sampled coefficient from boundedness_table()."""
    return max(boundedness_table(consistent_map, probes, context).values())


def agrees_on_probes(consistent_map, other, probes, context=None):
    """Checks that two maps take the same value at every probe."""
    witnesses = [
        Witness(field, place, other.evaluate(field, place, context), consistent_map.evaluate(field, place, context))
        for field, place in probes
    ]
    return _result(witnesses)


def probe_places(fields, primes):
    """Returns (field, place) probes for every place of the fields over the primes."""
    return [(field, place) for field in fields for prime in primes for place in places_above(field, prime)]
