"""
Reading and writing map specs, tower specs and probe corpora.

All three are JSON documents. Rationals are strings such as "-1/3", fields are arrays of
defining polynomial coefficients (constant term first), and a place is an object giving its
prime and its index in the canonical order of places_above().
"""

import json
from fractions import Fraction
from functools import wraps

from omega.fields import FieldEmbedding, FieldError, OmegaError, make_field, parse_polynomial
from omega.maps import DegreeProportional, GaloisInvariantFromBase, LinearCombination, TabulatedMap, TowerDefined
from omega.places import places_above


class SpecError(OmegaError):

    """A spec document could not be parsed."""


def reports_spec_errors(func):
    """Re-raises any other OmegaError met while reading a document as a SpecError."""
    @wraps(func)
    def do_parse(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except SpecError:
            raise
        except OmegaError as ex:
            raise SpecError("{name}: {ex}".format(name=ex.__class__.__name__, ex=ex)) from ex
    return do_parse


def parse_rational(value):
    """Parses an int or a "p/q" string. Floats are rejected, since they are not exact."""
    if isinstance(value, bool) or not isinstance(value, (int, str, Fraction)):
        raise SpecError("Expected a rational, got {value!r}".format(value=value))
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise SpecError("Expected a rational, got {value!r}".format(value=value))


def format_rational(value):
    return str(Fraction(value))


def parse_polynomial_spec(value):
    try:
        return parse_polynomial(value)
    except ValueError as ex:
        raise SpecError(str(ex))


def parse_field(value):
    """Parses a field given as a coefficient array or a polynomial expression."""
    polynomial = parse_polynomial_spec(value)
    try:
        return make_field(polynomial)
    except FieldError as ex:
        raise SpecError("Invalid field {value!r}: {ex}".format(value=value, ex=ex))


def format_field(field):
    return list(field.polynomial.coefficients)


def parse_element(value, field):
    """Parses a coordinate vector "[a0, a1, ...]" over the field generator, or a rational."""
    if isinstance(value, str):
        text = value.strip()
        if text.startswith("["):
            try:
                value = json.loads(text)
            except ValueError:
                raise SpecError("Cannot parse element {value!r}".format(value=value))
        else:
            value = [text]
    elif isinstance(value, int) and not isinstance(value, bool):
        value = [value]
    if not isinstance(value, list):
        raise SpecError("Cannot parse element {value!r}".format(value=value))
    if len(value) > field.degree:
        raise SpecError("{value!r} has more coordinates than the degree of {field}".format(value=value, field=field))
    return field.element([parse_rational(coordinate) for coordinate in value])


def format_element(element):
    return [format_rational(coordinate) for coordinate in element.coordinates]


def _get(document, key, expected=None):
    if not isinstance(document, dict):
        raise SpecError("Expected an object, got {document!r}".format(document=document))
    try:
        value = document[key]
    except KeyError:
        raise SpecError("Missing {key!r} in {document!r}".format(key=key, document=document))
    if expected is not None and not isinstance(value, expected):
        raise SpecError("{key!r} has the wrong type in {document!r}".format(key=key, document=document))
    return value


def parse_place(document, field=None):
    """Parses {"prime": p, "index": i}, with an optional "field" overriding the given one."""
    if isinstance(document, dict) and "field" in document:
        field = parse_field(document["field"])
    if field is None:
        raise SpecError("No field given for place {document!r}".format(document=document))
    prime, index = _get(document, "prime", int), _get(document, "index", int)
    places = places_above(field, prime)
    if not 0 <= index < len(places):
        raise SpecError("{field} has {count} places over {prime}, not {index}".format(
            field=field,
            count=len(places),
            prime=prime,
            index=index,
        ))
    return places[index]


def format_place(place, with_field=False):
    document = {"prime": place.prime, "index": place.index}
    if with_field:
        document["field"] = format_field(place.field)
    return document


def _parse_table(entries, field=None):
    if not isinstance(entries, list):
        raise SpecError("Expected a list of table entries, got {entries!r}".format(entries=entries))
    table = {}
    for entry in entries:
        place = parse_place(entry, field)
        if place in table:
            raise SpecError("{place!r} appears twice in a table".format(place=place))
        table[place] = parse_rational(_get(entry, "value"))
    return table


def _format_table(table, with_field=False):
    return [
        dict(format_place(place, with_field), value=format_rational(value))
        for place, value in sorted(table.items(), key=lambda item: (format_field(item[0].field), item[0]))
    ]


def _parse_background(document):
    if document is None:
        return DegreeProportional()
    background = parse_map(document)
    if not isinstance(background, DegreeProportional):
        raise SpecError("A background must be a degree_proportional map")
    return background


def _parse_degree_proportional(document):
    values = _get(document, "values", dict) if "values" in document else {}
    try:
        values = {int(prime): parse_rational(value) for prime, value in values.items()}
    except ValueError:
        raise SpecError("Primes must be integers in {values!r}".format(values=values))
    default = document.get("default")
    return DegreeProportional(values, None if default is None else parse_rational(default))


def _parse_galois_invariant_base(document):
    field = parse_field(_get(document, "field"))
    return GaloisInvariantFromBase(field, _parse_table(_get(document, "table"), field), _parse_background(
        document.get("background"),
    ))


def _parse_tower(document):
    fields = [parse_field(value) for value in _get(document, "fields", list)]
    images = _get(document, "embeddings", list)
    tables = _get(document, "tables", list)
    if len(images) != len(fields) - 1 or len(tables) != len(fields):
        raise SpecError("A tower of {count} fields needs {count} tables and one fewer embeddings".format(
            count=len(fields),
        ))
    try:
        embeddings = [
            FieldEmbedding(source, target, parse_element(image, target))
            for source, target, image in zip(fields, fields[1:], images)
        ]
    except FieldError as ex:
        raise SpecError(str(ex))
    return TowerDefined(
        fields,
        embeddings,
        [_parse_table(table, field) for table, field in zip(tables, fields)],
        _parse_background(document.get("background")),
    )


def _parse_linear_combination(document):
    return LinearCombination([
        (parse_rational(_get(term, "coefficient")), parse_map(_get(term, "map")))
        for term in _get(document, "terms", list)
    ])


def _parse_raw_table(document):
    return TabulatedMap(_parse_table(_get(document, "entries")), _parse_background(document.get("background")))


_PARSERS = {
    DegreeProportional.kind: _parse_degree_proportional,
    GaloisInvariantFromBase.kind: _parse_galois_invariant_base,
    TowerDefined.kind: _parse_tower,
    LinearCombination.kind: _parse_linear_combination,
    TabulatedMap.kind: _parse_raw_table,
}


@reports_spec_errors
def parse_map(document):
    """Parses a map spec document into a ConsistentMap."""
    kind = _get(document, "kind")
    try:
        parser = _PARSERS[kind]
    except (KeyError, TypeError):
        raise SpecError("Unknown map kind {kind!r}".format(kind=kind))
    return parser(document)


def serialize_map(consistent_map):
    """Returns the map spec document of a ConsistentMap."""
    document = {"kind": consistent_map.kind}
    if isinstance(consistent_map, DegreeProportional):
        document["values"] = {
            str(prime): format_rational(value) for prime, value in sorted(consistent_map.values.items())
        }
        if consistent_map.default is not None:
            document["default"] = format_rational(consistent_map.default)
    elif isinstance(consistent_map, GaloisInvariantFromBase):
        document["field"] = format_field(consistent_map.field)
        document["table"] = _format_table(consistent_map.table)
        document["background"] = serialize_map(consistent_map.background)
    elif isinstance(consistent_map, TowerDefined):
        document["fields"] = [format_field(field) for field in consistent_map.fields]
        document["embeddings"] = [format_element(embedding.image) for embedding in consistent_map.embeddings]
        document["tables"] = [_format_table(table) for table in consistent_map.tables]
        document["background"] = serialize_map(consistent_map.background)
    elif isinstance(consistent_map, LinearCombination):
        document["terms"] = [
            {"coefficient": format_rational(coefficient), "map": serialize_map(term)}
            for coefficient, term in consistent_map.terms
        ]
    elif isinstance(consistent_map, TabulatedMap):
        document["entries"] = _format_table(consistent_map.entries, with_field=True)
        document["background"] = serialize_map(consistent_map.background)
    else:
        raise SpecError("Cannot serialize {consistent_map!r}".format(consistent_map=consistent_map))
    return document


class TowerSpec(object):

    """A declared set of fields and embeddings, with the primes and invariance bases to check."""

    def __init__(self, fields, embeddings, primes, invariance_bases=()):
        self.fields = fields
        self.embeddings = embeddings
        self.primes = primes
        self.invariance_bases = invariance_bases


@reports_spec_errors
def parse_tower(document):
    """
    Parses a tower spec.

    {"fields": [[0, 1], [1, 0, 1]], "embeddings": [{"source": 0, "target": 1, "image": ["0"]}],
     "primes": [2, 3, 5], "invariance_bases": [0]}
    """
    fields = [parse_field(value) for value in _get(document, "fields", list)]
    embeddings = []
    for entry in _get(document, "embeddings", list):
        source, target = _get(entry, "source", int), _get(entry, "target", int)
        if not (0 <= source < len(fields) and 0 <= target < len(fields)):
            raise SpecError("Embedding {entry!r} refers to a missing field".format(entry=entry))
        try:
            embeddings.append(FieldEmbedding(fields[source], fields[target], parse_element(
                _get(entry, "image"),
                fields[target],
            )))
        except FieldError as ex:
            raise SpecError(str(ex))
    primes = _get(document, "primes", list)
    if not all(isinstance(prime, int) for prime in primes):
        raise SpecError("Primes must be integers, got {primes!r}".format(primes=primes))
    bases = document.get("invariance_bases", [])
    if not isinstance(bases, list) or not all(isinstance(index, int) and 0 <= index < len(fields) for index in bases):
        raise SpecError("Invalid invariance bases {bases!r}".format(bases=bases))
    return TowerSpec(fields, embeddings, primes, [fields[index] for index in bases])


@reports_spec_errors
def parse_probe_corpus(document):
    """
    Parses a probe corpus into a list of (field, place) pairs.

    Explicit probes are listed under "probes"; "fields" and "primes" together add every place
    of those fields over those primes.
    """
    if not isinstance(document, dict):
        raise SpecError("A probe corpus must be an object, got {document!r}".format(document=document))
    probes = []
    for entry in document.get("probes", []):
        place = parse_place(entry)
        probes.append((place.field, place))
    if "fields" in document:
        primes = _get(document, "primes", list)
        for value in _get(document, "fields", list):
            field = parse_field(value)
            for prime in primes:
                probes.extend((field, place) for place in places_above(field, prime))
    return probes


def load_document(path):
    """Reads a JSON document from a file."""
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as ex:
        raise SpecError("Cannot read {path!r}: {ex}".format(path=path, ex=ex))
    except ValueError as ex:
        raise SpecError("{path!r} is not valid JSON: {ex}".format(path=path, ex=ex))