"""Shared plumbing for the omega management commands."""

import json
from fractions import Fraction

from django.core.management.base import BaseCommand, CommandError
from django.core.serializers.json import DjangoJSONEncoder

from omega.constructions import qi_worked_example
from omega.fields import FieldElement, IntPolynomial, OmegaError
from omega.functionals import LogLinearValue
from omega.maps import canonical_map, zero_map
from omega.places import Place
from omega.specs import SpecError, format_element, format_place, load_document, parse_map, parse_probe_corpus


# Maps that can be named on the command line instead of given as a map spec file.
MAP_RECIPES = {
    "canonical": canonical_map,
    "qi-example": qi_worked_example,
    "zero": zero_map,
}


class OmegaJSONEncoder(DjangoJSONEncoder):

    """Encodes exact values: rationals as "p/q" strings, and fields, elements and places as arrays and objects."""

    def default(self, o):
        if isinstance(o, Fraction):
            return str(o)
        if isinstance(o, LogLinearValue):
            return o.to_dict()
        if isinstance(o, FieldElement):
            return format_element(o)
        if isinstance(o, IntPolynomial):
            return list(o.coefficients)
        if isinstance(o, Place):
            return format_place(o, with_field=True)
        return super().default(o)


def encode_payload(payload):
    return json.dumps(payload, cls=OmegaJSONEncoder, sort_keys=True)


def resolve_map(value):
    """Returns the map named by a recipe, or parsed from a map spec file."""
    if value in MAP_RECIPES:
        return MAP_RECIPES[value]()
    return parse_map(load_document(value))


class OmegaCommand(BaseCommand):

    """
    Base class for the omega commands.

    Subclasses implement get_payload(), which returns a JSON-serializable result. Spec errors
    exit with status 3 and other omega errors with status 2.
    """

    def add_arguments(self, parser):
        parser.add_argument(
            "--probe-corpus",
            action="store",
            default=None,
            help="A probe corpus file listing the (field, place) pairs to check at.",
        )
        parser.add_argument(
            "--approx",
            action="store_true",
            default=False,
            help="Append decimal renderings of exact values.",
        )
        parser.add_argument(
            "--search-bound",
            action="store",
            default=None,
            type=int,
            help="Largest shell radius for single-place searches.",
        )

    def get_payload(self, **options):
        raise NotImplementedError

    def get_probes(self, options):
        """Returns the probes from --probe-corpus, or None."""
        if not options.get("probe_corpus"):
            return None
        return parse_probe_corpus(load_document(options["probe_corpus"]))

    def log(self, verbosity, message, **kwargs):
        """Writes a progress message to stderr, keeping stdout for the payload."""
        if int(self.verbosity) >= verbosity:
            self.stderr.write(message.format(**kwargs))

    def handle(self, *args, **options):
        """Runs the management command."""
        self.verbosity = options.get("verbosity", 1)
        try:
            payload = self.get_payload(**options)
        except SpecError as ex:
            raise CommandError(str(ex), returncode=3)
        except ValueError as ex:
            raise CommandError(str(ex), returncode=3)
        except OmegaError as ex:
            raise CommandError("{name}: {ex}".format(name=ex.__class__.__name__, ex=ex), returncode=2)
        self.stdout.write(encode_payload(payload))
