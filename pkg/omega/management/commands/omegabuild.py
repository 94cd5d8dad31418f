"""Builds a consistent map from one of the constructions, and writes its map spec."""

import json

from omega.constructions import perturbed_open_subgroup_map, qi_worked_example, tower_map_prefix
from omega.fields import cyclotomic_embedding, rational_embedding, rational_field, quadratic_field
from omega.management.base import OmegaCommand, encode_payload
from omega.maps import DegreeProportional, canonical_map
from omega.specs import SpecError, load_document, parse_field, parse_rational, parse_tower, serialize_map


RECIPES = ("canonical", "qi-example", "degree-proportional", "open-subgroup", "tower-prefix")


def default_chain():
    """Q ⊂ Q(i) ⊂ Q(ζ_8)."""
    return [rational_embedding(rational_field(), quadratic_field(-1)), cyclotomic_embedding(4, 8)]


class Command(OmegaCommand):

    help = "Builds a consistent map from a construction recipe and prints its map spec."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("recipe", choices=RECIPES)
        parser.add_argument("--field", action="store", default=None, help="The field of the open-subgroup recipe.")
        parser.add_argument(
            "--values",
            action="store",
            default=None,
            help='Values x_p as a JSON object such as {"2": "1/2"}.',
        )
        parser.add_argument("--default", action="store", default="-1", help="The value x_p at unlisted primes.")
        parser.add_argument(
            "--tower",
            action="store",
            default=None,
            help="A tower spec file whose embeddings form a chain, for the tower-prefix recipe.",
        )
        parser.add_argument(
            "--prime",
            action="store",
            default=17,
            type=int,
            help="The distinguished prime of the tower-prefix recipe.",
        )
        parser.add_argument("--depth", action="store", default=None, type=int)
        parser.add_argument("--output", action="store", default=None, help="Also write the map spec to this file.")

    def get_values(self, options):
        values = {}
        if options["values"]:
            try:
                document = json.loads(options["values"])
            except ValueError:
                raise SpecError("--values is not a JSON object")
            if not isinstance(document, dict):
                raise SpecError("--values is not a JSON object")
            values = {int(prime): parse_rational(value) for prime, value in document.items()}
        return DegreeProportional(values, parse_rational(options["default"]))

    def build(self, recipe, options):
        if recipe == "canonical":
            return canonical_map()
        if recipe == "qi-example":
            return qi_worked_example()
        if recipe == "degree-proportional":
            return self.get_values(options)
        if recipe == "open-subgroup":
            if not options["field"]:
                raise SpecError("The open-subgroup recipe needs --field")
            field = parse_field(options["field"])
            consistent_map, scheme = perturbed_open_subgroup_map(field, x=self.get_values(options))
            self.log(2, "Perturbed the places over {primes}", primes=scheme.primes)
            return consistent_map
        chain = parse_tower(load_document(options["tower"])).embeddings if options["tower"] else default_chain()
        return tower_map_prefix(chain, options["prime"], self.get_values(options), options["depth"])

    def get_payload(self, **options):
        document = serialize_map(self.build(options["recipe"], options))
        if options["output"]:
            with open(options["output"], "w", encoding="utf-8") as handle:
                handle.write(encode_payload(document))
        return document
