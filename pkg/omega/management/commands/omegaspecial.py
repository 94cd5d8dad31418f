"""Finds an element whose only nonzero finite valuation is at a given place."""

from omega.constructions import single_place_element
from omega.management.base import OmegaCommand
from omega.specs import parse_field, parse_place


class Command(OmegaCommand):

    help = "Finds β with (β) = P^k for the prime ideal P of a place, with k as small as possible."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("field", help="Defining polynomial, as an expression or a JSON coefficient array.")
        parser.add_argument("prime", type=int)
        parser.add_argument("index", type=int, help="Index of the place in canonical order.")

    def get_payload(self, **options):
        field = parse_field(options["field"])
        place = parse_place({"prime": options["prime"], "index": options["index"]}, field)
        result = single_place_element(field, place, options["search_bound"])
        self.log(2, "Found {element} with norm {norm}", element=result.element, norm=result.norm)
        return {
            "place": place,
            "beta": result.element,
            "k": result.exponent,
            "norm": result.norm,
        }
