"""Lists the places of a number field over a prime."""

from omega.management.base import OmegaCommand
from omega.places import places_above
from omega.specs import format_field, parse_field


class Command(OmegaCommand):

    help = "Lists the places of a number field over a prime, with their ramification and residue degrees."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("field", help="Defining polynomial, as an expression or a JSON coefficient array.")
        parser.add_argument("prime", type=int)

    def get_payload(self, **options):
        field = parse_field(options["field"])
        places = places_above(field, options["prime"])
        return {
            "field": format_field(field),
            "prime": options["prime"],
            "places": [
                {
                    "index": place.index,
                    "e": place.ramification,
                    "f": place.residue_degree,
                    "residue_factor": place.residue_polynomial,
                }
                for place in places
            ],
        }
