"""Evaluates the canonical extension of the prime omega function."""

from omega.functionals import omega_canonical
from omega.management.base import OmegaCommand
from omega.specs import parse_element, parse_field


class Command(OmegaCommand):

    help = "Evaluates Ω(Norm(α)) / [K:Q] at an element of a number field."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("field", help="Defining polynomial, as an expression or a JSON coefficient array.")
        parser.add_argument("element", help='Coordinates over the generator, such as "[2,-1]", or a rational.')

    def get_payload(self, **options):
        element = parse_element(options["element"], parse_field(options["field"]))
        value = omega_canonical(element)
        payload = {"element": element, "omega": value}
        if options["approx"]:
            payload["approx"] = float(value)
        return payload
