"""Evaluates the S-norm of an algebraic number as a combination of logarithms of primes."""

from omega.functionals import snorm
from omega.management.base import OmegaCommand
from omega.specs import parse_element, parse_field


class Command(OmegaCommand):

    help = "Evaluates the S-norm of an element, as exact coefficients of log p."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("field", help="Defining polynomial, as an expression or a JSON coefficient array.")
        parser.add_argument("element", help='Coordinates over the generator, such as "[2,-1]", or a rational.')

    def get_payload(self, **options):
        element = parse_element(options["element"], parse_field(options["field"]))
        value = snorm(element)
        payload = {"element": element, "snorm": value}
        if options["approx"]:
            payload["approx"] = value.approx()
        return payload
