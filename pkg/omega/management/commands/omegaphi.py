"""Evaluates the functional Φ_c of a consistent map at an algebraic number."""

from omega.functionals import phi
from omega.management.base import OmegaCommand, resolve_map
from omega.specs import parse_element, parse_field


class Command(OmegaCommand):

    help = "Evaluates Φ_c at an element of a number field, exactly."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("map", help="A map spec file, or one of the recipes canonical, qi-example or zero.")
        parser.add_argument("field", help="Defining polynomial, as an expression or a JSON coefficient array.")
        parser.add_argument("element", help='Coordinates over the generator, such as "[2,-1]", or a rational.')
        parser.add_argument(
            "--root-index",
            action="store",
            default=1,
            type=int,
            help="Evaluate at the n-th root class of the element.",
        )

    def get_payload(self, **options):
        consistent_map = resolve_map(options["map"])
        field = parse_field(options["field"])
        element = parse_element(options["element"], field)
        value = phi(consistent_map, element, options["root_index"])
        payload = {"element": element, "root_index": options["root_index"], "value": value}
        if options["approx"]:
            payload["approx"] = float(value)
        return payload
