"""Evaluates Chowla's summatory function of the Liouville function along a polynomial."""

from omega.functionals import summatory_chowla
from omega.management.base import OmegaCommand
from omega.specs import parse_polynomial_spec


class Command(OmegaCommand):

    help = "Evaluates L_f(x), the sum of (-1)^Ω(f(n)) for n from 1 to x."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("polynomial", help='An integer polynomial, such as "n^2 + 1".')
        parser.add_argument("x", type=int)

    def get_payload(self, **options):
        polynomial = parse_polynomial_spec(options["polynomial"])
        return {
            "polynomial": polynomial,
            "x": options["x"],
            "value": summatory_chowla(polynomial, options["x"]),
        }
