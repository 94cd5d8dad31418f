"""Describes a number field: degree, discriminant, Galois family and the primes it supports."""

from sympy import primerange

from omega.fields import galois_family
from omega.management.base import OmegaCommand
from omega.places import is_supported, places_above
from omega.specs import format_field, parse_field


class Command(OmegaCommand):

    help = "Describes the number field defined by a monic irreducible polynomial."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("field", help="Defining polynomial, as an expression or a JSON coefficient array.")
        parser.add_argument(
            "--max-prime",
            action="store",
            default=30,
            type=int,
            help="Report the supported primes up to this bound.",
        )

    def get_payload(self, **options):
        field = parse_field(options["field"])
        primes = []
        for prime in primerange(2, options["max_prime"] + 1):
            if is_supported(field, prime):
                primes.append({"prime": prime, "supported": True, "places": len(places_above(field, prime))})
            else:
                self.log(2, "{prime} divides the index of Z[θ]", prime=prime)
                primes.append({"prime": prime, "supported": False})
        return {
            "polynomial": format_field(field),
            "degree": field.degree,
            "discriminant": field.discriminant,
            "family": galois_family(field),
            "primes": primes,
        }
