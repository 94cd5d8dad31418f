"""Checks a consistent map against the extensions declared in a tower spec."""

from omega.conf import get_setting
from omega.management.base import OmegaCommand, resolve_map
from omega.maps import EvaluationContext, boundedness_table, check_consistency, check_galois_invariance
from omega.places import is_supported, places_above
from omega.specs import format_field, load_document, parse_tower


def _describe(check, embedding, place, result):
    return {
        "check": check,
        "source": format_field(embedding.source),
        "target": format_field(embedding.target),
        "place": {"prime": place.prime, "index": place.index},
        "passed": result.passed,
        "witnesses": [
            {"place": witness.place, "expected": witness.expected, "actual": witness.actual}
            for witness in result.witnesses
        ],
    }


class Command(OmegaCommand):

    help = "Checks consistency, and Galois invariance over the declared bases, at every place over the tower primes."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("map", help="A map spec file, or one of the recipes canonical, qi-example or zero.")
        parser.add_argument("tower", help="A tower spec file.")

    def record(self, check, embedding, place, result):
        if not result.passed:
            self.log(2, "Check {check} failed at {place!r}", check=check, place=place)
        return _describe(check, embedding, place, result)

    def get_payload(self, **options):
        consistent_map = resolve_map(options["map"])
        tower = parse_tower(load_document(options["tower"]))
        context = EvaluationContext(embeddings=tower.embeddings)
        primes = tower.primes or list(get_setting("OMEGA_PROBE_PRIMES"))
        checks, skipped = [], []
        for embedding in tower.embeddings:
            for prime in primes:
                if not (is_supported(embedding.source, prime) and is_supported(embedding.target, prime)):
                    skipped.append({"source": format_field(embedding.source), "prime": prime})
                    continue
                for place in places_above(embedding.source, prime):
                    result = check_consistency(consistent_map, embedding, place, context)
                    checks.append(self.record("consistency", embedding, place, result))
                    if embedding.source in tower.invariance_bases:
                        result = check_galois_invariance(consistent_map, embedding.source, embedding, place, context)
                        checks.append(self.record("galois_invariance", embedding, place, result))
        payload = {
            "passed": all(check["passed"] for check in checks),
            "checks": checks,
            "skipped": skipped,
        }
        probes = self.get_probes(options)
        if probes:
            payload["boundedness"] = {
                str(prime): value
                for prime, value in boundedness_table(consistent_map, probes, context).items()
            }
        return payload
