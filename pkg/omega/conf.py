"""Settings used by omega, with their defaults."""

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured


DEFAULTS = {
    # Largest supported field degree.
    "OMEGA_MAX_DEGREE": 8,
    # p-adic precision used for the first attempt at a valuation, and the point at which we give up.
    "OMEGA_PRECISION_START": 8,
    "OMEGA_PRECISION_CAP": 512,
    # Coordinate box used when searching for single-place elements.
    "OMEGA_SEARCH_BOUND": 6,
    # Largest prime tried when searching for split places.
    "OMEGA_PRIME_SEARCH_BOUND": 10000,
    # Largest x accepted by the summatory functions.
    "OMEGA_SUMMATORY_LIMIT": 10 ** 6,
    # Primes probed by the command line checks when no probe corpus is given.
    "OMEGA_PROBE_PRIMES": (2, 3, 5, 7, 11, 13, 17, 19, 23, 29),
}


def get_setting(name):
    """
    Returns the value of the named omega setting.

    Values come from the Django settings when they are configured, and from DEFAULTS otherwise,
    so the library can be used outside of a Django project.
    """
    try:
        default = DEFAULTS[name]
    except KeyError:
        raise ImproperlyConfigured("Unknown omega setting {name!r}".format(
            name=name,
        ))
    if not settings.configured:
        return default
    return getattr(settings, name, default)
