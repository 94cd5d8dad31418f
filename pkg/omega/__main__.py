"""
Runs the omega commands without a Django project:

    python -m omega phi canonical x 12
"""

import sys

import django
from django.conf import settings
from django.core.management import execute_from_command_line


COMMANDS = {
    "field": "omegafield",
    "places": "omegaplaces",
    "phi": "omegaphi",
    "omega": "omegacount",
    "snorm": "omegasnorm",
    "verify": "omegaverify",
    "special-element": "omegaspecial",
    "build-map": "omegabuild",
    "chowla": "omegachowla",
}


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv or argv[0] not in COMMANDS:
        sys.stderr.write("Usage: python -m omega {{{commands}}} ...\n".format(commands=",".join(COMMANDS)))
        return 3
    if not settings.configured:
        settings.configure(INSTALLED_APPS=["omega"])
    django.setup()
    execute_from_command_line(["omega", COMMANDS[argv[0]]] + argv[1:])
    return 0


if __name__ == "__main__":
    sys.exit(main())
