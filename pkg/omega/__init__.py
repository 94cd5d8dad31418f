"""
Exact arithmetic with consistent maps on the non-Archimedean places of number fields,
and the rational-valued linear functionals they define on algebraic numbers modulo units.

Packaged as a reusable Django application, so the command line tools are available
through manage.py once "omega" is in INSTALLED_APPS.
"""

__version__ = VERSION = (1, 0, 0)
