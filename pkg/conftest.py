# Configure Django for pytest the same way tests/runtests.py does.
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), "tests"))


def pytest_configure(config):
    from django.conf import settings
    if not settings.configured:
        settings.configure(
            DEBUG=False,
            DATABASES={},
            INSTALLED_APPS=(
                "omega",
                "test_omega",
            ),
            USE_TZ=True,
            SECRET_KEY="fake-key",
            OMEGA_SEARCH_BOUND=6,
        )
    import django
    django.setup()
