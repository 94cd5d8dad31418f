from django.apps import AppConfig


class OmegaAppConfig(AppConfig):
    """App configuration for omega."""
    name = 'omega'
    verbose_name = "Omega functionals"
