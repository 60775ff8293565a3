from django.apps import AppConfig


class HodgeConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'hodge'
    verbose_name = 'Hodge-Deligne polynomials'
