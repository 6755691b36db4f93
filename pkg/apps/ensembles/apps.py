from django.apps import AppConfig


class EnsemblesConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.ensembles'
    verbose_name = 'Coefficient ensembles'
