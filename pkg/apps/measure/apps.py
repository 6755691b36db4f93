from django.apps import AppConfig


class MeasureConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.measure'
    verbose_name = 'Root measures and regions'
