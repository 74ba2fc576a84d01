from django.apps import AppConfig


class TuckerConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'tucker'
