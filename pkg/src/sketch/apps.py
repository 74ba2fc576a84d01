from django.apps import AppConfig


class SketchConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'sketch'
