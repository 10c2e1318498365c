from django.apps import AppConfig


class CocyclesConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "cocycles"
