# core/urls.py
from django.urls import path

from .views import census, decide_sentence, eval_product

app_name = 'core'

urlpatterns = [
    path('eval/', eval_product, name='eval'),
    path('decide/', decide_sentence, name='decide'),
    path('census/<str:name>/', census, name='census'),
]
