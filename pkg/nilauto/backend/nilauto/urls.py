# urls.py
from django.urls import path, include

urlpatterns = [
    # 계산 API (eval / decide / census)
    path("api/", include("core.urls")),
]
