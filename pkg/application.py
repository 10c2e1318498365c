import os
import sys

# 프로젝트 루트 설정
base_dir = os.path.dirname(os.path.abspath(__file__))

# Python 경로 설정 (설정 패키지와 앱들이 있는 backend)
sys.path.insert(0, os.path.join(base_dir, 'nilauto', 'backend'))

# Django 설정
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'nilauto.settings')

# WSGI 애플리케이션 가져오기
try:
    from django.core.wsgi import get_wsgi_application
    application = get_wsgi_application()
except Exception as e:
    error_msg = str(e)

    # 설정 오류 시 원인을 담은 503 JSON 응답
    def application(environ, start_response):
        start_response('503 Service Unavailable', [('Content-type', 'application/json; charset=utf-8')])
        return [('{"error": "service unavailable: %s"}' % error_msg.replace('"', "'")).encode('utf-8')]
