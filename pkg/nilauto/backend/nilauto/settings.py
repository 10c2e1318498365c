import os
import sys
from pathlib import Path
from dotenv import load_dotenv

# 로컬 환경에서 .env 파일 로드 시도
try:
    load_dotenv()
except ImportError:
    pass

# backend 폴더를 파이썬 경로에 추가
sys.path.insert(0, os.path.abspath(os.path.dirname(os.path.dirname(__file__))))

# BASE_DIR 설정
BASE_DIR = Path(__file__).resolve().parent.parent

# 보안 및 디버그 설정
SECRET_KEY = os.environ.get('SECRET_KEY', 'django-insecure-nilauto-local-key')
DEBUG = os.environ.get('DEBUG', 'False') == 'True'
ALLOWED_HOSTS = os.environ.get('ALLOWED_HOSTS', 'localhost,127.0.0.1,testserver').split(',')

# 오라클 / 오토마타 엔진 설정
NILAUTO_ORACLE_RANK = int(os.environ.get('NILAUTO_ORACLE_RANK', '8'))
NILAUTO_SEED = int(os.environ.get('NILAUTO_SEED', '20240521'))
NILAUTO_CROSSCHECK_WORKERS = int(os.environ.get('NILAUTO_CROSSCHECK_WORKERS', '4'))
NILAUTO_CROSSCHECK_CHUNK = int(os.environ.get('NILAUTO_CROSSCHECK_CHUNK', '65536'))
NILAUTO_BUNDLE_DIR = os.environ.get('NILAUTO_BUNDLE_DIR', os.path.join(BASE_DIR, 'bundles'))
NILAUTO_MAX_PRODUCT_STATES = int(os.environ.get('NILAUTO_MAX_PRODUCT_STATES', '2000000'))
NILAUTO_CACHE_TIMEOUT = int(os.environ.get('NILAUTO_CACHE_TIMEOUT', '3600'))
NILAUTO_COMPILE_CACHE_SIZE = int(os.environ.get('NILAUTO_COMPILE_CACHE_SIZE', '256'))

# 데이터베이스는 사용하지 않지만 Django 기본 구성을 위해 sqlite 지정
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.path.join(BASE_DIR, 'db.sqlite3'),
    }
}

# 캐시 설정 (빌드된 프레젠테이션 캐시)
CACHES = {
    'default': {
        'BACKEND': 'django.core.cache.backends.locmem.LocMemCache',
        'LOCATION': 'nilauto-presentations',
    }
}

# Application definition
INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.staticfiles',

    # 제3자 앱
    'rest_framework',

    # 프로젝트 앱
    'automata',
    'relations',
    'logic',
    'presentations',
    'cocycles',
    'oracle',
    'core',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.middleware.common.CommonMiddleware',
]

ROOT_URLCONF = 'nilauto.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.debug',
                'django.template.context_processors.request',
            ],
        },
    },
]

WSGI_APPLICATION = 'nilauto.wsgi.application'

# REST Framework 설정 (인증 없는 계산 API)
REST_FRAMEWORK = {
    'DEFAULT_PERMISSION_CLASSES': [
        'rest_framework.permissions.AllowAny',
    ],
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'UNAUTHENTICATED_USER': None,
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
}

# 로깅 설정
LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '[{asctime}] {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
            'stream': 'ext://sys.stderr',
        },
    },
    'loggers': {
        app: {'handlers': ['console'], 'level': LOG_LEVEL, 'propagate': False}
        for app in ('automata', 'relations', 'logic', 'presentations', 'cocycles', 'oracle', 'core')
    },
}

# 정적 파일 설정
STATIC_URL = '/static/'
STATIC_ROOT = os.path.join(BASE_DIR, 'static')

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'
USE_TZ = True
