# core/utils.py
from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

from core.exceptions import AutomatonLimitError

DEFAULTS = {
    'NILAUTO_ORACLE_RANK': 8,
    'NILAUTO_SEED': 20240521,
    'NILAUTO_CROSSCHECK_WORKERS': 4,
    'NILAUTO_CROSSCHECK_CHUNK': 65536,
    'NILAUTO_MAX_PRODUCT_STATES': 2_000_000,
    'NILAUTO_CACHE_TIMEOUT': 3600,
    'NILAUTO_COMPILE_CACHE_SIZE': 256,
    'NILAUTO_BUNDLE_DIR': 'bundles',
}


def get_setting(name):
    """
    Django 설정값 조회 (설정이 구성되지 않은 환경이면 기본값)

    Args:
        name (str): 설정 이름

    Returns:
        설정값
    """
    try:
        return getattr(settings, name, DEFAULTS.get(name))
    except ImproperlyConfigured:
        return DEFAULTS.get(name)


def check_state_limit(count, what):
    limit = get_setting('NILAUTO_MAX_PRODUCT_STATES')
    if count > limit:
        raise AutomatonLimitError(f"{what}: explored {count} states, limit is {limit}")
