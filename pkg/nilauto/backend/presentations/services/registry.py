# presentations/services/registry.py
import logging
from functools import lru_cache

from core.exceptions import InputError
from . import builders
from .finite_groups import cyclic

logger = logging.getLogger(__name__)

DEFAULT_P = 3
DEFAULT_ORDER = 2


def _example12(p, order):
    from cocycles.services.example12 import example12_presentation
    return example12_presentation()


BUILDERS = {
    'nat-add': lambda p, order: builders.nat_add(),
    'integers': lambda p, order: builders.integer_presentation(),
    'ep': lambda p, order: builders.ep_presentation(p),
    'hp': lambda p, order: builders.hp_presentation(p),
    'power': lambda p, order: builders.finite_power(cyclic(order)),
    'ut3': lambda p, order: builders.ut3_presentation(p),
    'example12': _example12,
}

PRIME_STRUCTURES = ('ep', 'hp', 'ut3')


def structure_names():
    return sorted(BUILDERS)


@lru_cache(maxsize=32)
def _build(name, p, order):
    logger.info(f"표현 생성 시작: {name} (p={p}, order={order})")
    return BUILDERS[name](p, order)


def build_structure(name, p=None, order=None):
    """
    이름으로 표준 표현을 생성 (같은 인자는 프로세스 안에서 재사용)

    Args:
        name (str): nat-add, integers, ep, hp, power, ut3, example12
        p (int): 소수 (ep, hp, ut3)
        order (int): 순환군 위수 (power)

    Raises:
        InputError: 모르는 이름
    """
    if name not in BUILDERS:
        raise InputError(f"unknown structure {name!r}; choose from {', '.join(structure_names())}")
    p = (p or DEFAULT_P) if name in PRIME_STRUCTURES else None
    order = (order or DEFAULT_ORDER) if name == 'power' else None
    return _build(name, p, order)
