# cocycles/services/integers.py
"""
ℤ ⊕ (ℤ/2)^(ω) 의 FA 표현

원소 (k, γ) 는 열 0 = k 의 부호, 열 j >= 1 = (|k| 의 비트 j-1) + 2·γ_{j-1} 인 단어로 쓴다.
끝의 0 은 자르고 음의 0 (부호 1, 절댓값 0) 은 쓰지 않는다. 항등원은 "0".
"""
import logging

from automata.services.alphabet import digits
from automata.services.dfa import Dfa
from presentations.services.builders import GENERATOR_CONSTANTS, add_with_roles, signed_roles
from presentations.services.presentation import Presentation
from relations.services.relation import scan_relation

logger = logging.getLogger(__name__)

SYMBOLS = 4


def _split(symbol):
    """기호 -> (절댓값 비트, y 비트)"""
    if symbol is None:
        return 0, 0
    return symbol % 2, symbol // 2


def _step(state, column):
    if state == 'sign':
        if None in column or any(s > 1 for s in column):
            return None
        roles = signed_roles(column)
        return None if roles is None else (roles, 0)
    roles, carry = state
    bits, flips = zip(*(_split(s) for s in column))
    if flips[2] != flips[0] ^ flips[1]:
        return None
    carry = add_with_roles(roles, carry, bits)
    return None if carry is None else (roles, carry)


def _domain_step(state, symbol):
    if state == 'start':
        return None if symbol > 1 else (symbol, False, False)
    sign, has_magnitude, _ = state
    return (sign, has_magnitude or symbol % 2 == 1, symbol == 0)


def _in_domain(state):
    if state == 'start':
        return False
    sign, has_magnitude, last_zero = state
    return not last_zero and (sign == 0 or has_magnitude)


def integer_flip_presentation():
    """
    (ℤ, +) ⊕ ((ℤ/2)^(ω), ⊕)

    Returns:
        Presentation: Op 는 부호별 덧셈 검사와 y 성분의 XOR
    """
    base = digits(SYMBOLS)
    op = scan_relation(base, 3, 'sign', _step, lambda s: s != 'sign' and s[1] == 0)
    domain = Dfa.from_function(base, 'start', _domain_step, _in_domain)
    logger.debug(f"ℤ⊕(ℤ/2)^ω 표현: Op 상태 {op.dfa.state_count}, 정의역 상태 {domain.state_count}")
    return Presentation(
        'integers-flips', base, domain, {'Op': op}, (0,),
        constants={'x2': (0, 1), **{f"y{i}": (0,) * (i + 1) + (2,) for i in range(GENERATOR_CONSTANTS)}},
        meta={'kind': 'integers-flips'},
    )
