# cocycles/services/example12.py
"""
x, y_i, z_i (y_i² = z_i² = 1, y_i 중심, z_i⁻¹ x z_i = x y_i) 로 생성되는 군

중심 부분군 A = ⟨x², y_i⟩ ≅ ℤ ⊕ (ℤ/2)^(ω), 몫 Q = ℤ/2 ⊕ (ℤ/2)^(ω).
대표 q_{s,α} = x^s ∏ z_i^{α_i} 로부터 직접 계산한 코사이클은

    c(q_{s,α}, q_{t,β}) = (x²)^{st} · ∏ y_i^{t·α_i}

이다. 널리 인용되는 식 x^{2s+t} ∏ y_i^{(s+2t)α_i + (s+t)β_i} 는 예컨대
q_{0,e_0}·q_{1,∅} = x z_0 y_0 에서 y 성분을 0 으로 주므로 쓰지 않는다.
"""
import logging

from presentations.services.builders import finite_power
from presentations.services.finite_groups import cyclic
from relations.services.relation import scan_relation
from .cocycle import CocycleSpec, build_extension, common_base, generator_constants
from .integers import integer_flip_presentation

logger = logging.getLogger(__name__)


def _step(state, column):
    q0, q1, a = column
    if state == 'start':
        # 열 0: (s, t, A 의 부호) - st >= 0 이므로 부호는 +
        if a != 0:
            return None
        s, t = q0 or 0, q1 or 0
        return ('first', t, s * t)
    if state[0] == 'first':
        _, t, st = state
        magnitude, flip = _split(a)
        if magnitude != st or flip != t * (q0 or 0):
            return None
        return ('rest', t)
    _, t = state
    magnitude, flip = _split(a)
    if magnitude != 0 or flip != t * (q0 or 0):
        return None
    return state


def _split(symbol):
    if symbol is None:
        return 0, 0
    return symbol % 2, symbol // 2


def _accept(state):
    if state == 'start':
        return False
    # 열 1 이 없으면 |st| 의 비트도 0 이어야 한다
    return state[0] == 'rest' or state[2] == 0


def example12_cocycle_relation(base):
    """(q, q', c(q, q')) 의 3 트랙 관계, 열 j >= 1 에서 α_{j-1} 과 A 의 (비트, y) 가 정렬된다"""
    return scan_relation(base, 3, 'start', _step, _accept)


def example12_cocycle():
    """
    Returns:
        CocycleSpec: Q = (ℤ/2)^(ω) (단어 s α_0 α_1 …), A = ℤ ⊕ (ℤ/2)^(ω)
        (상수 x, z_i 는 Q 쪽, x2, y_i 는 A 쪽)
    """
    Q = finite_power(cyclic(2), {'x': (1,), **generator_constants(prefix='z', offset=1)})
    A = integer_flip_presentation()
    base = common_base(Q, A)
    return CocycleSpec(Q, A, example12_cocycle_relation(base), name='example12')


def example12_presentation(verify=False):
    """
    Args:
        verify (bool): 확대 전에 코사이클 항등식을 결정할지

    Returns:
        Presentation: 쌍 단어 (q, a) 로 쓴 군
    """
    presentation = build_extension(example12_cocycle(), verify=verify)
    presentation.meta['kind'] = 'example12'
    logger.info(f"example12 표현: 정의역 상태 {presentation.domain.state_count}")
    return presentation
