# presentations/services/builders.py
"""
구체적인 FA 표현 생성기

모든 연산 관계는 열 단위 스캔(relations.scan_relation) 으로 만든 뒤 최소화한다.
패드는 각 생성기에서 "0" 또는 항등원으로 읽는다.
"""
import logging

from automata.services.alphabet import Alphabet, digits
from automata.services.dfa import Dfa
from core.exceptions import PresentationError
from oracle.services.nil_element import check_prime
from relations.services.relation import scan_relation
from .finite_groups import FiniteGroupTable, ut3
from .presentation import Presentation, domain_intersection

logger = logging.getLogger(__name__)

GENERATOR_CONSTANTS = 4


def _zero(symbol):
    return 0 if symbol is None else symbol


def trailing_domain(base, zero=0):
    """ε 와 마지막 기호가 zero 가 아닌 단어들"""
    return Dfa.from_function(
        base, 'empty',
        lambda state, symbol: 'zero' if symbol == zero else 'other',
        lambda state: state != 'zero',
    )


# ℕ 덧셈

def _carry_step(carry, column):
    a, b, c = (_zero(s) for s in column)
    total = a + b + carry
    if c != total % 2:
        return None
    return total // 2


def nat_add():
    """
    (ℕ, +): LSB 우선 이진 표기, 정의역은 ε 와 1 로 끝나는 단어

    Returns:
        Presentation: Op(x, y, z) ⇔ x + y = z
    """
    base = digits(2)
    op = scan_relation(base, 3, 0, _carry_step, lambda carry: carry == 0)
    logger.info(f"nat-add 표현 생성: Op 상태 {op.dfa.state_count}")
    return Presentation(
        'nat-add', base, trailing_domain(base), {'Op': op}, (),
        constants={'one': (1,)}, meta={'kind': 'nat-add'},
    )


# 부호-절댓값 정수 덧셈 (열 0 = 부호, 이후 LSB 우선 절댓값)

SIGN_ROLES = {
    # (sx, sy, sz) -> (큰 쪽, 더하는 쪽 두 개): |큰 쪽| = |a| + |b|
    (0, 0, 0): (2, 0, 1),
    (1, 1, 1): (2, 0, 1),
    (0, 1, 0): (0, 2, 1),
    (1, 0, 1): (0, 2, 1),
    (0, 1, 1): (1, 2, 0),
    (1, 0, 0): (1, 2, 0),
}


def signed_roles(signs):
    """세 부호로부터 절댓값 덧셈 검사의 역할 배정 (불가능하면 None)"""
    return SIGN_ROLES.get(tuple(signs))


def add_with_roles(roles, carry, bits):
    """
    bits[big] = bits[a] + bits[b] + carry 의 한 자리 검사

    Returns:
        int 또는 None: 다음 자리올림
    """
    big, a, b = roles
    total = bits[a] + bits[b] + carry
    if bits[big] != total % 2:
        return None
    return total // 2


def _integer_step(state, column):
    if state == 'sign':
        if None in column:
            return None
        roles = signed_roles(column)
        return None if roles is None else (roles, 0)
    roles, carry = state
    carry = add_with_roles(roles, carry, [_zero(s) for s in column])
    return None if carry is None else (roles, carry)


def integer_domain(base):
    """"0" 또는 부호 뒤에 1 로 끝나는 절댓값 (음의 0 금지)"""
    def step(state, symbol):
        if state == 'start':
            return (symbol, 'none')
        return (state[0], symbol)

    return Dfa.from_function(
        base, 'start', step,
        lambda state: state != 'start' and (state == (0, 'none') or state[1] == 1),
    )


def integer_presentation():
    """(ℤ, +): 부호 기호 뒤에 nat-add 단어"""
    base = digits(2)
    op = scan_relation(base, 3, 'sign', _integer_step, lambda s: s != 'sign' and s[1] == 0)
    return Presentation(
        'integers', base, integer_domain(base), {'Op': op}, (0,),
        constants={'one': (0, 1), 'minus_one': (1, 1)}, meta={'kind': 'integers'},
    )


# E_p

def _ep_step(p):
    def step(state, column):
        if state == 'init':
            if None in column:
                return None
            v, w, r = column
            return (0, (v + w - r) % p)
        prefix_sum, acc = state
        a, b, g = (_zero(s) for s in column)
        if g != (a + b) % p:
            return None
        return ((prefix_sum + b) % p, (acc - a * prefix_sum) % p)
    return step


def ep_domain(base):
    """vα: 비어 있지 않고, α 가 비었거나 마지막 기호가 0 이 아님"""
    def step(state, symbol):
        if state == 'start':
            return 'v'
        return 'zero' if symbol == 0 else 'other'

    return Dfa.from_function(base, 'start', step, lambda state: state in ('v', 'other'))


def ep_presentation(p):
    """
    E_p: z^v·ᾱ 를 단어 vα 로

    곱의 중심 성분은 v + w − Σ_k α_k (Σ_{i<k} β_i) mod p 이다. 스캔 상태는 (Σβ_i, 남은 누산값).

    Args:
        p (int): 홀수 소수

    Returns:
        Presentation: 항등원 "0", 상수 x0..x3, z
    """
    p = check_prime(p)
    base = digits(p)
    op = scan_relation(base, 3, 'init', _ep_step(p), lambda s: s != 'init' and s[1] == 0)
    constants = {f"x{i}": (0,) * (i + 1) + (1,) for i in range(GENERATOR_CONSTANTS)}
    constants['z'] = (1,)
    logger.info(f"E_{p} 표현 생성: Op 상태 {op.dfa.state_count}")
    return Presentation(
        f'ep{p}', base, ep_domain(base), {'Op': op}, (0,),
        constants=constants, meta={'kind': 'ep', 'p': p},
    )


# H_p

def hp_alphabet(p):
    """코드 α + p·v, 라벨 "α/v" (트랙 0 = α, 트랙 1 = v)"""
    return Alphabet(p * p, [f"{code % p}/{code // p}" for code in range(p * p)])


def _hp_step(p):
    def step(prefix_sum, column):
        (a, v), (b, w), (g, r) = ((0, 0) if s is None else divmod(s, p)[::-1] for s in column)
        if g != (a + b) % p or r != (v + w - a * prefix_sum) % p:
            return None
        return (prefix_sum + b) % p
    return step


def hp_domain(base, p):
    """ε, 또는 v_0 = 0 이고 마지막 쌍이 (0,0) 이 아닌 단어"""
    def step(state, symbol):
        if state == 'start' and symbol >= p:
            return None
        return 'zero' if symbol == 0 else 'other'

    return Dfa.from_function(base, 'start', step, lambda state: state != 'zero')


def hp_presentation(p):
    """
    H_p: ∏ z_k^{v_k}·ᾱ 를 같은 길이의 두 트랙 단어 (α 위, v 아래) 로

    각 위치 k 에서 γ_k = α_k + β_k, r_k = v_k + w_k − α_k (Σ_{i<k} β_i) mod p 를 검사한다.

    Returns:
        Presentation: 항등원 ε, 상수 x0..x3, z1..z3
    """
    p = check_prime(p)
    base = hp_alphabet(p)
    op = scan_relation(base, 3, 0, _hp_step(p), lambda s: True)
    constants = {f"x{i}": (0,) * i + (1,) for i in range(GENERATOR_CONSTANTS)}
    constants.update({f"z{k}": (0,) * k + (p,) for k in range(1, GENERATOR_CONSTANTS)})
    logger.info(f"H_{p} 표현 생성: Op 상태 {op.dfa.state_count}")
    return Presentation(
        f'hp{p}', base, hp_domain(base, p), {'Op': op}, (),
        constants=constants, meta={'kind': 'hp', 'p': p, 'trackOrder': ['alpha', 'v']},
    )


# 유한군

def _group_alphabet(table):
    return Alphabet(table.order, table.labels)


def finite_power(table, constants=None):
    """
    S^(ω): 유한 지지 수열을 항등원 꼬리를 잘라 단어로

    Args:
        table (FiniteGroupTable): 유한군
        constants (dict): 이름 -> 단어 (선택)

    Returns:
        Presentation: 성분별 곱, 패드는 항등원, 항등원 ε
    """
    if not isinstance(table, FiniteGroupTable):
        raise PresentationError("finite_power needs a FiniteGroupTable")
    base = _group_alphabet(table)
    e = table.identity

    def step(state, column):
        a, b, c = (e if s is None else s for s in column)
        return state if c == table.multiply(a, b) else None

    op = scan_relation(base, 3, 0, step, lambda s: True)
    return Presentation(
        f'power-{table.name}', base, trailing_domain(base, e), {'Op': op}, (),
        constants=constants,
        meta={'kind': 'power', 'group': table.name, 'order': table.order},
    )


def finite_group_presentation(table, constants=None):
    """유한군 자체: 길이 1 단어"""
    base = _group_alphabet(table)

    def step(state, column):
        if state == 'done' or None in column:
            return None
        a, b, c = column
        return 'done' if c == table.multiply(a, b) else None

    op = scan_relation(base, 3, 'start', step, lambda s: s == 'done')
    domain = Dfa.from_function(base, 0, lambda n, symbol: n + 1 if n < 2 else 2, lambda n: n == 1)
    return Presentation(
        table.name, base, domain, {'Op': op}, (table.identity,),
        constants=constants, meta={'kind': 'finite', 'group': table.name, 'order': table.order},
    )


def ut3_presentation(p):
    """UT₃(GF(p)) 를 유한군 표현으로 (상수 x0, x1, z)"""
    table = ut3(p)
    constants = {
        'x0': (table.index('(1,0,0)'),),
        'x1': (table.index('(0,1,0)'),),
        'z': (table.index('(0,0,1)'),),
    }
    presentation = finite_group_presentation(table, constants)
    presentation.meta.update({'kind': 'ut3', 'p': p})
    return presentation


# 파생 표현

def restrict_domain(presentation, language, name=None):
    """
    정규 집합으로 정의역을 줄인 부분 구조 (부분군이면 다시 군)

    Args:
        presentation (Presentation): 원래 표현
        language (Dfa): 기본 알파벳 위의 정규 언어
    """
    domain = domain_intersection(presentation, language)
    return presentation.derive(name=name or f"{presentation.name}|restricted", domain=domain)


def define(presentation, name, formula, variables=None):
    """
    1 차 논리식으로 정의한 관계를 추가한 새 표현

    Args:
        presentation (Presentation): 원래 표현
        name (str): 새 관계 이름
        formula (str 또는 Formula): 자유 변수가 있는 식
        variables (list[str]): 트랙 순서 (없으면 첫 등장 순)
    """
    from logic.services.compiler import compile_formula

    relation = compile_formula(formula, presentation, variables=variables)
    logger.debug(f"관계 정의: {name}/{relation.arity}")
    return presentation.derive(relations={name: relation})
