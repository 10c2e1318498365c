# cocycles/services/cocycle.py
"""
FA 인식 가능한 코사이클 f: Q×Q → A 와 중심 확대 L_f

L_f 의 곱은 (u,a)·(v,b) = (u+v, a+b+f(u,v)) 이다.
코사이클 항등식은 두 정렬 구조 (Q ⊔ A, +Q, +A, f) 위의 문장으로 결정한다.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from automata.services.alphabet import Alphabet
from automata.services.dfa import Dfa, minimize, shortest_word, union
from core.exceptions import CocycleError, InputError
from logic.services.compiler import compile_formula, decide
from oracle.services.nil_element import check_prime
from presentations.services.builders import (
    GENERATOR_CONSTANTS, finite_group_presentation, finite_power, restrict_domain,
)
from presentations.services.finite_groups import cyclic
from presentations.services.presentation import Presentation
from relations.services.convolution import PAD_LABEL, PaddedAlphabet, convolve, deconvolve
from relations.services.join import join, product_of
from relations.services.relation import (
    RelationAutomaton, as_language, rebase, regroup, scan_relation, unary,
)

logger = logging.getLogger(__name__)

TAG_Q, TAG_A = 0, 1

IDENTITY_SENTENCE = """
(forall (u v w)
  (implies (and (SortQ u) (SortQ v) (SortQ w))
    (exists (uv vw a b c d s)
      (and (AddQ u v uv) (AddQ v w vw)
           (F u v a) (F uv w b) (F v w c) (F u vw d)
           (AddA a b s) (AddA c d s)))))
"""
MISSING_VALUE = "(and (SortQ u) (SortQ v) (not (exists a (F u v a))))"
TWO_VALUES = "(exists (u v) (and (F u v a) (F u v b) (not (= a b))))"
SYMMETRY_SENTENCE = "(forall (u v a) (implies (F u v a) (F v u a)))"


def common_base(*presentations):
    """표현들의 기호 코드를 모두 담는 공통 기본 알파벳 (크기 2 이상)"""
    return Alphabet(max([2] + [p.base.size for p in presentations]))


def generator_constants(count=GENERATOR_CONSTANTS, prefix='x', offset=0):
    """{prefix}{i} -> (0,)*(i+offset) + (1,): 유한 지지 수열의 단위 벡터"""
    return {f"{prefix}{i}": (0,) * (i + offset) + (1,) for i in range(count)}


@dataclass
class CocycleSpec:
    """
    Q, A: 가환군 표현 (Op 를 덧셈으로 읽는다)
    f: 공통 기본 알파벳 위의 3 항 관계 (트랙 u, v, f(u,v))
    """
    Q: Presentation
    A: Presentation
    f: RelationAutomaton
    name: str = 'cocycle'
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        base = common_base(self.Q, self.A)
        if self.f.arity != 3:
            raise InputError(f"cocycle graph must be ternary, got arity {self.f.arity}")
        if self.f.base.size != base.size:
            self.f = rebase(self.f, base)

    @property
    def base(self):
        return common_base(self.Q, self.A)


# 정렬 태그

def tag_relation(relation, tags, base):
    """
    관계를 base 로 옮기고 각 트랙 앞에 태그 기호 하나를 붙인다

    Args:
        relation (RelationAutomaton): 원래 관계
        tags (sequence[int]): 트랙별 태그 기호
        base (Alphabet): 결과 기본 알파벳
    """
    moved = rebase(relation, base) if relation.base.size != base.size else relation
    padded = moved.padded
    dfa = moved.dfa
    n = dfa.state_count
    start, sink = n, n + 1
    delta = np.vstack([dfa.delta, np.full((2, padded.packed_size), sink, dtype=np.int64)])
    delta[start, padded.pack(list(tags))] = dfa.start
    accepting = np.append(dfa.accepting, [False, False])
    tagged = Dfa(padded.alphabet, delta, start, accepting)
    return RelationAutomaton(base, relation.arity, minimize(tagged), trusted=True)


def tagged_language(presentation, tag, base):
    return as_language(tag_relation(presentation.domain_relation, (tag,), base))


def two_sorted(spec):
    """
    (Q ⊔ A, +Q, +A, f) 의 한 정렬 표현

    Q 원소는 TAG_Q·u, A 원소는 TAG_A·a 로 쓴다.
    관계: SortQ, SortA, AddQ, AddA, F 와 상수 eQ, eA.
    """
    base = spec.base
    sort_q = tagged_language(spec.Q, TAG_Q, base)
    sort_a = tagged_language(spec.A, TAG_A, base)
    relations = {
        'SortQ': unary(base, sort_q),
        'SortA': unary(base, sort_a),
        'AddQ': tag_relation(spec.Q.relation('Op'), (TAG_Q,) * 3, base),
        'AddA': tag_relation(spec.A.relation('Op'), (TAG_A,) * 3, base),
        'F': tag_relation(spec.f, (TAG_Q, TAG_Q, TAG_A), base),
    }
    neutral_q = (TAG_Q,) + spec.Q.neutral_word
    return Presentation(
        f"{spec.name}|two-sorted", base, union(sort_q, sort_a), relations, neutral_q,
        constants={'eQ': neutral_q, 'eA': (TAG_A,) + spec.A.neutral_word},
        meta={'kind': 'two-sorted'},
    )


def _witness(relation, structure):
    word = shortest_word(relation.dfa)
    tracks = deconvolve(word, relation.arity, relation.base)
    return [structure.format_word(w[1:]) for w in tracks]


def check_function(spec, structure=None):
    """
    f 가 Q² 위의 전함수이고 값이 A 안에 있는지

    Raises:
        CocycleError: 값이 없거나 둘 이상인 (u, v) 를 증인으로
    """
    structure = structure or two_sorted(spec)
    missing = compile_formula(MISSING_VALUE, structure, ('u', 'v'))
    if shortest_word(missing.dfa) is not None:
        witness = _witness(missing, structure)
        raise CocycleError(f"cocycle {spec.name} has no value at {witness}", witness=witness)
    duplicated = compile_formula(TWO_VALUES, structure, ('a', 'b'))
    if shortest_word(duplicated.dfa) is not None:
        values = _witness(duplicated, structure)
        raise CocycleError(f"cocycle {spec.name} is not a function (values {values})", witness=values)
    return structure


def check_abelian(spec):
    for label, presentation in (('Q', spec.Q), ('A', spec.A)):
        if not decide("(forall (x y) (= (* x y) (* y x)))", presentation):
            raise CocycleError(f"{label} = {presentation.name} is not abelian")


def verify_cocycle(spec):
    """
    f(u,v) + f(u+v,w) = f(v,w) + f(u,v+w) 를 결정

    Returns:
        bool: 항등식 성립 여부

    Raises:
        CocycleError: f 가 전함수가 아니거나 Q/A 가 가환이 아님
    """
    check_abelian(spec)
    structure = check_function(spec)
    result = decide(IDENTITY_SENTENCE, structure)
    logger.info(f"코사이클 검증 {spec.name}: {result}")
    return result


def is_symmetric(spec):
    """f(u,v) = f(v,u) (L_f 가 가환일 필요충분조건)"""
    return decide(SYMMETRY_SENTENCE, two_sorted(spec))


# 확대 표현

def pair_alphabet(base):
    """두 트랙 합성곱을 기본 기호로 (라벨 "u/a", 패드는 ◇)"""
    padded = PaddedAlphabet(base, 2)

    def label(symbol):
        return PAD_LABEL if symbol == padded.pad else base.label(symbol)

    labels = [
        '/'.join(label(s) for s in padded.unpack(code)) for code in range(padded.packed_size)
    ]
    return Alphabet(padded.packed_size, labels)


def encode_pair(u, a, base):
    return convolve([tuple(u), tuple(a)], base)


def decode_pair(word, base):
    u, a = deconvolve(tuple(word), 2, base)
    return u, a


def _moved(relation, base):
    return rebase(relation, base) if relation.base.size != base.size else relation


def extension_operation(spec):
    """
    Op(u,a, v,b, w,c) ⇔ w = u+v ∧ c = a+b+f(u,v) 의 6 트랙 관계 (공통 기본 알파벳 위)
    """
    base = spec.base
    add_q = _moved(spec.Q.relation('Op'), base)
    add_a = _moved(spec.A.relation('Op'), base)
    f = join([
        (spec.f, (0, 1, 2)),
        (_moved(spec.Q.domain_relation, base), (0,)),
        (_moved(spec.Q.domain_relation, base), (1,)),
        (_moved(spec.A.domain_relation, base), (2,)),
    ], 3)
    # a + b + d = c, 변수 a0 b1 d2 c3 e4
    sum3 = join([(add_a, (0, 1, 4)), (add_a, (4, 2, 3))], 4, hidden=1)
    logger.debug(f"A 삼항 합: 상태 {sum3.dfa.state_count}")
    # 변수 u0 a1 v2 b3 w4 c5 d6
    return join([(add_q, (0, 2, 4)), (f, (0, 2, 6)), (sum3, (1, 3, 6, 5))], 6, hidden=1)


def extension_constants(spec, base):
    """
    Q 상수 c -> (c, e_A), A 상수 c -> (e_Q, c)

    Raises:
        InputError: Q 와 A 에 같은 이름의 상수가 있음
    """
    q_constants = {k: v for k, v in spec.Q.constants.items() if k != 'e'}
    a_constants = {k: v for k, v in spec.A.constants.items() if k != 'e'}
    clash = sorted(set(q_constants) & set(a_constants))
    if clash:
        raise InputError(f"constants {clash} are defined on both Q and A")
    constants = {k: encode_pair(u, spec.A.neutral_word, base) for k, u in q_constants.items()}
    constants.update({k: encode_pair(spec.Q.neutral_word, a, base) for k, a in a_constants.items()})
    return constants


def build_extension(spec, verify=True):
    """
    L_f 의 FA 표현

    원소 (u, a) 는 두 트랙 합성곱 단어 (기본 기호 = 쌍 "u/a").
    Q 와 A 의 상수는 각각 (c, e_A), (e_Q, c) 로 옮겨 온다.

    Args:
        spec (CocycleSpec): 코사이클
        verify (bool): 먼저 verify_cocycle 을 돌릴지

    Raises:
        CocycleError: 코사이클 항등식 실패
    """
    if verify and not verify_cocycle(spec):
        raise CocycleError(f"cocycle {spec.name} fails the cocycle identity")
    base = spec.base
    pairs = pair_alphabet(base)
    domain_pairs = product_of(
        [_moved(spec.Q.domain_relation, base), _moved(spec.A.domain_relation, base)], base,
    )
    domain = regroup(domain_pairs, 2)
    op = regroup(extension_operation(spec), 2)
    neutral = encode_pair(spec.Q.neutral_word, spec.A.neutral_word, base)
    logger.info(f"확대 {spec.name} 생성: Op 상태 {op.dfa.state_count}")
    return Presentation(
        f"ext-{spec.name}", pairs, as_language(domain), {'Op': op}, neutral,
        constants=extension_constants(spec, base),
        meta={'kind': 'extension', 'cocycle': spec.name, 'pairBase': base.size, **spec.meta},
        restricted=True,
    )


# 표준 코사이클

def zero_cocycle(Q, A, name='zero'):
    """f ≡ e_A"""
    base = common_base(Q, A)
    value = unary(base, Dfa.word(base, A.neutral_word))
    f = join([(value, (2,))], 3, base=base)
    return CocycleSpec(Q, A, f, name=name)


def ep_cocycle_relation(p, base):
    """
    f(ᾱ, β̄) = −Σ_k α_k Σ_{i<k} β_i mod p, 값은 한 기호 단어

    상태: (주장된 값, Σβ_i, 누산값)
    """
    def step(state, column):
        u, v, a = column
        u, v = u or 0, v or 0
        if state == 'start':
            return None if a is None else (a, v % p, 0)
        if a is not None:
            return None
        claimed, prefix_sum, acc = state
        return (claimed, (prefix_sum + v) % p, (acc - u * prefix_sum) % p)

    return scan_relation(base, 3, 'start', step, lambda s: s != 'start' and s[0] == s[2])


def hp_cocycle_relation(p, base):
    """f(ᾱ, β̄)_k = −α_k Σ_{i<k} β_i mod p (A = 첫 기호 0 인 유한 지지 수열)"""
    def step(prefix_sum, column):
        u, v, r = (s or 0 for s in column)
        if r != (-u * prefix_sum) % p:
            return None
        return (prefix_sum + v) % p

    return scan_relation(base, 3, 0, step, lambda s: True)


def ep_cocycle(p):
    """E_p 를 (ℤ/p)^(ω) 의 ℤ/p 에 의한 중심 확대로"""
    table = cyclic(check_prime(p))
    Q = finite_power(table, generator_constants())
    A = finite_group_presentation(table, {'z': (1,)})
    return CocycleSpec(Q, A, ep_cocycle_relation(p, common_base(Q, A)), name=f'ep{p}', meta={'p': p})


def central_power(p):
    """첫 성분이 0 인 유한 지지 수열들: z_1, z_2, … 가 생성하는 (ℤ/p)^(ω)"""
    power = finite_power(cyclic(p))
    leading_zero = Dfa.from_function(
        power.base, 'start',
        lambda state, symbol: None if state == 'start' and symbol != 0 else 'rest',
        lambda state: True,
    )
    central = restrict_domain(power, leading_zero, name=f'central-power-{p}')
    return central.derive(constants={f"z{k}": (0,) * k + (1,) for k in range(1, GENERATOR_CONSTANTS)})


def hp_cocycle(p):
    """H_p 를 (ℤ/p)^(ω) 의 중심 (ℤ/p)^(ω) 에 의한 확대로"""
    Q, A = finite_power(cyclic(check_prime(p)), generator_constants()), central_power(p)
    return CocycleSpec(Q, A, hp_cocycle_relation(p, common_base(Q, A)), name=f'hp{p}', meta={'p': p})


def cocycle_for(kind, p=3):
    """
    이름으로 표준 코사이클

    Args:
        kind (str): 'ep', 'hp', 'zero' (zero 는 (ℤ/p)^(ω) 위의 ℤ/p 값 영 코사이클), 'example12'
    """
    if kind == 'ep':
        return ep_cocycle(p)
    if kind == 'hp':
        return hp_cocycle(p)
    if kind == 'zero':
        spec = ep_cocycle(p)
        return zero_cocycle(spec.Q, spec.A, name=f'zero{p}')
    if kind == 'example12':
        from .example12 import example12_cocycle
        return example12_cocycle()
    raise InputError(f"unknown cocycle {kind!r}")


# E_p / H_p 단어와 확대 쌍 단어 사이의 변환

def ep_word_to_pair(word):
    """vα -> (α, v)"""
    word = tuple(word)
    return word[1:], word[:1]


def hp_word_to_pair(word, p):
    """두 트랙 H_p 단어 -> (α, v), 각 성분은 끝의 0 을 잘라낸다"""
    alpha = [code % p for code in word]
    v = [code // p for code in word]
    while alpha and alpha[-1] == 0:
        alpha.pop()
    while v and v[-1] == 0:
        v.pop()
    return tuple(alpha), tuple(v)
