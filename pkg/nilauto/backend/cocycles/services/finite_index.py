# cocycles/services/finite_index.py
"""
FA 표현된 정규 부분군 N 과 유한 몫 G/N 으로부터 G 의 표현

원소 r_g·n 을 단어 g·(N 단어) 로 쓰고, 곱은

    (g, n)·(h, m) = (gh, c(g,h) · α_h(n) · m),   α_h(n) = r_h⁻¹ n r_h

이다. 결합법칙과 항등원은 만든 뒤 문장으로 결정해 확인한다.
"""
import logging

from automata.services.alphabet import Alphabet
from automata.services.dfa import Dfa, union
from core.exceptions import CocycleError, InputError
from logic.services.compiler import decide
from presentations.services.presentation import Presentation
from relations.services.join import join
from relations.services.relation import as_language, equality_relation, rebase, union_relations, unary
from .cocycle import tag_relation

logger = logging.getLogger(__name__)

ASSOCIATIVITY = (
    "(forall (x y z) (exists (xy yz w) "
    "(and (Op x y xy) (Op xy z w) (Op y z yz) (Op x yz w))))"
)
IDENTITY = "(forall x (and (Op $e x x) (Op x $e x)))"


def _word(presentation, value):
    if value is None:
        return presentation.neutral_word
    if isinstance(value, str):
        return presentation.domain_word(value)
    return presentation.domain_word(tuple(value))


def _coset_operation(N, correction, action):
    """
    R(n, m, k) ⇔ k = c · α(n) · m (N 의 기본 알파벳 위)

    변수: n0 m1 k2 t3 c4 u5
    """
    base = N.base
    constant = unary(base, Dfa.word(base, correction))
    op = N.relation('Op')
    if action is None:
        action = join([(equality_relation(base), (0, 1)), (N.domain_relation, (0,))], 2)
    factors = [(N.domain_relation, (0,)), (action, (0, 3)), (constant, (4,)), (op, (4, 3, 5)), (op, (5, 1, 2))]
    return join(factors, 3, hidden=3)


def finite_index_extension(N, table, corrections=None, actions=None, name=None, check=True):
    """
    Args:
        N (Presentation): 정규 부분군
        table (FiniteGroupTable): 몫군 G/N
        corrections (dict): (g, h) -> N 단어 (텍스트 또는 튜플), 없으면 항등원
        actions (dict): h -> N 위의 2 항 관계 (켤레 작용의 그래프), 없으면 항등
        check (bool): 결합법칙·항등원 문장으로 검증할지

    Returns:
        Presentation: 정의역 = (몫 원소 태그)·(N 단어)

    Raises:
        CocycleError: 주어진 자료가 군을 정의하지 않음
    """
    corrections = corrections or {}
    actions = actions or {}
    unknown = [key for key in corrections if len(key) != 2 or not all(0 <= g < table.order for g in key)]
    if unknown:
        raise InputError(f"correction keys {unknown} are not pairs of quotient elements")
    base = Alphabet(max(N.base.size, table.order))
    domain_relation = rebase(N.domain_relation, base) if base.size != N.base.size else N.domain_relation
    domain = None
    for g in range(table.order):
        tagged = tag_relation(domain_relation, (g,), base)
        language = as_language(tagged)
        domain = language if domain is None else union(domain, language)
    op = None
    for g in range(table.order):
        for h in range(table.order):
            correction = _word(N, corrections.get((g, h)))
            coset = _coset_operation(N, correction, actions.get(h))
            tagged = tag_relation(coset, (g, h, table.multiply(g, h)), base)
            op = tagged if op is None else union_relations(op, tagged)
    neutral = (table.identity,) + N.neutral_word
    labels = tuple(str(s) for s in range(base.size)) if base.size <= 10 else None
    presentation = Presentation(
        name or f"{N.name}.{table.name}", Alphabet(base.size, labels), domain, {'Op': op}, neutral,
        meta={'kind': 'finite-index', 'quotient': table.name, 'index': table.order},
        restricted=True,
    )
    if check:
        if not decide(IDENTITY, presentation):
            raise CocycleError(f"{presentation.name}: tag {table.identity}·e is not a two-sided identity")
        if not decide(ASSOCIATIVITY, presentation):
            raise CocycleError(f"{presentation.name}: coset data is not associative")
    logger.info(f"유한 지표 확대 {presentation.name}: Op 상태 {op.dfa.state_count}")
    return presentation
