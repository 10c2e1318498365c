# presentations/services/canonical.py
import logging

from automata.services.dfa import difference, equivalent, is_empty, shortest_word
from core.exceptions import PresentationError
from relations.services.convolution import deconvolve
from relations.services.join import join
from relations.services.relation import (
    as_language, equality_relation, lex_len_order, negate, reorder, solve,
)
from .presentation import restrict

logger = logging.getLogger(__name__)


def _witness(relation, extra):
    word = shortest_word(extra)
    if word is None:
        return None
    return [relation.base.format_word(w) for w in deconvolve(word, relation.arity, relation.base)]


def check_equivalence(presentation):
    """
    등호 관계가 정의역 위의 동치관계인지 확인

    Raises:
        PresentationError: 반사·대칭·추이 중 하나가 깨지면 반례와 함께
    """
    E = presentation.equality
    diagonal = restrict(equality_relation(presentation.base), presentation.domain_relation)
    missing = difference(diagonal.dfa, E.dfa)
    if not is_empty(missing):
        raise PresentationError(f"equality is not reflexive: {_witness(E, missing)}")
    if not equivalent(E.dfa, reorder(E, (1, 0)).dfa):
        raise PresentationError(f"equality is not symmetric: {_witness(E, difference(E.dfa, reorder(E, (1, 0)).dfa))}")
    composed = join([(E, (0, 2)), (E, (2, 1))], 2, hidden=1)
    extra = difference(composed.dfa, E.dfa)
    if not is_empty(extra):
        raise PresentationError(f"equality is not transitive: {_witness(E, extra)}")


def saturate(relation, equality):
    """R 을 각 트랙마다 등호 동치류로 닫는다"""
    k = relation.arity
    factors = [(relation, tuple(range(k, 2 * k)))]
    factors += [(equality, (i, k + i)) for i in range(k)]
    return join(factors, k, hidden=k)


def representatives(presentation):
    """각 동치류의 ≤_L 최소 원소들의 정의역"""
    E = presentation.equality
    order = restrict(lex_len_order(presentation.base), presentation.domain_relation)
    # strictly_less(a, b) ⇔ ¬(b ≤_L a)
    strictly_less = negate(reorder(order, (1, 0)), within=join(
        [(presentation.domain_relation, (0,)), (presentation.domain_relation, (1,))], 2,
    ))
    beaten = join([(E, (1, 0)), (strictly_less, (1, 0))], 1, hidden=1)
    return negate(beaten, within=presentation.domain_relation)


def canonicalize(presentation):
    """
    등호 관계로 나눈 동형 표현 (각 동치류의 ≤_L 최소 대표만 남기고 등호는 항등)

    등호가 없으면 (이미 항등) 그대로 돌려준다.

    Returns:
        Presentation: 정의역 = 대표 집합
    """
    E = presentation.equality
    if E is None:
        return presentation
    check_equivalence(presentation)
    reps = representatives(presentation)

    def rep_of(word):
        return solve(E, {1: word}, 0)

    relations = {name: saturate(relation, E) for name, relation in presentation.relations.items()}
    constants = {
        name: rep_of(word) for name, word in presentation.constants.items() if name != 'e'
    }
    logger.info(f"{presentation.name} 정규화: 대표 DFA 상태 {reps.dfa.state_count}")
    return type(presentation)(
        f"{presentation.name}|canonical",
        presentation.base,
        as_language(reps),
        relations,
        rep_of(presentation.neutral_word),
        constants=constants,
        meta={**presentation.meta, 'canonical': True},
    )

