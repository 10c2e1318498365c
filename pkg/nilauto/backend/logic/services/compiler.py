# logic/services/compiler.py
"""
1 차 논리식을 관계 오토마타로 컴파일

∧ 와 ∃ 블록은 한 번에 모아 숨은 변수를 하나씩 없앤다 (관련 인자만 join).
부정은 정의역 곱 안에서의 여집합이다.
"""
import logging
from functools import lru_cache
from typing import NamedTuple

from automata.services.dfa import Dfa, intersect, is_empty
from core.exceptions import FormulaError
from core.utils import get_setting
from relations.services.join import join, product_of
from relations.services.relation import (
    RelationAutomaton, as_language, equality_relation, negate, union_relations, unary,
)
from .formula import (
    And, Atom, Equals, Exists, Not, Or, Truth, WordIs, free_variables, prepare,
)
from .parser import parse_formula

logger = logging.getLogger(__name__)


class Compiled(NamedTuple):
    relation: object    # RelationAutomaton, 변수가 없으면 bool
    variables: tuple


def _ordered_union(groups):
    order = []
    for group in groups:
        for name in group:
            if name not in order:
                order.append(name)
    return tuple(order)


@lru_cache(maxsize=128)
def domain_box(presentation, k):
    """정의역^k"""
    return product_of([presentation.domain_relation] * k, presentation.base)


@lru_cache(maxsize=32)
def domain_equality(presentation):
    domain = presentation.domain_relation
    return join([(equality_relation(presentation.base), (0, 1)), (domain, (0,)), (domain, (1,))], 2)


class FormulaCompiler:
    """
    식 하나를 컴파일하는 일회용 컴파일러

    부분식 메모는 인스턴스에만 두고, 정의역 곱과 등호 관계는 모듈 캐시에서 재사용한다.
    """

    def __init__(self, presentation):
        self.presentation = presentation
        self.base = presentation.base
        self.domain = presentation.domain_relation
        self._memo = {}

    # 보조

    def box(self, k):
        return domain_box(self.presentation, k)

    def empty(self, k):
        padded = self.box(k).padded
        return RelationAutomaton(self.base, k, Dfa.empty(padded.alphabet), trusted=True)

    def lift(self, compiled, variables):
        """compiled 를 variables 순서의 트랙으로 (없는 변수는 정의역 전체)"""
        variables = tuple(variables)
        relation = compiled.relation
        if isinstance(relation, bool):
            if not variables:
                return relation
            return self.box(len(variables)) if relation else self.empty(len(variables))
        if compiled.variables == variables:
            return relation
        index = {name: i for i, name in enumerate(variables)}
        missing = [v for v in compiled.variables if v not in index]
        if missing:
            raise FormulaError(f"variables {missing} are not among the output tracks {variables}")
        factors = [(relation, tuple(index[v] for v in compiled.variables))]
        factors += [(self.domain, (index[v],)) for v in variables if v not in compiled.variables]
        return join(factors, len(variables), base=self.base)

    def _join(self, parts, out, hidden):
        variables = tuple(out) + tuple(hidden)
        index = {name: i for i, name in enumerate(variables)}
        factors = [(c.relation, tuple(index[v] for v in c.variables)) for c in parts]
        factors += [(self.domain, (index[v],)) for v in variables]
        return join(factors, len(out), hidden=len(hidden), base=self.base)

    def equality(self):
        if self.presentation.equality is not None:
            return self.presentation.equality
        return domain_equality(self.presentation)

    # 노드별 컴파일

    def compile(self, node):
        cached = self._memo.get(node)
        if cached is None:
            cached = self._compile(node)
            self._memo[node] = cached
        return cached

    def _compile(self, node):
        if isinstance(node, Truth):
            return Compiled(node.value, ())
        if isinstance(node, Atom):
            return self._atom(node)
        if isinstance(node, Equals):
            x, y = node.left.name, node.right.name
            if x == y:
                return Compiled(self.domain, (x,))
            return Compiled(self.equality(), (x, y))
        if isinstance(node, WordIs):
            word = self.presentation.parse_word(node.text)
            language = intersect(Dfa.word(self.base, word), self.presentation.domain)
            return Compiled(unary(self.base, language), (node.var.name,))
        if isinstance(node, Not):
            inner = self.compile(node.body)
            if isinstance(inner.relation, bool):
                return Compiled(not inner.relation, ())
            return Compiled(negate(inner.relation, within=self.box(len(inner.variables))), inner.variables)
        if isinstance(node, Or):
            return self._disjunction(node)
        if isinstance(node, (And, Exists)):
            return self._conjunction(node)
        raise FormulaError(f"cannot compile {type(node).__name__}; normalize the formula first")

    def _atom(self, node):
        relation = self.presentation.relation(node.relation)
        if relation.arity != len(node.args):
            raise FormulaError(
                f"relation {node.relation} has arity {relation.arity}, used with {len(node.args)} arguments"
            )
        names = tuple(a.name for a in node.args)
        variables = _ordered_union([names])
        if variables == names:
            return Compiled(relation, variables)
        tracks = tuple(variables.index(n) for n in names)
        return Compiled(join([(relation, tracks)], len(variables)), variables)

    def _disjunction(self, node):
        parts = [self.compile(p) for p in node.parts]
        if any(c.relation is True for c in parts):
            return Compiled(True, ())
        parts = [c for c in parts if c.relation is not False]
        if not parts:
            return Compiled(False, ())
        variables = _ordered_union(c.variables for c in parts)
        result = self.lift(parts[0], variables)
        for c in parts[1:]:
            result = union_relations(result, self.lift(c, variables))
        return Compiled(result, variables)

    def _flatten(self, node, conjuncts, hidden):
        if isinstance(node, And):
            for part in node.parts:
                self._flatten(part, conjuncts, hidden)
        elif isinstance(node, Exists):
            hidden.extend(node.variables)
            self._flatten(node.body, conjuncts, hidden)
        else:
            conjuncts.append(node)

    def _conjunction(self, node):
        conjuncts, hidden = [], []
        self._flatten(node, conjuncts, hidden)
        free = free_variables(node)
        factors = []
        for part in conjuncts:
            compiled = self.compile(part)
            if compiled.relation is False:
                return Compiled(False, ())
            if compiled.relation is not True:
                factors.append(compiled)
        while hidden:
            def cost(name):
                return len(_ordered_union(c.variables for c in factors if name in c.variables))
            best = min(hidden, key=cost)
            hidden.remove(best)
            bucket = [c for c in factors if best in c.variables]
            factors = [c for c in factors if best not in c.variables]
            if not bucket:
                if is_empty(self.presentation.domain):
                    return Compiled(False, ())
                continue
            out = tuple(v for v in _ordered_union(c.variables for c in bucket) if v != best)
            merged = self._join(bucket, out, (best,))
            logger.debug(f"∃{best} 제거: 인자 {len(bucket)}개, 남은 트랙 {len(out)}")
            if merged is False:
                return Compiled(False, ())
            if merged is not True:
                factors.append(Compiled(merged, out))
        if not factors:
            return Compiled(True, ())
        if len(factors) == 1 and factors[0].variables == free:
            return factors[0]
        return Compiled(self._join(factors, free, ()), free)


# 공개 API

def _parse(formula):
    return parse_formula(formula) if isinstance(formula, str) else formula


@lru_cache(maxsize=get_setting('NILAUTO_COMPILE_CACHE_SIZE'))
def compile_prepared(presentation, prepared, order):
    """
    정규화된 식의 컴파일 결과 (표현·식·트랙 순서별 LRU)

    Returns:
        RelationAutomaton, 트랙이 없으면 Compiled
    """
    logger.info(f"컴파일 시작 ({presentation.name}): {prepared}")
    compiler = FormulaCompiler(presentation)
    result = compiler.compile(prepared)
    if not order:
        logger.info(f"결정 완료: {result.relation}")
        return result
    relation = compiler.lift(result, order)
    logger.info(f"컴파일 완료: 트랙 {order}, 상태 {relation.dfa.state_count}")
    return relation


def compile_formula(formula, presentation, variables=None):
    """
    자유 변수가 있는 식을 관계로

    Args:
        formula (str 또는 Formula): 식
        presentation (Presentation): 표현
        variables (sequence[str]): 트랙 순서 (기본값: 자유 변수의 첫 등장 순)

    Returns:
        RelationAutomaton: 모든 트랙이 정의역으로 제한된 관계

    Raises:
        FormulaError: 미지의 관계, 항 수 불일치, 자유/속박 충돌, 자유 변수 없음
    """
    node = _parse(formula)
    free = free_variables(node)
    order = tuple(variables) if variables is not None else free
    if len(set(order)) != len(order):
        raise FormulaError(f"repeated variable in track order {order}")
    if not order:
        raise FormulaError("formula has no free variables; use decide")
    missing = [v for v in free if v not in order]
    if missing:
        raise FormulaError(f"free variables {missing} are missing from the track order")
    return compile_prepared(presentation, prepare(node, order), order)


def decide(formula, presentation):
    """
    문장의 참거짓

    Raises:
        FormulaError: 자유 변수가 남아 있음
    """
    node = _parse(formula)
    free = free_variables(node)
    if free:
        raise FormulaError(f"sentence has free variables: {', '.join(free)}")
    result = compile_prepared(presentation, prepare(node), ())
    if not isinstance(result.relation, bool):
        raise FormulaError(f"sentence compiled to a relation over {result.variables}")
    return result.relation


def define_set(formula, presentation):
    """
    자유 변수가 하나인 식이 정의하는 집합을 기본 알파벳 위 DFA 로

    Raises:
        FormulaError: 자유 변수가 정확히 하나가 아님
    """
    node = _parse(formula)
    free = free_variables(node)
    if len(free) != 1:
        raise FormulaError(f"define_set needs exactly one free variable, found {len(free)}")
    return as_language(compile_formula(node, presentation))
