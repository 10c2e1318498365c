# logic/services/parser.py
"""
s-식 수식 파서

    (forall (x y) (exists z (and (Op x y z) (= z (* y x)))))
    (= (comm $x0 $x1) $z)
"""
import logging

import pyparsing as pp

from core.exceptions import FormulaError
from .formula import (
    And, Apply, Atom, Const, Equals, Exists, ForAll, Iff, Implies, Not, Or, Truth, Var, WordLiteral,
)

logger = logging.getLogger(__name__)

SYMBOL_CHARS = pp.alphanums + "_$<>=-*!?./+'"

CONNECTIVES = {
    'and': And, 'or': Or,
}
BINARY = {
    'implies': Implies, '->': Implies,
    'iff': Iff, '<->': Iff,
}
QUANTIFIER_KEYWORDS = {'forall': ForAll, 'exists': Exists}
FUNCTIONS = ('*', 'inv', 'comm', 'pow')
KEYWORDS = set(CONNECTIVES) | set(BINARY) | set(QUANTIFIER_KEYWORDS) | {'not', '=', 'true', 'false'} | set(FUNCTIONS)


def _grammar():
    lpar, rpar = pp.Suppress('('), pp.Suppress(')')
    symbol = pp.Word(SYMBOL_CHARS)
    literal = pp.QuotedString('"').set_parse_action(lambda t: WordLiteral(t[0]))
    sexpr = pp.Forward()
    sexpr <<= pp.Group(lpar + pp.ZeroOrMore(literal | symbol | sexpr) + rpar)
    return (sexpr | literal | symbol) + pp.StringEnd()


GRAMMAR = _grammar()


def _is_list(item):
    return isinstance(item, list)


def _symbol(item, what):
    if not isinstance(item, str):
        raise FormulaError(f"expected {what}, got {item}")
    return item


def _variable_name(item):
    name = _symbol(item, 'a variable name')
    if name in KEYWORDS or name.startswith('$') or name[0].isdigit():
        raise FormulaError(f"{name!r} cannot be used as a variable")
    return name


def _term(item):
    if isinstance(item, WordLiteral):
        return item
    if isinstance(item, str):
        if item.startswith('$'):
            if len(item) == 1:
                raise FormulaError("empty constant name")
            return Const(item[1:])
        return Var(_variable_name(item))
    if not item:
        raise FormulaError("empty term ()")
    head, rest = item[0], item[1:]
    if head not in FUNCTIONS:
        raise FormulaError(f"unknown function {head!r}; terms use {', '.join(FUNCTIONS)}")
    if head == 'pow':
        if len(rest) != 2:
            raise FormulaError("(pow t n) takes a term and an integer")
        try:
            exponent = int(_symbol(rest[1], 'an integer exponent'))
        except ValueError:
            raise FormulaError(f"exponent {rest[1]!r} is not an integer") from None
        return Apply('pow', (_term(rest[0]),), exponent)
    return Apply(head, tuple(_term(arg) for arg in rest))


def _formula(item):
    if isinstance(item, str):
        if item in ('true', 'false'):
            return Truth(item == 'true')
        raise FormulaError(f"expected a formula, got {item!r}")
    if not _is_list(item) or not item:
        raise FormulaError(f"expected a formula, got {item}")
    head, rest = item[0], item[1:]
    if not isinstance(head, str):
        raise FormulaError(f"formula head must be a symbol, got {head}")
    if head in QUANTIFIER_KEYWORDS:
        if len(rest) != 2:
            raise FormulaError(f"({head} vars body) takes exactly two arguments")
        names = rest[0] if _is_list(rest[0]) else [rest[0]]
        if not names:
            raise FormulaError(f"empty variable list in {head}")
        return QUANTIFIER_KEYWORDS[head](tuple(_variable_name(n) for n in names), _formula(rest[1]))
    if head in CONNECTIVES:
        if not rest:
            return Truth(head == 'and')
        if len(rest) == 1:
            return _formula(rest[0])
        return CONNECTIVES[head](tuple(_formula(p) for p in rest))
    if head in BINARY:
        if len(rest) != 2:
            raise FormulaError(f"({head} a b) takes two formulas")
        return BINARY[head](_formula(rest[0]), _formula(rest[1]))
    if head == 'not':
        if len(rest) != 1:
            raise FormulaError("(not a) takes one formula")
        return Not(_formula(rest[0]))
    if head == '=':
        if len(rest) != 2:
            raise FormulaError("(= s t) takes two terms")
        return Equals(_term(rest[0]), _term(rest[1]))
    if head in KEYWORDS:
        raise FormulaError(f"{head!r} is a function symbol, not a relation")
    return Atom(head, tuple(_term(arg) for arg in rest))


def _to_lists(result):
    if isinstance(result, pp.ParseResults):
        return [_to_lists(x) for x in result]
    return result


def parse_formula(text):
    """
    수식 텍스트를 구문 트리로

    Args:
        text (str): s-식 수식

    Returns:
        Formula 노드

    Raises:
        FormulaError: 구문 오류
    """
    try:
        parsed = GRAMMAR.parse_string(text, parse_all=True)
    except pp.ParseException as e:
        raise FormulaError(f"cannot parse formula: {e}") from None
    node = _formula(_to_lists(parsed[0]))
    logger.debug(f"수식 파싱: {node}")
    return node
