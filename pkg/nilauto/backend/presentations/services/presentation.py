# presentations/services/presentation.py
import logging
import threading

from automata.services.dfa import Dfa, accepts, count_series, intersect, minimize
from core.exceptions import FormulaError, InputError, PresentationError
from relations.services.join import join
from relations.services.relation import lex_len_order, solve, unary

logger = logging.getLogger(__name__)

CONSTANT_PREFIX = 'is_'


def restrict(relation, domain_relation):
    """관계의 모든 트랙을 정의역으로 제한"""
    k = relation.arity
    factors = [(relation, tuple(range(k)))] + [(domain_relation, (i,)) for i in range(k)]
    return join(factors, k)


class Presentation:
    """
    FA 표현: 정의역 DFA 와 이름 붙은 관계들

    관계는 항상 정의역^k 안으로 제한되어 저장된다. 상수 c 는 단항 관계 is_c 로 노출된다.
    생성 후에는 변경하지 않고, 파생 표현은 새 객체로 만든다.
    """

    def __init__(self, name, base, domain, relations, neutral_word, equality=None,
                 constants=None, meta=None, restricted=False):
        if domain.alphabet.size != base.size:
            raise PresentationError("domain automaton must read the base alphabet")
        self.name = name
        self.base = base
        self.domain = minimize(domain)
        self.domain_relation = unary(base, self.domain)
        self.neutral_word = base.check_word(neutral_word)
        if not accepts(self.domain, self.neutral_word):
            raise PresentationError(f"neutral word {self.format_word(self.neutral_word)!r} is not in the domain")
        self.relations = {}
        for rel_name, relation in relations.items():
            if relation.base.size != base.size:
                raise PresentationError(f"relation {rel_name} uses a different base alphabet")
            self.relations[rel_name] = relation if restricted else restrict(relation, self.domain_relation)
        if equality is not None and not restricted:
            equality = restrict(equality, self.domain_relation)
        self.equality = equality
        self.constants = {'e': self.neutral_word}
        for const_name, word in (constants or {}).items():
            word = base.check_word(word)
            if not accepts(self.domain, word):
                raise PresentationError(f"constant {const_name} is not a domain word")
            self.constants[const_name] = word
        self.meta = dict(meta or {})
        self._derived = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Presentation({self.name!r}, base={self.base.size}, relations={sorted(self.relations)})"

    @property
    def signature(self):
        """관계 이름 -> 항 수 (상수와 Leq 포함)"""
        sig = {rel_name: relation.arity for rel_name, relation in self.relations.items()}
        sig.update({CONSTANT_PREFIX + const_name: 1 for const_name in self.constants})
        sig.setdefault('Leq', 2)
        return sig

    def relation(self, rel_name):
        """
        이름으로 관계 조회 (상수·Leq 는 처음 요청될 때 만든다)

        Raises:
            FormulaError: 시그니처에 없는 이름
        """
        if rel_name in self.relations:
            return self.relations[rel_name]
        with self._lock:
            if rel_name not in self._derived:
                self._derived[rel_name] = self._derive(rel_name)
            return self._derived[rel_name]

    def _derive(self, rel_name):
        if rel_name.startswith(CONSTANT_PREFIX) and rel_name[len(CONSTANT_PREFIX):] in self.constants:
            word = self.constants[rel_name[len(CONSTANT_PREFIX):]]
            return unary(self.base, Dfa.word(self.base, word))
        if rel_name == 'Leq':
            return restrict(lex_len_order(self.base), self.domain_relation)
        raise FormulaError(f"unknown relation {rel_name!r} in presentation {self.name!r}")

    def contains(self, word):
        return accepts(self.domain, word)

    def format_word(self, word):
        return self.base.format_word(word)

    def parse_word(self, text):
        return self.base.parse_word(text)

    def domain_word(self, text):
        """텍스트를 정의역 단어로 (정의역 밖이면 InputError)"""
        word = self.parse_word(text) if isinstance(text, str) else self.base.check_word(text)
        if not self.contains(word):
            raise InputError(f"word {self.format_word(word)!r} is not in the domain of {self.name}")
        return word

    def evaluate(self, x, y, relation='Op'):
        """
        Op(x, y, z) 를 만족하는 z (여럿이면 ≤_L 최소)

        Returns:
            tuple 또는 None
        """
        x, y = self.domain_word(x), self.domain_word(y)
        return solve(self.relation(relation), {0: x, 1: y}, 2)

    def derive(self, name=None, domain=None, relations=None, neutral_word=None, equality=False,
               constants=None, meta=None):
        """
        일부만 바꾼 새 표현

        domain 이 바뀌면 모든 관계를 새 정의역으로 다시 제한한다.
        """
        new_domain = domain if domain is not None else self.domain
        merged = dict(self.relations)
        merged.update(relations or {})
        new_constants = {k: v for k, v in self.constants.items() if k != 'e'}
        if constants is not None:
            new_constants = constants
        return Presentation(
            name or self.name,
            self.base,
            new_domain,
            merged,
            neutral_word if neutral_word is not None else self.neutral_word,
            equality=self.equality if equality is False else equality,
            constants=new_constants,
            meta={**self.meta, **(meta or {})},
            restricted=domain is None and not relations and equality is False,
        )


def domain_intersection(presentation, language):
    """정의역 ∩ 정규 언어"""
    return minimize(intersect(presentation.domain, language))


def growth(presentation, max_length):
    """
    정의역 단어 수 (길이별, 누적)

    Returns:
        tuple[list[int], list[int]]: 길이 0..max_length 의 개수와 누적 개수
    """
    counts = count_series(presentation.domain, max_length)
    cumulative, total = [], 0
    for c in counts:
        total += c
        cumulative.append(total)
    return counts, cumulative
